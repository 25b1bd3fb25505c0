import numpy as np
import pytest

from cdloops import are_isomorphic, build_cd_loop, classify, composition_profile, enumerate_subloops
from cdloops.cdcore import LoopTable
from cdloops.isoclass import (
    OCTONION,
    QUASI_OCTONION,
    CompositionProfile,
    classes_to_csv,
    fingerprint,
    is_isomorphism,
)
from cdloops.subloops import subloop_from_support


def relabel(L: LoopTable, perm: np.ndarray) -> LoopTable:
    """Isomorphic copy with x -> perm[x]."""
    t = np.empty_like(L.table)
    t[np.ix_(perm, perm)] = perm[L.table]
    return LoopTable(t, identity=int(perm[L.identity]))


@pytest.mark.parametrize("n", [2, 3, 4])
def test_finds_isomorphism_to_random_relabelling(n):
    A = build_cd_loop(n)
    rng = np.random.default_rng(n)
    perm = rng.permutation(A.order)
    B = relabel(A, perm)
    f = are_isomorphic(A, B)
    assert f is not None and is_isomorphism(A, B, f)
    # product preservation, checked directly
    assert (f[A.table] == B.table[np.ix_(f, f)]).all()


def test_octonion_and_quasi_octonion_differ():
    S = build_cd_loop(4)
    quasi = subloop_from_support(S, [0, 1, 2, 3, 12, 13, 14, 15])
    octo = subloop_from_support(S, range(8))
    assert are_isomorphic(octo, build_cd_loop(3)) is not None
    assert are_isomorphic(octo, quasi) is None
    assert fingerprint(octo.loop) != fingerprint(quasi.loop)


def test_different_orders_not_isomorphic():
    assert are_isomorphic(build_cd_loop(2), build_cd_loop(3)) is None


def test_is_isomorphism_rejects_non_homomorphism():
    L = build_cd_loop(2)
    swap = np.arange(L.order)
    swap[[1, 2]] = swap[[2, 1]]  # e1 <-> e2 alone breaks e1 e2 = e3
    assert not is_isomorphism(L, L, swap)


def test_sedenion_classification():
    L = build_cd_loop(4)
    classes = classify(enumerate_subloops(L))
    got = {(c.order, c.label): c.size for c in classes}
    assert got == {
        (1, "1"): 1, (2, "C2"): 1, (4, "C4"): 15, (8, "Q8"): 35,
        (16, OCTONION): 8, (16, QUASI_OCTONION): 7, (32, "S_L"): 1,
    }
    sixteen = [c for c in classes if c.order == 16]
    assert composition_profile(classes[-1].representative, sixteen) == CompositionProfile(8, 7)
    assert str(CompositionProfile(8, 7)) == "[8+7]"


def test_classes_csv():
    classes = classify(enumerate_subloops(build_cd_loop(2)))
    lines = classes_to_csv(classes).splitlines()
    assert lines[0] == "kind,order,support,label,size"
    assert "class,8,0 1 2 3,Q8,1" in lines
    assert sum(line.startswith("subloop,") for line in lines) == 6
