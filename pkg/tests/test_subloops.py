from collections import Counter

import pytest

import cd_oracle
from cdloops import build_cd_loop, enumerate_subloops, is_normal, maximal_subloops
from cdloops.cdcore import LoopTable
from cdloops.loopcore import ElementSet
from cdloops.subloops import (
    Subloop,
    enumerate_subloops_by_closure,
    subloop_from_support,
    subloops_to_json,
    xor_subspaces,
)


@pytest.mark.parametrize("n", range(6))
def test_subspace_counts_are_gaussian_binomials(n):
    counts = Counter(len(V) for V in xor_subspaces(n))
    assert [counts[2**k] for k in range(n + 1)] == [cd_oracle.gaussian_binomial(n, k) for k in range(n + 1)]


@pytest.mark.parametrize("n", range(5))
def test_xor_lift_matches_closure_enumeration(n):
    L = build_cd_loop(n)
    assert [s.mask for s in enumerate_subloops(L)] == [s.mask for s in enumerate_subloops_by_closure(L)]


def test_every_enumerated_set_is_closed_and_contains_identity():
    L = build_cd_loop(4)
    for s in enumerate_subloops(L):
        codes = set(s.codes)
        assert 0 in codes
        assert all(int(L.table[a, b]) in codes for a in codes for b in codes)


def test_supports_are_xor_closed():
    for s in enumerate_subloops(build_cd_loop(4)):
        sup = set(s.support)
        assert all(a ^ b in sup for a in sup for b in sup)


def test_ordering_and_extremes():
    subs = enumerate_subloops(build_cd_loop(3))
    assert [s.order for s in subs] == sorted(s.order for s in subs)
    assert subs[0].codes == [0] and subs[-1].order == 16
    assert len(subs) == 1 + 1 + 7 + 7 + 1


def test_local_loop_uses_parent_codes():
    L = build_cd_loop(3)
    Q = subloop_from_support(L, [0, 1, 2, 3])
    local = Q.loop
    assert local.order == 8
    assert sorted(int(c) for c in local.labels) == [0, 1, 2, 3, 8, 9, 10, 11]


def test_normality_in_basis_loops():
    L = build_cd_loop(4)
    assert all(is_normal(L, s) for s in enumerate_subloops(L))


def test_non_normal_subgroup_detected():
    # S3 as a loop: {0, 1} generated by a transposition is not normal
    import itertools

    perms = list(itertools.permutations(range(3)))
    idx = {p: i for i, p in enumerate(perms)}
    table = [[idx[tuple(p[q[k]] for k in range(3))] for q in perms] for p in perms]
    S3 = LoopTable(table)
    swap = idx[(1, 0, 2)]
    H = Subloop(ElementSet.of(S3, [0, swap]), S3)
    A3 = Subloop(ElementSet.of(S3, [0, idx[(1, 2, 0)], idx[(2, 0, 1)]]), S3)
    assert not is_normal(S3, H)
    assert is_normal(S3, A3)
    assert len(enumerate_subloops_by_closure(S3)) == 6


def test_maximal_subloops_of_quaternions():
    subs = enumerate_subloops(build_cd_loop(2))
    maxi = maximal_subloops(subs[-1], subs)
    assert sorted(m.support for m in maxi) == [(0, 1), (0, 2), (0, 3)]


def test_enumerate_requires_cd_loop():
    with pytest.raises(ValueError):
        enumerate_subloops(LoopTable([[0, 1], [1, 0]]))


def test_json_rows():
    L = build_cd_loop(1)
    subs = enumerate_subloops(L)
    text = subloops_to_json(subs, [True] * len(subs))
    assert text == '[{"order":1,"support":[0],"normal":true},{"order":2,"support":[0],"normal":true},' \
                   '{"order":4,"support":[0,1],"normal":true}]'
