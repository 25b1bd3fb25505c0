"""Loop isomorphism, isomorphy classes and maximal-subloop composition profiles."""

from __future__ import annotations

import csv
import io
from collections import Counter
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .cdcore import LoopTable, build_cd_loop
from .identities import IDENTITY_NAMES, check_identity, identity_report
from .loopcore import element_orders, mask_of
from .subloops import Subloop, enumerate_subloops_by_closure, maximal_subloops

__all__ = [
    "CompositionProfile",
    "IsoClass",
    "are_isomorphic",
    "classes_to_csv",
    "classify",
    "composition_profile",
    "fingerprint",
    "is_isomorphism",
]

OCTONION = "O_L"
QUASI_OCTONION = "O~_L"

_REFERENCE_NAMES = {0: "C2", 1: "C4", 2: "Q8", 3: OCTONION, 4: "S_L", 5: "T_L"}


def _as_loop(X) -> LoopTable:
    return X.loop if isinstance(X, Subloop) else X


# -- invariants ----------------------------------------------------------


def _local_subloops(L: LoopTable) -> list[int]:
    cached = L._cache.get("local_subloops")
    if cached is None:
        cached = [s.mask for s in enumerate_subloops_by_closure(L)]
        L._cache["local_subloops"] = cached
    return cached


def _moufang_flags(L: LoopTable) -> dict[int, bool]:
    cached = L._cache.get("moufang_flags")
    if cached is None:
        cached = {}
        for mask in _local_subloops(L):
            el = _bits(mask)
            sub = LoopTable(table=_restrict(L, el), identity=int(np.searchsorted(el, L.identity)))
            cached[mask] = check_identity(sub, "MOUFANG").holds
        L._cache["moufang_flags"] = cached
    return cached


def _bits(mask: int) -> np.ndarray:
    return np.array([i for i in range(mask.bit_length()) if mask >> i & 1], dtype=np.int64)


def _restrict(L: LoopTable, el: np.ndarray) -> np.ndarray:
    pos = np.full(L.order, -1, dtype=np.int64)
    pos[el] = np.arange(el.size)
    return pos[L.table[np.ix_(el, el)]]


def fingerprint(X) -> tuple:
    """Isomorphism invariant: order, associativity, identity battery,
    element-order multiset and subloop census by (order, Moufang)."""
    L = _as_loop(X)
    cached = L._cache.get("fingerprint")
    if cached is not None:
        return cached
    report = identity_report(L)
    orders = tuple(sorted(Counter(element_orders(L).tolist()).items()))
    flags = _moufang_flags(L)
    census = tuple(sorted(Counter(
        (bin(m).count("1"), flags[m]) for m in _local_subloops(L)
    ).items()))
    fp = (
        L.order,
        report["ASSOC"].holds,
        tuple(report[name].holds for name in IDENTITY_NAMES),
        orders,
        census,
    )
    L._cache["fingerprint"] = fp
    return fp


def _element_invariants(L: LoopTable) -> list[tuple]:
    """Per-element invariants preserved by any isomorphism."""
    cached = L._cache.get("element_invariants")
    if cached is not None:
        return cached
    t = L.table
    ar = np.arange(L.order)
    x, y, z = ar[:, None, None], ar[None, :, None], ar[None, None, :]
    assoc = t[t[x, y], z] == t[x, t[y, z]]
    first, middle = assoc.sum(axis=(1, 2)), assoc.sum(axis=(0, 2))
    flags = _moufang_flags(L)
    subs = _local_subloops(L)
    containing = []
    for e in range(L.order):
        c = Counter((bin(m).count("1"), flags[m]) for m in subs if m >> e & 1)
        containing.append(tuple(sorted(c.items())))
    orders = element_orders(L)
    out = [(int(orders[e]), int(first[e]), int(middle[e]), containing[e]) for e in range(L.order)]
    L._cache["element_invariants"] = out
    return out


# -- isomorphism search --------------------------------------------------


def _program(L: LoopTable):
    """Generators and a straight-line program reaching every element.

    Returns (gens, steps, levels): steps is a list of (a, b, c) meaning
    element a = b * c, ordered so that each product only uses earlier
    elements; levels[k] is the number of steps that stay inside the
    subloop generated by the first k + 1 generators.
    """
    cached = L._cache.get("program")
    if cached is not None:
        return cached
    inv = _element_invariants(L)
    rarity = Counter(inv)
    t = L.table
    known = [L.identity]
    have = np.zeros(L.order, dtype=bool)
    have[L.identity] = True
    gens, steps, levels = [], [], []
    while not have.all():
        # prefer generators with rare invariants (fewer candidate images)
        outside = [e for e in range(L.order) if not have[e]]
        g = min(outside, key=lambda e: (rarity[inv[e]], e))
        gens.append(g)
        known.append(g)
        have[g] = True
        grew = True
        while grew:
            grew = False
            k = np.asarray(known)
            prods = t[np.ix_(k, k)]
            for i, j in zip(*np.nonzero(~have[prods])):
                a = int(prods[i, j])
                if not have[a]:
                    have[a] = True
                    known.append(a)
                    steps.append((a, int(k[i]), int(k[j])))
                    grew = True
        levels.append(len(steps))
    result = (gens, steps, levels)
    L._cache["program"] = result
    return result


def is_isomorphism(A: LoopTable, B: LoopTable, f: np.ndarray) -> bool:
    """True iff f (index array A -> B) is a bijective product-preserving map."""
    f = np.asarray(f)
    if f.shape != (A.order,) or A.order != B.order:
        return False
    if np.unique(f).size != A.order:
        return False
    return bool((B.table[f[:, None], f[None, :]] == f[A.table]).all())


def _search(A: LoopTable, B: LoopTable):
    gens, steps, levels = _program(A)
    inv_a, inv_b = _element_invariants(A), _element_invariants(B)
    keys = {k: i for i, k in enumerate(sorted(set(inv_a) | set(inv_b)))}
    key_a = np.array([keys[k] for k in inv_a])
    key_b = np.array([keys[k] for k in inv_b])
    cand = [np.flatnonzero(key_b == key_a[g]) for g in gens]
    if any(c.size == 0 for c in cand):
        return None
    tb = B.table
    ta = A.table

    # domain covered after generator k: identity, first k + 1 generators,
    # and every element the program builds from them
    domains = [
        np.array([A.identity] + gens[: k + 1] + [a for a, _, _ in steps[: levels[k]]])
        for k in range(len(gens))
    ]

    def extend(F, k):
        for a, b, c in steps[levels[k - 1] if k else 0: levels[k]]:
            F[:, a] = tb[F[:, b], F[:, c]]
        dom = domains[k]
        img = F[:, dom]
        ok = (key_b[img] == key_a[dom]).all(axis=1)
        srt = np.sort(img, axis=1)
        ok &= (srt[:, 1:] != srt[:, :-1]).all(axis=1)
        sub = ta[np.ix_(dom, dom)]
        ok &= (tb[img[:, :, None], img[:, None, :]] == F[:, sub]).all(axis=(1, 2))
        return F[ok]

    # one row per surviving choice of generator images; depth-first over
    # the first generator, breadth-first (vectorized) below it
    for first in cand[0]:
        F = np.full((1, A.order), -1, dtype=np.int64)
        F[:, A.identity] = B.identity
        F[:, gens[0]] = first
        F = extend(F, 0)
        for k in range(1, len(gens)):
            if F.shape[0] == 0:
                break
            c = cand[k]
            F = np.repeat(F, c.size, axis=0)
            F[:, gens[k]] = np.tile(c, F.shape[0] // c.size)
            F = extend(F, k)
        if F.shape[0] and is_isomorphism(A, B, F[0]):
            return F[0]
    return None


def are_isomorphic(A, B) -> np.ndarray | None:
    """A product-preserving bijection A -> B, or None.

    Accepts Subloops or LoopTables.  The returned array maps local
    indices of A to local indices of B (use ``.labels`` for codes).
    Fingerprints are compared first; the exact search backtracks over
    images of a generating set, extending each partial choice through
    the loop product and pruning on per-element invariants.
    """
    A, B = _as_loop(A), _as_loop(B)
    if A.order != B.order:
        return None
    if A.order == 1:
        return np.zeros(1, dtype=np.int64)
    if fingerprint(A) != fingerprint(B):
        return None
    return _search(A, B)


# -- classification ------------------------------------------------------


@dataclass(frozen=True)
class CompositionProfile:
    octonion_count: int
    quasi_octonion_count: int

    def __str__(self):
        return f"[{self.octonion_count}+{self.quasi_octonion_count}]"


@dataclass
class IsoClass:
    representative: Subloop
    members: list[Subloop] = field(default_factory=list)
    label: str = ""
    profile: CompositionProfile | None = None

    @property
    def order(self) -> int:
        return self.representative.order

    @property
    def size(self) -> int:
        return len(self.members)

    def __repr__(self):
        return f"IsoClass({self.label!r}, order={self.order}, size={self.size})"


def composition_profile(S: Subloop, classes: Sequence[IsoClass]) -> CompositionProfile:
    """Counts of maximal subloops of S in the octonion and quasi-octonion classes."""
    label_of = {}
    pool = []
    for c in classes:
        for m in c.members:
            label_of[m.mask] = c.label
            pool.append(m)
    octo = quasi = 0
    for m in maximal_subloops(S, pool):
        lab = label_of.get(m.mask)
        if lab == OCTONION:
            octo += 1
        elif lab == QUASI_OCTONION:
            quasi += 1
        else:
            raise ValueError(f"maximal subloop {m} is neither octonion nor quasi-octonion type")
    return CompositionProfile(octo, quasi)


def _reference(order: int) -> tuple[str, LoopTable] | None:
    n = order.bit_length() - 2
    if order >= 2 and order & (order - 1) == 0 and n in _REFERENCE_NAMES:
        return _REFERENCE_NAMES[n], build_cd_loop(n)
    return None


_PROFILE_NAMES = {(2, 13): "S_L^alpha", (0, 15): "S_L^beta", (8, 7): "S_L^gamma"}


def classify(subloops: Sequence[Subloop]) -> list[IsoClass]:
    """Partition subloops (of one parent) into isomorphy classes.

    Each member is compared against the representatives of the classes
    found so far.  Labels come from structure: isomorphism with the
    Cayley-Dickson reference loops (C2, C4, Q8, O_L, S_L, T_L), the
    Moufang law for order 16, and composition profiles for order 32.
    """
    classes: list[IsoClass] = []
    for s in subloops:
        for c in classes:
            if c.order == s.order and are_isomorphic(c.representative, s) is not None:
                c.members.append(s)
                break
        else:
            classes.append(IsoClass(representative=s, members=[s]))
    _label(classes)
    return classes


def _label(classes: list[IsoClass]) -> None:
    by_order: dict[int, list[IsoClass]] = {}
    for c in classes:
        by_order.setdefault(c.order, []).append(c)
    for order, group in sorted(by_order.items()):
        if order == 1:
            for c in group:
                c.label = "1"
            continue
        ref = _reference(order)
        if ref is not None:
            name, table = ref
            for c in group:
                if are_isomorphic(table, c.representative) is not None:
                    c.label = name
        if order == 16:
            for c in group:
                if not c.label:
                    moufang = check_identity(c.representative.loop, "MOUFANG").holds
                    c.label = OCTONION if moufang else QUASI_OCTONION
        if order == 32 and 16 in by_order:
            for c in group:
                c.profile = composition_profile(c.representative, by_order[16])
            used = Counter()
            for c in group:
                if c.label:
                    continue
                key = (c.profile.octonion_count, c.profile.quasi_octonion_count)
                base = _PROFILE_NAMES.get(key, f"S_L{c.profile}")
                used[base] += 1
                c.label = base if used[base] == 1 else f"{base}{used[base]}"
        for k, c in enumerate(g for g in group if not g.label):
            c.label = f"L{order}_{k + 1}"


def classes_to_csv(classes: Sequence[IsoClass]) -> str:
    """One row per subloop, then one summary row per class."""
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["kind", "order", "support", "label", "size"])
    rows = []
    for c in classes:
        for m in c.members:
            rows.append((m.order, m.support_mask, m, c.label))
    for order, _, m, label in sorted(rows, key=lambda r: (r[0], r[1])):
        w.writerow(["subloop", order, " ".join(map(str, m.support)), label, ""])
    for c in classes:
        w.writerow(["class", c.order, " ".join(map(str, c.representative.support)), c.label, c.size])
    return buf.getvalue()
