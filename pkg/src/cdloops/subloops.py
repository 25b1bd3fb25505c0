"""Subloop enumeration, normality and maximal-subloop relations."""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

import numpy as np

from .cdcore import LoopTable
from .loopcore import ElementSet, closure_mask, elements_of, mask_of

__all__ = [
    "Subloop",
    "enumerate_subloops",
    "enumerate_subloops_by_closure",
    "is_normal",
    "maximal_subloops",
    "subloop_from_support",
    "subloops_to_json",
    "xor_subspaces",
]


@dataclass(frozen=True, eq=False)
class Subloop:
    elements: ElementSet
    parent: LoopTable

    @property
    def mask(self) -> int:
        return self.elements.mask

    @cached_property
    def codes(self) -> list[int]:
        return self.elements.elements

    @property
    def order(self) -> int:
        return len(self.elements)

    @cached_property
    def support(self) -> tuple[int, ...]:
        """Sorted basis indices occurring in the subloop (Cayley-Dickson parents)."""
        half = self.parent.half
        return tuple(sorted({c % half for c in self.codes}))

    @cached_property
    def support_mask(self) -> int:
        return mask_of(self.support)

    @cached_property
    def loop(self) -> LoopTable:
        """The subloop as a standalone LoopTable, labelled by parent codes."""
        el = np.asarray(self.codes, dtype=np.int64)
        pos = np.full(self.parent.order, -1, dtype=np.int64)
        pos[el] = np.arange(el.size)
        local = pos[self.parent.table[np.ix_(el, el)]]
        if (local < 0).any():
            raise ValueError("element set is not closed under the product")
        return LoopTable(
            table=local,
            identity=int(pos[self.parent.identity]),
            labels=el,
        )

    def as_loop(self) -> LoopTable:
        return self.loop

    def __le__(self, other: "Subloop") -> bool:
        return self.mask & ~other.mask == 0

    def __lt__(self, other: "Subloop") -> bool:
        return self.mask != other.mask and self <= other

    def __eq__(self, other):
        return isinstance(other, Subloop) and self.mask == other.mask and self.parent is other.parent

    def __hash__(self):
        return hash(self.mask)

    def __repr__(self):
        if self.parent.dim_log is not None:
            return f"Subloop(order={self.order}, support={list(self.support)})"
        return f"Subloop(order={self.order}, elements={self.codes})"


def _sort_key(s: Subloop):
    return (s.order, s.support_mask if s.parent.dim_log is not None else s.mask)


def xor_subspaces(n: int) -> list[frozenset[int]]:
    """All linear subspaces of the XOR vector space {0, .., 2**n - 1}."""
    dim = 1 << n
    seen = {1: frozenset({0})}  # keyed by membership bit mask
    frontier = [frozenset({0})]
    while frontier:
        nxt = []
        for V in frontier:
            vmask = mask_of(V)
            for v in range(1, dim):
                if vmask >> v & 1:
                    continue
                W = V | {x ^ v for x in V}
                key = mask_of(W)
                if key not in seen:
                    seen[key] = W
                    nxt.append(W)
        frontier = nxt
    return [seen[k] for k in sorted(seen, key=lambda k: (bin(k).count("1"), k))]


def subloop_from_support(L: LoopTable, support) -> Subloop:
    """The subloop +-{e_i : i in support} of a Cayley-Dickson loop."""
    half = L.half
    codes = [i for i in support] + [i + half for i in support]
    return Subloop(ElementSet.of(L, codes), L)


def _is_closed(L: LoopTable, codes: Sequence[int]) -> bool:
    el = np.asarray(codes)
    member = np.zeros(L.order, dtype=bool)
    member[el] = True
    return bool(member[L.table[np.ix_(el, el)]].all())


def enumerate_subloops(L: LoopTable) -> list[Subloop]:
    """Every subloop of a Cayley-Dickson basis loop, trivial and full included.

    Uses the fact that index(e_i e_j) = i ^ j: apart from {e_0}, every
    subloop contains -e_0 and is the signed lift of an XOR subspace.
    Sorted by order, then by support mask.
    """
    if L.dim_log is None:
        raise ValueError("enumerate_subloops needs a Cayley-Dickson loop; "
                         "use enumerate_subloops_by_closure for general loops")
    cached = L._cache.get("subloops")
    if cached is not None:
        return list(cached)
    out = [Subloop(ElementSet.of(L, [L.identity]), L)]
    for V in xor_subspaces(L.dim_log):
        s = subloop_from_support(L, sorted(V))
        if not _is_closed(L, s.codes):
            raise AssertionError(f"lifted support {sorted(V)} is not closed")
        out.append(s)
    out.sort(key=_sort_key)
    L._cache["subloops"] = tuple(out)
    return out


def enumerate_subloops_by_closure(L: LoopTable) -> list[Subloop]:
    """Every subloop of an arbitrary finite loop, by generator closure.

    Starting from the trivial subloop, repeatedly adjoin one element
    outside a known subloop and close.  Every subloop is reached this way
    because it is generated by adding its elements one at a time.
    """
    trivial = 1 << L.identity
    seen = {trivial}
    frontier = [trivial]
    while frontier:
        nxt = []
        for mask in frontier:
            members = elements_of(mask)
            for x in range(L.order):
                if mask >> x & 1:
                    continue
                m = closure_mask(L, members + [x])
                if m not in seen:
                    seen.add(m)
                    nxt.append(m)
        frontier = nxt
    out = [Subloop(ElementSet(m, L), L) for m in seen]
    out.sort(key=_sort_key)
    return out


def is_normal(L: LoopTable, N: Subloop) -> bool:
    """Coset test: xN = Nx, (xN)y = x(Ny) and y(xN) = (yx)N for all x, y."""
    t = L.table
    n = np.asarray(N.codes)

    def same(a, b, axis):
        return bool((np.sort(a, axis=axis) == np.sort(b, axis=axis)).all())

    # xN vs Nx, indexed [x, n]
    if not same(t[:, n], t[n, :].T, axis=1):
        return False
    # (xN)y vs x(Ny), indexed [x, n, y]
    if not same(t[t[:, n], :], t[np.arange(L.order)[:, None, None], t[n, :][None, :, :]], axis=1):
        return False
    # y(xN) vs (yx)N, indexed [y, x, n]
    return same(t[:, t[:, n]], t[t][:, :, n], axis=2)


def maximal_subloops(S: Subloop, all_subloops: Sequence[Subloop]) -> list[Subloop]:
    """Subloops properly inside S with nothing strictly between."""
    below = [T for T in all_subloops if T < S]
    return [T for T in below if not any(T < U for U in below)]


def subloops_to_json(subloops: Sequence[Subloop], normal: Sequence[bool]) -> str:
    rows = [
        {"order": s.order, "support": list(s.support), "normal": bool(flag)}
        for s, flag in zip(subloops, normal)
    ]
    return json.dumps(rows, separators=(",", ":"))
