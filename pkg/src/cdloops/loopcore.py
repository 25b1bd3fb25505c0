"""Generic finite-loop predicates and constructions on :class:`LoopTable`."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

import numpy as np

from .cdcore import LoopTable

__all__ = [
    "ElementSet",
    "LoopAxiomError",
    "NotPowerAssociativeError",
    "closure",
    "closure_mask",
    "element_order",
    "element_orders",
    "elements_of",
    "inverse_of",
    "inverses",
    "is_associative",
    "is_latin_square",
    "mask_of",
    "power",
]


class LoopAxiomError(ValueError):
    """The table violates an axiom the operation relies on."""


class NotPowerAssociativeError(LoopAxiomError):
    pass


def mask_of(elements: Iterable[int]) -> int:
    m = 0
    for x in elements:
        m |= 1 << int(x)
    return m


def elements_of(mask: int) -> list[int]:
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out


@dataclass(frozen=True)
class ElementSet:
    """A subset of a parent loop, stored as a bit mask over element indices."""

    mask: int
    parent: LoopTable

    @classmethod
    def of(cls, parent: LoopTable, elements: Iterable[int]) -> "ElementSet":
        return cls(mask_of(elements), parent)

    @property
    def elements(self) -> list[int]:
        return elements_of(self.mask)

    def __len__(self):
        return bin(self.mask).count("1")

    def __contains__(self, x: int) -> bool:
        return bool(self.mask >> int(x) & 1)

    def __iter__(self):
        return iter(self.elements)

    def __le__(self, other: "ElementSet") -> bool:
        return self.mask & ~other.mask == 0

    def __or__(self, other: "ElementSet") -> "ElementSet":
        return ElementSet(self.mask | other.mask, self.parent)

    def __and__(self, other: "ElementSet") -> "ElementSet":
        return ElementSet(self.mask & other.mask, self.parent)

    def __hash__(self):
        return hash(self.mask)

    def __eq__(self, other):
        return isinstance(other, ElementSet) and self.mask == other.mask


def is_latin_square(L: LoopTable) -> bool:
    """True iff every row and every column is a permutation of the elements."""
    t = L.table
    m = L.order
    if t.min() < 0 or t.max() >= m:
        return False
    target = np.arange(m)
    return bool(
        (np.sort(t, axis=1) == target).all() and (np.sort(t, axis=0) == target[:, None]).all()
    )


def inverses(L: LoopTable) -> np.ndarray:
    """Two-sided inverse of every element, as an index array.

    Raises LoopAxiomError if some element's left and right inverses differ.
    """
    cached = L._cache.get("inverses")
    if cached is not None:
        return cached
    e = L.identity
    t = L.table
    right = np.argmax(t == e, axis=1)  # x * right[x] = e
    left = np.argmax(t == e, axis=0)  # left[y] * y = e
    if not (t[np.arange(L.order), right] == e).all():
        raise LoopAxiomError("some element has no right inverse")
    if not (right == left).all():
        x = int(np.flatnonzero(right != left)[0])
        raise LoopAxiomError(
            f"element {L.label(x)} has distinct left and right inverses"
        )
    right.setflags(write=False)
    L._cache["inverses"] = right
    return right


def inverse_of(L: LoopTable, x: int) -> int:
    return int(inverses(L)[x])


def closure_mask(L: LoopTable, gens: Iterable[int]) -> int:
    """Bit mask of the subloop generated by ``gens`` (identity included)."""
    t = L.table
    member = np.zeros(L.order, dtype=bool)
    member[np.fromiter(gens, dtype=np.int64)] = True
    member[L.identity] = True
    count = int(member.sum())
    # worklist: products of known elements until no growth
    while True:
        el = np.flatnonzero(member)
        member[t[el][:, el]] = True
        grown = int(member.sum())
        if grown == count:
            break
        count = grown
    return mask_of(np.flatnonzero(member).tolist())


def closure(L: LoopTable, gens: ElementSet | Iterable[int]) -> ElementSet:
    """Least closed subset containing ``gens`` and the identity."""
    items = gens.elements if isinstance(gens, ElementSet) else list(gens)
    if not items:
        raise ValueError("closure needs at least one generator")
    return ElementSet(closure_mask(L, items), L)


def power(L: LoopTable, x: int, k: int) -> int:
    """Left-associated power x^k = (..((x x) x)..) x, with x^0 the identity."""
    if k < 0:
        raise ValueError("negative exponent")
    y = L.identity
    for _ in range(k):
        y = int(L.table[y, x])
    return y


def element_order(L: LoopTable, x: int) -> int:
    """Least k >= 1 with x^k equal to the identity, using left-associated powers.

    Raises NotPowerAssociativeError if the powers of x never return to the
    identity or do not repeat with that period.
    """
    e = L.identity
    y = x
    for k in range(1, L.order + 1):
        if y == e:
            break
        y = int(L.table[y, x])
    else:
        raise NotPowerAssociativeError(f"powers of {L.label(x)} never reach the identity")
    # the sequence must be cyclic: x^(k+j) == x^j for a full period
    z = e
    for j in range(1, k + 1):
        z = int(L.table[z, x])
        if power(L, x, k + j) != z:
            raise NotPowerAssociativeError(f"powers of {L.label(x)} are not cyclic")
    return k


def element_orders(L: LoopTable) -> np.ndarray:
    cached = L._cache.get("orders")
    if cached is None:
        cached = np.array([element_order(L, x) for x in range(L.order)], dtype=np.int64)
        cached.setflags(write=False)
        L._cache["orders"] = cached
    return cached


def is_associative(L: LoopTable, within: ElementSet | None = None) -> bool:
    """(xy)z == x(yz) for all triples drawn from ``within`` (default: all of L)."""
    t = L.table
    s = np.arange(L.order) if within is None else np.asarray(within.elements)
    xy = t[np.ix_(s, s)]  # [x, y]
    yz = t[np.ix_(s, s)]  # [y, z]
    lhs = t[xy[:, :, None], s[None, None, :]]
    rhs = t[s[:, None, None], yz[None, :, :]]
    return bool((lhs == rhs).all())
