"""Exact-integer Cayley-Dickson algebra over the signed basis loop.

Structure constants are all +-1 (e_i e_j = s(i, j) e_(i ^ j)), so integer
coefficient vectors multiply exactly and zero-divisor certificates carry
no rounding question.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .cdcore import LoopTable, basis_sign_table
from .subloops import Subloop

__all__ = [
    "ALGEBRA_IDENTITIES",
    "AlgebraElement",
    "AlgebraIdentityResult",
    "alg_multiply",
    "basis",
    "check_algebra_identity",
    "conjugate",
    "find_zero_divisor",
    "flexible_certificate",
    "norm_sq",
    "power_associative_certificate",
    "subalgebra_basis",
    "two_term_grid",
    "zero_divisors_to_json",
]

ALGEBRA_IDENTITIES = ("FLEX", "ALT_left", "ALT_right", "PAP")

_CHUNK = 1 << 22  # elements per intermediate block in batched products


class AlgebraElement:
    """A vector of exact integer coefficients over e_0 .. e_(2**n - 1)."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        c = np.array(coeffs, dtype=np.int64)
        if c.ndim != 1 or c.size == 0 or c.size & (c.size - 1):
            raise ValueError(f"coefficient vector length must be a power of two, got {c.shape}")
        self.coeffs = c

    @classmethod
    def zero(cls, dim: int) -> "AlgebraElement":
        return cls(np.zeros(dim, dtype=np.int64))

    @property
    def dim(self) -> int:
        return self.coeffs.size

    def _check(self, other):
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        if other.dim != self.dim:
            raise ValueError(f"dimension mismatch: {self.dim} vs {other.dim}")
        return other

    def __add__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return AlgebraElement(self.coeffs + other.coeffs)

    def __sub__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return AlgebraElement(self.coeffs - other.coeffs)

    def __neg__(self):
        return AlgebraElement(-self.coeffs)

    def __rmul__(self, scalar):
        if isinstance(scalar, (int, np.integer)):
            return AlgebraElement(int(scalar) * self.coeffs)
        return NotImplemented

    def __mul__(self, other):
        if isinstance(other, (int, np.integer)):
            return AlgebraElement(self.coeffs * int(other))
        other = self._check(other)
        if other is NotImplemented:
            return other
        return AlgebraElement(_mul(self.coeffs, other.coeffs))

    def __eq__(self, other):
        return isinstance(other, AlgebraElement) and np.array_equal(self.coeffs, other.coeffs)

    def __hash__(self):
        return hash(self.coeffs.tobytes())

    def is_zero(self) -> bool:
        return not self.coeffs.any()

    def __repr__(self):
        terms = [
            f"{'+' if c > 0 else '-'}{abs(c) if abs(c) != 1 else ''}e{i}"
            for i, c in enumerate(self.coeffs.tolist()) if c
        ]
        return "AlgebraElement(" + (" ".join(terms) if terms else "0") + f"; dim={self.dim})"

    def tolist(self) -> list[int]:
        return self.coeffs.tolist()


def basis(i: int, dim: int, sign: int = 1) -> AlgebraElement:
    c = np.zeros(dim, dtype=np.int64)
    c[i] = sign
    return AlgebraElement(c)


def _level(dim: int) -> int:
    return dim.bit_length() - 1


def _xor_index(dim: int) -> np.ndarray:
    ar = np.arange(dim)
    return ar[:, None] ^ ar[None, :]


def _mul(u: np.ndarray, v: np.ndarray) -> np.ndarray:
    """Batched product over the last axis: (uv)_k = sum_i s(i, i^k) u_i v_(i^k)."""
    u, v = np.broadcast_arrays(u, v)
    dim = u.shape[-1]
    S = basis_sign_table(_level(dim)).astype(np.int64)
    X = _xor_index(dim)  # X[i, k] = i ^ k
    SX = S[np.arange(dim)[:, None], X]
    batch = u.shape[:-1]
    uf, vf = u.reshape(-1, dim), v.reshape(-1, dim)
    out = np.empty_like(uf)
    step = max(1, _CHUNK // (dim * dim))
    for lo in range(0, uf.shape[0], step):
        # term[b, i, k] = s(i, i^k) u_i v_(i^k)
        term = SX * uf[lo:lo + step, :, None] * vf[lo:lo + step][:, X]
        out[lo:lo + step] = term.sum(axis=1)
    return out.reshape(*batch, dim)


def alg_multiply(u: AlgebraElement, v: AlgebraElement, L: LoopTable | None = None) -> AlgebraElement:
    """Bilinear extension of the basis product of L (or of the dimension's loop)."""
    if u.dim != v.dim:
        raise ValueError(f"dimension mismatch: {u.dim} vs {v.dim}")
    if L is not None and L.half != u.dim:
        raise ValueError(f"loop has {L.half} basis elements, vectors have {u.dim}")
    return AlgebraElement(_mul(u.coeffs, v.coeffs))


def conjugate(u: AlgebraElement) -> AlgebraElement:
    c = -u.coeffs
    c[0] = u.coeffs[0]
    return AlgebraElement(c)


def norm_sq(u: AlgebraElement) -> int:
    return int(np.dot(u.coeffs, u.coeffs))


# -- zero divisors ---------------------------------------------------------


def _two_term_pairs(support: Sequence[int]):
    """Index arrays (a, b, s) for every e_a + s e_b, a < b, s = +-1."""
    pairs = list(itertools.combinations(sorted(support), 2))
    a = np.array([p[0] for p in pairs] * 2, dtype=np.int64)
    b = np.array([p[1] for p in pairs] * 2, dtype=np.int64)
    s = np.array([1] * len(pairs) + [-1] * len(pairs), dtype=np.int64)
    return a, b, s


def find_zero_divisor(L: LoopTable, support: Iterable[int]) -> tuple[AlgebraElement, AlgebraElement] | None:
    """First pair (e_a + s e_b)(e_c + t e_d) = 0 supported on ``support``.

    Searches every two-term signed combination on both sides, in a fixed
    lexicographic order; None if the search space holds no zero divisor.
    """
    support = sorted(set(support))
    dim = L.half
    a, b, s = _two_term_pairs(support)
    if a.size == 0:
        return None
    S = basis_sign_table(L.dim_log).astype(np.int64)
    ones = np.ones_like(s)
    ui, vi = np.meshgrid(np.arange(a.size), np.arange(a.size), indexing="ij")
    # uv = e_a e_c + t e_a e_d + s e_b e_c + s t e_b e_d, each term on one index
    total = np.zeros((a.size, a.size, dim), dtype=np.int64)
    for x, cx in ((a, ones), (b, s)):
        for y, cy in ((a, ones), (b, s)):
            X, Y = x[ui], y[vi]
            np.add.at(total, (ui, vi, X ^ Y), cx[ui] * cy[vi] * S[X, Y])
    hits = np.argwhere(~total.any(axis=2))
    if hits.size == 0:
        return None
    i, j = hits[0]
    u = basis(int(a[i]), dim) + int(s[i]) * basis(int(b[i]), dim)
    v = basis(int(a[j]), dim) + int(s[j]) * basis(int(b[j]), dim)
    return u, v


def zero_divisors_to_json(found: Sequence[tuple[Sequence[int], tuple[AlgebraElement, AlgebraElement] | None]]) -> str:
    rows = []
    for support, pair in found:
        if pair is None:
            rows.append({"support": list(support), "u": None, "v": None})
        else:
            rows.append({"support": list(support), "u": pair[0].tolist(), "v": pair[1].tolist()})
    return json.dumps(rows, separators=(",", ":"))


# -- algebra-level identities --------------------------------------------


@dataclass(frozen=True)
class AlgebraIdentityResult:
    holds: bool
    witness: tuple[AlgebraElement, ...] | None = None
    certified: bool = False  # True when a structure-constant proof backs ``holds``


def two_term_grid(dim: int) -> np.ndarray:
    """Rows e_a + s e_b (a < b, s = +-1) followed by the basis rows e_i."""
    a, b, s = _two_term_pairs(range(dim))
    rows = np.zeros((a.size + dim, dim), dtype=np.int64)
    rows[np.arange(a.size), a] = 1
    rows[np.arange(a.size), b] = s
    rows[a.size + np.arange(dim), np.arange(dim)] = 1
    return rows


def flexible_certificate(dim: int) -> tuple[int, int, int] | None:
    """Check the linearized flexible law on all basis triples.

    u(vu) = (uv)u for all u, v iff for all i, j, k
    e_i(e_j e_k) + e_k(e_j e_i) = (e_i e_j)e_k + (e_k e_j)e_i.
    Returns None when it holds everywhere, else a failing (i, j, k).
    """
    S = basis_sign_table(_level(dim)).astype(np.int64)
    ar = np.arange(dim)
    i, j, k = ar[:, None, None], ar[None, :, None], ar[None, None, :]
    # every term lands on e_(i^j^k); compare signs only
    lhs = S[j, k] * S[i, j ^ k] + S[j, i] * S[k, j ^ i]
    rhs = S[i, j] * S[i ^ j, k] + S[k, j] * S[k ^ j, i]
    bad = np.argwhere(lhs != rhs)
    return None if bad.size == 0 else tuple(int(x) for x in bad[0])


def power_associative_certificate(dim: int) -> tuple[int, int] | None:
    """Check u^2 = 2 u_0 u - |u|^2 e_0 on all basis pairs (linearized).

    The linearized form is e_i e_j + e_j e_i = 2 d_i0 e_j + 2 d_j0 e_i
    - 2 d_ij e_0.  When it holds every u generates the commutative
    associative algebra span(e_0, u), so all powers of u associate.
    Returns None when it holds, else a failing (i, j).
    """
    S = basis_sign_table(_level(dim)).astype(np.int64)
    for i in range(dim):
        for j in range(i, dim):
            got = np.zeros(dim, dtype=np.int64)
            got[i ^ j] += S[i, j] + S[j, i]
            want = np.zeros(dim, dtype=np.int64)
            if i == 0:
                want[j] += 2
            if j == 0:
                want[i] += 2
            if i == j:
                want[0] -= 2
            if not np.array_equal(got, want):
                return i, j
    return None


def _left_powers(U: np.ndarray, kmax: int) -> list[np.ndarray]:
    P = [None, U]
    for _ in range(2, kmax + 1):
        P.append(_mul(P[-1], U))
    return P


def check_algebra_identity(L: LoopTable, name: str) -> AlgebraIdentityResult:
    """Test an algebra identity on the deterministic two-term grid.

    FLEX:      u(vu) = (uv)u
    ALT_left:  u(uv) = (uu)v
    ALT_right: (uv)v = u(vv)
    PAP:       u^a u^b = u^(a+b), a + b <= 4, left-associated powers

    Each identity is linear in the variable that appears once, so that
    variable ranges over the basis; the other ranges over the two-term
    grid.  FLEX and PAP additionally get a structure-constant certificate
    over all basis pairs/triples.
    """
    dim = L.half
    grid = two_term_grid(dim)
    eye = np.eye(dim, dtype=np.int64)

    def first_failure(lhs, rhs):
        bad = np.argwhere((lhs != rhs).any(axis=-1))
        return None if bad.size == 0 else bad[0]

    if name == "FLEX":
        U, V = grid[:, None, :], eye[None, :, :]
        U, V = np.broadcast_arrays(U, V)
        bad = first_failure(_mul(U, _mul(V, U)), _mul(_mul(U, V), U))
        if bad is not None:
            return AlgebraIdentityResult(False, (AlgebraElement(grid[bad[0]]), AlgebraElement(eye[bad[1]])))
        return AlgebraIdentityResult(True, certified=flexible_certificate(dim) is None)
    if name == "ALT_left":
        U, V = np.broadcast_arrays(grid[:, None, :], eye[None, :, :])
        bad = first_failure(_mul(U, _mul(U, V)), _mul(_mul(U, U), V))
        if bad is not None:
            return AlgebraIdentityResult(False, (AlgebraElement(grid[bad[0]]), AlgebraElement(eye[bad[1]])))
        return AlgebraIdentityResult(True)
    if name == "ALT_right":
        U, V = np.broadcast_arrays(eye[:, None, :], grid[None, :, :])
        bad = first_failure(_mul(_mul(U, V), V), _mul(U, _mul(V, V)))
        if bad is not None:
            return AlgebraIdentityResult(False, (AlgebraElement(eye[bad[0]]), AlgebraElement(grid[bad[1]])))
        return AlgebraIdentityResult(True)
    if name == "PAP":
        P = _left_powers(grid, 4)
        for a_exp in range(1, 4):
            for b_exp in range(1, 5 - a_exp):
                bad = first_failure(_mul(P[a_exp], P[b_exp]), P[a_exp + b_exp])
                if bad is not None:
                    return AlgebraIdentityResult(False, (AlgebraElement(grid[bad[0]]),))
        return AlgebraIdentityResult(True, certified=power_associative_certificate(dim) is None)
    raise ValueError(f"unknown algebra identity {name!r}; expected one of {ALGEBRA_IDENTITIES}")


def subalgebra_basis(S: Subloop) -> tuple[int, ...]:
    """Basis indices spanning the subalgebra that corresponds to S.

    The span is checked to be closed under the algebra product.
    """
    support = S.support
    member = set(support)
    for i in support:
        for j in support:
            if i ^ j not in member:
                raise ValueError(f"support of {S} is not closed: e{i} e{j} leaves it")
    return support
