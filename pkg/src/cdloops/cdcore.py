"""
Cayley-Dickson basis loops.

The 2**n basis elements e_0 .. e_{N-1} of the 2**n-dimensional
Cayley-Dickson algebra, together with their negatives, form a loop of
order 2N under the algebra product.  Elements are stored as integer
codes: ``code < N`` is ``+e_code`` and ``code >= N`` is ``-e_(code - N)``.

Doubling convention::

    (a, b)(c, d) = (ac - conj(d) b,  d a + b conj(c))

For basis elements this reduces to four sign cases, with p = i mod h,
q = j mod h, h = N/2 and s the sign at the previous level:

    i < h, j < h :  s(p, q)
    i < h, j >= h:  s(q, p)
    i >= h, j < h:  s(p, q) * c(q)
    i >= h, j >= h: -c(q) * s(q, p)

where c(0) = +1 and c(q) = -1 otherwise.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

__all__ = [
    "LoopTable",
    "MAX_DIM_LOG",
    "basis_sign_table",
    "build_cd_loop",
    "format_code",
    "index_of",
    "multiply_basis",
    "negate",
    "sign_of",
    "signed_code",
]

MAX_DIM_LOG = 8


def index_of(code: int, half: int) -> int:
    return code % half


def sign_of(code: int, half: int) -> int:
    return 1 if code < half else -1


def signed_code(sign: int, index: int, half: int) -> int:
    """Code for ``sign * e_index``."""
    return index if sign > 0 else index + half


def negate(code: int, half: int) -> int:
    """Additive negation of a signed basis element."""
    if not 0 <= code < 2 * half:
        raise ValueError(f"code {code} out of range for half-order {half}")
    return (code + half) % (2 * half)


def format_code(code: int, half: int) -> str:
    return ("+" if code < half else "-") + f"e{code % half}"


def _check_level(n: int) -> None:
    if not isinstance(n, (int, np.integer)) or isinstance(n, bool):
        raise TypeError(f"doubling level must be an integer, got {n!r}")
    if not 0 <= n <= MAX_DIM_LOG:
        raise ValueError(f"doubling level must lie in [0, {MAX_DIM_LOG}], got {n}")


@lru_cache(maxsize=None)
def _sign(i: int, j: int, n: int) -> int:
    if n == 0:
        return 1
    h = 1 << (n - 1)
    p, q = i & (h - 1), j & (h - 1)
    conj_q = 1 if q == 0 else -1
    if i < h:
        return _sign(p, q, n - 1) if j < h else _sign(q, p, n - 1)
    if j < h:
        return _sign(p, q, n - 1) * conj_q
    return -conj_q * _sign(q, p, n - 1)


def multiply_basis(i: int, j: int, n: int) -> tuple[int, int]:
    """Product of basis elements at doubling level n.

    Returns ``(sign, k)`` with ``e_i e_j = sign * e_k`` and ``k = i ^ j``.
    """
    _check_level(n)
    dim = 1 << n
    if not (0 <= i < dim and 0 <= j < dim):
        raise ValueError(f"basis indices must lie in [0, {dim}), got ({i}, {j})")
    return _sign(i, j, n), i ^ j


@lru_cache(maxsize=None)
def basis_sign_table(n: int) -> np.ndarray:
    """The 2**n x 2**n matrix of structure-constant signs (read-only)."""
    _check_level(n)
    if n == 0:
        out = np.ones((1, 1), dtype=np.int8)
    else:
        # fill by the same four cases, one quadrant at a time
        prev = basis_sign_table(n - 1).astype(np.int8)
        h = 1 << (n - 1)
        conj = np.full(h, -1, dtype=np.int8)
        conj[0] = 1
        out = np.empty((2 * h, 2 * h), dtype=np.int8)
        out[:h, :h] = prev
        out[:h, h:] = prev.T
        out[h:, :h] = prev * conj[None, :]
        out[h:, h:] = -(conj[None, :] * prev.T)
    out.setflags(write=False)
    return out


@dataclass(frozen=True, eq=False)
class LoopTable:
    """A finite loop given by its Cayley table.

    ``table[x, y]`` is the local index of ``x * y``.  For loops built by
    :func:`build_cd_loop` local indices coincide with signed-index codes.
    Loops extracted from a parent (see ``Subloop.as_loop``) carry the
    parent codes of their elements in ``labels``.
    """

    table: np.ndarray
    identity: int = 0
    dim_log: int | None = None
    labels: np.ndarray | None = None
    name: str = ""
    _cache: dict = field(default_factory=dict, repr=False, compare=False)

    def __post_init__(self):
        t = np.ascontiguousarray(self.table, dtype=np.int64)
        if t.ndim != 2 or t.shape[0] != t.shape[1]:
            raise ValueError(f"Cayley table must be square, got shape {t.shape}")
        t.setflags(write=False)
        object.__setattr__(self, "table", t)
        if self.labels is None:
            labels = np.arange(t.shape[0], dtype=np.int64)
        else:
            labels = np.asarray(self.labels, dtype=np.int64).copy()
            if labels.shape != (t.shape[0],):
                raise ValueError("labels must have one entry per element")
        labels.setflags(write=False)
        object.__setattr__(self, "labels", labels)

    @property
    def order(self) -> int:
        return self.table.shape[0]

    @property
    def half(self) -> int:
        """N, the number of basis elements, for Cayley-Dickson loops."""
        if self.dim_log is None:
            raise AttributeError("not a Cayley-Dickson basis loop")
        return 1 << self.dim_log

    def mul(self, x: int, y: int) -> int:
        return int(self.table[x, y])

    def label(self, x: int) -> int:
        return int(self.labels[x])

    def to_json_dict(self) -> dict:
        return {
            "dim_log": self.dim_log,
            "order": self.order,
            "table": self.table.ravel().tolist(),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), separators=(",", ":"))

    @classmethod
    def from_json_dict(cls, data: dict) -> "LoopTable":
        m = int(data["order"])
        table = np.asarray(data["table"], dtype=np.int64).reshape(m, m)
        return cls(table=table, identity=0, dim_log=data.get("dim_log"))

    def __repr__(self):
        tag = f", dim_log={self.dim_log}" if self.dim_log is not None else ""
        name = f" {self.name}" if self.name else ""
        return f"<LoopTable{name} order={self.order}{tag}>"


_LOOP_NAMES = {0: "R_L", 1: "C_L", 2: "H_L", 3: "O_L", 4: "S_L", 5: "T_L"}


@lru_cache(maxsize=None)
def build_cd_loop(n: int) -> LoopTable:
    """Signed basis loop of the 2**n-dimensional Cayley-Dickson algebra.

    >>> build_cd_loop(5).order
    64
    """
    _check_level(n)
    half = 1 << n
    signs = basis_sign_table(n).astype(np.int64)
    idx = np.arange(half)
    prod_index = idx[:, None] ^ idx[None, :]
    # sign(x) * sign(y) * s(ix, iy), index ix ^ iy, over all 2N x 2N codes
    codes = np.arange(2 * half)
    ix, sx = codes % half, np.where(codes < half, 1, -1)
    s = sx[:, None] * sx[None, :] * signs[ix[:, None], ix[None, :]]
    k = prod_index[ix[:, None], ix[None, :]]
    table = np.where(s > 0, k, k + half)
    return LoopTable(table=table, identity=0, dim_log=n, name=_LOOP_NAMES.get(n, ""))
