"""Exhaustive checks of loop identities.

Every variable is quantified over the whole loop.  A failing identity
carries the first violating tuple in row-major order, written in the
loop's element labels (parent codes for extracted subloops).  PAP
witnesses are ``(x, a, b)`` with integer exponents a, b.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .cdcore import LoopTable
from .loopcore import inverses

__all__ = [
    "IDENTITY_NAMES",
    "IdentityResult",
    "PAP_MAX_EXPONENT",
    "check_identity",
    "identity_report",
    "report_to_json",
    "violates",
]

IDENTITY_NAMES = (
    "IP", "AP_left", "AP_right", "FL", "CP", "PAP", "WIP", "AAIP", "MOUFANG", "COMM", "ASSOC",
)

PAP_MAX_EXPONENT = 8


@dataclass(frozen=True)
class IdentityResult:
    holds: bool
    witness: tuple[int, ...] | None = None

    def to_json_dict(self) -> dict:
        return {"holds": self.holds, "witness": None if self.witness is None else list(self.witness)}


def _powers(L: LoopTable, kmax: int) -> np.ndarray:
    """P[x, k] = x^k, left-associated."""
    t = L.table
    P = np.empty((L.order, kmax + 1), dtype=np.int64)
    P[:, 0] = L.identity
    x = np.arange(L.order)
    for k in range(1, kmax + 1):
        P[:, k] = t[P[:, k - 1], x]
    return P


# Each checker returns a boolean array over its quantified variables
# (True where the equation holds).

def _ip_left(t, inv, ar):
    l, q = ar[:, None], ar[None, :]
    return t[inv[l], t[l, q]] == q


def _ip_right(t, inv, ar):
    l, q = ar[:, None], ar[None, :]
    return t[t[q, l], inv[l]] == q


def _ap_left(t, inv, ar):
    l, q = ar[:, None], ar[None, :]
    return t[l, t[l, q]] == t[t[l, l], q]


def _ap_right(t, inv, ar):
    l, q = ar[:, None], ar[None, :]
    return t[t[l, q], q] == t[l, t[q, q]]


def _fl(t, inv, ar):
    x, y = ar[:, None], ar[None, :]
    return t[x, t[y, x]] == t[t[x, y], x]


def _cp(t, inv, ar):
    x, y, z = ar[:, None, None], ar[None, :, None], ar[None, None, :]
    return t[x, t[y, t[y, z]]] == t[t[t[x, y], y], z]


def _wip(t, inv, ar):
    l, q = ar[:, None], ar[None, :]
    return t[l, inv[t[q, l]]] == inv[q]


def _aaip(t, inv, ar):
    l, q = ar[:, None], ar[None, :]
    return inv[t[l, q]] == t[inv[q], inv[l]]


def _moufang(t, inv, ar):
    # (xy)(zx) = x((yz)x)
    x, y, z = ar[:, None, None], ar[None, :, None], ar[None, None, :]
    return t[t[x, y], t[z, x]] == t[x, t[t[y, z], x]]


def _comm(t, inv, ar):
    return t == t.T


def _assoc(t, inv, ar):
    x, y, z = ar[:, None, None], ar[None, :, None], ar[None, None, :]
    return t[t[x, y], z] == t[x, t[y, z]]


_CHECKS: dict[str, list[Callable]] = {
    "IP": [_ip_left, _ip_right],
    "AP_left": [_ap_left],
    "AP_right": [_ap_right],
    "FL": [_fl],
    "CP": [_cp],
    "WIP": [_wip],
    "AAIP": [_aaip],
    "MOUFANG": [_moufang],
    "COMM": [_comm],
    "ASSOC": [_assoc],
}


def _check_pap(L: LoopTable) -> IdentityResult:
    kmax = PAP_MAX_EXPONENT
    P = _powers(L, 2 * kmax)
    t = L.table
    a = np.arange(1, kmax + 1)
    # [x, a, b]
    lhs = t[P[:, a][:, :, None], P[:, a][:, None, :]]
    rhs = P[:, a[:, None] + a[None, :]]
    bad = np.argwhere(lhs != rhs)
    if bad.size == 0:
        return IdentityResult(True)
    x, i, j = bad[0]
    return IdentityResult(False, (L.label(x), int(a[i]), int(a[j])))


def check_identity(L: LoopTable, name: str) -> IdentityResult:
    """Exhaustively test one named identity on L."""
    if name == "PAP":
        return _check_pap(L)
    try:
        checks = _CHECKS[name]
    except KeyError:
        raise ValueError(f"unknown identity {name!r}; expected one of {IDENTITY_NAMES}") from None
    t = L.table
    inv = inverses(L)
    ar = np.arange(L.order)
    for fn in checks:
        ok = fn(t, inv, ar)
        if not ok.all():
            idx = np.argwhere(~ok)[0]
            return IdentityResult(False, tuple(L.label(i) for i in idx))
    return IdentityResult(True)


def identity_report(L: LoopTable) -> dict[str, IdentityResult]:
    cached = L._cache.get("identity_report")
    if cached is None:
        cached = {name: check_identity(L, name) for name in IDENTITY_NAMES}
        L._cache["identity_report"] = cached
    return dict(cached)


def violates(L: LoopTable, name: str, witness: tuple[int, ...]) -> bool:
    """Re-substitute a witness (in labels) and confirm it breaks the identity."""
    pos = {int(c): i for i, c in enumerate(L.labels)}
    t = L.table
    if name == "PAP":
        x, a, b = witness
        P = _powers(L, a + b)
        x = pos[x]
        return int(t[P[x, a], P[x, b]]) != int(P[x, a + b])
    vals = [pos[w] for w in witness]
    if name == "COMM":
        x, y = vals
        return int(t[x, y]) != int(t[y, x])
    # evaluate each checker on the grid spanned by the witness values only;
    # the diagonal entry [0, 1(, 2)] is the witness itself
    ar = np.array(vals)
    inv = inverses(L)
    diag = tuple(range(len(vals)))
    return any(not fn(t, inv, ar)[diag] for fn in _CHECKS[name])


def report_to_json(report: dict[str, IdentityResult]) -> str:
    return json.dumps({k: v.to_json_dict() for k, v in report.items()}, separators=(",", ":"))
