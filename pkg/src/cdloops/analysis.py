"""End-to-end analysis of one Cayley-Dickson loop, checked against expected values.

Expected values live in ``data/expected.json`` keyed by doubling level;
levels without an entry are analysed but produce no PASS/FAIL lines.
"""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass
from functools import cached_property
from importlib import resources
from typing import Any

from .algebra import (
    ALGEBRA_IDENTITIES,
    alg_multiply,
    check_algebra_identity,
    find_zero_divisor,
    norm_sq,
)
from .cdcore import build_cd_loop
from .identities import IDENTITY_NAMES, identity_report, violates
from .isoclass import QUASI_OCTONION, classify, composition_profile
from .lattice import build_lattice, is_modular
from .subloops import enumerate_subloops, is_normal

__all__ = ["Analysis", "Check", "SECTIONS", "load_expected"]

SECTIONS = ("census", "normality", "classes", "profiles", "identities", "algebra", "zerodiv", "lattice")


def load_expected(dim_log: int) -> dict[str, Any]:
    text = resources.files("cdloops").joinpath("data/expected.json").read_text()
    return json.loads(text).get(str(dim_log), {})


@dataclass(frozen=True)
class Check:
    section: str
    name: str
    observed: Any
    expected: Any

    @property
    def passed(self) -> bool:
        return self.observed == self.expected

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"{status}  {self.name}: observed={_fmt(self.observed)} expected={_fmt(self.expected)}"

    def to_json_dict(self) -> dict:
        return {
            "section": self.section,
            "name": self.name,
            "observed": self.observed,
            "expected": self.expected,
            "pass": self.passed,
        }


def _fmt(value) -> str:
    return json.dumps(value, sort_keys=True, separators=(",", ":"))


class Analysis:
    """Lazily computed structure of the level-n basis loop."""

    def __init__(self, dim_log: int, expected: dict | None = None):
        self.dim_log = dim_log
        self.loop = build_cd_loop(dim_log)
        self.expected = load_expected(dim_log) if expected is None else expected

    @cached_property
    def subloops(self):
        return enumerate_subloops(self.loop)

    @property
    def proper(self):
        """Non-trivial proper subloops."""
        return [s for s in self.subloops if 1 < s.order < self.loop.order]

    @cached_property
    def normal(self) -> list[bool]:
        return [is_normal(self.loop, s) for s in self.subloops]

    @cached_property
    def classes(self):
        return classify(self.subloops)

    @cached_property
    def label_of(self) -> dict[int, str]:
        return {m.mask: c.label for c in self.classes for m in c.members}

    @cached_property
    def profiles(self) -> dict[int, Any]:
        """Composition profile of every order-32 subloop below the top."""
        sixteen = [c for c in self.classes if c.order == 16]
        return {
            s.mask: composition_profile(s, sixteen)
            for s in self.proper if s.order == 32
        }

    @cached_property
    def loop_identities(self):
        return identity_report(self.loop)

    @cached_property
    def algebra_identities(self):
        if self.dim_log == 0:
            return {}
        return {name: check_algebra_identity(self.loop, name) for name in ALGEBRA_IDENTITIES}

    @cached_property
    def zero_divisors(self):
        """(support, pair or None) for every 16-dimensional subalgebra."""
        return [
            (s.support, find_zero_divisor(self.loop, s.support))
            for s in self.subloops if s.order == 32
        ]

    @cached_property
    def octonion_zero_divisor(self):
        return find_zero_divisor(self.loop, range(8)) if self.dim_log >= 3 else None

    @cached_property
    def lattice(self):
        return build_lattice(self.subloops)

    # -- checks ------------------------------------------------------------

    def checks(self, sections=SECTIONS) -> list[Check]:
        out = []
        for section in SECTIONS:
            if section in sections:
                out.extend(getattr(self, f"_check_{section}")())
        return out

    def _has(self, *keys) -> bool:
        return all(k in self.expected for k in keys)

    def _check_census(self):
        if not self._has("subloop_counts"):
            return []
        counts = Counter(s.order for s in self.proper)
        observed = {str(k): v for k, v in sorted(counts.items(), reverse=True)}
        return [
            Check("census", "non-trivial proper subloops by order", observed, self.expected["subloop_counts"]),
            Check("census", "non-trivial proper subloop total", sum(counts.values()),
                  sum(self.expected["subloop_counts"].values())),
        ]

    def _check_normality(self):
        if not self._has("all_normal"):
            return []
        flags = [f for s, f in zip(self.subloops, self.normal) if 1 < s.order < self.loop.order]
        return [Check("normality", "all non-trivial proper subloops normal", all(flags), self.expected["all_normal"])]

    def _check_classes(self):
        if not self._has("classes"):
            return []
        out = []
        for order, want in self.expected["classes"].items():
            got = {c.label: c.size for c in self.classes if c.order == int(order)}
            out.append(Check("classes", f"isomorphy classes of order {order}", got, want))
        return out

    def _check_profiles(self):
        out = []
        if self._has("profile_of_class"):
            got = {c.label: str(self.profiles[c.representative.mask])
                   for c in self.classes if c.representative.mask in self.profiles}
            out.append(Check("profiles", "composition type of each order-32 class", got,
                             self.expected["profile_of_class"]))
        if self._has("profile_census"):
            got = dict(Counter(str(p) for p in self.profiles.values()))
            out.append(Check("profiles", "composition-type census", got, self.expected["profile_census"]))
        if self._has("min_quasi_octonion"):
            got = min(p.quasi_octonion_count for p in self.profiles.values())
            out.append(Check("profiles", "minimum quasi-octonion maximal subloops", got,
                             self.expected["min_quasi_octonion"]))
        return out

    def _check_identities(self):
        out = []
        if self._has("loop_identities"):
            got = {name: self.loop_identities[name].holds for name in IDENTITY_NAMES}
            out.append(Check("identities", f"identity battery on the order-{self.loop.order} loop", got,
                             self.expected["loop_identities"]))
        if self._has("moufang_by_class"):
            got, witnesses_ok = {}, True
            for c in self.classes:
                if c.label in self.expected["moufang_by_class"]:
                    res = identity_report(c.representative.loop)["MOUFANG"]
                    got[c.label] = res.holds
                    if not res.holds:
                        witnesses_ok &= violates(c.representative.loop, "MOUFANG", res.witness)
            out.append(Check("identities", "Moufang law on class representatives", got,
                             self.expected["moufang_by_class"]))
            out.append(Check("identities", "Moufang witnesses reproduce", witnesses_ok, True))
        all_witnesses = all(
            violates(self.loop, name, r.witness) for name, r in self.loop_identities.items() if not r.holds
        )
        out.append(Check("identities", "loop identity witnesses reproduce", all_witnesses, True))
        return out

    def _check_algebra(self):
        if not self._has("algebra_identities"):
            return []
        got = {name: r.holds for name, r in self.algebra_identities.items()}
        out = [Check("algebra", "algebra identities on the two-term grid", got, self.expected["algebra_identities"])]
        certified = {name: r.certified for name, r in self.algebra_identities.items()
                     if name in ("FLEX", "PAP")}
        out.append(Check("algebra", "structure-constant certificates", certified, {"FLEX": True, "PAP": True}))
        witnesses_ok = all(_algebra_witness_ok(self.loop, name, r.witness)
                           for name, r in self.algebra_identities.items() if not r.holds)
        out.append(Check("algebra", "algebra identity witnesses reproduce", witnesses_ok, True))
        return out

    def _check_zerodiv(self):
        out = []
        if self._has("zero_divisor_supports"):
            found = [pair for _, pair in self.zero_divisors if pair is not None]
            out.append(Check("zerodiv", "16-dimensional subalgebras with a zero divisor", len(found),
                             self.expected["zero_divisor_supports"]))
            ok = all(
                norm_sq(u) > 0 and norm_sq(v) > 0 and norm_sq(alg_multiply(u, v)) == 0
                for u, v in found
            )
            out.append(Check("zerodiv", "zero-divisor certificates exact", ok, True))
        if self._has("octonion_zero_divisor"):
            out.append(Check("zerodiv", "zero divisor in the octonion support",
                             self.octonion_zero_divisor is not None, self.expected["octonion_zero_divisor"]))
        return out

    def _check_lattice(self):
        out = []
        if self._has("lattice_nodes"):
            out.append(Check("lattice", "subloop lattice nodes", len(self.lattice), self.expected["lattice_nodes"]))
        if self._has("modular"):
            out.append(Check("lattice", "lattice is modular", is_modular(self.lattice)[0], self.expected["modular"]))
        return out


def _algebra_witness_ok(L, name, witness) -> bool:
    def m(a, b):
        return alg_multiply(a, b, L)

    if name == "ALT_left":
        u, v = witness
        return m(u, m(u, v)) != m(m(u, u), v)
    if name == "ALT_right":
        u, v = witness
        return m(m(u, v), v) != m(u, m(v, v))
    if name == "FLEX":
        u, v = witness
        return m(u, m(v, u)) != m(m(u, v), u)
    if name == "PAP":
        (u,) = witness
        powers = [None, u]
        for _ in range(3):
            powers.append(m(powers[-1], u))
        return any(m(powers[a], powers[b]) != powers[a + b]
                   for a in range(1, 4) for b in range(1, 5 - a))
    raise ValueError(name)
