"""Subloop lattices: Hasse diagram, meet/join tables, modularity, exports."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any, Sequence

import numpy as np

from .loopcore import closure_mask
from .subloops import Subloop

__all__ = [
    "Lattice",
    "LatticeError",
    "build_lattice",
    "export_dot",
    "height",
    "is_modular",
    "join",
    "lattice_to_json",
    "meet",
]


class LatticeError(ValueError):
    """Some meet or join falls outside the node set."""


@dataclass(eq=False)
class Lattice:
    """A finite lattice with precomputed meet and join tables.

    ``leq[i, j]`` is True iff node i <= node j.  ``covers`` lists the
    Hasse edges (i, j) with i covered by j.
    """

    nodes: list[Any]
    leq: np.ndarray
    meet_table: np.ndarray
    join_table: np.ndarray
    covers: list[tuple[int, int]] = field(default_factory=list)

    def __len__(self):
        return len(self.nodes)

    @property
    def bottom(self) -> int:
        return int(np.flatnonzero(self.leq.all(axis=1))[0])

    @property
    def top(self) -> int:
        return int(np.flatnonzero(self.leq.all(axis=0))[0])

    def index(self, node) -> int:
        for i, n in enumerate(self.nodes):
            if n is node or n == node:
                return i
        raise KeyError(node)

    @classmethod
    def from_poset(cls, nodes: Sequence[Any], leq) -> "Lattice":
        """Build from an explicit partial order, computing glb/lub tables.

        Raises LatticeError if some pair lacks a meet or a join.
        """
        leq = np.asarray(leq, dtype=bool)
        n = len(nodes)
        meet_t = np.empty((n, n), dtype=np.int64)
        join_t = np.empty((n, n), dtype=np.int64)
        for a in range(n):
            lower = leq[:, a][:, None] & leq  # lower[c, b]: c <= a and c <= b
            upper = leq[a, :][:, None] & leq.T  # upper[c, b]: a <= c and b <= c
            for b in range(n):
                lo = np.flatnonzero(lower[:, b])
                up = np.flatnonzero(upper[:, b])
                g = [c for c in lo if leq[np.ix_(lo, [c])].all()]
                l_ = [c for c in up if leq[np.ix_([c], up)].all()]
                if len(g) != 1 or len(l_) != 1:
                    raise LatticeError(f"nodes {a} and {b} lack a unique meet or join")
                meet_t[a, b], join_t[a, b] = g[0], l_[0]
        return cls(list(nodes), leq, meet_t, join_t, _covers(leq))


def _covers(leq: np.ndarray) -> list[tuple[int, int]]:
    lt = leq & ~np.eye(len(leq), dtype=bool)
    lti = lt.astype(np.int64)
    between = (lti @ lti) > 0
    return [(int(i), int(j)) for i, j in np.argwhere(lt & ~between)]


def build_lattice(subloops: Sequence[Subloop]) -> Lattice:
    """Lattice of a complete subloop enumeration, ordered by inclusion.

    Meets are intersections and joins are generated subloops of unions;
    a result missing from ``subloops`` raises LatticeError.
    """
    if not subloops:
        raise LatticeError("empty enumeration")
    parent = subloops[0].parent
    nodes = list(subloops)
    n = len(nodes)
    where = {s.mask: i for i, s in enumerate(nodes)}
    member = np.zeros((n, parent.order), dtype=np.int64)
    for i, s in enumerate(nodes):
        member[i, s.codes] = 1
    leq = (member @ (1 - member).T) == 0

    masks = [s.mask for s in nodes]
    meet_t = np.empty((n, n), dtype=np.int64)
    join_t = np.empty((n, n), dtype=np.int64)
    for a in range(n):
        for b in range(a, n):
            m = where.get(masks[a] & masks[b])
            if m is None:
                raise LatticeError(f"meet of {nodes[a]} and {nodes[b]} is not enumerated")
            if leq[a, b]:
                j = b
            elif leq[b, a]:
                j = a
            else:
                j = where.get(closure_mask(parent, nodes[a].codes + nodes[b].codes))
                if j is None:
                    raise LatticeError(f"join of {nodes[a]} and {nodes[b]} is not enumerated")
            meet_t[a, b] = meet_t[b, a] = m
            join_t[a, b] = join_t[b, a] = j
    return Lattice(nodes, leq, meet_t, join_t, _covers(leq))


def meet(lattice: Lattice, a, b):
    i, j = _idx(lattice, a), _idx(lattice, b)
    return lattice.nodes[lattice.meet_table[i, j]]


def join(lattice: Lattice, a, b):
    i, j = _idx(lattice, a), _idx(lattice, b)
    return lattice.nodes[lattice.join_table[i, j]]


def _idx(lattice: Lattice, x) -> int:
    return int(x) if isinstance(x, (int, np.integer)) else lattice.index(x)


def height(lattice: Lattice) -> int:
    """Number of edges in a longest chain from bottom to top."""
    n = len(lattice)
    # nodes in a linear extension: fewer elements below first
    rank = lattice.leq.sum(axis=0)
    longest = np.zeros(n, dtype=np.int64)
    for j in np.argsort(rank, kind="stable"):
        below = [i for i, k in lattice.covers if k == j]
        if below:
            longest[j] = max(longest[i] for i in below) + 1
    return int(longest[lattice.top])


def is_modular(lattice: Lattice) -> tuple[bool, tuple[int, int, int] | None]:
    """Check a <= c  =>  a v (b ^ c) = (a v b) ^ c over all such triples.

    Returns (True, None) or (False, (a, b, c)) with node indices.
    """
    J, M = lattice.join_table, lattice.meet_table
    for a in range(len(lattice)):
        cs = np.flatnonzero(lattice.leq[a])
        lhs = J[a][M[:, cs]]  # [b, c]
        rhs = M[J[a]][:, cs]
        bad = np.argwhere(lhs != rhs)
        if bad.size:
            b, c = bad[0]
            return False, (a, int(b), int(cs[c]))
    return True, None


def _node_json(node) -> Any:
    if isinstance(node, Subloop):
        return {"order": node.order, "support": list(node.support)}
    return str(node)


def lattice_to_json(lattice: Lattice) -> str:
    return json.dumps(
        {
            "nodes": [_node_json(x) for x in lattice.nodes],
            "covers": [list(c) for c in lattice.covers],
        },
        separators=(",", ":"),
    )


def _node_name(node) -> str:
    if isinstance(node, Subloop):
        return f"{node.order}: {{{','.join(map(str, node.support))}}}"
    return str(node)


def export_dot(lattice: Lattice, mode: str = "full", classes=None) -> str:
    """DOT digraph with edges pointing from each node to the nodes covering it.

    ``mode="by-class"`` collapses isomorphy classes (from
    ``isoclass.classify`` over the same nodes) into one block each; a
    block edge X -> Y is drawn when some member of X is covered by some
    member of Y.
    """
    lines = []
    if mode == "full":
        label_of = {}
        if classes is not None:
            for c in classes:
                for m in c.members:
                    label_of[m.mask] = c.label
        lines.append("digraph subloop_lattice {")
        lines.append('  label="complete subloop lattice (Hasse diagram)";')
        lines.append("  rankdir=BT;")
        for i, node in enumerate(lattice.nodes):
            text = _node_name(node)
            if isinstance(node, Subloop) and node.mask in label_of:
                text += f" [{label_of[node.mask]}]"
            lines.append(f'  n{i} [label="{text}"];')
        for i, j in lattice.covers:
            lines.append(f"  n{i} -> n{j};")
    elif mode == "by-class":
        if classes is None:
            raise ValueError("by-class export needs the isomorphy classes")
        cls_of = {}
        for k, c in enumerate(classes):
            for m in c.members:
                cls_of[m.mask] = k
        edges = set()
        for i, j in lattice.covers:
            edges.add((cls_of[lattice.nodes[i].mask], cls_of[lattice.nodes[j].mask]))
        lines.append("digraph subloop_classes {")
        lines.append('  label="subloop lattice by isomorphy class";')
        lines.append("  rankdir=BT;")
        for k, c in enumerate(classes):
            lines.append(f'  c{k} [label="{c.label} (order {c.order}) x{c.size}"];')
        for a, b in sorted(edges):
            lines.append(f"  c{a} -> c{b};")
    else:
        raise ValueError(f"unknown mode {mode!r}; expected 'full' or 'by-class'")
    lines.append("}")
    return "\n".join(lines) + "\n"
