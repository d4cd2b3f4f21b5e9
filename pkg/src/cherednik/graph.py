"""Fundamental submodules of standard modules and the block graph Γ."""
from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from graphlib import CycleError, TopologicalSorter
from itertools import permutations

from .block import (
    BlockError,
    BlockLabeling,
    STPair,
    bar_boxes,
    build_labeling,
    enumerate_block,
    require_diagonalizable,
    st_key,
    st_pair,
    tight_check,
)
from .combinatorics import (
    Box,
    Params,
    RPartition,
    c_hat,
    charged_content,
    conjugate,
    is_integer,
    partition_boxes,
)

log = logging.getLogger(__name__)


class ConsistencyError(RuntimeError):
    """An internal invariant failed; the computation cannot be trusted."""


@dataclass(frozen=True)
class FundamentalSubmodule:
    """M_{b,k} (``b2 is None``) or M_{b1,b2,k}; ``sign`` is ±1 for the second kind."""

    host: RPartition
    b1: Box
    k: int
    b2: Box | None = None
    sign: int = 0

    @property
    def kind(self) -> str:
        return "type1" if self.b2 is None else "type2"

    def describe(self) -> str:
        fmt = lambda b: f"[{b.component}:{b.row},{b.col}]"
        if self.b2 is None:
            return f"M({fmt(self.b1)}, {self.k})"
        s = "+" if self.sign > 0 else "-"
        return f"M({fmt(self.b1)}, {fmt(self.b2)}, {self.k}; {s})"

    def sort_key(self):
        return (self.kind, self.b1, self.b2 or self.b1, self.k, self.sign)


# --------------------------------------------------------------------------
# submodules


def _up_left(a: Box, b: Box) -> bool:
    return a.component == b.component and a.row <= b.row and a.col <= b.col


def theorem_submodules(lam: RPartition, p: Params) -> list[FundamentalSubmodule]:
    """Scan every box and box pair for the integrality conditions directly.

    Submodules that are zero for every tableau (b1 weakly above-left of b2 in
    one component) are dropped.
    """
    r = p.r
    out = []
    boxes = lam.boxes()
    rc = {b: r * charged_content(b, p) for b in boxes}
    for b in boxes:
        beta = b.component
        for rho in range(r):
            k = rc[b] + beta - p.dj(beta - rho)
            if is_integer(k) and k > 0 and int(k) % r == rho:
                out.append(FundamentalSubmodule(lam, b, int(k)))
    for b1, b2 in permutations(boxes, 2):
        if _up_left(b1, b2):
            continue
        base = rc[b1] + b1.component - rc[b2] - b2.component
        for sign in (1, -1):
            k = base + sign * r * p.c0
            if is_integer(k) and k > 0 and (int(k) - (b1.component - b2.component)) % r == 0:
                out.append(FundamentalSubmodule(lam, b1, int(k), b2, sign))
    return sorted(set(out), key=FundamentalSubmodule.sort_key)


def st_submodules(lam: RPartition, p: Params, labeling: BlockLabeling | None = None) -> list[FundamentalSubmodule]:
    """Read the fundamental submodules off the (S,T) pair of λ."""
    lab = labeling or build_labeling(p)
    st = st_pair(lam, p)
    bars = bar_boxes(lam, p)
    r, n, ell = p.r, p.n, lab.ell
    S, T = st.S, st.T
    out = set()
    for pos, labels in enumerate(lab.per_box, start=1):
        j, t = S[pos - 1], T[pos - 1]
        for label in labels:
            if j != label.i and st_key(j, t) > (label.k, label.i):
                out.add(FundamentalSubmodule(lam, bars[pos - 1], r * (t - label.k) + j - label.i))

    def pair(x: int, y: int, shift: int) -> None:
        # x is left of y; y's T is read as T(y) + shift
        sx, tx = S[x - 1], T[x - 1]
        sy, ty = S[y - 1], T[y - 1] + shift
        if st_key(sx, tx) > st_key(sy, ty):
            b1, b2, k, sign = bars[x - 1], bars[y - 1], r * (tx - ty) + sx - sy, 1
        elif st_key(sy, ty) > st_key(sx, tx):
            b1, b2, k, sign = bars[y - 1], bars[x - 1], r * (ty - tx) + sy - sx, -1
        else:
            return
        # b1 weakly above-left of b2 in one component: the submodule is zero
        if not _up_left(b1, b2):
            out.add(FundamentalSubmodule(lam, b1, k, b2, sign))

    for x in range(1, n):
        pair(x, x + 1, 0)
    if n > 1:
        pair(n, 1, -ell)
    return sorted(out, key=FundamentalSubmodule.sort_key)


def fundamental_submodules(lam: RPartition, p: Params, labeling: BlockLabeling | None = None) -> list[FundamentalSubmodule]:
    require_diagonalizable(lam, p)
    return st_submodules(lam, p, labeling)


# --------------------------------------------------------------------------
# lowest-degree isotypes


def _cells(lam_part) -> set[tuple[int, int]]:
    return set(partition_boxes(lam_part))


def _shape(cells: set[tuple[int, int]]) -> tuple[int, ...]:
    """Partition with exactly these cells, or raise."""
    if not cells:
        return ()
    rows: dict[int, int] = {}
    for i, j in cells:
        rows[i] = rows.get(i, 0) + 1
    lam = tuple(rows.get(i, 0) for i in range(1, max(rows) + 1))
    if _cells(tuple(x for x in lam if x)) != cells or any(x == 0 for x in lam):
        raise ConsistencyError(f"cells {sorted(cells)} do not form a Young diagram")
    if any(lam[i] < lam[i + 1] for i in range(len(lam) - 1)):
        raise ConsistencyError(f"cells {sorted(cells)} do not form a Young diagram")
    return lam


def lowest_degree_isotype(f: FundamentalSubmodule, p: Params) -> RPartition:
    comps = [_cells(c) for c in f.host.components]
    b = f.b1
    src = comps[b.component]
    if (b.row, b.col) not in src:
        raise ConsistencyError(f"{f.describe()} names a box outside {f.host.text()}")
    if f.b2 is None:
        moved = {(i, j) for i, j in src if i >= b.row and j >= b.col}
        target = (b.component - f.k) % p.r
        comps[b.component] = src - moved
        if comps[target]:
            raise ConsistencyError(f"{f.describe()}: component {target} of {f.host.text()} is not empty")
        comps[target] = {(i - b.row + 1, j - b.col + 1) for i, j in moved}
    else:
        b2 = f.b2
        if f.sign > 0:
            moved = {(i, j) for i, j in src if j == b.col and i >= b.row}
            shifted = {(b2.row + 1 + (i - b.row), b2.col) for i, j in moved}
        else:
            moved = {(i, j) for i, j in src if i == b.row and j >= b.col}
            shifted = {(b2.row, b2.col + 1 + (j - b.col)) for i, j in moved}
        comps[b.component] = src - moved
        dest = comps[b2.component]
        if dest & shifted:
            raise ConsistencyError(f"{f.describe()}: attachment overlaps existing boxes")
        comps[b2.component] = dest | shifted
    mu = RPartition(tuple(_shape(c) for c in comps))
    if mu.size != f.host.size:
        raise ConsistencyError(f"{f.describe()} changed the size of {f.host.text()}")
    return mu


# --------------------------------------------------------------------------
# the graph


@dataclass(frozen=True)
class Arrow:
    source: RPartition
    target: RPartition
    via: FundamentalSubmodule
    degree: int
    composite: bool = False

    @property
    def classification(self) -> str:
        return "composite" if self.composite else "primitive"


class BlockGraph:
    """Γ together with cached reachability and longest-path tables."""

    def __init__(self, p: Params, vertices: list[RPartition], arrows: list[Arrow], tight: bool):
        self.params = p
        self.vertices = vertices
        self.index = {v: i for i, v in enumerate(vertices)}
        self.tight = tight
        self.succ: dict[RPartition, set[RPartition]] = {v: set() for v in vertices}
        self.pred: dict[RPartition, set[RPartition]] = {v: set() for v in vertices}
        for a in arrows:
            self.succ[a.source].add(a.target)
            self.pred[a.target].add(a.source)
        try:
            self.order = list(TopologicalSorter({v: self.pred[v] for v in vertices}).static_order())
        except CycleError as exc:
            raise ConsistencyError(f"Γ has a cycle: {exc.args[1]}") from exc
        self.rank = {v: i for i, v in enumerate(self.order)}
        composite = {
            (a.source, a.target)
            for a in arrows
            if any(rho != a.target and a.target in self.reach[rho] for rho in self.succ[a.source])
        }
        self.arrows = [
            Arrow(a.source, a.target, a.via, a.degree, (a.source, a.target) in composite) for a in arrows
        ]
        self._longest: dict[RPartition, dict[RPartition, int]] = {}
        self._bpoly: dict[RPartition, dict[RPartition, list[int]]] = {}
        self._p_sets: dict[RPartition, frozenset[RPartition]] | None = None

    @cached_property
    def reach(self) -> dict[RPartition, frozenset[RPartition]]:
        """Vertices reachable from each vertex by a nonempty path."""
        out: dict[RPartition, frozenset[RPartition]] = {}
        for v in reversed(self.order):
            acc = set()
            for w in self.succ[v]:
                acc.add(w)
                acc |= out[w]
            out[v] = frozenset(acc)
        return out

    def edges(self) -> set[tuple[RPartition, RPartition]]:
        return {(a.source, a.target) for a in self.arrows}

    def composite_edges(self) -> set[tuple[RPartition, RPartition]]:
        return {(a.source, a.target) for a in self.arrows if a.composite}

    def primitive_edges(self) -> set[tuple[RPartition, RPartition]]:
        return self.edges() - self.composite_edges()

    def longest_to(self, lam: RPartition) -> dict[RPartition, int]:
        """d(μ, λ) for every μ with a path to λ, including λ itself."""
        if lam not in self._longest:
            dist = {lam: 0}
            for v in reversed(self.order):
                best = max((dist[w] + 1 for w in self.succ[v] if w in dist), default=None)
                if best is not None and v != lam:
                    dist[v] = best
            self._longest[lam] = dist
        return self._longest[lam]

    def shortest_to(self, lam: RPartition) -> dict[RPartition, int]:
        dist = {lam: 0}
        for v in reversed(self.order):
            best = min((dist[w] + 1 for w in self.succ[v] if w in dist), default=None)
            if best is not None and v != lam:
                dist[v] = best
        return dist

    def longest_path(self, mu: RPartition, lam: RPartition) -> int | None:
        return self.longest_to(lam).get(mu)

    def set_p_sets(self, p_sets: dict[RPartition, set[RPartition]]) -> None:
        """Install P_λ for every vertex (the intersection-lattice isotypes)."""
        for lam in self.vertices:
            if not p_sets[lam] <= set(self.longest_to(lam)):
                raise ConsistencyError(f"P_{lam.text()} contains a vertex with no path to it")
        self._p_sets = {lam: frozenset(p_sets[lam]) for lam in self.vertices}
        self._bpoly.clear()

    def p_set(self, lam: RPartition) -> set[RPartition]:
        """P_λ; falls back to reachability until lattice data is installed."""
        if self._p_sets is not None:
            return set(self._p_sets[lam])
        return set(self.longest_to(lam))

    @property
    def has_lattice(self) -> bool:
        return self._p_sets is not None

    def b_polynomials_to(self, lam: RPartition) -> dict[RPartition, list[int]]:
        """B_{μ,λ} coefficient lists: chains μ = ρ₀ → ρ₁ → ... → λ with ρ_i ∈ P_{ρ_{i+1}}, counted by length."""
        if lam not in self._bpoly:
            below = self.longest_to(lam)
            polys: dict[RPartition, list[int]] = {lam: [1]}
            for v in reversed(self.order):
                if v not in below or v == lam:
                    continue
                acc: list[int] = []
                for w in self.reach[v]:
                    if w in polys and v in self.p_set(w):
                        pw = polys[w]
                        if len(acc) < len(pw) + 1:
                            acc.extend([0] * (len(pw) + 1 - len(acc)))
                        for i, c in enumerate(pw):
                            acc[i + 1] += c
                polys[v] = acc
            self._bpoly[lam] = polys
        return self._bpoly[lam]

    def sorted_vertices(self) -> list[RPartition]:
        return list(self.vertices)


def build_gamma(p: Params, vertices: list[RPartition] | None = None) -> BlockGraph:
    lab = build_labeling(p)
    verts = vertices if vertices is not None else enumerate_block(p)
    members = set(verts)
    raw: list[Arrow] = []
    for lam in verts:
        for f in fundamental_submodules(lam, p, lab):
            mu = lowest_degree_isotype(f, p)
            if mu not in members:
                raise ConsistencyError(f"{f.describe()} of {lam.text()} lands outside the block: {mu.text()}")
            if mu == lam:
                raise ConsistencyError(f"{f.describe()} of {lam.text()} is a loop")
            deg = c_hat(lam, p) - c_hat(mu, p)
            if not is_integer(deg) or deg <= 0:
                raise ConsistencyError(f"arrow {mu.text()} -> {lam.text()} has degree {deg}")
            raw.append(Arrow(mu, lam, f, int(deg)))
    return BlockGraph(p, verts, raw, tight_check(p, lab).tight)


def hom_relation(g: BlockGraph) -> tuple[set[tuple[RPartition, RPartition]], str | None]:
    pairs = {(mu, lam) for lam in g.vertices for mu in g.p_set(lam) if mu != lam}
    warning = None if g.tight else "block is not tight; reachability need not match the intersection lattice"
    return pairs, warning


def triangles(g: BlockGraph) -> list[tuple[RPartition, RPartition, RPartition]]:
    """Triples (a, b, c) with arrows a→b, b→c and a→c."""
    edges = g.edges()
    out = []
    for a, b in sorted(edges, key=lambda e: (e[0].text(), e[1].text())):
        for c in sorted(g.succ[b], key=RPartition.text):
            if (a, c) in edges:
                out.append((a, b, c))
    return out


def to_dot(g: BlockGraph, name: str = "Gamma") -> str:
    p = g.params
    lines = [f'digraph "{name}" {{', "  rankdir=BT;"]
    top = max((c_hat(v, p) for v in g.vertices), default=Fraction(0))
    for v in g.vertices:
        lines.append(f'  "{v.text()}" [label="{v}", charge="{top - c_hat(v, p)}"];')
    seen = set()
    for a in sorted(g.arrows, key=lambda a: (a.source.text(), a.target.text(), a.via.sort_key())):
        key = (a.source, a.target)
        if key in seen:
            continue
        seen.add(key)
        style = 'style=dashed, class="composite"' if a.composite else 'style=solid, class="primitive"'
        lines.append(f'  "{a.source.text()}" -> "{a.target.text()}" [{style}, degree={a.degree}];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def conjugate_rpartition(lam: RPartition) -> RPartition:
    return RPartition(tuple(conjugate(c) for c in lam.components))


__all__ = [
    "Arrow",
    "BlockError",
    "BlockGraph",
    "ConsistencyError",
    "FundamentalSubmodule",
    "STPair",
    "build_gamma",
    "fundamental_submodules",
    "hom_relation",
    "lowest_degree_isotype",
    "st_submodules",
    "theorem_submodules",
    "to_dot",
    "triangles",
]
