"""Graded decomposition matrices, their inverses and BGG resolutions read off Γ."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping

from .combinatorics import Params, RPartition, conjugate, hook
from .graph import BlockGraph, ConsistencyError


class VPoly:
    """Laurent polynomial in v with integer coefficients (immutable)."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Mapping[int, int] | None = None):
        self.coeffs = {e: c for e, c in (coeffs or {}).items() if c}

    @classmethod
    def monomial(cls, exp: int, coeff: int = 1) -> "VPoly":
        return cls({exp: coeff})

    def __add__(self, other: "VPoly") -> "VPoly":
        out = dict(self.coeffs)
        for e, c in other.coeffs.items():
            out[e] = out.get(e, 0) + c
        return VPoly(out)

    def __mul__(self, other: "VPoly") -> "VPoly":
        out: dict[int, int] = {}
        for e1, c1 in self.coeffs.items():
            for e2, c2 in other.coeffs.items():
                out[e1 + e2] = out.get(e1 + e2, 0) + c1 * c2
        return VPoly(out)

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = VPoly({0: other})
        return isinstance(other, VPoly) and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(tuple(sorted(self.coeffs.items())))

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def at(self, v: int) -> int:
        return sum(c * v**e for e, c in self.coeffs.items())

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        terms = []
        for e in sorted(self.coeffs):
            c = self.coeffs[e]
            mono = "1" if e == 0 else ("v" if e == 1 else f"v^{e}")
            if e == 0:
                body = str(abs(c))
            elif abs(c) == 1:
                body = mono
            else:
                body = f"{abs(c)}{mono}"
            terms.append(("-" if c < 0 else "+") + body)
        text = "".join(terms)
        return text[1:] if text.startswith("+") else text

    __repr__ = __str__


ZERO = VPoly()
ONE = VPoly({0: 1})


@dataclass
class GradedMatrix:
    """Square matrix over Z[v, v⁻¹]; rows and columns share ``labels``."""

    labels: list[RPartition]
    entries: list[list[VPoly]]
    verified: bool = True

    def __getitem__(self, key: tuple[RPartition, RPartition]) -> VPoly:
        idx = {v: i for i, v in enumerate(self.labels)}
        return self.entries[idx[key[0]]][idx[key[1]]]

    def row(self, lam: RPartition) -> dict[RPartition, VPoly]:
        i = self.labels.index(lam)
        return {mu: e for mu, e in zip(self.labels, self.entries[i]) if e}

    def __matmul__(self, other: "GradedMatrix") -> "GradedMatrix":
        if self.labels != other.labels:
            raise ValueError("label mismatch")
        m = len(self.labels)
        out = []
        for i in range(m):
            row = []
            for j in range(m):
                acc = ZERO
                for k in range(m):
                    a = self.entries[i][k]
                    if a:
                        b = other.entries[k][j]
                        if b:
                            acc = acc + a * b
                row.append(acc)
            out.append(row)
        return GradedMatrix(list(self.labels), out, self.verified and other.verified)

    def is_identity(self) -> bool:
        return all(
            e == (ONE if i == j else ZERO) for i, row in enumerate(self.entries) for j, e in enumerate(row)
        )

    def to_tsv(self) -> str:
        lines = ["\t".join([""] + [v.text() for v in self.labels])]
        for lam, row in zip(self.labels, self.entries):
            lines.append("\t".join([lam.text()] + [str(e) for e in row]))
        return "\n".join(lines) + "\n"

    def to_json(self) -> dict:
        return {
            "labels": [v.text() for v in self.labels],
            "entries": [[str(e) for e in row] for row in self.entries],
            "verified": self.verified,
        }


def graded_dec_matrix(g: BlockGraph) -> GradedMatrix:
    """Entry (λ, μ) is v^{d(μ,λ)} when μ ∈ P_λ."""
    labels = g.sorted_vertices()
    rows = []
    for lam in labels:
        dist = g.longest_to(lam)
        pl = g.p_set(lam)
        rows.append([VPoly.monomial(dist[mu]) if mu in pl else ZERO for mu in labels])
    return GradedMatrix(labels, rows, g.tight)


def b_polynomial(g: BlockGraph, mu: RPartition, lam: RPartition) -> list[int]:
    """Coefficients b_0, b_1, ... of B_{μ,λ}; empty when μ does not reach λ."""
    return list(g.b_polynomials_to(lam).get(mu, []))


def b_at_minus_one(coeffs: Iterable[int]) -> int:
    return sum(c * (-1) ** i for i, c in enumerate(coeffs))


def inverse_dec_matrix(g: BlockGraph, check: bool = True) -> GradedMatrix:
    """Entry (λ, μ) is B_{μ,λ}(−1)·v^{d(μ,λ)}; optionally verified against the dec matrix."""
    labels = g.sorted_vertices()
    rows = []
    for lam in labels:
        dist = g.longest_to(lam)
        polys = g.b_polynomials_to(lam)
        rows.append(
            [VPoly.monomial(dist[mu], b_at_minus_one(polys[mu])) if polys.get(mu) else ZERO for mu in labels]
        )
    inv = GradedMatrix(labels, rows, g.tight)
    if check:
        dec = graded_dec_matrix(g)
        if not (inv @ dec).is_identity() or not (dec @ inv).is_identity():
            raise ConsistencyError("inverse matrix does not invert the graded decomposition matrix")
    return inv


# --------------------------------------------------------------------------
# resolutions


@dataclass
class Resolution:
    center: RPartition
    strata: dict[RPartition, int]  # d(·, λ) on Γ_λ, before pruning
    retained: list[RPartition]
    removed: list[RPartition]
    arrows: list[tuple[RPartition, RPartition]]
    verified: bool = True

    def degree(self, mu: RPartition) -> int:
        return self.strata[mu]

    @property
    def terms(self) -> list[list[RPartition]]:
        top = max((self.strata[mu] for mu in self.retained), default=0)
        out: list[list[RPartition]] = [[] for _ in range(top + 1)]
        for mu in self.retained:
            out[self.strata[mu]].append(mu)
        return [sorted(t, key=RPartition.text) for t in out]

    def level_sizes(self) -> list[int]:
        return [len(t) for t in self.terms]

    def to_json(self) -> dict:
        return {
            "center": self.center.text(),
            "terms": [[i, [mu.text() for mu in t]] for i, t in enumerate(self.terms)],
            "verified": self.verified,
        }

    def to_dot(self) -> str:
        lines = [f'digraph "resolution {self.center.text()}" {{', "  rankdir=BT;"]
        for i, t in enumerate(self.terms):
            names = " ".join(f'"{mu.text()}"' for mu in t)
            lines.append(f"  {{ rank=same; {names} }}")
            for mu in t:
                lines.append(f'  "{mu.text()}" [label="{mu}", degree={i}];')
        for a, b in self.arrows:
            lines.append(f'  "{a.text()}" -> "{b.text()}";')
        lines.append("}")
        return "\n".join(lines) + "\n"


def bgg_resolution(g: BlockGraph, lam: RPartition, reverse: bool = False) -> Resolution:
    """Prune Γ_λ: drop Γ_ν whenever an arrow ν→μ skips a stratum.

    ``reverse`` flips the processing order; the result does not depend on it.
    """
    strata = dict(g.longest_to(lam))
    alive = set(strata)
    edges = sorted(
        ((a, b) for a, b in g.edges() if a in alive and b in alive),
        key=lambda e: (e[0].text(), e[1].text()),
        reverse=reverse,
    )
    changed = True
    while changed:
        changed = False
        for nu, mu in edges:
            if nu in alive and mu in alive and strata[nu] - strata[mu] > 1:
                doomed = ({nu} | {v for v in alive if nu in g.reach[v]}) & alive
                alive -= doomed
                changed = True
    retained = sorted(alive, key=lambda v: (strata[v], v.text()))
    removed = sorted(set(strata) - alive, key=lambda v: (strata[v], v.text()))
    arrows = sorted(
        ((a, b) for a, b in g.edges() if a in alive and b in alive), key=lambda e: (e[0].text(), e[1].text())
    )
    return Resolution(lam, strata, retained, removed, arrows, g.tight)


def b2n_resolution_formula(n: int, i: int) -> tuple[list[RPartition], list[RPartition]]:
    """Closed-form terms (Δ_i, Δ_{2n−i}) of the resolution of L(Triv) for G(2,1,2n)."""
    if not 0 <= i <= n:
        raise ValueError("need 0 <= i <= n")

    low = [RPartition(((2 * n - i,) + (1,) * i, ()))]
    high = [RPartition(((), conjugate((2 * n - i,) + (1,) * i)))]
    for a in range(1, i + 1):
        first = hook(n - a, i - a)
        second = hook(n + a + 1 - i, a - 1)
        low.append(RPartition((first, second)))
        high.append(RPartition((conjugate(second), conjugate(first))))
    return sorted(low, key=RPartition.text), sorted(high, key=RPartition.text)


# --------------------------------------------------------------------------
# conjecture check and quivers


@dataclass
class ConjectureReport:
    center: RPartition
    matches: bool  # retained set with signs equals the inverse-matrix row
    part_b: bool  # B(−1) = 0 on removed vertices with paths of unequal length
    hypotheses: bool  # every standard module in Γ_λ passes the tightness screen
    mismatches: list[str] = field(default_factory=list)
    untight: list[RPartition] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.matches and self.part_b and self.hypotheses

    def to_json(self) -> dict:
        return {
            "center": self.center.text(),
            "passed": self.passed,
            "matches": self.matches,
            "partB": self.part_b,
            "hypotheses": self.hypotheses,
            "mismatches": self.mismatches,
            "untightStandards": [mu.text() for mu in self.untight],
        }


def conjecture_check(
    g: BlockGraph,
    lam: RPartition,
    inverse: GradedMatrix | None = None,
    standard_is_tight=None,
) -> ConjectureReport:
    """Compare the pruning algorithm with the inverse matrix row of λ.

    ``standard_is_tight`` is a predicate on vertices; on tight blocks every
    standard module is tight and it is not consulted.
    """
    inv = inverse or inverse_dec_matrix(g)
    res = bgg_resolution(g, lam)
    row = inv.row(lam)
    retained = set(res.retained)
    mismatches = []
    for mu, d in res.strata.items():
        want = VPoly.monomial(d, (-1) ** d) if mu in retained else ZERO
        got = row.get(mu, ZERO)
        if want != got:
            mismatches.append(f"{mu.text()}: algorithm {want}, inverse {got}")
    shortest = g.shortest_to(lam)
    part_b = True
    for mu in res.removed:
        if shortest[mu] != res.strata[mu] and row.get(mu, ZERO):
            part_b = False
            mismatches.append(f"{mu.text()}: unequal path lengths but B(-1) != 0")
    untight: list[RPartition] = []
    if not g.tight:
        if standard_is_tight is None:
            raise ValueError("non-tight block: a tightness screen for standard modules is required")
        untight = [mu for mu in sorted(res.strata, key=RPartition.text) if not standard_is_tight(mu)]
    return ConjectureReport(lam, not mismatches, part_b, not untight, mismatches, untight)


@dataclass
class Quivers:
    primitive: list[tuple[RPartition, RPartition]]
    ext1_predicted: list[tuple[RPartition, RPartition]] | None
    caveat: str | None

    def to_json(self) -> dict:
        pairs = lambda es: [[a.text(), b.text()] for a, b in es]
        return {
            "primitive": pairs(self.primitive),
            "ext1Predicted": None if self.ext1_predicted is None else pairs(self.ext1_predicted),
            "caveat": self.caveat,
        }


def quivers(g: BlockGraph) -> Quivers:
    prim = sorted(g.primitive_edges(), key=lambda e: (e[0].text(), e[1].text()))
    if g.tight:
        doubled = sorted(set(prim) | {(b, a) for a, b in prim}, key=lambda e: (e[0].text(), e[1].text()))
        return Quivers(prim, doubled, None)
    return Quivers(prim, None, "block is not tight; the doubled primitive quiver need not be the Ext¹ quiver")


def unordered(edges: Iterable[tuple[RPartition, RPartition]]) -> set[frozenset[RPartition]]:
    return {frozenset(e) for e in edges}


def resolution_for(p: Params, lam: RPartition, g: BlockGraph | None = None) -> Resolution:
    from .graph import build_gamma

    return bgg_resolution(g or build_gamma(p), lam)
