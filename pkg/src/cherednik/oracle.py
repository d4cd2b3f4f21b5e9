"""Brute-force membership oracles over the f_{α,T} basis.

A vector f_{α,T} of a diagonalizable standard module lies in a fundamental
submodule according to a predicate on the sorted exponent vector α⁻ and the
permutation w_α. Searching (α, T) by degree gives the lowest-degree pieces of
intersections, which are then identified with block members by comparing
exact t-eigenvalue spectra.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import lcm
from typing import Sequence

import numpy as np

from . import _kernels as K
from .combinatorics import Box, Params, RPartition, charge, sort_composition, standard_tableaux
from .graph import BlockGraph, FundamentalSubmodule, fundamental_submodules


class OracleError(RuntimeError):
    pass


# --------------------------------------------------------------------------
# spectra


@dataclass(frozen=True)
class Scale:
    """Integer scaling that makes every z-eigenvalue an integer."""

    L: int
    dtable: np.ndarray  # (r, r): L·(d_β − d_{β−a−1}) indexed by [β, a mod r]
    cscale: int  # L·r·c₀

    def unscale(self, z: int) -> Fraction:
        return Fraction(z, self.L)


@lru_cache(maxsize=64)
def scale_for(p: Params) -> Scale:
    r = p.r
    values = [p.dj(b) - p.dj(b - a - 1) for b in range(r) for a in range(r)] + [r * p.c0]
    L = lcm(*(v.denominator for v in values))
    table = np.array([[int((p.dj(b) - p.dj(b - a - 1)) * L) for a in range(r)] for b in range(r)], dtype=np.int64)
    return Scale(L, table, int(r * p.c0 * L))


def spectrum(alpha: Sequence[int], T: dict[Box, int], lam: RPartition, p: Params) -> tuple[tuple[Fraction, int], ...]:
    """Exact (z-eigenvalue, ζ-exponent) of f_{α,T} at each position."""
    _, w = sort_composition(alpha)
    by_entry = {e: b for b, e in T.items()}
    out = []
    for i, a in enumerate(alpha):
        b = by_entry[w[i]]
        beta = b.component
        z = a + 1 - (p.dj(beta) - p.dj(beta - a - 1)) - p.r * b.content * p.c0
        out.append((z, (beta - a) % p.r))
    return tuple(out)


def _tableau_arrays(T: dict[Box, int], n: int) -> tuple[np.ndarray, np.ndarray]:
    beta = np.zeros(n, dtype=np.int64)
    ct = np.zeros(n, dtype=np.int64)
    for b, e in T.items():
        beta[e - 1] = b.component
        ct[e - 1] = b.content
    return beta, ct


def _spectrum_rows(A, w, T, p: Params, sc: Scale) -> list[tuple]:
    beta, ct = _tableau_arrays(T, p.n)
    z, zeta = K.spectra(A, w, beta, ct, sc.dtable, sc.cscale, sc.L, p.r)
    return [tuple(zip(zr.tolist(), er.tolist())) for zr, er in zip(z, zeta)]


def fingerprint(mu: RPartition, p: Params) -> tuple:
    """Sorted spectra of the degree-zero vectors f_{0,T} of Δ(μ)."""
    sc = scale_for(p)
    n = p.n
    A = np.zeros((1, n), dtype=np.int64)
    w = np.arange(n, 0, -1, dtype=np.int64)[None, :]
    rows = []
    for T in standard_tableaux(mu):
        rows.extend(_spectrum_rows(A, w, T, p, sc))
    return tuple(sorted(rows))


def fingerprint_table(members: Sequence[RPartition], p: Params) -> dict[tuple, list[RPartition]]:
    table: dict[tuple, list[RPartition]] = {}
    for mu in members:
        table.setdefault(fingerprint(mu, p), []).append(mu)
    return table


# --------------------------------------------------------------------------
# predicates


def predicate_arrays(subs: Sequence[FundamentalSubmodule], T: dict[Box, int]):
    kind, t1, t2, k = [], [], [], []
    for f in subs:
        kind.append(1 if f.b2 is None else 2)
        t1.append(T[f.b1])
        t2.append(T[f.b2] if f.b2 is not None else 0)
        k.append(f.k)
    return kind, t1, t2, k


def in_submodule(f: FundamentalSubmodule, alpha: Sequence[int], T: dict[Box, int]) -> bool:
    am, w = sort_composition(alpha)
    t1 = T[f.b1]
    if f.b2 is None:
        return am[t1 - 1] >= f.k
    t2 = T[f.b2]
    diff = am[t1 - 1] - am[t2 - 1]
    if diff != f.k:
        return diff > f.k
    winv = {slot: pos + 1 for pos, slot in enumerate(w)}
    return winv[t1] < winv[t2]


def jantzen_layer_count(alpha: Sequence[int], T: dict[Box, int], lam: RPartition, p: Params) -> int:
    return sum(in_submodule(f, alpha, T) for f in fundamental_submodules(lam, p))


# --------------------------------------------------------------------------
# lattice search


@dataclass
class LatticeScan:
    host: RPartition
    subs: list[FundamentalSubmodule]
    cap: int
    lowest: dict[int, int] = field(default_factory=dict)  # subset mask -> lowest degree
    spectra: dict[int, list[tuple]] = field(default_factory=dict)  # subset mask -> spectra there
    escapes: set[tuple[int, int]] = field(default_factory=set)  # (i, j): M_i ⊄ M_j seen below cap

    def count(self, mask: int) -> int:
        return len(self.spectra.get(mask, ()))


def scan_lattice(
    lam: RPartition,
    p: Params,
    subs: Sequence[FundamentalSubmodule],
    cap: int,
    subsets: Sequence[int] | None = None,
    track_escapes: bool = False,
) -> LatticeScan:
    """Search degrees 1..cap for the lowest pieces of the requested intersections."""
    m = len(subs)
    if m > 62:
        raise OracleError("too many submodules for a bitmask")
    wanted = list(subsets) if subsets is not None else list(range(1, 1 << m))
    scan = LatticeScan(lam, list(subs), cap)
    tabs = standard_tableaux(lam)
    preds = [predicate_arrays(subs, T) for T in tabs]
    sc = scale_for(p)
    pairs = [(i, j) for i in range(m) for j in range(m) if i != j] if track_escapes else []
    for degree in range(1, cap + 1):
        pending = [S for S in wanted if S not in scan.lowest]
        open_pairs = [(i, j) for i, j in pairs if (i, j) not in scan.escapes]
        if not pending and not open_pairs:
            break
        A = K.compositions(p.n, degree)
        am, winv, w = K.sort_rows(A)
        found: dict[int, list[tuple]] = {}
        for T, pr in zip(tabs, preds):
            mk = K.masks(am, winv, *pr)
            for i, j in open_pairs:
                if np.any(((mk >> i) & 1 == 1) & ((mk >> j) & 1 == 0)):
                    scan.escapes.add((i, j))
            hits = {S: np.nonzero((mk & S) == S)[0] for S in pending}
            if not any(rows.size for rows in hits.values()):
                continue
            rows_needed = np.unique(np.concatenate([rows for rows in hits.values() if rows.size]))
            spec = dict(zip(rows_needed.tolist(), _spectrum_rows(A[rows_needed], w[rows_needed], T, p, sc)))
            for S, rows in hits.items():
                if rows.size:
                    found.setdefault(S, []).extend(spec[x] for x in rows.tolist())
        for S, spectra in found.items():
            scan.lowest[S] = degree
            scan.spectra[S] = sorted(spectra)
    return scan


def match_isotype(spectra: list[tuple], table: dict[tuple, list[RPartition]]) -> RPartition | None:
    cands = table.get(tuple(sorted(spectra)), [])
    if len(cands) > 1:
        raise OracleError("ambiguous spectrum match: " + ", ".join(c.text() for c in cands))
    return cands[0] if cands else None


def default_cap(g: BlockGraph, lam: RPartition) -> int:
    """Largest charge c̃_λ(μ) over block members μ.

    The lowest piece of a nonzero submodule of Δ(λ) is singular, so it sits in
    degree c̃_λ(μ) for a composition factor μ; nothing is missed below this cap.
    """
    p = g.params
    return max((int(charge(lam, mu, p)) for mu in g.vertices if charge(lam, mu, p) > 0), default=0)


def isotype_oracle(
    subs: Sequence[FundamentalSubmodule],
    p: Params,
    members: Sequence[RPartition],
    degree_cap: int,
    host: RPartition | None = None,
) -> tuple[RPartition | None, int | None]:
    """Isotype and degree of the lowest piece of ∩ subs (the host itself when empty)."""
    if not subs:
        if host is None:
            raise ValueError("empty intersection needs the host")
        return host, 0
    lam = subs[0].host
    scan = scan_lattice(lam, p, subs, degree_cap, subsets=[(1 << len(subs)) - 1])
    full = (1 << len(subs)) - 1
    if full not in scan.lowest:
        return None, None
    return match_isotype(scan.spectra[full], fingerprint_table(members, p)), scan.lowest[full]


@dataclass
class Lattice:
    """Intersection lattice of the fundamental submodules of Δ(λ)."""

    host: RPartition
    subs: list[FundamentalSubmodule]
    isotypes: dict[int, RPartition | None]  # only nonzero intersections appear
    degrees: dict[int, int]
    scan: LatticeScan

    @property
    def members(self) -> set[RPartition]:
        return {self.host} | {mu for mu in self.isotypes.values() if mu is not None}

    @property
    def unmatched(self) -> list[int]:
        return [S for S, mu in self.isotypes.items() if mu is None]

    def count_containing(self, mu: RPartition) -> int:
        """Number of fundamental submodules containing the piece labelled μ (the Jantzen layer)."""
        masks = [S for S, nu in self.isotypes.items() if nu == mu]
        closure = 0
        for S in masks:
            closure |= S
        return bin(closure).count("1")


def intersection_lattice(
    g: BlockGraph,
    lam: RPartition,
    cap: int | None = None,
    table: dict | None = None,
    track_escapes: bool = False,
) -> Lattice:
    p = g.params
    subs = fundamental_submodules(lam, p)
    cap = default_cap(g, lam) if cap is None else cap
    scan = scan_lattice(lam, p, subs, cap, track_escapes=track_escapes)
    table = table if table is not None else fingerprint_table(g.vertices, p)
    iso: dict[int, RPartition | None] = {}
    for S in range(1, 1 << len(subs)):
        if S not in scan.lowest:
            continue  # zero intersection
        mu = match_isotype(scan.spectra[S], table)
        if mu is not None and int(charge(lam, mu, p)) != scan.lowest[S]:
            raise OracleError(f"{mu.text()} matched at degree {scan.lowest[S]} but sits at charge {charge(lam, mu, p)}")
        iso[S] = mu
    return Lattice(lam, subs, iso, dict(scan.lowest), scan)


def standard_tightness_screen(g: BlockGraph, lam: RPartition, margin: int | None = None) -> tuple[bool, list[str]]:
    """Look for M ≠ N with lowest(M) ⊆ N but M ⊄ N among fundamental submodules of Δ(λ).

    Such a pair means the singular vectors at the bottom of M do not generate M,
    so Δ(λ) fails the sufficient condition for its radical to be generated by
    singular vectors. Returns (passes, witnesses).
    """
    p = g.params
    subs = fundamental_submodules(lam, p)
    if len(subs) < 2:
        return True, []
    cap = default_cap(g, lam) + (p.r if margin is None else margin)
    singles = [1 << i for i in range(len(subs))]
    doubles = [(1 << i) | (1 << j) for i in range(len(subs)) for j in range(len(subs)) if i < j]
    scan = scan_lattice(lam, p, subs, cap, subsets=singles + doubles, track_escapes=True)
    witnesses = []
    for i, fi in enumerate(subs):
        for j, fj in enumerate(subs):
            if i == j:
                continue
            both = (1 << i) | (1 << j)
            bottom_inside = (
                scan.lowest.get(1 << i) is not None
                and scan.lowest.get(both) == scan.lowest[1 << i]
                and scan.count(both) == scan.count(1 << i)
            )
            if bottom_inside and (i, j) in scan.escapes:
                witnesses.append(f"lowest piece of {fi.describe()} lies in {fj.describe()} but the module does not")
    return not witnesses, witnesses


def monomial_rows(n: int, degree: int) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    A = K.compositions(n, degree)
    am, winv, w = K.sort_rows(A)
    return A, am, winv, w


def spectrum_counter(rows: list[tuple]) -> Counter:
    return Counter(rows)


def lattices(g: BlockGraph) -> dict[RPartition, Lattice]:
    table = fingerprint_table(g.vertices, g.params)
    out = {}
    for lam in g.vertices:
        lat = intersection_lattice(g, lam, table=table)
        if lat.unmatched:
            raise OracleError(f"Δ({lam.text()}): {len(lat.unmatched)} intersections match no block member")
        out[lam] = lat
    return out


def attach_lattice(g: BlockGraph) -> BlockGraph:
    """Install P_λ from the intersection lattices; returns ``g`` for chaining."""
    g.set_p_sets({lam: lat.members for lam, lat in lattices(g).items()})
    return g
