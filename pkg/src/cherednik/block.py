"""Labels on the one-row diagram, the (S,T) encoding and principal-block enumeration."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, product
from typing import Sequence

from .combinatorics import (
    Box,
    Params,
    RPartition,
    c_weight,
    charged_content,
    diameter,
    h_c,
    is_integer,
    partition_from_contents,
    rpartitions_of,
    same_block,
)


class BlockError(ValueError):
    """Raised when an r-partition or parameter set falls outside the principal-block setup."""


@dataclass(frozen=True, order=True)
class Label:
    """A pair (i, k); comparisons are lexicographic on (k, i)."""

    k: int
    i: int

    def __repr__(self) -> str:
        return f"({self.i},{self.k})"

    def as_list(self) -> list[int]:
        return [self.i, self.k]


def st_key(s: int, t: int) -> tuple[int, int]:
    """Sort key making (s, t) pairs compare like labels."""
    return (t, s)


@dataclass(frozen=True)
class BlockLabeling:
    params: Params
    ell: int
    per_box: tuple[tuple[Label, ...], ...]  # index 0 is box 1

    @property
    def n(self) -> int:
        return len(self.per_box)

    def box_of(self) -> dict[int, tuple[int, int]]:
        """Map i -> (box position, k_i)."""
        out = {}
        for pos, labels in enumerate(self.per_box, start=1):
            for lab in labels:
                out[lab.i] = (pos, lab.k)
        return out

    def flattened(self) -> list[Label]:
        return [lab for labels in self.per_box for lab in labels]

    def as_rows(self) -> list[list[int]]:
        return [[pos, lab.i, lab.k] for pos, labels in enumerate(self.per_box, start=1) for lab in labels]


def triv_box(pos: int) -> Box:
    return Box(0, 1, pos)


def build_labeling(p: Params) -> BlockLabeling:
    ell = p.ell
    n = p.n
    inv_ell = pow(ell, -1, n) if n > 1 else 0
    boxes: list[list[Label]] = [[] for _ in range(n)]
    for i in range(p.r):
        x = (p.dj(i) - i - p.d[0]) / p.r  # = ct(b)*c0 + k
        xn = x * n
        if not is_integer(xn):
            continue
        j0 = (int(xn) * inv_ell) % n if n > 1 else 0
        k = x - Fraction(j0 * ell, n)
        assert is_integer(k), (i, x, j0)
        boxes[j0].append(Label(int(k), i))
    per_box = tuple(tuple(sorted(labels, reverse=True)) for labels in boxes)
    return BlockLabeling(p, ell, per_box)


@dataclass(frozen=True)
class TightVerdict:
    tight: bool
    witness: str | None
    chain: tuple[Label, ...]


def tight_check(p: Params, labeling: BlockLabeling | None = None) -> TightVerdict:
    lab = labeling or build_labeling(p)
    chain = lab.flattened()
    first = chain[0]
    seq = chain + [Label(first.k - lab.ell, first.i)]
    for a, b in zip(seq, seq[1:]):
        if not a > b:
            return TightVerdict(False, f"{a!r} > {b!r} fails", tuple(chain))
    return TightVerdict(True, None, tuple(chain))


# --------------------------------------------------------------------------
# (S,T) encoding


@dataclass(frozen=True)
class STPair:
    S: tuple[int, ...]
    T: tuple[int, ...]

    def key(self, pos: int) -> tuple[int, int]:
        """Comparison key of the pair (S, T) at box ``pos`` (1-indexed)."""
        return st_key(self.S[pos - 1], self.T[pos - 1])


def _triv_charges(p: Params) -> list[Fraction]:
    return [charged_content(triv_box(j), p) for j in range(1, p.n + 1)]


def bar_boxes(lam: RPartition, p: Params) -> list[Box]:
    """For each box of (n), the unique box of λ with the same c-weight."""
    by_weight: dict[Fraction, Box] = {}
    for b in lam.boxes():
        w = c_weight(b, p)
        if w in by_weight:
            raise BlockError(f"{lam.text()} has two boxes of c-weight {w}")
        by_weight[w] = b
    out = []
    for j in range(1, p.n + 1):
        w = c_weight(triv_box(j), p)
        if w not in by_weight:
            raise BlockError(f"{lam.text()} is not in the principal block")
        out.append(by_weight[w])
    return out


def st_pair(lam: RPartition, p: Params) -> STPair:
    if lam.size != p.n or lam.r != p.r:
        raise BlockError(f"{lam.text()} is not an {p.r}-partition of {p.n}")
    bars = bar_boxes(lam, p)
    S, T = [], []
    for j, bbar in enumerate(bars, start=1):
        diff = charged_content(bbar, p) - charged_content(triv_box(j), p)
        assert is_integer(diff)
        S.append(bbar.component)
        T.append(int(diff))
    return STPair(tuple(S), tuple(T))


def from_st_pair(st: STPair, p: Params) -> RPartition:
    contents: list[list[int]] = [[] for _ in range(p.r)]
    for j, (s, t) in enumerate(zip(st.S, st.T), start=1):
        c = charged_content(triv_box(j), p) + t
        ct = (c - (p.dj(s) - s) / p.r) / p.c0
        if not is_integer(ct):
            raise BlockError(f"(S,T) entry at box {j} gives non-integral content {ct}")
        contents[s].append(int(ct))
    try:
        comps = tuple(partition_from_contents(cs) for cs in contents)
    except ValueError as exc:
        raise BlockError(f"(S,T) pair {st} does not come from an r-partition") from exc
    return RPartition(comps)


def st_pairs(p: Params, labeling: BlockLabeling | None = None) -> list[STPair]:
    """All valid (S,T) pairs: circular intervals around chosen label boxes."""
    lab = labeling or build_labeling(p)
    n, ell = p.n, lab.ell
    anchors = lab.box_of()  # i -> (pos, k)
    out = []
    for size in range(1, len(anchors) + 1):
        for chosen in combinations(sorted(anchors), size):
            positions = [anchors[i][0] for i in chosen]
            if len(set(positions)) < size:
                continue
            ordered = sorted(chosen, key=lambda i: anchors[i][0])
            gaps = []
            for t, i in enumerate(ordered):
                nxt = ordered[(t + 1) % size]
                gap = (anchors[nxt][0] - anchors[i][0]) % n or n
                gaps.append(gap)
            for cuts in product(*(range(1, g + 1) for g in gaps)):
                S = [0] * n
                T = [0] * n
                for t, i in enumerate(ordered):
                    pos, k = anchors[i]
                    nxt = ordered[(t + 1) % size]
                    npos, nk = anchors[nxt]
                    # boxes pos .. pos+cut-1 walk right from b_i
                    for o in range(cuts[t]):
                        q = pos + o
                        S[(q - 1) % n] = i
                        T[(q - 1) % n] = k + (ell if q > n else 0)
                    # remaining boxes before the next anchor walk left from it
                    for o in range(1, gaps[t] - cuts[t] + 1):
                        q = npos - o
                        S[(q - 1) % n] = nxt
                        T[(q - 1) % n] = nk - (ell if q < 1 else 0)
                out.append(STPair(tuple(S), tuple(T)))
    return out


def sort_members(members, p: Params) -> list[RPartition]:
    return sorted(members, key=lambda lam: (-h_c(lam, p), lam.text()))


def enumerate_block(p: Params) -> list[RPartition]:
    lab = build_labeling(p)
    members = {from_st_pair(st, p) for st in st_pairs(p, lab)}
    return sort_members(members, p)


def brute_force_block(p: Params) -> list[RPartition]:
    """Reference enumeration: filter every r-partition of n by c-weights."""
    triv = RPartition.trivial(p.r, p.n)
    return sort_members((lam for lam in rpartitions_of(p.r, p.n) if same_block(lam, triv, p)), p)


# --------------------------------------------------------------------------
# diagonalizability


def is_diagonalizable(lam: RPartition, p: Params) -> bool:
    if p.c0 <= 0:
        raise BlockError("diagonalizability criterion assumes c₀ > 0")
    m = max((diameter(c) for c in lam.components if c and c[0] > 1), default=0)
    if p.c0.denominator <= m:
        return False
    boxes = lam.boxes()
    charges = [charged_content(b, p) for b in boxes]
    for (b1, c1), (b2, c2) in combinations(zip(boxes, charges), 2):
        if b1.component != b2.component and is_integer(c1 - c2):
            return False
    return True


@dataclass(frozen=True)
class DiagonalizabilityReport:
    sufficient: bool  # box weights of Triv pairwise distinct
    exact: bool  # every enumerated member diagonalizable
    failures: tuple[RPartition, ...] = field(default=())


def block_diagonalizable(p: Params) -> DiagonalizabilityReport:
    weights = [c_weight(triv_box(j), p) for j in range(1, p.n + 1)]
    sufficient = len(set(weights)) == len(weights)
    failures = tuple(lam for lam in enumerate_block(p) if not is_diagonalizable(lam, p))
    return DiagonalizabilityReport(sufficient, not failures, failures)


def require_diagonalizable(lam: RPartition, p: Params) -> None:
    if not is_diagonalizable(lam, p):
        raise BlockError(f"Δ({lam.text()}) is not t-diagonalizable at these parameters")


def parse_members(texts: Sequence[str], r: int) -> list[RPartition]:
    return [RPartition.parse(t, r) for t in texts]
