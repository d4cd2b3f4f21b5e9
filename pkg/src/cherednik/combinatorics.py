"""Partitions, r-partitions, boxes and the exact parameter bookkeeping.

All parameter arithmetic is done with :class:`fractions.Fraction`; nothing in
the package touches floating point.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import permutations
from math import comb, factorial, gcd
from typing import Iterator, Sequence

Rational = Fraction


def as_fraction(value) -> Fraction:
    """Parse ``"p/q"``, ``"-p/q"``, ``"k"``, ints or Fractions."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        text = value.strip()
        if not text:
            raise ValueError("empty rational")
        try:
            num, _, den = text.partition("/")
            if den:
                return Fraction(int(num), int(den))
            return Fraction(int(num))
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"malformed rational {value!r}") from exc
    raise TypeError(f"cannot interpret {value!r} as a rational")


def frac_mod1(x: Fraction) -> Fraction:
    """Canonical representative of x mod Z in [0, 1)."""
    return x - (x.numerator // x.denominator)


def is_integer(x: Fraction) -> bool:
    return x.denominator == 1


# --------------------------------------------------------------------------
# parameters


@dataclass(frozen=True)
class Params:
    """Parameters for the Cherednik algebra of G(r,1,n).

    ``d`` is indexed by Z/rZ; use :meth:`dj` for subscripts that may be
    negative or out of range.
    """

    r: int
    n: int
    c0: Fraction
    d: tuple[Fraction, ...]

    def __post_init__(self):
        if self.r < 1 or self.n < 1:
            raise ValueError("r and n must be positive")
        object.__setattr__(self, "c0", as_fraction(self.c0))
        d = tuple(as_fraction(x) for x in self.d)
        if len(d) != self.r:
            raise ValueError(f"d must have {self.r} entries, got {len(d)}")
        object.__setattr__(self, "d", d)

    @classmethod
    def equal(cls, r: int, n: int) -> "Params":
        """Equal parameters c = 1/n for G(r,1,n) (n boxes in total)."""
        c = Fraction(1, n)
        d = [Fraction(r - 1, n)] + [Fraction(-1, n)] * (r - 1)
        return cls(r, n, c, tuple(d))

    def dj(self, j: int) -> Fraction:
        return self.d[j % self.r]

    @property
    def ell(self) -> int:
        """The integer l with c0 = l/n; raises if c0 is not of that form."""
        c0 = self.c0
        if c0 <= 0 or (c0 * self.n).denominator != 1:
            raise ValueError("principal-block machinery requires c₀ = ℓ/n")
        ell = int(c0 * self.n)
        if gcd(ell, self.n) != 1:
            raise ValueError("principal-block machinery requires c₀ = ℓ/n with gcd(ℓ, n) = 1")
        return ell

    def as_dict(self) -> dict:
        return {
            "r": self.r,
            "n": self.n,
            "c0": str(self.c0),
            "d": [str(x) for x in self.d],
        }


# --------------------------------------------------------------------------
# partitions and boxes

Partition = tuple[int, ...]


def partition(parts: Sequence[int]) -> Partition:
    """Normalize to a weakly decreasing tuple without trailing zeros."""
    parts = tuple(int(p) for p in parts)
    if any(p < 0 for p in parts):
        raise ValueError(f"negative part in {parts}")
    stripped = tuple(p for p in parts if p > 0)
    if len(stripped) != len(parts) and any(parts[i] == 0 and parts[i + 1] > 0 for i in range(len(parts) - 1)):
        raise ValueError(f"{parts} is not weakly decreasing")
    if any(stripped[i] < stripped[i + 1] for i in range(len(stripped) - 1)):
        raise ValueError(f"{parts} is not weakly decreasing")
    return stripped


def conjugate(lam: Partition) -> Partition:
    if not lam:
        return ()
    return tuple(sum(1 for p in lam if p > j) for j in range(lam[0]))


def hook(arm_length: int, leg: int) -> Partition:
    """The hook (arm_length, 1^leg); ``hook(0, 0)`` is empty."""
    if arm_length == 0:
        return ()
    return (arm_length,) + (1,) * leg


@dataclass(frozen=True, order=True)
class Box:
    component: int
    row: int
    col: int

    @property
    def content(self) -> int:
        return self.col - self.row


def content(b: Box) -> int:
    return b.col - b.row


def partition_boxes(lam: Partition) -> Iterator[tuple[int, int]]:
    for i, part in enumerate(lam, start=1):
        for j in range(1, part + 1):
            yield i, j


def partition_contents(lam: Partition) -> list[int]:
    return [j - i for i, j in partition_boxes(lam)]


def diameter(lam: Partition) -> int:
    if not lam:
        return 0
    return (lam[0] - 1) + (len(lam) - 1)


def partition_from_contents(contents: Sequence[int]) -> Partition:
    """Rebuild a partition from the multiset of its box contents.

    Raises ``ValueError`` if the multiset is not that of any partition.
    """
    diag = Counter(contents)
    cells = set()
    for k, length in diag.items():
        for t in range(1, length + 1):
            cells.add((t, t + k) if k >= 0 else (t - k, t))
    rows: dict[int, int] = {}
    for i, j in cells:
        rows[i] = max(rows.get(i, 0), j)
    lam = tuple(rows[i] for i in sorted(rows))
    if list(rows) and sorted(rows) != list(range(1, len(rows) + 1)):
        raise ValueError("contents do not form a Young diagram")
    if any(lam[i] < lam[i + 1] for i in range(len(lam) - 1)):
        raise ValueError("contents do not form a Young diagram")
    if set(partition_boxes(lam)) != cells:
        raise ValueError("contents do not form a Young diagram")
    return lam


def partitions_of(n: int, max_part: int | None = None) -> Iterator[Partition]:
    """All partitions of n in reverse lexicographic order."""
    if max_part is None:
        max_part = n
    if n == 0:
        yield ()
        return
    for first in range(min(n, max_part), 0, -1):
        for rest in partitions_of(n - first, first):
            yield (first,) + rest


# --------------------------------------------------------------------------
# r-partitions


@dataclass(frozen=True)
class RPartition:
    components: tuple[Partition, ...]

    def __post_init__(self):
        object.__setattr__(self, "components", tuple(partition(c) for c in self.components))

    @classmethod
    def of(cls, *components: Sequence[int]) -> "RPartition":
        return cls(tuple(tuple(c) for c in components))

    @classmethod
    def trivial(cls, r: int, n: int) -> "RPartition":
        return cls(((n,) if n else (),) + ((),) * (r - 1))

    @classmethod
    def parse(cls, text: str, r: int | None = None) -> "RPartition":
        """Inverse of :meth:`text`, e.g. ``"3,1|-|2"``."""
        pieces = text.strip().split("|")
        comps = []
        for piece in pieces:
            piece = piece.strip()
            if piece in ("-", "", "∅"):
                comps.append(())
                continue
            try:
                comps.append(tuple(int(p) for p in piece.split(",")))
            except ValueError as exc:
                raise ValueError(f"malformed partition {piece!r} in {text!r}") from exc
        if r is not None and len(comps) != r:
            raise ValueError(f"{text!r} has {len(comps)} components, expected {r}")
        return cls(tuple(comps))

    @property
    def r(self) -> int:
        return len(self.components)

    @property
    def size(self) -> int:
        return sum(sum(c) for c in self.components)

    def __len__(self) -> int:
        return self.size

    def boxes(self) -> list[Box]:
        """Boxes in component-major, row-major, column order."""
        return [Box(i, row, col) for i, comp in enumerate(self.components) for row, col in partition_boxes(comp)]

    def text(self) -> str:
        return "|".join(",".join(map(str, c)) if c else "-" for c in self.components)

    def __str__(self) -> str:
        return "(" + ", ".join(
            "(" + ",".join(map(str, c)) + ")" if c else "∅" for c in self.components
        ) + ")"

    def __repr__(self) -> str:
        return f"RPartition({self.text()!r})"

    def __lt__(self, other: "RPartition") -> bool:
        return self.components < other.components


def rpartitions_of(r: int, n: int) -> Iterator[RPartition]:
    """All r-partitions of n."""

    def rec(k: int, remaining: int):
        if k == 1:
            for lam in partitions_of(remaining):
                yield (lam,)
            return
        for m in range(remaining, -1, -1):
            for lam in partitions_of(m):
                for rest in rec(k - 1, remaining - m):
                    yield (lam,) + rest

    for comps in rec(r, n):
        yield RPartition(comps)


# --------------------------------------------------------------------------
# charged contents, weights, blocks


def charged_content(b: Box, p: Params) -> Fraction:
    """(d_β − β)/r + ct·c₀ for a box b in component β."""
    beta = b.component
    return (p.dj(beta) - beta) / p.r + b.content * p.c0


def c_weight(b: Box, p: Params) -> Fraction:
    return frac_mod1(charged_content(b, p))


def weight_multiset(lam: RPartition, p: Params) -> Counter:
    return Counter(c_weight(b, p) for b in lam.boxes())


def same_block(a: RPartition, b: RPartition, p: Params) -> bool:
    if a.size != b.size:
        raise ValueError(f"size mismatch: |{a.text()}| = {a.size}, |{b.text()}| = {b.size}")
    if p.c0 == 0:
        raise ValueError("block criterion needs nonzero parameters")
    return weight_multiset(a, p) == weight_multiset(b, p)


def c_tilde(b: Box, p: Params) -> Fraction:
    """r·c₀·ct(b) + d_β(b); summed over a diagram it gives the Euler charge."""
    return p.r * p.c0 * b.content + p.dj(b.component)


def c_hat(lam: RPartition, p: Params) -> Fraction:
    return sum((c_tilde(b, p) for b in lam.boxes()), Fraction(0))


def h_c(lam: RPartition, p: Params) -> Fraction:
    """Scalar by which the Euler element acts on the lowest weight of Δ(λ)."""
    return Fraction(p.n, 2) - c_hat(lam, p)


def charge(lam: RPartition, mu: RPartition, p: Params) -> Fraction:
    """c̃_λ(μ): the degree in which L(μ)-type vectors sit inside Δ(λ)."""
    return c_hat(lam, p) - c_hat(mu, p)


# --------------------------------------------------------------------------
# tableaux


def hook_length_count(lam: Partition) -> int:
    n = sum(lam)
    if n == 0:
        return 1
    conj = conjugate(lam)
    prod = 1
    for i, j in partition_boxes(lam):
        prod *= (lam[i - 1] - j) + (conj[j - 1] - i) + 1
    return factorial(n) // prod


def syt_count(lam: RPartition) -> int:
    """Number of standard Young tableaux on an r-partition."""
    sizes = [sum(c) for c in lam.components]
    total = 1
    remaining = sum(sizes)
    for size, comp in zip(sizes, lam.components):
        total *= comb(remaining, size) * hook_length_count(comp)
        remaining -= size
    return total


@lru_cache(maxsize=4096)
def standard_tableaux(lam: RPartition) -> tuple[dict[Box, int], ...]:
    """Every standard filling as a mapping box -> entry in 1..n."""
    boxes = lam.boxes()
    n = len(boxes)
    comps = lam.components
    results = []
    filled: dict[Box, int] = {}
    # growth: place entries 1..n one at a time in an addable corner
    rows_filled = [[0] * len(c) for c in comps]

    def rec(entry: int):
        if entry > n:
            results.append(dict(filled))
            return
        for k, comp in enumerate(comps):
            rf = rows_filled[k]
            for i, length in enumerate(comp):
                if rf[i] < length and (i == 0 or rf[i - 1] > rf[i]):
                    rf[i] += 1
                    b = Box(k, i + 1, rf[i])
                    filled[b] = entry
                    rec(entry + 1)
                    del filled[b]
                    rf[i] -= 1

    rec(1)
    return tuple(results)


def brute_force_syt_count(lam: RPartition) -> int:
    """Count standard fillings by checking every bijection (tiny n only)."""
    boxes = lam.boxes()
    count = 0
    for perm in permutations(range(1, len(boxes) + 1)):
        filling = dict(zip(boxes, perm))
        ok = True
        for b, v in filling.items():
            right = Box(b.component, b.row, b.col + 1)
            down = Box(b.component, b.row + 1, b.col)
            if right in filling and filling[right] < v:
                ok = False
                break
            if down in filling and filling[down] < v:
                ok = False
                break
        count += ok
    return count


# --------------------------------------------------------------------------
# compositions


def sort_composition(alpha: Sequence[int]) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Return (α⁻, w_α) with w_α·α = α⁻ nondecreasing and w_α longest.

    ``w_α`` is returned 1-indexed as the tuple (w_α(1), ..., w_α(n)); inside a
    run of equal entries the original positions appear in reversed order.
    """
    n = len(alpha)
    # slot j (0-based) holds original position order[j]
    order = sorted(range(n), key=lambda i: (alpha[i], -i))
    alpha_minus = tuple(alpha[i] for i in order)
    w = [0] * n
    for slot, pos in enumerate(order):
        w[pos] = slot + 1
    return alpha_minus, tuple(w)


def act(w: Sequence[int], alpha: Sequence[int]) -> tuple[int, ...]:
    """w·α = (α_{w⁻¹(1)}, ..., α_{w⁻¹(n)}) for 1-indexed w."""
    n = len(alpha)
    out = [0] * n
    for i in range(n):
        out[w[i] - 1] = alpha[i]
    return tuple(out)


def inversions(w: Sequence[int]) -> int:
    return sum(1 for i in range(len(w)) for j in range(i + 1, len(w)) if w[i] > w[j])
