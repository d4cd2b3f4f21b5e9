"""Graded dimensions of simples: Euler characteristics, closed formulas and brute-force bases."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from math import comb

import numpy as np

from . import _kernels as K
from .combinatorics import Params, RPartition, charge, is_integer, syt_count
from .decomposition import Resolution


class CharacterError(RuntimeError):
    pass


@dataclass(frozen=True)
class GradedDimension:
    """Hilbert series numerator/(1−t)^k; k = 0 once the division has gone through."""

    numerator: tuple[int, ...]
    denominator_exponent: int = 0
    label: str = ""

    @property
    def finite(self) -> bool:
        return self.denominator_exponent == 0

    @property
    def total(self) -> int | None:
        return sum(self.numerator) if self.finite else None

    def __str__(self) -> str:
        terms = []
        for i, c in enumerate(self.numerator):
            if c == 0:
                continue
            mono = "" if i == 0 else ("t" if i == 1 else f"t^{i}")
            coef = str(c) if (c != 1 or i == 0) else ""
            if c == -1 and i:
                coef = "-"
            terms.append(coef + mono)
        body = "+".join(terms).replace("+-", "-") or "0"
        if self.finite:
            return body
        return f"({body})/(1-t)^{self.denominator_exponent}"

    def to_json(self) -> dict:
        return {
            "lambda": self.label,
            "numerator": list(self.numerator),
            "denominatorExponent": self.denominator_exponent,
            "finiteDimensional": self.finite,
            "total": self.total,
        }


def _trim(coeffs: list[int]) -> list[int]:
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return coeffs


def divide_one_minus_t(coeffs: list[int], times: int) -> tuple[list[int], int]:
    """Divide by (1−t) as often as possible, up to ``times``; returns (quotient, leftover exponent)."""
    cur = _trim(list(coeffs))
    for done in range(times):
        if sum(cur) != 0 or not cur:
            return cur, times - done
        # P = (1−t)Q  ⟹  Q_i = P_0 + ... + P_i
        q, acc = [], 0
        for c in cur[:-1]:
            acc += c
            q.append(acc)
        cur = _trim(q)
    return cur, 0


def euler_numerator(res: Resolution, p: Params) -> list[int]:
    lam = res.center
    num: dict[int, int] = {}
    for mu in res.retained:
        shift = charge(lam, mu, p)
        if not is_integer(shift) or shift < 0:
            raise CharacterError(f"c̃_{lam.text()}({mu.text()}) = {shift} is not a non-negative integer")
        e = int(shift)
        num[e] = num.get(e, 0) + (-1) ** res.strata[mu] * syt_count(mu)
    top = max(num, default=0)
    return [num.get(i, 0) for i in range(top + 1)]


def graded_dimension(res: Resolution, p: Params) -> GradedDimension:
    num = euler_numerator(res, p)
    quot, left = divide_one_minus_t(num, p.n)
    if left:
        return GradedDimension(tuple(_trim(num)), p.n, res.center.text())
    if any(c < 0 for c in quot):
        raise CharacterError(f"negative graded dimension for L({res.center.text()}): {quot}")
    return GradedDimension(tuple(quot), 0, res.center.text())


# --------------------------------------------------------------------------
# closed formulas


def _parity_binomial_sum(n: int, d: int) -> int:
    return sum(comb(2 * n, j) for j in range(d % 2, d + 1, 2))


def g2_dim_formula(n: int, variant: str) -> GradedDimension:
    """Graded dimension of L(Triv) at c = 1/2n: 'C' for G(2,1,2n), 'D' for G(2,2,2n)."""
    if n < 1:
        raise ValueError("n must be positive")
    variant = variant.upper()
    if variant not in ("C", "D"):
        raise ValueError("variant must be C or D")
    top = 2 * n if variant == "C" else 2 * (n - 1)
    coeffs = [0] * (top + 1)
    for d in range(top // 2 + 1):
        coeffs[d] = coeffs[top - d] = _parity_binomial_sum(n, d)
    return GradedDimension(tuple(coeffs), 0, f"{variant}{2 * n}")


def equal_triv_total(r: int, n: int) -> int:
    """Nested binomial sum for dim L(Triv) of G(r,1,rn) at c = 1/rn (total only)."""
    N = r * n

    def inner(t: int, used: int, removed: int) -> int:
        # t runs r−1 .. 1; ``used`` = j_r + ... + j_{t+1}; ``removed`` = j_{r−1} + ... + j_{t+1}
        if t == 0:
            return 1
        return sum(comb(N - removed, j) * inner(t - 1, used + j, removed + j) for j in range((r - t) * n - used + 1))

    return sum(inner(r - 1, jr, 0) for jr in range(n + 1))


# --------------------------------------------------------------------------
# brute-force monomial bases


def _bounded_vectors(N: int, bound: int, limit: int = 20_000_000) -> np.ndarray:
    if (bound + 1) ** N > limit:
        raise CharacterError(f"{(bound + 1) ** N} candidate exponent vectors exceeds the limit {limit}")
    grids = np.indices((bound + 1,) * N, dtype=np.int64).reshape(N, -1).T
    return np.ascontiguousarray(grids)


def _histogram(A: np.ndarray, keep: np.ndarray) -> GradedDimension:
    degrees = A[keep].sum(axis=1)
    counts = np.bincount(degrees) if degrees.size else np.zeros(1, dtype=np.int64)
    return GradedDimension(tuple(int(c) for c in _trim(counts.tolist())), 0)


def monomial_basis_count(p: Params) -> GradedDimension:
    """Count exponents α with α⁻_{kn} ≤ k−1 (k < r) and α⁻_{rn} ≤ r, ties broken by w_α."""
    r, N = p.r, p.n
    if N % r:
        raise ValueError("monomial basis needs n divisible by r")
    if p != Params.equal(r, N):
        raise ValueError("monomial basis is stated for equal parameters c = 1/n")
    m = N // r
    A = _bounded_vectors(N, r)
    am, winv, _ = K.sort_rows(A)
    keep = np.ones(A.shape[0], dtype=bool)
    for k in range(1, r):
        keep &= am[:, k * m - 1] <= k - 1
    top = am[:, N - 1]
    keep &= (top < r) | ((top == r) & (winv[:, N - 1] > winv[:, 0]))
    out = _histogram(A, keep)
    return GradedDimension(out.numerator, 0, "Triv")


def shift_condition_pairs(p: Params) -> list[tuple[int, int]]:
    """All (k, m), k > 0, 0 ≤ m ≤ n−1, with d₀ − d_{−k} + r·m·ℓ/n = k."""
    r, n, ell = p.r, p.n, p.ell
    out = []
    for m in range(n):
        for j in range(r):
            k = p.d[0] - p.dj(j) + Fraction(r * m * ell, n)
            if is_integer(k) and k > 0 and (-int(k)) % r == j:
                out.append((int(k), m))
    return sorted(out)


def general_basis_count(p: Params, bound: int | None = None) -> GradedDimension:
    """Count α with spread ≤ ℓr (tie rule) and α⁻_{m+1} < k for each shift-condition pair."""
    n, ell, r = p.n, p.ell, p.r
    pairs = shift_condition_pairs(p)
    if bound is None:
        if not pairs:
            raise CharacterError("no shift-condition pairs: the basis is infinite, pass an explicit bound")
        # some pair bounds α⁻_{m+1} and hence α⁻_1; spread then bounds the rest
        bound = min(k for k, _ in pairs) - 1 + ell * r
    A = _bounded_vectors(n, bound)
    am, winv, _ = K.sort_rows(A)
    spread = am[:, n - 1] - am[:, 0]
    keep = (spread < ell * r) | ((spread == ell * r) & (winv[:, n - 1] > winv[:, 0]))
    for k, m in pairs:
        keep &= am[:, m] < k
    out = _histogram(A, keep)
    return GradedDimension(out.numerator, 0, "Triv")


def d_params(n: int) -> Params:
    """G(2,1,2n) at c₀ = 1/2n with d = (0, 0); L(Triv) restricts to the spherical simple of G(2,2,2n)."""
    return Params(2, 2 * n, Fraction(1, 2 * n), (Fraction(0), Fraction(0)))


def c_params(n: int) -> Params:
    return Params.equal(2, 2 * n)


# --------------------------------------------------------------------------
# Oblomkov–Yun series


def _binomial_series(a: Fraction, scale: int, terms: int) -> list[Fraction]:
    """Coefficients of (1 + scale·x)^a up to x^{terms−1}."""
    out = [Fraction(1)]
    c = Fraction(1)
    for i in range(1, terms):
        c = c * (a - i + 1) / i * scale
        out.append(c)
    return out


def _mul(a: list[Fraction], b: list[Fraction], terms: int) -> list[Fraction]:
    out = [Fraction(0)] * terms
    for i, x in enumerate(a[:terms]):
        if x:
            for j, y in enumerate(b[: terms - i]):
                out[i + j] += x * y
    return out


def _integral(series: list[Fraction]) -> list[int]:
    for i, c in enumerate(series):
        if c.denominator != 1:
            raise CharacterError(f"series coefficient {i} is not an integer: {c}")
    return [int(c) for c in series]


def oy_series(terms: int) -> tuple[list[int], list[int]]:
    """(1−4x)^{−3/2} and (1−4x)^{−3/2}(1+√(1−4x))²/4 as integer coefficient lists."""
    base = _binomial_series(Fraction(-3, 2), -4, terms)
    root = _binomial_series(Fraction(1, 2), -4, terms)
    # (1+s)²/4 = (2(1−2x) + 2s)/4
    factor = [Fraction(0)] * terms
    factor[0] += Fraction(1, 2)
    if terms > 1:
        factor[1] += -1
    for i, c in enumerate(root):
        factor[i] += c / 2
    return _integral(base), _integral(_mul(base, factor, terms))


@dataclass
class OYReport:
    n_max: int
    d_formula: list[int]
    c_formula: list[int]
    d_series: list[int]
    c_series: list[int]
    extra: dict[str, list[int]]

    @property
    def passed(self) -> bool:
        ok = self.d_formula == self.d_series and self.c_formula == self.c_series
        for name, vals in self.extra.items():
            ok &= vals == (self.d_formula if name.startswith("D") else self.c_formula)
        return ok

    def to_json(self) -> dict:
        return {
            "nMax": self.n_max,
            "passed": self.passed,
            "D": {"formula": self.d_formula, "series": self.d_series},
            "C": {"formula": self.c_formula, "series": self.c_series},
            "crossChecks": self.extra,
        }


def oblomkov_yun_check(n_max: int, extra: dict[str, list[int]] | None = None) -> OYReport:
    """Compare closed-formula dimensions for n = 1..n_max with the two generating series.

    The D series is indexed by x^{n−1} and the C series by x^n, so the constant
    term of the C series (which equals 1) is not compared.
    """
    if n_max < 1:
        raise ValueError("n_max must be positive")
    d_ser, c_ser = oy_series(n_max + 1)
    d_f = [g2_dim_formula(n, "D").total for n in range(1, n_max + 1)]
    c_f = [g2_dim_formula(n, "C").total for n in range(1, n_max + 1)]
    return OYReport(n_max, d_f, c_f, d_ser[:n_max], c_ser[1 : n_max + 1], dict(extra or {}))


def product_count(n: int, bound: int) -> int:
    """Number of exponent vectors in {0..bound}^n (sanity helper for tests)."""
    return sum(1 for _ in product(range(bound + 1), repeat=n))
