"""Exact rational building blocks for the expansion machinery.

Everything in this module is computed in ``fractions.Fraction`` arithmetic
and is independent of the tree variety: partial Bell polynomials, the signed
weight sequence ``B(l)`` driving the square-root singular expansion of the
tree function ``C(z) = z*exp(C(z))``, its explicit coefficients, generalized
binomials, composition enumeration, and the two universal sequences ``R_l``
and ``Q_r`` that convert singular-expansion coefficients into asymptotic
ones.  Values are cached per index and shared across varieties; the caches
are write-once-per-key and safe under concurrent readers.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterator, Mapping, Sequence

from . import hp


def bell_partial(n: int, k: int, xs: Sequence[Fraction]) -> Fraction:
    """Partial exponential Bell polynomial ``B_{n,k}(x_1..x_{n-k+1})``.

    Computed through the recurrence
    ``B_{n,k} = sum_i binom(n-1, i-1) x_i B_{n-i,k-1}``
    rather than by enumerating set partitions.
    """
    if not 1 <= k <= n:
        raise ValueError(f"need 1 <= k <= n, got n={n}, k={k}")
    if len(xs) < n - k + 1:
        raise ValueError(f"need {n - k + 1} arguments, got {len(xs)}")
    xs = tuple(Fraction(x) for x in xs)
    # table[m][j] = B_{m,j}; only entries with m - j <= n - k are reachable
    # from B_{n,k} through the recurrence, and only those index into xs
    table = [[Fraction(0)] * (k + 1) for _ in range(n + 1)]
    table[0][0] = Fraction(1)
    for m in range(1, n + 1):
        for j in range(1, min(m, k) + 1):
            if m - j > n - k:
                continue
            acc = Fraction(0)
            for i in range(1, m - j + 2):
                acc += math.comb(m - 1, i - 1) * xs[i - 1] * table[m - i][j - 1]
            table[m][j] = acc
    return table[n][k]


@lru_cache(maxsize=None)
def _bell_unit(n: int, k: int) -> Fraction:
    """``B_{n,k}`` at the fixed argument sequence ``x_i = 1/(i+2)``."""
    if n == 0 and k == 0:
        return Fraction(1)
    if n == 0 or k == 0:
        return Fraction(0)
    acc = Fraction(0)
    for i in range(1, n - k + 2):
        acc += math.comb(n - 1, i - 1) * Fraction(1, i + 2) * _bell_unit(n - i, k - 1)
    return acc


@lru_cache(maxsize=None)
def b_seq(ell: int) -> Fraction:
    """Signed Bell-polynomial weight ``B(l)`` of the singular expansion.

    ``B(1) = 1`` and for ``l > 1``

        B(l) = sum_{k=1}^{l-1} (-1)^k B_{l-1,k}(1/3,...,1/(l-k+2))
                               * prod_{i=0}^{k-1} (l + 2i)

    evaluated in nested (Ruffini-Horner) form: the products over ``i`` share
    prefixes, so the alternating sum collapses to ``-l * H_1`` with
    ``H_k = a_k - (l + 2k) H_{k+1}`` and ``a_k = B_{l-1,k}``.
    """
    if ell < 1:
        raise ValueError(f"index must be positive, got {ell}")
    if ell == 1:
        return Fraction(1)
    m = ell - 1
    horner = _bell_unit(m, m)
    for k in range(m - 1, 0, -1):
        horner = _bell_unit(m, k) - (ell + 2 * k) * horner
    return -ell * horner


def b_seq_direct(ell: int) -> Fraction:
    """Unfactored evaluation of ``B(l)``; cross-checks :func:`b_seq`."""
    if ell < 1:
        raise ValueError(f"index must be positive, got {ell}")
    if ell == 1:
        return Fraction(1)
    acc = Fraction(0)
    for k in range(1, ell):
        prod = Fraction(1)
        for i in range(k):
            prod *= ell + 2 * i
        acc += (-1) ** k * _bell_unit(ell - 1, k) * prod
    return acc


@dataclass(frozen=True)
class CayleyCoefficient:
    """Coefficient of ``(1 - e*z)^(n/2)``, as ``rational_part * sqrt(2)^sqrt2_power``."""

    n: int
    rational_part: Fraction
    sqrt2_power: int

    def __post_init__(self):
        if self.sqrt2_power != self.n % 2:
            raise ValueError("odd half-integer powers carry exactly one sqrt(2) factor")

    def to_real(self, ctx):
        value = hp.convert(self.rational_part, ctx)
        if self.sqrt2_power:
            value *= ctx.sqrt(2)
        return value


def cayley_puiseux(n_max: int) -> list[CayleyCoefficient]:
    """Square-root expansion coefficients of the tree function at ``z = 1/e``.

    Index 0 gives 1, index 1 gives ``-sqrt(2)``, and index ``n >= 2`` gives
    ``-B(n) * 2^(n/2) / n!`` split into a rational part times ``sqrt(2)^(n mod 2)``.
    """
    out = []
    for n in range(n_max + 1):
        if n == 0:
            out.append(CayleyCoefficient(0, Fraction(1), 0))
        elif n == 1:
            out.append(CayleyCoefficient(1, Fraction(-1), 1))
        else:
            rat = -b_seq(n) * Fraction(2 ** (n // 2), math.factorial(n))
            out.append(CayleyCoefficient(n, rat, n % 2))
    return out


def gen_binom(a, r: int) -> Fraction:
    """Generalized binomial ``binom(a, r) = prod_{j<r} (a - j) / r!``."""
    if r < 0:
        raise ValueError(f"lower index must be non-negative, got {r}")
    a = Fraction(a)
    prod = Fraction(1)
    for j in range(r):
        prod *= a - j
    return prod / math.factorial(r)


def compositions(total: int, parts: int) -> Iterator[tuple[int, ...]]:
    """Yield every ordered tuple of ``parts`` positive integers summing to ``total``.

    There are ``binom(total-1, parts-1)`` of them.
    """
    if total < 1 or parts < 1:
        raise ValueError("total and parts must be positive")
    if parts == 1:
        yield (total,)
        return
    for first in range(1, total - parts + 2):
        for rest in compositions(total - first, parts - 1):
            yield (first,) + rest


@lru_cache(maxsize=None)
def r_inner(k: int) -> Fraction:
    """Inner double sum of the ``R_l`` weights.

    ``sum_{s=0}^{2k} 1/(s+1) sum_{j=0}^{s} (-1)^j binom(s,j) j^(2k)`` with the
    convention ``0**0 == 1`` (Python's native one), so the ``s = 0`` term is
    well-defined and vanishes for ``k >= 1``.
    """
    if k < 1:
        raise ValueError(f"index must be positive, got {k}")
    acc = Fraction(0)
    for s in range(0, 2 * k + 1):
        inner = sum((-1) ** j * math.comb(s, j) * j ** (2 * k) for j in range(s + 1))
        acc += Fraction(inner, s + 1)
    return acc


@lru_cache(maxsize=None)
def _r_ell(ell: int) -> Fraction:
    if ell == 0:
        return Fraction(1)
    acc = Fraction(0)
    for r in range(1, ell + 1):
        if (ell - r) % 2 != 0:
            continue
        ksum = (ell + r) // 2
        if ksum < r:
            continue
        for ks in compositions(ksum, r):
            prod = Fraction(1)
            prefix = 0  # running value of 2k_1 + ... + 2k_{i-1}
            for i, k_i in enumerate(ks, start=1):
                numer = (Fraction(1, 4**k_i) - 1) * r_inner(k_i)
                prod *= numer / ((ell - prefix + i - 1) * k_i)
                prefix += 2 * k_i
            acc += prod
    return acc


def r_seq(ell_max: int) -> list[Fraction]:
    """The universal weights ``R_0 .. R_{ell_max}`` (``R_0 = 1``)."""
    if ell_max < 0:
        raise ValueError(f"l_max must be non-negative, got {ell_max}")
    return [_r_ell(ell) for ell in range(ell_max + 1)]


@dataclass
class SymbolicTauPolynomial:
    """Linear form ``sum_j c_j t_j`` over the odd-index expansion symbols."""

    coeffs: dict[int, Fraction] = field(default_factory=dict)

    def __post_init__(self):
        for idx in self.coeffs:
            if idx % 2 == 0 or idx < 1:
                raise ValueError(f"only odd positive symbol indices allowed, got t_{idx}")
        self.coeffs = {i: Fraction(c) for i, c in self.coeffs.items() if c != 0}

    def evaluate(self, t_values: Sequence, ctx):
        """Instantiate the form at numeric values, indexed as ``t_values[j]``."""
        acc = ctx.mpf(0)
        for idx, c in self.coeffs.items():
            acc += hp.convert(c, ctx) * hp.convert(t_values[idx], ctx)
        return acc

    def scaled(self, factor: Fraction) -> "SymbolicTauPolynomial":
        return SymbolicTauPolynomial({i: c * factor for i, c in self.coeffs.items()})

    def __add__(self, other: "SymbolicTauPolynomial") -> "SymbolicTauPolynomial":
        out = dict(self.coeffs)
        for i, c in other.coeffs.items():
            out[i] = out.get(i, Fraction(0)) + c
        return SymbolicTauPolynomial(out)

    def __eq__(self, other) -> bool:
        if isinstance(other, SymbolicTauPolynomial):
            return self.coeffs == other.coeffs
        if isinstance(other, Mapping):
            return self.coeffs == {i: Fraction(c) for i, c in other.items() if c != 0}
        return NotImplemented

    def max_index(self) -> int:
        return max(self.coeffs, default=1)


@lru_cache(maxsize=None)
def _q_weight(j: int, s: int) -> Fraction:
    """``sum over compositions (l_0..l_j) of s of prod_i (i + 1/2)^(l_i)``.

    Memoized recursion over the last part; identical to enumerating the
    compositions explicitly, which the tests do for small arguments.
    """
    base = Fraction(2 * j + 1, 2)
    if j == 0:
        return base**s if s >= 1 else Fraction(0)
    acc = Fraction(0)
    power = Fraction(1)
    for part in range(1, s - j + 1):
        power *= base
        acc += _q_weight(j - 1, s - part) * power
    return acc


@lru_cache(maxsize=None)
def _q_poly(r: int) -> SymbolicTauPolynomial:
    return SymbolicTauPolynomial(
        {2 * j + 1: Fraction((-1) ** (j + 1)) * _q_weight(j, r) for j in range(r)}
    )


def q_symbolic(r_max: int) -> list[SymbolicTauPolynomial]:
    """The linear forms ``Q_1 .. Q_{r_max}`` in the odd symbols ``t_1, t_3, ...``

    ``Q_r = sum_{j=0}^{r-1} (-1)^(j+1) t_{2j+1} *
            sum over compositions (l_0..l_j) of r of prod_i (i + 1/2)^(l_i)``.
    """
    if r_max < 1:
        raise ValueError(f"r_max must be positive, got {r_max}")
    return [_q_poly(r) for r in range(1, r_max + 1)]


@lru_cache(maxsize=None)
def tau_symbolic(ell: int) -> SymbolicTauPolynomial:
    """Asymptotic coefficient ``tau_l = sum_{r=1}^{l+1} Q_r R_{l+1-r}`` as a linear form."""
    if ell < 0:
        raise ValueError(f"index must be non-negative, got {ell}")
    out = SymbolicTauPolynomial({})
    for r in range(1, ell + 2):
        out = out + _q_poly(r).scaled(_r_ell(ell + 1 - r))
    return out
