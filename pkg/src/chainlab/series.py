"""Truncated power series with exact rational coefficients.

The engine is purely analytic: a series stores raw coefficients g_0..g_N of
sum g_n z^n and every operation is exact through its stated order.  The
d-exponential convention (counts f_n = g_n * (n!)^d) lives only in the
conversion helpers counts_to_series / series_to_counts, never inside the
arithmetic, which keeps normalization mistakes out of the calculus.
"""

import math
from dataclasses import dataclass
from fractions import Fraction


@dataclass(frozen=True)
class TruncatedSeries:
    """Coefficients g_0..g_N of an order-N truncation, exact rationals."""

    coeffs: tuple[Fraction, ...]

    def __post_init__(self):
        if not self.coeffs:
            raise ValueError("a truncated series needs at least the constant term")
        object.__setattr__(self, "coeffs", tuple(Fraction(c) for c in self.coeffs))

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    @classmethod
    def zero(cls, order: int) -> "TruncatedSeries":
        return cls((Fraction(0),) * (order + 1))

    @classmethod
    def one(cls, order: int) -> "TruncatedSeries":
        return cls((Fraction(1),) + (Fraction(0),) * order)

    def truncate(self, order: int) -> "TruncatedSeries":
        if order > self.order:
            raise ValueError(f"cannot extend order {self.order} to {order}")
        return TruncatedSeries(self.coeffs[:order + 1])

    def __add__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        n = min(self.order, other.order)
        return TruncatedSeries(tuple(self.coeffs[i] + other.coeffs[i] for i in range(n + 1)))

    def __sub__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        n = min(self.order, other.order)
        return TruncatedSeries(tuple(self.coeffs[i] - other.coeffs[i] for i in range(n + 1)))

    def scale(self, factor) -> "TruncatedSeries":
        factor = Fraction(factor)
        return TruncatedSeries(tuple(c * factor for c in self.coeffs))

    def __mul__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        n = min(self.order, other.order)
        out = [Fraction(0)] * (n + 1)
        for i, a in enumerate(self.coeffs[:n + 1]):
            if a:
                for j in range(n + 1 - i):
                    out[i + j] += a * other.coeffs[j]
        return TruncatedSeries(tuple(out))

    def geom_divide(self) -> "TruncatedSeries":
        """Multiply by 1/(1-z): prefix sums of the coefficients."""
        out = []
        acc = Fraction(0)
        for c in self.coeffs:
            acc += c
            out.append(acc)
        return TruncatedSeries(tuple(out))

    def differentiate(self) -> "TruncatedSeries":
        """d/dz, exact through order N-1."""
        if self.order == 0:
            raise ValueError("cannot differentiate an order-0 truncation")
        return TruncatedSeries(tuple(n * c for n, c in enumerate(self.coeffs) if n >= 1))

    def integrate(self) -> "TruncatedSeries":
        """Antiderivative with constant term 0, exact through order N+1."""
        return TruncatedSeries((Fraction(0),) + tuple(c / (n + 1) for n, c in enumerate(self.coeffs)))

    def exp(self) -> "TruncatedSeries":
        """Series exponential; requires a vanishing constant term."""
        if self.coeffs[0] != 0:
            raise ValueError("exp requires constant term 0")
        n = self.order
        out = [Fraction(1)] + [Fraction(0)] * n
        for m in range(1, n + 1):
            acc = Fraction(0)
            for j in range(1, m + 1):
                if self.coeffs[j]:
                    acc += j * self.coeffs[j] * out[m - j]
            out[m] = acc / m
        return TruncatedSeries(tuple(out))


def geometric_series(order: int) -> TruncatedSeries:
    """1/(1-z) through the given order."""
    return TruncatedSeries((Fraction(1),) * (order + 1))


def counts_to_series(counts, d: int) -> TruncatedSeries:
    """Analytic coefficients of the d-exponential generating function.

    g_n = f_n / (n!)^d; d = 0 is the identity.
    """
    if d < 0:
        raise ValueError(f"d must be >= 0, got {d}")
    return TruncatedSeries(tuple(Fraction(f) / math.factorial(n) ** d
                                 for n, f in enumerate(counts)))


def series_to_counts(series: TruncatedSeries, d: int) -> tuple[int, ...]:
    """Recover integer counts f_n = g_n * (n!)^d, rejecting non-integers."""
    if d < 0:
        raise ValueError(f"d must be >= 0, got {d}")
    counts = []
    for n, g in enumerate(series.coeffs):
        f = g * math.factorial(n) ** d
        if f.denominator != 1:
            raise ValueError(f"coefficient {n}: {g} * ({n}!)^{d} = {f} is not an integer count")
        counts.append(f.numerator)
    return tuple(counts)


def add_root(series: TruncatedSeries) -> TruncatedSeries:
    """Append a fresh root with k-1 pointers: multiply by z.

    On (k-1)-exponential counts this is f'_{n+1} = (n+1)^(k-1) f_n, because
    each new pointer may aim at any of the n+1 existing nodes; on analytic
    coefficients it is a plain shift, exact through order N+1.
    """
    return TruncatedSeries((Fraction(0),) + series.coeffs)


def pointer_add(series: TruncatedSeries) -> TruncatedSeries:
    """Attach one extra pointer to the root: z d/dz R + R(0)."""
    out = [series.coeffs[0]]
    out.extend(n * c for n, c in enumerate(series.coeffs) if n >= 1)
    return TruncatedSeries(tuple(out))


def pointer_remove(series: TruncatedSeries) -> TruncatedSeries:
    """Remove the root's first pointer: integral of (R - R(0)) / z."""
    out = [Fraction(0)]
    out.extend(c / n for n, c in enumerate(series.coeffs) if n >= 1)
    return TruncatedSeries(tuple(out))


def level_series(level: int, k: int, order: int) -> TruncatedSeries:
    """The (k-1)-exponential generating function of nodes on a fixed level.

    Starts from level 1 (the spine nodes, z/(1-z)^2) and lifts one level at
    a time: surround with node sequences and reconnect one of the root's k-1
    pointers, i.e. multiply by 1/(1-z), integrate, multiply by (k-1)/(1-z).
    Coefficients equal (k-1)^(level-1) C(n, level) / level!.
    """
    if level < 1:
        raise ValueError(f"level must be >= 1, got {level}")
    if k < 2:
        raise ValueError(f"arity must be >= 2, got {k}")
    current = TruncatedSeries(tuple(Fraction(n) for n in range(order + 1)))
    for _ in range(level - 1):
        current = current.geom_divide().integrate().geom_divide().scale(k - 1)
        current = current.truncate(order)
    return current


def level_series_closed_form(level: int, k: int, order: int) -> TruncatedSeries:
    """Same series by the explicit coefficient formula; the recurrence's oracle."""
    fact = math.factorial(level)
    return TruncatedSeries(tuple(
        Fraction((k - 1) ** (level - 1) * math.comb(n, level), fact)
        for n in range(order + 1)))


# ---------------------------------------------------------------------------
# Bivariate truncations: a series in z per power of q, both orders equal.
# ---------------------------------------------------------------------------

def _bi_mul(a, b, order):
    out = []
    zero = TruncatedSeries.zero(order)
    for q in range(order + 1):
        acc = zero
        for i in range(q + 1):
            if i < len(a) and q - i < len(b):
                acc = acc + a[i] * b[q - i]
        out.append(acc)
    return out


def _bi_exp(b, order):
    if b[0].coeffs[0] != 0:
        raise ValueError("exp requires a vanishing constant term")
    zero = TruncatedSeries.zero(order)
    result = [TruncatedSeries.one(order)] + [zero] * order
    power = [TruncatedSeries.one(order)] + [zero] * order
    factorial = 1
    for j in range(1, 2 * order + 2):
        power = _bi_mul(power, b, order)
        if all(all(c == 0 for c in comp.coeffs) for comp in power):
            break
        factorial *= j
        result = [r + p.scale(Fraction(1, factorial)) for r, p in zip(result, power)]
    return result


def bivariate_level_slices(k: int, order: int) -> list[TruncatedSeries]:
    """[q^l] of the closed form (e^((k-1)qz/(1-z)) - 1) / ((k-1)(1-z)).

    Built through the generic bivariate exponential, independently of the
    level-lifting recurrence in level_series.
    """
    zero = TruncatedSeries.zero(order)
    z_over = TruncatedSeries((Fraction(0),) + (Fraction(1),) * order)  # z/(1-z)
    exponent = [zero, z_over.scale(k - 1)] + [zero] * (order - 1)
    slices = _bi_exp(exponent, order)
    slices[0] = slices[0] - TruncatedSeries.one(order)  # subtract 1
    return [s.scale(Fraction(1, k - 1)).geom_divide() for s in slices]


def bivariate_check(k: int, order: int) -> bool:
    """Closed bivariate form against the per-level recurrence, all levels <= order."""
    slices = bivariate_level_slices(k, order)
    if any(c != 0 for c in slices[0].coeffs):
        return False
    return all(slices[level] == level_series(level, k, order)
               for level in range(1, order + 1))
