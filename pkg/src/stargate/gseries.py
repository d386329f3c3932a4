"""Truncated power series diagnostics and explicit height-bound formulas.

Growth tests compare ``d_n <= c^n`` in exact integers.  Radius estimates
are empirical (only a truncation is available) and are labeled as such.
Logarithms go through ``mpmath.iv`` and come back as rational intervals.
"""

import math
from contextlib import contextmanager
from dataclasses import dataclass
from fractions import Fraction

import mpmath
from mpmath.libmp import to_man_exp

from .errors import ArgumentError, PreconditionError
from .exactnum import poly
from .exactnum.primes import is_prime

MIN_ORDER = 10
EXACT_INFLATION_MU = 64
_IV_PREC = 160


@dataclass(frozen=True)
class TruncatedSeries:
    """``a_0 + a_1 x + ... + a_N x^N`` with rational coefficients."""

    coeffs: tuple

    def __post_init__(self):
        c = tuple(Fraction(x) for x in self.coeffs)
        object.__setattr__(self, "coeffs", c)
        if len(c) < 2:
            raise ArgumentError("a truncated series needs order N >= 1")

    @property
    def order(self):
        return len(self.coeffs) - 1

    def to_json(self):
        return {"coeffs": [str(c) for c in self.coeffs]}

    @classmethod
    def from_json(cls, data):
        return cls(tuple(Fraction(c) for c in data["coeffs"]))


def denominator_sequence(y):
    """``d_n = lcm(den a_0, ..., den a_n)``, the least admissible choice."""
    out, d = [], 1
    for a in y.coeffs:
        d = math.lcm(d, a.denominator)
        out.append(d)
    return out


@dataclass(frozen=True)
class Interval:
    lo: Fraction
    hi: Fraction

    def contains(self, x):
        return self.lo <= Fraction(x) <= self.hi

    @property
    def width(self):
        return self.hi - self.lo

    def to_json(self):
        return {"lo": str(self.lo), "hi": str(self.hi)}


@contextmanager
def _iv_precision():
    saved = mpmath.iv.prec
    mpmath.iv.prec = _IV_PREC
    try:
        yield
    finally:
        mpmath.iv.prec = saved


def _raw_to_fraction(raw):
    # raw mpf tuple; read directly so no rounding to the working precision occurs
    man, exp = to_man_exp(raw)
    return Fraction(int(man)) * Fraction(2) ** exp if exp >= 0 else Fraction(int(man), 2 ** -exp)


def _iv_to_interval(v):
    lo, hi = v._mpi_
    return Interval(_raw_to_fraction(lo), _raw_to_fraction(hi))


@dataclass(frozen=True)
class GrowthDiagnostics:
    accepted: bool
    cap: Fraction
    d_seq: tuple
    c_estimate: Interval  # encloses max_{n>=1} d_n^(1/n)
    first_failure: int = None


def _root_interval(d, n):
    with _iv_precision():
        return mpmath.iv.mpf(d) ** (mpmath.iv.mpf(1) / n)


def g_series_candidate(y, c_cap):
    """Accept when ``d_n <= c_cap^n`` for ``1 <= n <= N``.

    >>> g_series_candidate(TruncatedSeries([1] * 12), 2).accepted
    True
    """
    if y.order < MIN_ORDER:
        raise PreconditionError(f"order {y.order} is below the minimum {MIN_ORDER}", witness=y.order)
    cap = Fraction(c_cap)
    if cap <= 0:
        raise ArgumentError("cap must be positive")
    d_seq = denominator_sequence(y)
    failure = None
    best_n = 1
    for n in range(1, y.order + 1):
        # d_n <= (p/q)^n  <=>  d_n q^n <= p^n
        if failure is None and d_seq[n] * cap.denominator ** n > cap.numerator ** n:
            failure = n
        # d_n^(1/n) > d_m^(1/m)  <=>  d_n^m > d_m^n
        if d_seq[n] ** best_n > d_seq[best_n] ** n:
            best_n = n
    est = _iv_to_interval(_root_interval(d_seq[best_n], best_n))
    return GrowthDiagnostics(accepted=failure is None, cap=cap, d_seq=tuple(d_seq),
                             c_estimate=est, first_failure=failure)


@dataclass(frozen=True)
class RadiusEstimate:
    place: str  # "inf" or a prime as a decimal string
    value: float
    certified: bool = False


def _tail(y):
    start = max(1, y.order // 2)
    return [(n, a) for n, a in enumerate(y.coeffs) if n >= start and a != 0]


def archimedean_radius_estimate(y):
    """Root-test estimate ``1 / max |a_n|^(1/n)`` over the upper half of the window."""
    tail = _tail(y)
    if not tail:
        return RadiusEstimate("inf", math.inf)
    growth = max(float(mpmath.power(abs(mpmath.mpf(a.numerator) / a.denominator), 1.0 / n))
                 for n, a in tail)
    return RadiusEstimate("inf", 1.0 / growth if growth else math.inf)


def valuation(x, l):
    x = Fraction(x)
    if x == 0:
        raise ArgumentError("valuation of zero")
    v, num, den = 0, x.numerator, x.denominator
    while num % l == 0:
        num //= l
        v += 1
    while den % l == 0:
        den //= l
        v -= 1
    return v


def l_adic_radius_estimate(y, l):
    """``l^(min v_l(a_n)/n)`` over the upper half of the window (the ``|x|_l`` radius)."""
    if not is_prime(l):
        raise ArgumentError(f"{l} is not prime")
    tail = _tail(y)
    if not tail:
        return RadiusEstimate(str(l), math.inf)
    slope = min(Fraction(valuation(a, l), n) for n, a in tail)
    return RadiusEstimate(str(l), float(mpmath.power(l, mpmath.mpf(slope.numerator) / slope.denominator)))


def radius_estimates(y, primes=()):
    return [archimedean_radius_estimate(y)] + [l_adic_radius_estimate(y, l) for l in primes]


def ode_residual(y, operator):
    """Coefficients of ``sum_k p_k(x) y^(k)`` that the truncation determines.

    ``operator`` lists the polynomial coefficients ``p_0, ..., p_K``; the
    returned list holds the coefficients of ``x^0 .. x^(N-K)``, all of
    which vanish when ``y`` solves the equation.
    """
    if not operator:
        raise ArgumentError("empty differential operator")
    k_max = len(operator) - 1
    valid = y.order - k_max
    if valid < 0:
        raise PreconditionError("series is shorter than the order of the operator", witness=y.order)
    total = []
    deriv = list(y.coeffs)
    for p in operator:
        total = poly.add(total, poly.mul([Fraction(c) for c in p], deriv))
        deriv = poly.derivative(deriv)
    return [total[t] if t < len(total) else Fraction(0) for t in range(valid + 1)]


def v_adic_closeness(xi_abs, radii):
    """Places ``v`` with ``|xi|_v < min(1, R_v)``, in the order of ``xi_abs``."""
    if set(xi_abs) != set(radii):
        raise ArgumentError("xi_abs and radii must list the same places")
    return [v for v, a in xi_abs.items() if Fraction(a) < min(Fraction(1), Fraction(radii[v]))]


@dataclass(frozen=True)
class HeightBoundInput:
    delta: int
    m: int
    c1: Fraction = Fraction(1)
    c2: Fraction = Fraction(1)

    def __post_init__(self):
        object.__setattr__(self, "c1", Fraction(self.c1))
        object.__setattr__(self, "c2", Fraction(self.c2))
        if self.delta < 1 or self.m < 1:
            raise ArgumentError("delta and m must be at least 1")
        if self.c1 <= 0 or self.c2 <= 0:
            raise ArgumentError("constants must be positive")


def log_interval(x):
    """Rational interval around ``ln x`` of width well below ``1e-12``."""
    with _iv_precision():
        return _iv_to_interval(mpmath.iv.log(mpmath.iv.mpf(x)))


def hasse_height_bound(inp, strong=False):
    """``c1 delta^(3(m-1)) (ln delta + 1)``, or ``c2 delta^m (ln delta + 1)`` when ``strong``."""
    c, k = (inp.c2, inp.m) if strong else (inp.c1, 3 * (inp.m - 1))
    factor = c * Fraction(inp.delta) ** k
    ln = log_interval(inp.delta)
    return Interval(factor * (ln.lo + 1), factor * (ln.hi + 1))


@dataclass(frozen=True)
class DegreeBound:
    mu: int
    value: int  # None beyond EXACT_INFLATION_MU
    log10: float


def degree_inflation_bound(mu):
    """``ceil((6.31 mu^2)^(mu^2))`` with ``6.31 = 631/100`` kept exact."""
    if mu < 1:
        raise ArgumentError("mu must be positive")
    base = Fraction(631 * mu * mu, 100)
    e = mu * mu
    value = None
    if mu <= EXACT_INFLATION_MU:
        p = base ** e
        value = -((-p.numerator) // p.denominator)
    log10 = float(e * mpmath.log10(mpmath.mpf(base.numerator) / base.denominator))
    return DegreeBound(mu=mu, value=value, log10=log10)
