"""Dense univariate polynomials over Z and Q.

A polynomial is a list of coefficients in ascending degree, ``[c0, c1, ...]``,
with no trailing zeros; the zero polynomial is ``[]``.  Coefficients are
``int`` or ``fractions.Fraction`` and the functions below never convert to
floating point.
"""

from fractions import Fraction


def trim(c):
    c = list(c)
    while c and c[-1] == 0:
        c.pop()
    return c


def degree(c):
    """Degree, with ``-1`` for the zero polynomial."""
    return len(trim(c)) - 1




def add(a, b):
    n = max(len(a), len(b))
    return trim([(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)])


def sub(a, b):
    n = max(len(a), len(b))
    return trim([(a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0) for i in range(n)])


def scale(a, k):
    return trim([k * x for x in a])


def mul(a, b):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x == 0:
            continue
        for j, y in enumerate(b):
            out[i + j] += x * y
    return trim(out)


def power(a, e):
    result = [1]
    base = list(a)
    while e:
        if e & 1:
            result = mul(result, base)
        base = mul(base, base)
        e >>= 1
    return result


def divmod_q(a, b):
    """Quotient and remainder over Q."""
    b = trim(b)
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    r = [Fraction(x) for x in trim(a)]
    q = [Fraction(0)] * max(len(r) - len(b) + 1, 0)
    lb = Fraction(b[-1])
    while len(r) >= len(b) and r:
        shift = len(r) - len(b)
        factor = r[-1] / lb
        q[shift] = factor
        for i, y in enumerate(b):
            r[shift + i] -= factor * y
        r = trim(r)
    return trim(q), r


def rem_q(a, b):
    return divmod_q(a, b)[1]


def divides_z(b, a):
    """True when the integer polynomial ``b`` divides ``a`` in Z[x]."""
    q, r = divmod_q(a, b)
    return not r and all(x.denominator == 1 for x in q)


def derivative(a):
    return trim([i * a[i] for i in range(1, len(a))])


def evaluate(a, x):
    acc = 0
    for coeff in reversed(a):
        acc = acc * x + coeff
    return acc


def compose(f, g):
    """``f(g(x))``."""
    acc = []
    for coeff in reversed(trim(f)):
        acc = add(mul(acc, g), [coeff] if coeff else [])
    return acc


def monic_q(a):
    a = trim(a)
    if not a:
        return []
    lc = Fraction(a[-1])
    return [Fraction(x) / lc for x in a]








def resultant(a, b):
    """Resultant over Q by the Euclidean remainder sequence."""
    a, b = trim(a), trim(b)
    if not a or not b:
        return Fraction(0)
    m, n = len(a) - 1, len(b) - 1
    if n == 0:
        return Fraction(b[0]) ** m
    r = rem_q(a, b)
    if not r:
        return Fraction(0)
    sign = -1 if (m * n) % 2 else 1
    return sign * Fraction(b[-1]) ** (m - (len(r) - 1)) * resultant(b, r)


def discriminant(f):
    f = trim(f)
    n = len(f) - 1
    if n < 1:
        raise ValueError("discriminant of a constant")
    sign = -1 if (n * (n - 1) // 2) % 2 else 1
    d = sign * resultant(f, derivative(f)) / f[-1]
    return int(d) if d.denominator == 1 else d


def _sign(x):
    return (x > 0) - (x < 0)


def _variations(signs):
    signs = [s for s in signs if s != 0]
    return sum(1 for s, t in zip(signs, signs[1:]) if s != t)


def sturm_sequence(f):
    seq = [[Fraction(x) for x in trim(f)]]
    seq.append(derivative(seq[0]))
    while seq[-1]:
        r = rem_q(seq[-2], seq[-1])
        seq.append([-x for x in r])
    return seq[:-1]


def count_real_roots(f):
    """Number of distinct real roots of ``f`` (Sturm's theorem)."""
    f = trim(f)
    if len(f) <= 1:
        if not f:
            raise ValueError("zero polynomial has infinitely many roots")
        return 0
    seq = sturm_sequence(f)
    at_pos_inf = [_sign(p[-1]) for p in seq]
    at_neg_inf = [_sign(p[-1]) * (-1 if (len(p) - 1) % 2 else 1) for p in seq]
    return _variations(at_neg_inf) - _variations(at_pos_inf)
