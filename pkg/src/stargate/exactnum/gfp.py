"""Polynomials over the prime field F_p and their factorization.

Same representation as :mod:`stargate.exactnum.poly` (ascending coefficient
lists, no trailing zeros) with coefficients reduced into ``range(p)``.
Factoring is square-free decomposition, distinct-degree factorization and
Cantor-Zassenhaus equal-degree splitting.
"""

import random
from fractions import Fraction

from ..errors import ArgumentError, DegenerateInputError
from .primes import is_prime


def reduce(a, p):
    """Reduce an integer or rational polynomial mod ``p``."""
    out = []
    for x in a:
        if isinstance(x, Fraction):
            if x.denominator % p == 0:
                raise ArgumentError(f"coefficient {x} is not {p}-integral")
            out.append(x.numerator * pow(x.denominator, -1, p) % p)
        else:
            out.append(x % p)
    while out and out[-1] == 0:
        out.pop()
    return out


def _trim(c):
    while c and c[-1] == 0:
        c.pop()
    return c


def add(a, b, p):
    n = max(len(a), len(b))
    return _trim([((a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0)) % p for i in range(n)])


def sub(a, b, p):
    n = max(len(a), len(b))
    return _trim([((a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0)) % p for i in range(n)])


def mul(a, b, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _trim([x % p for x in out])


def divmod_p(a, b, p):
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    r = list(a)
    inv = pow(b[-1], -1, p)
    q = [0] * max(len(r) - len(b) + 1, 0)
    while len(r) >= len(b) and r:
        shift = len(r) - len(b)
        factor = r[-1] * inv % p
        q[shift] = factor
        for i, y in enumerate(b):
            r[shift + i] = (r[shift + i] - factor * y) % p
        _trim(r)
    return _trim(q), r


def rem(a, b, p):
    return divmod_p(a, b, p)[1]


def monic(a, p):
    if not a:
        return []
    inv = pow(a[-1], -1, p)
    return [x * inv % p for x in a]


def gcd(a, b, p):
    while b:
        a, b = b, rem(a, b, p)
    return monic(a, p)


def derivative(a, p):
    return _trim([i * a[i] % p for i in range(1, len(a))])


def powmod(a, e, m, p):
    result = [1]
    base = rem(a, m, p)
    while e:
        if e & 1:
            result = rem(mul(result, base, p), m, p)
        base = rem(mul(base, base, p), m, p)
        e >>= 1
    return result


def compose_mod(f, g, m, p):
    """``f(g(x)) mod (m, p)`` by Horner's rule."""
    acc = []
    for coeff in reversed(f):
        acc = rem(add(mul(acc, g, p), [coeff % p] if coeff % p else [], p), m, p)
    return acc


def _pth_root(a, p):
    # a is a polynomial in x**p; over F_p the p-th root of each coefficient is itself.
    return [a[i] for i in range(0, len(a), p)]


def squarefree_decomposition(f, p):
    """Yun-style decomposition of a monic ``f`` into ``[(g, k), ...]`` with ``f = prod g**k``."""
    out = []
    _sqf(monic(f, p), p, 1, out)
    merged = {}
    for g, k in out:
        merged.setdefault(k, [1])
        merged[k] = mul(merged[k], g, p)
    return [(g, k) for k, g in sorted(merged.items()) if len(g) > 1]


def _sqf(f, p, mult, out):
    if len(f) <= 1:
        return
    df = derivative(f, p)
    if not df:
        _sqf(_pth_root(f, p), p, mult * p, out)
        return
    c = gcd(f, df, p)
    w = divmod_p(f, c, p)[0]
    i = 1
    while len(w) > 1:
        y = gcd(w, c, p)
        z = divmod_p(w, y, p)[0]
        if len(z) > 1:
            out.append((monic(z, p), i * mult))
        i += 1
        w = y
        c = divmod_p(c, y, p)[0]
    if len(c) > 1:
        _sqf(_pth_root(c, p), p, mult * p, out)


def distinct_degree(f, p):
    """Split a monic square-free ``f`` into ``[(product of degree-d factors, d), ...]``."""
    out = []
    h = [0, 1]
    d = 0
    f = list(f)
    while len(f) - 1 >= 2 * (d + 1):
        d += 1
        h = powmod(h, p, f, p)
        g = gcd(f, sub(h, [0, 1], p), p)
        if len(g) > 1:
            out.append((g, d))
            f = divmod_p(f, g, p)[0]
            h = rem(h, f, p)
    if len(f) > 1:
        out.append((f, len(f) - 1))
    return out


def equal_degree(f, d, p, rng):
    """Cantor-Zassenhaus splitting of a product of distinct degree-``d`` irreducibles."""
    n = len(f) - 1
    if n == d:
        return [f]
    while True:
        a = [rng.randrange(p) for _ in range(n)]
        _trim(a)
        if len(a) < 2:
            continue
        if p == 2:
            # trace map a + a^2 + ... + a^(2^(d-1))
            t = list(a)
            acc = list(a)
            for _ in range(d - 1):
                t = rem(mul(t, t, p), f, p)
                acc = add(acc, t, p)
            candidate = acc
        else:
            candidate = sub(powmod(a, (p ** d - 1) // 2, f, p), [1], p)
        g = gcd(f, candidate, p)
        if 1 < len(g) < len(f):
            return (equal_degree(g, d, p, rng)
                    + equal_degree(divmod_p(f, g, p)[0], d, p, rng))


def canonical_key(g):
    """Canonical ordering of monic factors: coefficient-lexicographic, ascending degree order."""
    return tuple(g)


def factor_mod_p(poly, p):
    """Factor ``poly`` over F_p into monic irreducibles with multiplicities.

    Returns ``[(factor, multiplicity), ...]`` sorted by :func:`canonical_key`;
    the product of the factors equals ``poly`` mod ``p`` up to its leading
    coefficient.

    >>> factor_mod_p([1, 0, 1], 5)
    [([2, 1], 1), ([3, 1], 1)]
    """
    if not is_prime(p):
        raise ArgumentError(f"{p} is not prime")
    f = reduce(poly, p)
    if not f:
        raise DegenerateInputError(f"polynomial vanishes mod {p}")
    if len(f) == 1:
        return []
    rng = random.Random(p)
    out = []
    for g, k in squarefree_decomposition(f, p):
        for part, d in distinct_degree(g, p):
            for irreducible in equal_degree(part, d, p, rng):
                out.append((monic(irreducible, p), k))
    out.sort(key=lambda item: canonical_key(item[0]))
    return out
