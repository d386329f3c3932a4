"""Exact linear algebra over Q.

Matrices are lists of rows, vectors are tuples; every entry is a
``Fraction``.  Subspaces are handled as lists of basis vectors kept in
reduced row-echelon form, so two equal subspaces have equal bases.
"""

from fractions import Fraction

from ..errors import ArgumentError


def Q(x):
    """Coerce ``int``, ``Fraction`` or ``"p/q"`` strings into a ``Fraction``."""
    return x if isinstance(x, Fraction) else Fraction(x)


def matrix(rows):
    return [[Q(x) for x in row] for row in rows]


def identity(n):
    return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]


def zeros(n, m=None):
    return [[Fraction(0)] * (n if m is None else m) for _ in range(n)]


def transpose(a):
    return [list(col) for col in zip(*a)] if a else []


def mat_mul(a, b):
    bt = transpose(b)
    return [[sum((x * y for x, y in zip(row, col)), Fraction(0)) for col in bt] for row in a]


def mat_vec(a, v):
    return tuple(sum((x * y for x, y in zip(row, v)), Fraction(0)) for row in a)


def mat_add(a, b):
    return [[x + y for x, y in zip(r, s)] for r, s in zip(a, b)]


def mat_scale(a, k):
    return [[k * x for x in row] for row in a]


def mat_pow(a, e):
    result = identity(len(a))
    base = a
    while e:
        if e & 1:
            result = mat_mul(result, base)
        base = mat_mul(base, base)
        e >>= 1
    return result


def is_zero(a):
    return all(x == 0 for row in a for x in row)


def rref(a):
    """Reduced row-echelon form; returns ``(rows, pivot_columns)``."""
    m = [list(row) for row in a]
    pivots = []
    r = 0
    ncols = len(m[0]) if m else 0
    for c in range(ncols):
        pivot = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                k = m[i][c]
                m[i] = [x - k * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def rank(a):
    return len(rref(a)[0]) if a else 0


def nullspace(a, ncols=None):
    """Basis of ``{x : a x = 0}``."""
    n = len(a[0]) if a else ncols
    if n is None:
        raise ArgumentError("cannot infer column count of an empty matrix")
    rows, pivots = rref(a) if a else ([], [])
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * n
        v[f] = Fraction(1)
        for row, pc in zip(rows, pivots):
            v[pc] = -row[f]
        basis.append(tuple(v))
    return basis


def span(vectors):
    """Canonical (RREF) basis of the span of ``vectors``."""
    vectors = [tuple(Q(x) for x in v) for v in vectors]
    if not vectors:
        return []
    return [tuple(row) for row in rref(vectors)[0]]


def column_space(a):
    return span(transpose(a))


def kernel(a):
    return span(nullspace(a))


def subspace_sum(u, v):
    return span(list(u) + list(v))


def intersect(u, v, dim):
    """Intersection of two subspaces given by bases (ambient dimension ``dim``)."""
    if not u or not v:
        return []
    # Solve sum a_i u_i - sum b_j v_j = 0.
    cols = [list(x) for x in u] + [[-y for y in x] for x in v]
    system = transpose(cols)
    sols = nullspace(system)
    out = []
    for s in sols:
        vec = [Fraction(0)] * dim
        for coeff, b in zip(s[:len(u)], u):
            if coeff:
                vec = [x + coeff * y for x, y in zip(vec, b)]
        out.append(vec)
    return span(out)


def image(a, basis):
    """Span of the images of ``basis`` vectors under ``a``."""
    return span([mat_vec(a, b) for b in basis])


def contains(basis, v):
    """True when ``v`` lies in the span of ``basis``."""
    if all(x == 0 for x in v):
        return True
    return rank(list(basis) + [list(v)]) == len(span(basis))


def is_subspace(u, v):
    return all(contains(v, x) for x in u)


def solve(a, b):
    """One solution of ``a x = b`` or ``None`` when inconsistent."""
    n = len(a[0])
    aug = [list(row) + [Q(bi)] for row, bi in zip(a, b)]
    rows, pivots = rref(aug)
    if n in pivots:
        return None
    x = [Fraction(0)] * n
    for row, pc in zip(rows, pivots):
        x[pc] = row[n]
    return tuple(x)


def coordinates(v, basis):
    """Coefficients of ``v`` in the (independent) ``basis``; ``None`` if outside the span."""
    return solve(transpose([list(b) for b in basis]), list(v))


def inverse(a):
    n = len(a)
    aug = [list(row) + ident for row, ident in zip(a, identity(n))]
    rows, pivots = rref(aug)
    if pivots[:n] != list(range(n)):
        raise ArgumentError("matrix is singular")
    return [row[n:] for row in rows]


def determinant(a):
    m = [list(row) for row in a]
    n = len(m)
    det = Fraction(1)
    for c in range(n):
        pivot = next((i for i in range(c, n) if m[i][c] != 0), None)
        if pivot is None:
            return Fraction(0)
        if pivot != c:
            m[c], m[pivot] = m[pivot], m[c]
            det = -det
        det *= m[c][c]
        for i in range(c + 1, n):
            if m[i][c]:
                k = m[i][c] / m[c][c]
                m[i] = [x - k * y for x, y in zip(m[i], m[c])]
    return det


def charpoly(a):
    """Characteristic polynomial ``det(x I - a)``, ascending coefficients (Faddeev-LeVerrier)."""
    n = len(a)
    coeffs = [Fraction(0)] * (n + 1)
    coeffs[n] = Fraction(1)
    m = zeros(n)
    for k in range(1, n + 1):
        m = mat_add(mat_mul(a, m), mat_scale(identity(n), coeffs[n - k + 1]))
        am = mat_mul(a, m)
        coeffs[n - k] = -sum(am[i][i] for i in range(n)) / k
    return coeffs



