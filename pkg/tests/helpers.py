"""Random instance generators shared by the test modules (seeded, reproducible)."""

from fractions import Fraction

from stargate.exactnum import linalg as la
from stargate.filtration import jordan_block_matrix

# acceptance criterion number -> (PASS/FAIL, note); printed by the terminal summary hook
RESULTS = {}


def partitions(n, max_part=None):
    max_part = max_part or n
    if n == 0:
        yield ()
        return
    for k in range(min(n, max_part), 0, -1):
        for rest in partitions(n - k, k):
            yield (k,) + rest


def random_invertible(rng, n, lo=-3, hi=3):
    while True:
        m = [[Fraction(rng.randint(lo, hi)) for _ in range(n)] for _ in range(n)]
        if la.determinant(m) != 0:
            return m


def random_nilpotent(rng, mu):
    """``P J P^-1`` for a random Jordan type ``J`` of size ``mu``; returns (matrix, type)."""
    types = list(partitions(mu))
    jt = rng.choice(types)
    p = random_invertible(rng, mu)
    m = la.mat_mul(la.mat_mul(p, jordan_block_matrix(jt)), la.inverse(p))
    return m, jt


def random_strictly_upper(rng, mu, density=0.5):
    m = la.zeros(mu)
    for i in range(mu):
        for j in range(i + 1, mu):
            if rng.random() < density:
                m[i][j] = Fraction(rng.randint(-4, 4))
    return m


def symplectic_generators(rng, g):
    """One random elementary symplectic matrix for ``J = [[0, -I], [I, 0]]``."""
    mu = 2 * g
    kind = rng.randrange(4)
    m = la.identity(mu)
    i, j = rng.randrange(g), rng.randrange(g)
    c = Fraction(rng.choice([-2, -1, 1, 2, 3]), rng.choice([1, 1, 2]))
    if kind == 0:  # [[I, A], [0, I]] with A symmetric
        m[i][g + j] += c
        if i != j:
            m[j][g + i] += c
    elif kind == 1:  # [[I, 0], [C, I]] with C symmetric
        m[g + i][j] += c
        if i != j:
            m[g + j][i] += c
    elif kind == 2 and i != j:  # [[U, 0], [0, U^-T]] with U elementary
        m[i][j] += c
        m[g + j][g + i] -= c
    else:  # swap e_i, f_i with a sign: [[0, -1], [1, 0]] on that pair
        m[i][i] = Fraction(0)
        m[g + i][g + i] = Fraction(0)
        m[i][g + i] = Fraction(-1)
        m[g + i][i] = Fraction(1)
    return m


def random_symplectic(rng, g, length=6):
    m = la.identity(2 * g)
    for _ in range(length):
        m = la.mat_mul(m, symplectic_generators(rng, g))
    return m


def columns(m):
    return [tuple(c) for c in la.transpose(m)]


def is_symplectic_oracle(m):
    """Independent check with sympy: ``M^T J M == J``."""
    import sympy
    mu = len(m)
    g = mu // 2
    J = sympy.zeros(mu)
    for i in range(g):
        J[i, g + i] = -1
        J[g + i, i] = 1
    M = sympy.Matrix([[sympy.Rational(x.numerator, x.denominator) for x in row] for row in m])
    return M.T * J * M == J


def random_labeled_instance(rng, g):
    """A labeled splitting with a paired block ``t``/``s`` plus an isotropic ``gamma``.

    Returns ``(split, gamma, "t")``; ``gamma`` has independent components in ``s``.
    """
    from stargate.symplectic import Block, LabeledSplitting
    s = random_symplectic(rng, g, length=8)
    cols = columns(s)
    es, fs = cols[:g], cols[g:]
    idx = list(range(g))
    rng.shuffle(idx)
    h = rng.randint(1, g)
    paired, others = idx[:h], idx[h:]
    blocks = [Block("s", tuple(es[i] for i in paired), "t"), Block("t", tuple(fs[i] for i in paired), "s")]
    k = 0
    while k < len(others):
        size = rng.randint(1, len(others) - k)
        group = others[k:k + size]
        k += size
        if rng.random() < 0.5:
            blocks.append(Block(f"b{k}", tuple(es[i] for i in group) + tuple(fs[i] for i in group)))
        else:
            blocks.append(Block(f"p{k}", tuple(es[i] for i in group), f"q{k}"))
            blocks.append(Block(f"q{k}", tuple(fs[i] for i in group), f"p{k}"))
    split = LabeledSplitting(2 * g, tuple(blocks))
    # gamma_j = e_{paired j} + isotropic noise from the e-halves of the other blocks
    gamma = []
    for i in paired:
        v = list(es[i])
        for o in others:
            c = Fraction(rng.randint(-2, 2))
            v = [x + c * y for x, y in zip(v, es[o])]
        gamma.append(tuple(v))
    return split, gamma, "t"
