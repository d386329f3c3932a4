"""Nilpotent operators and their weight monodromy filtrations.

The filtration of a nilpotent ``N`` centered at ``n`` is built from the
kernel/image formula

    W_{n+i} = sum_{j >= max(-i, 0)} ker N^{i+j+1} ∩ im N^j

and then checked against its two defining properties (``N W_i ⊆ W_{i-2}``
and ``N^i : gr_{n+i} -> gr_{n-i}`` bijective).  Any disagreement is an
:class:`~stargate.errors.InvariantError`.
"""

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction

from .errors import ArgumentError, InvariantError, PreconditionError
from .exactnum import linalg as la

MAX_TORUS_SIZE = 8


@dataclass(frozen=True)
class FiltrationProfile:
    """Graded dimensions ``h_0 .. h_{2n}`` of a weight filtration centered at ``n``.

    Construction checks length, signs and symmetry.  Whether a nilpotent
    operator can actually produce the profile (all block counts
    non-negative) is exposed as :attr:`realizable`; checkers accept
    non-realizable profiles so that they can explain why one is excluded.
    """

    n: int
    dims: tuple

    def __post_init__(self):
        dims = tuple(int(h) for h in self.dims)
        object.__setattr__(self, "dims", dims)
        if self.n < 0:
            raise ArgumentError("center n must be non-negative")
        if len(dims) != 2 * self.n + 1:
            raise ArgumentError(f"expected {2 * self.n + 1} graded dimensions, got {len(dims)}")
        if any(h < 0 for h in dims):
            raise ArgumentError("graded dimensions must be non-negative")
        if dims != dims[::-1]:
            raise ArgumentError(f"profile {list(dims)} is not symmetric about {self.n}")

    @property
    def mu(self):
        return sum(self.dims)

    @property
    def h(self):
        return self.dims[0]

    @property
    def h_max(self):
        return max(self.dims)

    def h_at(self, i):
        return self.dims[i] if 0 <= i < len(self.dims) else 0

    def block_counts(self):
        """``{k: number of Jordan blocks of size k}`` for ``1 <= k <= n+1``."""
        n = self.n
        return {k: self.h_at(n + k - 1) - self.h_at(n + k + 1) for k in range(1, n + 2)}

    @property
    def realizable(self):
        return all(b >= 0 for b in self.block_counts().values())

    @property
    def positive_dims(self):
        return tuple(h for h in self.dims if h > 0)

    def to_json(self):
        return {"n": self.n, "dims": list(self.dims)}

    @classmethod
    def from_json(cls, data):
        return cls(int(data["n"]), tuple(data["dims"]))


@dataclass(frozen=True)
class NilpotentOperator:
    matrix: tuple

    def __post_init__(self):
        m = tuple(tuple(la.Q(x) for x in row) for row in self.matrix)
        object.__setattr__(self, "matrix", m)
        if any(len(row) != len(m) for row in m):
            raise ArgumentError("operator matrix must be square")
        if m and not la.is_zero(la.mat_pow([list(r) for r in m], len(m))):
            raise ArgumentError("matrix is not nilpotent")

    @property
    def size(self):
        return len(self.matrix)

    def rows(self):
        return [list(r) for r in self.matrix]

    def power(self, k):
        return la.mat_pow(self.rows(), k)

    @property
    def rank(self):
        return la.rank(self.rows())

    def nilpotency_degree(self):
        """Least ``k`` with ``N^k = 0``."""
        k, p = 0, la.identity(self.size)
        while not la.is_zero(p):
            p = la.mat_mul(p, self.rows())
            k += 1
        return k

    def jordan_type(self):
        """Block sizes, descending, from the ranks of successive powers."""
        mu = self.size
        ranks = [mu]
        p = la.identity(mu)
        while ranks[-1] > 0:
            p = la.mat_mul(p, self.rows())
            ranks.append(la.rank(p))
        blocks = []
        for k in range(1, len(ranks)):
            # number of blocks of size >= k is rank N^{k-1} - rank N^k
            at_least = ranks[k - 1] - ranks[k]
            at_least_next = ranks[k] - ranks[k + 1] if k + 1 < len(ranks) else 0
            blocks.extend([k] * (at_least - at_least_next))
        return tuple(sorted(blocks, reverse=True))


def jordan_block_matrix(sizes):
    """Nilpotent matrix in Jordan form with blocks of the given sizes (``N e_{i+1} = e_i``)."""
    mu = sum(sizes)
    m = la.zeros(mu)
    start = 0
    for size in sizes:
        for i in range(start, start + size - 1):
            m[i][i + 1] = Fraction(1)
        start += size
    return m


@dataclass(frozen=True)
class WeightFiltration:
    n: int
    subspaces: tuple  # W_0 .. W_{2n}, each a tuple of RREF basis vectors
    profile: FiltrationProfile


def weight_filtration(op, n):
    """Weight monodromy filtration of ``op`` centered at ``n``.

    >>> weight_filtration(NilpotentOperator(((0, 1), (0, 0))), 1).profile.dims
    (1, 0, 1)
    """
    mu = op.size
    if op.nilpotency_degree() > n + 1:
        raise PreconditionError(
            f"nilpotency degree {op.nilpotency_degree()} exceeds n+1 = {n + 1}",
            witness=op.nilpotency_degree(),
        )
    top = 2 * n + 2
    powers = [la.identity(mu)]
    for _ in range(top):
        powers.append(la.mat_mul(powers[-1], op.rows()))
    kernels = [la.kernel(p) if not la.is_zero(p) else la.span(la.identity(mu)) for p in powers]
    images = [la.column_space(p) for p in powers]
    chain = []
    for i in range(-n, n + 1):
        w = []
        for j in range(max(-i, 0), top):
            if i + j + 1 > top:
                break
            piece = la.intersect(kernels[i + j + 1], images[j], mu)
            w = la.subspace_sum(w, piece)
        chain.append(tuple(w))
    dims = []
    prev = 0
    for w in chain:
        dims.append(len(w) - prev)
        prev = len(w)
    filt = WeightFiltration(n=n, subspaces=tuple(chain), profile=FiltrationProfile(n, tuple(dims)))
    failures = check_filtration_axioms(op, filt.subspaces, n)
    if failures:
        raise InvariantError(f"computed filtration violates its axioms: {failures}")
    return filt


def check_filtration_axioms(op, chain, n):
    """List of violated properties for a candidate chain ``W_0 .. W_{2n}`` (empty = valid)."""
    mu = op.size
    failures = []
    if len(chain) != 2 * n + 1:
        return ["wrong chain length"]
    if len(chain[-1]) != mu:
        failures.append("W_2n is not the whole space")
    for i in range(1, len(chain)):
        if not la.is_subspace(chain[i - 1], chain[i]):
            failures.append(f"W_{i - 1} not contained in W_{i}")
    n_rows = op.rows()
    for i, w in enumerate(chain):
        target = chain[i - 2] if i >= 2 else ()
        if not la.is_subspace(la.image(n_rows, w), target):
            failures.append(f"N W_{i} not contained in W_{i - 2}")
    for i in range(1, n + 1):
        hi, lo = n + i, n - i
        below_hi = chain[hi - 1]
        below_lo = chain[lo - 1] if lo >= 1 else ()
        dim_hi = len(chain[hi]) - len(below_hi)
        dim_lo = len(chain[lo]) - len(below_lo)
        if dim_hi != dim_lo:
            failures.append(f"dim gr_{hi} != dim gr_{lo}")
            continue
        complement = _complement(chain[hi], below_hi)
        ni = op.power(i)
        images = [la.mat_vec(ni, v) for v in complement]
        if la.rank(list(below_lo) + images) != len(below_lo) + len(images) if images or below_lo else False:
            failures.append(f"N^{i} is not injective on gr_{hi}")
        elif not la.is_subspace(images, chain[lo]):
            failures.append(f"N^{i} gr_{hi} not in gr_{lo}")
    return failures


def _complement(big, small):
    """Vectors of ``big`` completing a basis of ``small`` to one of ``big``."""
    out = []
    current = list(small)
    for v in big:
        if not la.contains(current, v):
            out.append(v)
            current.append(v)
    return out


def profile(op, n):
    return weight_filtration(op, n).profile


def profile_invariance_check(op, p, a, n):
    """True when ``op`` and ``a * P op P^-1`` have the same graded dimensions."""
    a = la.Q(a)
    if a == 0:
        raise ArgumentError("scalar must be nonzero")
    p = la.matrix(p)
    p_inv = la.inverse(p)
    conj = la.mat_scale(la.mat_mul(la.mat_mul(p, op.rows()), p_inv), a)
    return profile(op, n) == profile(NilpotentOperator(tuple(map(tuple, conj))), n)


def nilpotent_reduce(op):
    """Reduce a strictly upper triangular ``N`` to ``Q_L N Q_R`` with one entry per row/column.

    Returns ``(Q_L, Q_R, N_red)``; both ``Q`` are unipotent upper triangular.
    The pivot is always the lowest remaining nonzero row, leftmost entry:
    rows above it are cleared by adding multiples of the pivot row (row ops
    from below) and entries right of it by adding multiples of the pivot
    column (column ops from the left), which keeps every matrix upper
    triangular.
    """
    mu = op.size
    m = op.rows()
    for i in range(mu):
        for j in range(i + 1):
            if m[i][j] != 0:
                raise PreconditionError(
                    "operator is not strictly upper triangular", witness=(i, j))
    q_left = la.identity(mu)
    q_right = la.identity(mu)
    done_rows, done_cols = set(), set()
    while True:
        pivot = None
        for i in reversed(range(mu)):
            if i in done_rows:
                continue
            cols = [j for j in range(mu) if j not in done_cols and m[i][j] != 0]
            if cols:
                pivot = (i, cols[0])
                break
        if pivot is None:
            break
        pi, pj = pivot
        for r in range(pi):
            if m[r][pj] != 0:
                k = m[r][pj] / m[pi][pj]
                m[r] = [x - k * y for x, y in zip(m[r], m[pi])]
                q_left[r] = [x - k * y for x, y in zip(q_left[r], q_left[pi])]
        for c in range(pj + 1, mu):
            if m[pi][c] != 0:
                k = m[pi][c] / m[pi][pj]
                for r in range(mu):
                    m[r][c] -= k * m[r][pj]
                    q_right[r][c] -= k * q_right[r][pj]
        done_rows.add(pi)
        done_cols.add(pj)
    return q_left, q_right, m


@dataclass(frozen=True)
class TorusBound:
    bound: int
    centralizer_torus_dim: int
    centralizer_dim: int
    ok: bool


def torus_bound_check(op):
    """Compare the maximal-torus dimension of ``GL(V)^N`` with ``mu - rank N``.

    The centralizer of ``N`` is ``prod_k GL_{m_k}`` times a unipotent group,
    ``m_k`` being the number of Jordan blocks of size ``k``; its maximal tori
    therefore have dimension ``sum_k m_k``.  ``centralizer_dim`` is the
    dimension of the commutant algebra, computed by solving ``XN = NX``.
    """
    mu = op.size
    if mu > MAX_TORUS_SIZE:
        raise PreconditionError(f"size {mu} exceeds {MAX_TORUS_SIZE}", witness=mu)
    blocks = Counter(op.jordan_type())
    torus_dim = sum(blocks.values())
    bound = mu - op.rank
    n_rows = op.rows()
    # X N - N X = 0 as a linear system in the mu^2 entries of X
    system = []
    for i in range(mu):
        for j in range(mu):
            row = [Fraction(0)] * (mu * mu)
            for k in range(mu):
                row[i * mu + k] += n_rows[k][j]
                row[k * mu + j] -= n_rows[i][k]
            system.append(row)
    centralizer_dim = mu * mu - la.rank(system) if mu else 0
    return TorusBound(bound=bound, centralizer_torus_dim=torus_dim,
                      centralizer_dim=centralizer_dim, ok=torus_dim <= bound)


def dim_im_from_profile(prof):
    """``dim im N`` for any ``N`` realizing ``prof``: ``mu`` minus the number of Jordan blocks."""
    if not prof.realizable:
        raise ArgumentError(f"profile {list(prof.dims)} is not realized by any nilpotent operator")
    return prof.mu - prof.h_at(prof.n) - prof.h_at(prof.n + 1)
