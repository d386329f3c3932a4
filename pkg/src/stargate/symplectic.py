"""Symplectic linear algebra for period-type matrices.

The ambient space is ``Q^mu`` with the standard matrix
``J = [[0, -I], [I, 0]]``.  A basis ``B`` (given as a list of vectors
``e_1..e_g, f_1..f_g``) is called symplectic when ``B^t J B = J``; the
pairing used for isotropy and duality statements is
``<u, v> = u^t J^{-1} v``, under which such a basis satisfies
``<e_i, f_j> = delta_ij``.
"""

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations_with_replacement

from .errors import ArgumentError, InvariantError, PreconditionError
from .exactnum import linalg as la


def standard_form(mu):
    """``J_mu``."""
    if mu <= 0 or mu % 2:
        raise ArgumentError(f"symplectic dimension must be positive and even, got {mu}")
    g = mu // 2
    j = la.zeros(mu)
    for i in range(g):
        j[i][g + i] = Fraction(-1)
        j[g + i][i] = Fraction(1)
    return j


def pairing(u, v):
    """``u^t J^{-1} v``; with ``J^{-1} = -J`` this is ``sum_i u_i v_{g+i} - u_{g+i} v_i``."""
    g = len(u) // 2
    return sum((u[i] * v[g + i] - u[g + i] * v[i] for i in range(g)), Fraction(0))


def _pairing_row(u):
    """Row vector ``r`` with ``r . x = <u, x>``."""
    g = len(u) // 2
    return [-u[g + i] for i in range(g)] + [u[i] for i in range(g)]


def gram(basis):
    """``B^t J B`` for the matrix whose columns are ``basis``."""
    b = la.transpose([list(v) for v in basis])
    return la.mat_mul(la.mat_mul(la.transpose(b), standard_form(len(basis[0]))), b)


def is_symplectic_basis(basis):
    return len(basis) == len(basis[0]) and gram(basis) == standard_form(len(basis))


def is_isotropic(vectors):
    vectors = [tuple(la.Q(x) for x in v) for v in vectors]
    return all(pairing(u, v) == 0 for i, u in enumerate(vectors) for v in vectors[i + 1:])


# ----------------------------------------------------------- Laurent matrices

def _lp(coeffs):
    return {e: c for e, c in coeffs.items() if c != 0}


def _lp_add(a, b):
    out = dict(a)
    for e, c in b.items():
        out[e] = out.get(e, 0) + c
    return _lp(out)


def _lp_mul(a, b):
    out = {}
    for e1, c1 in a.items():
        for e2, c2 in b.items():
            out[e1 + e2] = out.get(e1 + e2, 0) + c1 * c2
    return _lp(out)


def _lp_scale(a, k):
    return _lp({e: c * k for e, c in a.items()})


@dataclass(frozen=True)
class ScalarMatrix:
    """Square matrix over ``Q[lam, 1/lam]`` for a formal transcendental ``lam``.

    ``entries[i][j]`` is a tuple of ``(exponent, coefficient)`` pairs.  ``lam``
    plays the role of the Tate twist factor, so it is never evaluated.
    """

    entries: tuple

    def __post_init__(self):
        rows = tuple(
            tuple(tuple(sorted(_lp(dict((int(e), la.Q(c)) for e, c in entry)).items()))
                  for entry in row)
            for row in self.entries)
        object.__setattr__(self, "entries", rows)
        if any(len(r) != len(rows) for r in rows):
            raise ArgumentError("ScalarMatrix must be square")

    @classmethod
    def from_rational(cls, matrix, exponent=0):
        return cls(tuple(tuple(((exponent, x),) for x in row) for row in la.matrix(matrix)))

    @property
    def size(self):
        return len(self.entries)

    def dicts(self):
        return [[dict(e) for e in row] for row in self.entries]


def _lmat_mul(a, b):
    n, m, k = len(a), len(b[0]), len(b)
    out = []
    for i in range(n):
        row = []
        for j in range(m):
            acc = {}
            for t in range(k):
                if a[i][t] and b[t][j]:
                    acc = _lp_add(acc, _lp_mul(a[i][t], b[t][j]))
            row.append(acc)
        out.append(row)
    return out


def _lift(matrix, exponent=0):
    return [[_lp({exponent: la.Q(x)}) for x in row] for row in matrix]


def _transpose(a):
    return [list(c) for c in zip(*a)]


def _riemann_product(m, mu):
    if m.size != mu:
        raise ArgumentError(f"matrix has size {m.size}, expected {mu}")
    a = m.dicts()
    return _lmat_mul(_lmat_mul(_transpose(a), _lift(standard_form(mu))), a)


def riemann_check(m, mu, power=0):
    """True when ``M^t J M = lam^power J`` identically in ``lam``."""
    target = _lift(standard_form(mu), power)
    return _riemann_product(m, mu) == target


def riemann_scalar(m, mu):
    """The Laurent polynomial ``c`` with ``M^t J M = c J``, or ``None`` if there is none.

    Returned as a ``{exponent: Fraction}`` dict.
    """
    prod = _riemann_product(m, mu)
    g = mu // 2
    c = _lp_scale(prod[g][0], 1)  # J[g][0] = 1
    expected = [[_lp_scale(c, x) for x in row] for row in standard_form(mu)]
    return c if prod == expected else None


def relative_polarization_check(p, m_b, m_dr, power=1):
    """True when ``P M_B P^t = lam^power M_DR`` with rational form matrices ``M_B``, ``M_DR``."""
    n = p.size
    if len(m_b) != n or len(m_dr) != n:
        raise ArgumentError("form matrices must match the size of P")
    a = p.dicts()
    lhs = _lmat_mul(_lmat_mul(a, _lift(m_b)), _transpose(a))
    return lhs == _lift(m_dr, power)


# ------------------------------------------------------- basis constructions

def _check_isotropic_independent(vectors):
    for i in range(len(vectors)):
        if la.contains(vectors[:i], vectors[i]):
            coords = la.coordinates(vectors[i], vectors[:i]) if i else None
            j = next((k for k, c in enumerate(coords or ()) if c != 0), i)
            raise PreconditionError(f"vector {i} depends on earlier vectors", witness=(j, i))
    for i in range(len(vectors)):
        for j in range(i + 1, len(vectors)):
            if pairing(vectors[i], vectors[j]) != 0:
                raise PreconditionError(f"vectors {i} and {j} are not orthogonal", witness=(i, j))


def _complete(es, fs, mu):
    """Extend a symplectic family (``<e_i, f_j> = delta_ij``, all else 0) to a full symplectic basis."""
    es, fs = list(es), list(fs)
    if es:
        rest = la.nullspace([_pairing_row(u) for u in es + fs])
    else:
        rest = [tuple(r) for r in la.identity(mu)]
    rest = [tuple(v) for v in rest]
    while rest:
        a = rest.pop(0)
        k = next((i for i, v in enumerate(rest) if pairing(a, v) != 0), None)
        if k is None:
            raise PreconditionError("complement is degenerate", witness=a)
        b = rest.pop(k)
        s = pairing(a, b)
        b = tuple(x / s for x in b)
        projected = []
        for v in rest:
            t, s2 = -pairing(a, v), pairing(b, v)
            projected.append(tuple(x + s2 * y + t * z for x, y, z in zip(v, a, b)))
        rest = projected
        es.append(a)
        fs.append(b)
    return es + fs


def extend_isotropic(vectors, mu=None):
    """Symplectic basis ``(e_1..e_g, f_1..f_g)`` of ``Q^mu`` whose first ``e`` vectors are ``vectors``.

    >>> extend_isotropic([(1, 0)])
    [(Fraction(1, 1), Fraction(0, 1)), (Fraction(0, 1), Fraction(1, 1))]
    """
    vectors = [tuple(la.Q(x) for x in v) for v in vectors]
    if mu is None:
        if not vectors:
            raise ArgumentError("ambient dimension needed for an empty family")
        mu = len(vectors[0])
    standard_form(mu)
    if any(len(v) != mu for v in vectors):
        raise ArgumentError("vectors must lie in Q^mu")
    # an independent isotropic family has at most mu/2 members, so no size check is needed
    _check_isotropic_independent(vectors)
    k = len(vectors)
    fs = []
    if k:
        rows = [_pairing_row(e) for e in vectors]
        for j in range(k):
            x = la.solve(rows, [Fraction(int(i == j)) for i in range(k)])
            fs.append(x)
        for j in range(k):
            for i in range(j):
                c = pairing(fs[i], fs[j])
                fs[j] = tuple(x + c * y for x, y in zip(fs[j], vectors[i]))
    basis = [tuple(v) for v in _complete(vectors, fs, mu)]
    if not is_symplectic_basis(basis):
        raise InvariantError("completed basis is not symplectic")
    return basis


@dataclass(frozen=True)
class Block:
    label: str
    basis: tuple
    partner: str = None  # None for a self-paired block


@dataclass(frozen=True)
class LabeledSplitting:
    """Decomposition of ``Q^mu`` into labeled blocks.

    Self-paired blocks are symplectic subspaces; a paired block ``s`` and its
    partner ``s'`` are isotropic and together symplectic; blocks from
    different pairs are mutually orthogonal.
    """

    mu: int
    blocks: tuple

    def __post_init__(self):
        blocks = tuple(Block(b.label, tuple(tuple(la.Q(x) for x in v) for v in b.basis), b.partner)
                       for b in self.blocks)
        object.__setattr__(self, "blocks", blocks)
        problems = self.violations()
        if problems:
            raise PreconditionError(f"invalid labeled splitting: {problems[0]}", witness=problems)

    def block(self, label):
        for b in self.blocks:
            if b.label == label:
                return b
        raise ArgumentError(f"no block labeled {label!r}")

    def violations(self):
        out = []
        standard_form(self.mu)
        labels = [b.label for b in self.blocks]
        if len(set(labels)) != len(labels):
            out.append("duplicate labels")
            return out
        allvec = [v for b in self.blocks for v in b.basis]
        if any(len(v) != self.mu for v in allvec):
            return ["block vectors have the wrong length"]
        if len(allvec) != self.mu or la.rank(allvec) != self.mu:
            out.append("blocks do not form a direct sum decomposition of the space")
        by_label = {b.label: b for b in self.blocks}
        for b in self.blocks:
            if b.partner is None:
                if la.determinant(_restricted_gram(b.basis)) == 0:
                    out.append(f"self-paired block {b.label} is not symplectic")
                continue
            other = by_label.get(b.partner)
            if other is None or other.partner != b.label:
                out.append(f"block {b.label} names partner {b.partner} which does not pair back")
                continue
            if not is_isotropic(b.basis):
                out.append(f"paired block {b.label} is not isotropic")
            if len(b.basis) != len(other.basis) or la.determinant(
                    _restricted_gram(b.basis + other.basis)) == 0:
                out.append(f"blocks {b.label} and {b.partner} do not form a symplectic pair")
        for i, b in enumerate(self.blocks):
            for c in self.blocks[i + 1:]:
                if b.partner == c.label:
                    continue
                for u in b.basis:
                    for v in c.basis:
                        if pairing(u, v) != 0:
                            out.append(f"blocks {b.label} and {c.label} are not orthogonal")
                            break
                    else:
                        continue
                    break
        return out

    def components(self, v):
        """``{label: component of v in that block}``."""
        allvec = [u for b in self.blocks for u in b.basis]
        coords = la.coordinates(v, allvec)
        out, pos = {}, 0
        for b in self.blocks:
            comp = [Fraction(0)] * self.mu
            for u in b.basis:
                c = coords[pos]
                pos += 1
                if c:
                    comp = [x + c * y for x, y in zip(comp, u)]
            out[b.label] = tuple(comp)
        return out


def _restricted_gram(vectors):
    return [[pairing(u, v) for v in vectors] for u in vectors]


def _dual_in(targets, block_basis):
    """Vectors ``f_j`` in the span of ``block_basis`` with ``<targets_i, f_j> = delta_ij``."""
    k = len(targets)
    system = [[pairing(t, b) for b in block_basis] for t in targets]
    out = []
    for j in range(k):
        c = la.solve(system, [Fraction(int(i == j)) for i in range(k)])
        if c is None:
            raise PreconditionError("pairing between blocks is degenerate", witness=j)
        vec = [Fraction(0)] * len(targets[0])
        for coeff, b in zip(c, block_basis):
            vec = [x + coeff * y for x, y in zip(vec, b)]
        out.append(tuple(vec))
    return out


@dataclass(frozen=True)
class LabeledBasis:
    """Symplectic basis with, for each vector, the block label it lies in (``None`` if mixed)."""

    vectors: tuple
    labels: tuple


def _label_of(split, v):
    comps = split.components(v)
    nonzero = [lab for lab, c in comps.items() if any(c)]
    return nonzero[0] if len(nonzero) == 1 else None


def labeled_basis(split, gamma, tau):
    """Symplectic basis with ``e_j = gamma_j`` and ``f_j`` in the block ``tau`` for ``j <= h``.

    ``tau`` must be a paired block of dimension ``h = len(gamma)``.  The
    components of ``gamma`` in the partner block must be independent;
    otherwise a linear relation exists instead and a
    :class:`PreconditionError` is raised.
    """
    gamma = [tuple(la.Q(x) for x in v) for v in gamma]
    h = len(gamma)
    block = split.block(tau)
    if block.partner is None:
        raise ArgumentError(f"block {tau} is self-paired")
    if len(block.basis) != h:
        raise ArgumentError(f"block {tau} has dimension {len(block.basis)}, expected {h}")
    if not is_isotropic(gamma):
        raise PreconditionError("gamma is not isotropic", witness=_bad_pair(gamma))
    partner = block.partner
    comps = [split.components(v)[partner] for v in gamma]
    if la.rank(comps) < h:
        raise PreconditionError(
            f"components of gamma in block {partner} are dependent (linear relation case)",
            witness=comps)
    fs = _dual_in(comps, list(block.basis))
    out = [tuple(v) for v in _complete(gamma, fs, split.mu)]
    if not is_symplectic_basis(out):
        raise InvariantError("labeled basis is not symplectic")
    return LabeledBasis(vectors=tuple(out), labels=tuple(_label_of(split, v) for v in out))


def _bad_pair(vectors):
    for i, u in enumerate(vectors):
        for j in range(i + 1, len(vectors)):
            if pairing(u, vectors[j]) != 0:
                return (i, j)
    return None


def block_lagrangian_basis(split, tau):
    """Symplectic basis assembled block by block, with the ``tau`` block feeding ``f_1..f_h``.

    The ``e`` vectors span a Lagrangian made of: a Lagrangian half of every
    self-paired block, the whole partner block of ``tau``, and one chosen
    block from every other pair.  Every basis vector lies in a single block.
    """
    block = split.block(tau)
    if block.partner is None:
        raise ArgumentError(f"block {tau} is self-paired")
    es, fs = [], []
    partner = split.block(block.partner)
    es.extend(partner.basis)
    fs.extend(_dual_in(list(partner.basis), list(block.basis)))
    done = {tau, block.partner}
    for b in split.blocks:
        if b.label in done:
            continue
        done.add(b.label)
        if b.partner is None:
            local = _symplectic_basis_of(list(b.basis))
            half = len(local) // 2
            es.extend(local[:half])
            fs.extend(local[half:])
        else:
            other = split.block(b.partner)
            done.add(other.label)
            es.extend(b.basis)
            fs.extend(_dual_in(list(b.basis), list(other.basis)))
    out = [tuple(v) for v in es + fs]
    if not is_symplectic_basis(out):
        raise InvariantError("block Lagrangian basis is not symplectic")
    return LabeledBasis(vectors=tuple(out), labels=tuple(_label_of(split, v) for v in out))


def _symplectic_basis_of(vectors):
    """Symplectic Gram-Schmidt inside a symplectic subspace; returns ``es + fs``."""
    rest = list(vectors)
    es, fs = [], []
    while rest:
        a = rest.pop(0)
        k = next(i for i, v in enumerate(rest) if pairing(a, v) != 0)
        b = rest.pop(k)
        s = pairing(a, b)
        b = tuple(x / s for x in b)
        rest = [tuple(x + pairing(b, v) * y - pairing(a, v) * z for x, y, z in zip(v, a, b))
                for v in rest]
        es.append(a)
        fs.append(b)
    return es + fs


# ------------------------------------------------------ quadratic relations

@dataclass(frozen=True)
class QuadraticRelation:
    """Polynomial in the entries ``x[a, j]`` (row ``a`` in 1..mu, column ``j`` in 1..h).

    ``terms`` maps a sorted tuple of variables (one or two ``(a, j)`` pairs)
    to a rational coefficient.
    """

    terms: tuple

    def __post_init__(self):
        merged = {}
        for mono, c in self.terms:
            key = tuple(sorted(tuple(int(x) for x in v) for v in mono))
            merged[key] = merged.get(key, 0) + la.Q(c)
        object.__setattr__(self, "terms", tuple(sorted((m, c) for m, c in merged.items() if c != 0)))

    @property
    def is_zero(self):
        return not self.terms

    def degrees(self):
        return {len(m) for m, _ in self.terms}

    def to_json(self):
        return [{"vars": [list(v) for v in m], "coeff": str(c)} for m, c in self.terms]

    @classmethod
    def from_json(cls, data):
        return cls(tuple((tuple(tuple(v) for v in t["vars"]), Fraction(t["coeff"])) for t in data))


@dataclass(frozen=True)
class Generator:
    i: int
    j: int
    relation: QuadraticRelation

    @property
    def is_zero(self):
        return self.relation.is_zero


def _check_shape(mu, h):
    standard_form(mu)
    if not 1 <= h <= mu // 2:
        raise ArgumentError(f"need 1 <= h <= mu/2, got h = {h}")


def bilinear_relation(mu, i, j):
    """``b_i^t J b_j`` in the entries of columns ``i`` and ``j``."""
    jm = standard_form(mu)
    terms = []
    for a in range(mu):
        for c in range(mu):
            if jm[a][c]:
                terms.append((((a + 1, i), (c + 1, j)), jm[a][c]))
    return QuadraticRelation(tuple(terms))


def trivial_ideal_generators(mu, h):
    _check_shape(mu, h)
    return [Generator(i, j, bilinear_relation(mu, i, j))
            for i in range(1, h + 1) for j in range(i, h + 1)]


def _quadratic_monomials(mu, h):
    variables = [(a, j) for a in range(1, mu + 1) for j in range(1, h + 1)]
    return [tuple(sorted(p)) for p in combinations_with_replacement(variables, 2)]


def _coefficient_vector(rel, index):
    v = [Fraction(0)] * len(index)
    for m, c in rel.terms:
        v[index[m]] = c
    return v


def is_trivial_relation(rel, mu, h):
    """Whether ``rel`` lies in the ideal generated by ``b_i^t J b_j`` (degrees 1 and 2)."""
    _check_shape(mu, h)
    if rel.is_zero:
        return True
    degrees = rel.degrees()
    if len(degrees) != 1:
        raise ArgumentError("relation is not homogeneous")
    if not degrees <= {1, 2}:
        raise ArgumentError("only relations of degree 1 or 2 are supported")
    for m, _ in rel.terms:
        for a, j in m:
            if not (1 <= a <= mu and 1 <= j <= h):
                raise ArgumentError(f"variable x[{a},{j}] outside the {mu}x{h} matrix")
    if degrees == {1}:
        return False
    monomials = _quadratic_monomials(mu, h)
    index = {m: k for k, m in enumerate(monomials)}
    gens = [_coefficient_vector(g.relation, index)
            for g in trivial_ideal_generators(mu, h) if not g.is_zero]
    return la.contains(la.span(gens), _coefficient_vector(rel, index)) if gens else False
