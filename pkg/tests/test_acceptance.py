"""Acceptance criteria 1-12; each test records one PASS/FAIL line printed at the end of the run.

Tolerances are pinned here: Hasse bound values to 1e-9 and 1e-10, all
other comparisons exact.
"""

import math
import time
from collections import Counter
from fractions import Fraction
from itertools import product
from random import Random

import pytest
import sympy

from helpers import (RESULTS, columns, is_symplectic_oracle, partitions, random_invertible,
                     random_labeled_instance, random_nilpotent, random_strictly_upper,
                     random_symplectic)
from stargate.albert import AlbertDescriptor, HodgeAlgebra, Summand, is_cm_point
from stargate.exactnum import linalg as la
from stargate.exactnum import poly
from stargate.exactnum.numberfield import NumberField, real_embedding_count, splitting_type
from stargate.exactnum.primes import primes_up_to
from stargate.example import ALTERNATIVE_PROFILE, example_point
from stargate.fieldforge import forge, gaussian_period_field
from stargate.filtration import (FiltrationProfile, NilpotentOperator, check_filtration_axioms,
                                 jordan_block_matrix, nilpotent_reduce, profile_invariance_check,
                                 torus_bound_check, weight_filtration)
from stargate.gseries import (HeightBoundInput, TruncatedSeries, degree_inflation_bound,
                              g_series_candidate, hasse_height_bound)
from stargate.starcheck import (PointDescriptor, check_star1, check_star4, remedy_conditions,
                                sigma_membership)
from stargate.symplectic import (ScalarMatrix, extend_isotropic, gram, is_trivial_relation,
                                 labeled_basis, riemann_check, standard_form, trivial_ideal_generators,
                                 QuadraticRelation)

HASSE_TOL = 1e-9
HASSE_STRONG_TOL = 1e-10



@pytest.fixture
def criterion(request):
    """Record PASS/FAIL for the criterion numbered in the test name."""
    number = int(request.node.name.split("_")[1])
    notes = []
    yield notes
    failed = request.node.rep_call.failed if hasattr(request.node, "rep_call") else True
    RESULTS[number] = ("FAIL" if failed else "PASS", "; ".join(notes))


def profile_from_jordan(jt, n):
    """Oracle: a block of size k contributes weights n-k+1, n-k+3, ..., n+k-1."""
    dims = [0] * (2 * n + 1)
    for k in jt:
        for w in range(n - k + 1, n + k, 2):
            dims[w] += 1
    return tuple(dims)


# ------------------------------------------------------------------ 1

def test_01_example_point_membership(criterion):
    start = time.perf_counter()
    member = sigma_membership(example_point())
    star4 = member.report.verdicts[4]
    alt = check_star4(example_point(ALTERNATIVE_PROFILE))
    elapsed = time.perf_counter() - start
    assert member.member
    assert star4.holds and len(star4.witnesses[0]) == 2
    assert not alt.holds and alt.status == "false"
    assert elapsed < 1.0
    criterion.append(f"R = {list(star4.witnesses[0])}, alternative profile star4 {alt.status}, {elapsed:.2f}s")


# ------------------------------------------------------------------ 2

def _f2_subspaces(mu):
    """All subspaces of F_2^mu as frozensets of bitmask vectors."""
    vectors = list(range(1 << mu))
    found = {frozenset([0])}
    frontier = [frozenset([0])]
    while frontier:
        nxt = []
        for s in frontier:
            for v in vectors:
                if v in s:
                    continue
                t = frozenset(s | {x ^ v for x in s})
                if t not in found:
                    found.add(t)
                    nxt.append(t)
        frontier = nxt
    return sorted(found, key=lambda s: (len(s), sorted(s)))


def _f2_apply(rows, v, mu):
    out = 0
    for i in range(mu):
        bit = 0
        for j in range(mu):
            if rows[i][j] % 2 and (v >> j) & 1:
                bit ^= 1
        out |= bit << i
    return out


def _f2_span(vecs):
    s = {0}
    for v in vecs:
        s |= {x ^ v for x in s}
    return frozenset(s)


def _exhaustive_filtrations(jt, n):
    """Every chain W_0 ⊆ ... ⊆ W_2n of F_2^mu satisfying both filtration axioms for J(jt)."""
    mu = sum(jt)
    rows = jordan_block_matrix(jt)
    subs = _f2_subspaces(mu)
    full = frozenset(range(1 << mu))
    image = {s: _f2_span(_f2_apply(rows, v, mu) for v in s) for s in subs}

    def power_image(s, i):
        for _ in range(i):
            s = image[s]
        return s

    out = []

    def extend(chain):
        k = len(chain)
        if k == 2 * n + 1:
            if chain[-1] != full:
                return
            for i in range(1, n + 1):
                hi, lo = chain[n + i], chain[n - i]
                below_lo = chain[n - i - 1] if n - i >= 1 else frozenset([0])
                if len(hi) // len(chain[n + i - 1]) != len(lo) // len(below_lo):
                    return
                if _f2_span(list(power_image(hi, i)) + list(below_lo)) != lo:
                    return
            out.append(tuple(chain))
            return
        prev = chain[-1] if chain else frozenset([0])
        target = chain[k - 2] if k >= 2 else frozenset([0])
        for s in subs:
            if prev <= s and image[s] <= target:
                extend(chain + [s])

    extend([])
    return out


def _rational_chain_mod2(filt, mu):
    return tuple(_f2_span(sum(int(x) % 2 << j for j, x in enumerate(v)) for v in w) for w in filt.subspaces)


def test_02_filtration_axioms_and_uniqueness(criterion):
    start = time.perf_counter()
    rng = Random(2)
    for _ in range(200):
        mu = rng.randint(1, 8)
        m, jt = random_nilpotent(rng, mu)
        op = NilpotentOperator(tuple(map(tuple, m)))
        n = max(jt) - 1 + rng.randint(0, 1)
        wf = weight_filtration(op, n)
        assert check_filtration_axioms(op, wf.subspaces, n) == []
        assert wf.profile.dims == profile_from_jordan(jt, n)
    checked = 0
    for mu in range(1, 5):
        for jt in partitions(mu):
            n = max(jt) - 1
            chains = _exhaustive_filtrations(jt, n)
            ours = weight_filtration(NilpotentOperator(tuple(map(tuple, jordan_block_matrix(jt)))), n)
            assert chains == [_rational_chain_mod2(ours, mu)], jt
            checked += 1
    elapsed = time.perf_counter() - start
    assert elapsed < 30
    criterion.append(f"200 random operators, {checked} Jordan types unique over F_2, {elapsed:.1f}s")


# ------------------------------------------------------------------ 3

def test_03_profile_invariance(criterion):
    rng = Random(3)
    bases = [jt for mu in range(1, 5) for jt in partitions(mu)]
    total = 0
    for jt in bases:
        op = NilpotentOperator(tuple(map(tuple, jordan_block_matrix(jt))))
        n = max(jt) - 1
        for _ in range(100):
            p = random_invertible(rng, op.size)
            a = Fraction(rng.choice([-3, -2, -1, 1, 2, 5]), rng.choice([1, 2, 3]))
            assert profile_invariance_check(op, p, a, n)
            total += 1
    criterion.append(f"{total} conjugations over {len(bases)} base operators")


# ------------------------------------------------------------------ 4

def _centralizer_dim_oracle(jt):
    # sum of squares of the conjugate partition
    conj = [sum(1 for k in jt if k > i) for i in range(max(jt))]
    return sum(c * c for c in conj)


def test_04_torus_bound(criterion):
    count = 0
    for mu in range(1, 7):
        for jt in partitions(mu):
            op = NilpotentOperator(tuple(map(tuple, jordan_block_matrix(jt))))
            tb = torus_bound_check(op)
            assert tb.centralizer_torus_dim == len(jt) == mu - op.rank == tb.bound
            assert tb.ok
            assert tb.centralizer_dim == _centralizer_dim_oracle(jt)
            count += 1
    criterion.append(f"equality on all {count} Jordan types with mu <= 6")


# ------------------------------------------------------------------ 5

def test_05_nilpotent_reduce(criterion):
    rng = Random(5)
    for _ in range(100):
        mu = rng.randint(1, 8)
        m = random_strictly_upper(rng, mu, density=rng.choice([0.3, 0.6, 0.9]))
        op = NilpotentOperator(tuple(map(tuple, m)))
        ql, qr, red = nilpotent_reduce(op)
        assert la.mat_mul(la.mat_mul(ql, m), qr) == red
        for q in (ql, qr):
            assert all(q[i][i] == 1 and all(q[i][j] == 0 for j in range(i)) for i in range(mu))
        nz = [(i, j) for i in range(mu) for j in range(mu) if red[i][j] != 0]
        assert len({i for i, _ in nz}) == len(nz) == len({j for _, j in nz})
        assert len(nz) == sympy.Matrix(m).rank()
    criterion.append("100 strictly upper triangular operators")


# ------------------------------------------------------------------ 6

CORPUS = [
    (-2, 0, 1), (1, 0, 1), (-1, 1, 1), (1, 1, 1), (3, 1, 1), (-5, 0, 1),
    (-1, -2, 1, 1), (-2, 0, 0, 1), (1, -1, 0, 1), (5, 0, 0, 1),
    (1, 1, 1, 1, 1), (11, 2, 3, 2, 1), (2, 0, 0, 0, 1), (1, 0, -10, 0, 1),
    (-2, 0, 0, 0, 0, 1), (-1, -1, 0, 0, 0, 1), (3, -3, 0, 0, 0, 1), (-1, 3, -4, 1, 1, 1),
]


def _brute_factor(f, l):
    """Factor ``f`` mod ``l`` by repeated trial division (degree <= 5 needs divisors of degree <= 2)."""
    f = [c % l for c in f]
    out = Counter()
    while len(poly.trim(f)) > 1:
        f = poly.trim(f)
        found = None
        for r in range(l):
            if sum(c * pow(r, i, l) for i, c in enumerate(f)) % l == 0:
                found = [(-r) % l, 1]
                break
        if found is None and len(f) - 1 >= 4:
            for b, c in product(range(l), repeat=2):
                q, rem = _divmod_monic(f, [c, b, 1], l)
                if not any(rem):
                    found = [c, b, 1]
                    break
        if found is None:
            inv = pow(f[-1], -1, l)
            out[tuple(x * inv % l for x in f)] += 1
            break
        q, _ = _divmod_monic(f, found, l)
        out[tuple(found)] += 1
        f = q
    return out


def _divmod_monic(a, b, l):
    a = list(a)
    q = [0] * max(len(a) - len(b) + 1, 1)
    for i in range(len(a) - len(b), -1, -1):
        c = a[i + len(b) - 1] % l
        q[i] = c
        for j, y in enumerate(b):
            a[i + j] = (a[i + j] - c * y) % l
    return q, a[:len(b) - 1]


def test_06_splitting_oracle(criterion):
    checks = 0
    for f in CORPUS:
        field = NumberField(f)
        for l in primes_up_to(100):
            st = splitting_type(field, l)
            expected = _brute_factor(list(f), l)
            got = Counter()
            for w in st.places:
                got[tuple(x % l for x in w.factor)] += w.ramification_index
            assert got == expected, (f, l)
            assert sum(w.residue_degree * w.ramification_index for w in st.places) == field.degree
            assert st.certified == (poly.discriminant(list(f)) % l != 0)
            if st.certified:
                assert all(w.ramification_index == 1 for w in st.places)
            checks += 1
    criterion.append(f"{len(CORPUS)} fields x 25 primes = {checks} splittings")


# ------------------------------------------------------------------ 7

PERTURBATIONS = (Fraction(1), Fraction(-1), Fraction(1, 2), Fraction(3))


def test_07_symplectic_suite(criterion):
    rng = Random(7)
    for _ in range(100):
        g = rng.randint(1, 6)
        s = random_symplectic(rng, g)
        cols = columns(s)
        k = rng.randint(0, g)
        chosen = rng.sample(range(g), k)
        vectors = []
        for i in chosen:
            v = list(cols[i])
            for o in range(g):
                if o not in chosen:
                    c = Fraction(rng.randint(-2, 2))
                    v = [x + c * y for x, y in zip(v, cols[o])]
            vectors.append(tuple(v))
        basis = extend_isotropic(vectors, 2 * g)
        assert gram(basis) == standard_form(2 * g)
        assert basis[:k] == vectors
    for _ in range(100):
        g = rng.randint(1, 6)
        split, gamma, tau = random_labeled_instance(rng, g)
        lb = labeled_basis(split, gamma, tau)
        assert gram(list(lb.vectors)) == standard_form(2 * g)
        assert list(lb.vectors[:len(gamma)]) == gamma
        assert all(lab == tau for lab in lb.labels[g:g + len(gamma)])
    rejected = exceptional = 0
    for _ in range(100):
        g = rng.randint(1, 6)
        m = random_symplectic(rng, g)
        assert ScalarMatrix.from_rational(m).size == 2 * g
        assert riemann_check(ScalarMatrix.from_rational(m), 2 * g)
        a, b = rng.randrange(2 * g), rng.randrange(2 * g)
        delta = rng.choice(PERTURBATIONS)
        bad = [row[:] for row in m]
        bad[a][b] += delta
        ours = riemann_check(ScalarMatrix.from_rational(bad), 2 * g)
        # the perturbation keeps M symplectic exactly when row a +- g of M is a multiple of e_b
        partner = bad[(a + g) % (2 * g)]
        preserved = all(x == 0 for j, x in enumerate(partner) if j != b)
        assert ours == is_symplectic_oracle(bad) == preserved
        if preserved:
            exceptional += 1
        else:
            rejected += 1
    criterion.append(f"100 + 100 bases with Gram J; {rejected} perturbations rejected, "
                     f"{exceptional} symplectic shears correctly accepted")


# ------------------------------------------------------------------ 8

def test_08_trivial_relation_ideal(criterion):
    rng = Random(8)
    accepted = 0
    for mu in (2, 4, 6):
        for h in range(1, mu // 2 + 1):
            for gen in trivial_ideal_generators(mu, h):
                assert is_trivial_relation(gen.relation, mu, h)
                accepted += 1
    mu, h = 6, 3
    gens = [gn.relation for gn in trivial_ideal_generators(mu, h) if not gn.is_zero]
    variables = [(a, j) for a in range(1, mu + 1) for j in range(1, h + 1)]
    monos = sorted({tuple(sorted((u, v))) for u in variables for v in variables})
    index = {m: i for i, m in enumerate(monos)}

    def vec(rel):
        out = [0] * len(monos)
        for m, c in rel.terms:
            out[index[m]] = sympy.Rational(c.numerator, c.denominator)
        return out

    base = sympy.Matrix([vec(r) for r in gens])
    base_rank = base.rank()
    rejected = combos = 0
    while rejected < 50:
        terms = []
        if rng.random() < 0.3:
            for gen in gens:
                c = rng.randint(-2, 2)
                terms.extend((m, c * k) for m, k in gen.terms)
        else:
            for _ in range(rng.randint(1, 4)):
                terms.append(((rng.choice(variables), rng.choice(variables)), rng.randint(-3, 3) or 1))
        rel = QuadraticRelation(tuple(terms))
        if rel.is_zero:
            continue
        outside = base.col_join(sympy.Matrix([vec(rel)])).rank() > base_rank
        assert is_trivial_relation(rel, mu, h) == (not outside)
        if outside:
            rejected += 1
        else:
            combos += 1
    criterion.append(f"{accepted} generators accepted, {combos} combinations accepted, "
                     f"50 outside forms rejected (span rank {base_rank})")


# ------------------------------------------------------------------ 9

def _binomial_half(order):
    # (1 - x)^(-1/2) = sum C(2n, n) / 4^n x^n
    return [Fraction(math.comb(2 * n, n), 4 ** n) for n in range(order + 1)]


def test_09_gseries_diagnostics(criterion):
    n = 40
    geo = TruncatedSeries([1] * (n + 1))
    log = TruncatedSeries([0] + [Fraction((-1) ** (k + 1), k) for k in range(1, n + 1)])
    exp = TruncatedSeries([Fraction(1, math.factorial(k)) for k in range(n + 1)])
    binom = TruncatedSeries(_binomial_half(n))
    shifted = TruncatedSeries([0] + _binomial_half(n - 1))
    assert g_series_candidate(geo, 2).accepted
    assert g_series_candidate(log, 3).accepted
    r = g_series_candidate(exp, 5)
    assert not r.accepted
    # oracle: exact factorials against powers of 5
    assert r.first_failure == next(k for k in range(1, n + 1) if math.factorial(k) > 5 ** k)
    assert g_series_candidate(binom, 4).accepted
    assert g_series_candidate(shifted, 4).accepted
    criterion.append(f"exp first fails at n = {r.first_failure}")


# ------------------------------------------------------------------ 10

def test_10_hasse_bounds(criterion):
    weak = hasse_height_bound(HeightBoundInput(delta=10, m=2, c1=1))
    strong = hasse_height_bound(HeightBoundInput(delta=10, m=2, c2=1), strong=True)
    assert abs(float(weak.lo) - 3302.585092994046) <= HASSE_TOL
    assert abs(float(weak.hi) - 3302.585092994046) <= HASSE_TOL
    assert abs(float(strong.lo) - 330.2585092994046) <= HASSE_STRONG_TOL
    assert abs(float(strong.hi) - 330.2585092994046) <= HASSE_STRONG_TOL
    oracle = Fraction(631 * 4, 100) ** 4
    expected = math.ceil(oracle)
    assert expected == 405843
    assert degree_inflation_bound(2).value == expected
    criterion.append(f"(25.24)^4 = {float(oracle):.4f}, ceil {expected} (recomputed oracle)")


# ------------------------------------------------------------------ 11

def test_11_field_forge(criterion):
    start = time.perf_counter()
    x = sympy.symbols("x")
    cases = {(5, 2): (-1, 1, 1), (7, 3): (-1, -2, 1, 1), (13, 2): (-3, 1, 1)}
    for (p, beta), expected in cases.items():
        field = gaussian_period_field(p, beta)
        assert field.min_poly == expected
        assert real_embedding_count(field) == beta
        f = sympy.Poly(list(reversed(expected)), x)
        group, _ = sympy.polys.numberfields.galoisgroups.galois_group(f)
        assert group.is_cyclic and group.order() == beta
        disc = abs(int(sympy.discriminant(f)))
        while disc % p == 0:
            disc //= p
        assert disc == 1
    elapsed = time.perf_counter() - start
    assert elapsed < 10
    criterion.append(f"three fields verified in {elapsed:.2f}s")


# ------------------------------------------------------------------ 12

def _cm_fields():
    r = forge(2)
    return [
        (NumberField((1, 0, 1)), (0, -1)),
        (NumberField((1, 1, 1)), (-1, -1)),
        (NumberField((1, 1, 1, 1, 1)), (-1, -1, -1, -1)),
        (r.field, r.sigma),
    ]


def test_12_cm_point_path(criterion):
    rng = Random(12)
    fields = _cm_fields()
    count = 0
    for _ in range(60):
        summands, mu = [], 0
        for _ in range(rng.randint(1, 3)):
            center, sigma = rng.choice(fields)
            m = rng.randint(1, 3)
            desc = AlbertDescriptor("IV", center, 1, (), cm_conjugation=sigma)
            summands.append(Summand(m, center.degree, desc))
            mu += m * center.degree
        jt = rng.choice(list(partitions(mu)))
        n = max(jt) - 1 + rng.randint(0, 1)
        prof = FiltrationProfile(n, profile_from_jordan(jt, n))
        point = PointDescriptor(mu, n, prof, HodgeAlgebra(tuple(summands)))
        assert is_cm_point(point)
        cond2, cond3 = remedy_conditions(point)
        if prof.h >= 1:
            assert cond3
        if mu - len(jt) > 0:
            assert check_star1(point).holds
        count += 1
    criterion.append(f"{count} random CM descriptors")
