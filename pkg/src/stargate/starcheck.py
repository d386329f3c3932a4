"""The seven arithmetic conditions, the remedy inequalities and Σ-membership.

Sets of primes that are infinite in general (``Pi``, ``S``, ``T`` and the
totally split primes) are enumerated up to a scan bound; a condition that
fails to reach its threshold there is reported as ``not_established``
rather than ``false``.  Sets driven by non-zero invariants are finite and
are computed exactly from the invariant list.

Divisibility scans of the form "does not divide ``h_j`` for all ``j``" only
look at strictly positive graded dimensions.
"""

from dataclasses import dataclass, field

from . import filtration as filt
from .albert import (HodgeAlgebra, LocalStructure, embedding_obstruction,
                     max_comm_semisimple_dim, validate_albert)
from .errors import ArgumentError
from .exactnum.numberfield import splitting_type
from .exactnum.primes import is_prime, primes_up_to
from .gseries import degree_inflation_bound

DEFAULT_PRIME_BOUND = 1000

HOLDS = "holds"
FALSE = "false"
NOT_ESTABLISHED = "not_established"
NOT_APPLICABLE = "not_applicable"


@dataclass(frozen=True)
class PointDescriptor:
    mu: int
    n: int
    profile: filt.FiltrationProfile
    algebra: HodgeAlgebra
    matrix: tuple = None

    def __post_init__(self):
        if self.profile.n != self.n:
            raise ArgumentError(f"profile is centered at {self.profile.n}, point declares n = {self.n}")
        if self.profile.mu != self.mu:
            raise ArgumentError(f"profile dimensions sum to {self.profile.mu}, expected mu = {self.mu}")
        if self.algebra.dim_total != self.mu:
            raise ArgumentError(f"algebra summands fill {self.algebra.dim_total} dimensions, expected mu = {self.mu}")
        for k, s in enumerate(self.algebra.summands):
            problems = validate_albert(s.algebra)
            if problems:
                raise ArgumentError(f"summand {k}: " + "; ".join(problems))
        if self.matrix is not None:
            op = self.operator
            if op.size != self.mu:
                raise ArgumentError(f"matrix has size {op.size}, expected mu = {self.mu}")
            computed = filt.profile(op, self.n)
            if computed != self.profile:
                raise ArgumentError(
                    f"matrix yields profile {list(computed.dims)}, declared {list(self.profile.dims)}")

    @property
    def operator(self):
        return None if self.matrix is None else filt.NilpotentOperator(self.matrix)

    def dim_im_n(self):
        """``dim im N``, from the matrix when given, otherwise from the profile."""
        if self.matrix is not None:
            return self.operator.rank
        return filt.dim_im_from_profile(self.profile)


@dataclass(frozen=True)
class StarVerdict:
    status: str
    witnesses: dict = field(default_factory=dict)  # summand index -> sorted tuple of primes
    note: str = ""

    @property
    def holds(self):
        return self.status == HOLDS


def _positive(point):
    return point.profile.positive_dims


def _divides_none(divisor, dims):
    return all(h % divisor for h in dims)


def _verdict(sets, threshold_sets_finite, impossible=False, note=""):
    """Collapse per-summand witness sets into one verdict."""
    if not sets:
        return StarVerdict(NOT_APPLICABLE, {}, note)
    witnesses = {i: tuple(sorted(ws)) for i, ws in sets.items()}
    if any(len(ws) >= 2 for ws in witnesses.values()):
        return StarVerdict(HOLDS, witnesses, note)
    status = FALSE if threshold_sets_finite or impossible else NOT_ESTABLISHED
    return StarVerdict(status, witnesses, note)


class _Scanner:
    """Certified splittings of each summand center for primes up to ``bound``."""

    def __init__(self, point, bound):
        if bound < 2:
            raise ArgumentError("prime bound must be at least 2")
        self.point = point
        self.bound = bound
        self.primes = primes_up_to(bound)
        self.skipped = set()

    def places(self, i, l):
        split = splitting_type(self.point.algebra.summands[i].algebra.center, l)
        if not split.certified:
            self.skipped.add(l)
            return None
        return split.places

    def scan(self, i, predicate):
        """Primes ``l`` with a certified place ``(index, place)`` satisfying ``predicate``."""
        out = []
        for l in self.primes:
            places = self.places(i, l)
            if places is not None and any(predicate(l, w, pl) for w, pl in enumerate(places)):
                out.append(l)
        return out


def check_star1(point):
    try:
        rhs = point.mu - point.dim_im_n()
    except ArgumentError as exc:
        return StarVerdict(NOT_APPLICABLE, {}, str(exc))
    lhs = max_comm_semisimple_dim(point.algebra)
    return StarVerdict(HOLDS if lhs > rhs else FALSE, {}, f"{lhs} > {rhs}" if lhs > rhs else f"{lhs} <= {rhs}")


def _star2(point, sc):
    h_max = point.profile.h_max
    sets, impossible = {}, True
    for i, s in enumerate(point.algebra.summands):
        m = s.multiplicity
        if s.algebra.f * m > h_max:
            impossible = False
        sets[i] = sc.scan(i, lambda l, w, pl, m=m: pl.local_degree * m > h_max)
    return _verdict(sets, False, impossible)


def check_star2(point, prime_bound=DEFAULT_PRIME_BOUND):
    return _star2(point, _Scanner(point, prime_bound))


def _star3(point, sc):
    h_max = point.profile.h_max
    sets = {}
    for i, s in enumerate(point.algebra.summands):
        a = s.algebra
        if a.degree_d * s.multiplicity < h_max:
            continue
        both = []
        for l in a.nonzero_invariant_primes():
            places = sc.places(i, l)
            if places is not None and all(pl.local_degree == 1 for pl in places):
                both.append(l)
        sets[i] = both
    if not sets:
        return StarVerdict(FALSE, {}, "no summand has d*m >= h_max")
    return _verdict(sets, True)


def check_star3(point, prime_bound=DEFAULT_PRIME_BOUND):
    return _star3(point, _Scanner(point, prime_bound))


def _quaternions(point):
    return [i for i, s in enumerate(point.algebra.summands) if s.algebra.is_quaternion]


def _r_sets(point, sc):
    dims = _positive(point)
    sets = {}
    for i in _quaternions(point):
        s = point.algebra.summands[i]
        a = s.algebra
        r = []
        for l in a.nonzero_invariant_primes():
            places = sc.places(i, l)
            if places is None:
                continue
            if any(a.invariant_at(l, w).denominator != 1
                   and _divides_none(4 * s.multiplicity * pl.local_degree, dims)
                   for w, pl in enumerate(places)):
                r.append(l)
        sets[i] = r
    return sets


def _s_sets(point, sc):
    """``S`` sets plus the indices whose ``S`` is provably too small."""
    dims = _positive(point)
    sets, proven = {}, set()
    for i in _quaternions(point):
        s = point.algebra.summands[i]
        a, m = s.algebra, s.multiplicity
        if a.cyclic_center and not _divides_none(2 * m * a.f, dims):
            # unramified local degrees of a cyclic center divide f
            sets[i] = []
            proven.add(i)
            continue
        if all(not _divides_none(2 * m * k, dims) for k in range(1, a.f + 1)):
            proven.add(i)
        sets[i] = sc.scan(i, lambda l, w, pl, a=a, m=m: a.invariant_at(l, w).denominator == 1
                          and _divides_none(2 * m * pl.local_degree, dims))
    return sets, proven


def _star4(point, sc):
    if not _quaternions(point):
        return StarVerdict(NOT_APPLICABLE, {}, "no quaternion summand")
    return _verdict(_r_sets(point, sc), True)


def check_star4(point, prime_bound=DEFAULT_PRIME_BOUND):
    return _star4(point, _Scanner(point, prime_bound))


def _star5(point, sc):
    if not _quaternions(point):
        return StarVerdict(NOT_APPLICABLE, {}, "no quaternion summand")
    sets, proven = _s_sets(point, sc)
    return _verdict(sets, False, impossible=proven == set(sets))


def check_star5(point, prime_bound=DEFAULT_PRIME_BOUND):
    return _star5(point, _Scanner(point, prime_bound))


def _star6(point, sc):
    if not _quaternions(point):
        return StarVerdict(NOT_APPLICABLE, {}, "no quaternion summand")
    r = _r_sets(point, sc)
    s, proven = _s_sets(point, sc)
    union = {i: sorted(set(r[i]) | set(s[i])) for i in r}
    return _verdict(union, False, impossible=proven == set(s))


def check_star6(point, prime_bound=DEFAULT_PRIME_BOUND):
    return _star6(point, _Scanner(point, prime_bound))


def _type_iv(point):
    return [i for i, s in enumerate(point.algebra.summands) if s.algebra.albert_type == "IV"]


def _star7(point, sc):
    idx = _type_iv(point)
    if not idx:
        return StarVerdict(NOT_APPLICABLE, {}, "no type IV summand")
    dims = _positive(point)
    sets, impossible = {}, True
    for i in idx:
        s = point.algebra.summands[i]
        md = s.multiplicity * s.algebra.degree_d
        if any(_divides_none(md * k, dims) for k in range(1, s.algebra.f + 1)):
            impossible = False
        sets[i] = sc.scan(i, lambda l, w, pl, md=md: _divides_none(md * pl.local_degree, dims))
    return _verdict(sets, False, impossible)


def check_star7(point, prime_bound=DEFAULT_PRIME_BOUND):
    return _star7(point, _Scanner(point, prime_bound))


def _sharp7(point, sc):
    """Advisory: primes where ``M_m(D ⊗ F_w)`` embeds in no graded piece (divisor ``m r d'^2 [F_w:Q_l]``)."""
    dims = _positive(point)
    out = {}
    for i in _type_iv(point):
        s = point.algebra.summands[i]
        a = s.algebra
        hits = []
        for l in sc.primes:
            places = sc.places(i, l)
            if places is None:
                continue
            for w, pl in enumerate(places):
                d_prime = a.invariant_at(l, w).denominator
                ls = LocalStructure(prime=l, place=w, local_degree=pl.local_degree,
                                    r=a.degree_d // d_prime, d_prime=d_prime)
                if embedding_obstruction(s.multiplicity, ls, dims).obstructed:
                    hits.append(l)
                    break
        out[i] = tuple(hits)
    return out


@dataclass(frozen=True)
class StarReport:
    verdicts: dict  # condition number -> StarVerdict
    sharp7: dict  # summand index -> primes; advisory only
    skipped_primes: tuple
    bound: int

    @property
    def any_holds(self):
        return any(v.holds for v in self.verdicts.values())

    def holding(self):
        return [k for k, v in sorted(self.verdicts.items()) if v.holds]


def star_report(point, prime_bound=DEFAULT_PRIME_BOUND):
    sc = _Scanner(point, prime_bound)
    verdicts = {
        1: check_star1(point),
        2: _star2(point, sc),
        3: _star3(point, sc),
        4: _star4(point, sc),
        5: _star5(point, sc),
        6: _star6(point, sc),
        7: _star7(point, sc),
    }
    sharp = _sharp7(point, sc)
    return StarReport(verdicts=verdicts, sharp7=sharp,
                      skipped_primes=tuple(sorted(sc.skipped)), bound=prime_bound)


def remedy_conditions(point):
    """``(cond2, cond3)`` for ``h = h_0``."""
    h = point.profile.h
    summands = point.algebra.summands
    cond2 = any(h * s.algebra.f > s.dim_v for s in summands)
    iv = [s for s in summands if s.algebra.albert_type == "IV"]
    cond3 = bool(iv) and any(h * s.algebra.f >= s.dim_v for s in iv)
    return cond2, cond3


@dataclass(frozen=True)
class ProximityReport:
    p: int
    excluded: bool
    via: dict  # condition number -> witness primes other than p (empty tuple for condition 1)


def proximity_exclusion(point, p, prime_bound=DEFAULT_PRIME_BOUND, report=None):
    """Conditions that rule out v-adic proximity at a place above ``p``."""
    if not is_prime(p):
        raise ArgumentError(f"{p} is not prime")
    report = report or star_report(point, prime_bound)
    via = {}
    for k, v in sorted(report.verdicts.items()):
        if not v.holds:
            continue
        if k == 1:
            via[1] = ()
            continue
        remaining = sorted({l for ws in v.witnesses.values() if len(ws) >= 2 for l in ws} - {p})
        if remaining:
            via[k] = tuple(remaining)
    return ProximityReport(p=p, excluded=bool(via), via=via)


@dataclass(frozen=True)
class SigmaVerdict:
    member: bool
    report: StarReport
    remedy: tuple
    height_template: dict


def height_template(mu):
    bound = degree_inflation_bound(mu)
    out = {"mu": mu, "degree_bound_log10": round(bound.log10, 6)}
    if bound.value is not None and bound.value < 10 ** 18:
        out["degree_bound"] = bound.value
    return out


def sigma_membership(point, prime_bound=DEFAULT_PRIME_BOUND):
    report = star_report(point, prime_bound)
    remedy = remedy_conditions(point)
    return SigmaVerdict(member=report.any_holds and any(remedy), report=report,
                        remedy=remedy, height_template=height_template(point.mu))


def verdict_to_json(v):
    """The report object emitted by the command line."""
    r = v.report
    return {
        "star": {str(k): x.holds for k, x in sorted(r.verdicts.items())},
        "status": {str(k): x.status for k, x in sorted(r.verdicts.items())},
        "witnesses": {str(k): {str(i): list(ws) for i, ws in sorted(x.witnesses.items())}
                      for k, x in sorted(r.verdicts.items()) if x.witnesses},
        "sharp_star7": {str(i): list(ws) for i, ws in sorted(r.sharp7.items())},
        "remedy": {"cond2": v.remedy[0], "cond3": v.remedy[1]},
        "sigma_member": v.member,
        "height_template": v.height_template,
        "skipped_primes": list(r.skipped_primes),
        "bound": r.bound,
    }
