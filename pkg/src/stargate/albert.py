"""Division-algebra descriptors with positive involution and their local structure.

A simple summand ``M_m(D)`` of an endomorphism algebra is described by the
Albert type of ``D``, its center ``F`` (a :class:`NumberField`), the index
``d`` (``[D:F] = d^2``) and a finite list of Brauer invariants at finite
places of ``F``.  Places that do not appear in the list carry invariant 0.
"""

from dataclasses import dataclass, field
from fractions import Fraction

from .errors import ArgumentError, DegenerateInputError
from .exactnum import numberfield as nf
from .exactnum.primes import is_prime

ALBERT_TYPES = ("I", "II", "III", "IV")
REAL_PLACE_BEHAVIOUR = {"II": "split", "III": "ramified"}


@dataclass(frozen=True)
class LocalInvariant:
    """``inv_w(D)`` in Q/Z at the place of index ``place`` above ``prime``; stored in ``[0, 1)``."""

    prime: int
    place: int
    value: Fraction

    def __post_init__(self):
        object.__setattr__(self, "value", Fraction(self.value) % 1)
        if not is_prime(self.prime):
            raise ArgumentError(f"invariant prime {self.prime} is not prime")
        if self.place < 0:
            raise ArgumentError("place index must be non-negative")

    def to_json(self):
        return {"prime": self.prime, "place": self.place, "value": str(self.value)}


@dataclass(frozen=True)
class AlbertDescriptor:
    albert_type: str
    center: nf.NumberField
    degree_d: int
    invariants: tuple = ()
    cm_conjugation: tuple = None
    real_places: str = None  # "split" or "ramified"; only meaningful for types II and III
    cyclic_center: bool = False

    def __post_init__(self):
        if self.albert_type not in ALBERT_TYPES:
            raise ArgumentError(f"unknown Albert type {self.albert_type!r}")
        if self.degree_d < 1:
            raise ArgumentError("degree_d must be positive")
        invs = tuple(sorted(self.invariants, key=lambda v: (v.prime, v.place)))
        object.__setattr__(self, "invariants", invs)
        if self.cm_conjugation is not None:
            object.__setattr__(self, "cm_conjugation",
                               tuple(Fraction(c) for c in self.cm_conjugation))
        if self.real_places not in (None, "split", "ramified"):
            raise ArgumentError("real_places must be 'split' or 'ramified'")

    @property
    def f(self):
        return self.center.degree

    @property
    def is_quaternion(self):
        return self.degree_d == 2

    def invariant_at(self, prime, place):
        for v in self.invariants:
            if v.prime == prime and v.place == place:
                return v.value
        return Fraction(0)

    def invariant_primes(self):
        return sorted({v.prime for v in self.invariants})

    def nonzero_invariant_primes(self):
        return sorted({v.prime for v in self.invariants if v.value != 0})


def validate_albert(desc):
    """Violations of the type-specific conditions, as human-readable strings.

    An empty list means the descriptor is consistent with its declared type
    at every prime that occurs in its invariant list.
    """
    out = []
    f = desc.f
    real = nf.real_embedding_count(desc.center)
    t = desc.albert_type
    if t == "I" and desc.degree_d != 1:
        out.append(f"type I requires d = 1, got {desc.degree_d}")
    if t in ("II", "III") and desc.degree_d != 2:
        out.append(f"type {t} requires d = 2, got {desc.degree_d}")
    if t in ("I", "II", "III") and real != f:
        out.append(f"type {t} requires a totally real center ({real} of {f} embeddings are real)")
    if t in REAL_PLACE_BEHAVIOUR and desc.real_places != REAL_PLACE_BEHAVIOUR[t]:
        out.append(f"type {t} must be declared {REAL_PLACE_BEHAVIOUR[t]} at all real places")
    seen = set()
    for v in desc.invariants:
        key = (v.prime, v.place)
        if key in seen:
            out.append(f"duplicate invariant at prime {v.prime}, place {v.place}")
        seen.add(key)
        if desc.degree_d % v.value.denominator:
            out.append(f"invariant {v.value} at ({v.prime}, {v.place}) has denominator not dividing d = {desc.degree_d}")
    splits = {}
    for l in desc.invariant_primes():
        split = nf.splitting_type(desc.center, l)
        splits[l] = split
        if not split.certified:
            out.append(f"prime {l} divides the discriminant; its place indexing is not certified")
        for v in desc.invariants:
            if v.prime == l and v.place >= len(split.places):
                out.append(f"place index {v.place} out of range above {l} ({len(split.places)} places)")
    # reciprocity: local invariants (real places included) sum to 0 in Q/Z
    real_part = Fraction(real, 2) if desc.real_places == "ramified" else Fraction(0)
    total = sum((v.value for v in desc.invariants), real_part)
    if total % 1:
        out.append(f"local invariants sum to {total % 1} mod 1, expected 0")
    if t == "IV":
        out.extend(_type_iv_violations(desc, real, splits))
    return out


def _type_iv_violations(desc, real, splits):
    out = []
    f = desc.f
    if real != 0:
        out.append(f"type IV requires a totally imaginary center, {real} real embeddings found")
    if f % 2:
        out.append(f"type IV requires an even-degree CM center, degree is {f}")
    if desc.cm_conjugation is None:
        out.append("type IV requires the CM conjugation sigma")
        return out
    try:
        nf.check_automorphism(desc.center, desc.cm_conjugation)
    except ArgumentError as exc:
        out.append(f"cm_conjugation: {exc}")
        return out
    fixed = nf.fixed_field_degree(desc.center, desc.cm_conjugation)
    if 2 * fixed != f:
        out.append(f"fixed field of sigma has degree {fixed}, expected {f // 2}")
    for l, split in splits.items():
        if not split.certified or any(v.place >= len(split.places) for v in desc.invariants if v.prime == l):
            continue
        perm, _ = nf.conjugation_action_on_places(desc.center, desc.cm_conjugation, l)
        for w, sw in enumerate(perm):
            a = desc.invariant_at(l, w)
            if sw == w and a != 0:
                out.append(f"nonzero invariant {a} at sigma-fixed place {w} above {l}")
            elif sw > w and (a + desc.invariant_at(l, sw)) % 1 != 0:
                out.append(f"invariants at places {w} and {sw} above {l} do not sum to 0 mod 1")
    return out


@dataclass(frozen=True)
class LocalStructure:
    """``D ⊗ F_w ≅ M_r(D')`` with ``D'`` of index ``d_prime``."""

    prime: int
    place: int
    local_degree: int
    r: int
    d_prime: int


@dataclass(frozen=True)
class LocalReport:
    prime: int
    certified: bool
    places: tuple  # of LocalStructure; empty when not certified


def local_structure(desc, l):
    """Local index and matrix size at every place of ``desc.center`` above ``l``.

    Uncertified primes are returned with ``certified=False`` and no places.
    """
    split = nf.splitting_type(desc.center, l)
    if not split.certified:
        return LocalReport(prime=l, certified=False, places=())
    out = []
    for idx, w in enumerate(split.places):
        d_prime = desc.invariant_at(l, idx).denominator
        if desc.degree_d % d_prime:
            raise ArgumentError(f"local index {d_prime} does not divide d = {desc.degree_d}")
        out.append(LocalStructure(prime=l, place=idx, local_degree=w.local_degree,
                                  r=desc.degree_d // d_prime, d_prime=d_prime))
    return LocalReport(prime=l, certified=True, places=tuple(out))


@dataclass(frozen=True)
class Summand:
    multiplicity: int
    dim_v: int
    algebra: AlbertDescriptor

    def __post_init__(self):
        if self.multiplicity < 1 or self.dim_v < 1:
            raise ArgumentError("multiplicity and dim_V must be positive")
        if self.dim_v % self.algebra.f:
            raise ArgumentError(
                f"center degree {self.algebra.f} does not divide dim V = {self.dim_v}")

    @property
    def t(self):
        """``dim V / f``, the rank of ``V`` over its center."""
        return self.dim_v // self.algebra.f


@dataclass(frozen=True)
class HodgeAlgebra:
    summands: tuple = field(default_factory=tuple)

    def __post_init__(self):
        object.__setattr__(self, "summands", tuple(self.summands))
        if not self.summands:
            raise DegenerateInputError("an algebra needs at least one summand")

    @property
    def dim_total(self):
        return sum(s.multiplicity * s.dim_v for s in self.summands)

    def warnings(self):
        out = []
        for k, s in enumerate(self.summands):
            a = s.algebra
            if s.dim_v % (a.degree_d ** 2 * a.f):
                out.append(f"summand {k}: d^2 f = {a.degree_d ** 2 * a.f} does not divide dim V = {s.dim_v}")
        return out


def max_comm_semisimple_dim(alg):
    return sum(s.multiplicity * s.algebra.f for s in alg.summands)


def is_cm_point(point):
    """True when the commutative part already fills ``V`` with CM fields."""
    alg = point.algebra
    return (max_comm_semisimple_dim(alg) == point.mu
            and all(s.algebra.albert_type == "IV" and s.algebra.degree_d == 1
                    for s in alg.summands))


@dataclass(frozen=True)
class EmbeddingCheck:
    """Result of scanning graded dimensions for one divisible by ``divisor``."""

    divisor: int
    witness: int = None  # least index j with divisor | dims[j]

    @property
    def obstructed(self):
        return self.witness is None


def embedding_obstruction(m, ls, dims):
    """Look for a graded piece that can host ``M_m(D ⊗ F_w)``.

    The divisor is ``m * r * d'^2 * [F_w : Q_l]``; a witness index means an
    embedding is not ruled out, ``obstructed`` means none of ``dims`` works.
    """
    dims = list(dims)
    if not dims:
        raise DegenerateInputError("no graded dimensions supplied")
    if any(h <= 0 for h in dims):
        raise ArgumentError("graded dimensions passed here must be strictly positive")
    divisor = m * ls.r * ls.d_prime ** 2 * ls.local_degree
    witness = next((j for j, h in enumerate(dims) if h % divisor == 0), None)
    return EmbeddingCheck(divisor=divisor, witness=witness)
