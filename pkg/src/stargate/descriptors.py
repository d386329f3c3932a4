"""JSON descriptor schema (version 1) shared by every command, and conversion to domain objects.

Rationals are written as integers or ``"p/q"`` strings.  Validation errors
from pydantic carry field paths; domain-level failures found while
converting are re-raised as :class:`DescriptorError` with the path of the
offending object.
"""

from fractions import Fraction
from typing import Annotated, List, Literal, Optional, Union

from pydantic import (AfterValidator, BaseModel, ConfigDict, Field, StrictInt, StrictStr,
                      ValidationError, model_validator)

from .albert import AlbertDescriptor, HodgeAlgebra, LocalInvariant, Summand, validate_albert
from .errors import ArgumentError, DegenerateInputError, PreconditionError
from .exactnum.numberfield import NumberField
from .filtration import FiltrationProfile
from .starcheck import PointDescriptor

SCHEMA_VERSION = 1


class DescriptorError(Exception):
    """A descriptor that parses but describes an invalid object; ``path`` locates it."""

    def __init__(self, path, message):
        super().__init__(f"{path}: {message}" if path else message)
        self.path = path


def _to_fraction(v):
    try:
        return Fraction(v)
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"not a rational number: {v!r}") from exc


Rational = Annotated[Union[StrictInt, StrictStr], AfterValidator(_to_fraction)]


class _Model(BaseModel):
    model_config = ConfigDict(extra="forbid", populate_by_name=True)


class _Versioned(_Model):
    schema_version: Literal[1] = Field(SCHEMA_VERSION, alias="schema")


class InvariantModel(_Model):
    prime: int = Field(ge=2)
    place: int = Field(ge=0)
    value: Rational


class CenterModel(_Model):
    min_poly: List[int] = Field(min_length=2)


class SummandModel(_Model):
    multiplicity: int = Field(ge=1)
    dim_v: int = Field(ge=1)
    type: Literal["I", "II", "III", "IV"]
    center: CenterModel
    d: int = Field(ge=1)
    invariants: List[InvariantModel] = []
    cm_conjugation: Optional[List[Rational]] = None
    real_places: Optional[Literal["split", "ramified"]] = None
    cyclic_center: bool = False


class PointModel(_Versioned):
    mu: int = Field(ge=1)
    n: int = Field(ge=0)
    profile: List[int]
    algebra: List[SummandModel] = Field(min_length=1)
    matrix: Optional[List[List[Rational]]] = None


class FiltrationInput(_Versioned):
    n: int = Field(ge=0)
    matrix: List[List[Rational]] = Field(min_length=1)


class RelationTerm(_Model):
    vars: List[List[int]] = Field(min_length=1, max_length=2)
    coeff: Rational


class SymplecticInput(_Versioned):
    task: Literal["extend_isotropic", "riemann_check", "trivial_relation"]
    mu: int = Field(ge=2)
    vectors: Optional[List[List[Rational]]] = None
    matrix: Optional[List[List[Rational]]] = None
    power: int = 0
    h: Optional[int] = None
    relation: Optional[List[RelationTerm]] = None

    @model_validator(mode="after")
    def _fields_for_task(self):
        needed = {"extend_isotropic": ("vectors",), "riemann_check": ("matrix",),
                  "trivial_relation": ("h", "relation")}[self.task]
        missing = [f for f in needed if getattr(self, f) is None]
        if missing:
            raise ValueError(f"task {self.task} requires {', '.join(missing)}")
        return self


class HeightModel(_Model):
    delta: int = Field(ge=1)
    m: int = Field(ge=1)
    c1: Rational = 1
    c2: Rational = 1
    mu: Optional[int] = Field(None, ge=1)


class SeriesInput(_Versioned):
    coeffs: List[Rational] = Field(min_length=2)
    operator: Optional[List[List[Rational]]] = None
    primes: List[int] = []
    height: Optional[HeightModel] = None


def format_validation_error(exc):
    """One ``path: message`` line per pydantic error."""
    lines = []
    for err in exc.errors():
        path = ".".join(str(p) for p in err["loc"]) or "<root>"
        lines.append(f"{path}: {err['msg']}")
    return lines


def parse(model, data):
    """Validate ``data`` against ``model``; raises :class:`pydantic.ValidationError`."""
    return model.model_validate(data)


def _domain(path, build):
    try:
        return build()
    except (ArgumentError, DegenerateInputError, PreconditionError) as exc:
        raise DescriptorError(path, str(exc)) from exc


def summand_from_model(m, path="summand"):
    def build():
        center = NumberField(tuple(m.center.min_poly))
        invs = tuple(LocalInvariant(v.prime, v.place, v.value) for v in m.invariants)
        alg = AlbertDescriptor(albert_type=m.type, center=center, degree_d=m.d, invariants=invs,
                               cm_conjugation=None if m.cm_conjugation is None else tuple(m.cm_conjugation),
                               real_places=m.real_places, cyclic_center=m.cyclic_center)
        return Summand(m.multiplicity, m.dim_v, alg)
    summand = _domain(path, build)
    problems = validate_albert(summand.algebra)
    if problems:
        raise DescriptorError(path, "; ".join(problems))
    return summand


def point_from_model(m):
    summands = tuple(summand_from_model(s, f"algebra.{k}") for k, s in enumerate(m.algebra))
    if len(m.profile) % 2 == 0:
        raise DescriptorError("profile", "needs an odd number of graded dimensions")
    prof = _domain("profile", lambda: FiltrationProfile(len(m.profile) // 2, tuple(m.profile)))
    matrix = None if m.matrix is None else tuple(tuple(r) for r in m.matrix)
    return _domain("<root>", lambda: PointDescriptor(mu=m.mu, n=m.n, profile=prof,
                                                      algebra=HodgeAlgebra(summands), matrix=matrix))


def load_point(data):
    return point_from_model(parse(PointModel, data))


def summand_to_json(s):
    a = s.algebra
    out = {"multiplicity": s.multiplicity, "dim_v": s.dim_v, "type": a.albert_type,
           "center": a.center.to_json(), "d": a.degree_d,
           "invariants": [v.to_json() for v in a.invariants]}
    if a.cm_conjugation is not None:
        out["cm_conjugation"] = [str(c) for c in a.cm_conjugation]
    if a.real_places is not None:
        out["real_places"] = a.real_places
    if a.cyclic_center:
        out["cyclic_center"] = True
    return out


def point_to_json(p):
    out = {"schema": SCHEMA_VERSION, "mu": p.mu, "n": p.n, "profile": list(p.profile.dims),
           "algebra": [summand_to_json(s) for s in p.algebra.summands]}
    if p.matrix is not None:
        out["matrix"] = [[str(x) for x in row] for row in p.matrix]
    return out


def json_schema():
    """JSON Schema documents for every input kind, keyed by command."""
    return {
        "star-check": PointModel.model_json_schema(by_alias=True),
        "filtration": FiltrationInput.model_json_schema(by_alias=True),
        "symplectic": SymplecticInput.model_json_schema(by_alias=True),
        "gseries-check": SeriesInput.model_json_schema(by_alias=True),
    }


__all__ = [
    "DescriptorError", "FiltrationInput", "PointModel", "SeriesInput", "SymplecticInput",
    "ValidationError", "format_validation_error", "json_schema", "load_point", "parse",
    "point_from_model", "point_to_json",
]
