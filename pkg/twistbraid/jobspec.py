"""
The JSON job format read by the CLI, and the builders that turn a job into
domain objects.

A job names a command and whatever that command needs::

    {
        "command": "verify",
        "group": {"factors": [3]},
        "alpha": {"matrix": [[2]], "modulus": 3},
        "candidate": {"values": ["1", "q^1", "q^1"]}
    }

Coefficients are rationals (``1``, ``"-1/2"``), roots of unity written
``"q^k"`` with q a primitive root of the twist modulus, ``"zeta_M^k"``, or
the serialized forms ``{"modulus", "exponent"}`` and ``{"modulus", "coeffs"}``.
"""

import re
from typing import Literal, Union

from pydantic import BaseModel, ConfigDict, Field, StrictInt, model_validator

from .cyclo import DEFAULT_DIGITS, CycNum
from .errors import ValidationError
from .groups import (
    BaseAlgebra,
    Bihomomorphism,
    FiniteGroup,
    q8_base,
    q8_twist,
    s3_twist,
    symmetric_group,
    validate_bihom,
)
from .search import ACTION_NAMES, DEFAULT_BUDGET, Ansatz
from .ybo import YBOCandidate

COMMANDS = (
    "verify",
    "enumerate",
    "orbits",
    "spectrum",
    "center",
    "fixed-dim",
    "bratteli",
    "fusion",
    "compare",
    "image-order",
    "survey-z3z3",
)

# commands that act on a base algebra with a twist
NEEDS_ALGEBRA = ("verify", "enumerate", "orbits", "center", "fixed-dim", "image-order")
NEEDS_CANDIDATE = ("verify", "image-order")
NEEDS_ANSATZ = ("enumerate", "orbits")

_RATIONAL = re.compile(r"^[+-]?\d+(/\d+)?$")
_Q_POWER = re.compile(r"^q(\^([+-]?\d+))?$")
_ZETA_POWER = re.compile(r"^zeta_(\d+)(\^([+-]?\d+))?$")


class _Model(BaseModel):
    model_config = ConfigDict(extra="forbid")


class RootCoefficient(_Model):
    modulus: int = Field(ge=1)
    exponent: int


class VectorCoefficient(_Model):
    modulus: int = Field(ge=1)
    coeffs: list[Union[StrictInt, str]]


Coefficient = Union[StrictInt, str, RootCoefficient, VectorCoefficient]


def _exactly_one(model: BaseModel, *names: str) -> None:
    given = [name for name in names if getattr(model, name) is not None]
    if len(given) != 1:
        raise ValueError(f"give exactly one of {', '.join(names)}")


class GroupSpec(_Model):
    """Z_m1 x … x Z_mk by ``factors``, a Cayley ``table``, or a ``named`` base."""

    factors: list[int] | None = None
    table: list[list[int]] | None = None
    named: Literal["s3", "q8"] | None = None

    @model_validator(mode="after")
    def _one_source(self):
        _exactly_one(self, "factors", "table", "named")
        return self


class CocycleSpec(_Model):
    table: list[list[int]]
    modulus: int = Field(ge=1)


class AlphaSpec(_Model):
    """A k x k ``matrix`` for abelian groups, a full |G| x |G| ``table``, or a ``named`` twist."""

    matrix: list[list[int]] | None = None
    table: list[list[int]] | None = None
    named: Literal["s3", "q8"] | None = None
    modulus: int | None = Field(None, ge=1)

    @model_validator(mode="after")
    def _one_source(self):
        _exactly_one(self, "matrix", "table", "named")
        if self.named is None and self.modulus is None:
            raise ValueError("a matrix or table twist needs a modulus")
        return self


class AnsatzSpec(_Model):
    """Either μ_``roots`` (plus 0 when ``zero``) or explicit ``values``."""

    roots: int | None = Field(None, ge=1)
    zero: bool = False
    values: list[Coefficient] | None = None
    pinned: dict[str, Coefficient] = {}
    pin_identity: bool = True

    @model_validator(mode="after")
    def _one_source(self):
        _exactly_one(self, "roots", "values")
        return self


class CandidateSpec(_Model):
    values: list[Coefficient]
    normalizer: Coefficient | None = None


class Options(_Model):
    n: int = Field(3, ge=1)
    depth: int = Field(4, ge=1)
    cap: int | None = Field(None, ge=1)
    budget: int = Field(DEFAULT_BUDGET, ge=1)
    digits: int = Field(DEFAULT_DIGITS, ge=1)
    threads: int = Field(1, ge=1)
    p: int | None = Field(None, ge=2)
    k: int = Field(2, ge=1, le=2)
    epsilon: Literal[1, -1] = 1
    x: int = 1
    kind: Literal["A", "C"] = "C"
    actions: list[Literal[ACTION_NAMES]] = []
    order: int | None = Field(None, ge=1)
    extra_modulus: int = Field(1, ge=1)


class JobSpec(_Model):
    """
    One CLI job.

    Example::

        spec = JobSpec.model_validate_json(Path("job.json").read_text())
    """

    command: Literal[COMMANDS]
    group: GroupSpec | None = None
    cocycle: CocycleSpec | None = None
    alpha: AlphaSpec | None = None
    ansatz: AnsatzSpec | None = None
    candidate: CandidateSpec | None = None
    options: Options = Options()

    @model_validator(mode="after")
    def _command_inputs(self):
        if self.command in NEEDS_ALGEBRA and (self.group is None or self.alpha is None):
            raise ValueError(f"{self.command} needs group and alpha")
        if self.command in NEEDS_CANDIDATE and self.candidate is None:
            raise ValueError(f"{self.command} needs a candidate")
        if self.command in NEEDS_ANSATZ and self.ansatz is None:
            raise ValueError(f"{self.command} needs an ansatz")
        if self.command == "spectrum" and self.options.p is None:
            raise ValueError("spectrum needs options.p")
        if self.command in ("bratteli", "compare") and self.options.order is None:
            raise ValueError(f"{self.command} needs options.order")
        if self.command == "fusion" and self.options.order is None and self.group is None:
            raise ValueError("fusion needs options.order or a group")
        return self


def parse_coefficient(value, q_modulus: int = 1) -> CycNum:
    """
    Read one coefficient.

    Args:
        value: Any of the forms listed in the module docstring.
        q_modulus: The order of q in ``"q^k"``.

    Raises:
        ValidationError: If the value cannot be read.

    Example::

        assert parse_coefficient("q^2", 3) == CycNum.root(3, 2)
    """
    if isinstance(value, RootCoefficient):
        return CycNum.root(value.modulus, value.exponent)
    if isinstance(value, VectorCoefficient):
        for c in value.coeffs:
            if isinstance(c, str) and not _RATIONAL.match(c.strip()):
                raise ValidationError(f"Bad rational {c!r}")
        return CycNum.from_coeffs(value.modulus, [c.strip() if isinstance(c, str) else c for c in value.coeffs])
    if isinstance(value, bool):
        raise ValidationError("Booleans are not coefficients")
    if isinstance(value, int):
        return CycNum.rational(1, value)
    text = str(value).replace(" ", "")
    if _RATIONAL.match(text):
        return CycNum.rational(1, text)
    match = _Q_POWER.match(text)
    if match:
        return CycNum.root(q_modulus, int(match.group(2) or 1))
    match = _ZETA_POWER.match(text)
    if match:
        return CycNum.root(int(match.group(1)), int(match.group(3) or 1))
    raise ValidationError(f"Cannot read coefficient {value!r}")


def build_base(spec: JobSpec) -> BaseAlgebra:
    group_spec = spec.group
    if group_spec.named == "q8":
        if spec.cocycle is not None:
            raise ValidationError("The q8 base already carries its cocycle")
        return q8_base()
    if group_spec.named == "s3":
        group = symmetric_group(3)
    elif group_spec.factors is not None:
        group = FiniteGroup.abelian(*group_spec.factors)
    else:
        group = FiniteGroup.presented(group_spec.table)
    if spec.cocycle is None:
        return BaseAlgebra(group)
    return BaseAlgebra(group, spec.cocycle.table, spec.cocycle.modulus)


def build_alpha(spec: JobSpec, group: FiniteGroup) -> Bihomomorphism:
    alpha_spec = spec.alpha
    if alpha_spec.named == "q8":
        return q8_twist(group)
    if alpha_spec.named == "s3":
        return s3_twist(group)
    data = alpha_spec.matrix if alpha_spec.matrix is not None else alpha_spec.table
    return validate_bihom(group, data, alpha_spec.modulus)


def build_ansatz(spec: AnsatzSpec, q_modulus: int = 1) -> Ansatz:
    """
    Raises:
        ValidationError: If a pinned key is not an element index.
    """
    pinned = {}
    for key, value in spec.pinned.items():
        if not key.lstrip("-").isdigit():
            raise ValidationError(f"Pinned keys are element indices, got {key!r}")
        pinned[int(key)] = parse_coefficient(value, q_modulus)
    if spec.roots is not None:
        ansatz = Ansatz.roots_of_unity(spec.roots, zero=spec.zero, pinned=pinned)
    else:
        values = tuple(parse_coefficient(v, q_modulus) for v in spec.values)
        ansatz = Ansatz(values, tuple(sorted(pinned.items())))
    if not spec.pin_identity:
        ansatz = Ansatz(ansatz.values, ansatz.pinned, pin_identity=False)
    return ansatz


def build_candidate(spec: CandidateSpec, base: BaseAlgebra, q_modulus: int = 1) -> YBOCandidate:
    values = [parse_coefficient(v, q_modulus) for v in spec.values]
    normalizer = None if spec.normalizer is None else parse_coefficient(spec.normalizer, q_modulus)
    return YBOCandidate.from_values(base, values, normalizer=normalizer)


def q_modulus(spec: JobSpec) -> int:
    """Order of q: the twist modulus, 1 without a twist."""
    if spec.alpha is None:
        return 1
    if spec.alpha.named is not None:
        return 2
    return spec.alpha.modulus


def schema() -> dict:
    return JobSpec.model_json_schema()
