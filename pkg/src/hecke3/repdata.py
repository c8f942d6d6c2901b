"""Per-group representation data: descriptors, matrix models, Schur factorizations.

Data files are line oriented (see the package data directory).  Everything is
validated on load: the braid relation and the characteristic-polynomial
relation are checked symbolically for every model, (S1*S2)^3 must be a scalar
matrix, and the dimension profile must match the group order.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources

from .cyclo import CycloNum
from .laurent import LaurentExpr, parse_expression
from . import linalg


class DataError(ValueError):
    """Malformed or inconsistent group data."""


@dataclass(frozen=True)
class CharacterInfo:
    index: int          # 1-based, the paper's numbering
    name: str
    dim: int


@dataclass(frozen=True)
class GroupDescriptor:
    k: int              # generator order: 3, 4 or 5
    name: str           # G4, G8, G16
    order: int          # 24, 96, 600
    root_exponent: int  # M with u_i = v_i^M
    variables: tuple[str, ...]
    characters: tuple[CharacterInfo, ...]

    def char_by_index(self, index: int) -> CharacterInfo:
        return self.characters[index - 1]


@dataclass(frozen=True)
class IrrepModel:
    char: CharacterInfo
    s1: list              # dim x dim LaurentExpr matrix
    s2: list

    @property
    def dim(self) -> int:
        return self.char.dim


@dataclass(frozen=True)
class SchurFactorization:
    char: CharacterInfo
    prefactor: LaurentExpr                   # a single monomial
    factors: tuple[tuple[int, LaurentExpr], ...]  # (cyclotomic index, monomial argument)


@dataclass
class GroupData:
    descriptor: GroupDescriptor
    models: dict[int, IrrepModel] = field(default_factory=dict)
    schur: dict[int, SchurFactorization] = field(default_factory=dict)

    def model(self, index: int) -> IrrepModel:
        return self.models[index]


_EXPECTED_PROFILE = {
    "G4": (3, 24, {1: 3, 2: 3, 3: 1}),
    "G8": (4, 96, {1: 4, 2: 6, 3: 4, 4: 2}),
    "G16": (5, 600, {1: 5, 2: 10, 3: 10, 4: 10, 5: 5, 6: 5}),
}


@dataclass
class ValidationIssue:
    char_index: int
    check: str
    detail: str


def parameter_exprs(desc: GroupDescriptor) -> list[LaurentExpr]:
    """The parameters u_i = v_i^M as Laurent expressions."""
    n = len(desc.variables)
    return [LaurentExpr.variable(n, i, desc.root_exponent) for i in range(n)]


def validate_model(model: IrrepModel, desc: GroupDescriptor) -> list[ValidationIssue]:
    """Symbolic checks: braid, characteristic polynomial, central scalar."""
    issues = []
    m = model.dim
    a, b = model.s1, model.s2
    if len(a) != m or len(b) != m or any(len(r) != m for r in a + b):
        return [ValidationIssue(model.char.index, "shape", "matrix size mismatch")]
    aba = linalg.mat_mul(linalg.mat_mul(a, b), a)
    bab = linalg.mat_mul(linalg.mat_mul(b, a), b)
    if not linalg.is_zero_mat(linalg.mat_sub(aba, bab)):
        issues.append(ValidationIssue(model.char.index, "braid", "S1*S2*S1 != S2*S1*S2"))
    nv = len(desc.variables)
    zero = LaurentExpr(nv)
    one = LaurentExpr.constant(nv, 1)
    ident = linalg.scalar_mat(m, one, zero)
    params = parameter_exprs(desc)
    for gen, label in ((a, "S1"), (b, "S2")):
        prod = ident
        for u in params:
            shifted = [[gen[i][j] - (u if i == j else zero) for j in range(m)] for i in range(m)]
            prod = linalg.mat_mul(prod, shifted)
        if not linalg.is_zero_mat(prod):
            issues.append(
                ValidationIssue(model.char.index, "charpoly", f"prod(({label} - u_i)) != 0")
            )
    z = linalg.mat_mul(a, b)
    z3 = linalg.mat_mul(linalg.mat_mul(z, z), z)
    scalar = z3[0][0]
    for i in range(m):
        for j in range(m):
            want = scalar if i == j else zero
            if not (z3[i][j] - want).is_zero():
                issues.append(
                    ValidationIssue(model.char.index, "central", "(S1*S2)^3 is not scalar")
                )
                return issues
    return issues


def build_dim2_model(slot1: int, slot2: int, desc: GroupDescriptor) -> IrrepModel:
    """The two-dimensional model on parameter slots (1-based) slot1 < slot2."""
    if slot1 == slot2:
        raise DataError("the two parameter slots of a 2-dimensional model must differ")
    params = parameter_exprs(desc)
    p1, p2 = params[slot1 - 1], params[slot2 - 1]
    nv = len(desc.variables)
    zero = LaurentExpr(nv)
    s1 = [[p1, zero], [-p1, p2]]
    s2 = [[p2, p2], [zero, p1]]
    char = CharacterInfo(0, f"dim2({slot1},{slot2})", 2)
    return IrrepModel(char, s1, s2)


def symbolic_trace(model: IrrepModel, word: tuple[int, ...], cap: int = 24) -> LaurentExpr:
    """Trace of the product over the word (entries 1 or 2 select s1/s2)."""
    if len(word) > cap:
        raise DataError(f"word length {len(word)} exceeds cap {cap}")
    nv = model.s1[0][0].nvars
    if not word:
        return LaurentExpr.constant(nv, model.dim)
    mats = {1: model.s1, 2: model.s2}
    prod = mats[word[0]]
    for g in word[1:]:
        prod = linalg.mat_mul(prod, mats[g])
    return linalg.trace(prod)


# -- data file format ---------------------------------------------------------


def load_group_data(lines, *, validate: bool = True) -> GroupData:
    """Parse a group data file (iterable of text lines)."""
    desc_fields: dict | None = None
    models: dict[int, IrrepModel] = {}
    schur: dict[int, SchurFactorization] = {}
    current: CharacterInfo | None = None
    rows_s1: list[list[LaurentExpr]] = []
    rows_s2: list[list[LaurentExpr]] = []
    schur_pre: LaurentExpr | None = None
    schur_factors: list[tuple[int, LaurentExpr]] = []
    names: tuple[str, ...] = ()

    def finish_char(lineno):
        nonlocal current, rows_s1, rows_s2, schur_pre, schur_factors
        if current is None:
            return
        m = current.dim
        if len(rows_s1) != m or len(rows_s2) != m:
            raise DataError(
                f"line {lineno}: character {current.index} has "
                f"{len(rows_s1)}/{len(rows_s2)} rows, expected {m}"
            )
        models[current.index] = IrrepModel(current, rows_s1, rows_s2)
        if schur_pre is not None or schur_factors:
            if schur_pre is None or not schur_pre.is_monomial():
                raise DataError(f"character {current.index}: SCHUR PRE must be a single monomial")
            schur[current.index] = SchurFactorization(
                current, schur_pre, tuple(schur_factors)
            )
        current, rows_s1, rows_s2 = None, [], []
        schur_pre, schur_factors = None, []

    for lineno, raw in enumerate(lines, 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        fields = line.split(None, 1)
        tag = fields[0]
        rest = fields[1] if len(fields) > 1 else ""
        try:
            if tag == "GROUP":
                kv = dict(part.split("=", 1) for part in rest.split())
                names = tuple(kv["VARS"].split(","))
                desc_fields = dict(
                    k=int(kv["k"]), name=kv["NAME"], order=int(kv["ORDER"]),
                    root_exponent=int(kv["ROOTEXP"]), variables=names,
                )
            elif tag == "CHAR":
                finish_char(lineno)
                kv = dict(part.split("=", 1) for part in rest.split())
                current = CharacterInfo(int(kv["index"]), kv["name"], int(kv["dim"]))
            elif tag in ("S1", "S2"):
                body = rest.split(None, 1)
                if not body or body[0] != "ROW":
                    raise DataError("expected ROW")
                entries = [parse_expression(e, names) for e in body[1].split(",")]
                (rows_s1 if tag == "S1" else rows_s2).append(entries)
            elif tag == "SCHUR":
                body = rest.split(None, 1)
                if body[0] == "PRE":
                    schur_pre = parse_expression(body[1], names)
                elif body[0] == "FACTOR":
                    dpart, arg = body[1].split("ARG", 1)
                    d = int(dict(p.split("=") for p in dpart.split())["d"])
                    schur_factors.append((d, parse_expression(arg.strip(), names)))
                else:
                    raise DataError(f"unknown SCHUR line {body[0]!r}")
            elif tag == "END":
                finish_char(lineno)
            else:
                raise DataError(f"unknown tag {tag!r}")
        except DataError:
            raise
        except Exception as exc:
            raise DataError(f"line {lineno}: {exc}") from exc
    finish_char(None)

    if desc_fields is None:
        raise DataError("missing GROUP header")

    chars = tuple(models[i].char for i in sorted(models))
    desc = GroupDescriptor(characters=chars, **desc_fields)
    data = GroupData(desc, models, schur)
    _check_descriptor(desc)
    if validate:
        for model in models.values():
            issues = validate_model(model, desc)
            if issues:
                raise DataError(
                    f"character {model.char.index}: "
                    + "; ".join(f"{i.check}: {i.detail}" for i in issues)
                )
        _check_schur_degrees(data)
    return data


def _check_descriptor(desc: GroupDescriptor):
    k, order, profile = _EXPECTED_PROFILE[desc.name]
    if desc.k != k or desc.order != order:
        raise DataError(f"{desc.name}: wrong k or order")
    seen: dict[int, int] = {}
    total = 0
    for i, c in enumerate(desc.characters, 1):
        if c.index != i:
            raise DataError(f"{desc.name}: character indices must be 1..n contiguous")
        seen[c.dim] = seen.get(c.dim, 0) + 1
        total += c.dim * c.dim
    if seen != profile:
        raise DataError(f"{desc.name}: dimension profile {seen} != expected {profile}")
    if total != desc.order:
        raise DataError(f"{desc.name}: sum of squared dimensions {total} != order")


def _check_schur_degrees(data: GroupData):
    m = data.descriptor.root_exponent
    for s in data.schur.values():
        for d, arg in s.factors:
            if not arg.is_monomial():
                raise DataError(f"character {s.char.index}: Schur factor argument not a monomial")
            (exps, _), = arg.terms.items()
            if sum(exps) != 0 or any(e % m for e in exps):
                raise DataError(
                    f"character {s.char.index}: Schur argument {exps} is not a "
                    f"degree-0 monomial in the parameters"
                )


# -- shipped data -------------------------------------------------------------

_CACHE: dict[str, GroupData] = {}


def data_dir() -> str | None:
    return os.environ.get("HECKE3_DATA_DIR")


def load_group(name: str, *, validate: bool = True, refresh: bool = False) -> GroupData:
    """Load one of the shipped groups G4, G8, G16 (cached after validation)."""
    key = name.upper()
    if not refresh and key in _CACHE:
        return _CACHE[key]
    override = data_dir()
    if override:
        path = os.path.join(override, f"{key.lower()}.dat")
        with open(path, encoding="utf-8") as fh:
            data = load_group_data(fh, validate=validate)
    else:
        ref = resources.files("hecke3").joinpath(f"data/{key.lower()}.dat")
        with ref.open(encoding="utf-8") as fh:
            data = load_group_data(fh, validate=validate)
    if data.descriptor.name != key:
        raise DataError(f"requested {key} but file declares {data.descriptor.name}")
    _CACHE[key] = data
    return data


GROUP_NAMES = ("G4", "G8", "G16")
