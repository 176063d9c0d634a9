"""Domain types for three-layer decision hierarchies and reciprocal judgment matrices.

Judgments are exact rationals restricted to the 1..9 comparison scale and its
reciprocals, so reciprocity and serialization round-trips hold bit-exactly.
Floats only appear downstream, in the priority engine.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence, Union


class DecisionError(Exception):
    """Base class for all errors raised by this package."""


class OutOfScaleError(DecisionError):
    """Judgment value is not on the 1..9 scale or its reciprocals."""


class MalformedJudgmentError(DecisionError):
    """Judgment token is not parseable as a rational at all."""


class MissingPairError(DecisionError):
    pass


class DuplicatePairError(DecisionError):
    pass


class BadIndexError(DecisionError):
    pass


class InvalidHierarchyError(DecisionError):
    pass


class ModelStructureError(DecisionError):
    """Matrices of a decision model do not line up with its hierarchy."""


# The 17 legal judgment intensities: 1..9 and 1/2..1/9, ascending.
SCALE: tuple[Fraction, ...] = tuple(
    sorted([Fraction(k) for k in range(1, 10)] + [Fraction(1, k) for k in range(2, 10)])
)
_SCALE_SET = frozenset(SCALE)

_TOKEN_RE = re.compile(r"^(-?\d+)(?:/(-?\d+))?$")


@dataclass(frozen=True)
class Judgment:
    """One pairwise-comparison intensity, held as an exact rational on the scale."""

    value: Fraction

    def __post_init__(self) -> None:
        if not isinstance(self.value, Fraction):
            object.__setattr__(self, "value", Fraction(self.value))
        if self.value not in _SCALE_SET:
            raise OutOfScaleError(f"{self.value} is not a legal comparison intensity")

    def reciprocal(self) -> "Judgment":
        return Judgment(1 / self.value)

    @property
    def token(self) -> str:
        v = self.value
        return str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"

    def __float__(self) -> float:
        return float(self.value)

    def __str__(self) -> str:
        return self.token


ONE = Judgment(Fraction(1))


def judgment_from_token(token: str) -> Judgment:
    """Parse an intensity token such as "5" or "1/7" into an exact Judgment.

    Any integer or p/q form is accepted as long as the reduced value lies on
    the scale ("5/1" -> 5). Off-scale values raise OutOfScaleError, anything
    that is not a rational raises MalformedJudgmentError.
    """
    if not isinstance(token, str):
        raise MalformedJudgmentError(f"judgment token must be text, got {type(token).__name__}")
    m = _TOKEN_RE.match(token.strip())
    if m is None:
        raise MalformedJudgmentError(f"cannot parse judgment token {token!r}")
    num = int(m.group(1))
    den = int(m.group(2)) if m.group(2) is not None else 1
    if den == 0:
        raise MalformedJudgmentError(f"zero denominator in judgment token {token!r}")
    return Judgment(Fraction(num, den))


def render_token(j: Judgment) -> str:
    """Inverse of judgment_from_token on the 17-value scale."""
    return j.token


@dataclass(frozen=True)
class DiagonalViolation:
    index: int
    rule: str = field(default="diagonal", init=False)

    def __str__(self) -> str:
        return f"cell ({self.index}, {self.index}) must equal 1"


@dataclass(frozen=True)
class ReciprocityViolation:
    row: int
    col: int
    rule: str = field(default="reciprocity", init=False)

    def __str__(self) -> str:
        return f"cell ({self.col}, {self.row}) must be the exact reciprocal of cell ({self.row}, {self.col})"


MatrixViolation = Union[DiagonalViolation, ReciprocityViolation]


@dataclass(frozen=True)
class PairwiseMatrix:
    """Square grid of judgments over criteria or alternatives.

    Construction checks shape and ids only; use build_matrix to construct
    matrices that satisfy the diagonal and reciprocity invariants, and
    validate_matrix to diagnose grids that may not.
    """

    ids: tuple[str, ...]
    cells: tuple[tuple[Judgment, ...], ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "ids", tuple(self.ids))
        object.__setattr__(self, "cells", tuple(tuple(row) for row in self.cells))
        n = len(self.ids)
        if n < 2:
            raise BadIndexError("a comparison matrix needs at least 2 elements")
        if any(not i for i in self.ids):
            raise BadIndexError("element ids must be non-empty")
        if len(set(self.ids)) != n:
            raise BadIndexError("element ids must be unique")
        if len(self.cells) != n or any(len(row) != n for row in self.cells):
            raise BadIndexError(f"cell grid must be {n}x{n}")

    @property
    def n(self) -> int:
        return len(self.ids)

    def index_of(self, element: Union[int, str]) -> int:
        """Resolve an element given as an id or a 0-based index."""
        if isinstance(element, bool):
            raise BadIndexError(f"bad element reference {element!r}")
        if isinstance(element, int):
            if not 0 <= element < self.n:
                raise BadIndexError(f"index {element} out of range for {self.n} elements")
            return element
        try:
            return self.ids.index(element)
        except ValueError:
            raise BadIndexError(f"unknown element {element!r}") from None

    def cell(self, i: Union[int, str], j: Union[int, str]) -> Judgment:
        return self.cells[self.index_of(i)][self.index_of(j)]

    def as_float_rows(self) -> list[list[float]]:
        return [[float(c) for c in row] for row in self.cells]


def build_matrix(
    ids: Sequence[str], upper: Iterable[tuple[int, int, Judgment]]
) -> PairwiseMatrix:
    """Assemble a reciprocal matrix from upper-triangle judgments.

    Every unordered pair {i, j} with i < j must appear exactly once. The
    diagonal is set to 1 and the lower triangle to exact reciprocals, so the
    result always satisfies the matrix invariants. The order of `upper` does
    not matter.
    """
    ids = tuple(ids)
    n = len(ids)
    grid: list[list[Judgment | None]] = [[None] * n for _ in range(n)]
    for i in range(n):
        grid[i][i] = ONE
    seen: set[tuple[int, int]] = set()
    for i, j, v in upper:
        if not (isinstance(i, int) and isinstance(j, int)) or not (0 <= i < n and 0 <= j < n):
            raise BadIndexError(f"pair ({i}, {j}) out of range for {n} elements")
        if i >= j:
            raise BadIndexError(f"upper-triangle pair required, got ({i}, {j})")
        if (i, j) in seen:
            raise DuplicatePairError(f"pair ({ids[i]}, {ids[j]}) given more than once")
        seen.add((i, j))
        if not isinstance(v, Judgment):
            v = Judgment(Fraction(v))
        grid[i][j] = v
        grid[j][i] = v.reciprocal()
    missing = [(i, j) for i in range(n) for j in range(i + 1, n) if grid[i][j] is None]
    if missing:
        names = ", ".join(f"({ids[i]}, {ids[j]})" for i, j in missing)
        raise MissingPairError(f"missing judgment for pair(s): {names}")
    return PairwiseMatrix(ids=ids, cells=tuple(tuple(row) for row in grid))  # type: ignore[arg-type]


def validate_matrix(m: PairwiseMatrix) -> list[MatrixViolation]:
    """Diagnose diagonal and reciprocity violations; empty list means valid."""
    violations: list[MatrixViolation] = []
    for i in range(m.n):
        if m.cells[i][i].value != 1:
            violations.append(DiagonalViolation(i))
    for i in range(m.n):
        for j in range(i + 1, m.n):
            if m.cells[j][i].value * m.cells[i][j].value != 1:
                violations.append(ReciprocityViolation(i, j))
    return violations


@dataclass(frozen=True)
class Element:
    """A criterion or alternative: stable id plus human label."""

    id: str
    label: str = ""

    def __post_init__(self) -> None:
        if not self.label:
            object.__setattr__(self, "label", self.id)


@dataclass(frozen=True)
class Hierarchy:
    """Three-layer decision structure: one goal, criteria, alternatives."""

    goal: str
    criteria: tuple[Element, ...]
    alternatives: tuple[Element, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "criteria", tuple(self.criteria))
        object.__setattr__(self, "alternatives", tuple(self.alternatives))
        for layer, elements in (("criteria", self.criteria), ("alternatives", self.alternatives)):
            if len(elements) < 2:
                raise InvalidHierarchyError(f"need at least 2 {layer}, got {len(elements)}")
            ids = [e.id for e in elements]
            if any(not i for i in ids):
                raise InvalidHierarchyError(f"{layer} ids must be non-empty")
            if len(set(ids)) != len(ids):
                raise InvalidHierarchyError(f"{layer} ids must be unique")

    @property
    def criterion_ids(self) -> tuple[str, ...]:
        return tuple(e.id for e in self.criteria)

    @property
    def alternative_ids(self) -> tuple[str, ...]:
        return tuple(e.id for e in self.alternatives)


def hierarchy(
    goal: str,
    criteria: Sequence[Union[str, Element, tuple[str, str]]],
    alternatives: Sequence[Union[str, Element, tuple[str, str]]],
) -> Hierarchy:
    """Convenience constructor accepting ids, (id, label) pairs, or Elements."""

    def coerce(item: Union[str, Element, tuple[str, str]]) -> Element:
        if isinstance(item, Element):
            return item
        if isinstance(item, str):
            return Element(item)
        return Element(*item)

    return Hierarchy(
        goal=goal,
        criteria=tuple(coerce(c) for c in criteria),
        alternatives=tuple(coerce(a) for a in alternatives),
    )


@dataclass(frozen=True)
class DecisionModel:
    """A hierarchy plus every judgment matrix needed to rank its alternatives."""

    hierarchy: Hierarchy
    criteria_matrix: PairwiseMatrix
    alternative_matrices: Mapping[str, PairwiseMatrix]

    def __post_init__(self) -> None:
        object.__setattr__(self, "alternative_matrices", dict(self.alternative_matrices))
        crit_ids = self.hierarchy.criterion_ids
        alt_ids = self.hierarchy.alternative_ids
        if self.criteria_matrix.ids != crit_ids:
            raise ModelStructureError(
                f"criteria matrix ids {self.criteria_matrix.ids} do not match hierarchy criteria {crit_ids}"
            )
        got = set(self.alternative_matrices)
        expected = set(crit_ids)
        if got != expected:
            missing = sorted(expected - got)
            extra = sorted(got - expected)
            parts = []
            if missing:
                parts.append(f"missing alternative matrix for: {', '.join(missing)}")
            if extra:
                parts.append(f"unknown criterion key(s): {', '.join(extra)}")
            raise ModelStructureError("; ".join(parts))
        for cid, m in self.alternative_matrices.items():
            if m.ids != alt_ids:
                raise ModelStructureError(
                    f"alternative matrix for {cid!r} has ids {m.ids}, expected {alt_ids}"
                )
