"""Stateful judgment elicitation: enter pairwise comparisons one at a time,
recompute priorities and consistency on every edit, and surface the judgment
triads that contribute most to inconsistency.

A session is a single-writer object; snapshots taken from it are immutable
and safe to share.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Union

from .core import (
    BadIndexError,
    DecisionError,
    DecisionModel,
    Hierarchy,
    InvalidHierarchyError,
    Judgment,
    PairwiseMatrix,
    SCALE,
    build_matrix,
)
from .engine import (
    ConsistencyReport,
    DimensionUnsupportedError,
    PriorityVector,
    consistency,
    derive_priorities,
)
from .synthesis import SynthesisResult, synthesize

CRITERIA_MATRIX_ID = "criteria"


class UnknownMatrixError(DecisionError):
    pass


class TooSmallError(DecisionError):
    """Triad analysis needs at least 3 elements."""


@dataclass(frozen=True)
class MatrixStatus:
    matrix_id: str
    size: int
    entered: int
    required: int
    pending: tuple[tuple[str, str], ...]

    @property
    def completeness(self) -> float:
        return self.entered / self.required

    @property
    def complete(self) -> bool:
        return self.entered == self.required


@dataclass(frozen=True)
class EvaluationSnapshot:
    """Everything derivable from a session at one revision.

    Priorities and consistency are present per complete matrix; synthesis only
    once every matrix is complete.
    """

    revision: int
    statuses: Mapping[str, MatrixStatus]
    criteria_priorities: PriorityVector | None
    alternative_priorities: Mapping[str, PriorityVector]
    consistency: Mapping[str, ConsistencyReport]
    synthesis: SynthesisResult | None

    def __post_init__(self) -> None:
        object.__setattr__(self, "statuses", dict(self.statuses))
        object.__setattr__(self, "alternative_priorities", dict(self.alternative_priorities))
        object.__setattr__(self, "consistency", dict(self.consistency))

    @property
    def complete(self) -> bool:
        return self.synthesis is not None


class ElicitationSession:
    """Judgment collection for one hierarchy: a criteria matrix plus one
    alternatives matrix per criterion, addressed by matrix id ("criteria" or
    the criterion id)."""

    def __init__(self, hierarchy: Hierarchy):
        if CRITERIA_MATRIX_ID in hierarchy.criterion_ids:
            raise InvalidHierarchyError(
                f"criterion id {CRITERIA_MATRIX_ID!r} is reserved for the criteria matrix"
            )
        self.hierarchy = hierarchy
        self._judgments: dict[str, dict[tuple[int, int], Judgment]] = {
            CRITERIA_MATRIX_ID: {},
            **{cid: {} for cid in hierarchy.criterion_ids},
        }
        self._revision = 0

    @property
    def revision(self) -> int:
        return self._revision

    @property
    def matrix_ids(self) -> tuple[str, ...]:
        return (CRITERIA_MATRIX_ID, *self.hierarchy.criterion_ids)

    def element_ids(self, matrix_id: str) -> tuple[str, ...]:
        if matrix_id == CRITERIA_MATRIX_ID:
            return self.hierarchy.criterion_ids
        if matrix_id in self._judgments:
            return self.hierarchy.alternative_ids
        raise UnknownMatrixError(f"unknown matrix {matrix_id!r}")

    def required_judgments(self, matrix_id: str | None = None) -> int:
        """Pairs needed for one matrix, or for the whole session when id is None."""
        if matrix_id is not None:
            n = len(self.element_ids(matrix_id))
            return n * (n - 1) // 2
        return sum(self.required_judgments(mid) for mid in self.matrix_ids)

    def _resolve(self, matrix_id: str, element: Union[int, str]) -> int:
        ids = self.element_ids(matrix_id)
        if isinstance(element, int) and not isinstance(element, bool):
            if not 0 <= element < len(ids):
                raise BadIndexError(f"index {element} out of range for matrix {matrix_id!r}")
            return element
        if isinstance(element, str):
            try:
                return ids.index(element)
            except ValueError:
                raise BadIndexError(f"unknown element {element!r} in matrix {matrix_id!r}") from None
        raise BadIndexError(f"bad element reference {element!r}")

    def set_judgment(
        self, matrix_id: str, a: Union[int, str], b: Union[int, str], value: Judgment
    ) -> "ElicitationSession":
        """Record one comparison; the reciprocal cell follows automatically.

        A call with a below b stores (a, b, value); the reversed orientation is
        stored as its reciprocal, so both spellings are equivalent. Re-setting
        an entered pair overwrites it. Every successful call bumps revision.
        """
        if not isinstance(value, Judgment):
            raise DecisionError(f"expected a Judgment, got {type(value).__name__}")
        i = self._resolve(matrix_id, a)
        j = self._resolve(matrix_id, b)
        if i == j:
            raise BadIndexError("diagonal cells are fixed at 1 and cannot be set")
        if i > j:
            i, j = j, i
            value = value.reciprocal()
        self._judgments[matrix_id][(i, j)] = value
        self._revision += 1
        return self

    def judgment(self, matrix_id: str, a: Union[int, str], b: Union[int, str]) -> Judgment | None:
        """Current value of any cell: diagonal is 1, unentered pairs are None."""
        i = self._resolve(matrix_id, a)
        j = self._resolve(matrix_id, b)
        if i == j:
            return Judgment(Fraction(1))
        flipped = i > j
        if flipped:
            i, j = j, i
        v = self._judgments[matrix_id].get((i, j))
        if v is None:
            return None
        return v.reciprocal() if flipped else v

    def entered_pairs(self, matrix_id: str) -> tuple[tuple[str, str, Judgment], ...]:
        ids = self.element_ids(matrix_id)
        return tuple(
            (ids[i], ids[j], v) for (i, j), v in sorted(self._judgments[matrix_id].items())
        )

    def status(self, matrix_id: str) -> MatrixStatus:
        ids = self.element_ids(matrix_id)
        entered = self._judgments[matrix_id]
        pending = tuple(
            (ids[i], ids[j])
            for i in range(len(ids))
            for j in range(i + 1, len(ids))
            if (i, j) not in entered
        )
        return MatrixStatus(
            matrix_id=matrix_id,
            size=len(ids),
            entered=len(entered),
            required=self.required_judgments(matrix_id),
            pending=pending,
        )

    def matrix(self, matrix_id: str) -> PairwiseMatrix:
        """Materialize a complete matrix; raises MissingPairError when pairs are pending."""
        ids = self.element_ids(matrix_id)
        return build_matrix(ids, [(i, j, v) for (i, j), v in self._judgments[matrix_id].items()])

    def to_model(self) -> DecisionModel:
        return DecisionModel(
            hierarchy=self.hierarchy,
            criteria_matrix=self.matrix(CRITERIA_MATRIX_ID),
            alternative_matrices={
                cid: self.matrix(cid) for cid in self.hierarchy.criterion_ids
            },
        )

    def replace_state(self, other: "ElicitationSession") -> "ElicitationSession":
        """Adopt another session's hierarchy and judgments as one mutation.

        The revision keeps counting up from this session's current value.
        """
        self.hierarchy = other.hierarchy
        self._judgments = {mid: dict(pairs) for mid, pairs in other._judgments.items()}
        self._revision += 1
        return self

    def evaluate(self) -> EvaluationSnapshot:
        """Snapshot priorities and consistency for every complete matrix;
        synthesis is included only when the whole model is complete."""
        statuses = {mid: self.status(mid) for mid in self.matrix_ids}
        criteria_pv: PriorityVector | None = None
        alt_pvs: dict[str, PriorityVector] = {}
        reports: dict[str, ConsistencyReport] = {}
        for mid in self.matrix_ids:
            if not statuses[mid].complete:
                continue
            m = self.matrix(mid)
            pv = derive_priorities(m)
            reports[mid] = consistency(m, allow_oversize=True)
            if mid == CRITERIA_MATRIX_ID:
                criteria_pv = pv
            else:
                alt_pvs[mid] = pv
        result: SynthesisResult | None = None
        if all(s.complete for s in statuses.values()):
            assert criteria_pv is not None
            result = synthesize(criteria_pv, alt_pvs, consistency=reports)
        return EvaluationSnapshot(
            revision=self._revision,
            statuses=statuses,
            criteria_priorities=criteria_pv,
            alternative_priorities=alt_pvs,
            consistency=reports,
            synthesis=result,
        )


def create_session(hierarchy: Hierarchy) -> ElicitationSession:
    """Start an empty session: diagonals fixed, every off-diagonal pair pending."""
    return ElicitationSession(hierarchy)


def session_from_model(model: DecisionModel) -> ElicitationSession:
    """Session pre-filled with every judgment of a complete model."""
    s = ElicitationSession(model.hierarchy)
    for mid, m in ((CRITERIA_MATRIX_ID, model.criteria_matrix), *model.alternative_matrices.items()):
        for i in range(m.n):
            for j in range(i + 1, m.n):
                s.set_judgment(mid, i, j, m.cells[i][j])
    return s


def evaluate_model(model: DecisionModel) -> EvaluationSnapshot:
    """Full pipeline on a complete model: priorities, consistency, synthesis."""
    return session_from_model(model).evaluate()


def set_judgment(
    s: ElicitationSession, matrix_id: str, a: Union[int, str], b: Union[int, str], value: Judgment
) -> ElicitationSession:
    return s.set_judgment(matrix_id, a, b, value)


def evaluate(s: ElicitationSession) -> EvaluationSnapshot:
    return s.evaluate()


@dataclass(frozen=True)
class Hotspot:
    """One judgment triad ranked by how far it is from multiplicative
    consistency, with a scale-snapped replacement for its first cell."""

    triad: tuple[str, str, str]
    deviation: float
    cell: tuple[str, str]
    suggested: Judgment


_LOG_SCALE = tuple((math.log(float(v)), Judgment(v)) for v in SCALE)


def snap_to_scale(ratio: float) -> Judgment:
    """Nearest legal intensity to a positive ratio, measured in log space
    (symmetric in reciprocals); ties resolve to the smaller value."""
    if ratio <= 0:
        raise ValueError("ratio must be positive")
    target = math.log(ratio)
    return min(_LOG_SCALE, key=lambda lv: abs(lv[0] - target))[1]


def inconsistency_hotspots(m: PairwiseMatrix, k: int) -> tuple[Hotspot, ...]:
    """Top-k triads (i, j, l) by |ln a_ij + ln a_jl - ln a_il|.

    For each triad the suggested value is the consistent replacement for cell
    (i, j), namely a_il / a_jl, snapped to the nearest scale value. Equal
    deviations order by ascending triad indices.
    """
    if m.n < 3:
        raise TooSmallError(f"triad analysis needs at least 3 elements, matrix has {m.n}")
    logs = [[math.log(float(c)) for c in row] for row in m.cells]
    hotspots = []
    for i in range(m.n):
        for j in range(i + 1, m.n):
            for l in range(j + 1, m.n):
                deviation = abs(logs[i][j] + logs[j][l] - logs[i][l])
                ratio = float(m.cells[i][l].value / m.cells[j][l].value)
                hotspots.append(
                    (
                        -deviation,
                        (i, j, l),
                        Hotspot(
                            triad=(m.ids[i], m.ids[j], m.ids[l]),
                            deviation=deviation,
                            cell=(m.ids[i], m.ids[j]),
                            suggested=snap_to_scale(ratio),
                        ),
                    )
                )
    hotspots.sort(key=lambda h: (h[0], h[1]))
    return tuple(h[2] for h in hotspots[: max(k, 0)])
