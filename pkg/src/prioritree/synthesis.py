"""Aggregation of criteria weights and per-criterion priorities into a ranking.

Final score of an alternative is the criteria-weight vector dotted with that
alternative's row of per-criterion priorities. Ranking is descending by
score with deterministic lexicographic tie-breaks, and a one-at-a-time weight
sweep quantifies how stable the winner is.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Sequence

from .core import DecisionError
from .engine import ConsistencyReport, PriorityVector

SCORE_SUM_TOL = 1e-6


class DimensionMismatchError(DecisionError):
    pass


class IdMismatchError(DecisionError):
    pass


class UnknownCriterionError(DecisionError):
    pass


@dataclass(frozen=True)
class RankedAlternative:
    id: str
    score: float
    position: int
    tied: bool


@dataclass(frozen=True)
class SynthesisResult:
    """Final scores, ranking, and the inputs they were mixed from.

    per_criterion_scores is row-per-alternative, column-per-criterion, in the
    order of alternative_ids and criteria_weights.ids. consistency carries one
    report per source matrix when the caller derived the inputs from matrices.
    """

    alternative_ids: tuple[str, ...]
    scores: tuple[float, ...]
    ranking: tuple[RankedAlternative, ...]
    criteria_weights: PriorityVector
    per_criterion_scores: tuple[tuple[float, ...], ...]
    consistency: Mapping[str, ConsistencyReport] | None = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "alternative_ids", tuple(self.alternative_ids))
        object.__setattr__(self, "scores", tuple(float(s) for s in self.scores))
        object.__setattr__(
            self, "per_criterion_scores", tuple(tuple(row) for row in self.per_criterion_scores)
        )
        if self.consistency is not None:
            object.__setattr__(self, "consistency", dict(self.consistency))
        total = sum(self.scores)
        if abs(total - 1.0) > SCORE_SUM_TOL:
            raise ValueError(f"scores must sum to 1 within {SCORE_SUM_TOL}, got {total!r}")
        if sorted(r.id for r in self.ranking) != sorted(self.alternative_ids):
            raise ValueError("ranking must be a permutation of the alternatives")
        ordered = [r.score for r in self.ranking]
        if any(ordered[i] < ordered[i + 1] for i in range(len(ordered) - 1)):
            raise ValueError("ranking scores must be non-increasing")

    @property
    def winner(self) -> str:
        return self.ranking[0].id

    def score_of(self, alternative_id: str) -> float:
        return self.scores[self.alternative_ids.index(alternative_id)]


def rank(ids: Sequence[str], scores: Sequence[float]) -> tuple[RankedAlternative, ...]:
    """Order alternatives by descending score.

    Exact score ties are broken by ascending id, and every member of a tied
    group is flagged.
    """
    if len(ids) != len(scores):
        raise DimensionMismatchError("ids and scores must have the same length")
    pairs = sorted(zip(ids, scores), key=lambda p: (-p[1], p[0]))
    by_score: dict[float, int] = {}
    for _, s in pairs:
        by_score[s] = by_score.get(s, 0) + 1
    return tuple(
        RankedAlternative(id=i, score=s, position=pos, tied=by_score[s] > 1)
        for pos, (i, s) in enumerate(pairs, start=1)
    )


def synthesize(
    criteria_weights: PriorityVector,
    alt_priorities: Mapping[str, PriorityVector],
    consistency: Mapping[str, ConsistencyReport] | None = None,
) -> SynthesisResult:
    """Mix per-criterion alternative priorities by the criteria weights.

    score[a] = sum over criteria c of weight[c] * priority[c][a]. Requires one
    alternative vector per criterion, all over the same alternatives.
    """
    crit_ids = criteria_weights.ids
    if len(crit_ids) < 2:
        raise DimensionMismatchError("need at least 2 criteria")
    if set(alt_priorities) != set(crit_ids):
        missing = sorted(set(crit_ids) - set(alt_priorities))
        extra = sorted(set(alt_priorities) - set(crit_ids))
        raise IdMismatchError(
            f"alternative vectors do not match criteria (missing: {missing}, unknown: {extra})"
        )
    alt_ids = alt_priorities[crit_ids[0]].ids
    if len(alt_ids) < 2:
        raise DimensionMismatchError("need at least 2 alternatives")
    for cid in crit_ids:
        if alt_priorities[cid].ids != alt_ids:
            raise IdMismatchError(
                f"vector for criterion {cid!r} is over {alt_priorities[cid].ids}, expected {alt_ids}"
            )
    scores = tuple(
        sum(criteria_weights.weights[c] * alt_priorities[cid].weights[a] for c, cid in enumerate(crit_ids))
        for a, _ in enumerate(alt_ids)
    )
    grid = tuple(
        tuple(alt_priorities[cid].weights[a] for cid in crit_ids) for a in range(len(alt_ids))
    )
    return SynthesisResult(
        alternative_ids=alt_ids,
        scores=scores,
        ranking=rank(alt_ids, scores),
        criteria_weights=criteria_weights,
        per_criterion_scores=grid,
        consistency=consistency,
    )


def reweighted(result: SynthesisResult, criterion_id: str, weight: float) -> SynthesisResult:
    """Re-synthesize with one criterion's weight pinned to `weight` and the
    remaining criteria sharing 1 - weight in their existing proportions."""
    crit_ids = result.criteria_weights.ids
    if criterion_id not in crit_ids:
        raise UnknownCriterionError(f"unknown criterion {criterion_id!r}")
    if not 0.0 <= weight <= 1.0:
        raise ValueError(f"weight must be in [0, 1], got {weight!r}")
    t = crit_ids.index(criterion_id)
    old = result.criteria_weights.weights
    rest_total = sum(w for c, w in enumerate(old) if c != t)
    if rest_total > 0:
        new_weights = [
            weight if c == t else old[c] / rest_total * (1.0 - weight) for c in range(len(old))
        ]
    else:
        share = (1.0 - weight) / (len(old) - 1)
        new_weights = [weight if c == t else share for c in range(len(old))]
    alt_vectors = {
        cid: PriorityVector(
            ids=result.alternative_ids,
            weights=tuple(result.per_criterion_scores[a][c] for a in range(len(result.alternative_ids))),
        )
        for c, cid in enumerate(crit_ids)
    }
    return synthesize(
        PriorityVector(ids=crit_ids, weights=tuple(new_weights)),
        alt_vectors,
        consistency=result.consistency,
    )


@dataclass(frozen=True)
class SensitivityReport:
    """Winner stability under a one-at-a-time sweep of one criterion's weight.

    stable_low/stable_high bound the interval of the swept weight inside which
    the baseline winner keeps winning. crossover_weight is the nearest interior
    boundary of that interval (None when the winner holds over all of [0, 1]),
    with challenger the alternative that takes over just beyond it.
    """

    criterion_id: str
    current_weight: float
    winner: str
    stable_low: float
    stable_high: float
    crossover_weight: float | None
    challenger: str | None


def weight_sensitivity(
    result: SynthesisResult,
    criterion_id: str,
    *,
    resolution: float = 1e-4,
    refine_tolerance: float = 1e-8,
) -> SensitivityReport:
    """Sweep one criterion's weight over [0, 1] and find where the winner flips.

    The remaining criteria keep their relative proportions and share the
    leftover 1 - w. The sweep walks a uniform grid at `resolution` and refines
    each boundary by bisection to `refine_tolerance`, reporting boundary values
    on the still-winning side.
    """
    crit_ids = result.criteria_weights.ids
    if criterion_id not in crit_ids:
        raise UnknownCriterionError(f"unknown criterion {criterion_id!r}")
    t = crit_ids.index(criterion_id)
    w0 = result.criteria_weights.weights[t]
    others = [c for c in range(len(crit_ids)) if c != t]
    rest_total = sum(result.criteria_weights.weights[c] for c in others)
    if rest_total > 0:
        rest_share = [result.criteria_weights.weights[c] / rest_total for c in others]
    else:
        rest_share = [1.0 / len(others)] * len(others)

    alt_ids = result.alternative_ids
    target_col = [result.per_criterion_scores[a][t] for a in range(len(alt_ids))]
    rest_mix = [
        sum(share * result.per_criterion_scores[a][c] for share, c in zip(rest_share, others))
        for a in range(len(alt_ids))
    ]

    def winner_at(w: float) -> str:
        scores = [w * target_col[a] + (1.0 - w) * rest_mix[a] for a in range(len(alt_ids))]
        best = max(scores)
        return min(aid for aid, s in zip(alt_ids, scores) if s == best)

    base = winner_at(w0)

    def refine(same: float, diff: float) -> tuple[float, str]:
        """Shrink [same, diff] until within tolerance; return boundary + challenger."""
        challenger = winner_at(diff)
        while abs(diff - same) > refine_tolerance:
            mid = (same + diff) / 2.0
            if winner_at(mid) == base:
                same = mid
            else:
                diff = mid
                challenger = winner_at(mid)
        return same, challenger

    steps = round(1.0 / resolution)

    hi, hi_challenger = 1.0, None
    first_diff = next(
        (k / steps for k in range(int(w0 * steps) + 1, steps + 1)
         if k / steps > w0 and winner_at(k / steps) != base),
        None,
    )
    if first_diff is not None:
        hi, hi_challenger = refine(max(w0, first_diff - resolution), first_diff)

    lo, lo_challenger = 0.0, None
    first_diff = next(
        (k / steps for k in range(int(w0 * steps), -1, -1)
         if k / steps < w0 and winner_at(k / steps) != base),
        None,
    )
    if first_diff is not None:
        lo, lo_challenger = refine(min(w0, first_diff + resolution), first_diff)

    crossover: float | None = None
    challenger: str | None = None
    candidates = []
    if lo > 0.0 and lo_challenger is not None:
        candidates.append((w0 - lo, 1, lo, lo_challenger))
    if hi < 1.0 and hi_challenger is not None:
        candidates.append((hi - w0, 0, hi, hi_challenger))
    if candidates:
        # nearest boundary to the current weight; prefer the upper one on ties
        _, _, crossover, challenger = min(candidates, key=lambda c: (c[0], c[1]))

    return SensitivityReport(
        criterion_id=criterion_id,
        current_weight=w0,
        winner=base,
        stable_low=lo,
        stable_high=hi,
        crossover_weight=crossover,
        challenger=challenger,
    )
