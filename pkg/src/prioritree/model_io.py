"""Serialization of decision models, report rendering, and the bundled
cloud-service case-study fixture.

Documents are JSON (schema version 1) with judgments as exact "p/q" strings,
never floats. Saving is canonical: sorted keys, lowest-terms tokens,
upper-triangle pairs in row-major order, 2-space indent. The same shape,
with partial pair lists allowed, carries in-progress sessions.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from typing import Any, Mapping, Sequence, Union

from .core import (
    DecisionError,
    DecisionModel,
    Element,
    Hierarchy,
    InvalidHierarchyError,
    Judgment,
    MalformedJudgmentError,
    MissingPairError,
    OutOfScaleError,
    build_matrix,
    judgment_from_token,
)
from .engine import CR_THRESHOLD, ConsistencyReport
from .session import CRITERIA_MATRIX_ID, ElicitationSession, EvaluationSnapshot, create_session

FORMAT_VERSION = 1

# Judgment-value problems surface under this name at the io boundary.
ScaleError = OutOfScaleError


class ParseError(DecisionError):
    """Input is not valid JSON; carries the position when known."""

    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        if line is not None:
            message = f"{message} (line {line}, column {column})"
        super().__init__(message)
        self.line = line
        self.column = column


class SchemaError(DecisionError):
    """JSON is well-formed but does not describe a valid document."""


class IncompleteForCsvError(DecisionError):
    """CSV reports need a completed synthesis."""


@dataclass(frozen=True)
class PairEntry:
    a: str
    b: str
    value: Judgment


@dataclass(frozen=True)
class ModelDocument:
    """Parsed document, always in normalized orientation and order."""

    format_version: int
    hierarchy: Hierarchy
    criteria_pairs: tuple[PairEntry, ...]
    alternative_pairs: Mapping[str, tuple[PairEntry, ...]]
    metadata: Mapping[str, Any] | None = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "alternative_pairs", dict(self.alternative_pairs))
        if self.metadata is not None:
            object.__setattr__(self, "metadata", dict(self.metadata))


def _require(obj: Mapping[str, Any], key: str, kind: type, where: str) -> Any:
    if key not in obj:
        raise SchemaError(f"{where}: missing required field {key!r}")
    value = obj[key]
    if not isinstance(value, kind) or isinstance(value, bool) and kind is int:
        raise SchemaError(f"{where}: field {key!r} must be {kind.__name__}")
    return value


def _parse_elements(raw: Any, layer: str) -> tuple[Element, ...]:
    if not isinstance(raw, list):
        raise SchemaError(f"{layer} must be an array")
    elements = []
    for item in raw:
        if isinstance(item, str):
            elements.append(Element(item))
        elif isinstance(item, dict):
            eid = _require(item, "id", str, layer)
            label = item.get("label", "")
            if not isinstance(label, str):
                raise SchemaError(f"{layer} {eid!r}: label must be a string")
            elements.append(Element(eid, label))
        else:
            raise SchemaError(f"{layer} entries must be objects or id strings")
    return tuple(elements)


def _parse_pairs(raw: Any, ids: Sequence[str], where: str) -> tuple[PairEntry, ...]:
    """Validate, reorient to upper triangle, and sort pairs row-major."""
    if not isinstance(raw, list):
        raise SchemaError(f"{where}: pairs must be an array")
    index = {eid: k for k, eid in enumerate(ids)}
    seen: dict[tuple[int, int], PairEntry] = {}
    for item in raw:
        if not isinstance(item, dict):
            raise SchemaError(f"{where}: each pair must be an object")
        a = _require(item, "a", str, where)
        b = _require(item, "b", str, where)
        token = _require(item, "value", str, where)
        for name in (a, b):
            if name not in index:
                raise SchemaError(f"{where}: unknown element {name!r} in pair ({a}, {b})")
        if a == b:
            raise SchemaError(f"{where}: pair ({a}, {b}) compares an element with itself")
        try:
            value = judgment_from_token(token)
        except MalformedJudgmentError as exc:
            raise SchemaError(f"{where}: pair ({a}, {b}): {exc}") from exc
        except OutOfScaleError as exc:
            raise ScaleError(f"{where}: pair ({a}, {b}): {exc}") from exc
        i, j = index[a], index[b]
        if i > j:
            i, j = j, i
            a, b = b, a
            value = value.reciprocal()
        if (i, j) in seen:
            raise SchemaError(
                f"{where}: judgment for cells ({a}, {b}) and ({b}, {a}) given more than once"
            )
        seen[(i, j)] = PairEntry(a=a, b=b, value=value)
    return tuple(seen[key] for key in sorted(seen))


def parse_document(data: Union[bytes, str]) -> ModelDocument:
    """Parse and validate a document; pair lists may be partial.

    Raises ParseError for malformed JSON, SchemaError for structural problems,
    ScaleError for off-scale judgment values.
    """
    if isinstance(data, bytes):
        data = data.decode("utf-8")
    try:
        raw = json.loads(data)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, line=exc.lineno, column=exc.colno) from exc
    if not isinstance(raw, dict):
        raise SchemaError("document root must be an object")
    version = _require(raw, "version", int, "document")
    if version != FORMAT_VERSION:
        raise SchemaError(f"unsupported document version {version}, expected {FORMAT_VERSION}")
    goal = _require(raw, "goal", str, "document")
    try:
        hier = Hierarchy(
            goal=goal,
            criteria=_parse_elements(_require(raw, "criteria", list, "document"), "criteria"),
            alternatives=_parse_elements(
                _require(raw, "alternatives", list, "document"), "alternatives"
            ),
        )
    except InvalidHierarchyError as exc:
        raise SchemaError(str(exc)) from exc
    cm = _require(raw, "criteria_matrix", dict, "document")
    criteria_pairs = _parse_pairs(
        _require(cm, "pairs", list, "criteria_matrix"), hier.criterion_ids, "criteria_matrix"
    )
    am = _require(raw, "alternative_matrices", dict, "document")
    missing = [cid for cid in hier.criterion_ids if cid not in am]
    if missing:
        raise SchemaError(f"missing alternative matrix for criterion: {', '.join(missing)}")
    extra = [key for key in am if key not in hier.criterion_ids]
    if extra:
        raise SchemaError(f"alternative matrix for unknown criterion: {', '.join(sorted(extra))}")
    alternative_pairs = {
        cid: _parse_pairs(am[cid], hier.alternative_ids, f"alternative matrix {cid!r}")
        for cid in hier.criterion_ids
    }
    metadata = raw.get("metadata")
    if metadata is not None and not isinstance(metadata, dict):
        raise SchemaError("metadata must be an object")
    return ModelDocument(
        format_version=version,
        hierarchy=hier,
        criteria_pairs=criteria_pairs,
        alternative_pairs=alternative_pairs,
        metadata=metadata,
    )


def render_document(doc: ModelDocument) -> bytes:
    """Canonical UTF-8 bytes: sorted keys, 2-space indent, lowest-terms tokens."""
    payload: dict[str, Any] = {
        "version": doc.format_version,
        "goal": doc.hierarchy.goal,
        "criteria": [{"id": e.id, "label": e.label} for e in doc.hierarchy.criteria],
        "alternatives": [{"id": e.id, "label": e.label} for e in doc.hierarchy.alternatives],
        "criteria_matrix": {
            "pairs": [{"a": p.a, "b": p.b, "value": p.value.token} for p in doc.criteria_pairs]
        },
        "alternative_matrices": {
            cid: [{"a": p.a, "b": p.b, "value": p.value.token} for p in pairs]
            for cid, pairs in doc.alternative_pairs.items()
        },
    }
    if doc.metadata is not None:
        payload["metadata"] = doc.metadata
    return (json.dumps(payload, indent=2, sort_keys=True, ensure_ascii=False) + "\n").encode("utf-8")


def document_to_model(doc: ModelDocument) -> DecisionModel:
    """Strict conversion: every matrix must be complete."""

    def matrix(ids: tuple[str, ...], pairs: tuple[PairEntry, ...], where: str):
        index = {eid: k for k, eid in enumerate(ids)}
        try:
            return build_matrix(ids, [(index[p.a], index[p.b], p.value) for p in pairs])
        except MissingPairError as exc:
            raise SchemaError(f"{where}: {exc}") from exc

    return DecisionModel(
        hierarchy=doc.hierarchy,
        criteria_matrix=matrix(doc.hierarchy.criterion_ids, doc.criteria_pairs, "criteria_matrix"),
        alternative_matrices={
            cid: matrix(doc.hierarchy.alternative_ids, pairs, f"alternative matrix {cid!r}")
            for cid, pairs in doc.alternative_pairs.items()
        },
    )


def model_to_document(
    model: DecisionModel, metadata: Mapping[str, Any] | None = None
) -> ModelDocument:
    def pairs(m) -> tuple[PairEntry, ...]:
        return tuple(
            PairEntry(a=m.ids[i], b=m.ids[j], value=m.cells[i][j])
            for i in range(m.n)
            for j in range(i + 1, m.n)
        )

    return ModelDocument(
        format_version=FORMAT_VERSION,
        hierarchy=model.hierarchy,
        criteria_pairs=pairs(model.criteria_matrix),
        alternative_pairs={
            cid: pairs(model.alternative_matrices[cid]) for cid in model.hierarchy.criterion_ids
        },
        metadata=metadata,
    )


def load_model(data: Union[bytes, str]) -> DecisionModel:
    """Parse a complete document into a fully validated model."""
    return document_to_model(parse_document(data))


def save_model(model: DecisionModel, metadata: Mapping[str, Any] | None = None) -> bytes:
    """Canonical, byte-deterministic rendering of a model."""
    return render_document(model_to_document(model, metadata))


def session_to_document(
    session: ElicitationSession, metadata: Mapping[str, Any] | None = None
) -> ModelDocument:
    """Document capturing a session's judgments, complete or not."""
    return ModelDocument(
        format_version=FORMAT_VERSION,
        hierarchy=session.hierarchy,
        criteria_pairs=tuple(
            PairEntry(a, b, v) for a, b, v in session.entered_pairs(CRITERIA_MATRIX_ID)
        ),
        alternative_pairs={
            cid: tuple(PairEntry(a, b, v) for a, b, v in session.entered_pairs(cid))
            for cid in session.hierarchy.criterion_ids
        },
        metadata=metadata,
    )


def session_from_document(doc: ModelDocument) -> ElicitationSession:
    """Session pre-loaded with a document's judgments; pairs may be partial."""
    s = create_session(doc.hierarchy)
    crit_index = {eid: k for k, eid in enumerate(doc.hierarchy.criterion_ids)}
    alt_index = {eid: k for k, eid in enumerate(doc.hierarchy.alternative_ids)}
    for p in doc.criteria_pairs:
        s.set_judgment(CRITERIA_MATRIX_ID, crit_index[p.a], crit_index[p.b], p.value)
    for cid, pairs in doc.alternative_pairs.items():
        for p in pairs:
            s.set_judgment(cid, alt_index[p.a], alt_index[p.b], p.value)
    return s


def _fmt(x: float) -> str:
    return f"{x:.3f}"


def _consistency_lines(reports: Mapping[str, ConsistencyReport]) -> list[str]:
    lines = ["Consistency (threshold CR <= %.2f)" % CR_THRESHOLD]
    width = max(len(mid) for mid in reports)
    header = f"  {'matrix'.ljust(width)}  lambda_max      CI      CR  verdict"
    lines.append(header)
    for mid, rep in reports.items():
        cr = "   n/a" if rep.cr is None else f"{rep.cr:6.4f}"
        lines.append(
            f"  {mid.ljust(width)}  {rep.lambda_max:10.4f}  {rep.ci:6.4f}  {cr}  {rep.verdict}"
        )
    return lines


def _text_report(snapshot: EvaluationSnapshot) -> str:
    lines: list[str] = []
    if snapshot.synthesis is not None:
        syn = snapshot.synthesis
        crit_ids = syn.criteria_weights.ids
        lines.append("Synthesis results")
        lines.append("")
        name_width = max(
            [len("weights")] + [len(a) for a in syn.alternative_ids]
        )
        col_width = max([6] + [len(c) for c in crit_ids])
        header = " ".join(c.rjust(col_width) for c in crit_ids)
        lines.append(f"{''.ljust(name_width)}  {header}  {'Result'.rjust(6)}")
        weights_row = " ".join(_fmt(w).rjust(col_width) for w in syn.criteria_weights.weights)
        lines.append(f"{'weights'.ljust(name_width)}  {weights_row}")
        for a, aid in enumerate(syn.alternative_ids):
            row = " ".join(_fmt(v).rjust(col_width) for v in syn.per_criterion_scores[a])
            lines.append(f"{aid.ljust(name_width)}  {row}  {_fmt(syn.scores[a]).rjust(6)}")
        lines.append("")
        ranked = ", ".join(
            f"{r.position}. {r.id} ({_fmt(r.score)}{', tied' if r.tied else ''})"
            for r in syn.ranking
        )
        lines.append(f"Ranking: {ranked}")
        lines.append(f"Top alternative: {syn.winner}")
    else:
        total_required = sum(s.required for s in snapshot.statuses.values())
        total_entered = sum(s.entered for s in snapshot.statuses.values())
        lines.append(
            f"Model incomplete: {total_entered} of {total_required} judgments entered"
        )
        lines.append("")
        width = max(len(mid) for mid in snapshot.statuses)
        for mid, st in snapshot.statuses.items():
            pct = f"{100.0 * st.completeness:5.1f}%"
            detail = "" if st.complete else f"  pending: {len(st.pending)}"
            lines.append(f"  {mid.ljust(width)}  {pct} ({st.entered}/{st.required}){detail}")
    if snapshot.consistency:
        lines.append("")
        lines.extend(_consistency_lines(snapshot.consistency))
    lines.append("")
    return "\n".join(lines)


def _csv_report(snapshot: EvaluationSnapshot) -> str:
    if snapshot.synthesis is None:
        raise IncompleteForCsvError("csv report needs a complete model; some judgments are pending")
    buf = io.StringIO()
    writer = csv.writer(buf)
    writer.writerow(["alternative", "score", "rank", "tied"])
    for r in snapshot.synthesis.ranking:
        writer.writerow([r.id, f"{r.score:.6f}", r.position, "yes" if r.tied else "no"])
    return buf.getvalue()


def render_report(snapshot: EvaluationSnapshot, format: str = "text") -> bytes:
    """Human-readable table or machine CSV for an evaluation snapshot.

    The text form mirrors the synthesis table (criteria-weight row, one row
    per alternative, Result column) and appends per-matrix consistency; it
    accepts partial snapshots and prints completeness instead. CSV is
    RFC-4180 (one row per alternative, ranking order) and requires synthesis.
    """
    if format == "text":
        return _text_report(snapshot).encode("utf-8")
    if format == "csv":
        return _csv_report(snapshot).encode("utf-8")
    raise ValueError(f"unknown report format {format!r}")


def nhs_fixture_path() -> Path:
    """Location of the bundled NHS cloud-service selection model."""
    return Path(str(resources.files("prioritree") / "fixtures" / "nhs.ahp.json"))


def load_nhs_model() -> DecisionModel:
    return load_model(nhs_fixture_path().read_bytes())
