"""Structured-text document formats for measures, patterns, instances, solutions.

All files are UTF-8 JSON with a top-level ``format_version`` of 1 and every
rational written as an exact fraction string, never a float.  Writing is
canonical (sorted keys, fixed indentation, trailing newline) so that
read-then-write is byte-stable on canonical documents.  Readers enforce
canonical form: measures are canonicalized and pattern point lists are
reduced to their foundation.

Schema problems raise :class:`SchemaError` carrying the offending field
path, e.g. ``localized[0].measure[2].mass``.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Optional

from .extensions import Condition, ConditionReport
from .lattice import Pattern, foundation
from .measures import (
    AtomicMeasure1,
    AtomicMeasure2,
    MeasureError,
    Rational,
    format_rational,
    parse_rational,
)
from .moments import GammaTable, LatticePoint, WeightDiagram
from .solver import INSOLUBLE, InstanceError, RompInstance, RompSolution, SUBNORMAL

FORMAT_VERSION = 1


class SchemaError(ValueError):
    """Document that does not match its schema; ``path`` names the field."""

    def __init__(self, path: str, message: str):
        super().__init__(f"{path}: {message}")
        self.path = path


def canonical_json(doc) -> str:
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def _load(text: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError("$", f"not valid JSON: {exc}") from None


def _expect(condition: bool, path: str, message: str):
    if not condition:
        raise SchemaError(path, message)


def _fraction(node, path: str):
    _expect(isinstance(node, str), path, f"expected a fraction string, got {type(node).__name__}")
    try:
        return parse_rational(node)
    except MeasureError as exc:
        raise SchemaError(path, str(exc)) from None


def _nat(node, path: str) -> int:
    _expect(
        isinstance(node, int) and not isinstance(node, bool),
        path,
        f"expected a non-negative integer, got {node!r}",
    )
    _expect(node >= 0, path, f"expected a non-negative integer, got {node!r}")
    return node


def _point(node, path: str) -> LatticePoint:
    _expect(isinstance(node, list) and len(node) == 2, path, "expected a [k1, k2] pair")
    return LatticePoint(_nat(node[0], f"{path}[0]"), _nat(node[1], f"{path}[1]"))


def _check_version(doc, path: str = "$"):
    _expect(isinstance(doc, dict), path, "expected a JSON object")
    version = doc.get("format_version")
    _expect(
        version == FORMAT_VERSION,
        f"{path}.format_version",
        f"expected {FORMAT_VERSION}, got {version!r}",
    )


def _measure2_from_node(node, path: str) -> AtomicMeasure2:
    _expect(isinstance(node, list), path, "expected a list of atom records")
    atoms = []
    for i, rec in enumerate(node):
        rec_path = f"{path}[{i}]"
        _expect(isinstance(rec, dict), rec_path, "expected an atom record object")
        _expect(
            set(rec) == {"s", "t", "mass"}, rec_path, 'expected exactly the keys "s", "t", "mass"'
        )
        atoms.append(
            (
                _fraction(rec["s"], f"{rec_path}.s"),
                _fraction(rec["t"], f"{rec_path}.t"),
                _fraction(rec["mass"], f"{rec_path}.mass"),
            )
        )
    try:
        return AtomicMeasure2(atoms)
    except MeasureError as exc:
        raise SchemaError(path, str(exc)) from None


def _measure1_from_node(node, path: str) -> AtomicMeasure1:
    _expect(isinstance(node, list), path, "expected a list of atom records")
    atoms = []
    for i, rec in enumerate(node):
        rec_path = f"{path}[{i}]"
        _expect(isinstance(rec, dict), rec_path, "expected an atom record object")
        _expect(set(rec) == {"x", "mass"}, rec_path, 'expected exactly the keys "x", "mass"')
        atoms.append(
            (_fraction(rec["x"], f"{rec_path}.x"), _fraction(rec["mass"], f"{rec_path}.mass"))
        )
    try:
        return AtomicMeasure1(atoms)
    except MeasureError as exc:
        raise SchemaError(path, str(exc)) from None


def _measure2_node(m: AtomicMeasure2) -> list:
    return [
        {"s": format_rational(a.s), "t": format_rational(a.t), "mass": format_rational(a.mass)}
        for a in m.atoms
    ]


def _measure1_node(m: AtomicMeasure1) -> list:
    return [{"x": format_rational(a.x), "mass": format_rational(a.mass)} for a in m.atoms]


# -- measure documents --------------------------------------------------------


def measure_to_doc(m: AtomicMeasure2) -> dict:
    return {"format_version": FORMAT_VERSION, "atoms": _measure2_node(m)}


def measure_from_doc(doc) -> AtomicMeasure2:
    _check_version(doc)
    return _measure2_from_node(doc.get("atoms"), "atoms")


# -- pattern documents ---------------------------------------------------------


def pattern_to_doc(pattern: Pattern) -> dict:
    return {
        "format_version": FORMAT_VERSION,
        "points": [[p.k1, p.k2] for p in pattern.foundation],
    }


def pattern_from_doc(doc) -> Pattern:
    """Any generating set is accepted; the foundation is taken on read."""
    _check_version(doc)
    points = doc.get("points")
    _expect(isinstance(points, list) and points, "points", "expected a non-empty list")
    return foundation(_point(node, f"points[{i}]") for i, node in enumerate(points))


# -- gamma table and weight diagram documents ---------------------------------


def gamma_table_to_doc(g: GammaTable) -> dict:
    """Rectangular array of fraction strings, rows indexed by k2, with bounds."""
    max1, max2 = g.max1, g.max2
    rows = []
    for n in range(max2 + 1):
        row = []
        for m in range(max1 + 1):
            value = g.get((m, n))
            row.append(None if value is None else format_rational(value))
        rows.append(row)
    return {"format_version": FORMAT_VERSION, "max1": max1, "max2": max2, "rows": rows}


def gamma_table_from_doc(doc) -> GammaTable:
    _check_version(doc)
    max1 = _nat(doc.get("max1"), "max1")
    max2 = _nat(doc.get("max2"), "max2")
    rows = doc.get("rows")
    _expect(isinstance(rows, list) and len(rows) == max2 + 1, "rows", f"expected {max2 + 1} rows")
    entries = {}
    for n, row in enumerate(rows):
        _expect(
            isinstance(row, list) and len(row) == max1 + 1,
            f"rows[{n}]",
            f"expected {max1 + 1} entries",
        )
        for m, cell in enumerate(row):
            if cell is None:
                continue
            entries[LatticePoint(m, n)] = _fraction(cell, f"rows[{n}][{m}]")
    try:
        return GammaTable(entries)
    except ValueError as exc:
        raise SchemaError("rows", str(exc)) from None


def weight_diagram_to_doc(w: WeightDiagram) -> dict:
    """Two rectangular arrays of squared weights, rows indexed by k2."""
    alpha_rows = [
        [format_rational(w.alpha_at((m, n))) for m in range(w.max1)] for n in range(w.max2 + 1)
    ]
    beta_rows = [
        [format_rational(w.beta_at((m, n))) for m in range(w.max1 + 1)] for n in range(w.max2)
    ]
    return {
        "format_version": FORMAT_VERSION,
        "max1": w.max1,
        "max2": w.max2,
        "alpha_sq": alpha_rows,
        "beta_sq": beta_rows,
    }


def weight_diagram_from_doc(doc) -> WeightDiagram:
    _check_version(doc)
    max1 = _nat(doc.get("max1"), "max1")
    max2 = _nat(doc.get("max2"), "max2")

    def _rows(key, n_rows, n_cols):
        rows = doc.get(key)
        _expect(isinstance(rows, list) and len(rows) == n_rows, key, f"expected {n_rows} rows")
        table = {}
        for n, row in enumerate(rows):
            _expect(
                isinstance(row, list) and len(row) == n_cols,
                f"{key}[{n}]",
                f"expected {n_cols} entries",
            )
            for m, cell in enumerate(row):
                table[LatticePoint(m, n)] = _fraction(cell, f"{key}[{n}][{m}]")
        return table

    alpha = _rows("alpha_sq", max2 + 1, max1)
    beta = _rows("beta_sq", max2, max1 + 1)
    try:
        return WeightDiagram(alpha, beta, max1, max2)
    except ValueError as exc:
        raise SchemaError("$", str(exc)) from None


# -- instance documents --------------------------------------------------------


def instance_to_doc(inst: RompInstance) -> dict:
    return {
        "format_version": FORMAT_VERSION,
        "pattern": [[p.k1, p.k2] for p in inst.pattern.foundation],
        "localized": [
            {"point": [p.k1, p.k2], "measure": _measure2_node(inst.localized[p])}
            for p in inst.pattern.foundation
        ],
        "sigma": _measure1_node(inst.sigma),
        "tau": _measure1_node(inst.tau),
        "gamma": [
            {"point": [p.k1, p.k2], "value": format_rational(v)} for p, v in inst.gamma.items()
        ],
    }


def instance_from_doc(doc) -> RompInstance:
    _check_version(doc)
    points = doc.get("pattern")
    _expect(isinstance(points, list) and points, "pattern", "expected a non-empty list")
    pattern = foundation(_point(node, f"pattern[{i}]") for i, node in enumerate(points))

    localized_node = doc.get("localized")
    _expect(isinstance(localized_node, list), "localized", "expected a list")
    localized = {}
    for i, entry in enumerate(localized_node):
        path = f"localized[{i}]"
        _expect(isinstance(entry, dict), path, "expected an object")
        _expect(
            set(entry) == {"point", "measure"},
            path,
            'expected exactly the keys "point", "measure"',
        )
        point = _point(entry["point"], f"{path}.point")
        _expect(point not in localized, f"{path}.point", f"duplicate localized point {point}")
        localized[point] = _measure2_from_node(entry["measure"], f"{path}.measure")

    sigma = _measure1_from_node(doc.get("sigma"), "sigma")
    tau = _measure1_from_node(doc.get("tau"), "tau")

    gamma_node = doc.get("gamma")
    _expect(isinstance(gamma_node, list), "gamma", "expected a list")
    entries = {}
    for i, entry in enumerate(gamma_node):
        path = f"gamma[{i}]"
        _expect(isinstance(entry, dict), path, "expected an object")
        _expect(set(entry) == {"point", "value"}, path, 'expected exactly the keys "point", "value"')
        point = _point(entry["point"], f"{path}.point")
        _expect(point not in entries, f"{path}.point", f"duplicate gamma point {point}")
        entries[point] = _fraction(entry["value"], f"{path}.value")
    try:
        gamma = GammaTable(entries)
    except ValueError as exc:
        raise SchemaError("gamma", str(exc)) from None

    try:
        return RompInstance(pattern=pattern, localized=localized, sigma=sigma, tau=tau, gamma=gamma)
    except InstanceError as exc:
        raise SchemaError("$", str(exc)) from None


# -- solution documents --------------------------------------------------------


def _witness_node(value):
    if isinstance(value, (Fraction, Rational)):
        return format_rational(value)
    if isinstance(value, bool) or value is None:
        return value
    if isinstance(value, int):
        return format_rational(value)
    if isinstance(value, (list, tuple)):
        return [_witness_node(v) for v in value]
    if isinstance(value, dict):
        return {str(k): _witness_node(v) for k, v in value.items()}
    return str(value)


def _report_node(step: str, report: ConditionReport) -> dict:
    node = {
        "step": step,
        "conditions": [
            {
                "id": c.id,
                "status": c.status,
                **({"witness": _witness_node(c.witness)} if c.witness is not None else {}),
                **({"equality": c.equality} if c.equality is not None else {}),
            }
            for c in report.conditions
        ],
    }
    if report.warnings:
        node["warnings"] = list(report.warnings)
    return node


def solution_to_doc(solution: RompSolution) -> dict:
    doc = {
        "format_version": FORMAT_VERSION,
        "verdict": solution.verdict,
        "reports": [_report_node(step, rep) for step, rep in solution.reports],
    }
    if solution.measure is not None:
        doc["measure"] = _measure2_node(solution.measure)
    return doc


def solution_from_doc(doc) -> RompSolution:
    _check_version(doc)
    verdict = doc.get("verdict")
    _expect(
        verdict in (SUBNORMAL, INSOLUBLE),
        "verdict",
        f'expected "{SUBNORMAL}" or "{INSOLUBLE}", got {verdict!r}',
    )
    measure: Optional[AtomicMeasure2] = None
    if verdict == SUBNORMAL:
        _expect("measure" in doc, "measure", "subnormal solutions carry a measure")
        measure = _measure2_from_node(doc["measure"], "measure")
    reports_node = doc.get("reports")
    _expect(isinstance(reports_node, list), "reports", "expected a list")
    reports = []
    for i, entry in enumerate(reports_node):
        path = f"reports[{i}]"
        _expect(isinstance(entry, dict), path, "expected an object")
        step = entry.get("step")
        _expect(isinstance(step, str), f"{path}.step", "expected a string")
        conditions = []
        conds_node = entry.get("conditions")
        _expect(isinstance(conds_node, list), f"{path}.conditions", "expected a list")
        for j, cnode in enumerate(conds_node):
            cpath = f"{path}.conditions[{j}]"
            _expect(isinstance(cnode, dict), cpath, "expected an object")
            conditions.append(
                Condition(
                    id=cnode.get("id"),
                    status=cnode.get("status"),
                    witness=cnode.get("witness"),
                    equality=cnode.get("equality"),
                )
            )
        warnings = tuple(entry.get("warnings", ()))
        reports.append((step, ConditionReport(tuple(conditions), warnings)))
    return RompSolution(verdict=verdict, measure=measure, reports=tuple(reports))


# -- file helpers --------------------------------------------------------------


def read_document(path) -> dict:
    with open(path, "r", encoding="utf-8") as handle:
        return _load(handle.read())


def write_document(path, doc) -> None:
    with open(path, "w", encoding="utf-8") as handle:
        handle.write(canonical_json(doc))
