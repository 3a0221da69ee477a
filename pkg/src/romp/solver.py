"""Canonical-subspace reconstruction driver.

The instance carries a localized Berger measure for every foundation point
of a pattern, the two marginal measures, and the moments of the ambient
shift where the merge needs them.  Solving screens the compatibility law
over a selectable pair set, folds the descending staircase left-to-right,
merging consecutive measures at their join, and finishes with an
axis-type-dependent extension to the origin.

Solver-level condition ids: ``os.compat`` for compatibility screening,
``mg.i`` .. ``mg.v`` inside merges, ``t3.sigma`` / ``t3.tau`` for the
Type III final marginal checks.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Optional

from .extensions import (
    Condition,
    ConditionReport,
    ExtensionResult,
    FAILS,
    HOLDS,
    _atom_witness,
    _Checks,
    _measure_eq,
    multistep_axis,
    two_step,
)
from .lattice import Pattern, PatternType, classify_type, join_origin
from .measures import (
    AtomicMeasure1,
    AtomicMeasure2,
    density_scale,
    is_probability,
    marginal_x,
    marginal_y,
    point_mass2,
    rational,
    reciprocal_scale,
    split_regions,
    total_mass,
)
from .moments import (
    GammaTable,
    LatticePoint,
    ZeroMomentError,
    lattice_point,
    restriction_measure,
)

SUBNORMAL = "subnormal"
INSOLUBLE = "insoluble"

MODE_CONSECUTIVE = "consecutive"
MODE_ALL_PAIRS = "all-pairs"
MODE_NONDEGENERATE = "nondegenerate-pairs"
MODES = (MODE_CONSECUTIVE, MODE_ALL_PAIRS, MODE_NONDEGENERATE)


class InstanceError(ValueError):
    """An instance violating its structural invariants."""


@dataclass(frozen=True, eq=False)
class RompInstance:
    """Input bundle: pattern, localized measures, marginals, moment table."""

    pattern: Pattern
    localized: Mapping
    sigma: AtomicMeasure1
    tau: AtomicMeasure1
    gamma: GammaTable

    def __post_init__(self):
        localized = {lattice_point(p): m for p, m in self.localized.items()}
        object.__setattr__(self, "localized", localized)
        fnd = set(self.pattern.foundation)
        if set(localized) != fnd:
            raise InstanceError(
                f"localized measures must cover exactly the foundation {sorted(fnd)}, "
                f"got {sorted(localized)}"
            )
        for point, ms in localized.items():
            if not is_probability(ms):
                raise InstanceError(f"localized measure at {point} is not a probability measure")
        if not is_probability(self.sigma):
            raise InstanceError("sigma is not a probability measure")
        if not is_probability(self.tau):
            raise InstanceError("tau is not a probability measure")

    def __eq__(self, other):
        if not isinstance(other, RompInstance):
            return NotImplemented
        return (
            self.pattern == other.pattern
            and self.localized == other.localized
            and self.sigma == other.sigma
            and self.tau == other.tau
            and self.gamma == other.gamma
        )


@dataclass(frozen=True)
class RompSolution:
    """Output bundle: verdict, reconstructed measure when subnormal, reports."""

    verdict: str
    measure: Optional[AtomicMeasure2]
    reports: tuple

    def __post_init__(self):
        if self.verdict not in (SUBNORMAL, INSOLUBLE):
            raise ValueError(f"unknown verdict {self.verdict!r}")
        if (self.verdict == SUBNORMAL) != (self.measure is not None):
            raise ValueError("a solution carries a measure exactly when subnormal")

    @property
    def ok(self) -> bool:
        return self.verdict == SUBNORMAL

    def report(self, step: str) -> ConditionReport:
        for name, rep in self.reports:
            if name == step:
                return rep
        raise KeyError(f"no report for step {step!r}")


def required_gamma_points(pattern: Pattern) -> tuple:
    """Moments the solver consumes: foundation, joins, and axis targets."""
    fnd = pattern.foundation
    points = list(fnd)
    current = fnd[0]
    for q in fnd[1:]:
        current = join_origin(current, q)
        points.append(current)
    ptype = classify_type(pattern)
    if ptype is PatternType.IV:
        points.append(LatticePoint(current.k1, 0))
        points.append(LatticePoint(0, current.k2))
    seen = []
    for p in points:
        if p not in seen:
            seen.append(p)
    return tuple(seen)


def check_compatibility(inst: RompInstance, p, q) -> ConditionReport:
    """Exact compatibility law gamma_p s^(q1-p1) nu_p = gamma_q t^(p2-q2) nu_q."""
    p, q = lattice_point(p), lattice_point(q)
    if p.k1 > q.k1 or p.k2 < q.k2:
        raise ValueError(f"{p} does not precede {q} in descending-staircase order")
    gamma_p = inst.gamma.require(p)
    gamma_q = inst.gamma.require(q)
    lhs = density_scale(inst.localized[p], q.k1 - p.k1, 0, gamma_p)
    rhs = density_scale(inst.localized[q], 0, p.k2 - q.k2, gamma_q)
    ok, witness = _measure_eq(lhs, rhs)
    cond = Condition("os.compat", HOLDS if ok else FAILS, witness=witness)
    return ConditionReport((cond,))


def merge_pair(
    nu_p: AtomicMeasure2,
    gamma_p,
    nu_q: AtomicMeasure2,
    gamma_q,
    p,
    q,
    gamma_o,
) -> ExtensionResult:
    """Merge the measures at a consecutive staircase pair into one at the join.

    With el' = p2-q2 and k' = q1-p1 the join measure is assembled region by
    region: the open-and-upper part from nu_p via the reciprocal density
    1/t^el', the strictly-horizontal part from the t=0 atoms of nu_q via
    1/s^k', and the remaining mass at the origin.  The assembly is then
    certified exactly by the two restriction identities.

      mg.i    1/t^el' integrable against nu_p;
      mg.ii   1/s^k' integrable against the t=0 part of nu_q;
      mg.iii  origin remainder >= 0;
      mg.iv   restricting the result by t^el' reproduces nu_p;
      mg.v    restricting the result by s^k' reproduces nu_q.
    """
    p, q = lattice_point(p), lattice_point(q)
    if p.k1 >= q.k1 or p.k2 <= q.k2:
        raise ValueError(f"merge needs a strictly descending pair, got {p}, {q}")
    gamma_p, gamma_q, gamma_o = rational(gamma_p), rational(gamma_q), rational(gamma_o)
    el_p = p.k2 - q.k2
    k_p = q.k1 - p.k1
    checks = _Checks("mg.i", "mg.ii", "mg.iii", "mg.iv", "mg.v")

    bad = next((a for a in nu_p.atoms if a.t == 0), None)
    if bad is not None:
        checks.fails("mg.i", _atom_witness(bad))
        return checks.result()
    checks.holds("mg.i")

    regions = split_regions(nu_q)
    if regions.origin != 0:
        checks.fails("mg.ii", {"s": 0, "t": 0, "mass": regions.origin})
        return checks.result()
    checks.holds("mg.ii")

    part_open = reciprocal_scale(nu_p, 0, el_p, gamma_p / gamma_o)
    part_axis = reciprocal_scale(regions.t_axis, k_p, 0, gamma_q / gamma_o)
    origin_mass = 1 - total_mass(part_open) - total_mass(part_axis)
    if origin_mass < 0:
        checks.fails("mg.iii", {"s": 0, "t": 0, "mass": origin_mass})
        return checks.result()
    checks.holds("mg.iii", equality=(origin_mass == 0))

    mu_o = part_open + part_axis + point_mass2(0, 0, origin_mass)

    try:
        restricted = restriction_measure(mu_o, (0, el_p))
    except ZeroMomentError:
        checks.fails("mg.iv", {"at": (0, el_p), "lhs": None, "rhs": None})
        return checks.result()
    ok, witness = _measure_eq(restricted.nu, nu_p)
    if not ok:
        checks.fails("mg.iv", witness)
        return checks.result()
    checks.holds("mg.iv")
    if restricted.moment != gamma_p / gamma_o:
        checks.warn(
            f"derived moment {restricted.moment} at offset (0,{el_p}) disagrees with "
            f"table ratio {gamma_p / gamma_o}"
        )

    try:
        restricted = restriction_measure(mu_o, (k_p, 0))
    except ZeroMomentError:
        checks.fails("mg.v", {"at": (k_p, 0), "lhs": None, "rhs": None})
        return checks.result()
    ok, witness = _measure_eq(restricted.nu, nu_q)
    if not ok:
        checks.fails("mg.v", witness)
        return checks.result()
    checks.holds("mg.v")
    if restricted.moment != gamma_q / gamma_o:
        checks.warn(
            f"derived moment {restricted.moment} at offset ({k_p},0) disagrees with "
            f"table ratio {gamma_q / gamma_o}"
        )

    return checks.result(mu_o)


def _mode_pairs(fnd: tuple, mode: str):
    if mode == MODE_CONSECUTIVE:
        return list(zip(fnd, fnd[1:]))
    if mode == MODE_ALL_PAIRS:
        return [(fnd[i], fnd[j]) for i in range(len(fnd)) for j in range(i, len(fnd))]
    if mode == MODE_NONDEGENERATE:
        return [
            (fnd[i], fnd[j])
            for i in range(len(fnd))
            for j in range(i + 1, len(fnd))
            if fnd[i].k1 != fnd[j].k1 and fnd[i].k2 != fnd[j].k2
        ]
    raise ValueError(f"unknown mode {mode!r}; expected one of {MODES}")


def merge_staircase(inst: RompInstance, right_to_left: bool = False):
    """Fold the staircase into one measure at the foundation's join.

    Returns (point, measure-or-None, step reports).  The fold direction is
    immaterial for the result whenever every merge succeeds; both are
    offered so that invariance is testable.
    """
    fnd = inst.pattern.foundation
    reports = []
    if not right_to_left:
        point = fnd[0]
        measure = inst.localized[point]
        gamma_c = inst.gamma.require(point)
        for q in fnd[1:]:
            origin = join_origin(point, q)
            gamma_o = inst.gamma.require(origin)
            step = merge_pair(
                measure, gamma_c, inst.localized[q], inst.gamma.require(q), point, q, gamma_o
            )
            reports.append((f"merge[{point}+{q}->{origin}]", step.report))
            if not step.ok:
                return point, None, reports
            point, measure, gamma_c = origin, step.measure, gamma_o
        return point, measure, reports
    point = fnd[-1]
    measure = inst.localized[point]
    gamma_c = inst.gamma.require(point)
    for p in reversed(fnd[:-1]):
        origin = join_origin(p, point)
        gamma_o = inst.gamma.require(origin)
        step = merge_pair(
            inst.localized[p], inst.gamma.require(p), measure, gamma_c, p, point, gamma_o
        )
        reports.append((f"merge[{p}+{point}->{origin}]", step.report))
        if not step.ok:
            return point, None, reports
        point, measure, gamma_c = origin, step.measure, gamma_o
    return point, measure, reports


def _final_type_iii(measure: AtomicMeasure2, inst: RompInstance) -> ExtensionResult:
    checks = _Checks("t3.sigma", "t3.tau")
    ok, witness = _measure_eq(marginal_x(measure), inst.sigma)
    if not ok:
        checks.fails("t3.sigma", witness)
        return checks.result()
    checks.holds("t3.sigma")
    ok, witness = _measure_eq(marginal_y(measure), inst.tau)
    if not ok:
        checks.fails("t3.tau", witness)
        return checks.result()
    checks.holds("t3.tau")
    return checks.result(measure)


def solve_canonical(inst: RompInstance, mode: str = MODE_CONSECUTIVE) -> RompSolution:
    """Decide solubility and reconstruct the global Berger measure.

    Runs the compatibility screening over the pair set selected by
    ``mode`` (the three modes are equivalent on well-formed instances),
    folds the staircase, then finishes according to the pattern type:
    Type III verifies both marginals at the origin, Types I/II extend from
    the surviving axis subspace, Type IV runs the two-step reconstruction.
    """
    if mode not in MODES:
        raise ValueError(f"unknown mode {mode!r}; expected one of {MODES}")
    fnd = inst.pattern.foundation
    reports = []
    compat_ok = True
    for p, q in _mode_pairs(fnd, mode):
        rep = check_compatibility(inst, p, q)
        reports.append((f"compatibility[{p},{q}]", rep))
        compat_ok = compat_ok and rep.ok
    if not compat_ok:
        return RompSolution(INSOLUBLE, None, tuple(reports))

    point, measure, merge_reports = merge_staircase(inst)
    reports.extend(merge_reports)
    if measure is None:
        return RompSolution(INSOLUBLE, None, tuple(reports))

    ptype = classify_type(inst.pattern)
    if ptype is PatternType.III:
        final = _final_type_iii(measure, inst)
        reports.append(("final[origin-marginals]", final.report))
    elif ptype is PatternType.I:
        final = multistep_axis(
            measure, point.k2, inst.gamma.require(point), inst.sigma, inst.tau, "vertical"
        )
        reports.append(("final[multistep-vertical]", final.report))
    elif ptype is PatternType.II:
        final = multistep_axis(
            measure, point.k1, inst.gamma.require(point), inst.sigma, inst.tau, "horizontal"
        )
        reports.append(("final[multistep-horizontal]", final.report))
    else:
        final = two_step(
            measure,
            inst.sigma,
            inst.tau,
            point.k1,
            point.k2,
            inst.gamma.require(point),
            inst.gamma.require((point.k1, 0)),
            inst.gamma.require((0, point.k2)),
        )
        reports.append(("final[two-step]", final.report))

    if not final.ok:
        return RompSolution(INSOLUBLE, None, tuple(reports))
    return RompSolution(SUBNORMAL, final.measure, tuple(reports))
