"""Constructive backward and multi-step extensions of Berger measures.

Every operation here either reconstructs a measure on a larger canonical
subspace or reports exactly which necessary condition failed.  Reports are
returned on success too, so callers can display which inequalities held
with equality; the equality cases carry meaning (they force correction
terms to vanish).

Conditions are evaluated in order.  Once one fails, the remaining ones are
recorded as not-applicable: later conditions typically presuppose earlier
ones (a finite reciprocal norm, say), and the first failure is the
actionable diagnostic.

Stable condition ids:

==================  =====================================================
backstep_1d         ``1d.i``, ``1d.ii``
backstep_2d         ``2d.i`` .. ``2d.iii`` (also used by build_mu_k0 /
                    build_mu_0l, whose checks are the same conditions in
                    closed multi-step form)
one_step_generalized  ``os.compat``, ``os.i`` .. ``os.iv``
two_step            ``nc1`` .. ``nc4``
multistep_axis      ``ms.a`` .. ``ms.d``
==================  =====================================================
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .measures import (
    AtomicMeasure1,
    AtomicMeasure2,
    Rational,
    density_scale,
    density_scale_1d,
    embed_axis,
    is_probability,
    marginal_x,
    marginal_y,
    point_mass1,
    rational,
    reciprocal_norm,
    reciprocal_norm_1d,
    reciprocal_scale,
    reciprocal_scale_1d,
    total_mass,
)

_ZERO = rational(0)
_ONE = rational(1)

HOLDS = "holds"
FAILS = "fails"
NOT_APPLICABLE = "not-applicable"

VERTICAL = "vertical"
HORIZONTAL = "horizontal"


@dataclass(frozen=True)
class Condition:
    """One checked condition: id, outcome, and a witness for failures.

    ``equality`` is set on inequality conditions that hold, recording
    whether they held with equality.
    """

    id: str
    status: str
    witness: Optional[dict] = None
    equality: Optional[bool] = None


@dataclass(frozen=True)
class ConditionReport:
    conditions: tuple = ()
    warnings: tuple = ()

    @property
    def ok(self) -> bool:
        return all(c.status != FAILS for c in self.conditions)

    @property
    def failure(self) -> Optional[Condition]:
        for c in self.conditions:
            if c.status == FAILS:
                return c
        return None

    def condition(self, cid: str) -> Condition:
        for c in self.conditions:
            if c.id == cid:
                return c
        raise KeyError(f"no condition with id {cid!r}")

    def __repr__(self) -> str:
        body = ", ".join(f"{c.id}={c.status}" for c in self.conditions)
        return f"ConditionReport({body})"


@dataclass(frozen=True)
class ExtensionResult:
    """Reconstructed measure (None on failure) plus the full report."""

    measure: Optional[object]
    report: ConditionReport

    @property
    def ok(self) -> bool:
        return self.measure is not None


class _Checks:
    """Ordered condition accumulator with first-failure short-circuiting."""

    def __init__(self, *ids):
        self.ids = list(ids)
        self.conditions = []
        self.warnings = []

    @property
    def failed(self) -> bool:
        return any(c.status == FAILS for c in self.conditions)

    def holds(self, cid, equality=None):
        self.conditions.append(Condition(cid, HOLDS, equality=equality))

    def fails(self, cid, witness):
        self.conditions.append(Condition(cid, FAILS, witness=witness))

    def warn(self, message):
        self.warnings.append(message)

    def report(self) -> ConditionReport:
        seen = {c.id for c in self.conditions}
        tail = tuple(Condition(cid, NOT_APPLICABLE) for cid in self.ids if cid not in seen)
        return ConditionReport(tuple(self.conditions) + tail, tuple(self.warnings))

    def result(self, measure=None) -> ExtensionResult:
        return ExtensionResult(None if self.failed else measure, self.report())


def _atom_witness(atom) -> dict:
    if len(atom) == 3:
        return {"s": atom.s, "t": atom.t, "mass": atom.mass}
    return {"x": atom.x, "mass": atom.mass}


def _scalar_witness(lhs, rhs) -> dict:
    return {"lhs": lhs, "rhs": rhs}


def _axis_atom_2d(m: AtomicMeasure2, k: int, el: int):
    """First atom giving the reciprocal density 1/(s^k t^el) infinite mass."""
    for atom in m.atoms:
        if (k > 0 and atom.s == 0) or (el > 0 and atom.t == 0):
            return atom
    return None


def _measure_leq(lhs, rhs):
    """(ok, equality, witness) for lhs <= rhs, atomwise over signed measures.

    The witness names the most violating atom; equality means lhs == rhs.
    """
    worst_coords, worst_gap = None, _ZERO
    coords = {atom[:-1] for atom in lhs.atoms} | {atom[:-1] for atom in rhs.atoms}
    for c in sorted(coords):
        gap = lhs.mass_at(*c) - rhs.mass_at(*c)
        if gap > worst_gap:
            worst_coords, worst_gap = c, gap
    if worst_coords is not None:
        witness = {
            "at": worst_coords,
            "lhs": lhs.mass_at(*worst_coords),
            "rhs": rhs.mass_at(*worst_coords),
        }
        return False, False, witness
    return True, lhs == rhs, None


def _measure_eq(lhs, rhs):
    """(ok, witness) for exact equality; witness is the first differing atom."""
    if lhs == rhs:
        return True, None
    coords = sorted({atom[:-1] for atom in lhs.atoms} | {atom[:-1] for atom in rhs.atoms})
    for c in coords:
        if lhs.mass_at(*c) != rhs.mass_at(*c):
            return False, {"at": c, "lhs": lhs.mass_at(*c), "rhs": rhs.mass_at(*c)}
    return False, None  # unreachable: unequal canonical forms differ at some atom


def _require_probability(m, name):
    if not is_probability(m):
        raise ValueError(f"{name} must be a probability measure")


def _require_positive_scalar(value, name) -> Rational:
    value = rational(value)
    if value <= 0:
        raise ValueError(f"{name} must be positive, got {value}")
    return value


def backstep_1d(mu_l1: AtomicMeasure1, omega0_sq) -> ExtensionResult:
    """Extend a 1-variable Berger measure one step backward.

    Given the Berger measure of the shift restricted past its first weight
    and the squared first weight, checks
      1d.i   1/x is integrable (no atom at 0, which can never be extended);
      1d.ii  omega0_sq <= 1 / |1/x|_{L1};
    and on success returns (omega0_sq/x) d(mu_l1) + (1 - omega0_sq*|1/x|) delta_0.
    """
    _require_probability(mu_l1, "mu_l1")
    omega0_sq = _require_positive_scalar(omega0_sq, "omega0_sq")
    checks = _Checks("1d.i", "1d.ii")

    bad = next((a for a in mu_l1.atoms if a.x == 0), None)
    if bad is not None:
        checks.fails("1d.i", _atom_witness(bad))
        return checks.result()
    checks.holds("1d.i")

    norm = reciprocal_norm_1d(mu_l1, 1)
    if omega0_sq * norm > 1:
        checks.fails("1d.ii", _scalar_witness(omega0_sq, 1 / norm))
        return checks.result()
    checks.holds("1d.ii", equality=(omega0_sq * norm == 1))

    mu = reciprocal_scale_1d(mu_l1, 1, omega0_sq) + point_mass1(0, 1 - omega0_sq * norm)
    return checks.result(mu)


def backstep_2d(mu01: AtomicMeasure2, sigma: AtomicMeasure1, beta00_sq) -> ExtensionResult:
    """Extend a 2-variable Berger measure one step backward in the t direction.

    Checks
      2d.i    1/t integrable against mu01;
      2d.ii   beta00_sq <= 1 / |1/t|_{L1(mu01)};
      2d.iii  beta00_sq * (mu01/t)^X <= sigma, with equality forced when
              beta00_sq * |1/t| = 1;
    and on success returns
      beta00_sq * mu01/t + (sigma - beta00_sq * (mu01/t)^X) x delta_0.
    """
    _require_probability(mu01, "mu01")
    _require_probability(sigma, "sigma")
    beta00_sq = _require_positive_scalar(beta00_sq, "beta00_sq")
    checks = _Checks("2d.i", "2d.ii", "2d.iii")

    bad = _axis_atom_2d(mu01, 0, 1)
    if bad is not None:
        checks.fails("2d.i", _atom_witness(bad))
        return checks.result()
    checks.holds("2d.i")

    norm = reciprocal_norm(mu01, 0, 1)
    if beta00_sq * norm > 1:
        checks.fails("2d.ii", _scalar_witness(beta00_sq, 1 / norm))
        return checks.result()
    checks.holds("2d.ii", equality=(beta00_sq * norm == 1))

    over_t = reciprocal_scale(mu01, 0, 1, 1)
    lhs = beta00_sq * marginal_x(over_t)
    ok, equal, witness = _measure_leq(lhs, sigma)
    if not ok or (beta00_sq * norm == 1 and not equal):
        checks.fails("2d.iii", witness or _scalar_witness(lhs, sigma))
        return checks.result()
    checks.holds("2d.iii", equality=equal)

    mu = beta00_sq * over_t + embed_axis(sigma - lhs, "s")
    return checks.result(mu)


def one_step_generalized(
    mu_k0: AtomicMeasure2,
    mu_0l: AtomicMeasure2,
    k: int,
    el: int,
    gamma_k0,
    gamma_0l,
    sigma: AtomicMeasure1,
) -> ExtensionResult:
    """Merge Berger measures at (k,0) and (0,el) into one at the origin.

    The two measures must satisfy the exact compatibility law
    gamma_0l * s^k * mu_0l = gamma_k0 * t^el * mu_k0 (checked atomwise as
    os.compat).  With lambda = gamma_k0/gamma_0l the conditions are
      os.i    1/t^el integrable against mu_0l;
      os.ii   1/s^k integrable against mu_k0;
      os.iii  gamma_k0 * |1/s^k|_{L1(mu_k0)} <= 1;
      os.iv   gamma_0l * (int_Y mu_0l/t^el + lambda*|1/s^k|*delta_0
              - (lambda/s^k) int_Y mu_k0) <= delta_0, evaluated as
              positivity of delta_0 minus the signed left side;
    and on success the reconstruction is
      gamma_0l * mu_0l/t^el + (sigma - gamma_0l * int_Y mu_0l/t^el) x delta_0.
    """
    _require_probability(mu_k0, "mu_k0")
    _require_probability(mu_0l, "mu_0l")
    _require_probability(sigma, "sigma")
    gamma_k0 = _require_positive_scalar(gamma_k0, "gamma_k0")
    gamma_0l = _require_positive_scalar(gamma_0l, "gamma_0l")
    if k < 1 or el < 1:
        raise ValueError("one_step_generalized needs k >= 1 and el >= 1")
    lam = gamma_k0 / gamma_0l
    checks = _Checks("os.compat", "os.i", "os.ii", "os.iii", "os.iv")

    ok, witness = _measure_eq(
        density_scale(mu_0l, k, 0, gamma_0l), density_scale(mu_k0, 0, el, gamma_k0)
    )
    if not ok:
        checks.fails("os.compat", witness)
        return checks.result()
    checks.holds("os.compat")

    bad = _axis_atom_2d(mu_0l, 0, el)
    if bad is not None:
        checks.fails("os.i", _atom_witness(bad))
        return checks.result()
    checks.holds("os.i")

    bad = _axis_atom_2d(mu_k0, k, 0)
    if bad is not None:
        checks.fails("os.ii", _atom_witness(bad))
        return checks.result()
    checks.holds("os.ii")

    norm_sk = reciprocal_norm(mu_k0, k, 0)
    if gamma_k0 * norm_sk > 1:
        checks.fails("os.iii", _scalar_witness(gamma_k0 * norm_sk, _ONE))
        return checks.result()
    checks.holds("os.iii", equality=(gamma_k0 * norm_sk == 1))

    over_tl = marginal_x(reciprocal_scale(mu_0l, 0, el, 1))
    over_sk = marginal_x(reciprocal_scale(mu_k0, k, 0, 1))
    lhs = gamma_0l * (over_tl + (lam * norm_sk) * point_mass1(0) - lam * over_sk)
    ok, equal, witness = _measure_leq(lhs, point_mass1(0))
    if not ok:
        checks.fails("os.iv", witness)
        return checks.result()
    checks.holds("os.iv", equality=equal)

    mu = reciprocal_scale(mu_0l, 0, el, gamma_0l) + embed_axis(sigma - gamma_0l * over_tl, "s")
    return checks.result(mu)


def build_mu_k0(
    nu: AtomicMeasure2, k: int, el: int, gamma_kl, gamma_k0, sigma: AtomicMeasure1
) -> ExtensionResult:
    """Extend the measure at (k,el) down to (k,0), el back-steps in closed form.

    The checks are the 2d back-extension conditions in multi-step form:
      2d.i    1/t^el integrable against nu;
      2d.ii   gamma_kl/gamma_k0 <= 1 / |1/t^el|_{L1(nu)};
      2d.iii  gamma_kl * int_Y nu/t^el <= s^k d(sigma);
    success returns
      (gamma_kl/gamma_k0) nu/t^el
        + (s^k sigma/gamma_k0 - (gamma_kl/gamma_k0) int_Y nu/t^el) x delta_0.
    """
    _require_probability(nu, "nu")
    gamma_kl = _require_positive_scalar(gamma_kl, "gamma_kl")
    gamma_k0 = _require_positive_scalar(gamma_k0, "gamma_k0")
    if k < 1 or el < 1:
        raise ValueError("build_mu_k0 needs k >= 1 and el >= 1")
    checks = _Checks("2d.i", "2d.ii", "2d.iii")

    bad = _axis_atom_2d(nu, 0, el)
    if bad is not None:
        checks.fails("2d.i", _atom_witness(bad))
        return checks.result()
    checks.holds("2d.i")

    norm = reciprocal_norm(nu, 0, el)
    ratio = gamma_kl / gamma_k0
    if ratio * norm > 1:
        checks.fails("2d.ii", _scalar_witness(ratio, 1 / norm))
        return checks.result()
    checks.holds("2d.ii", equality=(ratio * norm == 1))

    over_tl = marginal_x(reciprocal_scale(nu, 0, el, 1))
    ok, equal, witness = _measure_leq(gamma_kl * over_tl, density_scale_1d(sigma, k, 1))
    if not ok:
        checks.fails("2d.iii", witness)
        return checks.result()
    checks.holds("2d.iii", equality=equal)

    bracket = density_scale_1d(sigma, k, 1 / gamma_k0) - ratio * over_tl
    mu = reciprocal_scale(nu, 0, el, ratio) + embed_axis(bracket, "s")
    return checks.result(mu)


def build_mu_0l(
    nu: AtomicMeasure2, k: int, el: int, gamma_kl, gamma_0l, tau: AtomicMeasure1
) -> ExtensionResult:
    """Mirror of :func:`build_mu_k0`: extend (k,el) to (0,el) using tau."""
    _require_probability(nu, "nu")
    gamma_kl = _require_positive_scalar(gamma_kl, "gamma_kl")
    gamma_0l = _require_positive_scalar(gamma_0l, "gamma_0l")
    if k < 1 or el < 1:
        raise ValueError("build_mu_0l needs k >= 1 and el >= 1")
    checks = _Checks("2d.i", "2d.ii", "2d.iii")

    bad = _axis_atom_2d(nu, k, 0)
    if bad is not None:
        checks.fails("2d.i", _atom_witness(bad))
        return checks.result()
    checks.holds("2d.i")

    norm = reciprocal_norm(nu, k, 0)
    ratio = gamma_kl / gamma_0l
    if ratio * norm > 1:
        checks.fails("2d.ii", _scalar_witness(ratio, 1 / norm))
        return checks.result()
    checks.holds("2d.ii", equality=(ratio * norm == 1))

    over_sk = marginal_y(reciprocal_scale(nu, k, 0, 1))
    ok, equal, witness = _measure_leq(gamma_kl * over_sk, density_scale_1d(tau, el, 1))
    if not ok:
        checks.fails("2d.iii", witness)
        return checks.result()
    checks.holds("2d.iii", equality=equal)

    bracket = density_scale_1d(tau, el, 1 / gamma_0l) - ratio * over_sk
    mu = reciprocal_scale(nu, k, 0, ratio) + embed_axis(bracket, "t")
    return checks.result(mu)


def two_step(
    nu: AtomicMeasure2,
    sigma: AtomicMeasure1,
    tau: AtomicMeasure1,
    k: int,
    el: int,
    gamma_kl,
    gamma_k0,
    gamma_0l,
) -> ExtensionResult:
    """Reconstruct the global measure from data at (k,el) plus both marginals.

    Necessary and sufficient conditions, k, el >= 1:
      nc1  1/(s^k t^el) integrable against nu (no atoms on either axis);
      nc2  gamma_kl * int_X nu/s^k <= t^el d(tau), as measures in t;
      nc3  gamma_kl * int_Y nu/t^el <= s^k d(sigma), as measures in s;
      nc4  |1/(s^k t^el)|_{L1(nu)} = 1/gamma_kl exactly.
    On success:
      gamma_kl * nu/(s^k t^el)
        + (sigma - gamma_kl int_Y nu/(s^k t^el)) x delta_0
        + delta_0 x (tau - gamma_kl int_X nu/(s^k t^el)).
    """
    _require_probability(nu, "nu")
    _require_probability(sigma, "sigma")
    _require_probability(tau, "tau")
    gamma_kl = _require_positive_scalar(gamma_kl, "gamma_kl")
    gamma_k0 = _require_positive_scalar(gamma_k0, "gamma_k0")
    gamma_0l = _require_positive_scalar(gamma_0l, "gamma_0l")
    if k < 1 or el < 1:
        raise ValueError("two_step needs k >= 1 and el >= 1; use multistep_axis instead")
    checks = _Checks("nc1", "nc2", "nc3", "nc4")

    bad = _axis_atom_2d(nu, k, el)
    if bad is not None:
        checks.fails("nc1", _atom_witness(bad))
        return checks.result()
    checks.holds("nc1")

    over_sk = marginal_y(reciprocal_scale(nu, k, 0, 1))
    ok, equal, witness = _measure_leq(gamma_kl * over_sk, density_scale_1d(tau, el, 1))
    if not ok:
        checks.fails("nc2", witness)
        return checks.result()
    checks.holds("nc2", equality=equal)

    over_tl = marginal_x(reciprocal_scale(nu, 0, el, 1))
    ok, equal, witness = _measure_leq(gamma_kl * over_tl, density_scale_1d(sigma, k, 1))
    if not ok:
        checks.fails("nc3", witness)
        return checks.result()
    checks.holds("nc3", equality=equal)

    recip_total = reciprocal_norm(nu, k, el)
    if recip_total != 1 / gamma_kl:
        checks.fails("nc4", _scalar_witness(recip_total, 1 / gamma_kl))
        return checks.result()
    checks.holds("nc4")

    core = reciprocal_scale(nu, k, el, gamma_kl)
    corr_s = sigma - gamma_kl * marginal_x(reciprocal_scale(nu, k, el, 1))
    corr_t = tau - gamma_kl * marginal_y(reciprocal_scale(nu, k, el, 1))
    mu = core + embed_axis(corr_s, "s") + embed_axis(corr_t, "t")
    return checks.result(mu)


def multistep_axis(
    nu: AtomicMeasure2,
    steps: int,
    gamma_axis,
    sigma: AtomicMeasure1,
    tau: AtomicMeasure1,
    direction: str,
) -> ExtensionResult:
    """Extend from an axis subspace ((0,steps) vertical, (steps,0) horizontal).

    Instead of iterating single back-steps, which would need row or column
    measures that are not part of the data, a closed-form candidate is
    built and then certified exactly:
      ms.a  the reciprocal monomial is integrable against nu;
      ms.b  gamma_axis * (marginal of nu over the reciprocal) <= the
            matching marginal datum (sigma vertically, tau horizontally);
      ms.c  the candidate's other marginal equals the remaining datum;
      ms.d  the candidate is a probability measure.
    """
    _require_probability(nu, "nu")
    gamma_axis = _require_positive_scalar(gamma_axis, "gamma_axis")
    if steps < 1:
        raise ValueError("multistep_axis needs steps >= 1")
    if direction not in (VERTICAL, HORIZONTAL):
        raise ValueError(f"direction must be {VERTICAL!r} or {HORIZONTAL!r}")
    checks = _Checks("ms.a", "ms.b", "ms.c", "ms.d")
    vertical = direction == VERTICAL
    exps = (0, steps) if vertical else (steps, 0)

    bad = _axis_atom_2d(nu, *exps)
    if bad is not None:
        checks.fails("ms.a", _atom_witness(bad))
        return checks.result()
    checks.holds("ms.a")

    recip = reciprocal_scale(nu, *exps, 1)
    own_marginal = marginal_x(recip) if vertical else marginal_y(recip)
    bound = sigma if vertical else tau
    ok, equal, witness = _measure_leq(gamma_axis * own_marginal, bound)
    if not ok:
        checks.fails("ms.b", witness)
        return checks.result()
    checks.holds("ms.b", equality=equal)

    correction = bound - gamma_axis * own_marginal
    candidate = gamma_axis * recip + embed_axis(correction, "s" if vertical else "t")

    other = marginal_y(candidate) if vertical else marginal_x(candidate)
    target = tau if vertical else sigma
    ok, witness = _measure_eq(other, target)
    if not ok:
        checks.fails("ms.c", witness)
        return checks.result()
    checks.holds("ms.c")

    mass = total_mass(candidate)
    if not is_probability(candidate):
        negative = next((a for a in candidate.atoms if a.mass < 0), None)
        witness = _atom_witness(negative) if negative else _scalar_witness(mass, _ONE)
        checks.fails("ms.d", witness)
        return checks.result()
    checks.holds("ms.d")

    return checks.result(candidate)
