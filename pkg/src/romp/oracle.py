"""Forward instance generation and exhaustive solution verification.

`generate_instance` produces the solver's input bundle from a chosen global
measure, so that reconstruction can be tested against known ground truth.
`verify_solution` is the independent certificate: it re-derives every piece
of instance data from a candidate measure and compares exactly.
"""

from __future__ import annotations

import random

from .extensions import Condition, ConditionReport, FAILS, HOLDS
from .lattice import Pattern, staircase
from .measures import (
    AtomicMeasure2,
    rational,
    integrate_monomial,
    is_probability,
    marginal_x,
    marginal_y,
)
from .moments import ZeroMomentError, gamma_from_measure, restriction_measure
from .solver import RompInstance


def generate_instance(mu: AtomicMeasure2, pattern: Pattern) -> RompInstance:
    """Instance whose localized measures are the restrictions of ``mu``.

    The moment table covers the bounding rectangle of the staircase, so the
    solver finds every entry it can ask for.  Raises ZeroMomentError when a
    required restriction density annihilates all mass.
    """
    if not is_probability(mu):
        raise ValueError("generate_instance requires a probability measure")
    path = staircase(pattern).points
    max1 = max(p.k1 for p in path)
    max2 = max(p.k2 for p in path)
    gamma = gamma_from_measure(mu, max1, max2)
    localized = {p: restriction_measure(mu, p).nu for p in pattern.foundation}
    return RompInstance(
        pattern=pattern,
        localized=localized,
        sigma=marginal_x(mu),
        tau=marginal_y(mu),
        gamma=gamma,
    )


def verify_solution(inst: RompInstance, mu: AtomicMeasure2, moment_bound=None) -> ConditionReport:
    """Certify a candidate global measure against an instance, exactly.

    Checks, all evaluated (no short-circuit): the candidate is a
    probability measure, its restrictions reproduce every localized
    measure, its marginals equal sigma and tau, and its monomial integrals
    match every tabulated moment up to ``moment_bound`` in each exponent.
    The default bound is twice the candidate's atom count, past which
    moment agreement adds nothing for measures of that support size.
    """
    if moment_bound is None:
        moment_bound = 2 * len(mu.atoms)
    conditions = []

    ok = is_probability(mu)
    conditions.append(
        Condition(
            "vf.probability",
            HOLDS if ok else FAILS,
            witness=None if ok else {"total": sum((a.mass for a in mu.atoms), rational(0))},
        )
    )

    for point in inst.pattern.foundation:
        cid = f"vf.restriction[{point.k1},{point.k2}]"
        try:
            got = restriction_measure(mu, point).nu
        except ZeroMomentError:
            conditions.append(Condition(cid, FAILS, witness={"at": tuple(point)}))
            continue
        expected = inst.localized[point]
        ok = got == expected
        witness = None if ok else _first_difference(got, expected)
        conditions.append(Condition(cid, HOLDS if ok else FAILS, witness=witness))

    for cid, got, expected in (
        ("vf.sigma", marginal_x(mu), inst.sigma),
        ("vf.tau", marginal_y(mu), inst.tau),
    ):
        ok = got == expected
        witness = None if ok else _first_difference(got, expected)
        conditions.append(Condition(cid, HOLDS if ok else FAILS, witness=witness))

    for point, value in inst.gamma.items():
        if point.k1 > moment_bound or point.k2 > moment_bound:
            continue
        got = integrate_monomial(mu, point.k1, point.k2)
        ok = got == value
        cid = f"vf.moment[{point.k1},{point.k2}]"
        witness = None if ok else {"lhs": got, "rhs": value}
        conditions.append(Condition(cid, HOLDS if ok else FAILS, witness=witness))

    return ConditionReport(tuple(conditions))


def _first_difference(got, expected):
    coords = sorted({a[:-1] for a in got.atoms} | {a[:-1] for a in expected.atoms})
    for c in coords:
        if got.mass_at(*c) != expected.mass_at(*c):
            return {"at": c, "lhs": got.mass_at(*c), "rhs": expected.mass_at(*c)}
    return None


def random_measure(
    seed: int,
    atom_count: int,
    coordinate_den_bound: int,
    support: str = "anywhere",
) -> AtomicMeasure2:
    """Deterministic pseudo-random atomic probability measure.

    Coordinates are rationals in [0, 4] with denominators up to the bound;
    ``support="open"`` keeps both coordinates strictly positive.  Distinct
    atoms get distinct coordinate pairs so canonical forms stay stable
    under small perturbations in tests.  The same seed always yields the
    same measure.
    """
    if atom_count < 1:
        raise ValueError("atom_count must be at least 1")
    if support not in ("open", "anywhere"):
        raise ValueError(f"support must be 'open' or 'anywhere', got {support!r}")
    rng = random.Random(seed)

    def coordinate():
        den = rng.randint(1, coordinate_den_bound)
        low = 1 if support == "open" else 0
        return rational(rng.randint(low, 4 * den)) / den

    coords = set()
    while len(coords) < atom_count:
        coords.add((coordinate(), coordinate()))
    weights = [rng.randint(1, 10) for _ in range(atom_count)]
    total = sum(weights)
    return AtomicMeasure2(
        (s, t, rational(w) / total) for (s, t), w in zip(sorted(coords), weights)
    )
