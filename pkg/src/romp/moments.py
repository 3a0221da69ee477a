"""Moment tables, weight diagrams, and restriction measures.

A 2-variable weighted shift is described here by its squared weights
(alpha^2, beta^2), kept squared so that everything stays rational.  The
moment gamma at a lattice point is the product of squared weights along a
monotone path from the origin; for subnormal shifts it equals the monomial
integral of the Berger measure.
"""

from __future__ import annotations

from typing import Mapping, NamedTuple, Sequence

from .measures import (
    AtomicMeasure1,
    AtomicMeasure2,
    MeasureError,
    Rational,
    density_scale,
    integrate_monomial,
    integrate_power,
    is_probability,
    rational,
)

_ZERO = rational(0)
_ONE = rational(1)


class ZeroMomentError(ValueError):
    """A required moment vanished, so the associated density kills all mass."""


class MissingMomentError(KeyError):
    """A gamma-table or weight-diagram lookup outside the stored rectangle."""


class LatticePoint(NamedTuple):
    k1: int
    k2: int

    def __add__(self, other: "LatticePoint") -> "LatticePoint":
        return LatticePoint(self.k1 + other.k1, self.k2 + other.k2)

    def __repr__(self) -> str:
        return f"({self.k1},{self.k2})"


def lattice_point(value) -> LatticePoint:
    """Coerce a pair of non-negative integers to a lattice point."""
    k1, k2 = value
    if not (isinstance(k1, int) and isinstance(k2, int)) or isinstance(k1, bool) or isinstance(k2, bool):
        raise ValueError(f"lattice point coordinates must be integers, got {value!r}")
    if k1 < 0 or k2 < 0:
        raise ValueError(f"lattice point coordinates must be non-negative, got {value!r}")
    return LatticePoint(k1, k2)


class GammaTable:
    """Partial map from lattice points to strictly positive moments.

    The table is finite by design: every consumer states which entries it
    needs and fails loudly on a gap.  The origin entry, when present, must
    be 1.
    """

    __slots__ = ("_entries",)

    def __init__(self, entries: Mapping):
        table = {}
        for point, value in entries.items():
            point = lattice_point(point)
            value = rational(value)
            if value <= 0:
                raise ZeroMomentError(f"gamma at {point} must be positive, got {value}")
            table[point] = value
        origin = table.get(LatticePoint(0, 0))
        if origin is not None and origin != 1:
            raise ValueError(f"gamma at the origin must be 1, got {origin}")
        self._entries = table

    def items(self):
        return sorted(self._entries.items())

    def get(self, point):
        return self._entries.get(lattice_point(point))

    def require(self, point) -> Rational:
        point = lattice_point(point)
        value = self._entries.get(point)
        if value is None:
            raise MissingMomentError(f"gamma table has no entry at {point}")
        return value

    def __contains__(self, point) -> bool:
        return lattice_point(point) in self._entries

    def __len__(self) -> int:
        return len(self._entries)

    def __eq__(self, other) -> bool:
        if not isinstance(other, GammaTable):
            return NotImplemented
        return self._entries == other._entries

    def __hash__(self):
        return hash(frozenset(self._entries.items()))

    @property
    def max1(self) -> int:
        return max((p.k1 for p in self._entries), default=0)

    @property
    def max2(self) -> int:
        return max((p.k2 for p in self._entries), default=0)

    def __repr__(self) -> str:
        body = ", ".join(f"{p}: {v}" for p, v in self.items())
        return f"GammaTable({{{body}}})"


class WeightDiagram:
    """Squared weights of a 2-variable shift over a finite rectangle.

    ``alpha`` holds the squared horizontal weights on [0, max1) x [0, max2],
    ``beta`` the squared vertical weights on [0, max1] x [0, max2); all
    strictly positive.
    """

    __slots__ = ("alpha", "beta", "max1", "max2")

    def __init__(self, alpha: Mapping, beta: Mapping, max1: int, max2: int):
        def _clean(table, name):
            out = {}
            for point, value in table.items():
                point = lattice_point(point)
                value = rational(value)
                if value <= 0:
                    raise ValueError(f"{name} squared weight at {point} must be positive")
                out[point] = value
            return out

        object.__setattr__(self, "alpha", _clean(alpha, "alpha"))
        object.__setattr__(self, "beta", _clean(beta, "beta"))
        object.__setattr__(self, "max1", max1)
        object.__setattr__(self, "max2", max2)

    def __setattr__(self, name, value):
        raise AttributeError("WeightDiagram is immutable")

    def alpha_at(self, point) -> Rational:
        point = lattice_point(point)
        try:
            return self.alpha[point]
        except KeyError:
            raise MissingMomentError(f"no alpha^2 entry at {point}") from None

    def beta_at(self, point) -> Rational:
        point = lattice_point(point)
        try:
            return self.beta[point]
        except KeyError:
            raise MissingMomentError(f"no beta^2 entry at {point}") from None


class Restriction(NamedTuple):
    """Berger measure of a restriction, with the normalizing moment."""

    nu: AtomicMeasure2
    moment: Rational


def gamma_from_measure(mu: AtomicMeasure2, max1: int, max2: int) -> GammaTable:
    """Moment table of a probability measure over the rectangle [0,max1]x[0,max2]."""
    if not is_probability(mu):
        raise MeasureError("gamma_from_measure requires a probability measure")
    # Successive powers per atom, so each table entry is one product per atom.
    powers = []
    for atom in mu.atoms:
        s_pow, t_pow = [_ONE], [_ONE]
        for _ in range(max1):
            s_pow.append(s_pow[-1] * atom.s)
        for _ in range(max2):
            t_pow.append(t_pow[-1] * atom.t)
        powers.append((atom.mass, s_pow, t_pow))
    entries = {}
    for m in range(max1 + 1):
        for n in range(max2 + 1):
            value = sum((mass * s_pow[m] * t_pow[n] for mass, s_pow, t_pow in powers), _ZERO)
            if value <= 0:
                raise ZeroMomentError(f"moment at ({m},{n}) is {value}; table must be positive")
            entries[LatticePoint(m, n)] = value
    return GammaTable(entries)


def weights_from_gamma(g: GammaTable) -> WeightDiagram:
    """Invert the moment recursion: alpha^2_k = gamma_{k+e1}/gamma_k, beta^2 likewise."""
    max1, max2 = g.max1, g.max2
    for m in range(max1 + 1):
        for n in range(max2 + 1):
            if (m, n) not in g:
                raise MissingMomentError(f"gamma table is missing ({m},{n})")
    alpha = {
        LatticePoint(m, n): g.require((m + 1, n)) / g.require((m, n))
        for m in range(max1)
        for n in range(max2 + 1)
    }
    beta = {
        LatticePoint(m, n): g.require((m, n + 1)) / g.require((m, n))
        for m in range(max1 + 1)
        for n in range(max2)
    }
    return WeightDiagram(alpha, beta, max1, max2)


def gamma_from_weights(w: WeightDiagram, p) -> Rational:
    """Moment at p as the squared-weight product along the row-then-column path.

    Path independence across monotone paths is a consequence of the
    commutativity law; it is asserted by tests, not assumed here.
    """
    p = lattice_point(p)
    if p.k1 > w.max1 or p.k2 > w.max2:
        raise MissingMomentError(f"{p} lies outside the stored rectangle")
    value = _ONE
    for i in range(p.k1):
        value *= w.alpha_at((i, 0))
    for j in range(p.k2):
        value *= w.beta_at((p.k1, j))
    return value


def check_commuting(w: WeightDiagram) -> bool:
    """Commutativity law: beta^2_{k+e1} alpha^2_k = alpha^2_{k+e2} beta^2_k everywhere."""
    for m in range(w.max1):
        for n in range(w.max2):
            lhs = w.beta_at((m + 1, n)) * w.alpha_at((m, n))
            rhs = w.alpha_at((m, n + 1)) * w.beta_at((m, n))
            if lhs != rhs:
                return False
    return True


def restriction_measure(mu: AtomicMeasure2, p) -> Restriction:
    """Berger measure of the restriction to the subspace at p.

    The restriction reweights by the monomial density s^k1 t^k2 and
    renormalizes by the corresponding moment, which must be positive.
    """
    p = lattice_point(p)
    gamma_p = integrate_monomial(mu, p.k1, p.k2)
    if gamma_p <= 0:
        raise ZeroMomentError(
            f"moment at {p} is {gamma_p}; the monomial density annihilates all mass"
        )
    return Restriction(density_scale(mu, p.k1, p.k2, 1 / gamma_p), gamma_p)


def check_berger_1d(squared_weights: Sequence, sigma: AtomicMeasure1, bound: int) -> bool:
    """Bounded Berger verification for a 1-variable shift.

    True iff the running products of the squared weights match the moments
    of sigma for every order k <= bound.  This is a verifier, not a moment
    problem solver: the measure is given data.
    """
    weights = [rational(w) for w in squared_weights]
    if len(weights) < bound:
        raise ValueError(f"need at least {bound} squared weights, got {len(weights)}")
    gamma = _ONE
    for k in range(bound + 1):
        if gamma != integrate_power(sigma, k):
            return False
        if k < bound:
            gamma *= weights[k]
    return True
