"""Finitely atomic measures with exact rational data.

Measures live on the closed half-line [0, oo) or the closed quadrant
[0, oo) x [0, oo).  Atom coordinates are non-negative rationals, masses are
signed rationals, and every measure is kept in canonical form: atoms sorted
lexicographically by coordinates, duplicate coordinates merged, zero masses
dropped.  Equality of measures is equality of canonical forms, so all
round-trip identities in this package are exact.

The scalar type is the arbitrary-precision rational ``gmpy2.mpq``
(exported as :data:`Rational`); `fractions.Fraction`, ints, and fraction
strings are accepted anywhere a scalar goes in, and floats are rejected,
never silently converted.  All values are immutable and every operation is
a pure function, so values may be shared freely between threads.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Iterable, NamedTuple, Union

from gmpy2 import mpq

Rational = mpq
RationalInput = Union[mpq, Fraction, int, str]

_ZERO = mpq(0)
_ONE = mpq(1)

_FRACTION_RE = re.compile(r"^[+-]?\d+(?:/(\d+))?$")


class MeasureError(ValueError):
    """Input that a measure operation cannot accept."""


class SignedMeasureError(MeasureError):
    """Signed measure passed to an operation defined only for positive ones."""


class InfiniteReciprocalError(MeasureError):
    """Reciprocal density applied to a measure with mass on the offending axis."""

    def __init__(self, message: str, atom=None):
        super().__init__(message)
        self.atom = atom


class _Infinite:
    """Singleton marker for an infinite reciprocal-monomial norm."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "INFINITE"


INFINITE = _Infinite()


def is_infinite(value) -> bool:
    """True iff ``value`` is the infinite-norm marker."""
    return value is INFINITE


def rational(value: RationalInput) -> Rational:
    """Coerce to an exact rational; floats are rejected, never silently converted."""
    if type(value) is mpq:
        return value
    if isinstance(value, float):
        raise MeasureError(f"floating point value {value!r} rejected; use exact rationals")
    try:
        return mpq(value)
    except (ValueError, TypeError, ZeroDivisionError) as exc:
        raise MeasureError(f"not an exact rational: {value!r} ({exc})") from None


def format_rational(value: RationalInput) -> str:
    """Render as a decimal-free fraction string: ``3``, ``-1/2``, ``0``."""
    return str(rational(value))


def parse_rational(text: str) -> Rational:
    """Parse a fraction string ``p`` or ``p/q`` with q > 0."""
    if not isinstance(text, str):
        raise MeasureError(f"expected a fraction string, got {type(text).__name__}")
    stripped = text.strip()
    match = _FRACTION_RE.match(stripped)
    if match is None:
        raise MeasureError(f"malformed fraction {text!r}")
    if match.group(1) is not None and int(match.group(1)) == 0:
        raise MeasureError(f"zero denominator in {text!r}")
    return mpq(stripped.lstrip("+"))


class Atom1(NamedTuple):
    x: Rational
    mass: Rational


class Atom2(NamedTuple):
    s: Rational
    t: Rational
    mass: Rational


class _AtomicMeasure:
    """Shared canonical-form machinery for 1D and 2D atomic measures."""

    __slots__ = ("_atoms",)
    _dim = 0
    _atom_cls = None

    def __init__(self, atoms: Iterable = ()):
        merged: dict[tuple, Rational] = {}
        for entry in atoms:
            entry = tuple(entry)
            if len(entry) != self._dim + 1:
                raise MeasureError(
                    f"atom {entry!r} must have {self._dim} coordinate(s) and a mass"
                )
            coords = tuple(rational(c) for c in entry[:-1])
            for c in coords:
                if c < 0:
                    raise MeasureError(f"negative coordinate in atom {entry!r}")
            mass = rational(entry[-1])
            merged[coords] = merged.get(coords, _ZERO) + mass
        self._atoms = tuple(
            self._atom_cls(*coords, mass)
            for coords, mass in sorted(merged.items())
            if mass != 0
        )

    @classmethod
    def _make(cls, pairs):
        """Canonicalize (coords, mass) pairs already known to be valid rationals."""
        atoms = []
        last = None
        for coords, mass in sorted(pairs, key=lambda pair: pair[0]):
            if last is not None and coords == last[0]:
                last[1] += mass
            else:
                last = [coords, mass]
                atoms.append(last)
        self = object.__new__(cls)
        self._atoms = tuple(
            cls._atom_cls(*coords, mass) for coords, mass in atoms if mass != 0
        )
        return self

    @classmethod
    def _rescaled(cls, pairs):
        """Build from pairs whose coordinates are already distinct and sorted."""
        self = object.__new__(cls)
        self._atoms = tuple(
            cls._atom_cls(*coords, mass) for coords, mass in pairs if mass != 0
        )
        return self

    @property
    def atoms(self):
        return self._atoms

    def pairs(self):
        """Iterate (coordinate tuple, mass) over atoms in canonical order."""
        for atom in self._atoms:
            yield atom[:-1], atom.mass

    def mass_at(self, *coords) -> Rational:
        key = tuple(rational(c) for c in coords)
        for atom in self._atoms:
            if atom[:-1] == key:
                return atom.mass
        return _ZERO

    @property
    def is_zero(self) -> bool:
        return not self._atoms

    def __len__(self) -> int:
        return len(self._atoms)

    def __iter__(self):
        return iter(self._atoms)

    def __eq__(self, other) -> bool:
        if other.__class__ is not self.__class__:
            return NotImplemented
        return self._atoms == other._atoms

    def __hash__(self) -> int:
        return hash((self.__class__.__name__, self._atoms))

    def __repr__(self) -> str:
        body = ", ".join(
            f"({', '.join(str(c) for c in atom[:-1])}): {atom.mass}" for atom in self._atoms
        )
        return f"{self.__class__.__name__}({{{body}}})"

    def __add__(self, other):
        if other.__class__ is not self.__class__:
            return NotImplemented
        return self._make(
            (atom[:-1], atom.mass) for m in (self, other) for atom in m._atoms
        )

    def __sub__(self, other):
        if other.__class__ is not self.__class__:
            return NotImplemented
        return self._make(
            (atom[:-1], atom.mass if i == 0 else -atom.mass)
            for i, m in enumerate((self, other))
            for atom in m._atoms
        )

    def __neg__(self):
        return self._rescaled((atom[:-1], -atom.mass) for atom in self._atoms)

    def __rmul__(self, scalar):
        c = rational(scalar)
        return self._rescaled((atom[:-1], c * atom.mass) for atom in self._atoms)


class AtomicMeasure1(_AtomicMeasure):
    """Finite signed atomic measure on [0, oo)."""

    __slots__ = ()
    _dim = 1
    _atom_cls = Atom1


class AtomicMeasure2(_AtomicMeasure):
    """Finite signed atomic measure on the closed quadrant [0, oo)^2."""

    __slots__ = ()
    _dim = 2
    _atom_cls = Atom2


class Regions(NamedTuple):
    """Decomposition of a quadrant measure by coordinate-axis incidence."""

    open: AtomicMeasure2
    s_axis: AtomicMeasure2
    t_axis: AtomicMeasure2
    origin: Rational


def point_mass1(x, mass=1) -> AtomicMeasure1:
    """The measure ``mass * delta_x`` on the half-line."""
    return AtomicMeasure1([(x, mass)])


def point_mass2(s, t, mass=1) -> AtomicMeasure2:
    """The measure ``mass * delta_(s,t)`` on the quadrant."""
    return AtomicMeasure2([(s, t, mass)])


def canonicalize(m):
    """Rebuild the canonical form (idempotent; measures are canonical on construction)."""
    return m.__class__(m.atoms)


def linear_combine(c1, m1, c2, m2):
    """Canonical form of ``c1*m1 + c2*m2``; both measures of the same dimension."""
    if m1.__class__ is not m2.__class__:
        raise MeasureError("cannot combine measures of different dimensions")
    return rational(c1) * m1 + rational(c2) * m2


def scale(c, m):
    """Canonical form of ``c * m``."""
    return rational(c) * m


def total_mass(m) -> Rational:
    return sum((atom.mass for atom in m.atoms), _ZERO)


def is_positive(m) -> bool:
    """True iff every canonical mass is > 0 (the zero measure counts as positive)."""
    return all(atom.mass > 0 for atom in m.atoms)


def is_probability(m) -> bool:
    return is_positive(m) and total_mass(m) == 1


def leq(m1, m2) -> bool:
    """Setwise order on positive atomic measures: every atom's m1-mass <= m2-mass."""
    if not (is_positive(m1) and is_positive(m2)):
        raise SignedMeasureError("leq is defined for positive measures only")
    return all(atom.mass <= m2.mass_at(*atom[:-1]) for atom in m1.atoms)


def marginal_x(m: AtomicMeasure2) -> AtomicMeasure1:
    """Pushforward onto the first coordinate: mass at s is the sum over all t."""
    return AtomicMeasure1._make(((atom.s,), atom.mass) for atom in m.atoms)


def marginal_y(m: AtomicMeasure2) -> AtomicMeasure1:
    """Pushforward onto the second coordinate."""
    return AtomicMeasure1._make(((atom.t,), atom.mass) for atom in m.atoms)


def integrate_monomial(m: AtomicMeasure2, em: int, en: int) -> Rational:
    """Exact integral of s^em t^en against the measure."""
    return sum((atom.mass * atom.s**em * atom.t**en for atom in m.atoms), _ZERO)


def integrate_power(m: AtomicMeasure1, k: int) -> Rational:
    """Exact integral of x^k against a half-line measure."""
    return sum((atom.mass * atom.x**k for atom in m.atoms), _ZERO)


def _offending_atom(m: AtomicMeasure2, k: int, el: int):
    for atom in m.atoms:
        if (k > 0 and atom.s == 0) or (el > 0 and atom.t == 0):
            return atom
    return None


def reciprocal_norm(m: AtomicMeasure2, k: int, el: int):
    """L1 norm of 1/(s^k t^el) against a positive measure, or INFINITE.

    For finitely atomic positive measures, integrability of the reciprocal
    monomial is exactly the absence of mass on the offending axes, so the
    decision is structural, never numeric.
    """
    if not is_positive(m):
        raise SignedMeasureError("reciprocal_norm is defined for positive measures only")
    if _offending_atom(m, k, el) is not None:
        return INFINITE
    return sum((atom.mass / (atom.s**k * atom.t**el) for atom in m.atoms), _ZERO)


def reciprocal_norm_1d(m: AtomicMeasure1, k: int):
    """Half-line analogue of :func:`reciprocal_norm`."""
    if not is_positive(m):
        raise SignedMeasureError("reciprocal_norm_1d is defined for positive measures only")
    if k > 0 and any(atom.x == 0 for atom in m.atoms):
        return INFINITE
    return sum((atom.mass / atom.x**k for atom in m.atoms), _ZERO)


def density_scale(m: AtomicMeasure2, k: int, el: int, c) -> AtomicMeasure2:
    """Multiply by the density c * s^k * t^el; annihilated atoms are dropped."""
    c = rational(c)
    return AtomicMeasure2._rescaled(
        ((atom.s, atom.t), c * atom.mass * atom.s**k * atom.t**el) for atom in m.atoms
    )


def density_scale_1d(m: AtomicMeasure1, k: int, c) -> AtomicMeasure1:
    c = rational(c)
    return AtomicMeasure1._rescaled(((atom.x,), c * atom.mass * atom.x**k) for atom in m.atoms)


def reciprocal_scale(m: AtomicMeasure2, k: int, el: int, c) -> AtomicMeasure2:
    """Multiply by the density c / (s^k t^el); mass on an offending axis is an error."""
    bad = _offending_atom(m, k, el)
    if bad is not None:
        raise InfiniteReciprocalError(
            f"reciprocal density 1/(s^{k} t^{el}) undefined at atom {bad!r}", atom=bad
        )
    c = rational(c)
    return AtomicMeasure2._rescaled(
        ((atom.s, atom.t), c * atom.mass / (atom.s**k * atom.t**el)) for atom in m.atoms
    )


def reciprocal_scale_1d(m: AtomicMeasure1, k: int, c) -> AtomicMeasure1:
    if k > 0:
        for atom in m.atoms:
            if atom.x == 0:
                raise InfiniteReciprocalError(
                    f"reciprocal density 1/x^{k} undefined at atom {atom!r}", atom=atom
                )
    c = rational(c)
    return AtomicMeasure1._rescaled(((atom.x,), c * atom.mass / atom.x**k) for atom in m.atoms)


def extremal(m: AtomicMeasure2, axis: str) -> AtomicMeasure2:
    """Reweight by the reciprocal of one coordinate and renormalize.

    ``extremal(m, "s")`` is dm / (s * |1/s|_{L1(m)}); a probability measure
    whenever m is one and the norm is finite.
    """
    if axis not in ("s", "t"):
        raise ValueError(f"axis must be 's' or 't', got {axis!r}")
    k, el = (1, 0) if axis == "s" else (0, 1)
    norm = reciprocal_norm(m, k, el)
    if is_infinite(norm):
        bad = _offending_atom(m, k, el)
        raise InfiniteReciprocalError(
            f"extremal measure along {axis} undefined: mass at atom {bad!r}", atom=bad
        )
    return reciprocal_scale(m, k, el, 1 / norm)


def embed_axis(rho: AtomicMeasure1, axis: str) -> AtomicMeasure2:
    """Place a half-line measure on a coordinate axis of the quadrant.

    ``axis="s"`` sends atoms to (x, 0), i.e. the product rho x delta_0;
    ``axis="t"`` sends them to (0, x).
    """
    zero = _ZERO
    if axis == "s":
        return AtomicMeasure2._rescaled(((atom.x, zero), atom.mass) for atom in rho.atoms)
    if axis == "t":
        return AtomicMeasure2._rescaled(((zero, atom.x), atom.mass) for atom in rho.atoms)
    raise ValueError(f"axis must be 's' or 't', got {axis!r}")


def split_regions(m: AtomicMeasure2) -> Regions:
    """Partition atoms by {s>0,t>0}, {s=0,t>0}, {s>0,t=0} and the origin mass."""
    open_part, s_axis, t_axis = [], [], []
    origin = _ZERO
    for atom in m.atoms:
        if atom.s == 0 and atom.t == 0:
            origin = atom.mass
        elif atom.s == 0:
            s_axis.append(atom)
        elif atom.t == 0:
            t_axis.append(atom)
        else:
            open_part.append(atom)
    return Regions(
        AtomicMeasure2(open_part), AtomicMeasure2(s_axis), AtomicMeasure2(t_axis), origin
    )


def measure1_to_records(m: AtomicMeasure1) -> list:
    """Serialize as a list of {"x", "mass"} fraction-string records."""
    return [{"x": format_rational(a.x), "mass": format_rational(a.mass)} for a in m.atoms]


def measure1_from_records(records) -> AtomicMeasure1:
    return AtomicMeasure1(
        (parse_rational(rec["x"]), parse_rational(rec["mass"])) for rec in records
    )


def measure2_to_records(m: AtomicMeasure2) -> list:
    """Serialize as a list of {"s", "t", "mass"} fraction-string records."""
    return [
        {"s": format_rational(a.s), "t": format_rational(a.t), "mass": format_rational(a.mass)}
        for a in m.atoms
    ]


def measure2_from_records(records) -> AtomicMeasure2:
    return AtomicMeasure2(
        (parse_rational(rec["s"]), parse_rational(rec["t"]), parse_rational(rec["mass"]))
        for rec in records
    )
