from fractions import Fraction

from hypothesis import settings
from hypothesis import strategies as st

import romp

settings.register_profile("suite", max_examples=30, deadline=None)
settings.load_profile("suite")

F = Fraction


def m1(*atoms):
    return romp.AtomicMeasure1(atoms)


def m2(*atoms):
    return romp.AtomicMeasure2(atoms)


# Two-atom measure with mass at the origin and at (1,1); its localized data
# is the classic case where the axis mass is invisible from the core.
MU_B = m2((0, 0, F(1, 2)), (1, 1, F(1, 2)))

# Three-atom open-support measure used in the worked two-step reconstruction.
MU_C = m2((1, 1, F(1, 4)), (2, 1, F(1, 4)), (1, 2, F(1, 2)))

# Restriction of MU_C at (1,1): (s*t) density, normalized by the 7/4 moment.
NU_C = m2((1, 1, F(1, 7)), (2, 1, F(2, 7)), (1, 2, F(4, 7)))


def coords(min_value=0):
    return st.fractions(min_value=min_value, max_value=4, max_denominator=8)


def masses():
    return st.fractions(min_value=F(1, 8), max_value=4, max_denominator=12)


@st.composite
def measures2(draw, min_atoms=0, max_atoms=4, min_coord=0):
    n = draw(st.integers(min_value=min_atoms, max_value=max_atoms))
    pairs = draw(
        st.lists(
            st.tuples(coords(min_coord), coords(min_coord)),
            min_size=n,
            max_size=n,
            unique=True,
        )
    )
    return romp.AtomicMeasure2((s, t, draw(masses())) for s, t in pairs)


@st.composite
def probability_measures2(draw, min_atoms=1, max_atoms=4, min_coord=0):
    mu = draw(measures2(min_atoms=min_atoms, max_atoms=max_atoms, min_coord=min_coord))
    if mu.is_zero:
        return romp.point_mass2(1, 1)
    total = romp.total_mass(mu)
    return romp.scale(1 / total, mu)


@st.composite
def probability_measures1(draw, min_atoms=1, max_atoms=4, min_coord=0):
    mu = draw(probability_measures2(min_atoms=min_atoms, max_atoms=max_atoms, min_coord=min_coord))
    return romp.marginal_x(mu)
