"""Canonical fixtures shared across the suite.

All fixtures use alternatives a, b, c and, unless a test says otherwise,
uniform weights 1/3.
"""

from __future__ import annotations

import pytest

from sdkit import (
    AlternativeSet,
    SDMatrix,
    VectorPreferenceRelation,
    WeightVector,
    expert_from_order,
)
from sdkit.interval import PartialSDMatrix


@pytest.fixture
def abc() -> AlternativeSet:
    return AlternativeSet(("a", "b", "c"))


@pytest.fixture
def uniform(abc) -> WeightVector:
    return WeightVector.uniform(abc)


@pytest.fixture
def fix_cycle(abc) -> SDMatrix:
    """phi(a,b) = phi(b,c) = phi(c,a) = 1: a perfect cycle."""
    return SDMatrix.from_entries(abc, {("a", "b"): 1.0, ("b", "c"): 1.0, ("c", "a"): 1.0})


@pytest.fixture
def fix_nt(abc) -> SDMatrix:
    """Skew-symmetric but not additively transitive: 2 + 1 != 1."""
    return SDMatrix.from_entries(abc, {("a", "b"): 2.0, ("a", "c"): 1.0, ("b", "c"): 1.0})


@pytest.fixture
def fix_t(abc) -> SDMatrix:
    """Differences of the potential (3, 1, 0); additively transitive."""
    return SDMatrix.from_potential(abc, [3.0, 1.0, 0.0])


@pytest.fixture
def fix_grp(abc) -> VectorPreferenceRelation:
    """Three experts: a>b>c, a>c>b, b>a>c."""
    return VectorPreferenceRelation(
        abc,
        (
            expert_from_order(abc, ["a", "b", "c"]),
            expert_from_order(abc, ["a", "c", "b"]),
            expert_from_order(abc, ["b", "a", "c"]),
        ),
        expert_ids=("E1", "E2", "E3"),
    )


@pytest.fixture
def fix_condorcet(abc) -> VectorPreferenceRelation:
    """The classic cycle panel: a>b>c, b>c>a, c>a>b."""
    return VectorPreferenceRelation(
        abc,
        (
            expert_from_order(abc, ["a", "b", "c"]),
            expert_from_order(abc, ["b", "c", "a"]),
            expert_from_order(abc, ["c", "a", "b"]),
        ),
        expert_ids=("E1", "E2", "E3"),
    )


@pytest.fixture
def fix_part(abc) -> PartialSDMatrix:
    """Only phi(a, b) = 1 known; c incomparable with both; phi_star = 1."""
    return PartialSDMatrix.from_entries(abc, {("a", "b"): 1.0}, phi_star=1.0)
