from __future__ import annotations

import numpy as np
import pytest

from sdkit import (
    AlternativeSet,
    PreferenceRelation,
    core,
    decompose,
    intersect,
    inverse,
    is_connected,
    is_coordinated,
    is_transitive,
    strict_part,
    union,
)
from sdkit.errors import InvariantViolation

from oracles import (
    letters,
    oracle_core,
    oracle_is_connected,
    oracle_is_transitive,
    random_relation,
    random_transitive_relation,
)


def rel(base, *pairs):
    return PreferenceRelation.from_pairs(base, pairs)


def all_relations(n):
    """Every relation on n alternatives, as membership bit patterns."""
    base = letters(n)
    cells = n * n
    for bits in range(2 ** cells):
        member = np.array(
            [(bits >> k) & 1 for k in range(cells)], dtype=bool
        ).reshape(n, n)
        yield PreferenceRelation(base, member)


class TestAlternativeSet:
    def test_requires_unique_ids(self):
        with pytest.raises(InvariantViolation):
            AlternativeSet(("a", "a"))

    def test_requires_nonempty(self):
        with pytest.raises(InvariantViolation):
            AlternativeSet(())

    def test_order_fixes_indexing(self, abc):
        assert abc.index("b") == 1
        assert "c" in abc and "z" not in abc


class TestInverse:
    def test_empty_is_self_inverse(self, abc):
        r = PreferenceRelation.empty(abc)
        assert inverse(r) == r

    def test_involution(self):
        rng = np.random.default_rng(7)
        for _ in range(200):
            r = random_relation(rng, letters(int(rng.integers(1, 9))))
            assert inverse(inverse(r)) == r

    def test_single_pair(self, abc):
        assert inverse(rel(abc, ("a", "b"))) == rel(abc, ("b", "a"))


class TestDecompose:
    def test_full_relation_is_all_identity(self, abc):
        ident, strict = decompose(PreferenceRelation.full(abc))
        assert ident == PreferenceRelation.full(abc)
        assert strict == PreferenceRelation.empty(abc)

    def test_single_pair_is_strict(self, abc):
        ident, strict = decompose(rel(abc, ("a", "b")))
        assert ident == PreferenceRelation.empty(abc)
        assert strict == rel(abc, ("a", "b"))

    def test_mixed(self, abc):
        ident, strict = decompose(rel(abc, ("a", "b"), ("b", "a"), ("a", "c")))
        assert ident == rel(abc, ("a", "b"), ("b", "a"))
        assert strict == rel(abc, ("a", "c"))

    def test_partition_property(self):
        rng = np.random.default_rng(11)
        for _ in range(200):
            r = random_relation(rng, letters(int(rng.integers(1, 9))))
            ident, strict = decompose(r)
            assert union(ident, strict) == r
            assert intersect(ident, strict) == PreferenceRelation.empty(r.base)


class TestConnectedTransitive:
    def test_full_is_connected(self, abc):
        assert is_connected(PreferenceRelation.full(abc))

    def test_empty_is_disconnected(self, abc):
        assert not is_connected(PreferenceRelation.empty(abc))

    def test_chain_misses_a_pair(self, abc):
        assert not is_connected(rel(abc, ("a", "b"), ("b", "c")))

    def test_cycle_is_not_transitive(self, abc):
        assert not is_transitive(rel(abc, ("a", "b"), ("b", "c"), ("c", "a")))

    def test_linear_order_is_transitive(self, abc):
        assert is_transitive(rel(abc, ("a", "b"), ("b", "c"), ("a", "c")))

    def test_empty_is_vacuously_transitive(self, abc):
        assert is_transitive(PreferenceRelation.empty(abc))

    def test_against_oracles(self):
        rng = np.random.default_rng(13)
        for _ in range(300):
            r = random_relation(rng, letters(int(rng.integers(1, 6))))
            assert is_transitive(r) == oracle_is_transitive(r)
            assert is_connected(r) == oracle_is_connected(r)


class TestCore:
    def test_strict_cycle_has_empty_core(self, abc):
        assert core(rel(abc, ("a", "b"), ("b", "c"), ("c", "a"))).as_set == set()

    def test_linear_order_keeps_the_top(self, abc):
        assert core(rel(abc, ("a", "b"), ("b", "c"), ("a", "c"))).as_set == {"a"}

    def test_full_relation_has_no_strict_part(self, abc):
        assert core(PreferenceRelation.full(abc)).as_set == {"a", "b", "c"}

    def test_empty_relation_keeps_everything(self, abc):
        assert core(PreferenceRelation.empty(abc)).as_set == {"a", "b", "c"}

    def test_exhaustive_against_oracle_small(self):
        for n in (1, 2, 3):
            for r in all_relations(n):
                assert core(r).as_set == oracle_core(r)

    def test_random_against_oracle(self):
        rng = np.random.default_rng(17)
        for _ in range(300):
            r = random_relation(rng, letters(int(rng.integers(4, 6))))
            assert core(r).as_set == oracle_core(r)

    def test_nonempty_under_transitivity(self):
        rng = np.random.default_rng(19)
        for _ in range(300):
            r = random_transitive_relation(rng, letters(int(rng.integers(1, 9))))
            assert is_transitive(r)
            assert core(r).as_set


class TestCoordination:
    def test_empty_relation_coordinates_with_anything(self, abc):
        rng = np.random.default_rng(23)
        empty = PreferenceRelation.empty(abc)
        for _ in range(20):
            assert is_coordinated(empty, random_relation(rng, abc))

    def test_reflexivity(self, abc):
        r = rel(abc, ("a", "b"), ("b", "a"), ("a", "c"))
        assert is_coordinated(r, r)

    def test_opposite_strict_parts(self, abc):
        assert not is_coordinated(rel(abc, ("a", "b")), rel(abc, ("b", "a")))

    def test_base_mismatch_rejected(self, abc):
        other = PreferenceRelation.empty(letters(2))
        with pytest.raises(InvariantViolation):
            is_coordinated(PreferenceRelation.empty(abc), other)

    def test_coordination_shrinks_cores(self):
        # strict_part(R1) within strict_part(R2) forces core(R2) within core(R1)
        rng = np.random.default_rng(29)
        found = 0
        for _ in range(600):
            base = letters(int(rng.integers(2, 6)))
            r1 = random_relation(rng, base, density=0.3)
            r2 = random_relation(rng, base, density=0.6)
            if not is_coordinated(r1, r2):
                continue
            found += 1
            assert core(r2).as_set <= core(r1).as_set
        assert found > 20

    def test_strict_growth_shrinks_cores(self):
        # the one-directional monotonicity result on its own
        rng = np.random.default_rng(31)
        for _ in range(300):
            base = letters(int(rng.integers(2, 6)))
            r1 = random_relation(rng, base, density=0.4)
            extra = random_relation(rng, base, density=0.2)
            r2 = union(r1, extra)
            if strict_part(r1) != intersect(strict_part(r1), strict_part(r2)):
                continue  # adding pairs may turn strict pairs into ties
            assert core(r2).as_set <= core(r1).as_set
