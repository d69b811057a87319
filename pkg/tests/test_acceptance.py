"""Acceptance suite: one test per criterion, one printed verdict line each.

Tolerances are pinned here and nowhere else: 1e-9 for the algebraic identity
checks, 1e-12 for the hand-computed fixture reproductions, exact equality
where the arithmetic is exact (orders, dyadic tallies, set comparisons).
Run with ``pytest tests/test_acceptance.py -v -s`` to see the verdict lines.
"""

from __future__ import annotations

import json
import time
from contextlib import contextmanager

import numpy as np
import pytest

from sdkit import (
    CriterionFamily,
    PreferenceRelation,
    SDMatrix,
    WeightVector,
    abstention_tally,
    apply_refinement,
    classify,
    copeland,
    core,
    group_intervals,
    group_level,
    integral_bounds,
    interval_utilities,
    intersect,
    isd,
    is_transitive,
    ladder,
    level_relation,
    level_slice,
    majority,
    meet,
    join,
    missing_info,
    new_session,
    potential,
    refine,
    report_json,
    session_from_document,
    session_json,
    strict_part,
    tally,
    utility,
)
from sdkit import formats
from sdkit.formats import LoadedData
from sdkit.interval import PartialSDMatrix

from oracles import (
    letters,
    oracle_core,
    oracle_integral_upper,
    random_abstention_panel,
    random_panel,
    random_partial,
    random_sd,
    random_weights,
)

IDENTITY_TOL = 1e-9
FIXTURE_TOL = 1e-12


@contextmanager
def criterion(number: int, title: str):
    try:
        yield
    except BaseException:
        print(f"[FAIL] criterion {number}: {title}")
        raise
    print(f"[PASS] criterion {number}: {title}")


def max_t_defect(phi: np.ndarray) -> float:
    d = phi[:, :, None] + phi[None, :, :] - phi[:, None, :]
    return float(np.max(np.abs(d)))


def test_c1_isd_repair():
    with criterion(1, "isd output is skew-symmetric and additively transitive (1000 matrices, < 5 s)"):
        rng = np.random.default_rng(2024)
        started = time.perf_counter()
        for _ in range(1000):
            n = int(rng.integers(2, 9))
            m = random_sd(rng, n, scale=10.0)
            f = isd(m)  # uniform weights
            assert float(np.max(np.abs(f.phi + f.phi.T))) <= IDENTITY_TOL
            assert max_t_defect(f.phi) <= IDENTITY_TOL
        elapsed = time.perf_counter() - started
        assert elapsed < 5.0, f"took {elapsed:.2f}s"


def test_c2_fixed_point_on_transitive_input():
    with criterion(2, "isd and utility are fixed points on potential-difference matrices (200 cases)"):
        rng = np.random.default_rng(2025)
        for _ in range(200):
            n = int(rng.integers(2, 9))
            values = rng.uniform(-5, 5, size=n)
            m = SDMatrix.from_potential(letters(n), values)
            w = random_weights(rng, m.base)
            assert classify(m).in_t
            assert float(np.max(np.abs(isd(m, w).phi - m.phi))) <= IDENTITY_TOL
            q = utility(m, w).values
            f = potential(m, w).values
            assert float(np.max(np.abs(q - f))) <= IDENTITY_TOL


def test_c3_cycle_collapse(fix_cycle, uniform):
    with criterion(3, "the perfect cycle collapses to all-zero degrees and utilities"):
        f = isd(fix_cycle, uniform)
        assert float(np.max(np.abs(f.phi))) <= FIXTURE_TOL
        assert float(np.max(np.abs(utility(fix_cycle, uniform).values))) <= FIXTURE_TOL


def test_c4_copeland_level_zero_equivalence(fix_grp, fix_condorcet, abc):
    with criterion(4, "the zero-level group decision is the Copeland weak order (500 panels + fixtures)"):
        rng = np.random.default_rng(2026)
        for _ in range(500):
            t = tally(random_panel(rng, int(rng.integers(2, 7)), int(rng.integers(1, 8))))
            g0, _ = group_level(t, 0.0)
            _, g_k = copeland(t)
            assert g0 == g_k

        t = tally(fix_grp)
        scores, _ = copeland(t)
        assert scores.as_dict() == {"a": 4.0, "b": 0.0, "c": -4.0}
        assert scores.ranking() == [["a"], ["b"], ["c"]]

        t = tally(fix_condorcet)
        maj = majority(t)
        assert strict_part(maj) == PreferenceRelation.from_pairs(
            abc, [("a", "b"), ("b", "c"), ("c", "a")]
        )
        assert not is_transitive(maj)
        assert core(maj).as_set == set()
        scores, g_k = copeland(t)
        assert scores.ranking() == [["a", "b", "c"]]
        assert g_k == PreferenceRelation.full(abc)


def test_c5_ladder_laws():
    with criterion(5, "ladders are anti-monotone with nested cores and lattice structure (500 matrices)"):
        rng = np.random.default_rng(2027)
        for k in range(500):
            n = int(rng.integers(2, 8))
            m = random_sd(rng, n, integers=bool(k % 2))
            chain = ladder(m)
            rungs = chain.rungs
            for r in rungs:
                assert r.core.as_set == oracle_core(r.relation)
            for i in range(len(rungs)):
                for j in range(i + 1, len(rungs)):
                    low, high = rungs[i], rungs[j]
                    assert intersect(high.relation, low.relation) == high.relation
                    assert low.core.as_set <= high.core.as_set
                    a = level_slice(m, low.level)
                    b = level_slice(m, high.level)
                    assert meet(a, b).relation == level_relation(m, high.level)
                    assert join(a, b).relation == level_relation(m, low.level)
            assert rungs[-1].core.as_set == set(m.base.ids)


def test_c6_interval_laws():
    with criterion(6, "interval identities, width law, and refinement monotonicity (500 partial matrices)"):
        rng = np.random.default_rng(2028)
        for k in range(500):
            n = int(rng.integers(2, 9))
            p = random_partial(rng, n, phi_star=float(rng.uniform(1, 10)),
                               density=float(rng.uniform(0.1, 0.9)))
            w = random_weights(rng, p.base)
            est = interval_utilities(p, w)
            u_mat, d_mat = integral_bounds(p, w)
            assert np.allclose(u_mat, np.subtract.outer(est.upper, est.lower),
                               atol=IDENTITY_TOL, rtol=0)
            assert np.allclose(d_mat, np.subtract.outer(est.lower, est.upper),
                               atol=IDENTITY_TOL, rtol=0)
            if k % 10 == 0:
                assert np.allclose(u_mat, oracle_integral_upper(p, w),
                                   atol=IDENTITY_TOL, rtol=0)
            widths = est.upper - est.lower
            assert np.allclose(widths, 2.0 * est.missing_mass * p.phi_star,
                               atol=IDENTITY_TOL, rtol=0)

            absent = p.absent_pairs()
            if absent:
                x, y = absent[int(rng.integers(len(absent)))]
                value = float(rng.uniform(-p.phi_star, p.phi_star))
                after = interval_utilities(refine(p, x, y, value), w)
                assert np.all(after.lower >= est.lower - FIXTURE_TOL)
                assert np.all(after.upper <= est.upper + FIXTURE_TOL)
                before_info = missing_info(est, w)
                after_info = missing_info(after, w)
                assert after_info.mean <= before_info.mean + FIXTURE_TOL
                assert after_info.max <= before_info.max + FIXTURE_TOL
                assert after_info.sum <= before_info.sum + FIXTURE_TOL

        for _ in range(50):
            m = random_sd(rng, int(rng.integers(2, 9)))
            w = random_weights(rng, m.base)
            est = interval_utilities(PartialSDMatrix.complete(m), w)
            assert np.array_equal(est.lower, est.upper)
            assert np.array_equal(est.lower, potential(m, w).values)
            assert np.all(est.missing_mass == 0.0)


def test_c7_partial_fixture_reproduction(fix_part, uniform):
    with criterion(7, "the partial fixture reproduces its intervals, criteria, and integral bound"):
        est = interval_utilities(fix_part, uniform)
        expected = {"a": (0.0, 2 / 3), "b": (-2 / 3, 0.0), "c": (-2 / 3, 2 / 3)}
        for alt, (lo, hi) in expected.items():
            got_lo, got_hi = est.interval(alt)
            assert abs(got_lo - lo) <= FIXTURE_TOL
            assert abs(got_hi - hi) <= FIXTURE_TOL
        info = missing_info(est, uniform)
        assert abs(info.mean - 4 / 9) <= FIXTURE_TOL
        assert abs(info.max - 2 / 3) <= FIXTURE_TOL
        assert abs(info.sum - 1.0) <= FIXTURE_TOL
        u_mat, _ = integral_bounds(fix_part, uniform)
        i = fix_part.base.index
        assert abs(u_mat[i("a"), i("b")] - 4 / 3) <= FIXTURE_TOL


def test_c8_abstention_midpoint():
    with criterion(8, "panel margins are the exact midpoint of the abstention brackets (500 panels)"):
        rng = np.random.default_rng(2029)
        for _ in range(500):
            vpr = random_abstention_panel(rng, int(rng.integers(2, 7)), int(rng.integers(1, 8)))
            t = abstention_tally(vpr)
            phi = t.a - t.b
            d = phi - t.p
            u = phi + t.p
            assert np.array_equal((d + u) / 2.0, phi)

        base = letters(2)
        experts = (
            [PreferenceRelation.from_pairs(base, [("a", "b")])] * 3
            + [PreferenceRelation.from_pairs(base, [("b", "a")])] * 1
            + [PreferenceRelation.empty(base)] * 1
        )
        from sdkit import VectorPreferenceRelation

        t = abstention_tally(VectorPreferenceRelation(base, tuple(experts)))
        phi = t.a - t.b
        assert (t.a[0, 1], t.b[0, 1], t.p[0, 1]) == (3.0, 1.0, 1.0)
        assert (phi - t.p)[0, 1] == 1.0  # lower bracket
        assert (phi + t.p)[0, 1] == 3.0  # upper bracket


SD_CSV = """,a,b,c
a,0,2,3
b,-2,0,1
c,-3,-1,0
"""

PARTIAL_CSV = """# phi_star = 1
,a,b,c
a,0,1,NA
b,-1,0,
c,NA,,0
"""

BALLOTS = {
    "alternatives": ["a", "b", "c"],
    "experts": [
        {"id": "E1", "order": ["a", "b", "c"]},
        {"id": "E2", "order": ["a", "c", "b"]},
        {"id": "E3", "pairs": [
            {"x": "a", "y": "b", "verdict": "y"},
            {"x": "a", "y": "c", "verdict": "x"},
            {"x": "b", "y": "c", "verdict": "x"},
        ]},
    ],
}

ABSTAIN_BALLOTS = {
    "alternatives": ["a", "b", "c"],
    "experts": [
        {"id": "E1", "order": ["a", "b", "c"]},
        {"id": "E2", "pairs": [{"x": "a", "y": "b", "verdict": "abstain"},
                               {"x": "a", "y": "c", "verdict": "x"}]},
    ],
}

RELATION = {"alternatives": ["a", "b", "c"], "pairs": [["a", "b"], ["b", "a"], ["a", "c"]]}


def test_c9_round_trips(fix_t, fix_nt, fix_part):
    with criterion(9, "every format round-trips and session replay reproduces reports byte for byte"):
        # relation literal
        r = formats.parse_relation(RELATION)
        dumped = formats.dump_relation(r)
        assert formats.parse_relation(dumped) == r
        assert formats.dump_relation(formats.parse_relation(dumped)) == dumped

        # complete and partial matrices
        m = formats.parse_sd_csv(SD_CSV)
        text = formats.dump_sd_csv(m)
        assert formats.parse_sd_csv(text) == m
        assert formats.dump_sd_csv(formats.parse_sd_csv(text)) == text

        p = formats.parse_partial_csv(PARTIAL_CSV)
        text = formats.dump_partial_csv(p)
        assert formats.parse_partial_csv(text) == p
        assert formats.dump_partial_csv(formats.parse_partial_csv(text)) == text

        # ballots, with and without abstentions
        for doc in (BALLOTS, ABSTAIN_BALLOTS):
            vpr = formats.parse_ballots(doc)
            dumped = formats.dump_ballots(vpr)
            assert formats.parse_ballots(dumped) == vpr
            assert formats.dump_ballots(formats.parse_ballots(dumped)) == dumped

        # criterion families
        fam = CriterionFamily(fix_t.base, (fix_t, fix_nt), (0.25, 0.75), labels=("q", "c"))
        dumped = formats.dump_criteria(fam)
        assert formats.parse_criteria(dumped) == fam
        assert formats.dump_criteria(formats.parse_criteria(dumped)) == dumped

        # sessions of every kind replay to byte-identical reports
        candidates = [
            new_session(LoadedData("sd", fix_t)),
            new_session(LoadedData("panel", formats.parse_ballots(BALLOTS))),
            new_session(
                LoadedData("abstention", abstention_tally(formats.parse_ballots(ABSTAIN_BALLOTS)))
            ),
            new_session(LoadedData("criteria", fam)),
        ]
        partial_session = new_session(LoadedData("partial", fix_part))
        partial_session = apply_refinement(partial_session, "a", "c", 1 / 3)
        candidates.append(partial_session)
        for s in candidates:
            text = session_json(s)
            reloaded = session_from_document(json.loads(text))
            assert session_json(reloaded) == text
            assert report_json(reloaded) == report_json(s)
