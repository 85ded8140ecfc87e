import pytest

from sizedhedonic import (
    Concept,
    InfeasiblePartitionError,
    NotSymmetricError,
    Partition,
    SizeBounds,
    aziz_failure,
    aziz_reference,
    cis_star_nonneg,
    cis_star_nonzero,
    cis_upper,
    cns_pairs,
    dynamics_steps,
    exists_stable,
    feasible_k_partition_exists,
    intro_negative,
    intro_positive,
    max_welfare_partition,
    social_welfare,
    star_no_cis,
    symmetric_dynamics,
    verify,
)
from sizedhedonic.model import Game

from conftest import random_feasible_bounds, random_feasible_partition, random_game


class TestCisUpper:
    def test_reference_game(self):
        g = aziz_failure()
        partition, trace = cis_upper(g, 4)
        assert partition == Partition([[1], [2, 3, 4]])
        assert verify(g, partition, SizeBounds(1, 4), Concept.CIS).stable
        actors = [e.agent for e in trace]
        assert len(actors) == len(set(actors))

    def test_all_zero_game_stays_singleton(self):
        g = Game(5)
        partition, trace = cis_upper(g, 3)
        assert partition == Partition([[a] for a in g.agents])
        assert all(e.action == "created" and e.helpers == () for e in trace)

    def test_mutual_pair(self):
        g = Game(2, {(1, 2): 1, (2, 1): 1})
        partition, _ = cis_upper(g, 2)
        assert partition == Partition([[1, 2]])

    def test_rejects_upper_below_two(self):
        with pytest.raises(ValueError):
            cis_upper(Game(2), 1)

    def test_latecomers_never_join_over_a_decision_makers_objection(self):
        # leader 1 takes friend 4; without barring disliked joiners, agent 2
        # would enter for 4's sake, push 1 below zero, and 1 could then flee
        g = Game(
            4,
            {(1, 4): 2, (1, 2): -3, (2, 4): 5, (2, 3): 1},
        )
        partition, _ = cis_upper(g, 4)
        assert partition == Partition([[1, 4], [2, 3]])
        assert verify(g, partition, SizeBounds(1, 4), Concept.CIS).stable

    def test_soundness_sweep(self, rng):
        for _ in range(200):
            n = rng.randint(1, 8)
            g = random_game(rng, n)
            upper = rng.randint(2, 8)
            partition, trace = cis_upper(g, upper)
            assert max(partition.sizes()) <= upper
            assert verify(g, partition, SizeBounds(1, upper), Concept.CIS).stable
            actors = [e.agent for e in trace]
            assert len(actors) == len(set(actors))

    def test_unconstrained_via_full_upper(self, rng):
        for _ in range(40):
            n = rng.randint(2, 7)
            g = random_game(rng, n)
            partition, _ = cis_upper(g, n)
            b = SizeBounds(1, n)
            assert verify(g, partition, b, Concept.CIS).stable
            assert exists_stable(g, b, Concept.CIS) is not None


class TestAzizReference:
    def test_known_failure_instance(self):
        g = aziz_failure()
        out = aziz_reference(g)
        assert out == Partition([[1, 3], [2, 4]])
        report = verify(g, out, SizeBounds(1, 4), Concept.CIS)
        assert not report.stable
        assert report.witness.agent == 3
        assert out.coalitions[report.witness.target] == (2, 4)

    def test_all_zero_game(self):
        assert aziz_reference(Game(4)) == Partition([[1], [2], [3], [4]])

    def test_disagrees_with_repaired_algorithm_on_reference_game(self):
        g = aziz_failure()
        fixed, _ = cis_upper(g, 4)
        b = SizeBounds(1, 4)
        assert not verify(g, aziz_reference(g), b, Concept.CIS).stable
        assert verify(g, fixed, b, Concept.CIS).stable


class TestCnsPairs:
    def test_all_zero_game(self):
        assert cns_pairs(Game(3)) == Partition([[1], [2], [3]])

    def test_one_sided_pair_sticks(self):
        g = Game(3, {(1, 2): 5, (2, 1): -1})
        out = cns_pairs(g)
        assert out == Partition([[1, 2], [3]])
        assert verify(g, out, SizeBounds(1, 2), Concept.CNS).stable

    def test_reference_game(self):
        g = aziz_failure()
        out = cns_pairs(g)
        assert out == Partition([[1, 3], [2, 4]])
        assert verify(g, out, SizeBounds(1, 2), Concept.CNS).stable

    def test_soundness_sweep(self, rng):
        for _ in range(200):
            g = random_game(rng, rng.randint(1, 8))
            out = cns_pairs(g)
            assert max(out.sizes()) <= 2
            assert verify(g, out, SizeBounds(1, 2), Concept.CNS).stable


class TestCisStarNonzero:
    def test_examples(self):
        vals = {(a, b): -1 for a in range(1, 5) for b in range(1, 5) if a != b}
        vals[(1, 2)] = vals[(2, 1)] = 1
        g = Game(4, vals)
        assert cis_star_nonzero(g, SizeBounds(2, 2), 2) == Partition([[1, 2], [3, 4]])
        all_pos = Game(4, {(a, b): 1 for a in range(1, 5) for b in range(1, 5) if a != b})
        assert cis_star_nonzero(all_pos, SizeBounds(2, 4), 1) == Partition([[1, 2, 3, 4]])
        eight = Game(
            8, {(a, b): 1 for a in range(1, 9) for b in range(1, 9) if a != b}
        )
        assert cis_star_nonzero(eight, SizeBounds(5, 7), 1) is None

    def test_two_phase_trace(self):
        # leader 1 takes its best partner plus two friends (budget x = 3 caps
        # at upper - lower = 2), leader 5 pairs with the tied lowest id, and
        # the leftover agent 7 tops up the youngest coalition
        vals = {(a, b): -1 for a in range(1, 8) for b in range(1, 8) if a != b}
        vals.update({(1, 2): 3, (1, 3): 2, (1, 4): 1, (4, 5): 2})
        g = Game(7, vals)
        out = cis_star_nonzero(g, SizeBounds(2, 4), 2)
        assert out == Partition([[1, 2, 3, 4], [5, 6, 7]])
        assert verify(g, out, SizeBounds(2, 4), Concept.CIS_STAR).stable

    def test_rejects_zero_valuations(self):
        with pytest.raises(ValueError):
            cis_star_nonzero(Game(3), SizeBounds(2, 3), 1)

    def test_rejects_trivial_lower_bound(self):
        # with lower bound 1 and k = n, two mutual friends admit no stable
        # partition into k coalitions at all, so the contract is unmeetable
        g = Game(2, {(1, 2): 1, (2, 1): 1})
        with pytest.raises(ValueError):
            cis_star_nonzero(g, SizeBounds(1, 2), 2)
        with pytest.raises(ValueError):
            cis_star_nonneg(g, SizeBounds(1, 2), 2)

    def test_soundness_sweep(self, rng):
        for _ in range(200):
            n = rng.randint(2, 8)
            g = random_game(rng, n, nonzero=True)
            lo = rng.randint(2, n)
            hi = rng.randint(lo, n)
            k = rng.randint(1, n)
            b = SizeBounds(lo, hi)
            out = cis_star_nonzero(g, b, k)
            if feasible_k_partition_exists(n, k, b):
                assert out is not None and len(out) == k
                assert verify(g, out, b, Concept.CIS_STAR).stable
            else:
                assert out is None


class TestCisStarNonneg:
    def test_all_zero_game(self):
        g = Game(6)
        out = cis_star_nonneg(g, SizeBounds(2, 3), 2)
        assert sorted(out.sizes()) == [3, 3]
        assert verify(g, out, SizeBounds(2, 3), Concept.CIS_STAR).stable

    def test_unsatisfiable_count_is_declined(self):
        assert cis_star_nonneg(Game(8), SizeBounds(5, 7), 1) is None

    def test_budgeted_join_trace(self):
        # agent 1 spends the single extra slot on a triple with both friends;
        # later leaders can then only open fresh coalitions at minimum size
        g = Game(
            7,
            {(1, 2): 2, (1, 3): 1, (2, 1): 1, (4, 5): 3, (6, 1): 2, (6, 7): 1},
        )
        out = cis_star_nonneg(g, SizeBounds(2, 3), 3)
        assert out == Partition([[1, 2, 3], [4, 5], [6, 7]])
        assert verify(g, out, SizeBounds(2, 3), Concept.CIS_STAR).stable

    def test_star_counterexample_game(self):
        g = star_no_cis(2)
        out = cis_star_nonneg(g, SizeBounds(2, 3), 2)
        assert verify(g, out, SizeBounds(2, 3), Concept.CIS_STAR).stable

    def test_rejects_negative_valuations(self):
        with pytest.raises(ValueError):
            cis_star_nonneg(Game(2, {(1, 2): -1}), SizeBounds(2, 2), 1)

    def test_soundness_sweep(self, rng):
        for _ in range(200):
            n = rng.randint(2, 8)
            g = random_game(rng, n, nonneg=True)
            lo = rng.randint(2, n)
            hi = rng.randint(lo, n)
            k = rng.randint(1, n)
            b = SizeBounds(lo, hi)
            out = cis_star_nonneg(g, b, k)
            if feasible_k_partition_exists(n, k, b):
                assert out is not None and len(out) == k
                assert verify(g, out, b, Concept.CIS_STAR).stable
            else:
                assert out is None


class TestSymmetricDynamics:
    def test_intro_fixed_points(self):
        b = SizeBounds(2, 3)
        p = Partition([[1, 2], [3, 4], [5, 6]])
        assert symmetric_dynamics(intro_positive(3), b, p) == (p, 0)
        assert symmetric_dynamics(intro_negative(3), b, p) == (p, 0)

    def test_off_diagonal_start_already_stable(self):
        g = intro_positive(3)
        init = Partition([[1, 4], [2, 5], [3, 6]])
        final, steps = symmetric_dynamics(g, SizeBounds(2, 3), init)
        assert steps == 0 and final == init
        assert social_welfare(g, final) == 6

    def test_rejects_nonsymmetric(self):
        with pytest.raises(NotSymmetricError):
            symmetric_dynamics(Game(2, {(1, 2): 1}), SizeBounds(1, 2), Partition([[1], [2]]))

    def test_rejects_infeasible_init(self):
        g = intro_positive(2)
        with pytest.raises(InfeasiblePartitionError):
            symmetric_dynamics(g, SizeBounds(2, 2), Partition([[1], [2], [3], [4]]))

    def test_converges_with_exact_welfare_steps(self, rng):
        for _ in range(60):
            n = rng.randint(2, 7)
            g = random_game(rng, n, symmetric=True)
            b = random_feasible_bounds(rng, n)
            init = random_feasible_partition(rng, n, b)
            welfare = social_welfare(g, init)
            steps = 0
            final = init
            for deviation, gain, after in dynamics_steps(g, b, init):
                assert gain >= 1
                new_welfare = social_welfare(g, after)
                assert new_welfare - welfare == 2 * gain
                welfare = new_welfare
                final = after
                steps += 1
            assert verify(g, final, b, Concept.NS_STAR).stable
            best = social_welfare(g, max_welfare_partition(g, b))
            assert steps <= max(0, best - social_welfare(g, init))
