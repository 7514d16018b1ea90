import numpy as np
import pytest

from logitgraph import (
    Game,
    GraphPoint,
    InvalidInputError,
    KMRepresentation,
    MixedProfile,
    NotOnGraphError,
    StrategicGameForm,
    deviation_payoff,
    deviation_payoffs,
    evaluate_mixed,
    km_decompose,
    km_recompose,
    logit_residual,
    nash_residual,
)
from conftest import (
    brute_force_expected_payoff,
    matching_pennies,
    one_player_game,
    random_game,
    random_interior_profile,
)

E = np.e


def uniform(game):
    return MixedProfile.uniform(game.form)


class TestTypes:
    def test_form_validation(self):
        with pytest.raises(InvalidInputError):
            StrategicGameForm(0, ())
        with pytest.raises(InvalidInputError):
            StrategicGameForm(2, (2,))
        with pytest.raises(InvalidInputError):
            StrategicGameForm(1, (0,))
        form = StrategicGameForm(2, (3, 2))
        assert form.profile_count == 6
        assert form.payoff_coordinate_count == 12

    def test_game_validation(self):
        form = StrategicGameForm(2, (2, 2))
        with pytest.raises(InvalidInputError, match="payoff"):
            Game(form, (np.zeros(4),))
        with pytest.raises(InvalidInputError, match=r"payoffs\[1\]"):
            Game(form, (np.zeros(4), np.zeros(3)))
        with pytest.raises(InvalidInputError, match="finite"):
            Game(form, (np.zeros(4), np.array([1.0, np.inf, 0.0, 0.0])))

    def test_flat_layout_player0_fastest(self):
        # tensor[a0, a1] must land at flat index a0 + 2*a1
        tensor = np.array([[11.0, 12.0], [21.0, 22.0]])
        game = Game.from_payoff_tensors([tensor, tensor])
        assert game.payoffs[0].tolist() == [11.0, 21.0, 12.0, 22.0]
        assert np.array_equal(game.payoff_tensor(0), tensor)

    def test_profile_validation(self):
        with pytest.raises(InvalidInputError, match="negative"):
            MixedProfile((np.array([1.1, -0.1]),))
        with pytest.raises(InvalidInputError, match="sums"):
            MixedProfile((np.array([0.6, 0.6]),))
        profile = MixedProfile.uniform(StrategicGameForm(2, (3, 2)))
        assert [v.tolist() for v in profile] == [[1 / 3] * 3, [0.5, 0.5]]

    def test_payoffs_are_immutable(self):
        game = matching_pennies()
        with pytest.raises(ValueError):
            game.payoffs[0][0] = 7.0


class TestEvaluateMixed:
    def test_matching_pennies_uniform_is_zero(self):
        game = matching_pennies()
        assert evaluate_mixed(game, 0, uniform(game)) == pytest.approx(0.0, abs=1e-15)

    def test_pure_profile_selects_entry(self, rng):
        form = StrategicGameForm(2, (3, 2))
        game = random_game(rng, form)
        for a0 in range(3):
            for a1 in range(2):
                x = MixedProfile((np.eye(3)[a0], np.eye(2)[a1]))
                expected = game.payoff_tensor(0)[a0, a1]
                assert evaluate_mixed(game, 0, x) == expected

    def test_2x2_quarter(self):
        game = Game.from_payoff_tensors(
            [np.array([[1.0, 0.0], [0.0, 0.0]]), np.zeros((2, 2))]
        )
        x = uniform(game)
        assert evaluate_mixed(game, 0, x) == pytest.approx(0.25, abs=1e-15)
        oracle = brute_force_expected_payoff(game, 0, x.vectors)
        assert oracle == pytest.approx(0.25, abs=1e-15)

    @pytest.mark.parametrize(
        "counts", [(2,), (4,), (2, 3), (3, 4), (2, 2, 2), (4, 4, 4)]
    )
    def test_agrees_with_brute_force(self, rng, counts):
        form = StrategicGameForm(len(counts), counts)
        game = random_game(rng, form)
        x = random_interior_profile(rng, form)
        for player in range(form.num_players):
            exact = brute_force_expected_payoff(game, player, x.vectors)
            assert evaluate_mixed(game, player, x) == pytest.approx(exact, abs=1e-12)

    def test_dimension_mismatch(self):
        game = matching_pennies()
        with pytest.raises(InvalidInputError):
            evaluate_mixed(game, 0, (np.array([0.5, 0.5]),))
        with pytest.raises(InvalidInputError):
            evaluate_mixed(game, 0, (np.array([0.5, 0.5]), np.array([1 / 3] * 3)))
        with pytest.raises(InvalidInputError):
            evaluate_mixed(game, 5, MixedProfile.uniform(game.form))


class TestDeviationPayoff:
    def test_matching_pennies_uniform(self):
        game = matching_pennies()
        for action in range(2):
            assert deviation_payoff(game, 0, action, uniform(game)) == pytest.approx(
                0.0, abs=1e-15
            )

    def test_one_player_no_opponents(self):
        game = one_player_game([1.0, 0.0])
        x = MixedProfile((np.array([0.3, 0.7]),))
        assert deviation_payoff(game, 0, 0, x) == 1.0
        assert deviation_payoff(game, 0, 1, x) == 0.0

    def test_2x2_expectation(self):
        game = Game.from_payoff_tensors(
            [np.array([[1.0, 0.0], [0.0, 0.0]]), np.zeros((2, 2))]
        )
        x = MixedProfile((np.array([1.0, 0.0]), np.array([0.25, 0.75])))
        # brute-force expectation over opponent actions: 1*0.25 + 0*0.75
        assert deviation_payoff(game, 0, 0, x) == pytest.approx(0.25, abs=1e-15)

    def test_ignores_own_mixture(self, rng):
        form = StrategicGameForm(2, (3, 2))
        game = random_game(rng, form)
        base = random_interior_profile(rng, form)
        other = MixedProfile((np.array([1.0, 0.0, 0.0]), base.vectors[1]))
        assert np.allclose(
            deviation_payoffs(game, 0, base), deviation_payoffs(game, 0, other)
        )

    def test_index_errors(self):
        game = matching_pennies()
        with pytest.raises(InvalidInputError):
            deviation_payoff(game, 2, 0, uniform(game))
        with pytest.raises(InvalidInputError):
            deviation_payoff(game, 0, 5, uniform(game))


class TestNashResidual:
    def test_matching_pennies_uniform(self):
        game = matching_pennies()
        assert nash_residual(game, uniform(game)) == 0.0

    def test_matching_pennies_pure(self):
        game = matching_pennies()
        x = MixedProfile((np.array([1.0, 0.0]), np.array([1.0, 0.0])))
        # player 1 gains from -1 to +1 by deviating
        assert nash_residual(game, x) == pytest.approx(2.0, abs=1e-15)

    def test_one_player_best_action(self):
        game = one_player_game([1.0, 0.0])
        assert nash_residual(game, MixedProfile((np.array([1.0, 0.0]),))) == 0.0

    def test_nonnegative(self, rng):
        form = StrategicGameForm(3, (2, 2, 2))
        for _ in range(20):
            game = random_game(rng, form)
            assert nash_residual(game, random_interior_profile(rng, form)) >= 0.0


class TestLogitResidual:
    def test_matching_pennies_uniform_any_n(self):
        game = matching_pennies()
        for n in (0.5, 1.0, 7.0, 300.0):
            assert logit_residual(game, uniform(game), n) <= 1e-15

    def test_one_player_closed_form(self):
        game = one_player_game([1.0, 0.0])
        x = MixedProfile((np.array([E / (1 + E), 1 / (1 + E)]),))
        assert logit_residual(game, x, 1.0) <= 1e-12

    def test_one_player_half(self):
        game = one_player_game([1.0, 0.0])
        x = MixedProfile((np.array([0.5, 0.5]),))
        assert logit_residual(game, x, 1.0) == pytest.approx(
            0.23105857863000488, abs=1e-9
        )

    def test_uniform_when_deviations_tie(self, rng):
        # constant payoffs: softmax of a constant vector is uniform
        form = StrategicGameForm(2, (3, 2))
        game = Game(form, tuple(np.full(6, c) for c in (2.5, -1.0)))
        assert logit_residual(game, MixedProfile.uniform(form), 4.0) <= 1e-15

    def test_invalid_n(self):
        game = matching_pennies()
        with pytest.raises(InvalidInputError):
            logit_residual(game, uniform(game), 0.0)
        with pytest.raises(InvalidInputError):
            logit_residual(game, uniform(game), -1.0)

    def test_boundary_profile_warns_but_reports(self):
        game = matching_pennies()
        x = MixedProfile((np.array([1.0, 0.0]), np.array([0.5, 0.5])))
        with pytest.warns(RuntimeWarning):
            value = logit_residual(game, x, 2.0)
        assert value == pytest.approx(0.5, abs=1e-15)


class TestResidualInvariance:
    @pytest.mark.parametrize("counts", [(2, 2), (3, 2), (2, 2, 2)])
    def test_relabeling_actions(self, rng, counts):
        form = StrategicGameForm(len(counts), counts)
        game = random_game(rng, form)
        x = random_interior_profile(rng, form)
        perms = [rng.permutation(m) for m in counts]
        permuted = Game.from_payoff_tensors(
            [game.payoff_tensor(i)[np.ix_(*perms)] for i in range(form.num_players)]
        )
        x_perm = MixedProfile(tuple(v[p] for v, p in zip(x.vectors, perms)))
        assert nash_residual(game, x) == pytest.approx(
            nash_residual(permuted, x_perm), abs=1e-12
        )
        assert logit_residual(game, x, 3.0) == pytest.approx(
            logit_residual(permuted, x_perm, 3.0), abs=1e-12
        )


class TestKMDecomposition:
    def test_matching_pennies(self):
        rep = km_decompose(matching_pennies())
        for i in range(2):
            assert np.array_equal(rep.tilde_u[i], matching_pennies().payoffs[i])
            assert np.array_equal(rep.bar_u[i], np.zeros(2))

    def test_constant_game(self):
        form = StrategicGameForm(2, (2, 3))
        game = Game(form, (np.full(6, 4.5), np.full(6, -2.0)))
        rep = km_decompose(game)
        assert np.allclose(rep.tilde_u[0], 0.0) and np.allclose(rep.tilde_u[1], 0.0)
        assert np.allclose(rep.bar_u[0], 4.5) and np.allclose(rep.bar_u[1], -2.0)

    def test_one_player(self):
        rep = km_decompose(one_player_game([1.0, 0.0]))
        assert np.array_equal(rep.tilde_u[0], np.zeros(2))
        assert np.array_equal(rep.bar_u[0], np.array([1.0, 0.0]))

    def test_recompose_simple(self):
        form = StrategicGameForm(1, (2,))
        rep = KMRepresentation(form, (np.zeros(2),), (np.array([1.0, 0.0]),))
        game = km_recompose(rep)
        assert game.payoffs[0].tolist() == [1.0, 0.0]

    @pytest.mark.parametrize("counts", [(2,), (2, 3), (3, 2), (2, 2, 2), (4, 3, 2)])
    def test_round_trip_identity(self, rng, counts):
        form = StrategicGameForm(len(counts), counts)
        for _ in range(5):
            game = random_game(rng, form)
            rebuilt = km_recompose(km_decompose(game))
            for a, b in zip(game.payoffs, rebuilt.payoffs):
                assert np.abs(a - b).max() <= 1e-12

    def test_zero_mean_invariant(self, rng):
        form = StrategicGameForm(3, (2, 3, 2))
        rep = km_decompose(random_game(rng, form))
        for i in range(3):
            tensor = rep.tilde_u[i].reshape(form.action_counts, order="F")
            axes = tuple(j for j in range(3) if j != i)
            assert np.abs(tensor.mean(axis=axes)).max() <= 1e-9

    def test_invalid_representation_rejected(self):
        form = StrategicGameForm(2, (2, 2))
        biased = np.array([0.5, 0.5, 0.5, 0.5])  # opponent mean 0.5, not 0
        with pytest.raises(InvalidInputError, match="tilde_u"):
            KMRepresentation(form, (biased, np.zeros(4)), (np.zeros(2), np.zeros(2)))


class TestGraphPoint:
    def test_nash_factory_checks_residual(self):
        game = matching_pennies()
        point = GraphPoint.nash(game, MixedProfile.uniform(game.form))
        assert point.kind == "nash" and point.residual == 0.0
        with pytest.raises(NotOnGraphError):
            GraphPoint.nash(game, MixedProfile((np.array([1.0, 0.0]), np.array([1.0, 0.0]))))

    def test_logit_factory_checks_residual(self):
        game = one_player_game([1.0, 0.0])
        x = MixedProfile((np.array([E / (1 + E), 1 / (1 + E)]),))
        point = GraphPoint.logit(game, x, 1.0)
        assert point.kind == "logit" and point.n == 1.0
        with pytest.raises(NotOnGraphError):
            GraphPoint.logit(game, MixedProfile((np.array([0.5, 0.5]),)), 1.0)

    def test_kind_and_n_consistency(self):
        game = matching_pennies()
        x = MixedProfile.uniform(game.form)
        with pytest.raises(InvalidInputError):
            GraphPoint(game=game, profile=x, kind="nash", residual=0.0, n=2.0)
        with pytest.raises(InvalidInputError):
            GraphPoint(game=game, profile=x, kind="logit", residual=0.0)
