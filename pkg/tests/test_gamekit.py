import itertools

import numpy as np
import pytest

from znlcs.gamekit import (GameSpec, LinearSystem, ModNGameParams,
                           _best_response_numpy, classical_value,
                           make_lcs_game, make_mod_n_game,
                           mod_n_linear_system, relabel_answers)


def _brute_force_value(g: GameSpec):
    """Oracle: enumerate every deterministic pair outright."""
    best = -1.0
    count = 0
    W = g.distribution[:, :, None, None] * g.predicate
    for fa in itertools.product(range(g.mA), repeat=g.nA):
        for fb in itertools.product(range(g.mB), repeat=g.nB):
            v = sum(W[i, j, fa[i], fb[j]]
                    for i in range(g.nA) for j in range(g.nB))
            if v > best + 1e-12:
                best, count = v, 1
            elif v > best - 1e-12:
                count += 1
    return best, count


@pytest.mark.parametrize("n", [2, 3, 4])
def test_classical_value_matches_brute_force(n):
    g = make_mod_n_game(ModNGameParams(n, 0, 1))
    value, pairs = classical_value(g)
    oracle_value, oracle_pairs = _brute_force_value(g)
    assert value == pytest.approx(oracle_value, abs=1e-12)
    assert pairs == oracle_pairs
    assert value == pytest.approx(0.75, abs=1e-12)


def test_numpy_fallback_matches_kernel():
    for n, m1, m2 in [(2, 0, 1), (3, 1, 2), (4, 0, 3)]:
        g = make_mod_n_game(ModNGameParams(n, m1, m2))
        W = np.ascontiguousarray(
            g.distribution[:, :, None, None] * g.predicate)
        fallback = _best_response_numpy(W)
        oracle = _brute_force_value(g)
        assert fallback[0] == pytest.approx(oracle[0], abs=1e-12)
        assert fallback[1] == oracle[1]


def test_classical_value_degenerate_equal_equations():
    # m1 == m2 makes the system consistent: perfect classical strategies.
    g = make_mod_n_game(ModNGameParams(3, 1, 1))
    value, _ = classical_value(g)
    assert value == pytest.approx(1.0, abs=1e-12)


def test_budget_guard():
    g = make_mod_n_game(ModNGameParams(5, 0, 1))
    with pytest.raises(ValueError, match="budget"):
        classical_value(g, budget=10)


def test_relabel_answers_preserves_value():
    g = make_mod_n_game(ModNGameParams(3, 0, 1))
    g2 = relabel_answers(g, [2, 0, 1], [1, 2, 0])
    assert classical_value(g)[0] == pytest.approx(
        classical_value(g2)[0], abs=1e-12)


def test_game_json_round_trip():
    g = make_mod_n_game(ModNGameParams(3, 0, 2))
    g2 = GameSpec.from_json(g.to_json())
    assert np.array_equal(g.predicate, g2.predicate)
    assert np.allclose(g.distribution, g2.distribution)


def test_linear_system_satisfying_assignments_lexicographic():
    sys = mod_n_linear_system(ModNGameParams(3, 1, 2))
    sols = sys.satisfying_assignments(0)
    assert sols == [(0, 1), (1, 0), (2, 2)]
    assert sols == sorted(sols)


def test_lcs_game_mirrors_mod_n_game_value():
    sys = mod_n_linear_system(ModNGameParams(3, 0, 1))
    g = make_lcs_game(sys)
    # Inconsistent pair of equations: the LCS game is also not winnable.
    value, _ = classical_value(g)
    assert value < 1.0 - 1e-9


def test_lcs_game_consistent_system_is_winnable():
    sys = LinearSystem(modulus=2, equations=(
        ((0, 1), (1, 1), 0), ((1, 2), (1, 1), 1)))
    value, _ = classical_value(make_lcs_game(sys))
    assert value == pytest.approx(1.0, abs=1e-12)


def test_distribution_validation():
    with pytest.raises(ValueError):
        GameSpec(nA=1, nB=1, mA=1, mB=1,
                 distribution=np.array([[0.5]]),
                 predicate=np.ones((1, 1, 1, 1), dtype=bool))
