import math

import numpy as np
import pytest

from znlcs.gamekit import ModNGameParams, make_mod_n_game
from znlcs.ncpoly import NCPolynomial
from znlcs.numerics import partial_trace_B
from znlcs.strategykit import (Strategy, canonical_state, canonical_strategy,
                               canonical_value_formula, check_state_relation,
                               observable_to_pvm,
                               psi_representation_residuals, random_strategy,
                               schmidt, strategy_value_direct)


@pytest.mark.parametrize("n", [2, 3, 4, 5, 8])
def test_canonical_value_matches_formula(n):
    g = make_mod_n_game(ModNGameParams(n, 0, 1))
    s = canonical_strategy(n)
    assert strategy_value_direct(g, s) == pytest.approx(
        canonical_value_formula(n), abs=1e-10)


def test_canonical_state_normalization():
    for n in range(2, 10):
        psi = canonical_state(n)
        assert abs(np.linalg.norm(psi) - 1.0) < 1e-12
        # gamma^2 equals the sum of squared unnormalized amplitudes.
        z = np.exp(1j * np.pi / (2 * n))
        total = sum(abs(1 - z ** (n + 2 * i + 1)) ** 2 for i in range(n))
        assert total == pytest.approx(
            2 * n + 2 / math.sin(math.pi / (2 * n)), abs=1e-10)


def test_canonical_state_reduced_density_oracle():
    # Reduced state of psi_3 is diagonal with entries |1 - z^(2i+4)|^2 / 10.
    n = 3
    psi = canonical_state(n)
    rho = partial_trace_B(np.outer(psi, psi.conj()), n, n)
    z = np.exp(1j * np.pi / (2 * n))
    expected = np.diag([abs(1 - z ** (2 * i + 4)) ** 2 / 10
                        for i in range(n)])
    assert np.allclose(rho, expected, atol=1e-12)


def test_observable_to_pvm_reconstruction():
    n = 4
    s = canonical_strategy(n)
    w = np.exp(2j * np.pi / n)
    for U in (*s.alice_obs, *s.bob_obs):
        pvm = observable_to_pvm(U, n)
        assert len(pvm) == n
        total = sum(pvm)
        assert np.linalg.norm(total - np.eye(n)) < 1e-10
        recon = sum(w ** i * E for i, E in enumerate(pvm))
        assert np.linalg.norm(recon - U) < 1e-10
        for i, E in enumerate(pvm):
            assert np.linalg.norm(E @ E - E) < 1e-10
            for j in range(i + 1, n):
                assert np.linalg.norm(E @ pvm[j]) < 1e-10


def test_schmidt_known_states():
    # Product state: rank 1, zero entropy.
    product = np.kron([1.0, 0.0], [0.0, 1.0]).astype(complex)
    sd = schmidt(product, 2, 2)
    assert sd.rank == 1
    assert sd.entropy == pytest.approx(0.0, abs=1e-10)
    # Maximally entangled in dimension 3: rank 3, entropy log2(3).
    mes = np.eye(3).reshape(9) / np.sqrt(3)
    sd = schmidt(mes, 3, 3)
    assert sd.rank == 3
    assert sd.entropy == pytest.approx(math.log2(3), abs=1e-10)
    assert np.allclose(sorted(sd.coefficients),
                       [1 / math.sqrt(3)] * 3, atol=1e-10)


def test_schmidt_canonical_state():
    for n in (2, 3, 7):
        sd = schmidt(canonical_state(n), n, n)
        assert sd.rank == n
        assert 0.0 < sd.entropy <= math.log2(n) + 1e-12


def test_strategy_json_round_trip():
    s = canonical_strategy(3)
    s2 = Strategy.from_json(s.to_json())
    assert np.allclose(s.state, s2.state)
    for M, M2 in zip(s.alice_obs + s.bob_obs, s2.alice_obs + s2.bob_obs):
        assert np.allclose(M, M2)


def test_validate_rejects_bad_observable():
    s = canonical_strategy(3)
    bad = Strategy(order=3, dimA=3, dimB=3,
                   alice_obs=(s.alice_obs[0], 2.0 * s.alice_obs[1]),
                   bob_obs=s.bob_obs, state=s.state)
    with pytest.raises(ValueError):
        bad.validate()


def test_check_state_relation_zero_polynomial():
    s = canonical_strategy(3)
    assert check_state_relation(s, NCPolynomial.zero(3)) == pytest.approx(0.0)


@pytest.mark.parametrize("n", [2, 3])
def test_psi_representation(n):
    res_a, res_b = psi_representation_residuals(canonical_strategy(n))
    assert res_a < 1e-9
    assert res_b < 1e-9


def test_psi_representation_detects_corruption():
    # Negative control: replacing Bob's second observable breaks the
    # multiplicativity condition on the state.
    s = canonical_strategy(3)
    corrupt = Strategy(
        order=3, dimA=3, dimB=3, alice_obs=s.alice_obs,
        bob_obs=(s.bob_obs[0], s.bob_obs[0]), state=s.state)
    res_a, res_b = psi_representation_residuals(corrupt)
    assert max(res_a, res_b) > 1e-2


def test_random_strategy_valid_and_seeded():
    s = random_strategy(3, 3, 4, 99)
    s.validate()
    s2 = random_strategy(3, 3, 4, 99)
    assert np.allclose(s.state, s2.state)
    assert np.allclose(s.alice_obs[0], s2.alice_obs[0])
