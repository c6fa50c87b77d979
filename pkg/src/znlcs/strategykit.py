"""Quantum strategies for the mod-n games.

The canonical strategy S_n (shift/sign observables and the analytic optimal
state), winning-probability evaluation through projective measurements,
Schmidt/entropy analysis, state-dependent relation residuals, and the
state-restricted representation test.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import Callable, Dict, Hashable, List, Mapping, Sequence, Tuple

import numpy as np

from . import groupkit
from .gamekit import GameSpec
from .ncpoly import NCPolynomial, apply_nc
from .numerics import (DEFAULT_TOL, adjoint, frob, hermitian_eig,
                       partial_trace_B, random_order_n_observable, rng)

SCHMIDT_RANK_THRESHOLD = 1e-9


@dataclass(frozen=True)
class Strategy:
    """Observables of order n for each player plus a shared bipartite state."""

    order: int
    dimA: int
    dimB: int
    alice_obs: Tuple[np.ndarray, ...]
    bob_obs: Tuple[np.ndarray, ...]
    state: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "alice_obs", tuple(
            np.asarray(M, dtype=np.complex128) for M in self.alice_obs))
        object.__setattr__(self, "bob_obs", tuple(
            np.asarray(M, dtype=np.complex128) for M in self.bob_obs))
        object.__setattr__(
            self, "state", np.asarray(self.state, dtype=np.complex128))

    def validate(self, tol: float = 1e-8) -> None:
        n = self.order
        for dim, obs in ((self.dimA, self.alice_obs),
                         (self.dimB, self.bob_obs)):
            for U in obs:
                if U.shape != (dim, dim):
                    raise ValueError(f"observable shape {U.shape} != {dim}")
                if frob(U @ adjoint(U) - np.eye(dim)) > tol:
                    raise ValueError("observable is not unitary")
                if frob(np.linalg.matrix_power(U, n) - np.eye(dim)) > tol:
                    raise ValueError(f"observable is not of order {n}")
        if self.state.shape != (self.dimA * self.dimB,):
            raise ValueError("state dimension mismatch")
        if abs(np.linalg.norm(self.state) - 1.0) > 1e-10:
            raise ValueError("state is not a unit vector")

    def assignment(self) -> Dict[Tuple[str, int], np.ndarray]:
        """Letter table for noncommutative polynomial evaluation."""
        out: Dict[Tuple[str, int], np.ndarray] = {}
        for k, M in enumerate(self.alice_obs):
            out[("A", k)] = M
        for k, M in enumerate(self.bob_obs):
            out[("B", k)] = M
        return out

    def to_json(self) -> str:
        def mat(M: np.ndarray):
            return [[[float(c.real), float(c.imag)] for c in row]
                    for row in M]

        return json.dumps({
            "order": self.order, "dimA": self.dimA, "dimB": self.dimB,
            "aliceObs": [mat(M) for M in self.alice_obs],
            "bobObs": [mat(M) for M in self.bob_obs],
            "state": [[float(c.real), float(c.imag)] for c in self.state],
        })

    @classmethod
    def from_json(cls, text: str) -> "Strategy":
        d = json.loads(text)

        def mat(entries):
            return np.array([[complex(re, im) for re, im in row]
                             for row in entries])

        return cls(
            order=d["order"], dimA=d["dimA"], dimB=d["dimB"],
            alice_obs=tuple(mat(M) for M in d["aliceObs"]),
            bob_obs=tuple(mat(M) for M in d["bobObs"]),
            state=np.array([complex(re, im) for re, im in d["state"]]),
        )


def canonical_state(n: int) -> np.ndarray:
    """The analytic optimal state: amplitudes (1 - z^{n+2i+1})/gamma on the
    anti-diagonal |i, -i mod n>, with gamma^2 = 2n + 2/sin(pi/2n)."""
    z = np.exp(1j * np.pi / (2 * n))
    gamma = math.sqrt(2 * n + 2.0 / math.sin(math.pi / (2 * n)))
    psi = np.zeros((n, n), dtype=np.complex128)
    for i in range(n):
        psi[i, (-i) % n] = (1.0 - z ** (n + 2 * i + 1)) / gamma
    return psi.reshape(n * n)


def canonical_strategy(n: int) -> Strategy:
    """The optimal strategy S_n: A0 = B0 = X, A1 = z^2 D_0 X,
    B1 = z^2 D_0 X^*."""
    if n < 2:
        raise ValueError("order must be >= 2")
    a0, a1 = groupkit.alice_generators(n)
    b0, b1 = groupkit.bob_generators(n)
    s = Strategy(
        order=n, dimA=n, dimB=n,
        alice_obs=(a0.to_matrix(), a1.to_matrix()),
        bob_obs=(b0.to_matrix(), b1.to_matrix()),
        state=canonical_state(n),
    )
    s.validate()
    return s


def canonical_value_formula(n: int) -> float:
    """Winning probability of S_n: 1/2 + 1/(2n sin(pi/2n))."""
    return 0.5 + 1.0 / (2 * n * math.sin(math.pi / (2 * n)))


def observable_to_pvm(U: np.ndarray, n: int,
                      tol: float = 1e-8) -> List[np.ndarray]:
    """Spectral projectors E_i = (1/n) sum_k (omega^{-i} U)^k of an order-n
    observable; they satisfy sum_i omega^i E_i = U."""
    dim = U.shape[0]
    if frob(np.linalg.matrix_power(U, n) - np.eye(dim)) > tol:
        raise ValueError(f"input is not an order-{n} observable")
    omega = np.exp(2j * np.pi / n)
    powers = [np.linalg.matrix_power(U, k) for k in range(n)]
    return [
        sum(omega ** (-i * k) * powers[k] for k in range(n)) / n
        for i in range(n)
    ]


def strategy_value_direct(g: GameSpec, s: Strategy,
                          tol: float = 1e-8) -> float:
    """Winning probability as the explicit measurement sum
    sum_{ijab} pi(i,j) V(i,j,a,b) <psi| E_{i,a} (x) F_{j,b} |psi>."""
    if len(s.alice_obs) != g.nA or len(s.bob_obs) != g.nB:
        raise ValueError("observable count does not match question counts")
    if g.mA != s.order or g.mB != s.order:
        raise ValueError("answer counts must equal the observable order")
    psi = s.state.reshape(s.dimA, s.dimB)
    alice_pvms = [observable_to_pvm(U, s.order, tol) for U in s.alice_obs]
    bob_pvms = [observable_to_pvm(U, s.order, tol) for U in s.bob_obs]
    value = 0.0
    for i in range(g.nA):
        for j in range(g.nB):
            p = g.distribution[i, j]
            if p == 0.0:
                continue
            for a in range(g.mA):
                Epsi = alice_pvms[i][a] @ psi
                for b in range(g.mB):
                    if g.predicate[i, j, a, b]:
                        value += p * float(np.real(
                            np.vdot(psi, Epsi @ bob_pvms[j][b].T)))
    return value


@dataclass(frozen=True)
class SchmidtData:
    coefficients: np.ndarray
    rank: int
    entropy: float


def schmidt(state: np.ndarray, dimA: int, dimB: int) -> SchmidtData:
    """Schmidt coefficients (nonincreasing), rank, and base-2 entanglement
    entropy, from the eigenvalues of the reduced density matrix."""
    state = np.asarray(state, dtype=np.complex128)
    if abs(np.linalg.norm(state) - 1.0) > 1e-10:
        raise ValueError("state must be a unit vector")
    rho = np.outer(state, state.conj())
    rhoA = partial_trace_B(rho, dimA, dimB)
    eigs = hermitian_eig(rhoA).eigenvalues
    lam2 = np.clip(eigs[::-1], 0.0, None)
    coeffs = np.sqrt(lam2)
    kept = lam2[coeffs > SCHMIDT_RANK_THRESHOLD]
    entropy = float(-np.sum(kept * np.log2(kept)))
    return SchmidtData(coefficients=coeffs,
                       rank=int(np.sum(coeffs > SCHMIDT_RANK_THRESHOLD)),
                       entropy=entropy)


def check_state_relation(s: Strategy, L: NCPolynomial) -> float:
    """Residual ||L(A, B)|psi>|| of a state-dependent operator relation."""
    out = apply_nc(L, s.assignment(), s.state, s.dimA, s.dimB)
    return float(np.linalg.norm(out))


def check_psi_representation(
        elements: Sequence[Hashable],
        product: Callable[[Hashable, Hashable], Hashable],
        f: Mapping[Hashable, np.ndarray],
        state: np.ndarray, dimA: int, dimB: int,
        side: str = "A") -> float:
    """Max over pairs (x, y) of ||f(x) f(y) |psi> - f(xy) |psi>||.

    ``side`` selects whether f acts on the first or second tensor factor.
    """
    psi = np.asarray(state).reshape(dimA, dimB)

    def act(M: np.ndarray, v: np.ndarray) -> np.ndarray:
        return M @ v if side == "A" else v @ M.T

    worst = 0.0
    for x in elements:
        fx = f[x]
        for y in elements:
            lhs = act(fx, act(f[y], psi))
            rhs = act(f[product(x, y)], psi)
            worst = max(worst, float(np.linalg.norm(lhs - rhs)))
    return worst


def induced_group_maps(s: Strategy):
    """The maps f_A, f_B induced by a strategy on the abstract group of the
    canonical observables.

    Each group element is named by its normal-form word; f_A substitutes
    (P0, P1, J) -> (A0, A1, omega I) and f_B -> (B0^*, B1, omega I). Returns
    (element keys, exact product function, f_A, f_B).
    """
    n = s.order
    variant = "alt" if n == 3 else "standard"
    pairs = groupkit.normal_form_enumerate(n, variant)
    omega = np.exp(2j * np.pi / n)
    a_images = {"P0": s.alice_obs[0], "P1": s.alice_obs[1],
                "J": omega * np.eye(s.dimA)}
    b_images = {"P0": adjoint(s.bob_obs[0]), "P1": s.bob_obs[1],
                "J": omega * np.eye(s.dimB)}
    by_key = {g.key(): g for _, g in pairs}
    keys = list(by_key)
    f_a = {g.key(): groupkit.evaluate_word_matrix(w, a_images)
           for w, g in pairs}
    f_b = {g.key(): groupkit.evaluate_word_matrix(w, b_images)
           for w, g in pairs}

    def product(x, y):
        return (by_key[x] @ by_key[y]).key()

    return keys, product, f_a, f_b


def psi_representation_residuals(s: Strategy) -> Tuple[float, float]:
    """(Alice, Bob) state-restricted homomorphism residuals over all element
    pairs of the canonical group."""
    keys, product, f_a, f_b = induced_group_maps(s)
    res_a = check_psi_representation(
        keys, product, f_a, s.state, s.dimA, s.dimB, side="A")
    res_b = check_psi_representation(
        keys, product, f_b, s.state, s.dimA, s.dimB, side="B")
    return res_a, res_b


def random_strategy(n: int, dimA: int, dimB: int, seed: int) -> Strategy:
    """Seeded random admissible strategy (order-n observables, random
    state)."""
    gen = rng(seed)
    obs = [random_order_n_observable(n, d, int(gen.integers(2 ** 63)))
           for d in (dimA, dimA, dimB, dimB)]
    v = gen.standard_normal(dimA * dimB) + 1j * gen.standard_normal(
        dimA * dimB)
    return Strategy(order=n, dimA=dimA, dimB=dimB,
                    alice_obs=(obs[0], obs[1]), bob_obs=(obs[2], obs[3]),
                    state=v / np.linalg.norm(v))
