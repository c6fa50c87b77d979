"""Two-player game data model and exact classical values.

Covers the mod-n two-equation family (question sets [2]x[2], answers in
Z_n), general linear-constraint-system games over Z_n, and an exhaustive
classical-value search over deterministic strategy pairs.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from typing import List, Sequence, Tuple

import numpy as np

from ._backend import HAVE_NUMBA, njit

CLASSICAL_BUDGET_DEFAULT = 10**8


@dataclass(frozen=True)
class GameSpec:
    """A finite two-player game (question sets, distribution, predicate).

    ``distribution`` is an (nA, nB) probability table and ``predicate`` a
    boolean (nA, nB, mA, mB) array: entry (i, j, a, b) says whether answers
    (a, b) win on questions (i, j).
    """

    nA: int
    nB: int
    mA: int
    mB: int
    distribution: np.ndarray
    predicate: np.ndarray

    def __post_init__(self):
        dist = np.asarray(self.distribution, dtype=np.float64)
        pred = np.asarray(self.predicate, dtype=bool)
        if dist.shape != (self.nA, self.nB):
            raise ValueError(
                f"distribution shape {dist.shape} != ({self.nA}, {self.nB})")
        if pred.shape != (self.nA, self.nB, self.mA, self.mB):
            raise ValueError(
                f"predicate shape {pred.shape} != "
                f"({self.nA}, {self.nB}, {self.mA}, {self.mB})")
        if np.any(dist < -1e-15):
            raise ValueError("distribution has negative entries")
        if abs(dist.sum() - 1.0) > 1e-12:
            raise ValueError(f"distribution sums to {dist.sum()}, expected 1")
        object.__setattr__(self, "distribution", dist)
        object.__setattr__(self, "predicate", pred)

    def to_json(self) -> str:
        return json.dumps({
            "nA": self.nA, "nB": self.nB, "mA": self.mA, "mB": self.mB,
            "distribution": self.distribution.tolist(),
            "predicate": self.predicate.astype(int).tolist(),
        })

    @classmethod
    def from_json(cls, text: str) -> "GameSpec":
        d = json.loads(text)
        return cls(
            nA=d["nA"], nB=d["nB"], mA=d["mA"], mB=d["mB"],
            distribution=np.array(d["distribution"], dtype=np.float64),
            predicate=np.array(d["predicate"], dtype=bool),
        )


@dataclass(frozen=True)
class ModNGameParams:
    """Parameters of the two-equation game over Z_n: x0x1 = w^m1 / w^m2."""

    n: int
    m1: int
    m2: int

    def __post_init__(self):
        if self.n < 2:
            raise ValueError("modulus n must be >= 2")
        if not (0 <= self.m1 < self.n and 0 <= self.m2 < self.n):
            raise ValueError("m1, m2 must lie in [0, n)")


@dataclass(frozen=True)
class LinearSystem:
    """Linear equations over Z_n in multiplicative form.

    Each equation is (variables, exponents, rhs): sum_k exponents[k] *
    x[variables[k]] = rhs (mod modulus).
    """

    modulus: int
    equations: Tuple[Tuple[Tuple[int, ...], Tuple[int, ...], int], ...] = field(
        default=())

    def __post_init__(self):
        if self.modulus < 2:
            raise ValueError("modulus must be >= 2")
        eqs = []
        for variables, exponents, rhs in self.equations:
            variables = tuple(int(v) for v in variables)
            exponents = tuple(int(e) % self.modulus for e in exponents)
            if len(variables) != len(exponents):
                raise ValueError("variables and exponents length mismatch")
            if any(v < 0 for v in variables):
                raise ValueError("negative variable index")
            eqs.append((variables, exponents, int(rhs) % self.modulus))
        object.__setattr__(self, "equations", tuple(eqs))

    @property
    def variable_count(self) -> int:
        return 1 + max(v for vs, _, _ in self.equations for v in vs)

    def satisfying_assignments(self, eq_index: int) -> List[Tuple[int, ...]]:
        """All assignments to the equation's own variables, in lexicographic
        order, that satisfy it."""
        variables, exponents, rhs = self.equations[eq_index]
        n = self.modulus
        out = []
        for vals in itertools.product(range(n), repeat=len(variables)):
            if sum(e * v for e, v in zip(exponents, vals)) % n == rhs:
                out.append(vals)
        return out


def make_mod_n_game(p: ModNGameParams) -> GameSpec:
    """The four-question game: questions (i, j) in [2]x[2], answers in Z_n.

    On (i, 0) the answers must agree; on (i, 1) they must sum to m_{i+1}
    mod n (answers are exponents of the n-th root of unity).
    """
    n = p.n
    pred = np.zeros((2, 2, n, n), dtype=bool)
    a = np.arange(n)[:, None]
    b = np.arange(n)[None, :]
    pred[0, 0] = pred[1, 0] = (a == b)
    pred[0, 1] = (a + b) % n == p.m1
    pred[1, 1] = (a + b) % n == p.m2
    dist = np.full((2, 2), 0.25)
    return GameSpec(nA=2, nB=2, mA=n, mB=n, distribution=dist, predicate=pred)


def mod_n_linear_system(p: ModNGameParams) -> LinearSystem:
    """The underlying two-equation system x0 + x1 = m1 and x0 + x1 = m2."""
    return LinearSystem(
        modulus=p.n,
        equations=(((0, 1), (1, 1), p.m1), ((0, 1), (1, 1), p.m2)),
    )


def make_lcs_game(sys: LinearSystem) -> GameSpec:
    """Game form of a linear system: Alice gets an equation and answers a
    satisfying assignment; Bob gets one of its variables and answers a value.

    Alice's answer index enumerates the equation's satisfying assignments in
    lexicographic order; they win iff Bob's value matches her assignment at
    his variable. The question distribution is uniform over valid
    (equation, variable) pairs.
    """
    n = sys.modulus
    r = len(sys.equations)
    nvars = sys.variable_count
    sat = [sys.satisfying_assignments(i) for i in range(r)]
    if any(len(s) == 0 for s in sat):
        bad = next(i for i, s in enumerate(sat) if not s)
        raise ValueError(f"equation {bad} has no satisfying assignment")
    mA = max(len(s) for s in sat)
    pred = np.zeros((r, nvars, mA, n), dtype=bool)
    dist = np.zeros((r, nvars))
    for i in range(r):
        variables = sys.equations[i][0]
        for j in variables:
            dist[i, j] = 1.0
            pos = variables.index(j)
            for a, assignment in enumerate(sat[i]):
                pred[i, j, a, assignment[pos]] = True
    dist /= dist.sum()
    return GameSpec(nA=r, nB=nvars, mA=mA, mB=n,
                    distribution=dist, predicate=pred)


@njit(cache=True)
def _best_response_kernel(W, mA, digits):
    """Enumerate Bob's deterministic strategies; Alice best-responds.

    W is the (nA, nB, mA, mB) table distribution * predicate. ``digits``
    is Bob's answer count mB; Bob's functions are counted in base mB.
    Returns (best value, number of optimal deterministic pairs).
    """
    nA, nB = W.shape[0], W.shape[1]
    total = 1
    for _ in range(nB):
        total *= digits
    fb = np.zeros(nB, dtype=np.int64)
    best = -1.0
    best_count = 0
    for c in range(total):
        x = c
        for j in range(nB):
            fb[j] = x % digits
            x //= digits
        value = 0.0
        mult = 1
        for i in range(nA):
            row_best = -1.0
            row_count = 0
            for a in range(mA):
                s = 0.0
                for j in range(nB):
                    s += W[i, j, a, fb[j]]
                if s > row_best + 1e-12:
                    row_best = s
                    row_count = 1
                elif s > row_best - 1e-12:
                    row_count += 1
            value += row_best
            mult *= row_count
        if value > best + 1e-12:
            best = value
            best_count = mult
        elif value > best - 1e-12:
            best_count += mult
    return best, best_count


def _best_response_numpy(W: np.ndarray) -> Tuple[float, int]:
    """Vectorized fallback for the enumeration kernel (same contract)."""
    nA, nB, mA, mB = W.shape
    total = mB ** nB
    place = mB ** np.arange(nB, dtype=np.int64)
    best = -1.0
    best_count = 0
    chunk = 1 << 14
    for start in range(0, total, chunk):
        cs = np.arange(start, min(start + chunk, total), dtype=np.int64)
        fb = (cs[:, None] // place[None, :]) % mB  # (C, nB)
        vals = np.zeros(len(cs))
        mults = np.ones(len(cs), dtype=np.int64)
        for i in range(nA):
            S = np.zeros((len(cs), mA))
            for j in range(nB):
                block = W[i, j]
                if block.any():
                    S += block[:, fb[:, j]].T
            row_best = S.max(axis=1)
            vals += row_best
            mults *= (S > row_best[:, None] - 1e-12).sum(axis=1)
        m = float(vals.max())
        if m > best + 1e-12:
            best = m
            best_count = int(mults[vals > m - 1e-12].sum())
        elif m > best - 1e-12:
            best_count += int(mults[vals > best - 1e-12].sum())
    return best, best_count


def classical_value(g: GameSpec,
                    budget: int = CLASSICAL_BUDGET_DEFAULT
                    ) -> Tuple[float, int]:
    """Exact classical value by exhaustive search over deterministic pairs.

    Deterministic strategies suffice: the value is linear in each player's
    behaviour, so shared randomness cannot beat the best deterministic pair.
    The smaller function space is enumerated outright and the other player
    best-responds per question (the payoff is additive across their
    questions), which also yields the exact count of optimal pairs.

    Returns (value, count of maximizing deterministic pairs). Raises if the
    estimated work exceeds ``budget`` elementary payoff evaluations.
    """
    count_B = g.mB ** g.nB
    count_A = g.mA ** g.nA
    W = g.distribution[:, :, None, None] * g.predicate
    if count_B <= count_A:
        work = count_B * g.nA * g.nB * g.mA
    else:
        # Swap roles so the kernel always enumerates the second player.
        W = np.transpose(W, (1, 0, 3, 2))
        work = count_A * g.nA * g.nB * g.mB
    if work > budget:
        raise ValueError(
            f"classical_value search needs ~{work:.2e} payoff evaluations "
            f"(space {count_A} x {count_B}), over the budget of {budget:.2e}")
    W = np.ascontiguousarray(W, dtype=np.float64)
    if HAVE_NUMBA:
        value, pairs = _best_response_kernel(W, W.shape[2], W.shape[3])
    else:
        value, pairs = _best_response_numpy(W)
    return float(value), int(pairs)


def relabel_answers(g: GameSpec, permA: Sequence[int],
                    permB: Sequence[int]) -> GameSpec:
    """Apply fixed answer bijections to both players (value-preserving)."""
    permA = np.asarray(permA)
    permB = np.asarray(permB)
    pred = g.predicate[:, :, permA, :][:, :, :, permB]
    return GameSpec(g.nA, g.nB, g.mA, g.mB, g.distribution, pred)
