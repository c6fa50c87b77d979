"""Exact enumeration of the monomial-unitary groups behind the mod-n games.

Every operator in play (cyclic shifts, sign flips, the scalar z^4 I, and all
products of the canonical observables) is a monomial matrix whose nonzero
entries are powers of z = e^{i pi / 2n}. Such a matrix is stored exactly as
a cyclic shift amount plus a vector of phase exponents mod 4n, so group
closure, orders, and relator checks involve no floating point at all.
"""

from __future__ import annotations

import csv
import json
from dataclasses import dataclass
from typing import Callable, Dict, List, Sequence, Tuple

import numpy as np

ENUMERATION_CAP_DEFAULT = 10**6

# A word is a sequence of (generator name, exponent) pairs over P0, P1, J.
GroupWord = Tuple[Tuple[str, int], ...]


@dataclass(frozen=True)
class MonomialUnitary:
    """U e_k = z^{phases[k]} e_{(k+shift) mod n} with z = e^{i pi/2n}.

    shift lives mod n, each phase exponent mod 4n; composition and inverse
    stay in these coordinates exactly.
    """

    n: int
    shift: int
    phases: Tuple[int, ...]

    def __post_init__(self):
        if len(self.phases) != self.n:
            raise ValueError("phase vector length must equal the dimension")
        object.__setattr__(self, "shift", self.shift % self.n)
        object.__setattr__(
            self, "phases", tuple(p % (4 * self.n) for p in self.phases))

    @classmethod
    def identity(cls, n: int) -> "MonomialUnitary":
        return cls(n, 0, (0,) * n)

    def __matmul__(self, other: "MonomialUnitary") -> "MonomialUnitary":
        """Matrix product self @ other (apply ``other`` first)."""
        if self.n != other.n:
            raise ValueError("dimension mismatch")
        n = self.n
        phases = tuple(
            other.phases[k] + self.phases[(k + other.shift) % n]
            for k in range(n))
        return MonomialUnitary(n, self.shift + other.shift, phases)

    def inverse(self) -> "MonomialUnitary":
        n = self.n
        phases = tuple(-self.phases[(k - self.shift) % n] for k in range(n))
        return MonomialUnitary(n, -self.shift, phases)

    def power(self, e: int) -> "MonomialUnitary":
        base = self if e >= 0 else self.inverse()
        out = MonomialUnitary.identity(self.n)
        for _ in range(abs(e)):
            out = out @ base
        return out

    def key(self) -> Tuple[int, Tuple[int, ...]]:
        return (self.shift, self.phases)

    def to_matrix(self) -> np.ndarray:
        n = self.n
        z = np.exp(1j * np.pi / (2 * n))
        M = np.zeros((n, n), dtype=np.complex128)
        for k in range(n):
            M[(k + self.shift) % n, k] = z ** self.phases[k]
        return M

    def order(self) -> int:
        cur = self
        for m in range(1, 4 * self.n * self.n + 1):
            if cur == MonomialUnitary.identity(self.n):
                return m
            cur = cur @ self
        raise RuntimeError("order exceeds 4n^2 bound")


# ---------------------------------------------------------------------------
# Generators of the canonical observables' groups
# ---------------------------------------------------------------------------

def shift_x(n: int) -> MonomialUnitary:
    """The cyclic shift X: e_k -> e_{k+1 mod n}."""
    return MonomialUnitary(n, 1, (0,) * n)


def sign_d(n: int, j: int) -> MonomialUnitary:
    """D_j = diag with -1 in entry (j, j); -1 = z^{2n}."""
    return MonomialUnitary(
        n, 0, tuple(2 * n if k == j else 0 for k in range(n)))


def scalar_j(n: int) -> MonomialUnitary:
    """J = z^4 I = omega_n I."""
    return MonomialUnitary(n, 0, (4,) * n)


def alice_generators(n: int) -> Tuple[MonomialUnitary, MonomialUnitary]:
    """A0 = X and A1 = z^2 D_0 X."""
    a0 = shift_x(n)
    a1_phases = tuple(2 + (2 * n if (k + 1) % n == 0 else 0)
                      for k in range(n))
    return a0, MonomialUnitary(n, 1, a1_phases)

def bob_generators(n: int) -> Tuple[MonomialUnitary, MonomialUnitary]:
    """B0 = X and B1 = z^2 D_0 X^*."""
    b0 = shift_x(n)
    b1_phases = tuple(2 + (2 * n if k == 1 else 0) for k in range(n))
    return b0, MonomialUnitary(n, n - 1, b1_phases)


def evaluate_word(word: GroupWord,
                  images: Dict[str, MonomialUnitary],
                  n: int) -> MonomialUnitary:
    """Evaluate a (generator, exponent) word under exact generator images."""
    out = MonomialUnitary.identity(n)
    for name, exp in word:
        out = out @ images[name].power(exp)
    return out


def evaluate_word_matrix(word: GroupWord,
                         images: Dict[str, np.ndarray]) -> np.ndarray:
    """Evaluate a word under unitary matrix images (negative powers via
    adjoints)."""
    dim = next(iter(images.values())).shape[0]
    out = np.eye(dim, dtype=np.complex128)
    for name, exp in word:
        M = images[name]
        if exp < 0:
            M = M.conj().T
        out = out @ np.linalg.matrix_power(M, abs(exp))
    return out


# ---------------------------------------------------------------------------
# Group closure
# ---------------------------------------------------------------------------

class GroupCatalogue:
    """Closure of a generator set: canonical element list plus product maps."""

    def __init__(self, elements: List[MonomialUnitary]):
        self.elements = sorted(elements, key=lambda g: g.key())
        self.index = {g.key(): i for i, g in enumerate(self.elements)}

    def __len__(self) -> int:
        return len(self.elements)

    def product(self, i: int, j: int) -> int:
        return self.index[(self.elements[i] @ self.elements[j]).key()]

    def inverse(self, i: int) -> int:
        return self.index[self.elements[i].inverse().key()]

    def multiplication_table(self, max_size: int = 2048) -> np.ndarray:
        m = len(self.elements)
        if m > max_size:
            raise ValueError(
                f"table of {m}x{m} entries exceeds max_size {max_size}")
        table = np.empty((m, m), dtype=np.int64)
        for i in range(m):
            for j in range(m):
                table[i, j] = self.product(i, j)
        return table

    def element_orders(self) -> List[int]:
        return [g.order() for g in self.elements]

    def center_size(self) -> int:
        gens = [g for g in self.elements]
        count = 0
        for g in self.elements:
            if all((g @ h).key() == (h @ g).key() for h in gens):
                count += 1
        return count

    def to_json(self) -> str:
        return json.dumps({
            "n": self.elements[0].n if self.elements else 0,
            "elements": [
                {"shift": g.shift, "phases": list(g.phases)}
                for g in self.elements
            ],
        })

    def write_multiplication_csv(self, path: str,
                                 max_size: int = 2048) -> None:
        table = self.multiplication_table(max_size)
        with open(path, "w", newline="") as fh:
            writer = csv.writer(fh)
            for row in table:
                writer.writerow(row.tolist())


def enumerate_group(generators: Sequence[MonomialUnitary],
                    cap: int = ENUMERATION_CAP_DEFAULT) -> GroupCatalogue:
    """Breadth-first closure of the generators under exact products."""
    if not generators:
        raise ValueError("need at least one generator")
    n = generators[0].n
    if any(g.n != n for g in generators):
        raise ValueError("generators must share dimension")
    gens = list(generators) + [g.inverse() for g in generators]
    seen = {MonomialUnitary.identity(n).key(): MonomialUnitary.identity(n)}
    frontier = [MonomialUnitary.identity(n)]
    while frontier:
        nxt = []
        for h in frontier:
            for g in gens:
                prod = g @ h
                if prod.key() not in seen:
                    seen[prod.key()] = prod
                    nxt.append(prod)
                    if len(seen) > cap:
                        raise RuntimeError(
                            f"enumeration cap {cap} exceeded "
                            f"({len(seen)} elements so far)")
        frontier = nxt
    return GroupCatalogue(list(seen.values()))


# ---------------------------------------------------------------------------
# Normal forms and presentation checks
# ---------------------------------------------------------------------------

def normal_form_words(n: int, variant: str = "standard") -> List[GroupWord]:
    """All n*n*2^(n-1) candidate normal-form words over J, P0, P1.

    "standard": J^i P0^j prod_k (P0^k P1^{-k})^{q_k} for k = 1..n-1.
    "alt" (n = 3 only): J^i P0^j (P0 P1^{-1})^{q1} (P0^{-1} P1)^{q2},
    the form under which the induced maps below are defined.
    """
    if variant == "alt" and n != 3:
        raise ValueError("the alt normal form is specific to n = 3")
    words = []
    for i in range(n):
        for j in range(n):
            for mask in range(2 ** (n - 1)):
                word: List[Tuple[str, int]] = [("J", i), ("P0", j)]
                for k in range(1, n):
                    if (mask >> (k - 1)) & 1:
                        if variant == "alt" and k == 2:
                            word += [("P0", -1), ("P1", 1)]
                        else:
                            word += [("P0", k), ("P1", -k)]
                words.append(tuple(word))
    return words


def alice_images(n: int) -> Dict[str, MonomialUnitary]:
    a0, a1 = alice_generators(n)
    return {"P0": a0, "P1": a1, "J": scalar_j(n)}


def bob_images(n: int) -> Dict[str, MonomialUnitary]:
    """Substitution P0 -> B0^*, P1 -> B1, J -> omega I (exact)."""
    b0, b1 = bob_generators(n)
    return {"P0": b0.inverse(), "P1": b1, "J": scalar_j(n)}


def normal_form_enumerate(n: int, variant: str = "standard"
                          ) -> List[Tuple[GroupWord, MonomialUnitary]]:
    """Evaluate every normal-form word on (A0, A1, z^4 I) and assert the
    results are pairwise distinct (each word names a distinct element)."""
    images = alice_images(n)
    out = []
    seen: Dict[Tuple[int, Tuple[int, ...]], GroupWord] = {}
    for word in normal_form_words(n, variant):
        g = evaluate_word(word, images, n)
        if g.key() in seen:
            raise RuntimeError(
                f"normal-form collision: {word} and {seen[g.key()]} "
                f"evaluate to the same element")
        seen[g.key()] = word
        out.append((word, g))
    return out


def presentation_relators(n: int, side: str = "A") -> List[GroupWord]:
    """Relator words of the group presentation.

    Alice side: P0^n, P1^n, J^n, [J, P0], [J, P1], J^i (P0^i P1^{-i})^2 for
    i = 1..floor(n/2). Bob side replaces the last family with
    J^i (P0^{-i} P1^{-i})^2 (the presentation of the group generated by
    B0, B1 in the generators Q0 = P0, Q1 = P1 naming convention).
    """
    rels: List[GroupWord] = [
        (("P0", n),), (("P1", n),), (("J", n),),
        (("J", 1), ("P0", 1), ("J", -1), ("P0", -1)),
        (("J", 1), ("P1", 1), ("J", -1), ("P1", -1)),
    ]
    for i in range(1, n // 2 + 1):
        if side == "A":
            rels.append((("J", i), ("P0", i), ("P1", -i),
                         ("P0", i), ("P1", -i)))
        else:
            rels.append((("J", i), ("P0", -i), ("P1", -i),
                         ("P0", -i), ("P1", -i)))
    return rels


def verify_presentation(n: int, side: str = "A") -> List[GroupWord]:
    """Evaluate each relator exactly; returns the (ideally empty) list of
    failing relators."""
    if side == "A":
        a0, a1 = alice_generators(n)
        images = {"P0": a0, "P1": a1, "J": scalar_j(n)}
    else:
        b0, b1 = bob_generators(n)
        images = {"P0": b0, "P1": b1, "J": scalar_j(n)}
    identity = MonomialUnitary.identity(n)
    failures = []
    for rel in presentation_relators(n, side):
        if evaluate_word(rel, images, n).key() != identity.key():
            failures.append(rel)
    return failures


def commutation_check(n: int) -> bool:
    """X^i D_j = D_{(j+i) mod n} X^i, exactly, for all i, j."""
    X = shift_x(n)
    for i in range(n):
        xi = X.power(i)
        for j in range(n):
            lhs = xi @ sign_d(n, j)
            rhs = sign_d(n, (j + i) % n) @ xi
            if lhs.key() != rhs.key():
                return False
    return True


def groups_equal_as_sets(n: int) -> bool:
    """Do A0, A1, z^4 I and B0, B1, z^4 I generate the same matrix group?"""
    a0, a1 = alice_generators(n)
    b0, b1 = bob_generators(n)
    j = scalar_j(n)
    ga = enumerate_group([a0, a1, j])
    gb = enumerate_group([b0, b1, j])
    return set(ga.index) == set(gb.index)


# ---------------------------------------------------------------------------
# Irreducible representations of the n = 3 group
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Irrep:
    name: str
    degree: int
    images: Dict[str, np.ndarray]

    def relator_defect(self, n: int, side: str = "A") -> float:
        eye = np.eye(self.degree)
        worst = 0.0
        for rel in presentation_relators(n, side):
            M = evaluate_word_matrix(rel, self.images)
            worst = max(worst, float(np.linalg.norm(M - eye)))
        return worst


def g3_irreps() -> List[Irrep]:
    """The 12 irreducible representations of the 36-element n = 3 group:
    nine of degree 1 and three of degree 3."""
    w = np.exp(2j * np.pi / 3)
    irreps = []
    for i in range(3):
        for j in range(3):
            irreps.append(Irrep(
                name=f"chi_{i}{j}", degree=1,
                images={"P0": np.array([[w ** i]]),
                        "P1": np.array([[w ** j]]),
                        "J": np.array([[w ** ((2 * (j - i)) % 3)]])}))
    perm = np.array([[0, 0, 1], [1, 0, 0], [0, 1, 0]], dtype=complex)
    perm_t = perm.T.copy()
    wc = np.conj(w)
    g1_p1 = np.array([[0, 0, wc], [-wc, 0, 0], [0, -wc, 0]])
    g2_p1 = np.array([[0, 0, -1], [-1, 0, 0], [0, 1, 0]], dtype=complex)
    g3_p1 = np.array([[0, w, 0], [0, 0, -w], [-w, 0, 0]])
    eye3 = np.eye(3, dtype=complex)
    irreps.append(Irrep("g1", 3, {"P0": perm, "P1": g1_p1, "J": w * eye3}))
    irreps.append(Irrep("g2", 3, {"P0": perm, "P1": g2_p1, "J": eye3}))
    irreps.append(Irrep("g3", 3, {"P0": perm_t, "P1": g3_p1, "J": wc * eye3}))
    return irreps


def ring_relation_defect(rep: Irrep, n: int = 3) -> float:
    """Norm of H_n + (n-2) I under the representation, where
    H_n = omega * sum_i P0^i P1 P0^{n-1-i}."""
    P0, P1 = rep.images["P0"], rep.images["P1"]
    w = np.exp(2j * np.pi / n)
    d = rep.degree
    H = np.zeros((d, d), dtype=complex)
    for i in range(n):
        H += (np.linalg.matrix_power(P0, i) @ P1
              @ np.linalg.matrix_power(P0, n - 1 - i))
    H *= w
    return float(np.linalg.norm(H + (n - 2) * np.eye(d)))
