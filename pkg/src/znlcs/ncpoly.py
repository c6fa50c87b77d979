"""Noncommutative polynomials over the two-player observable alphabet.

Letters are (player, operator index, exponent) with player 'A' or 'B' and
exponents taken mod the observable order n. Words are canonicalized so that
Alice letters precede Bob letters (operators of different players commute
structurally) and adjacent powers of the same operator are merged.
"""

from __future__ import annotations

from typing import Dict, Iterable, Mapping, Tuple

import numpy as np

Letter = Tuple[str, int, int]
Word = Tuple[Letter, ...]


def _merge_run(letters: Iterable[Letter], n: int) -> Tuple[Letter, ...]:
    out: list[Letter] = []
    for player, idx, exp in letters:
        exp %= n
        if exp == 0:
            continue
        if out and out[-1][0] == player and out[-1][1] == idx:
            merged = (out[-1][2] + exp) % n
            out.pop()
            if merged:
                out.append((player, idx, merged))
        else:
            out.append((player, idx, exp))
    return tuple(out)


def canonical_word(letters: Iterable[Letter], n: int) -> Word:
    """Reduce a letter sequence: A before B, powers merged, exponents mod n."""
    letters = list(letters)
    a_part = [l for l in letters if l[0] == "A"]
    b_part = [l for l in letters if l[0] == "B"]
    return _merge_run(a_part, n) + _merge_run(b_part, n)


class NCPolynomial:
    """Complex-coefficient polynomial in the letters A0, A1, B0, B1."""

    __slots__ = ("n", "terms")

    def __init__(self, n: int, terms: Mapping[Word, complex] | None = None,
                 _canonical: bool = False):
        self.n = int(n)
        data: Dict[Word, complex] = {}
        if terms:
            for word, coeff in terms.items():
                if not _canonical:
                    word = canonical_word(word, self.n)
                if abs(coeff) == 0.0:
                    continue
                data[word] = data.get(word, 0.0) + complex(coeff)
        self.terms = {w: c for w, c in data.items() if abs(c) > 0.0}

    # ---- constructors -------------------------------------------------
    @classmethod
    def zero(cls, n: int) -> "NCPolynomial":
        return cls(n)

    @classmethod
    def one(cls, n: int, coeff: complex = 1.0) -> "NCPolynomial":
        return cls(n, {(): coeff})

    @classmethod
    def letter(cls, n: int, player: str, idx: int, exp: int = 1,
               coeff: complex = 1.0) -> "NCPolynomial":
        if player not in ("A", "B"):
            raise ValueError(f"unknown player {player!r}")
        return cls(n, {((player, idx, exp),): coeff})

    # ---- algebra ------------------------------------------------------
    def __add__(self, other: "NCPolynomial") -> "NCPolynomial":
        out = dict(self.terms)
        for w, c in other.terms.items():
            out[w] = out.get(w, 0.0) + c
        return NCPolynomial(self.n, out, _canonical=True)

    def __sub__(self, other: "NCPolynomial") -> "NCPolynomial":
        return self + (-other)

    def __neg__(self) -> "NCPolynomial":
        return NCPolynomial(
            self.n, {w: -c for w, c in self.terms.items()}, _canonical=True)

    def scale(self, alpha: complex) -> "NCPolynomial":
        return NCPolynomial(
            self.n, {w: alpha * c for w, c in self.terms.items()},
            _canonical=True)

    def __mul__(self, other):
        if isinstance(other, (int, float, complex)):
            return self.scale(other)
        out: Dict[Word, complex] = {}
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                w = canonical_word(w1 + w2, self.n)
                out[w] = out.get(w, 0.0) + c1 * c2
        return NCPolynomial(self.n, out, _canonical=True)

    def __rmul__(self, alpha: complex) -> "NCPolynomial":
        return self.scale(alpha)

    def adjoint(self) -> "NCPolynomial":
        out: Dict[Word, complex] = {}
        for w, c in self.terms.items():
            rw = canonical_word(
                [(p, i, -e) for (p, i, e) in reversed(w)], self.n)
            out[rw] = out.get(rw, 0.0) + np.conj(c)
        return NCPolynomial(self.n, out, _canonical=True)

    def __eq__(self, other) -> bool:
        if not isinstance(other, NCPolynomial):
            return NotImplemented
        if self.n != other.n:
            return False
        words = set(self.terms) | set(other.terms)
        return all(
            abs(self.terms.get(w, 0.0) - other.terms.get(w, 0.0)) < 1e-12
            for w in words)

    def __repr__(self) -> str:
        def fmt(w: Word) -> str:
            if not w:
                return "I"
            return "*".join(f"{p}{i}^{e}" for p, i, e in w)

        parts = [f"({c:.4g})*{fmt(w)}" for w, c in sorted(self.terms.items())]
        return " + ".join(parts) if parts else "0"


def eval_nc(poly: NCPolynomial,
            assignment: Mapping[Tuple[str, int], np.ndarray],
            dimA: int, dimB: int) -> np.ndarray:
    """Evaluate on a tensor-product assignment: A letters act as M (x) I,
    B letters as I (x) M. Returns a (dimA*dimB)-dimensional matrix."""
    dim = dimA * dimB
    total = np.zeros((dim, dim), dtype=np.complex128)
    for word, coeff in poly.terms.items():
        pa = np.eye(dimA, dtype=np.complex128)
        pb = np.eye(dimB, dtype=np.complex128)
        for player, idx, exp in word:
            key = (player, idx)
            if key not in assignment:
                raise KeyError(f"assignment missing operator {key}")
            M = np.linalg.matrix_power(assignment[key], exp % poly.n)
            if player == "A":
                pa = pa @ M
            else:
                pb = pb @ M
        total += coeff * np.kron(pa, pb)
    return total


def apply_nc(poly: NCPolynomial,
             assignment: Mapping[Tuple[str, int], np.ndarray],
             state: np.ndarray, dimA: int, dimB: int) -> np.ndarray:
    """Apply the evaluated polynomial to a bipartite state vector."""
    psi = state.reshape(dimA, dimB)
    out = np.zeros_like(psi)
    for word, coeff in poly.terms.items():
        cur = psi
        # B letters act on the column index; word order within a player is
        # right-to-left on the state.
        for player, idx, exp in reversed(word):
            M = np.linalg.matrix_power(assignment[(player, idx)], exp % poly.n)
            if player == "A":
                cur = M @ cur
            else:
                cur = cur @ M.T
        out = out + coeff * cur
    return out.reshape(dimA * dimB)
