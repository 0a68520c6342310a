"""Constant-time orientability and spin decisions on the matrix entries.

Orientability is even row sums.  Spin additionally needs, for every pair
of rows j < k, the parity identity

    P_jk + Q_jk = 0  (mod 2)

where P_jk counts columns carrying a 1 in both rows and Q_jk is the (j,k)
entry times the number of unordered 1-pairs inside row k.  Everything here
is plain bit arithmetic; the ring module provides the independent oracle
these shortcuts are checked against.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

from .cohomology import RingElement
from .errors import IndexOutOfRange
from .matrix import AnyBottMatrix, BottMatrix, delete_leading, row_pair_matrix


@dataclass(frozen=True)
class RowWitness:
    """Row with odd sum: the orientability obstruction."""

    i: int

    def to_json_dict(self) -> dict:
        return {"kind": "row", "i": self.i}


@dataclass(frozen=True)
class PairWitness:
    """Pair (j,k) violating the parity identity, with both term values."""

    j: int
    k: int
    P: int
    Q: int

    def to_json_dict(self) -> dict:
        return {"kind": "pair", "j": self.j, "k": self.k, "P": self.P, "Q": self.Q}


Witness = Union[RowWitness, PairWitness]


@dataclass(frozen=True)
class PairTerms:
    """The two GF(2) terms of the pair identity."""

    P: int
    Q: int


@dataclass(frozen=True)
class SpinVerdict:
    orientable: bool
    spin: bool
    witnesses: tuple[Witness, ...] = ()

    @property
    def witness(self) -> Witness | None:
        """Lexicographically first failing row or pair, None when spin."""
        return self.witnesses[0] if self.witnesses else None

    def to_json_dict(self) -> dict:
        w = self.witness
        return {
            "orientable": self.orientable,
            "spin": self.spin,
            "witness": None if w is None else w.to_json_dict(),
        }


def is_orientable(M: AnyBottMatrix) -> bool:
    """Every row sum even."""
    return all(row.bit_count() % 2 == 0 for row in M.rows)


def pair_terms(C: BottMatrix, j: int, k: int) -> PairTerms:
    """P and Q for one pair of rows of a Bott matrix, 1 <= j < k <= n."""
    if not 1 <= j < k <= C.n:
        raise IndexOutOfRange(f"need 1 <= j < k <= {C.n}, got ({j},{k})")
    return _pair_terms_rows(C.rows, C.n, j, k)


def _pair_sum(row: int) -> int:
    """Full double sum over column pairs r < s of one row."""
    total = 0
    while row:
        r = (row & -row).bit_length() - 1
        row &= row - 1
        total += row.bit_count()
    return total


def _pair_terms_rows(rows: tuple[int, ...], n: int, j: int, k: int) -> PairTerms:
    P = (rows[j - 1] & rows[k - 1]).bit_count() & 1
    # The pair-sum term attaches to the head of the edge between j and k.
    # Acyclicity allows at most one of the two edge bits, and on a strictly
    # upper triangular matrix the k->j bit is always 0, so this reduces to
    # the plain c_{j,k} * (pair sum of row k) there.
    Q = 0
    if (rows[j - 1] >> (k - 1)) & 1:
        Q ^= _pair_sum(rows[k - 1]) & 1
    if (rows[k - 1] >> (j - 1)) & 1:
        Q ^= _pair_sum(rows[j - 1]) & 1
    return PairTerms(P=P, Q=Q)


def _verdict_for_rows(rows: tuple[int, ...], n: int) -> SpinVerdict:
    witnesses: list[Witness] = []
    orientable = True
    for i, row in enumerate(rows, 1):
        if row.bit_count() & 1:
            orientable = False
            witnesses.append(RowWitness(i))
            break
    pair_ok = True
    for j in range(1, n + 1):
        for k in range(j + 1, n + 1):
            t = _pair_terms_rows(rows, n, j, k)
            if (t.P + t.Q) & 1:
                pair_ok = False
                witnesses.append(PairWitness(j, k, t.P, t.Q))
                break
        if not pair_ok:
            break
    return SpinVerdict(
        orientable=orientable,
        spin=orientable and pair_ok,
        witnesses=tuple(witnesses),
    )


def is_spin(C: BottMatrix) -> SpinVerdict:
    """Full verdict for a Bott matrix.

    A non-orientable matrix still gets the pair scan so the verdict can
    carry a pair witness for diagnostics, but its spin flag is False.
    """
    return _verdict_for_rows(C.rows, C.n)


def is_spin_general(B: AnyBottMatrix) -> SpinVerdict:
    """Verdict for a general acyclic matrix, evaluated directly on its rows
    without conjugating to triangular form; agrees with `is_spin` on the
    normalized matrix.

    Each unordered pair is tested with the pair-sum term taken on the head
    row of whichever edge connects the pair (see `_pair_terms_rows`); that
    is what the pair condition of the triangular form becomes under
    conjugation.
    """
    return _verdict_for_rows(B.rows, B.n)


def spin_by_pairs(C: BottMatrix) -> bool:
    """Spin decided through the two-row extractions: true iff every matrix
    keeping only rows j and k of C is spin."""
    for j in range(1, C.n + 1):
        for k in range(j + 1, C.n + 1):
            if not is_spin(row_pair_matrix(C, j, k)).spin:
                return False
    return True


def w_top_minus_one(C: BottMatrix) -> RingElement:
    """Degree n-1 class: the product of the superdiagonal entries times
    y_1*...*y_{n-1}; zero as soon as one superdiagonal entry vanishes."""
    if C.n < 2:
        raise IndexOutOfRange("needs n >= 2")
    for i in range(C.n - 1):
        if not (C.rows[i] >> (i + 1)) & 1:
            return RingElement.zero()
    return RingElement(frozenset(((1 << (C.n - 1)) - 1,)))


def fibre_chain_verdicts(C: BottMatrix) -> list[SpinVerdict]:
    """Verdicts for C and each successive fibre matrix obtained by deleting
    leading rows/columns, down to size 2 (size 1 when n = 1).  Orientable
    or spin at the top implies the same all the way down."""
    return [is_spin(delete_leading(C, k)) for k in range(max(C.n - 1, 1))]
