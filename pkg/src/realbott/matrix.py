"""Bott matrices and their permutation-conjugate relatives.

A Bott matrix is a strictly upper triangular binary n-by-n matrix.  The
general form drops triangularity and instead requires a zero diagonal and
an acyclic digraph; every such matrix is a permutation conjugate of a
strictly upper triangular one.

Rows are stored as int bitmasks: ``rows[i]`` has bit ``j`` set iff the
1-based entry ``c_{i+1,j+1}`` is 1.  All public methods and functions
speak 1-based indices; the 0-based masks are an internal convention that
the cohomology and digraph modules share.
"""

from __future__ import annotations

import heapq
import json
from dataclasses import dataclass
from typing import Iterable, Union

from .errors import (
    BottError,
    CyclicDigraph,
    DiagonalNonzero,
    DimensionTooLarge,
    IndexOutOfRange,
    NonBinary,
    NonSquare,
)

#: Guard for parsed input.  Single-matrix checks stay cheap well beyond
#: this, but monomial masks and pair scans are tuned for small n.
MAX_SINGLE_N = 20


def _validate_rows(n: int, rows: tuple[int, ...]) -> None:
    if n < 1:
        raise NonSquare(f"dimension must be >= 1, got {n}")
    if len(rows) != n:
        raise NonSquare(f"expected {n} rows, got {len(rows)}")
    full = (1 << n) - 1
    for i, row in enumerate(rows):
        if row & ~full:
            raise NonSquare(f"row {i + 1} has entries beyond column {n}")


@dataclass(frozen=True)
class BottMatrix:
    """Strictly upper triangular binary matrix, rows as bitmasks."""

    n: int
    rows: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "rows", tuple(self.rows))
        _validate_rows(self.n, self.rows)
        for i, row in enumerate(self.rows):
            # bits 0..i must be clear: c_{i,j} = 0 for i >= j
            low = row & ((2 << i) - 1)
            if low:
                j = low.bit_length()
                raise DiagonalNonzero(
                    f"entry ({i + 1},{j}) is on or below the diagonal"
                )

    @classmethod
    def zero(cls, n: int) -> "BottMatrix":
        return cls(n, (0,) * n)

    @classmethod
    def from_lists(cls, grid: Iterable[Iterable[int]]) -> "BottMatrix":
        rows = tuple(_mask_from_bits(row) for row in grid)
        return cls(len(rows), rows)

    def entry(self, i: int, j: int) -> int:
        """Entry c_{i,j}, 1-based."""
        self._check_index(i)
        self._check_index(j)
        return (self.rows[i - 1] >> (j - 1)) & 1

    def row_sum(self, i: int) -> int:
        self._check_index(i)
        return self.rows[i - 1].bit_count()

    def column_mask(self, j: int) -> int:
        """Bitmask of 0-based rows i with c_{i+1,j} = 1."""
        self._check_index(j)
        bit = 1 << (j - 1)
        mask = 0
        for i, row in enumerate(self.rows):
            if row & bit:
                mask |= 1 << i
        return mask

    def to_lists(self) -> list[list[int]]:
        return [[(row >> j) & 1 for j in range(self.n)] for row in self.rows]

    def to_text(self) -> str:
        return "\n".join(
            " ".join(str((row >> j) & 1) for j in range(self.n))
            for row in self.rows
        )

    def to_json_dict(self) -> dict:
        return {"n": self.n, "rows": self.to_lists()}

    def _check_index(self, i: int) -> None:
        if not 1 <= i <= self.n:
            raise IndexOutOfRange(f"index {i} outside 1..{self.n}")


@dataclass(frozen=True)
class GeneralBottMatrix:
    """Binary matrix with zero diagonal whose digraph is acyclic."""

    n: int
    rows: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "rows", tuple(self.rows))
        _validate_rows(self.n, self.rows)
        for i, row in enumerate(self.rows):
            if (row >> i) & 1:
                raise DiagonalNonzero(f"diagonal entry ({i + 1},{i + 1}) is 1")
        order = _topological_order(self.n, self.rows)
        if order is None:
            raise CyclicDigraph("matrix digraph contains a directed cycle")

    entry = BottMatrix.entry
    row_sum = BottMatrix.row_sum
    to_lists = BottMatrix.to_lists
    to_text = BottMatrix.to_text
    to_json_dict = BottMatrix.to_json_dict
    _check_index = BottMatrix._check_index

    @classmethod
    def from_lists(cls, grid: Iterable[Iterable[int]]) -> "GeneralBottMatrix":
        rows = tuple(_mask_from_bits(row) for row in grid)
        return cls(len(rows), rows)


AnyBottMatrix = Union[BottMatrix, GeneralBottMatrix]


@dataclass(frozen=True)
class Permutation:
    """Bijection on {1..n}; ``sigma[i-1]`` is the image of i."""

    sigma: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "sigma", tuple(self.sigma))
        n = len(self.sigma)
        if sorted(self.sigma) != list(range(1, n + 1)):
            raise BottError(f"not a bijection on 1..{n}: {self.sigma}")

    @property
    def n(self) -> int:
        return len(self.sigma)

    def __call__(self, i: int) -> int:
        if not 1 <= i <= self.n:
            raise IndexOutOfRange(f"index {i} outside 1..{self.n}")
        return self.sigma[i - 1]

    def inverse(self) -> "Permutation":
        inv = [0] * self.n
        for i, img in enumerate(self.sigma, 1):
            inv[img - 1] = i
        return Permutation(tuple(inv))

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(tuple(range(1, n + 1)))


def _mask_from_bits(bits: Iterable[int]) -> int:
    mask = 0
    for j, v in enumerate(bits):
        if v not in (0, 1):
            raise NonBinary(f"entry {v!r} is not 0/1")
        if v:
            mask |= 1 << j
    return mask


def _topological_order(n: int, rows: tuple[int, ...]) -> list[int] | None:
    """Topological order of the digraph (edge i->j iff bit set), smallest
    original index first among the ready vertices; None on a cycle."""
    indeg = [0] * n
    for row in rows:
        r = row
        while r:
            j = (r & -r).bit_length() - 1
            indeg[j] += 1
            r &= r - 1
    ready = [i for i in range(n) if indeg[i] == 0]
    heapq.heapify(ready)
    order: list[int] = []
    while ready:
        i = heapq.heappop(ready)
        order.append(i)
        r = rows[i]
        while r:
            j = (r & -r).bit_length() - 1
            indeg[j] -= 1
            if indeg[j] == 0:
                heapq.heappush(ready, j)
            r &= r - 1
    if len(order) != n:
        return None
    return order


def parse_matrix(text: str, max_n: int | None = MAX_SINGLE_N) -> AnyBottMatrix:
    """Parse a 0/1 grid into a BottMatrix, or a GeneralBottMatrix when the
    grid is not upper triangular but still has zero diagonal and an acyclic
    digraph.

    Lines hold whitespace-separated 0/1 tokens; a token of several digits
    ("0110") is read one entry per character.  Blank lines and lines whose
    first non-space character is '#' are ignored.
    """
    grid: list[list[int]] = []
    for lineno, line in enumerate(text.splitlines(), 1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        row: list[int] = []
        for token in stripped.split():
            for ch in token:
                if ch == "0":
                    row.append(0)
                elif ch == "1":
                    row.append(1)
                else:
                    raise NonBinary(f"line {lineno}: bad character {ch!r}")
        grid.append(row)
    if not grid:
        raise NonSquare("no matrix rows found")
    n = len(grid[0])
    for i, row in enumerate(grid, 1):
        if len(row) != n:
            raise NonSquare(f"row {i} has {len(row)} entries, expected {n}")
    if len(grid) != n:
        raise NonSquare(f"{len(grid)} rows of width {n}: matrix is not square")
    if max_n is not None and n > max_n:
        raise DimensionTooLarge(f"n={n} exceeds the configured cap {max_n}")
    return _matrix_from_grid(grid)


def matrix_from_json(data: Union[str, dict], max_n: int | None = MAX_SINGLE_N) -> AnyBottMatrix:
    """Build a matrix from ``{"n": int, "rows": [[0,1,...], ...]}``."""
    if isinstance(data, str):
        try:
            data = json.loads(data)
        except json.JSONDecodeError as exc:
            raise NonSquare(f"bad JSON matrix: {exc}") from exc
    if not isinstance(data, dict) or "rows" not in data:
        raise NonSquare('JSON matrix needs an object with "n" and "rows"')
    rows = data["rows"]
    n = data.get("n", len(rows))
    if n != len(rows):
        raise NonSquare(f'"n" is {n} but {len(rows)} rows given')
    grid = []
    for i, row in enumerate(rows, 1):
        if len(row) != n:
            raise NonSquare(f"row {i} has {len(row)} entries, expected {n}")
        grid.append(list(row))
    if max_n is not None and n > max_n:
        raise DimensionTooLarge(f"n={n} exceeds the configured cap {max_n}")
    return _matrix_from_grid(grid)


def load_matrix(path, max_n: int | None = MAX_SINGLE_N) -> AnyBottMatrix:
    """Read a matrix file, JSON or text grid (auto-detected)."""
    with open(path, "r", encoding="utf-8") as fh:
        text = fh.read()
    if text.lstrip().startswith("{"):
        return matrix_from_json(text, max_n=max_n)
    return parse_matrix(text, max_n=max_n)


def _matrix_from_grid(grid: list[list[int]]) -> AnyBottMatrix:
    n = len(grid)
    rows = tuple(_mask_from_bits(row) for row in grid)
    upper = all(rows[i] & ((2 << i) - 1) == 0 for i in range(n))
    if upper:
        return BottMatrix(n, rows)
    return GeneralBottMatrix(n, rows)


def normalize(B: AnyBottMatrix) -> tuple[Permutation, BottMatrix]:
    """Return (sigma, C) with ``b_{sigma(i),sigma(j)} = c_{i,j}`` and C
    strictly upper triangular.

    sigma comes from a topological sort of the digraph of B, ties broken
    by smallest original index, so the result is deterministic.
    """
    order = _topological_order(B.n, B.rows)
    if order is None:  # unreachable for validated inputs
        raise CyclicDigraph("matrix digraph contains a directed cycle")
    sigma = Permutation(tuple(v + 1 for v in order))
    n = B.n
    rows = []
    for i in range(n):
        src = B.rows[order[i]]
        mask = 0
        for j in range(n):
            if (src >> order[j]) & 1:
                mask |= 1 << j
        rows.append(mask)
    return sigma, BottMatrix(n, tuple(rows))


def conjugate(C: AnyBottMatrix, sigma: Permutation) -> GeneralBottMatrix:
    """Conjugate by sigma: entry (sigma(i), sigma(j)) of the result equals
    entry (i, j) of C."""
    if sigma.n != C.n:
        raise IndexOutOfRange(f"permutation on 1..{sigma.n} vs matrix n={C.n}")
    n = C.n
    rows = [0] * n
    for i in range(1, n + 1):
        src = C.rows[i - 1]
        mask = 0
        for j in range(1, n + 1):
            if (src >> (j - 1)) & 1:
                mask |= 1 << (sigma(j) - 1)
        rows[sigma(i) - 1] = mask
    return GeneralBottMatrix(n, tuple(rows))


def row_pair_matrix(C: BottMatrix, j: int, k: int) -> BottMatrix:
    """Matrix with rows j and k copied from C, all other rows zero."""
    if not 1 <= j < k <= C.n:
        raise IndexOutOfRange(f"need 1 <= j < k <= {C.n}, got ({j},{k})")
    rows = [0] * C.n
    rows[j - 1] = C.rows[j - 1]
    rows[k - 1] = C.rows[k - 1]
    return BottMatrix(C.n, tuple(rows))


def delete_leading(C: BottMatrix, k: int) -> BottMatrix:
    """Trailing principal submatrix: drop the first k rows and columns."""
    if not 0 <= k < C.n:
        raise IndexOutOfRange(f"need 0 <= k < {C.n}, got {k}")
    m = C.n - k
    return BottMatrix(m, tuple(C.rows[i + k] >> k for i in range(m)))


def leading_submatrix(C: BottMatrix, t: int) -> BottMatrix:
    """Leading principal submatrix: keep the first t rows and columns."""
    if not 1 <= t <= C.n:
        raise IndexOutOfRange(f"need 1 <= t <= {C.n}, got {t}")
    full = (1 << t) - 1
    return BottMatrix(t, tuple(C.rows[i] & full for i in range(t)))
