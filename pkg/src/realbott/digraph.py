"""The digraph mirror of a Bott matrix.

Vertices u_1..u_n, one edge i -> j per matrix 1.  Out-degrees and common
out-neighbour counts re-express the closed-form spin terms: the pair count
P_jk equals the number of common out-neighbours M_jk, and Q_jk equals the
(j,k) adjacency bit times C(N_k, 2) for the out-degree N_k.  The verdict
computed here must coincide with the row-arithmetic one.
"""

from __future__ import annotations

from dataclasses import dataclass

from .criteria import PairWitness, RowWitness, SpinVerdict, Witness
from .errors import IndexOutOfRange
from .matrix import AnyBottMatrix


@dataclass(frozen=True)
class BottDigraph:
    """Adjacency as per-vertex out/in bitmasks (0-based bits)."""

    n: int
    out_masks: tuple[int, ...]
    in_masks: tuple[int, ...]

    def has_edge(self, i: int, j: int) -> int:
        self._check(i)
        self._check(j)
        return (self.out_masks[i - 1] >> (j - 1)) & 1

    def out_neighbours(self, i: int) -> tuple[int, ...]:
        """1-based vertices reachable by one edge from u_i."""
        self._check(i)
        return _vertices(self.out_masks[i - 1])

    def in_neighbours(self, i: int) -> tuple[int, ...]:
        self._check(i)
        return _vertices(self.in_masks[i - 1])

    def out_degree(self, i: int) -> int:
        self._check(i)
        return self.out_masks[i - 1].bit_count()

    def in_degree(self, i: int) -> int:
        self._check(i)
        return self.in_masks[i - 1].bit_count()

    def _check(self, i: int) -> None:
        if not 1 <= i <= self.n:
            raise IndexOutOfRange(f"vertex {i} outside 1..{self.n}")


def _vertices(mask: int) -> tuple[int, ...]:
    out = []
    while mask:
        b = (mask & -mask).bit_length() - 1
        out.append(b + 1)
        mask &= mask - 1
    return tuple(out)


def build_digraph(M: AnyBottMatrix) -> BottDigraph:
    """Digraph whose adjacency matrix is M (already validated acyclic)."""
    n = M.n
    in_masks = [0] * n
    for i, row in enumerate(M.rows):
        r = row
        while r:
            j = (r & -r).bit_length() - 1
            in_masks[j] |= 1 << i
            r &= r - 1
    return BottDigraph(n=n, out_masks=tuple(M.rows), in_masks=tuple(in_masks))


def common_out(D: BottDigraph, j: int, k: int) -> int:
    """Number of common out-neighbours of u_j and u_k, 1 <= j < k <= n."""
    if not 1 <= j < k <= D.n:
        raise IndexOutOfRange(f"need 1 <= j < k <= {D.n}, got ({j},{k})")
    return (D.out_masks[j - 1] & D.out_masks[k - 1]).bit_count()


def digraph_spin(D: BottDigraph) -> SpinVerdict:
    """Spin verdict from the digraph alone: all out-degrees even, and for
    every pair j < k the common-neighbour count M_jk has the parity of the
    adjacency bit times C(N_k, 2)."""
    witnesses: list[Witness] = []
    orientable = True
    for i in range(1, D.n + 1):
        if D.out_degree(i) & 1:
            orientable = False
            witnesses.append(RowWitness(i))
            break
    pair_ok = True
    for j in range(1, D.n + 1):
        for k in range(j + 1, D.n + 1):
            m = (D.out_masks[j - 1] & D.out_masks[k - 1]).bit_count()
            # exact integer binomials, reduced afterwards; the count is
            # taken at the head of whichever edge joins the pair (for a
            # triangular matrix only j -> k can exist)
            nk = D.out_masks[k - 1].bit_count()
            nj = D.out_masks[j - 1].bit_count()
            q = (
                D.has_edge(j, k) * (nk * (nk - 1) // 2)
                + D.has_edge(k, j) * (nj * (nj - 1) // 2)
            ) & 1
            if (m & 1) != q:
                pair_ok = False
                witnesses.append(PairWitness(j, k, m & 1, q))
                break
        if not pair_ok:
            break
    return SpinVerdict(
        orientable=orientable,
        spin=orientable and pair_ok,
        witnesses=tuple(witnesses),
    )


def export_dot(D: BottDigraph, verdict: SpinVerdict | None = None) -> str:
    """Graphviz DOT text, byte-stable: vertices u1..un, edges in row-major
    order.  With a verdict, the graph label states the flags and every
    failing pair is drawn dashed red (as an extra non-constraint line when
    the pair is not an edge)."""
    failing = set()
    if verdict is not None:
        failing = {
            (w.j, w.k) for w in verdict.witnesses if isinstance(w, PairWitness)
        }
    lines = ["digraph {"]
    if verdict is not None:
        lines.append(
            f'  label="orientable={_b(verdict.orientable)} spin={_b(verdict.spin)}";'
        )
    for i in range(1, D.n + 1):
        lines.append(f"  u{i};")
    annotated = set()
    for i in range(1, D.n + 1):
        for j in _vertices(D.out_masks[i - 1]):
            if (i, j) in failing:
                lines.append(f"  u{i} -> u{j} [color=red, style=dashed];")
                annotated.add((i, j))
            else:
                lines.append(f"  u{i} -> u{j};")
    for j, k in sorted(failing - annotated):
        lines.append(
            f"  u{j} -> u{k} [color=red, style=dashed, dir=none, constraint=false];"
        )
    lines.append("}")
    return "\n".join(lines) + "\n"


def _b(v: bool) -> str:
    return "true" if v else "false"
