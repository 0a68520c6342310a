"""Sweeps over Bott matrices: exhaustive or seeded-random enumeration,
cross-validation of every spin criterion against the ring oracle, and the
built-in fixture suite.

The n(n-1)/2 free entries of a matrix pack row-major into an integer index
(bit 0 is entry (1,2), then (1,3), ...); exhaustive mode walks indices in
increasing order, which fixes the enumeration order everywhere.  Sweeps
split the index space into contiguous chunks, so parallel and serial runs
merge to identical reports.
"""

from __future__ import annotations

import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterator

from .cohomology import total_sw_class
from .criteria import PairWitness, is_spin, spin_by_pairs
from .digraph import build_digraph, common_out, digraph_spin
from .errors import BottError, DimensionTooLarge
from .fixtures import (
    DIGRAPH_FIXTURES,
    DIM4_SPIN_LIST,
    REPRESENTATIVE_SPIN,
    REPRESENTATIVES,
    SPIN_CLASS_COUNTS,
    load_fixture,
    orientable_not_spin_family,
)
from .matrix import MAX_SINGLE_N, BottMatrix

DEFAULT_EXHAUSTIVE_CAP = 7
DEFAULT_SAMPLE_CAP = MAX_SINGLE_N


def free_positions(n: int) -> list[tuple[int, int]]:
    """0-based (row, col) positions above the diagonal, row-major."""
    return [(i, j) for i in range(n) for j in range(i + 1, n)]


def index_space(n: int) -> int:
    return 1 << (n * (n - 1) // 2)


def matrix_from_index(n: int, index: int) -> BottMatrix:
    rows = [0] * n
    t = 0
    for i in range(n):
        for j in range(i + 1, n):
            if (index >> t) & 1:
                rows[i] |= 1 << j
            t += 1
    return BottMatrix(n, tuple(rows))


def matrix_index(C: BottMatrix) -> int:
    index = 0
    t = 0
    for i in range(C.n):
        for j in range(i + 1, C.n):
            if (C.rows[i] >> j) & 1:
                index |= 1 << t
            t += 1
    return index


def random_matrix(n: int, rng: random.Random) -> BottMatrix:
    return matrix_from_index(n, rng.randrange(index_space(n)))


def enumerate_all(
    n: int,
    mode: str = "exhaustive",
    count: int | None = None,
    seed: int | None = None,
    cap: int | None = None,
) -> Iterator[BottMatrix]:
    """Yield matrices of dimension n: each one exactly once in packed-index
    order (exhaustive), or `count` reproducible draws (sample)."""
    for index in _indices(n, mode, count, seed, cap):
        yield matrix_from_index(n, index)


def _indices(n, mode, count, seed, cap) -> list[int] | range:
    if n < 1:
        raise BottError(f"dimension must be >= 1, got {n}")
    if mode == "exhaustive":
        limit = DEFAULT_EXHAUSTIVE_CAP if cap is None else cap
        if n > limit:
            raise DimensionTooLarge(
                f"exhaustive enumeration capped at n={limit}, got n={n}"
            )
        return range(index_space(n))
    if mode == "sample":
        limit = DEFAULT_SAMPLE_CAP if cap is None else cap
        if n > limit:
            raise DimensionTooLarge(f"sampling capped at n={limit}, got n={n}")
        if seed is None:
            raise BottError("sample mode requires a seed")
        if count is None or count < 1:
            raise BottError("sample mode requires a positive count")
        rng = random.Random(seed)
        space = index_space(n)
        return [rng.randrange(space) for _ in range(count)]
    raise BottError(f"unknown mode {mode!r}")


def evaluate_matrix(C: BottMatrix) -> tuple[bool, bool, dict | None]:
    """Run all four spin routes on one matrix.

    Returns (orientable, spin, mismatch); mismatch is None when the
    closed-form, digraph, pairwise and ring verdicts all agree.
    """
    v = is_spin(C)
    d = digraph_spin(build_digraph(C))
    p = spin_by_pairs(C)
    profile = total_sw_class(C)
    ring_orientable = profile.orientable
    ring_spin = profile.spin is True
    agree = (
        v.orientable == d.orientable == ring_orientable
        and v.spin == d.spin == p == ring_spin
    )
    if agree:
        return v.orientable, v.spin, None
    mismatch = {
        "rows": C.to_lists(),
        "closed_form": [v.orientable, v.spin],
        "digraph": [d.orientable, d.spin],
        "pairwise": p,
        "ring": [ring_orientable, ring_spin],
    }
    return v.orientable, v.spin, mismatch


@dataclass
class SweepReport:
    n: int
    mode: str
    total: int
    orientable_count: int
    spin_count: int
    mismatches: list[dict] = field(default_factory=list)
    seed: int | None = None
    count: int | None = None
    reference_ok: bool | None = None
    elapsed: float = 0.0

    @property
    def ok(self) -> bool:
        return not self.mismatches and self.reference_ok is not False

    def to_json_dict(self) -> dict:
        return {
            "n": self.n,
            "mode": self.mode,
            "seed": self.seed,
            "count": self.count,
            "total": self.total,
            "orientable": self.orientable_count,
            "spin": self.spin_count,
            "mismatches": self.mismatches,
            "reference_ok": self.reference_ok,
            "elapsed_ms": round(self.elapsed * 1000.0, 3),
        }

    CSV_HEADER = "n,total,orientable,spin,mismatches,elapsed_ms"

    def to_csv_row(self) -> str:
        return (
            f"{self.n},{self.total},{self.orientable_count},"
            f"{self.spin_count},{len(self.mismatches)},"
            f"{round(self.elapsed * 1000.0, 3)}"
        )


def _sweep_chunk(args: tuple) -> tuple[int, int, list[dict], list[int]]:
    n, spec, collect_spin = args
    if spec[0] == "range":
        indices = range(spec[1], spec[2])
    else:
        indices = spec[1]
    orientable = spin = 0
    mismatches: list[dict] = []
    spin_indices: list[int] = []
    for index in indices:
        C = matrix_from_index(n, index)
        o, s, mismatch = evaluate_matrix(C)
        orientable += o
        spin += s
        if mismatch is not None:
            mismatch["index"] = index
            mismatches.append(mismatch)
        if s and collect_spin:
            spin_indices.append(index)
    return orientable, spin, mismatches, spin_indices


def sweep(
    n: int,
    mode: str = "exhaustive",
    count: int | None = None,
    seed: int | None = None,
    jobs: int = 1,
    cap: int | None = None,
) -> SweepReport:
    """Evaluate every enumerated matrix on all criteria and tally.

    With jobs > 1 the index space is split into that many contiguous
    chunks handled by worker processes; merged results are identical to
    the serial ones.  At n=4 exhaustive the spin set is additionally
    matched against the packaged list of the eight dimension-4 spin
    matrices (reference_ok).
    """
    start = time.perf_counter()
    indices = _indices(n, mode, count, seed, cap)
    total = len(indices)
    collect_spin = mode == "exhaustive" and n == 4
    jobs = max(1, jobs)
    chunks = []
    if isinstance(indices, range):
        step = -(-total // jobs) if total else 1
        for lo in range(0, total, step):
            chunks.append((n, ("range", lo, min(lo + step, total)), collect_spin))
    else:
        step = -(-total // jobs) if total else 1
        for lo in range(0, total, step):
            chunks.append((n, ("list", tuple(indices[lo:lo + step])), collect_spin))
    if jobs == 1 or len(chunks) <= 1:
        results = [_sweep_chunk(c) for c in chunks]
    else:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_sweep_chunk, chunks))
    orientable = spin = 0
    mismatches: list[dict] = []
    spin_indices: list[int] = []
    for o, s, mm, si in results:
        orientable += o
        spin += s
        mismatches.extend(mm)
        spin_indices.extend(si)
    reference_ok = None
    if collect_spin:
        expected = {
            matrix_index(load_fixture(name)) for name in DIM4_SPIN_LIST
        }
        reference_ok = set(spin_indices) == expected
    return SweepReport(
        n=n,
        mode=mode,
        total=total,
        orientable_count=orientable,
        spin_count=spin,
        mismatches=mismatches,
        seed=seed,
        count=count,
        reference_ok=reference_ok,
        elapsed=time.perf_counter() - start,
    )


@dataclass
class CheckResult:
    name: str
    ok: bool
    detail: str = ""

    def to_json_dict(self) -> dict:
        return {"name": self.name, "ok": self.ok, "detail": self.detail}


@dataclass
class VerificationReport:
    checks: list[CheckResult] = field(default_factory=list)

    @property
    def all_ok(self) -> bool:
        return all(c.ok for c in self.checks)

    @property
    def failures(self) -> list[CheckResult]:
        return [c for c in self.checks if not c.ok]

    def add(self, name: str, ok: bool, detail: str = "") -> None:
        self.checks.append(CheckResult(name, ok, detail))

    def to_json_dict(self) -> dict:
        return {
            "all_ok": self.all_ok,
            "checks": [c.to_json_dict() for c in self.checks],
        }


def verify_representatives(directory: Path | str | None = None) -> VerificationReport:
    """Check the packaged orientable representatives (dimensions 1..5)
    against their known spin pattern, re-derive the spin-class counts
    1,1,2,3,4, and run the orientable-not-spin family for n=5..10."""
    report = VerificationReport()
    for n, names in sorted(REPRESENTATIVES.items()):
        pattern = REPRESENTATIVE_SPIN[n]
        computed: list[bool] = []
        for name, expected in zip(names, pattern):
            matrix = load_fixture(name, directory)
            orientable, spin, mismatch = evaluate_matrix(matrix)
            computed.append(spin)
            ok = mismatch is None and orientable and spin == expected
            report.add(
                name,
                ok,
                f"orientable={orientable} spin={spin} expected spin={expected}",
            )
        spin_count = sum(computed)
        report.add(
            f"spin class count n={n}",
            spin_count == SPIN_CLASS_COUNTS[n],
            f"computed {spin_count}, known {SPIN_CLASS_COUNTS[n]}",
        )
    for n in range(5, 11):
        C = orientable_not_spin_family(n)
        verdict = is_spin(C)
        w = verdict.witness
        ok = (
            verdict.orientable
            and not verdict.spin
            and isinstance(w, PairWitness)
            and (w.j, w.k) == (1, n - 2)
            and (w.P + w.Q) % 2 == 1
        )
        detail = f"orientable={verdict.orientable} spin={verdict.spin} witness={w}"
        report.add(f"orientable-not-spin family n={n}", ok, detail)
    return report


def verify_fixture_suite(directory: Path | str | None = None) -> VerificationReport:
    """Everything `verify_representatives` covers, plus the full dimension-4
    spin list (incl. set equality against the exhaustive sweep) and the
    digraph examples with their expected neighbour data."""
    report = verify_representatives(directory)

    for name in DIM4_SPIN_LIST:
        matrix = load_fixture(name, directory)
        orientable, spin, mismatch = evaluate_matrix(matrix)
        report.add(name, mismatch is None and orientable and spin,
                   f"orientable={orientable} spin={spin}")
    sweep4 = sweep(4, "exhaustive")
    report.add(
        "dimension-4 exhaustive sweep",
        sweep4.ok and sweep4.orientable_count == 8 and sweep4.spin_count == 8
        and sweep4.reference_ok is True,
        f"orientable={sweep4.orientable_count} spin={sweep4.spin_count} "
        f"reference_ok={sweep4.reference_ok}",
    )

    for fx in DIGRAPH_FIXTURES:
        matrix = load_fixture(fx.name, directory)
        problems: list[str] = []
        if matrix.n != fx.n:
            problems.append(f"n={matrix.n} expected {fx.n}")
        D = build_digraph(matrix)
        verdict = digraph_spin(D)
        closed = is_spin(matrix)
        if (verdict.orientable, verdict.spin) != (closed.orientable, closed.spin):
            problems.append("digraph and closed-form verdicts disagree")
        if verdict.spin != fx.spin:
            problems.append(f"spin={verdict.spin} expected {fx.spin}")
        if fx.witness_pair is not None:
            w = verdict.witness
            if not isinstance(w, PairWitness) or (w.j, w.k) != fx.witness_pair:
                problems.append(f"witness={w} expected pair {fx.witness_pair}")
        for i in range(1, matrix.n + 1):
            expected_out = fx.out_sets.get(i, ())
            if D.out_neighbours(i) != tuple(expected_out):
                problems.append(f"out({i})={D.out_neighbours(i)}")
        for j in range(1, matrix.n + 1):
            for k in range(j + 1, matrix.n + 1):
                expected_m = fx.common_counts.get((j, k), 0)
                if common_out(D, j, k) != expected_m:
                    problems.append(f"common({j},{k})={common_out(D, j, k)}")
        report.add(fx.name, not problems, "; ".join(problems) or "all digraph data match")
    return report
