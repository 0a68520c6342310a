import json
import shutil

import pytest

from realbott import (
    BottError,
    DimensionTooLarge,
    enumerate_all,
    evaluate_matrix,
    matrix_from_index,
    matrix_index,
    sweep,
    verify_fixture_suite,
    verify_representatives,
)
from realbott.fixtures import default_fixture_dir, load_fixture


class TestEnumerate:
    @pytest.mark.parametrize("n,count", [(1, 1), (2, 2), (3, 8), (4, 64), (5, 1024)])
    def test_exhaustive_counts(self, n, count):
        matrices = list(enumerate_all(n))
        assert len(matrices) == count
        assert len({m.rows for m in matrices}) == count

    def test_packing_order(self):
        # bit 0 is the (1,2) entry, then (1,3), ..., row-major
        m = matrix_from_index(3, 0b001)
        assert m.entry(1, 2) == 1 and m.entry(1, 3) == 0 and m.entry(2, 3) == 0
        m = matrix_from_index(3, 0b100)
        assert m.entry(2, 3) == 1

    def test_index_round_trip(self):
        for n in (1, 3, 5):
            for idx, m in enumerate(enumerate_all(n)):
                assert matrix_index(m) == idx

    def test_cap(self):
        with pytest.raises(DimensionTooLarge):
            list(enumerate_all(8))
        assert sum(1 for _ in enumerate_all(8, cap=8, mode="sample", seed=1, count=3)) == 3

    def test_sample_reproducible(self):
        a = [m.rows for m in enumerate_all(6, mode="sample", count=50, seed=9)]
        b = [m.rows for m in enumerate_all(6, mode="sample", count=50, seed=9)]
        c = [m.rows for m in enumerate_all(6, mode="sample", count=50, seed=10)]
        assert a == b
        assert a != c

    def test_sample_needs_seed_and_count(self):
        with pytest.raises(BottError):
            list(enumerate_all(4, mode="sample", count=5))
        with pytest.raises(BottError):
            list(enumerate_all(4, mode="sample", seed=1))
        with pytest.raises(BottError):
            list(enumerate_all(4, mode="nope"))


class TestSweep:
    def test_small_dimensions(self):
        expected = {1: (1, 1, 1), 2: (2, 1, 1), 3: (8, 2, 2), 4: (64, 8, 8)}
        for n, (total, orientable, spin) in expected.items():
            r = sweep(n)
            assert (r.total, r.orientable_count, r.spin_count) == (
                total,
                orientable,
                spin,
            )
            assert r.mismatches == []
            assert r.ok

    def test_dim4_reference_set(self):
        r = sweep(4)
        assert r.reference_ok is True

    def test_dim5_computed_counts(self):
        # raw matrix counts at n=5 (not class counts): frozen from the
        # exhaustive run of the independent ring oracle
        r = sweep(5)
        assert (r.total, r.orientable_count, r.spin_count) == (1024, 64, 30)
        assert r.reference_ok is None

    def test_sampled_counts_invariant(self):
        r = sweep(6, mode="sample", count=300, seed=3)
        assert r.total == 300
        assert r.spin_count <= r.orientable_count <= r.total
        assert r.mismatches == []

    def test_parallel_matches_serial(self):
        serial = sweep(4, jobs=1).to_json_dict()
        parallel = sweep(4, jobs=3).to_json_dict()
        serial.pop("elapsed_ms")
        parallel.pop("elapsed_ms")
        assert serial == parallel

    def test_deterministic_reports(self):
        a = sweep(5, mode="sample", count=100, seed=7).to_json_dict()
        b = sweep(5, mode="sample", count=100, seed=7).to_json_dict()
        a.pop("elapsed_ms")
        b.pop("elapsed_ms")
        assert json.dumps(a) == json.dumps(b)

    def test_csv_shape(self):
        r = sweep(3)
        assert r.CSV_HEADER == "n,total,orientable,spin,mismatches,elapsed_ms"
        row = r.to_csv_row().split(",")
        assert row[:5] == ["3", "8", "2", "2", "0"]

    def test_evaluate_matrix_agreement(self):
        for m in enumerate_all(4):
            _, _, mismatch = evaluate_matrix(m)
            assert mismatch is None


class TestVerification:
    def test_representatives_all_ok(self):
        report = verify_representatives()
        assert report.all_ok
        names = [c.name for c in report.checks]
        assert "spin class count n=5" in names
        assert "orientable-not-spin family n=10" in names

    def test_fixture_suite_all_ok(self):
        report = verify_fixture_suite()
        assert report.all_ok
        names = [c.name for c in report.checks]
        for fixture in ("digraph_a", "digraph_b", "digraph_c", "digraph_d"):
            assert fixture in names
        assert "dimension-4 exhaustive sweep" in names

    def test_corrupted_fixture_is_named(self, tmp_path):
        fixtures = tmp_path / "data"
        shutil.copytree(default_fixture_dir(), fixtures)
        # flip the spin representative into a non-spin matrix
        (fixtures / "reps_n5_1.txt").write_text(
            load_fixture("reps_n5_4").to_text() + "\n"
        )
        report = verify_fixture_suite(fixtures)
        assert not report.all_ok
        assert any(c.name == "reps_n5_1" for c in report.failures)

    def test_missing_fixture_raises(self, tmp_path):
        with pytest.raises(BottError):
            load_fixture("reps_n1_0", tmp_path)

    def test_json_shape(self):
        d = verify_representatives().to_json_dict()
        assert d["all_ok"] is True
        assert {"name", "ok", "detail"} == set(d["checks"][0])
