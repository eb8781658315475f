import csv
import io
import math

import pytest

from drtmoments import bench
from drtmoments.bench import (
    BenchRecord,
    ChecksumMismatch,
    emit_results,
    plot_rows,
    run_bench,
    scaling_ratios,
)
from drtmoments.moments import RawMoments


def test_small_ladder_checksums():
    records = run_bench([(20, 20), (40, 40), (80, 80)], repetitions=5, seed=1)
    assert len(records) == 9
    for size in {(r.width, r.height) for r in records}:
        sums = {r.checksum for r in records if (r.width, r.height) == size}
        assert len(sums) == 1
    assert all(r.best_time_us > 0 and r.repetitions == 5 for r in records)


def test_single_pixel_single_run():
    records = run_bench([(1, 1)], repetitions=1)
    assert [r.backend for r in records] == ["naive", "baseline", "drt"]
    assert all(math.isfinite(r.best_time_us) and r.best_time_us > 0 for r in records)


def test_table_build_flag():
    records = run_bench([(30, 10)], repetitions=2, backends=["drt"], include_table_build=True)
    assert len(records) == 1


@pytest.mark.parametrize(
    "kwargs",
    [
        dict(sizes=[(40000, 2)]),
        dict(sizes=[(0, 5)]),
        dict(sizes=[(2, 2)], repetitions=0),
        dict(sizes=[(2, 2)], backends=["opencv"]),
    ],
)
def test_invalid_configuration(kwargs):
    with pytest.raises(ValueError):
        run_bench(**kwargs)


def test_disagreement_raises(monkeypatch):
    def broken(image, counter=None):
        return RawMoments(*[1] * 10)

    monkeypatch.setitem(bench.BACKENDS, "baseline", broken)
    with pytest.raises(ChecksumMismatch, match="m00"):
        run_bench([(4, 4)], repetitions=1)


def test_best_of_takes_minimum():
    ticks = iter([0, 50, 100, 120, 200, 290])
    best, result = bench.best_of(lambda: "x", 3, clock=lambda: next(ticks))
    assert best == 20
    assert result == "x"


def test_plotdata_row(tmp_path):
    rec = BenchRecord("drt", 200, 200, 1000, 12.3, 42)
    out = tmp_path / "p.csv"
    emit_results([rec], out, "plotdata")
    rows = list(csv.reader(out.open()))
    assert rows[0] == ["sqrt_pixels", "log10_time_us", "backend"]
    assert float(rows[1][0]) == 200.0
    assert float(rows[1][1]) == pytest.approx(math.log10(12.3))
    assert float(rows[1][1]) == pytest.approx(1.0899051, abs=1e-7)
    assert rows[1][2] == "drt"


def test_csv_columns():
    rec = BenchRecord("naive", 3, 2, 7, 1.5, 99)
    buf = io.StringIO()
    emit_results([rec], buf, "csv")
    assert buf.getvalue().splitlines() == [
        "backend,width,height,repetitions,best_time_us,checksum",
        "naive,3,2,7,1.5,99",
    ]


def test_empty_records(tmp_path):
    with pytest.raises(ValueError):
        emit_results([], tmp_path / "x.csv")


def test_unknown_format(tmp_path):
    with pytest.raises(ValueError):
        emit_results([BenchRecord("drt", 1, 1, 1, 1.0, 0)], tmp_path / "x", "json")


def test_plotdata_monotone_per_backend(tmp_path):
    records = run_bench([(60, 60), (20, 20), (40, 30)], repetitions=2)
    out = tmp_path / "p.csv"
    emit_results(records, out, "plotdata")
    rows = list(csv.DictReader(out.open()))
    for backend in ("naive", "baseline", "drt"):
        xs = [float(r["sqrt_pixels"]) for r in rows if r["backend"] == backend]
        assert xs == sorted(xs) and len(xs) == 3
    assert plot_rows(records)[0][2] == "baseline"


def test_scaling_ratios():
    recs = [BenchRecord("drt", s, s, 1, t, 0) for s, t in [(20, 4.0), (10, 1.0), (40, 10.0)]]
    assert scaling_ratios(recs, "drt") == [4.0, 2.5]
    assert scaling_ratios(recs, "naive") == []


@pytest.mark.parametrize("interleave", [True, False])
def test_timing_modes_record_minimum(interleave):
    ticks = iter(range(0, 10**6, 7))
    records = run_bench([(3, 2), (2, 2)], repetitions=4, backends=["naive", "drt"],
                        interleave=interleave, clock=lambda: next(ticks))
    # a strictly increasing fake clock makes every call take exactly 7 ns
    assert [r.best_time_us for r in records] == [0.007] * 4
    assert [(r.backend, r.width) for r in records] == [("naive", 3), ("drt", 3), ("naive", 2), ("drt", 2)]
