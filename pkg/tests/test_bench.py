from maxatsp.bench import BenchTable, bench, bench_jobs


def test_empty_sizes():
    t = bench("uniform", [], range(3))
    assert t.rows == [] and t.min_ratio is None and t.mean_ratio is None
    assert "instances=0" in t.format()


def test_jobs_cartesian_order():
    jobs = bench_jobs(["a", "b"], [4, 5], [0, 1])
    assert len(jobs) == 8 and jobs[0] == ("a", 4, 0, 100) and jobs[-1] == ("b", 5, 1, 100)


def test_deterministic_and_bounded():
    a = bench(["uniform", "triangle-heavy"], [5, 7], range(3))
    b = bench(["uniform", "triangle-heavy"], [5, 7], range(3))
    assert [(f, n, s, r.tour_weight, r.opt) for f, n, s, r in a.rows] == \
           [(f, n, s, r.tour_weight, r.opt) for f, n, s, r in b.rows]
    assert not a.failures()
    assert 10 * a.min_ratio >= 7
    assert sum(a.branches().values()) == 12


def test_format_lines():
    t = bench("two-cycle-heavy", [6], range(2))
    lines = t.format().splitlines()
    assert lines[0].split() == ["family", "n", "seed", "tour", "opt", "ratio", "branch", "route"]
    assert any(l.startswith("min_ratio=") for l in lines)
    assert lines[-1] == "below_bound=0"
    assert all(r.details == {} for *_, r in t.rows)


def test_parallel_matches_serial():
    a = bench("uniform", [6], range(4), jobs=1)
    b = bench("uniform", [6], range(4), jobs=2)
    assert [r.tour_weight for *_, r in a.rows] == [r.tour_weight for *_, r in b.rows]


def test_table_without_oracle_rows():
    assert BenchTable().branches() == {}
