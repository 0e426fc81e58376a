
import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from scuba._validation import check_random_state, derive_run_seed, splitmix64, stream_rng
from scuba.bench import (
    ExperimentSpec,
    NKqProblem,
    TSPProblem,
    aggregate,
    emit_csv,
    parse_csv,
    run_experiment,
)
from scuba.bench.cli import main
from scuba.landscape import Direction
from scuba.nkq import NKqLandscape
from scuba.search import SearchOutcome
from scuba.tsp import LatticeTSP


def outcome(fitness, evaluations=0):
    return SearchOutcome(solution=None, fitness=fitness, evaluations=evaluations)


class TestSeeds:
    def test_derive_run_seed_stable_and_injective(self):
        assert derive_run_seed(7, 3) == derive_run_seed(7, 3)
        seeds = {derive_run_seed(7, i) for i in range(1000)}
        assert len(seeds) == 1000
        assert all(0 <= s < 2**64 for s in seeds)
        with pytest.raises(ValueError):
            derive_run_seed(7, -1)

    def test_known_value(self):
        # splitmix64 reference output for state 0 advanced once
        assert splitmix64(0x9E3779B97F4A7C15) == 0xE220A8397B1DCDAF
        assert derive_run_seed(0, 0) == 0xE220A8397B1DCDAF

    def test_adjacent_runs_differ(self):
        spec = ExperimentSpec(NKqProblem(32, 2, 2), "ss", 2, master_seed=1)
        a, b = run_experiment(spec)
        assert not np.array_equal(a.solution, b.solution) or a.evaluations != b.evaluations

    def test_streams_are_separate(self):
        a = stream_rng(5, 0).integers(0, 2**32, 4)
        b = stream_rng(5, 1).integers(0, 2**32, 4)
        assert not np.array_equal(a, b)
        assert np.array_equal(a, stream_rng(5, 0).integers(0, 2**32, 4))

    def test_check_random_state(self):
        g = np.random.default_rng(0)
        assert check_random_state(g) is g
        assert isinstance(check_random_state(None), np.random.Generator)
        with pytest.raises(ValueError):
            check_random_state(1.5)


class TestAggregate:
    def test_minimizing_example(self):
        st_ = aggregate([outcome(1), outcome(2), outcome(3)], Direction.MINIMIZE)
        assert (st_.mean, st_.stddev, st_.best) == (2.0, 1.0, 1)

    def test_singleton(self):
        st_ = aggregate([outcome(5, 10)])
        assert st_.stddev == 0.0 and st_.best == 5 and st_.mean_evaluations == 10

    def test_empty(self):
        with pytest.raises(ValueError):
            aggregate([])

    def test_scaled(self):
        st_ = aggregate([outcome(32), outcome(64)], Direction.MAXIMIZE, scale=1 / 64)
        assert st_.mean == 0.75 and st_.best == 64 and st_.best_reported == 1.0

    @given(st.lists(st.integers(0, 1000), min_size=1, max_size=40), st.randoms())
    def test_order_independent(self, values, rnd):
        outs = [outcome(v, v * 3) for v in values]
        shuffled = outs[:]
        rnd.shuffle(shuffled)
        assert aggregate(outs) == aggregate(shuffled)
        st_ = aggregate(outs)
        assert st_.stddev >= 0 and st_.best in values


class TestRunExperiment:
    def test_single_run_reproducible(self):
        spec = ExperimentSpec(NKqProblem(32, 4, 2), "ss", 1, master_seed=3, instance_seed=4)
        (a,), (b,) = run_experiment(spec), run_experiment(spec)
        assert np.array_equal(a.solution, b.solution) and a.evaluations == b.evaluations

    def test_master_seed_sensitivity(self):
        fits = []
        for seed in (1, 2):
            outs = run_experiment(ExperimentSpec(NKqProblem(32, 2, 3), "hc", 100, master_seed=seed))
            fits.append([o.initial_fitness for o in outs])
        assert fits[0] != fits[1]

    def test_parallel_matches_serial(self):
        spec = ExperimentSpec(TSPProblem(10, 20), "hc", 6, master_seed=2)
        serial = run_experiment(spec, n_jobs=1)
        parallel = run_experiment(spec, n_jobs=2)
        assert [o.fitness for o in serial] == [o.fitness for o in parallel]
        assert all(np.array_equal(a.solution, b.solution) for a, b in zip(serial, parallel))

    def test_rejects_bad_spec(self):
        with pytest.raises(ValueError):
            ExperimentSpec(NKqProblem(), "sa", 10)
        with pytest.raises(ValueError):
            ExperimentSpec(NKqProblem(), "hc", 0)
        with pytest.raises(ValueError):
            run_experiment(ExperimentSpec(NKqProblem(8, 9, 2), "hc", 1))


class TestCsv:
    def test_empty_is_header_only(self):
        assert emit_csv([], "neutral_degree") == "problem,q,k,l,samples,mean_degree\n"

    def test_schema_mismatch(self):
        with pytest.raises(ValueError):
            emit_csv([{"problem": "nkq"}], "neutral_degree")
        with pytest.raises(ValueError):
            emit_csv([], "nope")

    def test_round_trip_and_sorting(self):
        rows = [
            {"problem": "nkq", "q": 3, "k": 2, "l": None, "samples": 10, "mean_degree": 1.25},
            {"problem": "nkq", "q": 2, "k": 4, "l": None, "samples": 10, "mean_degree": 3.5},
            {"problem": "nkq", "q": 2, "k": 0, "l": None, "samples": 10, "mean_degree": 0.1234},
        ]
        text = emit_csv(rows, "neutral_degree")
        parsed = parse_csv(text, "neutral_degree")
        assert [(r["q"], r["k"]) for r in parsed] == [(2, 0), (2, 4), (3, 2)]
        assert sorted(parsed, key=lambda r: (r["q"], r["k"])) == sorted(rows, key=lambda r: (r["q"], r["k"]))
        assert emit_csv(parsed, "neutral_degree") == text

    def test_heuristic_order(self):
        base = {"problem": "tspn", "q": None, "k": None, "l": 10, "runs": 1, "mean_fitness": 1.0,
                "std_fitness": 0.0, "best_fitness": 1.0, "mean_evaluations": 1.0}
        rows = [{**base, "heuristic": h} for h in ("hc2", "hc", "ss")]
        parsed = parse_csv(emit_csv(rows, "performance"), "performance")
        assert [r["heuristic"] for r in parsed] == ["hc", "ss", "hc2"]


class TestCli:
    def test_gen_and_instance_round_trip(self, tmp_path, capsys):
        path = tmp_path / "inst.nkq"
        assert main(["gen", "--problem", "nkq", "--n", "10", "--k", "2", "--q", "3", "--seed", "4",
                     "--out", str(path)]) == 0
        land = NKqLandscape.loads(path.read_text())
        assert land.params.k == 2 and land.params.seed == 4
        assert main(["gen", "--instance", str(path)]) == 0
        assert capsys.readouterr().out == path.read_text()

    def test_run_from_instance_file(self, tmp_path, capsys):
        path = tmp_path / "inst.tsp"
        main(["gen", "--problem", "tspn", "--l", "6", "--n", "12", "--seed", "2", "--out", str(path)])
        trace = tmp_path / "trace.csv"
        assert main(["run", "--instance", str(path), "--heuristic", "ss", "--runs", "3",
                     "--trace", str(trace)]) == 0
        rows = parse_csv(capsys.readouterr().out, "runs")
        assert len(rows) == 3 and all(r["heuristic"] == "ss" for r in rows)
        trace_rows = parse_csv(trace.read_text(), "trace")
        assert {r["kind"] for r in trace_rows} <= {"neutral", "jump"}
        assert sum(r["flat_count"] + r["gate_count"] for r in rows) == len(trace_rows)
        land = LatticeTSP.loads(path.read_text())
        assert land.side == 6

    @pytest.mark.parametrize("argv", [
        ["table1", "--q", "2", "--k", "3", "--n", "3"],
        ["run", "--problem", "tspn", "--l", "3", "--n", "10", "--heuristic", "hc"],
        ["run", "--heuristic", "hc"],
        ["gen", "--problem", "nkq", "--q", "1"],
    ])
    def test_parameter_errors_exit_nonzero(self, argv, capsys):
        assert main(argv) != 0
        assert "error" in capsys.readouterr().err

    def test_argparse_errors_exit_nonzero(self):
        with pytest.raises(SystemExit) as exc:
            main(["fig2", "--k", "a,b"])
        assert exc.value.code != 0
        with pytest.raises(SystemExit):
            main(["fig2", "--runs", "0"])

    def test_table_subcommands_shapes(self, capsys):
        main(["table1", "--n", "16", "--samples", "50", "--q", "2,3", "--k", "0,2"])
        assert len(parse_csv(capsys.readouterr().out, "neutral_degree")) == 4
        main(["fig1", "--n", "16", "--samples", "50", "--l", "5,10"])
        assert len(parse_csv(capsys.readouterr().out, "neutral_proportion")) == 2
        main(["fig2", "--n", "16", "--q", "2", "--k", "0,2", "--runs", "3"])
        assert len(parse_csv(capsys.readouterr().out, "performance")) == 6
        main(["table2", "--n", "12", "--l", "5,8", "--runs", "2", "--heuristics", "hc,ss"])
        assert len(parse_csv(capsys.readouterr().out, "performance")) == 4
        main(["table3", "--n", "12", "--q", "2,100", "--k", "1", "--runs", "2"])
        assert len(parse_csv(capsys.readouterr().out, "evaluations")) == 6
        main(["table4", "--n", "12", "--l", "5", "--runs", "2"])
        assert len(parse_csv(capsys.readouterr().out, "evaluations")) == 3
