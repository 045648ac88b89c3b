import json
import subprocess
import sys

import numpy as np
import pytest

from finquant.cli import main, parse_dist, read_data_file

BASE = [sys.executable, "-m", "finquant.cli"]


def run_cli(args, capsys):
    code = main(args)
    out = capsys.readouterr().out
    return code, out


class TestApprox:
    def test_levy_unconstrained(self, capsys):
        code, out = run_cli(["approx", "--dist", "benford:10", "--metric", "levy",
                             "--n", "3", "--mode", "unconstrained"], capsys)
        assert code == 0
        payload = json.loads(out)
        assert payload["result"]["distance"] == pytest.approx(0.1439, abs=5e-4)
        assert len(payload["result"]["x"]) == 3
        assert payload["certificate"]["mode"] == "unconstrained"
        assert max(payload["certificate"]["slacks"]) <= 1e-9

    def test_d1_uniform(self, capsys):
        code, out = run_cli(["approx", "--dist", "benford:10", "--metric", "d1",
                             "--n", "3", "--mode", "uniform"], capsys)
        assert code == 0
        assert json.loads(out)["result"]["distance"] == pytest.approx(0.08232, abs=1e-5)

    def test_dk_default_mode(self, capsys):
        code, out = run_cli(["approx", "--dist", "benford:10", "--metric", "dK",
                             "--n", "3"], capsys)
        assert code == 0
        assert json.loads(out)["result"]["distance"] == pytest.approx(
            1.0 / 6.0, abs=1e-9)

    def test_weights_given(self, capsys):
        code, out = run_cli(["approx", "--dist", "beta21", "--metric", "levy",
                             "--mode", "weights-given", "--weights", "0.5,0.5"],
                            capsys)
        assert code == 0
        payload = json.loads(out)
        assert len(payload["result"]["x"]) == 2

    def test_missing_n_is_config_error(self, capsys):
        code, _ = run_cli(["approx", "--dist", "benford:10", "--metric", "levy",
                           "--mode", "unconstrained"], capsys)
        assert code == 2

    def test_bad_dist_is_config_error(self, capsys):
        code, _ = run_cli(["approx", "--dist", "gauss", "--metric", "levy",
                           "--n", "2"], capsys)
        assert code == 2

    def test_deterministic_output(self, capsys):
        args = ["approx", "--dist", "benford:10", "--metric", "levy", "--n", "2"]
        _, out1 = run_cli(args, capsys)
        _, out2 = run_cli(args, capsys)
        assert out1 == out2

    def test_csv_format(self, capsys):
        code, out = run_cli(["approx", "--dist", "benford:10", "--metric", "d1",
                             "--n", "2", "--format", "csv"], capsys)
        assert code == 0
        assert out.splitlines()[0] == "j,x,p,P"

    def test_out_file(self, tmp_path, capsys):
        path = tmp_path / "report.json"
        code, _ = run_cli(["approx", "--dist", "benford:10", "--metric", "dK",
                           "--n", "2", "--out", str(path)], capsys)
        assert code == 0
        assert json.loads(path.read_text())["result"]["distance"] == pytest.approx(0.25)


class TestCoeff:
    def test_uniform_d1_limitward(self, capsys):
        code, out = run_cli(["coeff", "--dist", "benford:10", "--metric", "d1",
                             "--mode", "uniform", "--n-range", "1..16"], capsys)
        assert code == 0
        payload = json.loads(out)
        scaled = [row[2] for row in payload["rows"]]
        assert all(a <= b + 1e-12 for a, b in zip(scaled, scaled[1:]))
        assert payload["rows"][0][3] == pytest.approx(0.25)  # limit column

    def test_levy_best_limit_column(self, capsys):
        code, out = run_cli(["coeff", "--dist", "benford:10", "--metric", "levy",
                             "--mode", "best", "--n-range", "1,2,4"], capsys)
        payload = json.loads(out)
        assert payload["rows"][0][3] == pytest.approx(0.43091, abs=1e-4)

    def test_cantor_has_no_limit_column(self, capsys):
        code, out = run_cli(["coeff", "--dist", "inverse-cantor:8", "--metric",
                             "levy", "--mode", "uniform", "--n-range", "1,2,4",
                             "--exponent", "1"], capsys)
        assert code == 0
        payload = json.loads(out)
        assert payload["columns"] == ["n", "d", "scaled"]


class TestAudit:
    def test_perfect_uniform_atoms(self, tmp_path, capsys):
        # feed the optimal uniform transport atoms back in: ratio 1 for d1
        xs = 10.0 ** ((2 * np.arange(1, 4) - 1) / 6.0)
        path = tmp_path / "data.txt"
        path.write_text("# optimal atoms\n" + "\n".join(str(v) for v in xs) + "\n")
        code, out = run_cli(["audit", "--data", str(path), "--b", "10",
                             "--metrics", "d1,dK,levy"], capsys)
        assert code == 0
        payload = json.loads(out)
        table = {row[0]: row for row in payload["rows"]}
        assert table["d1"][3] == pytest.approx(1.0, abs=1e-9)
        assert table["dK"][3] == pytest.approx(1.0, abs=1e-9)
        assert table["levy"][3] >= 1.0 - 1e-9

    def test_all_ones(self, tmp_path, capsys):
        path = tmp_path / "ones.txt"
        path.write_text("1.0\n1.0\n1.0\n")
        code, out = run_cli(["audit", "--data", str(path), "--b", "10",
                             "--metrics", "dK"], capsys)
        assert code == 0
        payload = json.loads(out)
        assert payload["n_atoms"] == 1
        assert payload["rows"][0][1] == pytest.approx(1.0, abs=1e-12)

    def test_empty_file_exit_2(self, tmp_path, capsys):
        path = tmp_path / "empty.txt"
        path.write_text("# nothing here\n")
        code, _ = run_cli(["audit", "--data", str(path)], capsys)
        assert code == 2

    def test_missing_file_exit_2(self, capsys):
        code, _ = run_cli(["audit", "--data", "/nonexistent/data.txt"], capsys)
        assert code == 2


class TestVerify:
    def test_fig_suite_passes(self, capsys):
        code, out = run_cli(["verify", "fig1-fig2"], capsys)
        assert code == 0
        assert json.loads(out)["passed"] is True

    def test_rate_suite_passes(self, capsys):
        code, _ = run_cli(["verify", "rate-example"], capsys)
        assert code == 0

    def test_unknown_suite(self, capsys):
        code, _ = run_cli(["verify", "bogus"], capsys)
        assert code == 2


class TestNonConvergence:
    def test_solver_failure_exits_3_with_report(self, capsys, monkeypatch):
        import finquant.cli as cli
        from finquant.numerics import NonConvergenceError
        from finquant.results import LloydState
        import numpy as np

        def boom(*a, **k):
            raise NonConvergenceError("stalled", LloydState(np.r_[1.0], np.r_[0.0, 1.0],
                                                            0.5, 99))

        monkeypatch.setattr(cli.kantorovich, "best_dr_general", boom)
        code = cli.main(["approx", "--dist", "beta21", "--metric", "d2", "--n", "2"])
        out = capsys.readouterr().out
        assert code == 3
        payload = json.loads(out)
        assert payload["diagnostics"]["iterations"] == 99
        assert "error" in payload


class TestParsing:
    def test_run_config_roundtrip(self):
        from finquant.cli import RunConfig, build_parser
        argv = ["approx", "--dist", "benford:10", "--metric", "levy", "--n", "3"]
        cfg1 = RunConfig.from_args(build_parser().parse_args(argv))
        cfg2 = RunConfig.from_args(build_parser().parse_args(argv))
        assert cfg1 == cfg2
        assert json.loads(json.dumps(cfg1)) == cfg1

    def test_dist_grammar_roundtrip(self):
        for spec in ("benford:10", "beta21", "inverse-cantor:6", "exponential",
                     "uniform:0,1"):
            parse_dist(spec)

    def test_file_dist(self, tmp_path):
        path = tmp_path / "d.txt"
        path.write_text("1.0\n2.0\n# comment\n3.0\n")
        d = parse_dist(f"file:{path}")
        assert d.cdf(2.0) == pytest.approx(2.0 / 3.0)

    def test_read_data_file_comments(self, tmp_path):
        path = tmp_path / "d.txt"
        path.write_text("# header\n1.5\n\n2.5\n")
        assert read_data_file(str(path)) == [1.5, 2.5]


def test_console_entry_point():
    out = subprocess.run(BASE + ["approx", "--dist", "benford:10", "--metric",
                                 "levy", "--n", "2"],
                         capture_output=True, text=True)
    assert out.returncode == 0
    assert json.loads(out.stdout)["result"]["distance"] > 0
