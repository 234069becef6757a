import json
import math

import pytest

from qblotto import Scenario, dump_scenario, load_scenario, scenario_from_dict
from qblotto.cli import main

GOLDEN_DOC = {
    "players": [
        {"name": "Blotto", "total": 6},
        {"name": "enemy 1", "total": 4},
        {"name": "enemy 2", "total": 3},
    ],
    "battlefields": 2,
    "allocations": [[3, 3], [3, 1], [0, 3]],
    "gamma": math.pi / 2,
}


@pytest.fixture
def golden_file(tmp_path):
    path = tmp_path / "golden.json"
    path.write_text(json.dumps(GOLDEN_DOC), encoding="utf-8")
    return str(path)


def write_doc(tmp_path, doc, name="scenario.json"):
    path = tmp_path / name
    path.write_text(json.dumps(doc), encoding="utf-8")
    return str(path)


class TestPlay:
    def test_worked_example(self, golden_file, capsys):
        assert main(["play", golden_file]) == 0
        out = capsys.readouterr().out
        assert "Blotto" in out
        assert "+0" in out and "-1" in out

    def test_csv_output(self, golden_file, tmp_path, capsys):
        out_path = tmp_path / "report.csv"
        assert main(["play", golden_file, "--out", str(out_path)]) == 0
        text = out_path.read_text(encoding="utf-8")
        lines = text.splitlines()
        assert lines[0] == "player,m_b1,m_b2,payoff"
        assert lines[1].startswith("Blotto,0.25,0.25,0")

    def test_budget_mismatch_exit_2(self, tmp_path, capsys):
        doc = dict(GOLDEN_DOC, allocations=[[4, 3], [3, 1], [0, 3]])
        path = write_doc(tmp_path, doc)
        assert main(["play", path]) == 2
        err = capsys.readouterr().err
        assert "Blotto" in err

    def test_unknown_key_exit_2(self, tmp_path, capsys):
        doc = dict(GOLDEN_DOC, phi_1_3=0.3)
        path = write_doc(tmp_path, doc)
        assert main(["play", path]) == 2
        assert "phi_1_3" in capsys.readouterr().err

    def test_json_syntax_error_names_line(self, tmp_path, capsys):
        path = tmp_path / "broken.json"
        path.write_text('{\n  "players": [,]\n}', encoding="utf-8")
        assert main(["play", str(path)]) == 2
        assert ":2:" in capsys.readouterr().err

    def test_even_player_count_exit_3(self, tmp_path, capsys):
        doc = {
            "players": [
                {"name": "Blotto", "total": 4},
                {"name": "enemy 1", "total": 4},
                {"name": "enemy 2", "total": 4},
                {"name": "enemy 3", "total": 4},
            ],
            "battlefields": 2,
            "allocations": [[2, 2]] * 4,
            "gamma": math.pi / 2,
        }
        path = write_doc(tmp_path, doc)
        assert main(["play", path]) == 3
        assert "even" in capsys.readouterr().err

    def test_degrees_flag(self, tmp_path, capsys):
        doc = dict(GOLDEN_DOC, gamma=90.0)
        path = write_doc(tmp_path, doc)
        assert main(["play", path, "--degrees"]) == 0
        out = capsys.readouterr().out
        assert "gamma: 1.57079632679" in out  # echoed in radians, 12 digits

    def test_eps_override(self, golden_file, capsys):
        assert main(["play", golden_file, "--eps", "1e-6"]) == 0
        assert "1e-06" in capsys.readouterr().out


class TestSweep:
    def sweep_args(self, scenario_file, out_path, steps="101"):
        return [
            "sweep",
            scenario_file,
            "--player",
            "3",
            "--battlefield",
            "1",
            "--param",
            "phi",
            "--from",
            "0",
            "--to",
            str(math.pi / 2),
            "--steps",
            steps,
            "--out",
            str(out_path),
        ]

    def test_phase_sweep_csv(self, golden_file, tmp_path, capsys):
        out_path = tmp_path / "sweep.csv"
        assert main(self.sweep_args(golden_file, out_path)) == 0
        lines = out_path.read_text(encoding="utf-8").splitlines()
        assert lines[0] == (
            "param_value,payoff_p1,payoff_p2,payoff_p3,"
            "m_p1_b1,m_p1_b2,m_p2_b1,m_p2_b2,m_p3_b1,m_p3_b2"
        )
        assert len(lines) == 102
        margin = 1e-6
        for line in lines[1:]:
            cells = line.split(",")
            value = float(cells[0])
            enemy2 = int(cells[3])
            if value > math.pi / 4 + margin:
                assert enemy2 > 0
            elif value < math.pi / 4 - margin:
                assert enemy2 == -1
        stdout = capsys.readouterr().out
        assert "payoff transition near phi" in stdout

    def test_csv_byte_identical(self, golden_file, tmp_path):
        first = tmp_path / "a.csv"
        second = tmp_path / "b.csv"
        assert main(self.sweep_args(golden_file, first, steps="11")) == 0
        assert main(self.sweep_args(golden_file, second, steps="11")) == 0
        assert first.read_bytes() == second.read_bytes()

    def test_minimal_two_row_sweep(self, golden_file, tmp_path):
        out_path = tmp_path / "two.csv"
        args = self.sweep_args(golden_file, out_path, steps="2")
        assert main(args) == 0
        assert len(out_path.read_text(encoding="utf-8").splitlines()) == 3

    def test_interior_phase_sweep_is_constant(self, tmp_path):
        # second-battlefield phase: interior values all map to one vector
        doc = dict(GOLDEN_DOC, phases=[[0, 0], [0, 0], [1.0, 0]])
        path = write_doc(tmp_path, doc)
        out_path = tmp_path / "interior.csv"
        args = [
            "sweep", path,
            "--player", "3", "--battlefield", "2", "--param", "phi",
            "--from", "0.01", "--to", "1.56", "--steps", "25",
            "--out", str(out_path),
        ]
        assert main(args) == 0
        rows = out_path.read_text(encoding="utf-8").splitlines()[1:]
        vectors = {tuple(row.split(",")[1:4]) for row in rows}
        assert len(vectors) == 1

    def test_bad_arguments_exit_2(self, golden_file, tmp_path, capsys):
        out_path = tmp_path / "bad.csv"
        args = self.sweep_args(golden_file, out_path)
        args[args.index("--param") + 1] = "phi"
        args[args.index("--steps") + 1] = "1"
        assert main(args) == 2


class TestVerify:
    def test_pristine_build_passes(self, capsys):
        assert main(["verify"]) == 0
        out = capsys.readouterr().out
        assert out.count("PASS") == 5
        assert "FAIL" not in out

    def test_zero_tolerance_fails_tie_cases(self, capsys):
        assert main(["verify", "--eps", "0"]) == 1
        captured = capsys.readouterr()
        assert "FAIL tie-absorption" in captured.out
        assert "verification failed" in captured.err

    def test_excluded_battlefield_variant_fails_golden(self, capsys):
        assert main(["verify", "--exclude-own-battlefield"]) == 1
        assert "FAIL golden-payoffs" in capsys.readouterr().out


class TestOracle:
    def test_worked_example_passes(self, golden_file, capsys):
        assert main(["oracle", golden_file]) == 0
        out = capsys.readouterr().out
        assert "classical payoffs: (0, -1, -1)" in out
        assert "quantum payoffs:   (0, -1, -1)" in out
        assert "PASS" in out

    def test_random_classical_scenario_passes(self, tmp_path):
        doc = {
            "players": [
                {"name": "Blotto", "total": 7.5},
                {"name": "enemy 1", "total": 5.25},
                {"name": "enemy 2", "total": 1.0},
            ],
            "battlefields": 3,
            "allocations": [[3.0, 2.5, 2.0], [1.25, 2.0, 2.0], [0.25, 0.5, 0.25]],
            "gamma": 0.8,
        }
        path = write_doc(tmp_path, doc)
        assert main(["oracle", path]) == 0

    def test_nonzero_phase_exit_2(self, tmp_path, capsys):
        doc = dict(GOLDEN_DOC, phases=[[0, 0], [0, 0], [0.3, 0]])
        path = write_doc(tmp_path, doc)
        assert main(["oracle", path]) == 2
        assert "classical limit" in capsys.readouterr().err


class TestScenarioIO:
    def test_round_trip_identity(self, golden_file, tmp_path):
        scenario, _ = load_scenario(golden_file)
        out_path = tmp_path / "round.json"
        dump_scenario(scenario, out_path)
        reloaded, _ = load_scenario(out_path)
        assert reloaded == scenario

    def test_defaults_applied(self):
        scenario = scenario_from_dict(GOLDEN_DOC)
        assert scenario.phases == ((0.0, 0.0),) * 3
        assert scenario.sign_pattern == (1, -1)
        assert scenario.eps == 1e-9

    def test_unknown_player_key_rejected(self):
        doc = dict(GOLDEN_DOC)
        doc["players"] = [dict(p, troops=1) for p in GOLDEN_DOC["players"]]
        with pytest.raises(Exception, match="troops"):
            scenario_from_dict(doc)

    def test_sign_pattern_values_checked(self):
        doc = dict(GOLDEN_DOC, sign_pattern=[1, 0])
        with pytest.raises(Exception, match="sign_pattern"):
            scenario_from_dict(doc)

    def test_shape_errors_name_player(self):
        doc = dict(GOLDEN_DOC, allocations=[[3, 3], [3], [0, 3]])
        with pytest.raises(Exception, match="player 2"):
            scenario_from_dict(doc)

    def test_degrees_ingestion(self):
        doc = dict(GOLDEN_DOC, gamma=90.0, phases=[[0, 0], [0, 0], [45.0, 0]])
        scenario = scenario_from_dict(doc, degrees=True)
        assert scenario.gamma == pytest.approx(math.pi / 2)
        assert scenario.phases[2][0] == pytest.approx(math.pi / 4)

    def test_dump_is_canonical_json(self, tmp_path):
        scenario = Scenario.create(
            totals=(6.0, 4.0, 3.0),
            allocations=((3.0, 3.0), (3.0, 1.0), (0.0, 3.0)),
            gamma=math.pi / 2,
        )
        path = tmp_path / "canon.json"
        dump_scenario(scenario, path)
        doc = json.loads(path.read_text(encoding="utf-8"))
        assert list(doc) == [
            "players",
            "battlefields",
            "allocations",
            "phases",
            "gamma",
            "sign_pattern",
            "eps",
        ]
