import json

from cocycle.cli import main


def write(tmp_path, name, obj):
    path = tmp_path / name
    path.write_text(json.dumps(obj))
    return str(path)


def mu4_action_file(tmp_path):
    return write(
        tmp_path,
        "mu4.json",
        {
            "gamma": {"family": "cyclic", "n": 2},
            "base": {"family": "cyclic", "n": 4},
            "action": [[0, 1, 2, 3], [0, 3, 2, 1]],
        },
    )


class TestH1Command:
    def test_mu4_two_classes(self, tmp_path, capsys):
        code = main(["h1", "--input", mu4_action_file(tmp_path)])
        assert code == 0
        payload = json.loads(capsys.readouterr().out)
        assert payload["classes"] == 2
        assert payload["seed"] == 0

    def test_trivial_group_fixture(self, tmp_path, capsys):
        path = write(
            tmp_path,
            "triv.json",
            {
                "gamma": {"family": "cyclic", "n": 1},
                "base": {"family": "cyclic", "n": 1},
                "action": [[0]],
            },
        )
        assert main(["h1", "--input", path]) == 0
        assert json.loads(capsys.readouterr().out)["classes"] == 1

    def test_explicit_table_group(self, tmp_path, capsys):
        path = write(
            tmp_path,
            "table.json",
            {
                "gamma": {"order": 2, "table": [[0, 1], [1, 0]]},
                "base": {"order": 2, "table": [[0, 1], [1, 0]], "labels": ["e", "s"]},
                "action": [[0, 1], [0, 1]],
            },
        )
        assert main(["h1", "--input", path]) == 0
        assert json.loads(capsys.readouterr().out)["classes"] == 2

    def test_malformed_json_exit_1(self, tmp_path, capsys):
        path = tmp_path / "bad.json"
        path.write_text('{"gamma": [,]}')
        assert main(["h1", "--input", str(path)]) == 1
        err = capsys.readouterr().err
        assert "line" in err

    def test_missing_file_exit_1(self, tmp_path):
        assert main(["h1", "--input", str(tmp_path / "nope.json")]) == 1

    def test_oversized_exit_2_no_partial_output(self, tmp_path, capsys):
        out = tmp_path / "result.json"
        code = main(
            [
                "h1",
                "--input",
                mu4_action_file(tmp_path),
                "--max-group-order",
                "3",
                "--out",
                str(out),
            ]
        )
        assert code == 2
        assert not out.exists()

    def test_out_file_and_determinism(self, tmp_path):
        out1, out2 = tmp_path / "a.json", tmp_path / "b.json"
        path = mu4_action_file(tmp_path)
        assert main(["h1", "--seed", "7", "--input", path, "--out", str(out1)]) == 0
        assert main(["h1", "--seed", "7", "--input", path, "--out", str(out2)]) == 0
        assert out1.read_bytes() == out2.read_bytes()
        assert json.loads(out1.read_text())["seed"] == 7

    def test_tsv_format(self, tmp_path, capsys):
        assert main(["h1", "--format", "tsv", "--input", mu4_action_file(tmp_path)]) == 0
        out = capsys.readouterr().out
        assert "classes\t2" in out


class TestEtaleCommand:
    def test_z2_dim2(self, tmp_path, capsys):
        path = write(tmp_path, "z2.json", {"family": "cyclic", "n": 2})
        assert main(["etale", "--input", path, "--dim", "2"]) == 0
        payload = json.loads(capsys.readouterr().out)
        assert len(payload["rows"]) == 2

    def test_trivial_dim3(self, tmp_path, capsys):
        path = write(tmp_path, "t.json", {"family": "cyclic", "n": 1})
        assert main(["etale", "--input", path, "--dim", "3"]) == 0
        payload = json.loads(capsys.readouterr().out)
        assert len(payload["rows"]) == 1

    def test_with_tower_realization(self, tmp_path, capsys):
        path = write(tmp_path, "z4.json", {"family": "cyclic", "n": 4})
        assert main(["etale", "--input", path, "--dim", "4", "--tower", "3x1x4"]) == 0
        payload = json.loads(capsys.readouterr().out)
        structures = sorted(
            tuple(r["factor_structure"]) for r in payload["rows"]
        )
        assert structures == [(1, 1, 1, 1), (2, 1, 1), (2, 2), (4,)]
        for row in payload["rows"]:
            assert row["realized_factor_degrees"] == row["factor_structure"]

    def test_tsv_rows(self, tmp_path, capsys):
        path = write(tmp_path, "z2.json", {"family": "cyclic", "n": 2})
        assert main(["etale", "--format", "tsv", "--input", path, "--dim", "2"]) == 0
        out = capsys.readouterr().out
        assert out.splitlines()[0].startswith("discriminant_trivial\t")


class TestHilbert90Command:
    def test_gl(self, capsys):
        assert main(["hilbert90", "--tower", "3x1x2", "--dim", "1"]) == 0
        payload = json.loads(capsys.readouterr().out)
        assert payload["cocycles"] == 4
        assert payload["all_coboundaries"]

    def test_sl(self, capsys):
        assert main(["hilbert90", "--tower", "2x1x2", "--dim", "2", "--sl"]) == 0
        payload = json.loads(capsys.readouterr().out)
        assert payload["group_size"] == 60

    def test_bad_tower_spec(self, capsys):
        assert main(["hilbert90", "--tower", "nonsense"]) == 1

    def test_field_bound(self, capsys):
        assert main(["hilbert90", "--tower", "3x1x2", "--max-field", "8"]) == 2


class TestFormsCommand:
    def test_sum_of_squares(self, tmp_path, capsys):
        obj = {
            "p": 3,
            "d": 1,
            "n": 2,
            "dim": 2,
            "type": [2, 0],
            "coeffs": [[1, 0], [0, 0], [0, 0], [1, 0]],
        }
        path = write(tmp_path, "q.json", obj)
        assert main(["forms", "--input", path]) == 0
        payload = json.loads(capsys.readouterr().out)
        assert payload["classes"] == 2
        assert payload["cohomology_classes"] == 2

    def test_bad_digit(self, tmp_path):
        obj = {
            "p": 3,
            "d": 1,
            "n": 2,
            "dim": 1,
            "type": [2, 0],
            "coeffs": [[9, 0]],
        }
        assert main(["forms", "--input", write(tmp_path, "bad.json", obj)]) == 1


class TestQuadCommand:
    def test_d5(self, capsys):
        assert main(["quad", "--d", "5"]) == 0
        payload = json.loads(capsys.readouterr().out)
        assert payload["quotient_order"] == 2
        assert payload["h1_order"] == 2
        assert payload["matched"]
        assert [r["p"] for r in payload["ramified"]] == [2, 5]

    def test_not_squarefree(self, capsys):
        assert main(["quad", "--d", "8"]) == 1


class TestVerifyCommand:
    def test_units_suite(self, capsys):
        assert main(["verify", "--suite", "units"]) == 0
        captured = capsys.readouterr()
        payload = json.loads(captured.out)
        assert payload["failed"] == 0
        assert payload["cases"] == 9
        assert "[units] pass d=1" in captured.err

    def test_unknown_suite(self, capsys):
        assert main(["verify", "--suite", "bogus"]) == 1

    def test_machine_output_has_no_timing(self, capsys):
        assert main(["verify", "--suite", "forms"]) == 0
        payload = json.loads(capsys.readouterr().out)
        assert "seconds" not in json.dumps(payload)
