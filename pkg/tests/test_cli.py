from __future__ import annotations

import json
import math

import pytest

from bergmanzeros.cli import main


def read_json(path):
    return json.loads(path.read_text(encoding="utf-8"))


class TestMoments:
    def test_json_artifact(self, tmp_path):
        out = tmp_path / "m.json"
        assert main(["moments", "--weight", "std:0", "--max-n", "8", "--out", str(out)]) == 0
        doc = read_json(out)
        assert doc["config"]["version"]
        values = [row["value"] for row in doc["results"]["moments"]]
        assert values[5] == pytest.approx(1 / 6)

    def test_csv_with_config_header_and_figure(self, tmp_path):
        outdir = tmp_path / "art"
        code = main(
            [
                "moments",
                "--weight",
                "star(std:0)",
                "--max-n",
                "6",
                "--format",
                "csv",
                "--outdir",
                str(outdir),
            ]
        )
        assert code == 0
        text = (outdir / "moments.csv").read_text(encoding="utf-8")
        assert text.startswith("# version=")
        assert "n,moment,provenance" in text
        assert "star_relation" in text
        assert (outdir / "moments.png").exists()

    def test_byte_stability(self, tmp_path):
        args = ["moments", "--weight", "std:1/2", "--max-n", "12"]
        a = tmp_path / "a.json"
        b = tmp_path / "b.json"
        assert main(args + ["--out", str(a)]) == 0
        assert main(args + ["--out", str(b)]) == 0
        assert a.read_bytes() == b.read_bytes()


class TestKernelAndPoly:
    def test_kernel_eval(self, tmp_path):
        out = tmp_path / "k.json"
        code = main(
            ["kernel", "--weight", "star(std:0)", "--zeta", "0.25", "--out", str(out)]
        )
        assert code == 0
        doc = read_json(out)
        assert doc["results"]["value"]["re"] == pytest.approx(12 / 0.31640625)
        assert doc["results"]["closed_form"]["re"] == pytest.approx(12 / 0.31640625)
        assert doc["results"]["tail_bound"] >= 0

    def test_poly_exact_values(self, tmp_path, capsys):
        assert main(["poly", "--n", "2", "--alpha", "0"]) == 0
        doc = json.loads(capsys.readouterr().out)
        assert doc["results"]["evaluated"] == ["192", "1152", "576"]
        # serialized form: per zeta power, rational strings per alpha power
        assert doc["results"]["alpha_polynomials"][0] == ["192", "160", "32"]


class TestZeroMap:
    def test_flip_in_counts_csv(self, tmp_path):
        outdir = tmp_path / "zm"
        code = main(
            [
                "zeromap",
                "--weight",
                "star(std:0)",
                "--radii",
                "0.1:0.9:0.05",
                "--outdir",
                str(outdir),
            ]
        )
        assert code == 0
        rows = [
            line.split(",")
            for line in (outdir / "zeromap_counts.csv")
            .read_text(encoding="utf-8")
            .splitlines()
            if line and not line.startswith("#") and not line.startswith("radius")
        ]
        counts = {float(r): int(c) for r, c, _cert in rows}
        for radius, count in counts.items():
            if radius <= 0.45:
                assert count == 0
            if radius >= 0.55:
                assert count == 1
        assert (outdir / "zeromap_roots.csv").exists()
        assert (outdir / "zeromap.png").exists()

    def test_no_plot_flag(self, tmp_path):
        outdir = tmp_path / "zm2"
        code = main(
            [
                "zeromap",
                "--weight",
                "std:0",
                "--radii",
                "0.2:0.4:0.1",
                "--outdir",
                str(outdir),
                "--no-plot",
            ]
        )
        assert code == 0
        assert not (outdir / "zeromap.png").exists()

    def test_parallel_matches_serial_bytes(self, tmp_path):
        base = ["zeromap", "--weight", "star(std:0)", "--radii", "0.2:0.8:0.2", "--no-plot"]
        d1, d2 = tmp_path / "p1", tmp_path / "p2"
        assert main(base + ["--outdir", str(d1)]) == 0
        assert main(base + ["--outdir", str(d2), "--parallel", "4"]) == 0
        assert (d1 / "zeromap_counts.csv").read_bytes() == (
            d2 / "zeromap_counts.csv"
        ).read_bytes()


class TestThresholdVerifySb:
    def test_threshold_json(self, capsys):
        assert main(["threshold", "--n", "2"]) == 0
        doc = json.loads(capsys.readouterr().out)
        (row,) = doc["results"]
        assert row["alpha_threshold"] == pytest.approx(
            (3 + math.sqrt(33)) / 2 - 2, abs=2e-6
        )

    def test_sb_artifact(self, capsys):
        assert main(["sb", "--gamma", "2", "--depth", "2"]) == 0
        doc = json.loads(capsys.readouterr().out)
        assert doc["results"]["polynomial"] == ["2", "4", "1"]
        assert doc["results"]["prefactor"] == "64"
        assert len(doc["results"]["zeros"]["roots"]) == 2

    def test_verify_suite_passes(self, tmp_path, capsys):
        out = tmp_path / "verify.json"
        code = main(["verify", "--suite", "all", "--seed", "7", "--out", str(out)])
        printed = capsys.readouterr().out
        assert code == 0
        assert "0 failed" in printed
        doc = read_json(out)
        assert doc["checks"]
        assert all(c["pass"] for c in doc["checks"] if not c["informational"])


class TestErrorsAndExitCodes:
    def test_usage_error_is_2(self):
        assert main(["moments"]) == 2  # missing --weight

    def test_parse_error_is_2(self, capsys):
        code = main(["moments", "--weight", "std:-1", "--max-n", "4"])
        assert code == 2
        err = json.loads(capsys.readouterr().err)
        assert err["error"] == "WeightExprError"
        assert "alpha out of range" in err["message"]

    def test_unknown_command_is_2(self):
        assert main(["frobnicate"]) == 2

    def test_config_env_var(self, tmp_path, monkeypatch, capsys):
        cfg_file = tmp_path / "cfg.json"
        cfg_file.write_text(json.dumps({"seed": 99, "truncation": 128}), encoding="utf-8")
        monkeypatch.setenv("BERGMANZEROS_CONFIG", str(cfg_file))
        assert main(["poly", "--n", "1"]) == 0
        doc = json.loads(capsys.readouterr().out)
        assert doc["config"]["seed"] == 99
        assert doc["config"]["truncation"] == 128
