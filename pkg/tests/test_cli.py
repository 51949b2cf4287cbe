import json

import pytest

from finitekernels.cli import main, parse_kernel
from finitekernels.kernels import KernelSpec


class TestParseKernel:
    def test_integer_cosine(self):
        spec = parse_kernel("cosine:2")
        assert spec.kind == "cosine_power"
        assert spec.power == 2

    def test_fractional_cosine_via_decimal(self):
        spec = parse_kernel("cosine:0.5")
        assert spec.kind == "fractional_cosine"
        assert spec.exponent == 0.5

    def test_fractional_explicit(self):
        spec = parse_kernel("fractional:1.5")
        assert spec.kind == "fractional_cosine"
        assert spec.exponent == 1.5

    def test_profile_families(self):
        msi = parse_kernel("msi:8")
        assert msi.kind == "profile"
        assert len(msi.profile) == 8
        tsq = parse_kernel("tsq:6:2.0")
        assert tsq.kind == "profile"
        assert len(tsq.profile) == 6

    def test_label_preserved(self):
        assert parse_kernel("cosine:1").kernel_id() == "cosine:1"

    @pytest.mark.parametrize("text", ["bogus:1", "cosine", "cosine:a", "tsq:4", "msi:1:2"])
    def test_bad_strings_rejected(self, text):
        with pytest.raises(ValueError):
            parse_kernel(text)


class TestPipelineSubcommands:
    def test_gen_gram_train_eval_boundary_chain(self, tmp_path):
        d = tmp_path / "data"
        assert main(["gen", "--dataset", "xor", "--seed", "0", "--out", str(d)]) == 0
        assert (d / "train.csv").exists() and (d / "test.csv").exists()

        g = tmp_path / "gram"
        assert (
            main(
                [
                    "gram",
                    "--train",
                    str(d / "train.csv"),
                    "--kernel",
                    "cosine:1",
                    "--out",
                    str(g),
                ]
            )
            == 0
        )
        meta = json.loads((g / "gram.json").read_text())
        assert meta["n_evaluations"] == 780
        assert meta["provenance"] == "exact"

        m = tmp_path / "model"
        assert (
            main(
                [
                    "train",
                    "--gram",
                    str(g / "gram.csv"),
                    "--dataset",
                    str(d / "train.csv"),
                    "--gamma",
                    "1.0",
                    "--out",
                    str(m),
                ]
            )
            == 0
        )
        assert (m / "model.json").exists()

        e = tmp_path / "eval"
        assert (
            main(
                [
                    "eval",
                    "--model",
                    str(m / "model.json"),
                    "--train",
                    str(d / "train.csv"),
                    "--test",
                    str(d / "test.csv"),
                    "--kernel",
                    "cosine:1",
                    "--out",
                    str(e),
                ]
            )
            == 0
        )
        payload = json.loads((e / "eval.json").read_text())
        assert payload["accuracy"] == pytest.approx(0.9333333333333333)

        b = tmp_path / "boundary"
        assert (
            main(
                [
                    "boundary",
                    "--model",
                    str(m / "model.json"),
                    "--train",
                    str(d / "train.csv"),
                    "--kernel",
                    "cosine:1",
                    "--side",
                    "6",
                    "--out",
                    str(b),
                ]
            )
            == 0
        )
        assert len((b / "grid.csv").read_text().splitlines()) == 37
        assert (b / "boundary.svg").exists()

    def test_bench_repeat_runs_byte_identical(self, tmp_path):
        args = [
            "bench",
            "--dataset",
            "moons",
            "--seed",
            "1",
            "--kernel",
            "cosine:1",
            "--gamma",
            "1.0",
            "--side",
            "6",
        ]
        r1, r2 = tmp_path / "r1", tmp_path / "r2"
        assert main(args + ["--out", str(r1)]) == 0
        assert main(args + ["--out", str(r2)]) == 0
        for name in ("train.csv", "test.csv", "gram.csv", "grid.csv", "model.json", "report.json", "boundary.svg"):
            assert (r1 / name).read_bytes() == (r2 / name).read_bytes()

    def test_bench_noisy_smoke(self, tmp_path):
        out = tmp_path / "noisy"
        code = main(
            [
                "bench",
                "--dataset",
                "xor",
                "--seed",
                "0",
                "--kernel",
                "cosine:1",
                "--events",
                "200",
                "--fidelity",
                "0.98",
                "--side",
                "4",
                "--out",
                str(out),
            ]
        )
        assert code == 0
        payload = json.loads((out / "report.json").read_text())
        assert payload["gram_provenance"] == "sampled"
        assert payload["noise"]["events_per_point"] == 200
        assert payload["gram_evaluations"] == 820

    def test_resolve_subcommand(self, tmp_path):
        out = tmp_path / "res"
        assert main(["resolve", "--lengths", "2:5", "--out", str(out)]) == 0
        lines = (out / "resolution.csv").read_text().splitlines()
        assert len(lines) == 1 + 4 * 3  # header, 4 lengths x 3 families

    def test_sweep_subcommand(self, tmp_path):
        out = tmp_path / "sw"
        code = main(
            [
                "sweep",
                "--dataset",
                "xor",
                "--seed",
                "0",
                "--kernels",
                "cosine:0.5,cosine:1",
                "--gammas",
                "1",
                "--out",
                str(out),
            ]
        )
        assert code == 0
        lines = (out / "sweep.csv").read_text().splitlines()
        assert lines[0] == "kernel,gamma,train_accuracy,test_accuracy"
        assert len(lines) == 3


class TestConfigFile:
    def write_config(self, tmp_path):
        cfg = tmp_path / "bench.ini"
        cfg.write_text(
            "[dataset]\n"
            "name = moons\n"
            "seed = 1\n"
            "\n"
            "[kernel]\n"
            "spec = cosine:1\n"
            "\n"
            "[svm]\n"
            "gamma = 1.0\n"
            "\n"
            "[grid]\n"
            "side = 4\n"
        )
        return cfg

    def test_config_file_drives_the_run(self, tmp_path):
        cfg = self.write_config(tmp_path)
        out = tmp_path / "out"
        assert main(["bench", "--config", str(cfg), "--out", str(out)]) == 0
        payload = json.loads((out / "report.json").read_text())
        assert payload["dataset"] == "moons"
        assert payload["seed"] == 1
        assert payload["gamma"] == 1.0
        assert payload["grid_side"] == 4

    def test_cli_flags_override_config(self, tmp_path):
        cfg = self.write_config(tmp_path)
        out = tmp_path / "out"
        assert main(["bench", "--config", str(cfg), "--gamma", "10", "--out", str(out)]) == 0
        payload = json.loads((out / "report.json").read_text())
        assert payload["gamma"] == 10.0
        # a sharper budget changes the fit on this split
        assert payload["train_accuracy"] == pytest.approx(0.9)

    def test_noise_block(self, tmp_path):
        cfg = tmp_path / "noise.ini"
        cfg.write_text(
            "[dataset]\nname = xor\nseed = 0\n\n"
            "[kernel]\nspec = cosine:1\n\n"
            "[grid]\nside = 3\n\n"
            "[noise]\nenabled = true\nevents = 150\nfidelity = 0.95\nseed = 4\n"
        )
        out = tmp_path / "out"
        assert main(["bench", "--config", str(cfg), "--out", str(out)]) == 0
        payload = json.loads((out / "report.json").read_text())
        assert payload["noise"] == {
            "events_per_point": 150,
            "fidelity": 0.95,
            "seed": 4,
            "background": 0.5,
        }


class TestFailureModes:
    def test_missing_config_tagged(self, tmp_path, capsys):
        code = main(["bench", "--config", str(tmp_path / "nope.ini"), "--out", str(tmp_path / "o")])
        assert code == 1
        err = capsys.readouterr().err
        assert "error in stage 'config'" in err

    def test_bad_kernel_tagged(self, tmp_path, capsys):
        d = tmp_path / "d"
        assert main(["gen", "--dataset", "moons", "--seed", "1", "--out", str(d)]) == 0
        code = main(
            ["gram", "--train", str(d / "train.csv"), "--kernel", "wat:1", "--out", str(tmp_path / "g")]
        )
        assert code == 1
        err = capsys.readouterr().err
        assert "error in stage 'gram'" in err

    def test_missing_input_file_tagged(self, tmp_path, capsys):
        code = main(
            ["gram", "--train", str(tmp_path / "ghost.csv"), "--kernel", "cosine:1", "--out", str(tmp_path / "g")]
        )
        assert code == 1
        assert "error in stage 'gram'" in capsys.readouterr().err
