"""CLI: thin-adapter equality with library calls, exit codes, file formats."""

import json

import numpy as np
import pytest
from numpy.testing import assert_allclose, assert_array_equal

import kernelbridge as kb
from kernelbridge import io
from kernelbridge.cli import main


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out = capsys.readouterr().out.strip()
    payload = json.loads(out.splitlines()[-1]) if out else {}
    return code, payload


class TestZoo:
    def test_list(self, capsys):
        code, payload = run(capsys, "zoo", "list")
        assert code == 0
        names = {k["name"] for k in payload["kernels"]}
        assert names == {"gaussian", "laplacian", "cauchy", "cosine", "constant"}

    def test_sample_matches_library(self, tmp_path, capsys):
        out = tmp_path / "gauss.csv"
        code, _ = run(capsys, "zoo", "sample", "--kernel", "gaussian",
                      "--grid", "-2", "2", "41", "-o", out)
        assert code == 0
        t, v = io.read_profile_csv(out)
        assert_array_equal(v, kb.zoo("gaussian")(t))

    def test_sample_requires_output(self, capsys):
        assert main(["zoo", "sample", "--kernel", "gaussian"]) == 2


class TestMatrixCommands:
    def test_gram_golden(self, tmp_path, capsys):
        pts = tmp_path / "pts.csv"
        io.write_points_csv(pts, [0.0, 1.0, 2.5])
        out = tmp_path / "gram.csv"
        code, _ = run(capsys, "gram", "--points", pts, "--kernel", "gaussian",
                      "-o", out)
        assert code == 0
        expected = kb.build_gram(kb.zoo("gaussian"), [0.0, 1.0, 2.5]).entries
        assert_array_equal(io.read_matrix_csv(out), expected)

    def test_check_psd_all_ones(self, tmp_path, capsys):
        m = tmp_path / "ones.csv"
        io.write_matrix_csv(m, np.ones((3, 3)))
        code, payload = run(capsys, "check-psd", m)
        assert code == 0
        assert payload["psd"] is True

    def test_check_psd_failing_with_witness(self, tmp_path, capsys):
        m = tmp_path / "bad.csv"
        io.write_matrix_csv(m, [[0.7, -1.3, 0.7], [-1.3, 0.7, -1.3], [0.7, -1.3, 0.7]])
        code, payload = run(capsys, "check-psd", m)
        assert code == 0
        assert payload["psd"] is False
        assert payload["witness_eigenvalue"] == pytest.approx(-0.8215, abs=1e-3)

    def test_check_nd(self, tmp_path, capsys):
        m = tmp_path / "quartic.csv"
        io.write_matrix_csv(m, [[0, 1, 16], [1, 0, 1], [16, 1, 0]])
        code, payload = run(capsys, "check-nd", m)
        assert code == 0
        assert payload["nd"] is False

    def test_nd_to_psd_golden(self, tmp_path, capsys):
        m = tmp_path / "d2.csv"
        matrix = np.array([[0.0, 1.0, 4.0], [1.0, 0.0, 1.0], [4.0, 1.0, 0.0]])
        io.write_matrix_csv(m, matrix)
        out = tmp_path / "centered.csv"
        code, _ = run(capsys, "nd-to-psd", m, "-o", out)
        assert code == 0
        assert_array_equal(io.read_matrix_csv(out), kb.nd_to_psd(matrix, 0))

    def test_embed_accepts(self, tmp_path, capsys):
        m = tmp_path / "d2.csv"
        io.write_matrix_csv(m, [[0.0, 1.0, 4.0], [1.0, 0.0, 1.0], [4.0, 1.0, 0.0]])
        out = tmp_path / "coords.csv"
        code, payload = run(capsys, "embed", m, "-o", out)
        assert code == 0
        assert payload["rank"] == 1
        assert payload["residual"] <= 1e-10
        assert io.read_matrix_csv(out).shape == (3, 1)

    def test_embed_rejects_with_exit_3(self, tmp_path, capsys):
        m = tmp_path / "d2.csv"
        io.write_matrix_csv(m, [[0, 1, 16], [1, 0, 1], [16, 1, 0]])
        code, payload = run(capsys, "embed", m, "-o", tmp_path / "c.csv")
        assert code == 3
        assert payload["error"] == "NotHilbertian"
        assert payload["witness_eigenvalue"] == pytest.approx(4.0)


class TestProfileCommands:
    def test_to_metric(self, tmp_path, capsys):
        out = tmp_path / "d2.csv"
        code, _ = run(capsys, "to-metric", "--kernel", "cosine",
                      "--grid", "0", str(np.pi), "2", "-o", out)
        assert code == 0
        t, v = io.read_profile_csv(out)
        assert_allclose(v[-1], 4.0, rtol=1e-12)

    def test_atom0(self, capsys):
        code, payload = run(capsys, "atom0", "--kernel", "constant",
                            "--window", "50")
        assert code == 0
        assert payload["atom0"] == pytest.approx(1.0, rel=1e-12)

    def test_profile_descriptor_input(self, tmp_path, capsys):
        descriptor = tmp_path / "kernel.json"
        io.write_json(descriptor, kb.zoo("gaussian", scale=2.0).descriptor())
        out = tmp_path / "d2.csv"
        code, _ = run(capsys, "to-metric", "--profile", descriptor,
                      "--grid", "0", "2", "3", "-o", out)
        assert code == 0
        t, v = io.read_profile_csv(out)
        expected = 2.0 - 2.0 * np.exp(-(t / 2.0) ** 2 / 2.0)
        assert_allclose(v, expected, rtol=1e-12, atol=1e-15)

    def test_kernel_params_flag(self, tmp_path, capsys):
        out = tmp_path / "cos.csv"
        code, _ = run(capsys, "zoo", "sample", "--kernel", "cosine",
                      "--params", '{"omega": 2.0}', "--grid", "0", "3.14159", "5",
                      "-o", out)
        assert code == 0
        t, v = io.read_profile_csv(out)
        assert_allclose(v, np.cos(2.0 * t), rtol=1e-12, atol=1e-15)


class TestSpectralCommands:
    def test_invert_synth_round_trip(self, tmp_path, capsys):
        measure_path = tmp_path / "measure.json"
        code, payload = run(capsys, "invert", "--kernel", "gaussian",
                            "-o", measure_path)
        assert code == 0
        assert payload["residual"] <= 1e-3
        synth_path = tmp_path / "synth.csv"
        code, _ = run(capsys, "synth", measure_path, "--grid", "-5", "5", "101",
                      "-o", synth_path)
        assert code == 0
        t, v = io.read_profile_csv(synth_path)
        assert np.max(np.abs(v - np.exp(-t ** 2 / 2.0))) <= 1e-3

    def test_invert_rejects_shifted_cosine_from_samples(self, tmp_path, capsys):
        t = np.arange(0.0, 200.0 + 1e-9, 0.005)
        samples = tmp_path / "samples.csv"
        io.write_profile_csv(samples, t, np.cos(t) - 0.3)
        code, payload = run(capsys, "invert", "--samples", samples,
                            "-o", tmp_path / "m.json")
        assert code == 3
        assert payload["error"] == "NotPositiveDefinite"
        assert payload["atom0"] == pytest.approx(-0.3, abs=5e-3)

    def test_synth_golden_equality_with_library(self, tmp_path, capsys):
        mu = kb.SpectralMeasure(atoms=[(0.0, 0.2), (1.3, 0.4)],
                                edges=[0.0, 0.7, 2.2], values=[0.15, 0.05])
        measure_path = tmp_path / "mu.json"
        io.write_json(measure_path, mu.to_dict())
        out = tmp_path / "k.csv"
        code, _ = run(capsys, "synth", measure_path, "-o", out)
        assert code == 0
        t, v = io.read_profile_csv(out)
        assert_array_equal(t, kb.probe_grid())
        assert_array_equal(v, kb.bochner_synthesis(mu, kb.probe_grid()))

    def test_gamma_forward_and_inverse(self, tmp_path, capsys):
        measure_path = tmp_path / "mu.json"
        io.write_json(measure_path, kb.cosine_measure().to_dict())
        gamma_path = tmp_path / "gamma.json"
        code, payload = run(capsys, "gamma", measure_path, "-o", gamma_path)
        assert code == 0
        assert payload["atom0"] == 0.0
        gamma = kb.GammaMeasure.from_dict(io.read_json(gamma_path))
        assert_allclose(gamma.atom_locations, [0.5])
        assert_allclose(gamma.atom_masses, [1.0])

        back_path = tmp_path / "back.json"
        code, payload = run(capsys, "gamma", gamma_path, "--k0", "1.3",
                            "-o", back_path)
        assert code == 0
        assert payload["atom0"] == pytest.approx(0.3)
        back = kb.SpectralMeasure.from_dict(io.read_json(back_path))
        assert_allclose(back.zero_atom, 0.3)

    def test_gamma_inverse_rejects_unbounded(self, tmp_path, capsys):
        gamma_path = tmp_path / "gamma.json"
        io.write_json(gamma_path, kb.GammaMeasure(edges=[0.0, 1e4],
                                                  values=[2.0 / np.pi]).to_dict())
        code, payload = run(capsys, "gamma", gamma_path, "--k0", "1.0",
                            "-o", tmp_path / "m.json")
        assert code == 3
        assert payload["error"] == "UnboundedMetric"

    def test_screw(self, tmp_path, capsys):
        gamma_path = tmp_path / "gamma.json"
        io.write_json(gamma_path, kb.GammaMeasure(atoms=[(0.5, 1.0)]).to_dict())
        out = tmp_path / "d2.csv"
        code, _ = run(capsys, "screw", gamma_path, "--grid", "-5", "5", "21",
                      "-o", out)
        assert code == 0
        t, v = io.read_profile_csv(out)
        assert_allclose(v, 2.0 - 2.0 * np.cos(t), atol=1e-12)

    def test_bound_check_tight(self, tmp_path, capsys):
        gamma_path = tmp_path / "gamma.json"
        io.write_json(gamma_path, kb.GammaMeasure(atoms=[(0.5, 1.0)]).to_dict())
        code, payload = run(capsys, "bound-check", gamma_path, "--k0", "1.0")
        assert code == 0
        assert payload == {"integral": 4.0, "bound": 4.0, "ok": True, "tight": True}

    def test_bound_check_unbounded_reports_inf(self, tmp_path, capsys):
        gamma_path = tmp_path / "gamma.json"
        io.write_json(gamma_path, kb.GammaMeasure(edges=[0.0, 10.0],
                                                  values=[1.0]).to_dict())
        code, payload = run(capsys, "bound-check", gamma_path, "--k0", "1.0")
        assert code == 0
        assert payload["ok"] is False
        assert payload["integral"] == "inf"


class TestFeatureCommands:
    def test_rff_sample_and_errors(self, tmp_path, capsys):
        measure_path = tmp_path / "mu.json"
        io.write_json(measure_path, kb.cosine_measure().to_dict())
        pairs_path = tmp_path / "pairs.csv"
        rng = np.random.default_rng(0)
        io.write_matrix_csv(pairs_path, rng.uniform(-3, 3, (20, 2)))
        sample_path = tmp_path / "sample.json"
        errors_path = tmp_path / "errors.csv"
        code, payload = run(capsys, "rff", measure_path, "-m", "2048",
                            "--seed", "42", "--pairs", pairs_path,
                            "--errors-out", errors_path, "-o", sample_path)
        assert code == 0
        assert payload["max_abs_error"] <= 0.08
        sample = kb.FrequencySample.from_dict(io.read_json(sample_path))
        library = kb.sample_frequencies(kb.cosine_measure(), m=2048, seed=42)
        assert_array_equal(sample.frequencies, library.frequencies)
        header, *rows = (tmp_path / "errors.csv").read_text().strip().splitlines()
        assert header == "exact,approx,abs_error"
        assert len(rows) == 20

    def test_product_synth(self, tmp_path, capsys):
        measure_path = tmp_path / "prod.json"
        product = kb.ProductSpectralMeasure(factors=(kb.cosine_measure(),
                                                     kb.cosine_measure()))
        io.write_json(measure_path, product.to_dict())
        pairs_path = tmp_path / "pairs.csv"
        io.write_matrix_csv(pairs_path, [[0.0, 0.0, 1.0, 2.0]])
        out = tmp_path / "values.csv"
        code, _ = run(capsys, "product-synth", measure_path, "--pairs", pairs_path,
                      "-o", out)
        assert code == 0
        values = io.read_points_csv(out)
        assert_allclose(values, [np.cos(1.0) * np.cos(2.0)], rtol=1e-12)

    def test_rff_product_measure(self, tmp_path, capsys):
        measure_path = tmp_path / "prod.json"
        product = kb.ProductSpectralMeasure(factors=(kb.cosine_measure(),
                                                     kb.cosine_measure()))
        io.write_json(measure_path, product.to_dict())
        code, payload = run(capsys, "rff", measure_path, "-m", "64", "--seed", "1",
                            "-o", tmp_path / "s.json")
        assert code == 0
        sample = kb.FrequencySample.from_dict(io.read_json(tmp_path / "s.json"))
        assert sample.frequencies.shape == (64, 2)


class TestExitCodes:
    def test_missing_file_is_validation_error(self, capsys):
        assert main(["check-psd", "/nonexistent/matrix.csv"]) == 2

    def test_unknown_kernel_is_validation_error(self, tmp_path, capsys):
        pts = tmp_path / "pts.csv"
        io.write_points_csv(pts, [0.0, 1.0])
        assert main(["gram", "--points", str(pts), "--kernel", "sinc",
                     "-o", str(tmp_path / "g.csv")]) == 2

    def test_malformed_json_is_validation_error(self, tmp_path, capsys):
        bad = tmp_path / "bad.json"
        bad.write_text("{not json")
        assert main(["synth", str(bad), "-o", str(tmp_path / "out.csv")]) == 2

    def test_usage_error_exits_2(self):
        with pytest.raises(SystemExit) as err:
            main(["no-such-command"])
        assert err.value.code == 2
