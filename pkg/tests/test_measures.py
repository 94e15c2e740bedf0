"""Measure storage: validation, mass accounting, serialization, closed forms."""

import numpy as np
import pytest
from numpy.testing import assert_allclose

import kernelbridge as kb


class TestValidation:
    def test_negative_atom_mass_rejected(self):
        with pytest.raises(ValueError):
            kb.SpectralMeasure(atoms=[(1.0, -0.1)])

    def test_negative_atom_location_rejected(self):
        with pytest.raises(ValueError):
            kb.SpectralMeasure(atoms=[(-1.0, 0.1)])

    def test_gamma_rejects_atom_at_zero(self):
        with pytest.raises(ValueError, match="no discrete component at 0"):
            kb.GammaMeasure(atoms=[(0.0, 1.0)])

    def test_nonincreasing_edges_rejected(self):
        with pytest.raises(ValueError):
            kb.SpectralMeasure(edges=[0.0, 1.0, 1.0], values=[0.5, 0.5])

    def test_negative_density_rejected(self):
        with pytest.raises(ValueError):
            kb.SpectralMeasure(edges=[0.0, 1.0], values=[-0.5])

    def test_edge_value_count_mismatch(self):
        with pytest.raises(ValueError):
            kb.SpectralMeasure(edges=[0.0, 1.0, 2.0], values=[0.5])

    def test_negative_edge_rejected(self):
        with pytest.raises(ValueError):
            kb.GammaMeasure(edges=[-1.0, 1.0], values=[0.5])


class TestMassAccounting:
    def test_total_mass_matches_synthesis_at_zero(self):
        mu = kb.SpectralMeasure(atoms=[(0.0, 0.3), (2.0, 0.2)],
                                edges=[0.0, 1.0, 3.0], values=[0.1, 0.05])
        k0 = kb.bochner_synthesis(mu, 0.0)
        assert abs(k0 - mu.total_mass()) <= 1e-10 * max(abs(k0), 1.0)

    def test_zero_atom_mass(self):
        mu = kb.SpectralMeasure(atoms=[(0.0, 0.25), (1.0, 0.5)])
        assert mu.zero_atom == 0.25
        assert mu.total_mass() == 0.25 + 2 * 0.5

    def test_cumulative_positive(self):
        mu = kb.SpectralMeasure(atoms=[(0.0, 1.0), (1.0, 0.5)],
                                edges=[0.0, 2.0], values=[0.25])
        assert mu.cumulative_positive(0.5) == 0.25 * 0.5
        assert mu.cumulative_positive(1.0) == 0.5 + 0.25
        assert mu.cumulative_positive(10.0) == 0.5 + 0.5

    def test_density_lookup(self):
        mu = kb.SpectralMeasure(edges=[0.0, 1.0, 2.0], values=[0.7, 0.1])
        assert mu.density_at(0.0) == 0.7
        assert mu.density_at(1.5) == 0.1
        assert mu.density_at(3.0) == 0.0

    def test_scaled(self):
        mu = kb.SpectralMeasure(atoms=[(1.0, 0.5)], edges=[0.0, 1.0], values=[0.2])
        assert_allclose(mu.scaled(3.0).total_mass(), 3.0 * mu.total_mass())


class TestSerialization:
    def test_round_trip_exact(self):
        mu = kb.SpectralMeasure(atoms=[(0.0, 0.3), (1.5, 0.25)],
                                edges=[0.0, 0.5, 2.0], values=[0.4, 0.1])
        again = kb.SpectralMeasure.from_dict(mu.to_dict())
        assert again == mu

    def test_gamma_round_trip(self):
        gamma = kb.GammaMeasure(atoms=[(0.5, 1.0)], edges=[0.1, 1.0], values=[0.2])
        assert kb.GammaMeasure.from_dict(gamma.to_dict()) == gamma

    def test_empty_measure(self):
        mu = kb.SpectralMeasure()
        assert mu.total_mass() == 0.0
        assert kb.SpectralMeasure.from_dict(mu.to_dict()) == mu


class TestSymmetrizedView:
    def test_two_sided_masses(self):
        mu = kb.SpectralMeasure(atoms=[(0.0, 0.3), (1.0, 0.25)],
                                edges=[0.0, 2.0], values=[0.1])
        locs, masses, edges, values = mu.symmetrized()
        assert_allclose(sorted(locs), [-1.0, 0.0, 1.0])
        # mirrored atoms each carry the stored one-sided mass
        assert_allclose(np.sum(masses), 0.3 + 2 * 0.25)
        widths = np.diff(edges)
        assert_allclose(np.sum(values * widths) + np.sum(masses), mu.total_mass())
        # density is even
        assert_allclose(edges, [-2.0, 0.0, 2.0])
        assert_allclose(values, [0.1, 0.1])

    def test_density_away_from_zero_gets_gap_bin(self):
        mu = kb.SpectralMeasure(edges=[1.0, 2.0], values=[0.1])
        _, _, edges, values = mu.symmetrized()
        assert_allclose(edges, [-2.0, -1.0, 1.0, 2.0])
        assert_allclose(values, [0.1, 0.0, 0.1])
        assert_allclose(np.sum(values * np.diff(edges)), mu.total_mass())


class TestClosedFormMeasures:
    def test_gaussian_pair(self):
        mu = kb.gaussian_measure()
        assert_allclose(kb.bochner_synthesis(mu, 1.0), np.exp(-0.5), atol=1e-6)

    def test_laplacian_pair(self):
        mu = kb.laplacian_measure(freq_max=400.0, n_bins=65536)
        assert_allclose(kb.bochner_synthesis(mu, 1.0), np.exp(-1.0), atol=1e-3)

    def test_cauchy_pair(self):
        mu = kb.cauchy_measure()
        assert_allclose(kb.bochner_synthesis(mu, 1.0), 1.0, atol=1e-3)

    def test_cosine_pair_exact(self):
        mu = kb.cosine_measure(omega=2.0)
        t = np.linspace(-3, 3, 7)
        assert_allclose(kb.bochner_synthesis(mu, t), np.cos(2.0 * t), rtol=1e-15)

    def test_constant_pair_exact(self):
        mu = kb.constant_measure(0.7)
        assert kb.bochner_synthesis(mu, 123.4) == 0.7

    def test_scaled_gaussian(self):
        mu = kb.gaussian_measure(scale=2.0, freq_max=8.0)
        assert_allclose(kb.bochner_synthesis(mu, 1.0), np.exp(-1.0 / 8.0), atol=1e-6)
