import numpy as np
import pytest

import kernelbridge as kb


def random_spectral_measure(rng, binned=True):
    """Random valid measure: optional zero atom, a few atoms, a few bins."""
    atoms = []
    if rng.random() < 0.5:
        atoms.append((0.0, float(rng.uniform(0.0, 1.0))))
    for _ in range(int(rng.integers(0, 4))):
        atoms.append((float(rng.uniform(0.05, 6.0)), float(rng.uniform(0.0, 1.0))))
    edges, values = (), ()
    if binned and rng.random() < 0.8:
        n = int(rng.integers(1, 7))
        while True:
            edges = np.sort(rng.uniform(0.0, 6.0, n + 1))
            if np.all(np.diff(edges) > 1e-3):
                break
        if rng.random() < 0.3:
            edges[0] = 0.0
        values = rng.uniform(0.0, 1.0, n)
    measure = kb.SpectralMeasure(atoms=atoms, edges=edges, values=values)
    if measure.total_mass() == 0.0:
        measure = kb.SpectralMeasure(atoms=atoms + [(1.0, 0.5)],
                                     edges=edges, values=values)
    return measure


@pytest.fixture
def measure_factory():
    return random_spectral_measure
