"""Shared fixtures: small seeded domains and compact model configurations."""

import json

import pytest

from apps.adaptation.services.hyperparams import HyperParams
from apps.bls.services.config import BlsConfig
from apps.datasets.services.loader import write_domain_csv
from apps.datasets.services.synthetic import make_shifted_domains


@pytest.fixture
def small_bls():
    return BlsConfig(n=4, q=5, m=1, r=40, sae_iters=0, ridge_lambda=1e-3)


@pytest.fixture
def small_hyperparams(small_bls):
    return HyperParams(c_s=100.0, c_t=100.0, sigma=0.1, k=5, bls=small_bls)


@pytest.fixture
def shifted_domains():
    return make_shifted_domains(source_samples=90, target_samples=90, seed=7)


@pytest.fixture
def domain_files(tmp_path):
    """Write four synthetic domains and return their manifest paths."""

    def _write(count=4, samples=60):
        manifests = []
        for index in range(count):
            source, _ = make_shifted_domains(
                source_samples=samples, target_samples=3, seed=index + 1,
            )
            csv_path = write_domain_csv(source, tmp_path / f"domain{index}.csv")
            manifest = tmp_path / f"domain{index}.json"
            manifest.write_text(json.dumps(
                {"name": f"D{index}", "path": csv_path.name, "num_classes": 3}
            ))
            manifests.append(manifest)
        return manifests

    return _write
