"""Shared fixtures."""

import numpy as np
import pytest

from models.specs import EmissionSpec, QuadratureSpec


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20240611)


@pytest.fixture
def tight_quad() -> QuadratureSpec:
    return QuadratureSpec(rel_tol=1e-10, max_subdivisions=200)


@pytest.fixture
def emission_spec() -> EmissionSpec:
    return EmissionSpec(lambda_ir=1e-6, lambda_uv=1.0)


def random_rotation(rng: np.random.Generator) -> np.ndarray:
    """A proper rotation matrix from the QR decomposition of a Gaussian matrix."""
    q, r = np.linalg.qr(rng.normal(size=(3, 3)))
    q = q @ np.diag(np.sign(np.diag(r)))
    if np.linalg.det(q) < 0:
        q[:, 0] = -q[:, 0]
    return q
