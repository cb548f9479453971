import numpy as np
import pytest

from qnogo import observables as obs


@pytest.fixture(scope="session")
def pair_a() -> np.ndarray:
    return obs.build_pair_A()


@pytest.fixture(scope="session")
def pair_b() -> np.ndarray:
    return obs.build_pair_B()


@pytest.fixture(scope="session")
def ghz_ops() -> list[np.ndarray]:
    return [obs.build_product(p) for p in obs.GHZ_PRODUCT_PATTERNS]
