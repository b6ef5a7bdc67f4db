import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from altrace import classnum

settings.register_profile(
    "fast",
    max_examples=25,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("fast")

np.seterr(all="warn")


@pytest.fixture(scope="session", autouse=True)
def hurwitz_table():
    # one shared in-memory table so per-discriminant form enumeration never
    # dominates test runtime
    return classnum.get_table(40000)
