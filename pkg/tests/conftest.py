import sys
from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings

from frechetrp import _kernels

sys.path.insert(0, str(Path(__file__).parent))

settings.register_profile(
    "frechetrp",
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("frechetrp")


@pytest.fixture(scope="session", autouse=True)
def warm_kernels():
    # one-off JIT compilation so test timings measure the algorithms
    _kernels.warm_up()
