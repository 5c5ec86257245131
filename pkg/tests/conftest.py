import pytest
from hypothesis import HealthCheck, settings

from avdiff import RegistrationSeries, build_reference_series

settings.register_profile(
    "suite",
    max_examples=60,
    deadline=None,
    derandomize=True,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("suite")


@pytest.fixture(scope="session")
def ref_series():
    return build_reference_series()


def make_flat_series(first, last, count=10_000_000.0):
    years = range(first, last + 1)
    return RegistrationSeries(
        years=tuple(years), counts=tuple(float(count) for _ in years)
    )


@pytest.fixture
def flat_series():
    return make_flat_series(2015, 2050)
