import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from embedlab.ground import FinSuppEndo

settings.register_profile(
    "repo",
    deadline=None,
    derandomize=True,
    max_examples=150,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("repo")


def endos(dom: int = 6):
    """Maps of {0..dom-1} extended by the identity."""
    return st.lists(st.integers(0, dom - 1), min_size=dom, max_size=dom).map(FinSuppEndo.from_images)


def perms(dom: int = 6):
    return st.permutations(list(range(dom))).map(FinSuppEndo.from_images)


@pytest.fixture(scope="session")
def s3_pair():
    from embedlab.words import symmetric_group

    return {"A": symmetric_group(3), "B": symmetric_group(3)}
