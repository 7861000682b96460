import pytest

from subtle.milnor import build_field_model


@pytest.fixture(scope="session")
def real():
    return build_field_model("real")


@pytest.fixture(scope="session")
def fq():
    return build_field_model("finite_field")


@pytest.fixture(scope="session")
def qc():
    return build_field_model("quadratically_closed")


@pytest.fixture(scope="session")
def two_gen():
    # custom model with a nontrivial annihilator and a nontrivial quotient:
    # Ann(a) = (b) and K/Ann(a) is a polynomial line on a
    return build_field_model(
        {"name": "two_gen", "generators": ["a", "b"], "relations": ["a*b"], "alpha": "a"}
    )
