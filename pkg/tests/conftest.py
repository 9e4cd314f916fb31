import pytest
from hypothesis import settings

from f2reducts.forms import standard_form

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")


@pytest.fixture
def F4():
    return standard_form(2)


@pytest.fixture
def F6():
    return standard_form(3)
