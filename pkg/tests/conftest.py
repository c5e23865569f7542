import pytest

import helpers


@pytest.fixture
def trio():
    return helpers.trio()


@pytest.fixture
def silent_star():
    return helpers.silent_star()


@pytest.fixture
def star_half():
    return helpers.star_all_half()


@pytest.fixture
def tri():
    return helpers.triangle_line()
