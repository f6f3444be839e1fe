import pytest

from filmcasimir.materials import material_table


@pytest.fixture(scope="session")
def presets():
    return material_table()
