import os

import pytest

from kgv.matgroup import symplectic_group

EXTENDED = bool(int(os.environ.get("KGV_EXTENDED", "0")))


def pytest_configure(config):
    config.addinivalue_line("markers", "extended: heavy extended-tier checks")


def pytest_collection_modifyitems(config, items):
    if EXTENDED:
        return
    skip = pytest.mark.skip(reason="extended tier disabled (set KGV_EXTENDED=1)")
    for item in items:
        if "extended" in item.keywords:
            item.add_marker(skip)


@pytest.fixture(scope="session")
def sp_groups():
    """The symplectic oracle groups of the default tier, built once."""
    return {
        (1, 3): symplectic_group(1, 3),
        (1, 5): symplectic_group(1, 5),
        (1, 7): symplectic_group(1, 7),
        (2, 2): symplectic_group(2, 2),
        (2, 3): symplectic_group(2, 3),
    }
