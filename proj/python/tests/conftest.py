import importlib

import pytest


@pytest.fixture(scope="session")
def core():
    try:
        return importlib.import_module("tensorclt._core")
    except ImportError:
        # build-tree layout: the extension sits directly on PYTHONPATH
        return importlib.import_module("_core")
