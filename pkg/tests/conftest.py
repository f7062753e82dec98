import os
import sys

import pytest

cpath = os.path.dirname(os.path.realpath(__file__))
sys.path.insert(0, os.path.join(cpath, '..'))

from cli.catalog import catalog  # noqa: E402


@pytest.fixture(scope='session')
def entry():
    """Parsed catalog entries, memoized across the session"""
    cache = {}

    def load(name):
        if name not in cache:
            cache[name] = catalog(name)
        return cache[name]

    return load


@pytest.fixture(scope='session')
def weyl1(entry):
    return entry('weyl-1').extension


@pytest.fixture(scope='session')
def weyl2(entry):
    return entry('weyl-2').extension


@pytest.fixture(scope='session')
def usl2(entry):
    return entry('usl2').extension
