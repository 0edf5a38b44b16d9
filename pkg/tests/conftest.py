"""Shared fixtures for the FracLab test suite."""

import os

os.environ.setdefault("FRACLAB_LOG_CONSOLE", "false")

import pytest

from fraclab.core.field import Field
from fraclab.core.grid import Grid
from fraclab.core.profiles import line_bump, one_minus_cos


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: long-running integration test")


@pytest.fixture
def torus_grid():
    return Grid.torus(64)


@pytest.fixture
def line_grid():
    return Grid.line(1024, 8.0)


@pytest.fixture
def cos_field(torus_grid):
    """u = 1 - cos x on 64 nodes."""
    return Field.from_profile(torus_grid, one_minus_cos())


@pytest.fixture
def bump_field(line_grid):
    """u = x^2 (1 - x^2)_+^2 on the default line window."""
    return Field.from_profile(line_grid, line_bump(1, 2))
