"""Shared pytest setup: puts src/ on the import path and isolates global settings."""

import os
import sys

import pytest
from dotenv import load_dotenv

# Add src to path for imports
sys.path.insert(0, os.path.join(os.path.dirname(__file__), "src"))

# Load environment variables
load_dotenv()

from config import Settings, initialize_settings, reset_global_state  # noqa: E402


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: million-point grid checks (deselect with -m \"not slow\")")


@pytest.fixture(autouse=True)
def isolated_settings():
    """Fresh settings for every test."""
    reset_global_state()
    yield
    reset_global_state()


@pytest.fixture
def small_grids():
    """Smaller default grids for tests that do not pass n explicitly."""
    return initialize_settings(Settings(oracle_grid_size=20_000, audit_grid_size=2_000))
