"""
Shared pytest setup
"""

import sys
from pathlib import Path

import pytest

# Add the backend directory to the Python path
backend_dir = Path(__file__).parent.parent / 'backend'
sys.path.insert(0, str(backend_dir))

from analyzers.radius_analyzer import RadiusAnalyzer  # noqa: E402


@pytest.fixture
def radius_analyzer():
    return RadiusAnalyzer()


@pytest.fixture(autouse=True)
def clean_environment(monkeypatch):
    """Keep STARRAD_* settings from the developer shell out of the tests."""
    for name in ('STARRAD_THREADS', 'STARRAD_WINDING_NODES', 'STARRAD_EPS_GRID'):
        monkeypatch.delenv(name, raising=False)
