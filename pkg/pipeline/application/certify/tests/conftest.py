"""Pytest configuration and shared fixtures for the command-line tests."""

import sys
from pathlib import Path

import pytest

# Application module and library sources on the import path
app_path = Path(__file__).parent.parent
library_src = app_path.parent.parent / "library" / "src"
sys.path.insert(0, str(library_src))
sys.path.insert(0, str(app_path))


@pytest.fixture
def out_dir(tmp_path: Path) -> Path:
    """Fresh directory for run artifacts."""
    directory = tmp_path / "artifacts"
    directory.mkdir()
    return directory
