"""Utility functions for artifact output.

This module validates output paths before a run starts, so a long search
never fails at the very end, and writes artifacts atomically so a crash
cannot leave a truncated certificate behind.
"""

import logging
import os
import tempfile
from pathlib import Path

from core.errors import ConfigError

logger = logging.getLogger(__name__)


def ensure_writable(path: str | Path) -> Path:
    """
    Check that an artifact can be created at ``path``.

    Parameters
    ----------
    path : str | Path
        Target file; its parent directory must already exist.

    Returns
    -------
    Path
        The path as a ``Path``.

    Raises
    ------
    ConfigError
        If the path is a directory, or its parent is missing or not writable.
    """
    target = Path(path)
    if target.is_dir():
        raise ConfigError(f"output path {target} is a directory")
    parent = target.parent if str(target.parent) else Path(".")
    if not parent.is_dir():
        raise ConfigError(f"output directory {parent} does not exist")
    if not os.access(parent, os.W_OK) or (target.exists() and not os.access(target, os.W_OK)):
        raise ConfigError(f"output path {target} is not writable")
    return target


def atomic_write_text(path: str | Path, text: str) -> Path:
    """
    Write UTF-8 text with LF line endings via a temporary file and a rename.

    Raises
    ------
    ConfigError
        If the file cannot be written.
    """
    target = ensure_writable(path)
    try:
        fd, tmp_name = tempfile.mkstemp(dir=target.parent, prefix=f".{target.name}.", suffix=".tmp")
        with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as handle:
            handle.write(text)
        os.replace(tmp_name, target)
    except OSError as e:
        logger.error(f"Failed to write {target}: {e}")
        raise ConfigError(f"cannot write {target}: {e}") from e
    logger.info(f"Wrote {target} ({len(text.encode('utf-8'))} bytes)")
    return target
