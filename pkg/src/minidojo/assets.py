"""Paths to the corpora shipped with the package."""

from __future__ import annotations

from importlib import resources
from pathlib import Path

__all__ = ["bundled_corpus_root", "ambiguity_corpus_root"]


def _data_dir() -> Path:
    return Path(str(resources.files(__package__).joinpath("data")))


def bundled_corpus_root() -> Path:
    """Two-file arithmetic corpus (mod/gcd) used throughout the docs and tests."""
    return _data_dir() / "bundled"


def ambiguity_corpus_root() -> Path:
    """Fixture with two declarations both short-named ``read``; replays in the
    default resolution mode and fails in ``open_only`` mode."""
    return _data_dir() / "ambiguity"
