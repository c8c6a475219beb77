"""Bundled fixtures encoded from the base figures (dimap.v1 / tri.v1 files).

The directory holding the JSON files can be relocated with the
TRINITY_FIXTURES environment variable.
"""

from __future__ import annotations

import os
from pathlib import Path

from ..combmap import EmbeddedDigraph, load_dimap
from ..trinity import Triangulation, load_tri


def fixtures_dir() -> Path:
    override = os.environ.get("TRINITY_FIXTURES")
    if override:
        return Path(override)
    return Path(__file__).resolve().parent


def list_fixtures() -> list[str]:
    return sorted(p.name for p in fixtures_dir().glob("*.json"))


def fixture_path(name: str) -> Path:
    path = fixtures_dir() / name
    if not path.exists():
        raise FileNotFoundError(f"no fixture named {name} in {fixtures_dir()}")
    return path


def fig1() -> Triangulation:
    """The 14-vertex base triangulation (classes of sizes 4, 5, 5)."""
    return load_tri(fixture_path("fig1.tri.json"))


def fig3_dimap() -> EmbeddedDigraph:
    """Its 5-vertex, 12-arc derived dimap: a directed 4-cycle plus a pole."""
    return load_dimap(fixture_path("fig3_dr.dimap.json"))


def fig6() -> Triangulation:
    """Two wedged dipole(2)s triangulated; canonical group Z2 + Z2."""
    return load_tri(fixture_path("fig6.tri.json"))
