from __future__ import annotations

import os
from pathlib import Path

import pytest

REPO_ROOT = Path(__file__).resolve().parent.parent
REPO_CACHE = REPO_ROOT / "cache"

# the repo cache ships the Leech shell and pair tables so degree-4 omega
# work is read back, not recomputed, during tests
os.environ.setdefault("THETA_CACHE_DIR", str(REPO_CACHE))


@pytest.fixture(scope="session")
def repo_cache() -> str:
    REPO_CACHE.mkdir(exist_ok=True)
    return str(REPO_CACHE)


@pytest.fixture(scope="session")
def leech_shell(repo_cache):
    from thetalat import lattices, leechfast

    lat = lattices.build_lattice("omega")
    return lat, leechfast.minimal_vectors_cached(lat, cache_dir=repo_cache)
