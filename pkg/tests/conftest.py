from __future__ import annotations

import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from occ import load_fixture, shadow_assignment  # noqa: E402

FIXTURE_DIR = Path(__file__).resolve().parents[1] / "src" / "occ" / "fixtures"

# (first, second, plan) fixture sewings with a short description
FIXTURE_SEWINGS = [
    ("copants_phi.occ", "pants_mu.occ", "both.plan"),  # torus factorization
    ("fig11_cap.occ", "pants_mu.occ", "fig11.plan"),  # cap into pants
    ("strip.occ", "strip.occ", "strip.plan"),
    ("fig02_type_ii.occ", "fig04_piece.occ", "fig04.plan"),
    ("fig02_type_ii.occ", "fig05_piece.occ", "fig05.plan"),
    ("fig06_open_window.occ", "fig06_open_window.occ", "fig06.plan"),
    ("disc_out.occ", "window_in.occ", "disc.plan"),
]


def occ_fixtures():
    return sorted(p.name for p in FIXTURE_DIR.glob("*.occ"))


@pytest.fixture(scope="session")
def shadow():
    branes = load_fixture("fig01_type_i.occ").branes
    return shadow_assignment(2, 2, branes)


@pytest.fixture
def fx():
    return load_fixture
