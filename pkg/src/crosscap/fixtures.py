"""Bundled example triangulations."""
from __future__ import annotations

from importlib import resources

from .tri_format import loads

FIXTURES = ("unknot", "unknot_layered", "trefoil", "trefoil_layered", "trefoil_buried",
            "trefoil_exposed", "free_tet", "s3_double")

# Knot genus of the knot whose complement each marked fixture triangulates.
KNOWN_GENUS = {"unknot": 0, "unknot_layered": 0, "trefoil": 1, "trefoil_layered": 1,
               "trefoil_exposed": 1}


def fixture_text(name: str) -> str:
    return resources.files("crosscap").joinpath("data", f"{name}.tri").read_text()


def load_fixture(name: str):
    return loads(fixture_text(name))
