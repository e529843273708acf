"""Catalog files and the small-order representatives shipped with the package."""
from __future__ import annotations

from dataclasses import dataclass
from importlib import resources
from pathlib import Path

from .squares import LatinSquare, parse_catalog

# orders 2..5 have 1, 1, 2, 2 main classes; these are one square from each
BUNDLED = "small_orders.txt"


@dataclass(frozen=True)
class CatalogEntry:
    label: str
    square: LatinSquare
    source: str = ""


def bundled_catalog() -> list[CatalogEntry]:
    text = resources.files("latin_chroma").joinpath("data", BUNDLED).read_text()
    return [CatalogEntry(label, L, BUNDLED) for label, L in parse_catalog(text)]


def load_catalog(path) -> list[CatalogEntry]:
    """A catalog file, or every ``*.txt`` file of a directory in name order."""
    path = Path(path)
    files = sorted(path.glob("*.txt")) if path.is_dir() else [path]
    out = []
    for f in files:
        for i, (label, L) in enumerate(parse_catalog(f.read_text())):
            out.append(CatalogEntry(label or f"{f.stem}#{i}", L, str(f)))
    return out
