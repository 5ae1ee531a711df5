"""Built-in algebra catalog.

Every ``*.json`` file in this directory is an algebra document;
``golden.json`` holds expected invariants for the shipped entries. Set
``LIEWEIGHTS_CATALOG_DIR`` to add documents from another directory (entries
there replace built-ins of the same name).
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass
from pathlib import Path

from ..document import AlgebraDocument, load

CATALOG_DIR = Path(__file__).parent
ENV_VAR = "LIEWEIGHTS_CATALOG_DIR"
ALIASES = {"h3": "heisenberg3", "h5": "heisenberg5", "L6": "L6-paper-example"}


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    path: Path
    document: AlgebraDocument
    expected: dict | None


def _scan(directory: Path) -> dict[str, Path]:
    out = {}
    for p in sorted(directory.glob("*.json")):
        if p.name == "golden.json":
            continue
        out[p.stem] = p
    return out


def entries() -> dict[str, CatalogEntry]:
    golden = json.loads((CATALOG_DIR / "golden.json").read_text(encoding="utf-8"))
    paths = _scan(CATALOG_DIR)
    extra = os.environ.get(ENV_VAR)
    if extra:
        paths.update(_scan(Path(extra)))
    out = {}
    for stem in sorted(paths):
        doc = load(paths[stem])
        builtin = paths[stem].parent == CATALOG_DIR
        out[doc.name] = CatalogEntry(doc.name, paths[stem], doc, golden.get(doc.name) if builtin else None)
    return dict(sorted(out.items()))


def names() -> list[str]:
    return list(entries())


def get(name: str) -> CatalogEntry:
    es = entries()
    name = name if name in es else ALIASES.get(name, name)
    if name not in es:
        raise KeyError(f"no catalog entry named {name!r}")
    return es[name]
