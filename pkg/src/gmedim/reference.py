"""Loader for the embedded published reference values.

The values live in ``data/reference_values.json`` together with provenance
notes; see that file for the dual-valued cell and the markers used for
cells that were never published.
"""

from __future__ import annotations

import json
from functools import lru_cache
from importlib import resources
from typing import Any, Dict

__all__ = ["TABLE_IDS", "load_reference", "reference_table", "reference_version"]

TABLE_IDS = ("table1", "table2", "sm8", "sm9")


@lru_cache(maxsize=1)
def load_reference() -> Dict[str, Any]:
    """Parsed reference payload; cached, treat as read-only."""
    text = (
        resources.files("gmedim").joinpath("data/reference_values.json").read_text("utf-8")
    )
    data = json.loads(text)
    missing = [tid for tid in TABLE_IDS if tid not in data.get("tables", {})]
    if missing:
        raise RuntimeError(f"reference data is missing tables: {missing}")
    return data


def reference_version() -> int:
    return int(load_reference()["version"])


def reference_table(table_id: str) -> Dict[str, Any]:
    if table_id not in TABLE_IDS:
        raise ValueError(f"unknown table id {table_id!r}; valid ids: {', '.join(TABLE_IDS)}")
    return load_reference()["tables"][table_id]
