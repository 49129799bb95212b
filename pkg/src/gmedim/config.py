"""Shared numerical tolerances and size budgets.

Every solver and validation routine reads its thresholds from a `Settings`
record so that a single override file can retune the whole stack.
"""
from __future__ import annotations

from dataclasses import dataclass, fields, replace

__all__ = ["Settings", "DEFAULTS", "load_overrides", "parse_overrides"]


@dataclass(frozen=True)
class Settings:
    # validation tolerances for typed wrappers
    norm_atol: float = 1e-12
    herm_atol: float = 1e-12
    trace_atol: float = 1e-10
    psd_atol: float = 1e-10
    gram_atol: float = 1e-12
    unitary_atol: float = 1e-10

    # solver tolerances
    lp_value_tol: float = 1e-7
    lp_feas_tol: float = 1e-9
    sdp_bisect_width: float = 5e-4
    sdp_feas_tol: float = 1e-6
    sdp_stats_eps: float = 5e-7
    sdp_stats_max_iters: int = 200000

    # size budgets
    max_tensor_dim: int = 2**20
    lp_max_dim: int = 1024
    sdp_max_dim: int = 256


DEFAULTS = Settings()


def parse_overrides(text: str, base: Settings = DEFAULTS) -> Settings:
    """Apply ``key = value`` lines (# comments allowed) on top of `base`."""
    known = {f.name: f.type for f in fields(Settings)}
    updates = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ValueError(f"line {lineno}: expected 'key = value', got {raw!r}")
        key, value = (part.strip() for part in line.split("=", 1))
        if key not in known:
            raise ValueError(f"line {lineno}: unknown setting {key!r}")
        caster = int if "int" in str(known[key]) else float
        try:
            updates[key] = caster(value)
        except ValueError as exc:
            raise ValueError(f"line {lineno}: bad value for {key!r}: {value!r}") from exc
    return replace(base, **updates)


def load_overrides(path: str, base: Settings = DEFAULTS) -> Settings:
    with open(path, "r", encoding="utf-8") as handle:
        return parse_overrides(handle.read(), base)
