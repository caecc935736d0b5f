"""Size limits for the exhaustive routines, overridable from the environment."""

from __future__ import annotations

import os


class SizeLimitExceeded(RuntimeError):
    """An exact routine refused an instance above its configured size limit."""


def _env_int(name: str, default: int) -> int:
    raw = os.environ.get(name)
    if raw is None or raw == "":
        return default
    try:
        return int(raw)
    except ValueError:
        raise ValueError(f"{name} must be an integer, got {raw!r}") from None


def exact_negativeness_limit() -> int:
    return _env_int("SIGNEDCOVER_EXACT_N", 20)


def cut_enumeration_limit() -> int:
    return _env_int("SIGNEDCOVER_CUT_N", 14)


def circuit_enumeration_limit() -> int:
    return _env_int("SIGNEDCOVER_CIRCUIT_E", 24)


def unsigned_oracle_limit() -> int:
    return _env_int("SIGNEDCOVER_UNSIGNED_E", 18)


def signed_oracle_limit() -> int:
    return _env_int("SIGNEDCOVER_ORACLE_E", 14)


def search_node_budget() -> int:
    return _env_int("SIGNEDCOVER_NODE_BUDGET", 2_000_000)
