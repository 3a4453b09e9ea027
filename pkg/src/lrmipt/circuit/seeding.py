"""Splittable random streams: results never depend on execution order or worker count."""

import hashlib

import numpy as np


def cell_seed(master_seed: int, L: int, alpha: float, p: float, observable: str) -> int:
    """A 64-bit seed for one ``(L, alpha, p, observable)`` cell of a sweep."""
    key = f"{int(master_seed)}|{int(L)}|{float(alpha):.10g}|{float(p):.10g}|{observable}"
    digest = hashlib.sha256(key.encode("utf-8")).digest()
    return int.from_bytes(digest[:8], "little")


def stream(seed: int, index: int) -> np.random.Generator:
    """Independent generator number ``index`` derived from ``seed``."""
    return np.random.default_rng(np.random.SeedSequence(int(seed), spawn_key=(int(index),)))


def trajectory_rng(seed: int, trajectory_index: int) -> np.random.Generator:
    return stream(seed, trajectory_index)
