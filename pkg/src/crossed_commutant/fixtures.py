"""Built-in worked instances covering the two-point refinement families.

Seven small instances, reachable from the command line by name, exercise
every distinct way two added jump points can behave: both points in one
invariant interval (four dynamics on its three subintervals and two points)
and one point in each of two intervals (the intervals fixed or swapped).
"""
from __future__ import annotations

import copy
from typing import Any

_ONE_INTERVAL = {
    "type": "real_line",
    "jump_points": [],
    "additions": {"0": ["0", "1"]},
    "base_perm": [0],
}

_TWO_INTERVALS = {
    "type": "real_line",
    "jump_points": ["0"],
    "additions": {"0": ["-1"], "1": ["1"]},
    "base_perm": [0, 1, 2],
}

BUILTIN_CASES: dict[str, dict[str, Any]] = {
    # two points in one interval; refined pieces: I_0^1, I_0^2, I_0^3, {s_1}, {s_2}
    "one-interval-identity": {**_ONE_INTERVAL, "refined_perm": [0, 1, 2, 3, 4]},
    "one-interval-swap": {**_ONE_INTERVAL, "refined_perm": [1, 0, 2, 3, 4]},
    "one-interval-3cycle": {**_ONE_INTERVAL, "refined_perm": [1, 2, 0, 3, 4]},
    "one-interval-3cycle-pointswap": {**_ONE_INTERVAL, "refined_perm": [1, 2, 0, 4, 3]},
    # one point in each of two intervals; refined pieces:
    # I_0^1, I_0^2, I_1^1, I_1^2, {s_1}, {t_1}, {s_2}
    "two-intervals-identity": {**_TWO_INTERVALS, "refined_perm": [0, 1, 2, 3, 4, 5, 6]},
    "two-intervals-one-swap": {**_TWO_INTERVALS, "refined_perm": [1, 0, 2, 3, 4, 5, 6]},
    "two-intervals-crossed": {
        **_TWO_INTERVALS,
        "base_perm": [1, 0, 2],
        "refined_perm": [2, 3, 1, 0, 6, 5, 4],
    },
}

DESCRIPTIONS: dict[str, str] = {
    "one-interval-identity": "two points in one fixed interval, every child fixed",
    "one-interval-swap": "first two subintervals swapped, the rest fixed",
    "one-interval-3cycle": "the three subintervals cycled, the two points fixed",
    "one-interval-3cycle-pointswap": "subintervals cycled and the two points swapped",
    "two-intervals-identity": "one point in each of two fixed intervals, children fixed",
    "two-intervals-one-swap": "subintervals of the first interval swapped, rest fixed",
    "two-intervals-crossed": "the two intervals swapped, subintervals in one 4-orbit",
}


def builtin_names() -> tuple[str, ...]:
    return tuple(BUILTIN_CASES)


def builtin_instance(name: str) -> dict[str, Any]:
    if name not in BUILTIN_CASES:
        raise KeyError(
            f"unknown case {name!r}; available: {', '.join(BUILTIN_CASES)}"
        )
    return copy.deepcopy(BUILTIN_CASES[name])
