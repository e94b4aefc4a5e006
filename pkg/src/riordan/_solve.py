"""Greedy solver for triangular systems of series equations.

The unknowns are coefficients; each step names the unknowns allowed to change
and the residual positions that must vanish once they are fixed.  At the
lowest position where an unknown first appears, the residual is affine in it,
so one extra evaluation gives its slope.  Unknowns that do not appear at their
step (resonant degrees) keep their current value.
"""

from __future__ import annotations

from typing import Callable, Sequence


def solve_greedy(residual: Callable[[list], Sequence], values: list,
                 steps: Sequence[tuple[Sequence[int], Sequence[int]]], log: list | None = None):
    """Return ``(values, None)`` on success or ``(values, position)`` at the first inconsistency.

    If ``log`` is given, one ``(position, unknown, action)`` tuple is appended per
    step that had a nonzero residual; ``action`` is ``"solved"`` or ``"inconsistent"``.
    """
    vals = list(values)
    r = residual(vals)
    for idxs, positions in steps:
        if not any(r[p] for p in positions):
            continue
        for i in idxs:
            trial = list(vals)
            trial[i] += 1
            r1 = residual(trial)
            slope = next(((p, r1[p] - r[p]) for p in positions if r1[p] != r[p]), None)
            if slope is None:
                continue
            p, beta = slope
            vals[i] -= r[p] / beta
            r = residual(vals)
            if log is not None:
                log.append((p, i, "solved"))
            break
        for p in positions:
            if r[p]:
                if log is not None:
                    log.append((p, None, "inconsistent"))
                return vals, p
    return vals, None
