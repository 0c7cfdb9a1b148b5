"""Closed-form thresholds steering branch selection and the constructive chain.

All values are exact unbounded integers by default.  Passing ``cap`` clamps
every value down to ``min(value, cap)``; the only legitimate use is forcing
the cycle-enumeration branch of the solver on desk-scale inputs, where the
exact values are astronomically large.  Clamping never breaks correctness:
the ``|F| <= f4`` branch is exhaustive, and the other branch re-verifies
everything it returns.
"""

from __future__ import annotations

from dataclasses import dataclass


def _clamp(value: int, cap: int | None) -> int:
    return value if cap is None else min(value, cap)


def f1(k: int, length: int, cap: int | None = None) -> int:
    """Path-family size forcing k edge-disjoint paths: 2 * (k * l^3)^(l-1)."""
    if k < 1 or length < 1:
        raise ValueError("f1 requires k >= 1 and length >= 1")
    return _clamp(2 * (k * length**3) ** (length - 1), cap)


def f2(t: int, p: int, cap: int | None = None) -> int:
    """Edge-disjoint cycle count forcing an orderable length-p sequence:
    27 * (t+2) * (3t+1) * p^4."""
    if t < 1 or p < 1:
        raise ValueError("f2 requires t >= 1 and p >= 1")
    return _clamp(27 * (t + 2) * (3 * t + 1) * p**4, cap)


def f3(t: int, k: int, cap: int | None = None) -> int:
    """Sequence length from which k removable edges can be selected:
    k * (t+2)^(k-1)."""
    if t < 1 or k < 1:
        raise ValueError("f3 requires t >= 1 and k >= 1")
    return _clamp(k * (t + 2) ** (k - 1), cap)


def f4(t: int, k: int, cap: int | None = None) -> int:
    """Candidate-set size below which plain subset enumeration is used."""
    p = f3(t, k)
    big_n = f2(t, p)
    return _clamp(big_n * (t + 2) ** 2 * f1(k + t + 1, t + 1), cap)


@dataclass(frozen=True)
class ThresholdTable:
    """All thresholds for one (t, k), evaluated once.

    ``sequence_length`` is the cycle-sequence length p = f3(t, k);
    ``disjoint_target`` is N = f2(t, p); ``candidate_limit`` is f4(t, k);
    ``path_family_threshold`` is f1(k+t+1, t+1); ``cycle_budget`` is the
    number of short cycles the enumeration branch collects,
    N * (t+2) * f1(k+t+1, t+1).
    """

    t: int
    k: int
    cap: int | None
    sequence_length: int
    disjoint_target: int
    path_family_threshold: int
    candidate_limit: int
    cycle_budget: int


def thresholds(t: int, k: int, cap: int | None = None) -> ThresholdTable:
    """Exact threshold table for parameters (t, k); see module docstring for cap."""
    if t < 1 or k < 1:
        raise ValueError("thresholds requires t >= 1 and k >= 1")
    p = f3(t, k, cap)
    big_n = f2(t, p, cap)
    fam = f1(k + t + 1, t + 1, cap)
    return ThresholdTable(
        t=t,
        k=k,
        cap=cap,
        sequence_length=p,
        disjoint_target=big_n,
        path_family_threshold=fam,
        candidate_limit=_clamp(big_n * (t + 2) ** 2 * fam, cap),
        cycle_budget=_clamp(big_n * (t + 2) * fam, cap),
    )
