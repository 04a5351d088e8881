"""Arity-changing constructions: iterating an n-ary operation, reducing
arity with fixed constants, the two mixed modes, and the compensation
counts that bring the arity back to n.

Arity bookkeeping (lmu = number of iterations, nc = number of constants):

    iterate         n' = lmu*(n - 1) + 1
    reduce          n' = n - nc            (nc <= n - 2)
    iterate-reduce  n' = lmu*(n - 1) - nc + 1
    reduce-iterate  n' = lmu*(n - 1 - nc) + 1

Mixed modes run literally as two phases; in particular iterate-reduce
materialises the intermediate high-arity table first.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .core import (
    PolyadicOperation,
    PolyadicSystem,
    check_budget,
    evaluate,
    evaluate_iterated,
    iterated_length,
)

_MODES = ("iterate", "reduce", "iterate-reduce", "reduce-iterate")


def predict_arity(
    n: int, mode: str, lmu: int | None = None, nc: int | None = None
) -> int:
    if mode not in _MODES:
        raise ValueError(f"unknown mode {mode!r}")
    if "iterate" in mode and (lmu is None or lmu < 1):
        raise ValueError("iterating modes need lmu >= 1")
    if "reduce" in mode and (nc is None or nc < 0):
        raise ValueError("reducing modes need nc >= 0")
    if mode == "iterate":
        result = iterated_length(n, lmu)
    elif mode == "reduce":
        if nc > n - 2:
            raise ValueError(f"nc={nc} leaves arity below 2 (need nc <= {n - 2})")
        result = n - nc
    elif mode == "iterate-reduce":
        result = lmu * (n - 1) - nc + 1
    else:  # reduce-iterate
        if nc > n - 2:
            raise ValueError(f"nc={nc} leaves arity below 2 (need nc <= {n - 2})")
        result = lmu * (n - 1 - nc) + 1
    if result < 2:
        raise ValueError(f"resulting arity {result} is below 2")
    return result


def compensation_constants(n: int, lmu: int, direction: str) -> int:
    """Number of constants nc0 that restores the original arity n.

    direction="iterate-reduce": nc0 = (n-1)(lmu-1), always integral.
    direction="reduce-iterate": nc0 = (n-1)(lmu-1)/lmu, which exists only
    when lmu divides n-1 (and needs lmu <= n-1 so the reduced arity stays
    >= 2); otherwise the arity cannot be compensated and this raises.
    """
    if n < 2 or lmu < 1:
        raise ValueError("need n >= 2 and lmu >= 1")
    if direction == "iterate-reduce":
        return (n - 1) * (lmu - 1)
    if direction == "reduce-iterate":
        if lmu > n - 1:
            raise ValueError(f"lmu={lmu} exceeds n-1={n - 1}; no compensation")
        num = (n - 1) * (lmu - 1)
        if num % lmu:
            raise ValueError(
                f"(n-1)(lmu-1) = {num} is not divisible by lmu = {lmu}; "
                "no integral compensation"
            )
        return num // lmu
    raise ValueError(f"unknown direction {direction!r}")


@dataclass(frozen=True)
class ArityPlan:
    """A recipe for building a new operation from an existing one.

    constants: (position, value) pairs.  Positions index the argument list
    of the operation being reduced — the source op for "reduce" and
    "reduce-iterate", the intermediate iterated op for "iterate-reduce".
    """

    mode: str
    lmu: int | None = None
    constants: tuple[tuple[int, int], ...] = ()
    placement: object = "right"

    def __post_init__(self):
        if self.mode not in _MODES:
            raise ValueError(f"unknown mode {self.mode!r}")
        positions = [p for p, _ in self.constants]
        if len(set(positions)) != len(positions):
            raise ValueError("constant positions must be distinct")

    def result_arity(self, n: int) -> int:
        return predict_arity(n, self.mode, self.lmu, len(self.constants))


def _iterate(
    op: PolyadicOperation, lmu: int, placement, budget: int | None
) -> PolyadicOperation:
    n_out = iterated_length(op.arity, lmu)
    m = op.size
    check_budget(m**n_out * lmu, budget, "iterated table")
    table = tuple(
        evaluate_iterated(op, polyad, placement)
        for polyad in itertools.product(range(m), repeat=n_out)
    )
    return PolyadicOperation(n_out, op.carrier, table)


def _reduce(
    op: PolyadicOperation,
    constants: tuple[tuple[int, int], ...],
    budget: int | None,
) -> PolyadicOperation:
    n, m = op.arity, op.size
    fixed = dict(constants)
    for pos, val in constants:
        if not 0 <= pos < n:
            raise ValueError(f"constant position {pos} outside 0..{n - 1}")
        if not 0 <= val < m:
            raise ValueError(f"constant value {val} outside carrier")
    n_out = n - len(fixed)
    if n_out < 2:
        raise ValueError("reduction would leave arity below 2")
    free = [i for i in range(n) if i not in fixed]
    check_budget(m**n_out, budget, "reduced table")
    table = []
    args = [0] * n
    for pos, val in fixed.items():
        args[pos] = val
    for polyad in itertools.product(range(m), repeat=n_out):
        for slot, g in zip(free, polyad):
            args[slot] = g
        table.append(evaluate(op, args))
    return PolyadicOperation(n_out, op.carrier, tuple(table))


def apply_plan(
    system: PolyadicSystem, plan: ArityPlan, budget: int | None = None
) -> PolyadicSystem:
    op = system.op
    if plan.mode == "iterate":
        op = _iterate(op, plan.lmu, plan.placement, budget)
    elif plan.mode == "reduce":
        op = _reduce(op, plan.constants, budget)
    elif plan.mode == "iterate-reduce":
        op = _iterate(op, plan.lmu, plan.placement, budget)
        op = _reduce(op, plan.constants, budget)
    else:  # reduce-iterate
        op = _reduce(op, plan.constants, budget)
        op = _iterate(op, plan.lmu, plan.placement, budget)
    return PolyadicSystem(op)


def b_derived_ternary(system: PolyadicSystem, c: int) -> PolyadicSystem:
    """From a binary system, the ternary mu3[g,h,u] = g*(h*(u*c))."""
    op = system.op
    if op.arity != 2:
        raise ValueError("b_derived_ternary needs a binary operation")
    m = op.size
    if not 0 <= c < m:
        raise ValueError("c outside carrier")
    table = tuple(
        evaluate(op, (g, evaluate(op, (h, evaluate(op, (u, c))))))
        for g, h, u in itertools.product(range(m), repeat=3)
    )
    return PolyadicSystem(PolyadicOperation(3, op.carrier, table))
