"""polyadika: exact computations with finite polyadic (n-ary) systems."""

from .core import (
    BudgetExceeded,
    Carrier,
    FormatError,
    PolyadicOperation,
    PolyadicSystem,
    evaluate,
    evaluate_iterated,
    iterated_length,
    load_system,
    op_from_callable,
    save_system,
    system_from_callable,
)

__all__ = [
    "BudgetExceeded",
    "Carrier",
    "FormatError",
    "PolyadicOperation",
    "PolyadicSystem",
    "evaluate",
    "evaluate_iterated",
    "iterated_length",
    "load_system",
    "op_from_callable",
    "save_system",
    "system_from_callable",
]
