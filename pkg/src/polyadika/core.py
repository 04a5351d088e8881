"""Core types for finite polyadic operations.

An n-ary operation mu_n on a finite carrier {0, ..., m-1} is stored as a
dense Cayley table: a flat tuple of m**n element indices in lexicographic
order with the *first* argument most significant, so the polyad
(g1, ..., gn) lives at flat index g1*m**(n-1) + g2*m**(n-2) + ... + gn.

Arities 0 and 1 are allowed at the operation level (a 0-ary operation is a
distinguished single-entry table, which is not the same thing as a bare
constant); a PolyadicSystem requires a chief operation of arity >= 2.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Callable, Iterator, Sequence

DEFAULT_BUDGET = 10**8


class BudgetExceeded(Exception):
    """A scan would exceed the probe budget; raised before any work starts."""

    def __init__(self, needed: int, budget: int, what: str = "scan"):
        super().__init__(
            f"{what} needs {needed} probes, over the budget of {budget}"
        )
        self.needed = needed
        self.budget = budget


class FormatError(ValueError):
    """Malformed polyop/polymap/polyqvr/polytns input."""


def check_budget(needed: int, budget: int | None = None, what: str = "scan") -> None:
    limit = DEFAULT_BUDGET if budget is None else budget
    if needed > limit:
        raise BudgetExceeded(needed, limit, what)


def lex_index(polyad: Sequence[int], size: int) -> int:
    """Flat table index of a polyad (first argument most significant)."""
    idx = 0
    for g in polyad:
        idx = idx * size + g
    return idx


def lex_polyad(index: int, size: int, arity: int) -> tuple[int, ...]:
    """Inverse of lex_index."""
    out = [0] * arity
    for pos in range(arity - 1, -1, -1):
        index, out[pos] = divmod(index, size)
    return tuple(out)


def all_polyads(size: int, length: int) -> Iterator[tuple[int, ...]]:
    """All length-tuples over {0..size-1} in lexicographic order."""
    return itertools.product(range(size), repeat=length)


@dataclass(frozen=True)
class Carrier:
    """Finite carrier {0, ..., size-1} with optional distinct labels."""

    size: int
    labels: tuple[str, ...] | None = None

    def __post_init__(self):
        if self.size < 1:
            raise ValueError("carrier must have at least one element")
        if self.labels is not None:
            if len(self.labels) != self.size:
                raise ValueError("label count must equal carrier size")
            if len(set(self.labels)) != self.size:
                raise ValueError("labels must be distinct")

    def label(self, g: int) -> str:
        return self.labels[g] if self.labels else str(g)


@dataclass(frozen=True)
class PolyadicOperation:
    """An arity-ary operation as a dense lexicographic Cayley table."""

    arity: int
    carrier: Carrier
    table: tuple[int, ...]

    def __post_init__(self):
        if self.arity < 0:
            raise ValueError("arity must be >= 0")
        expected = self.carrier.size**self.arity
        if len(self.table) != expected:
            raise ValueError(
                f"table for arity {self.arity}, size {self.carrier.size}: "
                f"expected {expected} entries, got {len(self.table)}"
            )
        m = self.carrier.size
        if any(not (0 <= v < m) for v in self.table):
            raise ValueError("table entries must be element indices")

    @property
    def size(self) -> int:
        return self.carrier.size

    def __call__(self, *polyad: int) -> int:
        return evaluate(self, polyad)


def op_from_callable(
    arity: int,
    size: int,
    fn: Callable[..., int],
    labels: Sequence[str] | None = None,
) -> PolyadicOperation:
    """Tabulate fn over all polyads; fn receives arity separate arguments."""
    table = tuple(fn(*p) for p in all_polyads(size, arity))
    carrier = Carrier(size, tuple(labels) if labels is not None else None)
    return PolyadicOperation(arity, carrier, table)


def evaluate(op: PolyadicOperation, polyad: Sequence[int]) -> int:
    """Apply op once to a polyad of exactly op.arity elements."""
    if len(polyad) != op.arity:
        raise ValueError(f"expected {op.arity} arguments, got {len(polyad)}")
    return op.table[lex_index(polyad, op.size)]


def iterated_length(arity: int, lmu: int) -> int:
    """Argument count of the lmu-fold long product: lmu*(n-1) + 1."""
    if lmu < 1:
        raise ValueError("lmu must be >= 1")
    return lmu * (arity - 1) + 1


# A placement tree is a nested tuple whose leaves are distinct polyad
# positions 0..L-1; every internal node has exactly op.arity children.
PlacementTree = int | tuple


def evaluate_iterated(
    op: PolyadicOperation,
    polyad: Sequence[int],
    placement: str | PlacementTree = "right",
) -> int:
    """Long product of a polyad of length lmu*(n-1)+1.

    placement: "right" nests the inner product in the last slot (the
    displayed long-product form), "left" in the first slot, or an explicit
    placement tree of polyad positions.
    """
    n = op.arity
    if n < 2:
        raise ValueError("iterated evaluation needs arity >= 2")
    L = len(polyad)
    if (L - 1) % (n - 1) != 0 or L < n:
        raise ValueError(
            f"polyad length {L} is not lmu*({n}-1)+1 for any lmu >= 1"
        )
    if placement == "right":
        args = list(polyad)
        while len(args) > 1:
            tail = args[-n:]
            args[-n:] = [evaluate(op, tail)]
        return args[0]
    if placement == "left":
        acc = evaluate(op, polyad[:n])
        pos = n
        while pos < L:
            acc = evaluate(op, (acc, *polyad[pos : pos + n - 1]))
            pos += n - 1
        return acc
    return _evaluate_tree(op, polyad, placement, L)


def _evaluate_tree(
    op: PolyadicOperation, polyad: Sequence[int], tree: PlacementTree, length: int
) -> int:
    seen: set[int] = set()

    def run(node: PlacementTree) -> int:
        if isinstance(node, int):
            if not 0 <= node < length:
                raise ValueError(f"leaf position {node} out of range")
            if node in seen:
                raise ValueError(f"leaf position {node} used twice")
            seen.add(node)
            return polyad[node]
        if len(node) != op.arity:
            raise ValueError(
                f"tree node has {len(node)} children, expected {op.arity}"
            )
        return evaluate(op, [run(child) for child in node])

    result = run(tree)
    if len(seen) != length:
        raise ValueError("placement tree does not consume the whole polyad")
    return result


@dataclass(frozen=True)
class PolyadicSystem:
    """A carrier together with one chief operation of arity >= 2.

    Property checks cache their verdicts in _flags (keyed by check name);
    the table itself is immutable.
    """

    op: PolyadicOperation
    _flags: dict = field(default_factory=dict, repr=False, compare=False)

    def __post_init__(self):
        if self.op.arity < 2:
            raise ValueError("a polyadic system needs a chief operation of arity >= 2")

    @property
    def arity(self) -> int:
        return self.op.arity

    @property
    def size(self) -> int:
        return self.op.size

    @property
    def carrier(self) -> Carrier:
        return self.op.carrier

    def evaluate(self, polyad: Sequence[int]) -> int:
        return evaluate(self.op, polyad)

    def evaluate_iterated(
        self, polyad: Sequence[int], placement: str | PlacementTree = "right"
    ) -> int:
        return evaluate_iterated(self.op, polyad, placement)


def system_from_callable(
    arity: int,
    size: int,
    fn: Callable[..., int],
    labels: Sequence[str] | None = None,
) -> PolyadicSystem:
    return PolyadicSystem(op_from_callable(arity, size, fn, labels))


# ---------------------------------------------------------------------------
# polyop serialization
#
#   polyop 1
#   arity 3
#   size 3
#   labels a b c        (optional)
#   0 1 2 ...           (m**n whitespace-separated entries, any line split)
#
# '#' starts a comment anywhere on a line.


def _strip_comments(text: str) -> list[str]:
    lines = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            lines.append(line)
    return lines


def loads_operation(text: str) -> PolyadicOperation:
    lines = _strip_comments(text)
    if not lines or lines[0].split() != ["polyop", "1"]:
        raise FormatError("missing 'polyop 1' magic line")
    arity = size = None
    labels = None
    body_at = len(lines)
    for i, line in enumerate(lines[1:], start=1):
        words = line.split()
        if words[0] == "arity" and arity is None:
            arity = int(words[1])
        elif words[0] == "size" and size is None:
            size = int(words[1])
        elif words[0] == "labels" and labels is None:
            labels = tuple(words[1:])
        else:
            body_at = i
            break
    if arity is None or size is None:
        raise FormatError("polyop header needs both 'arity' and 'size'")
    entries = []
    for line in lines[body_at:]:
        try:
            entries.extend(int(w) for w in line.split())
        except ValueError as exc:
            raise FormatError(f"bad table entry: {exc}") from None
    expected = size**arity
    if len(entries) != expected:
        raise FormatError(
            f"expected {expected} entries, got {len(entries)}"
        )
    try:
        return PolyadicOperation(arity, Carrier(size, labels), tuple(entries))
    except ValueError as exc:
        raise FormatError(str(exc)) from None


def dumps_operation(op: PolyadicOperation, comment: str | None = None) -> str:
    out = ["polyop 1"]
    if comment:
        for line in comment.splitlines():
            out.append(f"# {line}")
    out.append(f"arity {op.arity}")
    out.append(f"size {op.size}")
    if op.carrier.labels:
        out.append("labels " + " ".join(op.carrier.labels))
    row = max(op.size, 1)
    for start in range(0, len(op.table), row):
        out.append(" ".join(str(v) for v in op.table[start : start + row]))
    return "\n".join(out) + "\n"


def load_system(path) -> PolyadicSystem:
    with open(path, encoding="utf-8") as fh:
        return PolyadicSystem(loads_operation(fh.read()))


def save_system(system: PolyadicSystem, path, comment: str | None = None) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps_operation(system.op, comment))


def load_operation(path) -> PolyadicOperation:
    with open(path, encoding="utf-8") as fh:
        return loads_operation(fh.read())


def save_operation(op: PolyadicOperation, path, comment: str | None = None) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps_operation(op, comment))
