"""Associativity quivers: arrangements of (place, column) cells that
describe how a k-place map consumes the arguments of an n-ary product.

A quiver has lmu product rows of n cells each plus lid intact cells;
every one of the k*n' cells (place 1..k, column 1..n') is consumed
exactly once, where n' = (n*lmu + lid)/k is the arity of the induced
operation on k-tuples.  Row r computes component r of the output tuple
as the n-ary product read along its cells; intact cells pass single
slots through as the remaining components.

Universal associativity of the induced operation is a purely
combinatorial matter: expanding any placement composite turns each
output component into a word whose letters are argument slots, each
occurring exactly once (cell consumption is a bijection and composition
preserves that).  Equal words for all placements make the composites
literally identical over every carrier; unequal words are separated by
the free monoid on two generators truncated at length two (assign a and
b to a transposed pair of slots and the identity elsewhere).  So
`is_word_associative` is an exact test, while `is_associative_quiver`
keeps the empirical reading: exhaustive (or sampled) scans of induced
tables over a finite set of test systems.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .core import (
    DEFAULT_BUDGET,
    BudgetExceeded,
    Carrier,
    FormatError,
    PolyadicOperation,
    PolyadicSystem,
    check_budget,
    evaluate,
    lex_index,
    lex_polyad,
)
from .fixtures import derived_from_cyclic, z4_ternary
from .morphisms import HeteroShape
from .properties import Check

Cell = tuple[int, int]  # (place 1..k, column 1..n')


@dataclass(frozen=True)
class Quiver:
    n: int
    k: int
    rows: tuple[tuple[Cell, ...], ...]
    intacts: tuple[Cell, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "rows", tuple(tuple(r) for r in self.rows))
        object.__setattr__(self, "intacts", tuple(self.intacts))
        lmu, lid = len(self.rows), len(self.intacts)
        if self.k != lmu + lid:
            raise ValueError(f"k = {self.k} but lmu + lid = {lmu} + {lid}")
        total = self.n * lmu + lid
        if total % self.k:
            raise ValueError(f"{total} cells do not tile {self.k} columns")
        n_prime = total // self.k
        if not 2 <= n_prime <= self.n:
            raise ValueError(f"induced arity {n_prime} outside 2..{self.n}")
        for row in self.rows:
            if len(row) != self.n:
                raise ValueError(f"row {row} does not have {self.n} cells")
        cells = [c for row in self.rows for c in row] + list(self.intacts)
        expected = {
            (p, c) for p in range(1, self.k + 1) for c in range(1, n_prime + 1)
        }
        if len(cells) != len(set(cells)) or set(cells) != expected:
            raise ValueError("cells must cover each (place, column) exactly once")

    @property
    def lmu(self) -> int:
        return len(self.rows)

    @property
    def lid(self) -> int:
        return len(self.intacts)

    @property
    def n_prime(self) -> int:
        return (self.n * self.lmu + self.lid) // self.k


# -- symbolic (exact) associativity ------------------------------------------


def _apply_words(quiver: Quiver, args) -> tuple:
    """args: n' tuples of k words; returns the k output words."""
    out = []
    for row in quiver.rows:
        word: tuple = ()
        for p, c in row:
            word = word + args[c - 1][p - 1]
        out.append(word)
    for p, c in quiver.intacts:
        out.append(args[c - 1][p - 1])
    return tuple(out)


def is_word_associative(quiver: Quiver) -> bool:
    """Exact universal-associativity test by word comparison.

    True iff the induced operation is totally associative on every system
    whose operation is totally associative: equal words make the placement
    composites identical over any carrier, and for unequal words
    `word_refutation` constructs a separating assignment.
    """
    return word_refutation(quiver) is None


def word_refutation(quiver: Quiver):
    """Constructive counterexample for a word-inassociative quiver.

    Returns (placement, component, args) such that evaluating the induced
    operation of `truncated_free_monoid(quiver.n)` on the (2n'-1) argument
    tuples `args` gives different values for the first placement and the
    returned one in the given output component; None when the quiver is
    word-associative.

    Construction: compare the symbolic words of the two placements.  If
    some slot appears in one word only, sending it to the generator `a`
    (index 1) and everything else to `e` (index 0) separates the values.
    Otherwise the words list the same slots in different orders, so a pair
    of slots appears transposed; sending them to `a` and `b` (indices 1, 2)
    gives the values ab vs ba (indices 4, 5).
    """
    np_, k = quiver.n_prime, quiver.k
    length = 2 * np_ - 1
    leaves = [
        tuple((((j, p),)) for p in range(1, k + 1)) for j in range(length)
    ]
    inner0 = _apply_words(quiver, leaves[:np_])
    base = _apply_words(quiver, [inner0] + leaves[np_:])
    for i in range(1, np_):
        inner = _apply_words(quiver, leaves[i : i + np_])
        composite = _apply_words(quiver, leaves[:i] + [inner] + leaves[i + np_ :])
        for r in range(k):
            w1, w2 = base[r], composite[r]
            if w1 == w2:
                continue
            values = {}
            if set(w1) != set(w2):
                extra = next(iter(set(w1) ^ set(w2)))
                values[extra] = 1
            else:
                t = next(j for j in range(len(w1)) if w1[j] != w2[j])
                values[w1[t]] = 1
                values[w2[t]] = 2
            args = tuple(
                tuple(values.get((j, p), 0) for p in range(1, k + 1))
                for j in range(length)
            )
            return i, r, args
    return None


# -- induced operations -------------------------------------------------------


def _apply_cells(quiver: Quiver, system: PolyadicSystem, args) -> tuple[int, ...]:
    """args: n' tuples over the carrier; returns the output k-tuple."""
    out = []
    for row in quiver.rows:
        out.append(evaluate(system.op, tuple(args[c - 1][p - 1] for p, c in row)))
    for p, c in quiver.intacts:
        out.append(args[c - 1][p - 1])
    return tuple(out)


def induced_tuple_operation(
    quiver: Quiver, system: PolyadicSystem, budget: int | None = None
) -> PolyadicSystem:
    """The n'-ary operation on k-tuples (encoded lexicographically) that the
    quiver induces from an n-ary system."""
    if system.arity != quiver.n:
        raise ValueError(f"system arity {system.arity} != quiver n {quiver.n}")
    m, k, np_ = system.size, quiver.k, quiver.n_prime
    size = m**k
    check_budget(size**np_, budget, "induced table")
    decode = [lex_polyad(a, m, k) for a in range(size)]
    table = tuple(
        lex_index(_apply_cells(quiver, system, [decode[a] for a in enc]), m)
        for enc in itertools.product(range(size), repeat=np_)
    )
    return PolyadicSystem(PolyadicOperation(np_, Carrier(size), table))


def standard_test_systems(n: int, k: int, cap: int = 81) -> list[PolyadicSystem]:
    """Derived cyclic systems (and the shifted ternary Z4 group when n = 3)
    whose induced carriers stay within `cap`."""
    out = [derived_from_cyclic(m, n) for m in (2, 3, 4) if m**k <= cap]
    if n == 3 and 4**k <= cap:
        out.append(z4_ternary())
    return out


def _exhaustive_scan(flat: np.ndarray, size: int, np_: int) -> Check:
    length = 2 * np_ - 1
    total = size**length
    pow_in = size ** np.arange(np_ - 1, -1, -1, dtype=np.int64)
    chunk = 1 << 16
    for start in range(0, total, chunk):
        stop = min(start + chunk, total)
        rem = np.arange(start, stop, dtype=np.int64)
        digits = np.empty((stop - start, length), dtype=np.int64)
        for j in range(length - 1, -1, -1):
            digits[:, j] = rem % size
            rem = rem // size
        values = []
        for i in range(np_):
            inner = flat[digits[:, i : i + np_] @ pow_in]
            cols = np.concatenate(
                [digits[:, :i], inner[:, None], digits[:, i + np_ :]], axis=1
            )
            values.append(flat[cols @ pow_in])
        bad = np.zeros(stop - start, dtype=bool)
        for vals in values[1:]:
            bad |= vals != values[0]
        hits = np.nonzero(bad)[0]
        if hits.size:
            b = int(hits[0])
            polyad = tuple(int(x) for x in digits[b])
            for i in range(1, np_):
                if values[i][b] != values[0][b]:
                    return Check(
                        False, (polyad, 0, int(values[0][b]), i, int(values[i][b]))
                    )
    return Check(True)


def _sampled_scan(
    quiver: Quiver, system: PolyadicSystem, sample: int, seed: int
) -> Check:
    m, np_ = system.size, quiver.n_prime
    length = 2 * np_ - 1
    rng = np.random.default_rng(seed)
    draws = rng.integers(0, m, size=(sample, length, quiver.k))
    for draw in draws:
        args = [tuple(int(x) for x in draw[j]) for j in range(length)]
        base = None
        for i in range(np_):
            inner = _apply_cells(quiver, system, args[i : i + np_])
            composite = _apply_cells(
                quiver, system, args[:i] + [inner] + args[i + np_ :]
            )
            if base is None:
                base = composite
            elif composite != base:
                return Check(False, (tuple(args), 0, base, i, composite))
    return Check(True)


def is_associative_quiver(
    quiver: Quiver,
    systems: list[PolyadicSystem] | None = None,
    budget: int | None = None,
    sample: int | None = None,
    seed: int = 0,
) -> Check:
    """Evidence that the induced operation is totally associative on every
    test system: exhaustive scans when they fit the budget, seeded random
    sampling when `sample` is given.  Witness: (system_index, polyad, i,
    value_i, j, value_j) with encoded polyads for exhaustive scans and
    decoded tuple arguments for sampled ones."""
    if systems is None:
        systems = standard_test_systems(quiver.n, quiver.k)
    np_ = quiver.n_prime
    cap = DEFAULT_BUDGET if budget is None else budget
    for si, system in enumerate(systems):
        if system.arity != quiver.n:
            raise ValueError(f"test system {si} has arity {system.arity}")
        size = system.size**quiver.k
        probes = size ** (2 * np_ - 1) * np_
        if sample is None:
            if probes > cap:
                raise BudgetExceeded(probes, cap, "quiver associativity scan")
            induced = induced_tuple_operation(quiver, system, budget)
            res = _exhaustive_scan(
                np.asarray(induced.op.table, dtype=np.int64), size, np_
            )
        else:
            check_budget(sample * np_, budget, "sampled quiver scan")
            res = _sampled_scan(quiver, system, sample, seed)
        if not res.ok:
            return Check(False, (si,) + res.witness)
    return Check(True)


# -- generation ----------------------------------------------------------------
#
# Families:
#   vertical:     lmu = k, n' = n; row p reads place p straight down, each row
#                 independently forward or reversed (2^k variants).
#   post-like:    k = n-1, n' = n, lid = 0; row p reads place ((p-1)+(c-1)) mod k + 1.
#   non-post:     same shape, displacement d in 2..k-1 instead of 1.
#   intermediate: lid >= 1 and n' < n; candidates are normalized arrangements
#                 (columns nondecreasing along every row, first row starting at
#                 cell (1,1)), kept when they pass the exact word test.  Sound,
#                 not complete: associative non-monotone arrangements exist --
#                 the 4-ary row reading places 1,2,3,1 across columns 1,2,1,2
#                 is word-associative but is not emitted.


def _vertical(n: int, k: int) -> list[Quiver]:
    out = []
    for dirs in itertools.product((False, True), repeat=k):
        rows = []
        for p in range(1, k + 1):
            cells = [(p, c) for c in range(1, n + 1)]
            if dirs[p - 1]:
                cells.reverse()
            rows.append(tuple(cells))
        out.append(Quiver(n, k, tuple(rows)))
    return out


def _displaced(n: int, k: int, d: int) -> Quiver:
    rows = tuple(
        tuple((((p - 1) + d * (c - 1)) % k + 1, c) for c in range(1, n + 1))
        for p in range(1, k + 1)
    )
    return Quiver(n, k, rows)


def _monotone_orderings(cells: tuple[Cell, ...]):
    """All orderings of the cells with nondecreasing columns."""
    by_col: dict[int, list[Cell]] = {}
    for cell in sorted(cells, key=lambda pc: pc[1]):
        by_col.setdefault(cell[1], []).append(cell)
    groups = [by_col[c] for c in sorted(by_col)]
    for perms in itertools.product(*(itertools.permutations(g) for g in groups)):
        yield tuple(cell for grp in perms for cell in grp)


def _row_partitions(cells: tuple[Cell, ...], lmu: int, n: int):
    if lmu == 0:
        if not cells:
            yield ()
        return
    if len(cells) < n:
        return
    for row_cells in itertools.combinations(cells, n):
        rest = tuple(c for c in cells if c not in row_cells)
        for ordering in _monotone_orderings(row_cells):
            for tail in _row_partitions(rest, lmu - 1, n):
                yield (ordering,) + tail


def _intermediate(n: int, n_prime: int, k: int, lmu: int, lid: int) -> list[Quiver]:
    out = []
    cells = [(p, c) for p in range(1, k + 1) for c in range(1, n_prime + 1)]
    for intact in itertools.combinations(cells, lid):
        if (1, 1) in intact:
            continue
        remaining = tuple(c for c in cells if c not in intact)
        for rows in _row_partitions(remaining, lmu, n):
            if rows[0][0] != (1, 1):
                continue
            quiver = Quiver(n, k, rows, intact)
            if is_word_associative(quiver):
                out.append(quiver)
    return out


_FAMILIES = ("vertical", "post-like", "non-post", "intermediate")


def generate_quivers(
    n: int,
    n_prime: int,
    k: int,
    lmu: int,
    lid: int,
    family: str = "all",
) -> list[Quiver]:
    """Associative quivers with the given heteromorphism parameters.

    Families that do not fit the parameters contribute nothing (e.g. the
    vertical family needs lmu = k and n' = n); `family="all"` unions the
    rest.  Everything emitted passes `is_word_associative`.
    """
    if k != lmu + lid:
        raise ValueError(f"k = {k} but lmu + lid = {lmu} + {lid}")
    if k * n_prime != n * lmu + lid:
        raise ValueError(
            f"k*n' = {k * n_prime} does not match n*lmu + lid = {n * lmu + lid}"
        )
    if family == "vertical":
        if lmu == k and n_prime == n:
            return _vertical(n, k)
        return []
    if family == "post-like":
        if lmu == k == n - 1 and n_prime == n:
            return [_displaced(n, k, 1)]
        return []
    if family == "non-post":
        if lmu == k == n - 1 and n_prime == n:
            return [_displaced(n, k, d) for d in range(2, k)]
        return []
    if family == "intermediate":
        if lid >= 1 and n_prime < n:
            return _intermediate(n, n_prime, k, lmu, lid)
        return []
    if family == "all":
        seen: dict[Quiver, None] = {}
        for fam in _FAMILIES:
            for quiver in generate_quivers(n, n_prime, k, lmu, lid, fam):
                seen.setdefault(quiver)
        return list(seen)
    raise ValueError(f"unknown family {family!r}")


def quiver_to_shape(quiver: Quiver) -> HeteroShape:
    """The heteromorphism shape whose equation the quiver encodes: the cell
    (place p, column c) is variable (c-1)*k + (p-1) of the shape."""
    k = quiver.k

    def var(cell: Cell) -> int:
        p, c = cell
        return (c - 1) * k + (p - 1)

    assignment = tuple(var(cell) for row in quiver.rows for cell in row)
    assignment += tuple(var(cell) for cell in quiver.intacts)
    return HeteroShape(
        quiver.n, quiver.n_prime, k, quiver.lmu, quiver.lid, assignment
    )


# -- polyqvr serialization ----------------------------------------------------


def dumps_quiver(quiver: Quiver, comment: str | None = None) -> str:
    lines = ["polyqvr 1"]
    if comment:
        lines += [f"# {line}" for line in comment.splitlines()]
    lines.append(f"n {quiver.n} k {quiver.k}")
    for row in quiver.rows:
        lines.append("row " + " ".join(f"{p}:{c}" for p, c in row))
    if quiver.intacts:
        lines.append("intact " + " ".join(f"{p}:{c}" for p, c in quiver.intacts))
    return "\n".join(lines) + "\n"


def _parse_cells(parts: list[str], line: str) -> tuple[Cell, ...]:
    cells = []
    for part in parts:
        bits = part.split(":")
        if len(bits) != 2 or not all(b.isdigit() for b in bits):
            raise FormatError(f"bad cell {part!r} in line {line!r}")
        cells.append((int(bits[0]), int(bits[1])))
    return tuple(cells)


def loads_quiver(text: str) -> Quiver:
    n = k = None
    rows: list[tuple[Cell, ...]] = []
    intacts: tuple[Cell, ...] = ()
    saw_magic = False
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if not saw_magic:
            if parts != ["polyqvr", "1"]:
                raise FormatError(f"missing 'polyqvr 1' magic line, got {line!r}")
            saw_magic = True
            continue
        if parts[0] == "n":
            if len(parts) != 4 or parts[2] != "k":
                raise FormatError(f"bad parameter line: {line!r}")
            n, k = int(parts[1]), int(parts[3])
        elif parts[0] == "row":
            rows.append(_parse_cells(parts[1:], line))
        elif parts[0] == "intact":
            intacts = _parse_cells(parts[1:], line)
        else:
            raise FormatError(f"unexpected line: {line!r}")
    if not saw_magic:
        raise FormatError("missing 'polyqvr 1' magic line")
    if n is None:
        raise FormatError("missing parameter line 'n <n> k <k>'")
    return Quiver(n, k, tuple(rows), intacts)


def save_quiver(quiver: Quiver, path, comment: str | None = None) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps_quiver(quiver, comment))


def load_quiver(path) -> Quiver:
    with open(path, "r", encoding="utf-8") as fh:
        return loads_quiver(fh.read())
