"""Property checks for polyadic systems: associativity, distinguished
elements, mediality, commutativity variants, cancellativity/solvability,
classification, and nilpotency.

Every negative verdict carries a witness that re-evaluates: re-running the
named operation on the witness tuple reproduces the violation.  Scans run
in lexicographic order, so reported witnesses are the lexicographically
smallest ones.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .core import PolyadicSystem, check_budget, evaluate, evaluate_iterated


@dataclass(frozen=True)
class Check:
    ok: bool
    witness: tuple | None = None

    def __bool__(self) -> bool:
        return self.ok


def is_totally_associative(system: PolyadicSystem, budget: int | None = None) -> Check:
    """All n placements of an inner mu agree on every (2n-1)-tuple.

    Witness: (polyad, placement_i, value_i, placement_j, value_j).
    """
    op = system.op
    n, m = op.arity, op.size
    check_budget(m ** (2 * n - 1) * n, budget, "associativity scan")
    for polyad in itertools.product(range(m), repeat=2 * n - 1):
        base = None
        for i in range(n):
            inner = evaluate(op, polyad[i : i + n])
            val = evaluate(op, polyad[:i] + (inner,) + polyad[i + n :])
            if base is None:
                base = val
            elif val != base:
                return Check(False, (polyad, 0, base, i, val))
    return Check(True)


def _insertions(polyad: tuple[int, ...], g: int, placements: str):
    """Argument tuples with g inserted into polyad (order preserved)."""
    n = len(polyad) + 1
    positions = range(n) if placements == "all" else (0, n - 1)
    for i in positions:
        yield polyad[:i] + (g,) + polyad[i:]


def find_zero(system: PolyadicSystem, placements: str = "all") -> int | None:
    """The absorbing element, if any (absorbs at every place)."""
    op = system.op
    n, m = op.arity, op.size
    for z in range(m):
        if all(
            evaluate(op, args) == z
            for rest in itertools.product(range(m), repeat=n - 1)
            for args in _insertions(rest, z, placements)
        ):
            return z
    return None


def find_identities(system: PolyadicSystem, placements: str = "all") -> list[int]:
    """Elements e with mu[e,...,e,g,e,...,e] = g for g at every position
    (or just the end positions under placements="ends")."""
    op = system.op
    n, m = op.arity, op.size
    out = []
    for e in range(m):
        rest = (e,) * (n - 1)
        if all(
            evaluate(op, args) == g
            for g in range(m)
            for args in _insertions(rest, g, placements)
        ):
            out.append(e)
    return out


def neutral_polyads(
    system: PolyadicSystem, convention: str = "ends"
) -> list[tuple[int, ...]]:
    """(n-1)-polyads t neutral for every g.

    convention="ends": mu[g, t] = mu[t, g] = g (the polyad stays contiguous,
    matching Doernte-relation usage).  convention="split": g is inserted at
    each of the n positions with t's order preserved — the strict variant.
    """
    if convention not in ("ends", "split"):
        raise ValueError("convention must be 'ends' or 'split'")
    op = system.op
    n, m = op.arity, op.size
    placements = "all" if convention == "split" else "ends"
    out = []
    for t in itertools.product(range(m), repeat=n - 1):
        if all(
            evaluate(op, args) == g
            for g in range(m)
            for args in _insertions(t, g, placements)
        ):
            out.append(t)
    return out


def is_medial(system: PolyadicSystem, budget: int | None = None) -> Check:
    """Matrix interchange identity: mu applied to the rows then the results
    equals mu applied to the columns then the results, for every n x n
    matrix of elements.  Witness: (matrix, row_value, column_value)."""
    op = system.op
    n, m = op.arity, op.size
    check_budget(m ** (n * n), budget, "mediality scan")
    for flat in itertools.product(range(m), repeat=n * n):
        rows = [flat[i * n : (i + 1) * n] for i in range(n)]
        by_rows = evaluate(op, [evaluate(op, r) for r in rows])
        cols = [flat[i::n] for i in range(n)]
        by_cols = evaluate(op, [evaluate(op, c) for c in cols])
        if by_rows != by_cols:
            return Check(False, (flat, by_rows, by_cols))
    return Check(True)


def sigma_commutativity(system: PolyadicSystem, sigma: tuple[int, ...]) -> Check:
    """mu[g] = mu[g . sigma] for all n-tuples; sigma permutes positions
    (entry i says which original position feeds slot i).
    Witness: (polyad, value, permuted_value)."""
    op = system.op
    n, m = op.arity, op.size
    if sorted(sigma) != list(range(n)):
        raise ValueError("sigma must be a permutation of 0..n-1")
    for polyad in itertools.product(range(m), repeat=n):
        permuted = tuple(polyad[sigma[i]] for i in range(n))
        a, b = evaluate(op, polyad), evaluate(op, permuted)
        if a != b:
            return Check(False, (polyad, a, b))
    return Check(True)


def is_semicommutative(system: PolyadicSystem) -> Check:
    """Exchange of the extreme arguments: mu[g, t, h] = mu[h, t, g]."""
    n = system.arity
    swap = (n - 1,) + tuple(range(1, n - 1)) + (0,)
    return sigma_commutativity(system, swap)


def is_commutative(system: PolyadicSystem) -> Check:
    """Invariance under every permutation (equivalently: the value depends
    only on the argument multiset)."""
    op = system.op
    n, m = op.arity, op.size
    for polyad in itertools.product(range(m), repeat=n):
        canon = tuple(sorted(polyad))
        a, b = evaluate(op, polyad), evaluate(op, canon)
        if a != b:
            return Check(False, (polyad, a, b))
    return Check(True)


def cancellative_places(system: PolyadicSystem) -> list[Check]:
    """Per place i: g -> mu[..., g at i, ...] injective for all contexts.
    Witness: (context, place, g, g', value)."""
    op = system.op
    n, m = op.arity, op.size
    out = []
    for place in range(n):
        verdict: Check = Check(True)
        for rest in itertools.product(range(m), repeat=n - 1):
            seen: dict[int, int] = {}
            for g in range(m):
                args = rest[:place] + (g,) + rest[place:]
                val = evaluate(op, args)
                if val in seen:
                    verdict = Check(False, (rest, place, seen[val], g, val))
                    break
                seen[val] = g
            if not verdict.ok:
                break
        out.append(verdict)
    return out


@dataclass(frozen=True)
class Solvability:
    exists: bool
    unique: bool
    witness: tuple | None = None


def solvable_places(system: PolyadicSystem) -> list[Solvability]:
    """Per place i: existence and uniqueness of h with
    mu[t with h at i] = u, reported separately."""
    op = system.op
    n, m = op.arity, op.size
    out = []
    for place in range(n):
        exists, unique, witness = True, True, None
        for rest in itertools.product(range(m), repeat=n - 1):
            hits: dict[int, list[int]] = {u: [] for u in range(m)}
            for h in range(m):
                args = rest[:place] + (h,) + rest[place:]
                hits[evaluate(op, args)].append(h)
            for u in range(m):
                hs = hits[u]
                if not hs and exists:
                    exists = False
                    witness = witness or (rest, place, u, ())
                if len(hs) > 1 and unique:
                    unique = False
                    witness = witness or (rest, place, u, tuple(hs))
            if not exists and not unique:
                break
        out.append(Solvability(exists, unique, witness))
    return out


def is_quasigroup(system: PolyadicSystem) -> bool:
    return all(s.exists and s.unique for s in solvable_places(system))


def classify(system: PolyadicSystem) -> str:
    """Most specific of: group, monoid, quasigroup, semigroup, n-ary system."""
    assoc = is_totally_associative(system).ok
    quasi = is_quasigroup(system)
    if assoc and quasi:
        return "group"
    if assoc and find_identities(system):
        return "monoid"
    if assoc:
        return "semigroup"
    if quasi:
        return "quasigroup"
    return "n-ary system"


# ---------------------------------------------------------------------------
# Nilpotency.  A system with zero z is lmu-nilpotent when EVERY long product
# built from lmu multiplications equals z, for every placement tree.  The
# right-nested-only reading would not force associativity of 2-nilpotent
# systems, so placements are quantified over all trees; the reachable-value
# sets compose exactly because distinct subtrees read disjoint arguments.


def _value_sets(system: PolyadicSystem, up_to: int) -> list[set[int]]:
    op = system.op
    n, m = op.arity, op.size
    leaves = set(range(m))
    sets: list[set[int]] = [leaves]  # sets[j] = values of j-multiplication trees
    for level in range(1, up_to + 1):
        vals: set[int] = set()
        for split in _compositions(level - 1, n):
            pools = [sets[j] if j > 0 else leaves for j in split]
            for args in itertools.product(*pools):
                vals.add(evaluate(op, args))
        sets.append(vals)
    return sets


def _compositions(total: int, parts: int):
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def is_lmu_nilpotent(system: PolyadicSystem, lmu: int) -> bool:
    z = find_zero(system)
    if z is None:
        return False
    return _value_sets(system, lmu)[lmu] == {z}


def nilpotency_index(system: PolyadicSystem, bound: int = 8) -> int | None:
    """Smallest lmu with all lmu-multiplication long products equal to the
    zero, scanning lmu <= bound; None when there is no zero or no such lmu."""
    z = find_zero(system)
    if z is None:
        return None
    sets = _value_sets(system, bound)
    for lmu in range(1, bound + 1):
        if sets[lmu] == {z}:
            return lmu
    return None


# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PropertyReport:
    arity: int
    size: int
    associative: Check
    zero: int | None
    identities: tuple[int, ...]
    medial: Check
    semicommutative: Check
    commutative: Check
    cancellative: tuple[Check, ...]
    solvable: tuple[Solvability, ...]
    quasigroup: bool
    kind: str
    nilpotency: int | None
    neutral_ends: tuple[tuple[int, ...], ...] = field(default=())
    neutral_split: tuple[tuple[int, ...], ...] = field(default=())


def full_report(
    system: PolyadicSystem,
    budget: int | None = None,
    with_neutral: bool = True,
) -> PropertyReport:
    solvable = tuple(solvable_places(system))
    assoc = is_totally_associative(system, budget)
    quasi = all(s.exists and s.unique for s in solvable)
    identities = tuple(find_identities(system))
    if assoc.ok and quasi:
        kind = "group"
    elif assoc.ok and identities:
        kind = "monoid"
    elif assoc.ok:
        kind = "semigroup"
    elif quasi:
        kind = "quasigroup"
    else:
        kind = "n-ary system"
    return PropertyReport(
        arity=system.arity,
        size=system.size,
        associative=assoc,
        zero=find_zero(system),
        identities=identities,
        medial=is_medial(system, budget),
        semicommutative=is_semicommutative(system),
        commutative=is_commutative(system),
        cancellative=tuple(cancellative_places(system)),
        solvable=solvable,
        quasigroup=quasi,
        kind=kind,
        nilpotency=nilpotency_index(system),
        neutral_ends=tuple(neutral_polyads(system, "ends")) if with_neutral else (),
        neutral_split=tuple(neutral_polyads(system, "split")) if with_neutral else (),
    )
