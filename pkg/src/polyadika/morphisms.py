"""Maps between polyadic systems: homotopies and homomorphisms, weak
(arity-exchanging) homomorphisms, and k-place heteromorphisms.

A heteromorphism shape records how one application of a k-place map
commutes with the operations:

    Phi(mu_n[..], .., mu_n[..], intact..) = mu'_{n'}[Phi(block 1), ..]

There are k*n' = n*lmu + lid free variables (k1), with k = lmu + lid
(k2), 1 <= lmu <= k (l1), 0 <= lid <= k-1 (l2), lmu <= k <= (n-1)*lmu
(lk) and 2 <= n' <= n (nn).  Variables are numbered by their right-hand
side position: variable v sits in block v // k, place v % k.  The
assignment tuple lists the lmu product rows row-major (n variables each)
followed by the lid intact variables; it must mention every variable
exactly once.  Requiring n' = (n-1)*lmu/k + 1 to be an integer is what
quantises the admissible arities.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Sequence

from .core import (
    FormatError,
    PolyadicSystem,
    check_budget,
    evaluate,
    evaluate_iterated,
    lex_index,
)
from .properties import Check


@dataclass(frozen=True)
class MultiplaceMap:
    """A k-place map between carriers, as a dense table in lexicographic
    argument order (first argument most significant)."""

    places: int
    source_size: int
    target_size: int
    table: tuple[int, ...]

    def __post_init__(self):
        expected = self.source_size**self.places
        if len(self.table) != expected:
            raise ValueError(f"expected {expected} entries, got {len(self.table)}")
        if any(not 0 <= v < self.target_size for v in self.table):
            raise ValueError("table entry outside target carrier")

    def __call__(self, *args: int) -> int:
        if len(args) != self.places:
            raise ValueError(f"expected {self.places} arguments, got {len(args)}")
        return self.table[lex_index(args, self.source_size)]


def map_from_callable(places, source_size, target_size, fn) -> MultiplaceMap:
    table = tuple(
        fn(*args) for args in itertools.product(range(source_size), repeat=places)
    )
    return MultiplaceMap(places, source_size, target_size, table)


# -- homotopies and plain homomorphisms -------------------------------------


def verify_homotopy(
    source: PolyadicSystem,
    target: PolyadicSystem,
    phis: Sequence[Sequence[int]],
) -> Check:
    """phis = (phi_1, .., phi_n, phi_{n+1}) as unary tables:
    phi_{n+1}(mu[g_1..g_n]) = mu'[phi_1 g_1, .., phi_n g_n].
    Witness: (polyad, lhs, rhs)."""
    n, m = source.arity, source.size
    if target.arity != n:
        raise ValueError("homotopy needs equal arities")
    if len(phis) != n + 1:
        raise ValueError(f"expected {n + 1} maps, got {len(phis)}")
    for polyad in itertools.product(range(m), repeat=n):
        lhs = phis[n][source.evaluate(polyad)]
        rhs = target.evaluate(tuple(phis[i][polyad[i]] for i in range(n)))
        if lhs != rhs:
            return Check(False, (polyad, lhs, rhs))
    return Check(True)


def verify_homomorphism(
    source: PolyadicSystem, target: PolyadicSystem, phi: Sequence[int]
) -> Check:
    return verify_homotopy(source, target, [phi] * (source.arity + 1))


def weak_homomorphism_checks(
    source_mu: PolyadicSystem,
    source_nu: PolyadicSystem,
    target_mu: PolyadicSystem,
    target_nu: PolyadicSystem,
    phi: Sequence[int],
) -> tuple[Check, Check]:
    """Arity-exchanging pair on (G; mu_n, nu_{n'}) -> (G'; mu'_{n'}, nu'_n):

    (wh1)  phi(mu_n[g..]) = nu'_n[phi g..]
    (wh2)  phi(nu_{n'}[g..]) = mu'_{n'}[phi g..]

    Both hold: weak homomorphism; exactly one: semi-weak.
    """
    if source_mu.arity != target_nu.arity or source_nu.arity != target_mu.arity:
        raise ValueError("arities must swap between source and target pairs")
    return (
        verify_homomorphism(source_mu, target_nu, phi),
        verify_homomorphism(source_nu, target_mu, phi),
    )


def weak_kind(wh1: Check, wh2: Check) -> str:
    if wh1.ok and wh2.ok:
        return "weak homomorphism"
    if wh1.ok or wh2.ok:
        return "semi-weak homomorphism"
    return "none"


# -- heteromorphism shapes ---------------------------------------------------


@dataclass(frozen=True)
class HeteroShape:
    n: int
    n_prime: int
    k: int
    lmu: int
    lid: int
    assignment: tuple[int, ...]

    def __post_init__(self):
        n, np_, k, lmu, lid = self.n, self.n_prime, self.k, self.lmu, self.lid
        if k * np_ != n * lmu + lid:
            raise ValueError(f"(k1) fails: {k}*{np_} != {n}*{lmu} + {lid}")
        if k != lmu + lid:
            raise ValueError(f"(k2) fails: {k} != {lmu} + {lid}")
        if not 1 <= lmu <= k:
            raise ValueError(f"(l1) fails: lmu={lmu}, k={k}")
        if not 0 <= lid <= k - 1:
            raise ValueError(f"(l2) fails: lid={lid}, k={k}")
        if not lmu <= k <= (n - 1) * lmu:
            raise ValueError(f"(lk) fails: need {lmu} <= {k} <= {(n - 1) * lmu}")
        if not 2 <= np_ <= n:
            raise ValueError(f"(nn) fails: n'={np_}, n={n}")
        if sorted(self.assignment) != list(range(k * np_)):
            raise ValueError("assignment must use every variable exactly once")

    def product_rows(self) -> list[tuple[int, ...]]:
        n = self.n
        return [
            tuple(self.assignment[r * n : (r + 1) * n]) for r in range(self.lmu)
        ]

    def intact_vars(self) -> tuple[int, ...]:
        return tuple(self.assignment[self.lmu * self.n :])


def shape_params(n: int, k: int, lmu: int) -> tuple[int, int]:
    """(n', lid) for given n, k, lmu; raises when n' fails to quantise."""
    if not 1 <= lmu <= k:
        raise ValueError("need 1 <= lmu <= k")
    num = (n - 1) * lmu
    if num % k:
        raise ValueError(f"(n-1)*lmu = {num} not divisible by k = {k}")
    n_prime = num // k + 1
    if not 2 <= n_prime <= n:
        raise ValueError(f"n' = {n_prime} outside 2..{n}")
    return n_prime, k - lmu


def canonical_shape(n: int, k: int, lmu: int) -> HeteroShape:
    """The shape whose rows read the variables in plain order: rows take
    0..n*lmu-1 row-major, intact slots take the rest."""
    n_prime, lid = shape_params(n, k, lmu)
    return HeteroShape(n, n_prime, k, lmu, lid, tuple(range(k * n_prime)))


def classify_shape(shape: HeteroShape) -> str:
    if shape.k == shape.lmu:
        return "multiplace homomorphism"
    if shape.k == (shape.n - 1) * shape.lmu:
        return "binarizing"
    return "intermediate"


def heteromorphism_table(k_max: int = 4, count: int = 3) -> list[dict]:
    """Admissible-arity table: for each (k, lmu) with lid = k - lmu >= 1,
    the `count` smallest source arities n and their images n'."""
    rows = []
    for k in range(2, k_max + 1):
        for lmu in range(1, k):
            pairs = []
            n = 2
            while len(pairs) < count:
                try:
                    n_prime, _ = shape_params(n, k, lmu)
                except ValueError:
                    pass
                else:
                    pairs.append((n, n_prime))
                n += 1
            rows.append({"k": k, "lmu": lmu, "lid": k - lmu, "arities": tuple(pairs)})
    return rows


# -- heteromorphism checking -------------------------------------------------


def _instances(source: PolyadicSystem, shape: HeteroShape):
    """Yield (phi_entry_indices, lhs_index_fn) data per variable valuation:
    concretely (lhs_args_key, block_keys) with keys = lex indices into a
    k-place table over the source carrier."""
    m = source.size
    k, np_ = shape.k, shape.n_prime
    rows = shape.product_rows()
    intact = shape.intact_vars()
    for vals in itertools.product(range(m), repeat=k * np_):
        lhs_args = tuple(
            evaluate(source.op, tuple(vals[v] for v in row)) for row in rows
        ) + tuple(vals[v] for v in intact)
        lhs_key = lex_index(lhs_args, m)
        block_keys = tuple(
            lex_index(vals[b * k : (b + 1) * k], m) for b in range(np_)
        )
        yield lhs_key, block_keys


def _check_shapes(source, target, shape, phi=None):
    if source.arity != shape.n:
        raise ValueError(f"source arity {source.arity} != shape n {shape.n}")
    if target.arity != shape.n_prime:
        raise ValueError(f"target arity {target.arity} != shape n' {shape.n_prime}")
    if phi is not None:
        if phi.places != shape.k:
            raise ValueError(f"map has {phi.places} places, shape wants {shape.k}")
        if phi.source_size != source.size or phi.target_size != target.size:
            raise ValueError("map carriers do not match the systems")


def verify_heteromorphism(
    source: PolyadicSystem,
    target: PolyadicSystem,
    shape: HeteroShape,
    phi: MultiplaceMap,
    budget: int | None = None,
) -> Check:
    """Scan all m^(k*n') variable valuations of the shape equation.
    Witness: (vals, lhs, rhs)."""
    _check_shapes(source, target, shape, phi)
    m = source.size
    total = m ** (shape.k * shape.n_prime)
    check_budget(total, budget, "heteromorphism scan")
    table = phi.table
    for vals, (lhs_key, block_keys) in zip(
        itertools.product(range(m), repeat=shape.k * shape.n_prime),
        _instances(source, shape),
    ):
        lhs = table[lhs_key]
        rhs = target.evaluate(tuple(table[b] for b in block_keys))
        if lhs != rhs:
            return Check(False, (vals, lhs, rhs))
    return Check(True)


def enumerate_heteromorphisms(
    source: PolyadicSystem,
    target: PolyadicSystem,
    shape: HeteroShape,
    budget: int | None = None,
) -> list[MultiplaceMap]:
    """All k-place tables satisfying the shape equation, by backtracking
    over table entries in lexicographic order.  An equation instance is
    checked as soon as every entry it reads is assigned, so full
    assignments are exactly the heteromorphisms.  The budget counts
    equation-instance evaluations."""
    _check_shapes(source, target, shape)
    m_s, m_t = source.size, target.size
    size = m_s**shape.k

    by_last: list[list[tuple[int, tuple[int, ...]]]] = [[] for _ in range(size)]
    for lhs_key, block_keys in _instances(source, shape):
        last = max(lhs_key, *block_keys)
        by_last[last].append((lhs_key, block_keys))

    spent = 0
    found: list[MultiplaceMap] = []
    entries = [0] * size

    def consistent(pos: int) -> bool:
        nonlocal spent
        spent += len(by_last[pos])
        check_budget(spent, budget, "heteromorphism search")
        for lhs_key, block_keys in by_last[pos]:
            if target.evaluate(tuple(entries[b] for b in block_keys)) != entries[lhs_key]:
                return False
        return True

    def walk(pos: int):
        if pos == size:
            found.append(MultiplaceMap(shape.k, m_s, m_t, tuple(entries)))
            return
        for v in range(m_t):
            entries[pos] = v
            if consistent(pos):
                walk(pos + 1)
        entries[pos] = 0

    walk(0)
    return found


def is_derived(
    phi: MultiplaceMap, target: PolyadicSystem, budget: int | None = None
) -> tuple[int, ...] | None:
    """If Phi(g_1..g_k) equals the right-nested target fold of some unary
    map applied entrywise, return the lexicographically first such unary
    table; otherwise None.  Needs (k-1) divisible by (target arity - 1)."""
    k, m_s, m_t = phi.places, phi.source_size, phi.target_size
    if m_t != target.size:
        raise ValueError("map target does not match the system")
    n_t = target.arity
    if (k - 1) % (n_t - 1):
        return None
    check_budget(m_t**m_s * m_s**k, budget, "derivedness search")
    for cand in itertools.product(range(m_t), repeat=m_s):
        model = phi.table
        ok = True
        for i, args in enumerate(itertools.product(range(m_s), repeat=k)):
            mapped = tuple(cand[g] for g in args)
            folded = (
                mapped[0]
                if k == 1
                else evaluate_iterated(target.op, mapped, "right")
            )
            if folded != model[i]:
                ok = False
                break
        if ok:
            return cand
    return None


# -- polymap serialization ---------------------------------------------------


def dumps_map(phi: MultiplaceMap, comment: str | None = None) -> str:
    lines = ["polymap 1"]
    if comment:
        lines += [f"# {line}" for line in comment.splitlines()]
    lines.append(f"k {phi.places}")
    lines.append(f"source {phi.source_size}")
    lines.append(f"target {phi.target_size}")
    row = phi.source_size
    for i in range(0, len(phi.table), row):
        lines.append(" ".join(str(v) for v in phi.table[i : i + row]))
    return "\n".join(lines) + "\n"


def loads_map(text: str) -> MultiplaceMap:
    tokens: list[str] = []
    header: dict[str, int] = {}
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if not tokens and parts[0] == "polymap":
            if parts[1:] != ["1"]:
                raise FormatError(f"unsupported polymap version: {line!r}")
            header["_magic"] = 1
            continue
        if parts[0] in ("k", "source", "target") and parts[0] not in header:
            if len(parts) != 2 or not parts[1].isdigit():
                raise FormatError(f"bad header line: {line!r}")
            header[parts[0]] = int(parts[1])
            continue
        tokens.extend(parts)
    if "_magic" not in header:
        raise FormatError("missing 'polymap 1' magic line")
    for key in ("k", "source", "target"):
        if key not in header:
            raise FormatError(f"missing header: {key}")
    try:
        table = tuple(int(t) for t in tokens)
    except ValueError as exc:
        raise FormatError(f"non-integer table entry: {exc}") from None
    return MultiplaceMap(header["k"], header["source"], header["target"], table)


def save_map(phi: MultiplaceMap, path, comment: str | None = None) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps_map(phi, comment))


def load_map(path) -> MultiplaceMap:
    with open(path, "r", encoding="utf-8") as fh:
        return loads_map(fh.read())
