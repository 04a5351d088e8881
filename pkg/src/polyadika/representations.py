"""Matrix representations of polyadic systems by multiplace actions.

An n-ary system acts on itself by i-translations: fix n-1 arguments and
insert the moving point at slot i.  On the free module over the carrier
every translation becomes a 0/1 column-action matrix (column g carries a
single 1 in the row of its image; for groups these are permutation
matrices), and the translations indexed by (n-1)-tuples form a multiplace
representation — a k-place matrix-valued map whose composition law is a
heteromorphism into matrix multiplication.

Ternary systems get the three classical kinds, written as right actions
on kets:

    left    Pi(g,h)|u> = |[g,h,u]>      Pi(g1,g2) Pi(g3,g4) = Pi([g1,g2,g3], g4)
    right   Pi(g,h)|u> = |[u,g,h]>      Pi(g3,g4) Pi(g1,g2) = Pi(g1, [g2,g3,g4])
    middle  Pi(g,h)|u> = |[g,u,h]>      Pi(g3,h3) Pi(g2,h2) Pi(g1,h1)
                                            = Pi([g3,g2,g1], [h1,h2,h3])

with the normalizations Pi(g, quer g) = 1 (left/right) and
Pi(g,h) Pi(quer g, quer h) = 1 (middle).  All scans are exhaustive and
exact over integer matrices; eigenvalues are the single floating-point
output, flagged as such.

The composition shapes attached to multiplace representations follow the
products-first convention of `morphisms.HeteroShape`: the lmu product rows
feed the first lmu argument places, the lid intact variables the rest.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .arity import ArityPlan, apply_plan
from .core import (
    PolyadicSystem,
    all_polyads,
    check_budget,
    lex_index,
)
from .grouplike import querelement
from .morphisms import HeteroShape
from .properties import Check, classify, find_identities, is_totally_associative

Scalar = int | Fraction
Matrix = tuple[tuple[Scalar, ...], ...]


# -- exact matrices ----------------------------------------------------------


def identity_matrix(d: int) -> Matrix:
    return tuple(tuple(1 if r == c else 0 for c in range(d)) for r in range(d))


def matmul(a: Matrix, b: Matrix) -> Matrix:
    if len(a[0]) != len(b):
        raise ValueError(f"cannot multiply {len(a)}x{len(a[0])} by {len(b)}x{len(b[0])}")
    cols = range(len(b[0]))
    return tuple(
        tuple(sum(row[j] * b[j][c] for j in range(len(b))) for c in cols)
        for row in a
    )


def mat_chain(matrices) -> Matrix:
    """Product of matrices left to right."""
    out = None
    for mat in matrices:
        out = mat if out is None else matmul(out, mat)
    if out is None:
        raise ValueError("empty product")
    return out


def mat_trace(a: Matrix) -> Scalar:
    return sum(a[i][i] for i in range(len(a)))


def function_matrix(images) -> Matrix:
    """Column-action 0/1 matrix of a self-map: column c has its single 1 in
    row images[c], so the matrix sends the basis ket |c> to |images[c]>.
    Bijective image tuples give permutation matrices; composition of such
    matrices is composition of the underlying maps."""
    images = tuple(images)
    d = len(images)
    for r in images:
        if not 0 <= r < d:
            raise ValueError(f"image {r} outside 0..{d - 1}")
    return tuple(tuple(1 if images[c] == r else 0 for c in range(d)) for r in range(d))


def perm_matrix(images) -> Matrix:
    """function_matrix restricted to bijective images."""
    images = tuple(images)
    if sorted(images) != list(range(len(images))):
        raise ValueError("images must be a permutation of 0..d-1")
    return function_matrix(images)


def column_images(matrix: Matrix) -> tuple[int, ...] | None:
    """The image tuple when every column holds exactly one 1 (a column-action
    self-map matrix), None otherwise."""
    d = len(matrix)
    images = [-1] * d
    for c in range(d):
        hits = [r for r in range(d) if matrix[r][c] != 0]
        if len(hits) != 1 or matrix[hits[0]][c] != 1:
            return None
        images[c] = hits[0]
    return tuple(images)


def spectral_check(matrix: Matrix) -> tuple[complex, ...]:
    """Eigenvalues as a sorted tuple of complex floats.  This is the one
    floating-point output of the module, meant for reporting; everything
    else stays exact."""
    eigs = np.linalg.eigvals(np.array(matrix, dtype=float))
    return tuple(sorted((complex(z) for z in eigs), key=lambda z: (z.real, z.imag)))


def spectrum_close(
    spectrum, expected, tol: float = 1e-12
) -> bool:
    """Multiset comparison of eigenvalue collections: greedily match each
    expected value to the nearest unused computed one within tol."""
    remaining = list(spectrum)
    if len(remaining) != len(tuple(expected)):
        return False
    for want in expected:
        best = min(range(len(remaining)), key=lambda i: abs(remaining[i] - want))
        if abs(remaining[best] - want) > tol:
            return False
        remaining.pop(best)
    return True


# -- representation containers ------------------------------------------------

_TERNARY_KINDS = ("left", "right", "middle")


@dataclass(frozen=True, eq=False)
class TernaryRep:
    """A pair-indexed family of square matrices over a ternary system.

    table is lex-indexed by the pair (g, h) with g most significant, the
    same layout as every other flat table in the package.
    """

    kind: str
    group: PolyadicSystem
    table: tuple[Matrix, ...]

    def __post_init__(self):
        if self.kind not in _TERNARY_KINDS:
            raise ValueError(f"kind must be one of {_TERNARY_KINDS}, got {self.kind!r}")
        if self.group.arity != 3:
            raise ValueError("ternary representation needs a ternary operation")
        if len(self.table) != self.group.size ** 2:
            raise ValueError("table needs one matrix per ordered pair")

    @property
    def dim(self) -> int:
        return len(self.table[0])

    def __call__(self, g: int, h: int) -> Matrix:
        return self.table[lex_index((g, h), self.group.size)]


@dataclass(frozen=True, eq=False)
class MultiplaceRep:
    """A k-place matrix-valued representation with an optional composition
    shape (products-first heteromorphism layout into matrix multiplication)
    and an optional declared normalization:

        ("unit", e)  Pi(e,..,e) = 1
        ("quer",)    Pi(quer h, .., quer h, h, .., h) = 1   (lmu quers, lid h's)
    """

    system: PolyadicSystem
    k: int
    lmu: int
    lid: int
    shape: HeteroShape | None
    table: tuple[Matrix, ...]
    normalization: tuple | None = None

    def __post_init__(self):
        if self.k < 1:
            raise ValueError("k must be at least 1")
        if self.lmu < 1 or self.lid < 0 or self.lmu + self.lid != self.k:
            raise ValueError(
                f"need lmu >= 1, lid >= 0, lmu + lid = k; got ({self.lmu}, {self.lid}, {self.k})"
            )
        if len(self.table) != self.system.size ** self.k:
            raise ValueError("table needs one matrix per k-tuple")
        if self.shape is not None:
            if (self.shape.n, self.shape.k) != (self.system.arity, self.k):
                raise ValueError("shape does not match the system and k")
            if (self.shape.lmu, self.shape.lid) != (self.lmu, self.lid):
                raise ValueError("shape does not match lmu/lid")
        if self.normalization is not None and self.normalization[0] not in ("unit", "quer"):
            raise ValueError(f"unknown normalization {self.normalization!r}")

    @property
    def dim(self) -> int:
        return len(self.table[0])

    def __call__(self, *args: int) -> Matrix:
        if len(args) != self.k:
            raise ValueError(f"expected {self.k} arguments, got {len(args)}")
        return self.table[lex_index(args, self.system.size)]


# -- multiactions -------------------------------------------------------------


def regular_multiaction(system: PolyadicSystem, i: int, args, h: int) -> int:
    """The i-translation action of an (n-1)-tuple on the carrier: insert the
    moving point h at slot i (1-based) of the n-ary product.

    i = n acts from the left (mu[args.., h]), i = 1 from the right
    (mu[h, args..]), and for odd n the slot (n+1)/2 is the middle action.
    """
    n = system.arity
    args = tuple(args)
    if len(args) != n - 1:
        raise ValueError(f"regular multiaction needs {n - 1} arguments, got {len(args)}")
    if not 1 <= i <= n:
        raise ValueError(f"slot {i} outside 1..{n}")
    return system.evaluate(args[: i - 1] + (h,) + args[i - 1 :])


@dataclass(frozen=True, eq=False)
class Multiaction:
    """A declared k-place action table on a finite point set: table is
    lex-indexed by (args.., x) with x least significant."""

    system: PolyadicSystem
    k: int
    points: int
    table: tuple[int, ...]

    def __post_init__(self):
        if len(self.table) != self.system.size ** self.k * self.points:
            raise ValueError("table needs one point per (args, x) tuple")

    def __call__(self, args, x: int) -> int:
        return multiaction_apply(self, args, x)


def multiaction_apply(action: Multiaction, args, x: int) -> int:
    args = tuple(args)
    if len(args) != action.k:
        raise ValueError(f"expected {action.k} arguments, got {len(args)}")
    if not 0 <= x < action.points:
        raise ValueError(f"point {x} outside 0..{action.points - 1}")
    key = lex_index(args, action.system.size) * action.points + x
    return action.table[key]


def regular_multiaction_table(system: PolyadicSystem, i: int) -> Multiaction:
    """The i-translation action written out as a Multiaction table."""
    n, m = system.arity, system.size
    table = tuple(
        regular_multiaction(system, i, args, x)
        for args in all_polyads(m, n - 1)
        for x in range(m)
    )
    return Multiaction(system, n - 1, m, table)


def multiaction_unit_check(action: Multiaction, e: int) -> Check:
    """rho{(e,..,e) | x} = x for every point x.  Witness: (x, value)."""
    for x in range(action.points):
        val = multiaction_apply(action, (e,) * action.k, x)
        if val != x:
            return Check(False, (x, val))
    return Check(True)


def multiaction_quer_check(action: Multiaction, lmu: int) -> Check:
    """rho{(quer h * lmu, h * lid) | x} = x for all h and x, with
    lid = k - lmu.  Witness: (h, x, value)."""
    if not 1 <= lmu <= action.k:
        raise ValueError(f"lmu {lmu} outside 1..{action.k}")
    for h in range(action.system.size):
        qh = querelement(action.system, h)
        if qh is None:
            raise ValueError(f"element {h} has no querelement")
        args = (qh,) * lmu + (h,) * (action.k - lmu)
        for x in range(action.points):
            val = multiaction_apply(action, args, x)
            if val != x:
                return Check(False, (h, x, val))
    return Check(True)


def translation_composition_check(
    system: PolyadicSystem, i: int, budget: int | None = None
) -> Check:
    """Two-step composition of end-slot translations collapses to a single
    translation with one product absorbed:

        i = n:  rho{A | rho{B | x}} = rho{(mu[A, B_1], B_2, .., B_k) | x}
        i = 1:  rho{A | rho{B | x}} = rho{(B_1, .., B_{k-1}, mu[B_k, A]) | x}

    Exhaustive over both argument tuples and x.  Witness: (A, B, x, lhs, rhs).
    """
    n, m = system.arity, system.size
    if i not in (1, n):
        raise ValueError("two-step collapse needs an end slot (i = 1 or i = n)")
    k = n - 1
    check_budget(m ** (2 * k + 1), budget, "translation composition scan")
    for a in all_polyads(m, k):
        for b in all_polyads(m, k):
            if i == n:
                collapsed = (system.evaluate(a + b[:1]),) + b[1:]
            else:
                collapsed = b[:-1] + (system.evaluate(b[-1:] + a),)
            for x in range(m):
                lhs = regular_multiaction(system, i, a, regular_multiaction(system, i, b, x))
                rhs = regular_multiaction(system, i, collapsed, x)
                if lhs != rhs:
                    return Check(False, (a, b, x, lhs, rhs))
    return Check(True)


def middle_multiaction_check(system: PolyadicSystem, budget: int | None = None) -> Check:
    """For a 5-ary system, the three-step middle composition law: with
    rho{(g,h,u,v) | s} = mu5[g,h,s,u,v],

        rho{(g1,h1,u1,v1) | rho{(g2,h2,u2,v2) | rho{(g3,h3,u3,v3) | s}}}
            = rho{(mu5[g1,h1,g2,h2,g3], h3, mu5[u3,v3,u2,v2,u1], v1) | s}.

    Exhaustive over all thirteen variables.  Witness: (vals, lhs, rhs).
    """
    if system.arity != 5:
        raise ValueError("three-step middle composition is a 5-ary law")
    m = system.size
    check_budget(m ** 13, budget, "middle multiaction scan")
    mid = 3
    for vals in itertools.product(range(m), repeat=13):
        g1, h1, u1, v1, g2, h2, u2, v2, g3, h3, u3, v3, s = vals
        inner = regular_multiaction(system, mid, (g3, h3, u3, v3), s)
        inner = regular_multiaction(system, mid, (g2, h2, u2, v2), inner)
        lhs = regular_multiaction(system, mid, (g1, h1, u1, v1), inner)
        left = system.evaluate((g1, h1, g2, h2, g3))
        right = system.evaluate((u3, v3, u2, v2, u1))
        rhs = regular_multiaction(system, mid, (left, h3, right, v1), s)
        if lhs != rhs:
            return Check(False, (vals, lhs, rhs))
    return Check(True)


# -- regular representations ---------------------------------------------------


def _translation_matrix(system: PolyadicSystem, i: int, args) -> Matrix:
    m = system.size
    args = tuple(args)
    images = tuple(
        system.evaluate(args[: i - 1] + (x,) + args[i - 1 :]) for x in range(m)
    )
    return function_matrix(images)


def _binarizing_shape(n: int) -> HeteroShape:
    """Composition shape of an end-slot regular representation: one product
    row absorbing the leading argument of the second factor."""
    k = n - 1
    return HeteroShape(n, 2, k, 1, k - 1, tuple(range(2 * k)))


_MIDDLE_TERNARY_SHAPE = HeteroShape(3, 3, 2, 2, 0, (0, 2, 4, 5, 3, 1))


def i_regular_representation(
    system: PolyadicSystem, i: int, budget: int | None = None
) -> MultiplaceRep:
    """Matrix representation by i-translations of a totally associative
    system on its own carrier (dimension = carrier size).  Translations of
    a group are permutation matrices; a general associative system yields
    column self-map matrices, and the composition law is the same.

    A composition shape is attached when the composite of two translations
    is again expressible in the same family with this package's
    products-first layout: the left slot i = n (binarizing shape) and the
    ternary middle slot i = 2, n = 3 (one forward and one reversed product
    row).  Other slots get shape None; their laws are checked by
    `verify_ternary_rep` or the multiaction composition checks.
    """
    n, m = system.arity, system.size
    if not 1 <= i <= n:
        raise ValueError(f"slot {i} outside 1..{n}")
    assoc = is_totally_associative(system, budget)
    if not assoc:
        raise ValueError(f"regular representation needs total associativity; witness {assoc.witness}")
    k = n - 1
    check_budget(m ** n, budget, "regular representation table")
    table = tuple(_translation_matrix(system, i, args) for args in all_polyads(m, k))

    shape: HeteroShape | None = None
    lmu, lid = 1, k - 1
    if i == n:
        shape = _binarizing_shape(n)
    elif n == 3 and i == 2:
        shape = _MIDDLE_TERNARY_SHAPE
        lmu, lid = 2, 0
    elif i != 1:
        lmu, lid = k, 0

    normalization = None
    if shape is not None and i == n:
        if all(querelement(system, g) is not None for g in range(m)):
            normalization = ("quer",)
        else:
            ids = find_identities(system)
            if ids:
                normalization = ("unit", ids[0])
    return MultiplaceRep(system, k, lmu, lid, shape, table, normalization)


def _require_ternary_group(group: PolyadicSystem) -> None:
    if group.arity != 3:
        raise ValueError("need a ternary operation")
    kind = classify(group)
    if kind != "group":
        raise ValueError(f"regular representation needs a ternary group, got {kind}")


def ternary_left_regular(group: PolyadicSystem) -> TernaryRep:
    """Pi(g,h)|u> = |[g,h,u]>."""
    _require_ternary_group(group)
    m = group.size
    table = tuple(_translation_matrix(group, 3, pair) for pair in all_polyads(m, 2))
    return TernaryRep("left", group, table)


def ternary_right_regular(group: PolyadicSystem) -> TernaryRep:
    """Pi(g,h)|u> = |[u,g,h]>."""
    _require_ternary_group(group)
    m = group.size
    table = tuple(_translation_matrix(group, 1, pair) for pair in all_polyads(m, 2))
    return TernaryRep("right", group, table)


def middle_regular_representation(group: PolyadicSystem) -> TernaryRep:
    """Pi(g,h)|u> = |[g,u,h]>."""
    _require_ternary_group(group)
    m = group.size
    table = tuple(_translation_matrix(group, 2, pair) for pair in all_polyads(m, 2))
    return TernaryRep("middle", group, table)


def _quers(group: PolyadicSystem) -> tuple[int, ...]:
    quers = []
    for g in range(group.size):
        q = querelement(group, g)
        if q is None:
            raise ValueError(f"element {g} has no querelement")
        quers.append(q)
    return tuple(quers)


def verify_ternary_rep(rep: TernaryRep, budget: int | None = None) -> Check:
    """Exhaustive check of the defining equations for rep.kind.

    left:    Pi(g1,g2) Pi(g3,g4) = Pi([g1,g2,g3], g4);  Pi(g, quer g) = 1;
             the splitting Pi(g,h) = Pi(g,u) Pi(quer u, h) and the inverse
             law Pi(g,u) Pi(quer u, quer g) = 1.
    right:   Pi(g3,g4) Pi(g1,g2) = Pi(g1, [g2,g3,g4]);  Pi(g, quer g) = 1;
             the splitting Pi(g,h) = Pi(quer u, h) Pi(g,u).
    middle:  Pi(g3,h3) Pi(g2,h2) Pi(g1,h1) = Pi([g3,g2,g1], [h1,h2,h3]);
             Pi(g,h) Pi(quer g, quer h) = 1 in both orders.

    Witness: (law, args, lhs, rhs) with law one of "composition",
    "quer-identity", "splitting", "inverse".
    """
    group = rep.group
    m = group.size
    quers = _quers(group)
    one = identity_matrix(rep.dim)
    mu = group.evaluate

    if rep.kind == "middle":
        check_budget(m ** 6, budget, "middle composition scan")
        for g1, h1, g2, h2, g3, h3 in itertools.product(range(m), repeat=6):
            lhs = matmul(rep(g3, h3), matmul(rep(g2, h2), rep(g1, h1)))
            rhs = rep(mu((g3, g2, g1)), mu((h1, h2, h3)))
            if lhs != rhs:
                return Check(False, ("composition", (g1, h1, g2, h2, g3, h3), lhs, rhs))
        for g, h in itertools.product(range(m), repeat=2):
            back = rep(quers[g], quers[h])
            for lhs in (matmul(rep(g, h), back), matmul(back, rep(g, h))):
                if lhs != one:
                    return Check(False, ("quer-identity", (g, h), lhs, one))
        return Check(True)

    check_budget(m ** 4, budget, "composition scan")
    for g1, g2, g3, g4 in itertools.product(range(m), repeat=4):
        if rep.kind == "left":
            lhs = matmul(rep(g1, g2), rep(g3, g4))
            rhs = rep(mu((g1, g2, g3)), g4)
        else:
            lhs = matmul(rep(g3, g4), rep(g1, g2))
            rhs = rep(g1, mu((g2, g3, g4)))
        if lhs != rhs:
            return Check(False, ("composition", (g1, g2, g3, g4), lhs, rhs))
    for g in range(m):
        got = rep(g, quers[g])
        if got != one:
            return Check(False, ("quer-identity", (g,), got, one))
    for g, h, u in itertools.product(range(m), repeat=3):
        if rep.kind == "left":
            split = matmul(rep(g, u), rep(quers[u], h))
        else:
            split = matmul(rep(quers[u], h), rep(g, u))
        if split != rep(g, h):
            return Check(False, ("splitting", (g, h, u), split, rep(g, h)))
    if rep.kind == "left":
        for g, u in itertools.product(range(m), repeat=2):
            got = matmul(rep(g, u), rep(quers[u], quers[g]))
            if got != one:
                return Check(False, ("inverse", (g, u), got, one))
    return Check(True)


def verify_multiplace_rep(rep: MultiplaceRep, budget: int | None = None) -> Check:
    """Scan every variable assignment of the declared composition shape
    (lhs = rep at products-then-intacts, rhs = matrix product over blocks),
    then the declared normalization.  Tables of column self-map matrices
    compose by index instead of full matrix products; the result is
    identical.

    Witness: ("composition", vals, lhs, rhs) or ("unit"/"quer", args, got).
    """
    shape = rep.shape
    if shape is None:
        raise ValueError("representation declares no composition shape")
    system, m, k = rep.system, rep.system.size, rep.k
    total = m ** (shape.k * shape.n_prime)
    check_budget(total * shape.n_prime, budget, "representation scan")
    rows, intact = shape.product_rows(), shape.intact_vars()

    maps = [column_images(mat) for mat in rep.table]
    fast = all(p is not None for p in maps)

    for vals in itertools.product(range(m), repeat=shape.k * shape.n_prime):
        lhs_args = tuple(
            system.evaluate(tuple(vals[v] for v in row)) for row in rows
        ) + tuple(vals[v] for v in intact)
        block_keys = [
            lex_index(vals[b * k : (b + 1) * k], m) for b in range(shape.n_prime)
        ]
        lhs_key = lex_index(lhs_args, m)
        if fast:
            composite = maps[block_keys[0]]
            for key in block_keys[1:]:
                nxt = maps[key]
                composite = tuple(composite[nxt[c]] for c in range(len(nxt)))
            if composite != maps[lhs_key]:
                return Check(
                    False,
                    ("composition", vals, rep.table[lhs_key], function_matrix(composite)),
                )
        else:
            rhs = mat_chain(rep.table[key] for key in block_keys)
            if rep.table[lhs_key] != rhs:
                return Check(False, ("composition", vals, rep.table[lhs_key], rhs))

    one = identity_matrix(rep.dim)
    if rep.normalization is not None:
        if rep.normalization[0] == "unit":
            e = rep.normalization[1]
            got = rep(*(e,) * k)
            if got != one:
                return Check(False, ("unit", (e,) * k, got))
        else:
            for h in range(m):
                qh = querelement(system, h)
                if qh is None:
                    raise ValueError(f"element {h} has no querelement")
                args = (qh,) * rep.lmu + (h,) * rep.lid
                got = rep(*args)
                if got != one:
                    return Check(False, ("quer", args, got))
    return Check(True)


# -- two-product binarizing representations and retracts -----------------------


def _paired_shape(n: int) -> HeteroShape:
    """Two product rows (the second read back to front) plus the intact
    tail: the composition shape of left-by-right translation pairs."""
    k = 2 * n - 2
    row_a = (0, *range(2, n), k)
    row_b = (k + 1, *range(n, 2 * n - 3 + 1), 1)
    intact = tuple(range(k + 2, k + n)) + tuple(range(k + n, 2 * k))
    return HeteroShape(n, 2, k, 2, 2 * n - 4, row_a + row_b + intact)


def paired_regular_rep(system: PolyadicSystem, budget: int | None = None) -> MultiplaceRep:
    """The (2n-2)-place representation pairing a left translation with a
    right translation:

        Pi(a, b, u.., v..)|x> = |mu[a, u.., mu[x, v.., b]]>

    Its composition law has two product rows — the left-side row forward,
    the right-side row reversed — and needs nothing beyond total
    associativity.  Querelement normalization is attached when every
    element has a quer.
    """
    n, m = system.arity, system.size
    if n < 3:
        raise ValueError("pairing translations needs arity at least 3")
    assoc = is_totally_associative(system, budget)
    if not assoc:
        raise ValueError(f"paired representation needs total associativity; witness {assoc.witness}")
    k = 2 * n - 2
    check_budget(m ** k * m, budget, "paired representation table")

    def image(args: tuple[int, ...], x: int) -> int:
        a, b = args[0], args[1]
        u = args[2 : n]
        v = args[n : 2 * n - 2]
        return system.evaluate((a,) + u + (system.evaluate((x,) + v + (b,)),))

    table = tuple(
        function_matrix(tuple(image(args, x) for x in range(m)))
        for args in all_polyads(m, k)
    )
    normalization = ("quer",) if all(
        querelement(system, g) is not None for g in range(m)
    ) else None
    return MultiplaceRep(system, k, 2, 2 * n - 4, _paired_shape(n), table, normalization)


def retract_system(system: PolyadicSystem, g: int, budget: int | None = None) -> PolyadicSystem:
    """The binary retract at g: g1 * g2 = mu_n[g1, g, .., g, g2]."""
    n = system.arity
    if not 0 <= g < system.size:
        raise ValueError(f"element {g} outside carrier")
    plan = ArityPlan("reduce", constants=tuple((p, g) for p in range(1, n - 1)))
    return apply_plan(system, plan, budget)


_RETRACT_SHAPE = HeteroShape(2, 2, 2, 2, 0, (0, 2, 3, 1))


def retract_reduction(rep: MultiplaceRep, g: int, budget: int | None = None) -> MultiplaceRep:
    """Restrict a paired representation to the binary retract at g:

        Pi2(g1, g2) = Pi(g1, g2, g, .., g)

    The result is a 2-place representation of the retract whose law pairs
    the retract on the first argument with the opposite retract on the
    second — the shape's second row is reversed, so the scan is exact for
    every system; for semicommutative systems this is the plain
    two-argument homomorphism law (checked in the tests by overriding the
    shape with its forward-row variant).
    """
    system = rep.system
    n, m = system.arity, system.size
    if rep.shape != _paired_shape(n):
        raise ValueError("retract reduction needs the paired two-row layout")
    if not 0 <= g < m:
        raise ValueError(f"element {g} outside carrier")
    tail = (g,) * (2 * n - 4)
    table = tuple(
        rep(*(pair + tail)) for pair in all_polyads(m, 2)
    )
    retract = retract_system(system, g, budget)
    return MultiplaceRep(retract, 2, 2, 0, _RETRACT_SHAPE, table, None)


# -- equivalences on pairs and elements ----------------------------------------


def rep_pair_classes(rep: TernaryRep) -> tuple[tuple[tuple[int, int], ...], ...]:
    """Partition of ordered pairs by equal matrices, classes and members in
    lexicographic order."""
    m = rep.group.size
    buckets: dict[Matrix, list[tuple[int, int]]] = {}
    for pair in all_polyads(m, 2):
        buckets.setdefault(rep(*pair), []).append(pair)
    classes = [tuple(sorted(members)) for members in buckets.values()]
    return tuple(sorted(classes))


def left_translations_equal(group: PolyadicSystem, p, q) -> bool:
    """[p1, p2, g] = [q1, q2, g] for every g."""
    mu = group.evaluate
    return all(mu((p[0], p[1], g)) == mu((q[0], q[1], g)) for g in range(group.size))


def right_translations_equal(group: PolyadicSystem, p, q) -> bool:
    """[g, p1, p2] = [g, q1, q2] for every g."""
    mu = group.evaluate
    return all(mu((g, p[0], p[1])) == mu((g, q[0], q[1])) for g in range(group.size))


def middle_translations_equal(group: PolyadicSystem, p, q) -> bool:
    """[p1, g, p2] = [q1, g, q2] for every g."""
    mu = group.evaluate
    return all(mu((p[0], g, p[1])) == mu((q[0], g, q[1])) for g in range(group.size))


def conjugates(group: PolyadicSystem, a: int) -> tuple[int, ...]:
    """The sorted orbit {[g, a, quer g] : g in G} of a under ternary
    conjugation."""
    if group.arity != 3:
        raise ValueError("conjugation here is a ternary notion")
    mu = group.evaluate
    quers = _quers(group)
    orbit = {mu((g, a, quers[g])) for g in range(group.size)}
    return tuple(sorted(orbit))


def conjugacy_classes(group: PolyadicSystem) -> tuple[tuple[int, ...], ...]:
    """Partition of the carrier under a ~ a' iff a' = [g, a, quer g] for
    some g.  For ternary groups the relation is symmetric (conjugating
    back by quer g returns a), so orbits partition the carrier."""
    if group.arity != 3:
        raise ValueError("conjugation here is a ternary notion")
    mu = group.evaluate
    quers = _quers(group)
    seen: set[int] = set()
    classes = []
    for a in range(group.size):
        if a in seen:
            continue
        orbit = {mu((g, a, quers[g])) for g in range(group.size)}
        orbit.add(a)
        frontier = set(orbit)
        while frontier:
            b = frontier.pop()
            for g in range(group.size):
                c = mu((g, b, quers[g]))
                if c not in orbit:
                    orbit.add(c)
                    frontier.add(c)
        seen |= orbit
        classes.append(tuple(sorted(orbit)))
    return tuple(sorted(classes))


def pairs_conjugate(group: PolyadicSystem, p, q) -> bool:
    """Componentwise conjugacy of ordered pairs: q = ([g, p1, quer g],
    [h, p2, quer h]) for some g and h (chosen independently)."""
    classes = conjugacy_classes(group)
    def cls(a: int) -> int:
        return next(i for i, c in enumerate(classes) if a in c)
    return cls(p[0]) == cls(q[0]) and cls(p[1]) == cls(q[1])


# -- structure checks -----------------------------------------------------------


def gamma_algebra_check(left: TernaryRep, middle: TernaryRep) -> Check:
    """On the three-element ternary group, the pair-classes collapse onto a
    gamma family indexed by the carrier:

        gamma_i = Pi_left(0, i)      gamma_i gamma_j = gamma_{i+j mod 3}
        gammaM_s = Pi_mid(0, s)      Pi_mid(k, l) = gammaM_{k+l mod 3}
                                     gammaM_i gammaM_j gammaM_k = gammaM_{[i,j,k]}

    All nine left products, nine middle well-definedness identities and
    twenty-seven middle triples are checked exactly.
    Witness: ("left", i, j) / ("middle-classes", k, l) / ("middle", i, j, k).
    """
    group = left.group
    if group.size != 3:
        raise ValueError("the gamma family lives on the three-element carrier")
    if middle.group is not group and middle.group.op != group.op:
        raise ValueError("both representations must share one group")
    gamma = [left(0, i) for i in range(3)]
    for i, j in itertools.product(range(3), repeat=2):
        if matmul(gamma[i], gamma[j]) != gamma[(i + j) % 3]:
            return Check(False, ("left", i, j))
    gamma_m = [middle(0, s) for s in range(3)]
    for k, l in itertools.product(range(3), repeat=2):
        if middle(k, l) != gamma_m[(k + l) % 3]:
            return Check(False, ("middle-classes", k, l))
    mu = group.evaluate
    for i, j, k in itertools.product(range(3), repeat=3):
        lhs = matmul(gamma_m[i], matmul(gamma_m[j], gamma_m[k]))
        if lhs != gamma_m[mu((i, j, k))]:
            return Check(False, ("middle", i, j, k))
    return Check(True)


def regular_commutation_check(group: PolyadicSystem, budget: int | None = None) -> Check:
    """Exchange laws between the three regular families of a ternary group,
    exhaustive over all argument pairs:

        L(g1,h1) R(g2,h2) = R(g2,h2) L(g1,h1)
        M(g1,h1) R(g2,h2) = R(h2,h1) M(g1,g2)
        M(g1,h1) L(g2,h2) = L(g1,g2) M(h2,h1)

    Witness: (law, (g1, h1, g2, h2)).
    """
    left = ternary_left_regular(group)
    right = ternary_right_regular(group)
    middle = middle_regular_representation(group)
    m = group.size
    check_budget(m ** 4 * 6, budget, "commutation scan")
    for g1, h1, g2, h2 in itertools.product(range(m), repeat=4):
        if matmul(left(g1, h1), right(g2, h2)) != matmul(right(g2, h2), left(g1, h1)):
            return Check(False, ("left-right", (g1, h1, g2, h2)))
        if matmul(middle(g1, h1), right(g2, h2)) != matmul(right(h2, h1), middle(g1, g2)):
            return Check(False, ("middle-right", (g1, h1, g2, h2)))
        if matmul(middle(g1, h1), left(g2, h2)) != matmul(left(g1, g2), middle(h2, h1)):
            return Check(False, ("middle-left", (g1, h1, g2, h2)))
    return Check(True)


def derived_left_representation(group: PolyadicSystem, pi) -> TernaryRep:
    """For a ternary product derived from a binary group, any matrix
    representation pi of the binary group yields a left ternary
    representation Pi(g, h) = pi(g) pi(h); conversely pi(g) = Pi(g, e)
    recovers it at the binary identity.  pi is a sequence of matrices
    indexed by the carrier."""
    pi = tuple(pi)
    if group.arity != 3:
        raise ValueError("need a ternary operation")
    if len(pi) != group.size:
        raise ValueError("need one matrix per carrier element")
    m = group.size
    table = tuple(
        matmul(pi[g], pi[h]) for g, h in all_polyads(m, 2)
    )
    return TernaryRep("left", group, table)
