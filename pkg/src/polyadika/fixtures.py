"""Canonical small systems used throughout the package and its tests.

All builders are deterministic; the CLI `fixtures` subcommand serializes
them to polyop files with stable bytes.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass

from .core import PolyadicSystem, op_from_callable, system_from_callable


def z3_ternary() -> PolyadicSystem:
    """Ternary group on Z3 with [g,h,u] = (g - h + u) mod 3."""
    return system_from_callable(3, 3, lambda g, h, u: (g - h + u) % 3)


def z4_ternary() -> PolyadicSystem:
    """Shifted ternary group on Z4: [g,h,u] = (g + h + u + 1) mod 4."""
    return system_from_callable(3, 4, lambda g, h, u: (g + h + u + 1) % 4)


def zm_5ary_alternating(m: int = 2) -> PolyadicSystem:
    """Finite analogue of the 5-ary alternating sum g1-g2+g3-g4+g5 (mod m)."""
    return system_from_callable(
        5, m, lambda g1, g2, g3, g4, g5: (g1 - g2 + g3 - g4 + g5) % m
    )


def derived_from_cyclic(m: int, n: int) -> PolyadicSystem:
    """Derived n-ary group from (Z_m, +): the n-fold sum mod m."""
    return system_from_callable(n, m, lambda *gs: sum(gs) % m)


def left_zero_band(m: int = 2, n: int = 2) -> PolyadicSystem:
    """Noncommutative associative system: every product equals the first
    argument (derived from the binary left-zero band)."""
    return system_from_callable(n, m, lambda *gs: gs[0])


def zero_semigroup(m: int = 2) -> PolyadicSystem:
    """Binary semigroup where every product is 0."""
    return system_from_callable(2, m, lambda g, h: 0)


def left_zero_monoid(n: int = 2) -> PolyadicSystem:
    """Derived n-ary system from the smallest noncommutative monoid: the
    left-zero band {x, y} with an adjoined identity e (carrier order e, x, y).

    A word of arguments evaluates to its first non-identity letter, so two
    placement words listing the same slots in different orders are separated
    by assigning x and y to a transposed pair of slots; with three elements
    the exhaustive scans stay tiny.
    """

    def dot(g: int, h: int) -> int:
        if g == 0:
            return h
        return g

    def mu(*gs: int) -> int:
        out = gs[0]
        for g in gs[1:]:
            out = dot(out, g)
        return out

    return system_from_callable(n, 3, mu, labels=("e", "x", "y"))


def sym3_derived(n: int = 2) -> PolyadicSystem:
    """Derived n-ary system from the symmetric group S3 (composition,
    h applied first in g*h); elements are permutations of {0,1,2} in
    lexicographic one-line order.

    The smallest noncommutative group.  Any two placement words that list
    the same argument slots in different orders evaluate differently for
    some assignment (send a transposed pair of slots to two noncommuting
    permutations and the rest to the identity), so exhaustive scans over
    this system decide word-level associativity exactly.
    """
    perms = list(itertools.permutations(range(3)))
    index = {p: i for i, p in enumerate(perms)}

    def compose(g: int, h: int) -> int:
        pg, ph = perms[g], perms[h]
        return index[tuple(pg[ph[i]] for i in range(3))]

    def mu(*gs: int) -> int:
        out = gs[0]
        for g in gs[1:]:
            out = compose(out, g)
        return out

    labels = tuple("".join(map(str, p)) for p in perms)
    return system_from_callable(n, 6, mu, labels=labels)


def truncated_free_monoid(n: int = 2) -> PolyadicSystem:
    """Derived n-ary system from the free monoid on {a, b} truncated at
    length two: any longer concatenation collapses to an absorbing zero.

    Carrier order: e, a, b, aa, ab, ba, bb, 0.  Separates distinct
    multiplicity-one words the same way sym3_derived does, with the
    truncation keeping the carrier at eight elements.
    """
    words: tuple[str | None, ...] = ("", "a", "b", "aa", "ab", "ba", "bb", None)
    index = {w: i for i, w in enumerate(words)}

    def concat(g: int, h: int) -> int:
        wg, wh = words[g], words[h]
        if wg is None or wh is None or len(wg) + len(wh) > 2:
            return 7
        return index[wg + wh]

    def mu(*gs: int) -> int:
        out = gs[0]
        for g in gs[1:]:
            out = concat(out, g)
        return out

    labels = tuple("e" if w == "" else ("0" if w is None else w) for w in words)
    return system_from_callable(n, 8, mu, labels=labels)


def boolean_implication() -> PolyadicSystem:
    """Binary operation g -> h on {0,1}; not associative."""
    return system_from_callable(2, 2, lambda g, h: int((not g) or h))


# ---------------------------------------------------------------------------
# Antidiagonal matrices over GF(3)
#
# Source: the four antidiagonal 2x2 matrices [[0,a],[b,0]] with a,b in
# {1,2} = GF(3)*, closed under the ternary matrix product, encoded as
# element 2*(a-1) + (b-1).  The triple product gives a' = a1*b2*a3 and
# b' = b1*a2*b3 (mod 3).

_UNITS = (1, 2)


def _anti_idx(a: int, b: int) -> int:
    return 2 * (a - 1) + (b - 1)


def antidiagonal_pair(g: int) -> tuple[int, int]:
    """Element index -> (a, b) with a, b in GF(3)*."""
    return _UNITS[g // 2], _UNITS[g % 2]


def antidiagonal_gf3() -> PolyadicSystem:
    def mu(g1, g2, g3):
        a1, b1 = antidiagonal_pair(g1)
        a2, b2 = antidiagonal_pair(g2)
        a3, b3 = antidiagonal_pair(g3)
        return _anti_idx(a1 * b2 * a3 % 3, b1 * a2 * b3 % 3)

    return system_from_callable(3, 4, mu, labels=("11", "12", "21", "22"))


def gf3_units_binary() -> PolyadicSystem:
    """GF(3)* as a binary group, elements encoded 0 -> 1, 1 -> 2."""
    return system_from_callable(
        2, 2, lambda g, h: _UNITS.index(_UNITS[g] * _UNITS[h] % 3)
    )


# ---------------------------------------------------------------------------
# Grassmann signed monomials (odd part)
#
# Carrier: {0} union {+-e_S : S a nonempty odd-size subset of {1..N}},
# ternary product = exterior product of representatives with sign tracking.
# Element 0 is the zero monomial; the signed monomial for the j-th odd
# subset (sorted by (size, indices)) sits at index 1 + 2j (plus sign) and
# 2 + 2j (minus sign).


@dataclass(frozen=True)
class GrassmannMeta:
    """Structure data for the signed-monomial fixture.

    negation[g] is the index of -g (0 for the zero element); support[g] is
    the generator subset of g as a frozenset (empty for zero).
    """

    n_generators: int
    negation: tuple[int, ...]
    support: tuple[frozenset, ...]


def _odd_subsets(n_generators: int) -> list[tuple[int, ...]]:
    subsets = []
    for size in range(1, n_generators + 1, 2):
        subsets.extend(itertools.combinations(range(1, n_generators + 1), size))
    subsets.sort(key=lambda s: (len(s), s))
    return subsets


def _merge_sign(s1: tuple[int, ...], s2: tuple[int, ...]) -> int:
    """Sign of sorting the concatenation s1 + s2 (both already sorted)."""
    inversions = sum(1 for a in s1 for b in s2 if a > b)
    return -1 if inversions % 2 else 1


def grassmann_odd(n_generators: int = 3) -> tuple[PolyadicSystem, GrassmannMeta]:
    subsets = _odd_subsets(n_generators)
    index_of = {s: j for j, s in enumerate(subsets)}

    # signed element encoding: 0 = zero; 1 + 2j = +e_S; 2 + 2j = -e_S
    def wedge(x: tuple[int, tuple[int, ...]] | None, y: tuple[int, tuple[int, ...]] | None):
        if x is None or y is None:
            return None
        sx, ax = x
        sy, ay = y
        if set(ax) & set(ay):
            return None
        sign = sx * sy * _merge_sign(ax, ay)
        return sign, tuple(sorted(ax + ay))

    def decode(g: int):
        if g == 0:
            return None
        j, sign_bit = divmod(g - 1, 2)
        return (1 if sign_bit == 0 else -1), subsets[j]

    def encode(x) -> int:
        if x is None:
            return 0
        sign, s = x
        return 1 + 2 * index_of[s] + (0 if sign == 1 else 1)

    def mu(g, h, u):
        return encode(wedge(wedge(decode(g), decode(h)), decode(u)))

    m = 1 + 2 * len(subsets)
    labels = ["0"]
    for s in subsets:
        name = "e" + "".join(str(i) for i in s)
        labels.extend(("+" + name, "-" + name))
    system = system_from_callable(3, m, mu, labels=labels)

    negation = [0]
    for j in range(len(subsets)):
        negation.extend((2 + 2 * j, 1 + 2 * j))
    support = [frozenset()]
    for s in subsets:
        support.extend((frozenset(s), frozenset(s)))
    meta = GrassmannMeta(n_generators, tuple(negation), tuple(support))
    return system, meta


# The heteromorphism Phi(alpha, beta) = alpha . beta lands in the EVEN part:
# {0} union {+-e_S : S even-size (possibly empty) subset}, which is closed
# under both the binary product with odd args and its own ternary product.


def grassmann_even_carrier(n_generators: int):
    subsets = []
    for size in range(0, n_generators + 1, 2):
        subsets.extend(itertools.combinations(range(1, n_generators + 1), size))
    subsets.sort(key=lambda s: (len(s), s))
    return subsets


def grassmann_even_system(n_generators: int = 3) -> tuple[PolyadicSystem, GrassmannMeta]:
    """Even signed monomials as a ternary semigroup under the triple product."""
    subsets = grassmann_even_carrier(n_generators)
    index_of = {s: j for j, s in enumerate(subsets)}

    def decode(g: int):
        if g == 0:
            return None
        j, sign_bit = divmod(g - 1, 2)
        return (1 if sign_bit == 0 else -1), subsets[j]

    def encode(x) -> int:
        if x is None:
            return 0
        sign, s = x
        return 1 + 2 * index_of[s] + (0 if sign == 1 else 1)

    def wedge(x, y):
        if x is None or y is None:
            return None
        sx, ax = x
        sy, ay = y
        if set(ax) & set(ay):
            return None
        return sx * sy * _merge_sign(ax, ay), tuple(sorted(ax + ay))

    def mu(g, h, u):
        return encode(wedge(wedge(decode(g), decode(h)), decode(u)))

    m = 1 + 2 * len(subsets)
    labels = ["0"]
    for s in subsets:
        name = "e" + "".join(str(i) for i in s) if s else "1"
        labels.extend(("+" + name, "-" + name))
    system = system_from_callable(3, m, mu, labels=labels)
    negation = [0]
    for j in range(len(subsets)):
        negation.extend((2 + 2 * j, 1 + 2 * j))
    support = [frozenset()]
    for s in subsets:
        support.extend((frozenset(s), frozenset(s)))
    meta = GrassmannMeta(n_generators, tuple(negation), tuple(support))
    return system, meta


def grassmann_phi_table(n_generators: int = 3) -> tuple[int, ...]:
    """Dense table of Phi(alpha, beta) = alpha . beta as target indices.

    Source = grassmann_odd carrier (size m), target = grassmann_even
    carrier; entry order is lexicographic over (alpha, beta).
    """
    odd_subsets = _odd_subsets(n_generators)
    even_subsets = grassmann_even_carrier(n_generators)
    even_index = {s: j for j, s in enumerate(even_subsets)}

    def decode_odd(g: int):
        if g == 0:
            return None
        j, sign_bit = divmod(g - 1, 2)
        return (1 if sign_bit == 0 else -1), odd_subsets[j]

    def encode_even(x) -> int:
        if x is None:
            return 0
        sign, s = x
        return 1 + 2 * even_index[s] + (0 if sign == 1 else 1)

    m = 1 + 2 * len(odd_subsets)
    table = []
    for g in range(m):
        for h in range(m):
            x, y = decode_odd(g), decode_odd(h)
            if x is None or y is None:
                table.append(0)
                continue
            sx, ax = x
            sy, ay = y
            if set(ax) & set(ay):
                table.append(0)
            else:
                table.append(
                    encode_even((sx * sy * _merge_sign(ax, ay), tuple(sorted(ax + ay))))
                )
    return tuple(table)


# ---------------------------------------------------------------------------
# Named registry for the CLI


def _grassmann3_system() -> PolyadicSystem:
    return grassmann_odd(3)[0]


FIXTURES = {
    "z3-ternary": z3_ternary,
    "z4-ternary": z4_ternary,
    "antidiagonal-gf3": antidiagonal_gf3,
    "grassmann3-odd": _grassmann3_system,
    "z2-5ary-alt": zm_5ary_alternating,
}

_CYCLIC_RE = re.compile(r"^z(\d+)-(\d+)ary-derived$")


def fixture_by_name(name: str) -> PolyadicSystem:
    """Look up a named fixture; zM-Nary-derived builds the cyclic family."""
    if name in FIXTURES:
        return FIXTURES[name]()
    match = _CYCLIC_RE.match(name)
    if match:
        m, n = int(match.group(1)), int(match.group(2))
        if m < 1 or n < 2:
            raise KeyError(name)
        return derived_from_cyclic(m, n)
    raise KeyError(name)


def fixture_names() -> list[str]:
    return sorted(FIXTURES) + ["zM-Nary-derived (e.g. z5-4ary-derived)"]
