"""Group-flavoured machinery: querelements, polyadic powers (including
negative ones), iterated querelements, Heine numbers, and the Doernte
relations.

Conventions: g^<0> = g, and g^<ell> is the long product of ell*(n-1)+1
copies of g.  The querelement of g is the unique h making the polyad of
n-1 copies of g with h inserted return g at EVERY insertion position.
The k-fold querelement satisfies the Heine-number identity

    quer^k(g) = g^< -[[k]]_q >   with q = 2 - n,

where [[k]]_q = (q^k - 1)/(q - 1) (so [[k]]_1 = k) — exponents may come
out negative, in which case the right side is an ordinary positive power.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .core import PolyadicSystem, evaluate
from .properties import Check


def querelement(system: PolyadicSystem, g: int) -> int | None:
    """The h with mu[g..g, h at i, g..g] = g for every position i, or None
    when no (single) such h exists."""
    op = system.op
    n, m = op.arity, op.size
    found = None
    for h in range(m):
        if all(
            evaluate(op, (g,) * i + (h,) + (g,) * (n - 1 - i)) == g
            for i in range(n)
        ):
            if found is not None:
                return None  # not unique
            found = h
    return found


@dataclass(frozen=True)
class QuerTable:
    system: PolyadicSystem
    table: tuple[int, ...]

    def __getitem__(self, g: int) -> int:
        return self.table[g]


def quer_table(system: PolyadicSystem) -> QuerTable:
    quers = []
    for g in range(system.size):
        q = querelement(system, g)
        if q is None:
            raise ValueError(f"element {g} has no querelement")
        quers.append(q)
    return QuerTable(system, tuple(quers))


def polyadic_power(system: PolyadicSystem, g: int, ell: int) -> int:
    """g^<ell> for ell >= 0: the ell-fold long product of copies of g."""
    if ell < 0:
        raise ValueError("use signed_power for negative exponents")
    op = system.op
    n = op.arity
    value = g
    for _ in range(ell):
        value = evaluate(op, (value,) + (g,) * (n - 1))
    return value


def signed_power(system: PolyadicSystem, g: int, ell: int) -> int:
    """g^<ell> for any integer ell.  For ell < 0, g^<-k> is the unique x
    with mu[g^<k-1>, g, ..., g, x] = g (scanned exhaustively)."""
    if ell >= 0:
        return polyadic_power(system, g, ell)
    op = system.op
    n, m = op.arity, op.size
    k = -ell
    head = polyadic_power(system, g, k - 1)
    prefix = (head,) + (g,) * (n - 2)
    solutions = [x for x in range(m) if evaluate(op, prefix + (x,)) == g]
    if len(solutions) != 1:
        raise ValueError(
            f"negative power g^<{ell}> undefined: {len(solutions)} solutions"
        )
    return solutions[0]


def querpower(system: PolyadicSystem, g: int, k: int) -> int:
    """The k-fold querelement; k = 0 returns g."""
    if k < 0:
        raise ValueError("querpower needs k >= 0")
    value = g
    for _ in range(k):
        q = querelement(system, value)
        if q is None:
            raise ValueError(f"element {value} has no querelement")
        value = q
    return value


def heine(k: int, q) -> Fraction:
    """Heine number [[k]]_q = (q^k - 1)/(q - 1), exactly; [[k]]_1 = k."""
    if k < 0:
        raise ValueError("heine needs k >= 0")
    q = Fraction(q)
    if q == 1:
        return Fraction(k)
    return (q**k - 1) / (q - 1)


def querpower_heine_check(system: PolyadicSystem, g: int, k: int) -> bool:
    """quer^k(g) == g^< -[[k]]_{2-n} >, both sides computed independently."""
    e = heine(k, 2 - system.arity)
    if e.denominator != 1:
        raise ValueError("Heine exponent is not an integer")
    return querpower(system, g, k) == signed_power(system, g, -int(e))


def check_dornte(system: PolyadicSystem) -> Check:
    """Doernte relations: with n_{h;i} the (n-1)-polyad of copies of h
    carrying quer(h) at position i, mu[g, n_{h;i}] = mu[n_{h;i}, g] = g
    for all g, h, i.  Witness: (g, h, i, side, value)."""
    op = system.op
    n, m = op.arity, op.size
    for h in range(m):
        hq = querelement(system, h)
        if hq is None:
            return Check(False, (None, h, None, "no querelement", None))
        for i in range(n - 1):
            polyad = (h,) * i + (hq,) + (h,) * (n - 2 - i)
            for g in range(m):
                right = evaluate(op, (g,) + polyad)
                if right != g:
                    return Check(False, (g, h, i, "append", right))
                left = evaluate(op, polyad + (g,))
                if left != g:
                    return Check(False, (g, h, i, "prepend", left))
    return Check(True)


def quer_square_is_power(system: PolyadicSystem) -> bool:
    """quer(quer(g)) == g^<n-3> for every g (the k = 2 Heine instance)."""
    return all(
        querpower(system, g, 2) == polyadic_power(system, g, system.arity - 3)
        for g in range(system.size)
    )
