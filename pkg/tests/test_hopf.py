"""Ternary Hopf structures: exact scalars, axiom checks, solved antipodes,
Nambu brackets, fiveangular laws, and the polytns format.

Oracles derived by hand before running anything:

* Sweedler algebra on {1, x, y, xy} (indices 0..3), relations x^2 = 1,
  y^2 = 0, yx = -xy.  Products: x(xy) = y, (xy)x = x(yx) = -xy x... direct
  expansion gives (xy)x = -y, (xy)y = x y^2 = 0, y(xy) = (yx)y = -x y^2 = 0,
  (xy)(xy) = ((xy)x)y = -y y = 0.  Coproducts: delta2(xy) = delta2(x)
  delta2(y) = (x (x) x)(y (x) x + 1 (x) y) = xy (x) 1 + x (x) xy.
* Derived ternary coproduct (id (x) delta2) delta2:
  delta3(y) = y (x) x (x) x + 1 (x) y (x) x + 1 (x) 1 (x) y,
  delta3(xy) = xy (x) 1 (x) 1 + x (x) xy (x) 1 + x (x) x (x) xy.
* Skew antipode solved placement by placement.  Left placement at x:
  [S(x) x x] = S(x) x^2 = S(x) = x forces S(x) = x; at y:
  S(y) x^2 + yx + y = y forces S(y) = -yx = +xy; at xy:
  S(xy) + x(xy) + (xx)(xy) = xy forces S(xy) = xy - y - xy = -y.  The
  middle and right placements hold for that same matrix (checked by hand
  at y and xy), so the stacked system is consistent and the solution
  unique.  The naive guess S(y) = -y fails the left placement at y:
  -y x^2 + yx + y = -xy, witness ("left", 2, (0, 0, 0, -1)).
* Cyclic group algebras.  For mu = a+b+c mod 3 the basis unit is e0
  (0+0+x = x in all placements) and quer(a) = -a, so S swaps 1 and 2;
  conv(S, id, id)(e_a) = mu(-a, a, a) = e_a gives the identity matrix,
  while conv(id, id, id)(e_a) = e_{3a mod 3} = e_0 puts every column on
  e_0.  For mu = a+b+c+1 mod 4 no basis element is a strong unit
  (2u+1 = 0 mod 4 has no solution) and the first sequential pair is
  (e_0, e_3); quer(a) = -a-1 = 3-a.  For mu = a-b+c mod 3 NO unit data
  exists at all ([u, x, u] = 2u - x is never x identically) yet quer = id
  still passes all three skew placements since a - a + a = a.
* Function algebras.  The evaluation counit at g0 needs (g0, g0) neutral
  in all three placements: works for mu = a+b+c mod 3 at g0 = 0; at
  g0 = 1 the front placement gives phi_{a-2}, failing at a = 0 with
  phi_1.  For mu = a+b+c+1 mod 4 evaluation at 0 fails front with
  phi_{a-1} (a = 0 gives phi_3) while the sequential pair (0, 3) passes.
* Shift coalgebra delta(e_a) = e_a (x) e_a (x) e_{a+1} on three basis
  vectors: first leg lands on (a, a, a+1, a, a+1), middle leg on
  (a, a, a, a+1, a+1), so standard coassociativity fails at a = 0 with
  key (0, 0, 0, 1, 1); permuting the inner expansion by (0, 2, 1) or the
  five positions by (0, 1, 3, 2, 4) repairs it.  The full shift
  delta(e_a) = e_a (x) e_{a+1} (x) e_{a+2} fails every sigma variant.
* Antidiagonal span {E12, E21}: only [E12 E21 E12] = E12 and
  [E21 E12 E21] = E21 survive.  Triple products of matrix units make it
  associative; pair products leave the span, but the abstract binary
  product u*v = v, v*u = u, u*u = v*v = 0 derives it exactly — the
  lexicographically first GF(3) witness is ((0,0),(0,1),(1,0),(0,0)).
  Its Nambu bracket vanishes identically (each orbit term cancels
  pairwise), so it is abelian and q-deformed only at q = 1.
* 2x2 matrix units: bracket [E11, E12, E21]_N = [E11 E12 E21]
  + [E12 E21 E11] + [E21 E11 E12] - 0 - 0 - 0 = E11 + E11 + E22, so the
  first abelian-scan witness is ((0, 1, 2), (2, 0, 0, 1)).
* Unit-padded R = e (x) e (x) e over a group algebra places to the
  group-like power e^(x)5 on both sides of every fiveangular law, so all
  residuals are exactly zero.  Random GF(3) tensors over the derived
  two-element group algebra violate the fiveangular equation 94 times
  out of 100 at seed 0 (frozen after one run; the test bound is >= 1).
"""

import itertools
from fractions import Fraction

import pytest

from polyadika.core import BudgetExceeded, FormatError
from polyadika.fixtures import (
    derived_from_cyclic,
    left_zero_band,
    left_zero_monoid,
    z3_ternary,
    z4_ternary,
)
from polyadika.hopf import (
    RATIONALS,
    Field,
    PolytnsData,
    TernaryAlgebra,
    TernaryBialgebra,
    TernaryCoalgebra,
    algebra_from_polytns,
    antidiagonal_ternary_algebra,
    basis_vector,
    binary_sweedler,
    check_abelian,
    check_antipode,
    check_bialgebra,
    check_coassociativity,
    check_counits,
    check_q_deformed,
    check_quasifiveangular,
    check_ternary_associativity,
    check_ternary_ybe,
    check_units,
    classify_derivedness,
    coalgebra_from_polytns,
    convolution,
    delta3_derived_from,
    derived_ternary_sweedler,
    dual_numbers_ternary,
    find_strong_unit,
    function_algebra,
    gf,
    group_algebra,
    group_like_basis,
    is_group_like,
    matrix_inverse,
    matrix_ternary_algebra,
    mu3_derived_from,
    mu_omega_consistency,
    nambu_bracket,
    nambu_maps,
    place_r,
    primitive_coproduct_check,
    random_ybe_failures,
    read_polytns,
    sl_n_ternary_coproduct,
    solve_linear,
    solve_skew_antipode,
    ternary_sweedler_report,
    ternary_tensor_algebra,
    vector,
    woronowicz_ternary_check,
    write_polytns,
)

GF3 = gf(3)

# solved Sweedler skew antipode: S(1)=1, S(x)=x, S(y)=xy, S(xy)=-y
SWEEDLER_S = (
    (1, 0, 0, 0),
    (0, 1, 0, 0),
    (0, 0, 0, -1),
    (0, 0, 1, 0),
)

# first-lex binary origin of the antidiagonal span over GF(3)
ANTI_MU2_WITNESS = ((0, 0), (0, 1), (1, 0), (0, 0))


def ident(d, field=RATIONALS):
    return tuple(tuple(field.one if i == j else field.zero for j in range(d)) for i in range(d))


def shift_coalgebra(step2: int):
    # delta(e_a) = e_a (x) e_{a+step2... } on three basis vectors:
    # step2=0 gives the diagonal-shift a,a,a+1; step2=1 the full shift
    rows = []
    for a in range(3):
        t = [Fraction(0)] * 27
        if step2 == 0:
            t[(a * 3 + a) * 3 + (a + 1) % 3] = Fraction(1)
        else:
            t[(a * 3 + (a + 1) % 3) * 3 + (a + 2) % 3] = Fraction(1)
        rows.append(tuple(t))
    return TernaryCoalgebra(RATIONALS, 3, tuple(rows))


def test_field_arithmetic():
    assert RATIONALS.normalize(3) == Fraction(3)
    assert RATIONALS.inv(Fraction(2, 3)) == Fraction(3, 2)
    assert RATIONALS.sub(RATIONALS.zero, RATIONALS.one) == Fraction(-1)
    f5 = gf(5)
    assert f5.normalize(-1) == 4
    assert f5.mul(3, 4) == 2
    assert f5.inv(2) == 3
    with pytest.raises(ValueError, match="not prime"):
        gf(9)
    with pytest.raises(ZeroDivisionError):
        f5.inv(0)


def test_solve_linear_and_inverse():
    f5 = gf(5)
    sol, unique = solve_linear(f5, [[1, 1], [0, 1]], [3, 2])
    assert sol == (1, 2) and unique
    # underdetermined: x + y = 1 -> particular solution, not unique
    sol, unique = solve_linear(RATIONALS, [[1, 1]], [Fraction(1)])
    assert not unique and sum(sol) == 1
    # inconsistent
    sol, unique = solve_linear(RATIONALS, [[1], [1]], [Fraction(1), Fraction(2)])
    assert sol is None and not unique
    assert matrix_inverse(f5, ((1, 1), (0, 1))) == ((1, 4), (0, 1))
    with pytest.raises(ValueError, match="singular sample matrix"):
        matrix_inverse(f5, ((1, 1), (1, 1)))


def test_structure_validation():
    f = RATIONALS
    good = tuple((f.zero, f.zero) for _ in range(8))
    with pytest.raises(ValueError, match="one vector per basis triple"):
        TernaryAlgebra(f, 2, good[:7])
    with pytest.raises(ValueError, match="length dim"):
        TernaryAlgebra(f, 2, tuple((f.zero,) for _ in range(8)))
    with pytest.raises(ValueError, match="one label per basis"):
        TernaryAlgebra(f, 2, good, labels=("a",))
    with pytest.raises(ValueError, match="one tensor per basis"):
        TernaryCoalgebra(f, 2, (tuple([f.zero] * 8),))
    with pytest.raises(ValueError, match="unknown counit kind"):
        TernaryCoalgebra(f, 2, tuple(tuple([f.zero] * 8) for _ in range(2)),
                         counit=("weird", (f.one, f.one)))
    with pytest.raises(ValueError, match="covectors must have length"):
        TernaryCoalgebra(f, 2, tuple(tuple([f.zero] * 8) for _ in range(2)),
                         counit=("strong", (f.one,)))
    alg = TernaryAlgebra(f, 2, good)
    coalg3 = TernaryCoalgebra(f, 3, tuple(tuple([f.zero] * 27) for _ in range(3)))
    with pytest.raises(ValueError, match="dimensions differ"):
        TernaryBialgebra(alg, coalg3)
    coalg_gf = TernaryCoalgebra(GF3, 2, tuple(tuple([0] * 8) for _ in range(2)))
    with pytest.raises(ValueError, match="fields differ"):
        TernaryBialgebra(alg, coalg_gf)
    coalg = TernaryCoalgebra(f, 2, tuple(tuple([f.zero] * 8) for _ in range(2)))
    with pytest.raises(ValueError, match="dim x dim"):
        TernaryBialgebra(alg, coalg, antipode=((f.one,),))


def test_sweedler_structure_constants_frozen():
    tern = derived_ternary_sweedler()
    alg, coalg = tern.algebra, tern.coalgebra
    e = lambda i: basis_vector(RATIONALS, 4, i)
    neg = lambda v: tuple(-c for c in v)
    # [y x x] = y x^2 = y and [x y x] = (xy)x = -y
    assert alg.product_basis(2, 1, 1) == e(2)
    assert alg.product_basis(1, 2, 1) == neg(e(2))
    # [x x y] = y, [y y anything] = 0, [x y y] = x y^2 = 0
    assert alg.product_basis(1, 1, 2) == e(2)
    assert alg.product_basis(2, 2, 0) == (0, 0, 0, 0)
    assert alg.product_basis(1, 2, 2) == (0, 0, 0, 0)
    # [x x xy] = xy and [xy x 1] = -y
    assert alg.product_basis(1, 1, 3) == e(3)
    assert alg.product_basis(3, 1, 0) == neg(e(2))
    assert coalg.terms(1) == {(1, 1, 1): Fraction(1)}
    assert coalg.terms(2) == {(2, 1, 1): Fraction(1), (0, 2, 1): Fraction(1), (0, 0, 2): Fraction(1)}
    assert coalg.terms(3) == {(3, 0, 0): Fraction(1), (1, 3, 0): Fraction(1), (1, 1, 3): Fraction(1)}


def test_sweedler_report():
    rep = ternary_sweedler_report()
    assert rep["associativity"].ok
    assert rep["unit"].ok
    assert rep["coassociativity"].ok
    assert rep["counit"].ok
    assert rep["compatibility"].ok
    assert rep["antipode_solved"] == SWEEDLER_S
    assert rep["antipode_unique"]
    assert rep["antipode_check"].ok
    assert rep["s_y"] == (0, 0, 0, 1)  # S(y) = +xy
    # the naive candidate S(y) = -y is recorded as failing, with the
    # placement named and the residual -xy
    naive = rep["s_y_minus_y_satisfies"]
    assert not naive.ok
    assert naive.witness == ("left", 2, (0, 0, 0, -1))


def test_sweedler_solved_antipode_equals_binary_antipode():
    b = binary_sweedler()
    tern = derived_ternary_sweedler()
    solved, unique = solve_skew_antipode(tern)
    assert unique and solved == b.antipode == SWEEDLER_S


def test_sweedler_strong_antipode():
    b = binary_sweedler()
    tern = derived_ternary_sweedler()
    unit = basis_vector(RATIONALS, 4, 0)
    assert check_antipode(tern, s=b.antipode, variant="strong", mu2=b.mu2, unit=unit).ok
    bad = check_antipode(tern, s=ident(4), variant="strong", mu2=b.mu2, unit=unit)
    assert not bad.ok and bad.witness[0] == "left-pair"
    with pytest.raises(ValueError, match="needs mu2 and the unit"):
        check_antipode(tern, s=b.antipode, variant="strong")
    with pytest.raises(ValueError, match="unknown antipode variant"):
        check_antipode(tern, s=b.antipode, variant="weird")
    with pytest.raises(ValueError, match="no antipode given"):
        check_antipode(tern)


def test_derived_builders_match_hand_expansion():
    b = binary_sweedler()
    mu3 = mu3_derived_from(b.field, b.dim, b.mu2)
    delta3 = delta3_derived_from(b.field, b.dim, b.delta2)
    tern = derived_ternary_sweedler()
    assert mu3 == tern.algebra.mu3
    assert delta3 == tern.coalgebra.delta3
    report = classify_derivedness(tern, mu2=b.mu2, delta2=b.delta2)
    assert report == {"mu_derived": True, "delta_derived": True, "derived": True}
    # a wrong binary candidate is rejected, not absorbed
    wrong = tuple(b.mu2[0] for _ in range(16))
    assert classify_derivedness(tern, mu2=wrong, delta2=b.delta2)["mu_derived"] is False


def test_group_algebra_cyclic3():
    kz3 = group_algebra(derived_from_cyclic(3, 3))
    assert kz3.algebra.unit == (1, 0, 0)
    assert check_ternary_associativity(kz3.algebra).ok
    assert check_units(kz3.algebra).ok
    assert check_coassociativity(kz3.coalgebra).ok
    assert check_counits(kz3.coalgebra).ok
    assert check_bialgebra(kz3).ok
    assert check_antipode(kz3).ok
    # quer(a) = -a mod 3: S fixes 0 and swaps 1, 2
    assert kz3.antipode == ((1, 0, 0), (0, 0, 1), (0, 1, 0))
    solved, unique = solve_skew_antipode(kz3)
    assert unique and solved == kz3.antipode


def test_group_algebra_z4_sequential_units():
    kz4 = group_algebra(z4_ternary())
    assert kz4.algebra.unit is None
    e = lambda i: basis_vector(RATIONALS, 4, i)
    assert kz4.algebra.sequential_units == (e(0), e(3))
    assert check_units(kz4.algebra).ok
    assert check_bialgebra(kz4).ok
    assert check_antipode(kz4).ok
    # quer(a) = 3 - a: the antidiagonal permutation
    assert kz4.antipode == tuple(tuple(int(r + c == 3) for c in range(4)) for r in range(4))


def test_group_algebra_heteroassociative_unit_gap():
    # mu = a-b+c admits no 3-placement unit data at all, but quer = id
    # still satisfies every skew placement
    kz3t = group_algebra(z3_ternary())
    assert kz3t.algebra.unit is None
    assert kz3t.algebra.sequential_units is None
    assert kz3t.antipode == ident(3)
    assert check_antipode(kz3t).ok
    assert check_bialgebra(kz3t).ok
    with pytest.raises(ValueError, match="no unit data declared"):
        check_units(kz3t.algebra)


def test_group_algebra_rejections():
    with pytest.raises(ValueError, match="ternary operations"):
        group_algebra(left_zero_band())
    with pytest.raises(ValueError, match="no querelement"):
        group_algebra(left_zero_monoid(3))


def test_function_algebra_cyclic3():
    fz3 = function_algebra(derived_from_cyclic(3, 3), counit=("evaluation", 0))
    assert check_ternary_associativity(fz3.algebra).ok
    assert fz3.algebra.unit == (1, 1, 1)  # the constant function 1
    assert check_units(fz3.algebra).ok
    assert check_coassociativity(fz3.coalgebra).ok
    assert check_counits(fz3.coalgebra).ok
    assert check_bialgebra(fz3).ok
    assert check_antipode(fz3).ok


def test_function_algebra_counit_selectors():
    bad1 = function_algebra(derived_from_cyclic(3, 3), counit=("evaluation", 1))
    got = check_counits(bad1.coalgebra)
    assert not got.ok and got.witness == ("front", 0, (0, 1, 0))
    bad4 = function_algebra(z4_ternary(), counit=("evaluation", 0))
    got = check_counits(bad4.coalgebra)
    assert not got.ok and got.witness == ("front", 0, (0, 0, 0, 1))
    fz4 = function_algebra(z4_ternary(), counit=("sequential", 0, 3))
    assert check_counits(fz4.coalgebra).ok
    assert check_bialgebra(fz4).ok
    assert check_antipode(fz4).ok
    solved, unique = solve_skew_antipode(fz4)
    assert unique and solved == fz4.antipode
    with pytest.raises(ValueError, match="unknown counit selector"):
        function_algebra(z4_ternary(), counit=("weird", 0))
    with pytest.raises(ValueError, match="outside the carrier"):
        function_algebra(z4_ternary(), counit=("evaluation", 7))


def test_associativity_witness_and_budget():
    m2 = matrix_ternary_algebra(2)
    assert check_ternary_associativity(m2).ok
    # perturb one entry: [E11 E11 E11] -> E12 breaks placement comparison
    mu3 = list(m2.mu3)
    mu3[0] = basis_vector(RATIONALS, 4, 1)
    crooked = TernaryAlgebra(RATIONALS, 4, tuple(mu3))
    got = check_ternary_associativity(crooked)
    assert not got.ok
    polyad, first_placement, v0, placement, vi = got.witness
    assert first_placement == 0 and placement in (1, 2) and v0 != vi
    with pytest.raises(BudgetExceeded):
        check_ternary_associativity(m2, budget=10)


def test_unit_checks_and_search():
    assert check_units(matrix_ternary_algebra(2)).ok
    assert check_units(dual_numbers_ternary()).ok
    anti = antidiagonal_ternary_algebra()
    assert find_strong_unit(anti, height=2) is None
    assert find_strong_unit(antidiagonal_ternary_algebra(GF3)) is None
    # the rational grid scans lexicographically from -height, and -e0 is a
    # genuine strong unit too (the two sign flips cancel), so it wins
    kz3 = group_algebra(derived_from_cyclic(3, 3))
    assert find_strong_unit(kz3.algebra) == (-1, 0, 0)
    assert find_strong_unit(group_algebra(derived_from_cyclic(3, 3), GF3).algebra) == (1, 0, 0)
    with pytest.raises(ValueError, match="no unit data declared"):
        check_units(antidiagonal_ternary_algebra())
    with pytest.raises(BudgetExceeded):
        find_strong_unit(antidiagonal_ternary_algebra(GF3), budget=2)


def test_coassociativity_variants():
    diag = shift_coalgebra(0)
    got = check_coassociativity(diag)
    assert not got.ok
    assert got.witness == (0, (0, 0, 0, 1, 1), Fraction(0), Fraction(1))
    assert check_coassociativity(diag, ("sigma", (0, 2, 1))).ok
    assert not check_coassociativity(diag, ("sigma", (0, 1, 2))).ok
    assert check_coassociativity(diag, ("perm", (0, 1, 3, 2, 4))).ok
    assert not check_coassociativity(diag, ("perm", (0, 1, 2, 3, 4))).ok
    full = shift_coalgebra(1)
    assert not check_coassociativity(full).ok
    assert all(
        not check_coassociativity(full, ("sigma", s)).ok
        for s in itertools.permutations(range(3))
    )
    with pytest.raises(ValueError, match="unknown coassociativity variant"):
        check_coassociativity(diag, "diagonal")
    with pytest.raises(BudgetExceeded):
        check_coassociativity(diag, budget=10)
    with pytest.raises(ValueError, match="no counit data declared"):
        check_counits(diag)


def test_convolution_on_group_algebra():
    kz3 = group_algebra(derived_from_cyclic(3, 3))
    assert convolution(kz3.antipode, ident(3), ident(3), kz3.algebra, kz3.coalgebra) == ident(3)
    # conv(id, id, id)(e_a) = e_{3a mod 3} = e_0 for every a
    expected = ((1, 1, 1), (0, 0, 0), (0, 0, 0))
    assert convolution(ident(3), ident(3), ident(3), kz3.algebra, kz3.coalgebra) == expected
    with pytest.raises(ValueError, match="algebra_dim x coalgebra_dim"):
        convolution(ident(2), ident(3), ident(3), kz3.algebra, kz3.coalgebra)


def test_bialgebra_compatibility_witness():
    # under a group-like coproduct, any basis-valued product is compatible:
    # delta(e_m) = e_m^(x)3 on both sides.  A product value with TWO terms
    # breaks it: delta(e0 + e1) = e0^3 + e1^3 but the componentwise side
    # expands to the full cube (e0 + e1)^(x)3 with eight terms.
    f = RATIONALS
    delta3 = []
    for a in range(2):
        t = [f.zero] * 8
        t[(a * 2 + a) * 2 + a] = f.one
        delta3.append(tuple(t))
    coalg = TernaryCoalgebra(f, 2, tuple(delta3))
    mu3 = [basis_vector(f, 2, 0) for _ in range(8)]
    alg = TernaryAlgebra(f, 2, tuple(mu3))
    assert check_bialgebra(TernaryBialgebra(alg, coalg)).ok
    mu3[7] = vector(f, (1, 1))  # [e1 e1 e1] = e0 + e1
    got = check_bialgebra(TernaryBialgebra(TernaryAlgebra(f, 2, tuple(mu3)), coalg))
    assert not got.ok
    triple, key, lhs, rhs = got.witness
    assert triple == (1, 1, 1) and lhs != rhs
    with pytest.raises(BudgetExceeded):
        check_bialgebra(TernaryBialgebra(alg, coalg), budget=3)


def test_antipode_placement_witnesses():
    kz3 = group_algebra(derived_from_cyclic(3, 3))
    bad = check_antipode(kz3, s=ident(3))
    assert not bad.ok
    # [id(e1) e1 e1] = e_{3 mod 3} = e_0 != e_1, reported on the left placement
    assert bad.witness == ("left", 1, (1, 0, 0))


def test_solve_antipode_nonexistent():
    # the zero product admits no skew antipode over a group-like coproduct
    f = RATIONALS
    zero_mu = tuple(tuple([f.zero] * 2) for _ in range(8))
    delta3 = []
    for a in range(2):
        t = [f.zero] * 8
        t[(a * 2 + a) * 2 + a] = f.one
        delta3.append(tuple(t))
    bialg = TernaryBialgebra(
        TernaryAlgebra(f, 2, zero_mu), TernaryCoalgebra(f, 2, tuple(delta3))
    )
    solution, unique = solve_skew_antipode(bialg)
    assert solution is None and not unique


def test_antidiagonal_algebra():
    anti = antidiagonal_ternary_algebra()
    assert check_ternary_associativity(anti).ok
    assert anti.product_basis(0, 1, 0) == (1, 0)
    assert anti.product_basis(1, 0, 1) == (0, 1)
    assert sum(1 for t in anti.mu3 if any(t)) == 2
    assert check_abelian(anti).ok
    assert check_q_deformed(anti, 1).ok
    got = check_q_deformed(antidiagonal_ternary_algebra(GF3), 2)
    assert not got.ok and got.witness == ((0, 0, 1), (1, 0), (2, 0))
    assert nambu_bracket(anti, (1, 0), (1, 0), (0, 1)) == (0, 0)
    assert mu_omega_consistency(anti).ok


def test_antidiagonal_derivedness():
    # exhaustive GF(3) search finds the abstract binary origin
    # u*v = v, v*u = u, u*u = v*v = 0 (first in coefficient lex order);
    # over the rationals the search space is infinite, reported as None
    report = classify_derivedness(antidiagonal_ternary_algebra(GF3))
    assert report["mu_derived"] is True
    assert report["mu2_witness"] == ANTI_MU2_WITNESS
    assert report["derived"] is True
    assert mu3_derived_from(GF3, 2, ANTI_MU2_WITNESS) == antidiagonal_ternary_algebra(GF3).mu3
    report_q = classify_derivedness(antidiagonal_ternary_algebra())
    assert report_q == {"mu_derived": None, "derived": None}
    with pytest.raises(ValueError, match="no coalgebra"):
        classify_derivedness(antidiagonal_ternary_algebra(), delta2=((1, 0, 0, 0),) * 2)


def test_group_like():
    kz3 = group_algebra(derived_from_cyclic(3, 3))
    assert group_like_basis(kz3.coalgebra) == (0, 1, 2)
    tern = derived_ternary_sweedler()
    assert group_like_basis(tern.coalgebra) == (0, 1)  # 1 and x
    assert is_group_like(tern.coalgebra, basis_vector(RATIONALS, 4, 1))
    assert not is_group_like(tern.coalgebra, basis_vector(RATIONALS, 4, 2))


def test_primitive_coproduct_matrix_units():
    m2 = matrix_ternary_algebra(2)
    e1 = basis_vector(RATIONALS, 4, 0)  # E11
    e2 = basis_vector(RATIONALS, 4, 3)  # E22
    span = [basis_vector(RATIONALS, 4, 1), basis_vector(RATIONALS, 4, 2)]
    assert primitive_coproduct_check(m2, e1, e2, span).ok
    # non-idempotent second unit
    got = primitive_coproduct_check(m2, e1, vector(RATIONALS, (0, 0, 0, 2)), span)
    assert got.witness == ("idempotent",)
    # e2 = e1 breaks semiorthogonality: [e1 e1 e1] = e1 != 0
    got = primitive_coproduct_check(m2, e1, e1, span)
    assert got.witness == ("semiorthogonal",)
    with pytest.raises(BudgetExceeded):
        primitive_coproduct_check(m2, e1, e2, span, budget=3)


def test_primitive_coproduct_span_escape():
    # a bespoke product sending the span outside itself is caught
    f = RATIONALS
    mu3 = [tuple([f.zero] * 2) for _ in range(8)]
    mu3[7] = basis_vector(f, 2, 0)  # [e1 e1 e1] = e0, escaping span {e1}
    alg = TernaryAlgebra(f, 2, tuple(mu3))
    zero = vector(f, (0, 0))
    got = primitive_coproduct_check(alg, zero, zero, [basis_vector(f, 2, 1)])
    assert not got.ok and got.witness[0] == "span"


def test_nambu_on_matrix_units():
    m2 = matrix_ternary_algebra(2)
    got = check_abelian(m2)
    assert not got.ok
    assert got.witness == ((0, 1, 2), (2, 0, 0, 1))  # [E11,E12,E21]_N = 2 E11 + E22
    assert mu_omega_consistency(m2).ok
    plus, minus, bracket = nambu_maps(m2)
    assert len(bracket) == 64
    assert bracket[(0 * 4 + 1) * 4 + 2] == (2, 0, 0, 1)
    # omega+ on a d=2 basis tensor spreads it over the cyclic orbit
    # (0,0,1) -> (0,0,1) + (1,0,0) + (0,1,0), flat positions 1, 4, 2
    plus2, minus2, _ = nambu_maps(antidiagonal_ternary_algebra())
    t = [Fraction(0)] * 8
    t[1] = Fraction(1)
    assert plus2(tuple(t)) == (0, 1, 1, 0, 1, 0, 0, 0)
    # a repeated index collapses the odd orbit onto the even one
    assert minus2(tuple(t)) == plus2(tuple(t))
    assert check_abelian(dual_numbers_ternary()).ok
    with pytest.raises(BudgetExceeded):
        check_abelian(m2, budget=5)


def test_tensor_product_algebra():
    dn = dual_numbers_ternary()
    t3 = ternary_tensor_algebra(dn, dn, dn)
    assert t3.dim == 8
    assert check_ternary_associativity(t3).ok
    with pytest.raises(ValueError, match="share one field"):
        ternary_tensor_algebra(dn, dual_numbers_ternary(GF3), dn)


def test_woronowicz_relation():
    rep = woronowicz_ternary_check()
    assert rep["q"] == 2
    assert rep["base_relation"].ok
    assert rep["coproduct_relation"].ok
    assert rep["algebra_map"].ok


def test_sl2_coproduct_samples():
    samples = [((1, 1), (0, 1)), ((2, 1), (1, 1)), ((1, 2), (3, 2))]
    reports = sl_n_ternary_coproduct(2, samples, 5)
    assert len(reports) == 3
    for rep in reports:
        assert rep["contraction"].ok
        assert rep["factorization"].ok
        assert rep["counit"].ok
    assert reports[0]["sample"] == ((1, 1), (0, 1))
    with pytest.raises(ValueError, match="singular sample matrix"):
        sl_n_ternary_coproduct(2, [((1, 1), (1, 1))], 5)
    with pytest.raises(ValueError, match="sample must be"):
        sl_n_ternary_coproduct(2, [((1, 1, 0), (0, 1, 0))], 5)


def test_fiveangular_unit_triple():
    k2 = group_algebra(derived_from_cyclic(2, 3), GF3)
    assert k2.algebra.unit == (1, 0)
    r_unit = tuple(int(i == 0) for i in range(8))
    assert check_quasifiveangular(k2, r_unit) == {"r1a": 0, "r2a": 0, "r3a": 0}
    assert check_ternary_ybe(k2.algebra, r_unit) == 0


def test_fiveangular_random_failures():
    k2 = group_algebra(derived_from_cyclic(2, 3), GF3)
    failures = random_ybe_failures(k2.algebra, count=100, seed=0)
    assert failures == 94  # frozen: deterministic for seed 0
    assert failures >= 1
    with pytest.raises(ValueError, match="prime field"):
        random_ybe_failures(antidiagonal_ternary_algebra(), count=1)


def test_place_r_validation():
    k2 = group_algebra(derived_from_cyclic(2, 3), GF3)
    r_unit = tuple(int(i == 0) for i in range(8))
    placed = place_r(k2.algebra, r_unit, (1, 4, 5))
    assert placed == {(0, 0, 0, 0, 0): 1}
    with pytest.raises(ValueError, match="three distinct slots"):
        place_r(k2.algebra, r_unit, (1, 1, 2))
    with pytest.raises(ValueError, match="three distinct slots"):
        place_r(k2.algebra, r_unit, (0, 1, 2))
    anti = antidiagonal_ternary_algebra()
    with pytest.raises(ValueError, match="needs the algebra unit"):
        place_r(anti, r_unit, (1, 2, 3))


def test_ybe_budget():
    k2 = group_algebra(derived_from_cyclic(2, 3), GF3)
    r_unit = tuple(int(i == 0) for i in range(8))
    with pytest.raises(BudgetExceeded):
        check_ternary_ybe(k2.algebra, r_unit, budget=5)
    with pytest.raises(BudgetExceeded):
        check_quasifiveangular(k2, r_unit, budget=5)


def test_polytns_roundtrip():
    data = PolytnsData(GF3, 2, {"mu3": tuple(range(16)), "unit": (1, 0)})
    text = write_polytns(data)
    assert text.splitlines()[0] == "polytns 1"
    back = read_polytns(text)
    assert back.field == GF3 and back.dim == 2
    assert back.tensors["mu3"] == tuple(i % 3 for i in range(16))
    assert back.tensors["unit"] == (1, 0)
    alg = algebra_from_polytns(back)
    assert alg.dim == 2 and alg.unit == (1, 0)
    # rationals keep exact fractions through the text form
    dq = PolytnsData(RATIONALS, 2, {"R": tuple(Fraction(i, 3) for i in range(8))})
    assert read_polytns(write_polytns(dq)).tensors["R"] == dq.tensors["R"]


def test_polytns_coalgebra_assembly():
    kz3 = group_algebra(derived_from_cyclic(3, 3))
    flat_delta = tuple(c for row in kz3.coalgebra.delta3 for c in row)
    eps = tuple(Fraction(1) for _ in range(3))
    data = PolytnsData(RATIONALS, 3, {"delta3": flat_delta, "eps": eps})
    coalg = coalgebra_from_polytns(read_polytns(write_polytns(data)))
    assert coalg.delta3 == kz3.coalgebra.delta3
    assert coalg.counit == ("strong", eps)
    assert check_counits(coalg).ok
    with pytest.raises(FormatError, match="no mu3 tensor"):
        algebra_from_polytns(data)
    with pytest.raises(FormatError, match="no delta3 tensor"):
        coalgebra_from_polytns(PolytnsData(RATIONALS, 2, {}))


def test_polytns_rejections():
    cases = [
        ("polytns 2\ndim 2\nfield Q\n", "header"),
        ("polytns 1\ndim 2\nfield F9\n", "malformed"),
        ("polytns 1\ndim 0\nfield Q\n", "positive"),
        ("polytns 1\ndim 2\nfield R\n", "unknown field"),
        ("polytns 1\ndim 2\nfield Q\ntensor mu3 2 2 2 2\n1 2 3\n", "coefficients"),
        ("polytns 1\ndim 2\nfield Q\ntensor bogus 2\n1 2\n", "unknown tensor"),
        ("polytns 1\ndim 2\nfield Q\ntensor mu3 2 2 2 3\n" + " ".join(["0"] * 16), "shape"),
        ("polytns 1\ndim 2\nfield Q\nbogus mu3\n", "expected 'tensor'"),
        ("polytns 1\ndim 2\n", "malformed"),
        ("polytns 1\ndim two\nfield Q\n", "malformed"),
    ]
    for text, match in cases:
        with pytest.raises(FormatError, match=match):
            read_polytns(text)


def test_field_equality_and_polytns_header():
    assert Field(None) == RATIONALS
    assert gf(3) == GF3
    assert write_polytns(PolytnsData(RATIONALS, 1, {})).splitlines()[2] == "field Q"
    assert write_polytns(PolytnsData(gf(7), 1, {})).splitlines()[2] == "field F7"
