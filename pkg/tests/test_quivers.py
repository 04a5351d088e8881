"""Quiver tests.  Frozen oracles, all hand-derived by expanding the
placement composites into argument-slot words:

* 4-ary, k=3, one product row with intacts h1, u2: the arrangement
  g1,h2,g2,u1 is NOT associative (placement words a e d c v u f vs
  a e d v u f c), while g1,h2,u1,g2 IS (both placements flatten to
  a e c d v f u).
* the (5,3,2) intermediate family under the normalization (monotone
  rows starting at (1,1)) is exactly the pair with product rows
  g1,h1,g2,h2,g3 (intact h3) and g1,h2,g2,h3,g3 (intact h1); the
  monotone candidate g1,h1,h2,g2,g3 (intact h3) passes every
  commutative test system yet fails word associativity.
* on the left-zero monoid {e, x, y} every word evaluates to its first
  non-identity letter, which makes the exhaustive scan an exact decision
  procedure for word-level associativity; the word test must agree.
"""

import itertools

import pytest

from polyadika import BudgetExceeded
from polyadika.fixtures import (
    derived_from_cyclic,
    left_zero_monoid,
    sym3_derived,
    truncated_free_monoid,
    z3_ternary,
    z4_ternary,
)
from polyadika.core import FormatError, lex_index, lex_polyad
from polyadika.morphisms import HeteroShape, map_from_callable, verify_heteromorphism
from polyadika.properties import is_totally_associative
from polyadika.quivers import (
    Quiver,
    dumps_quiver,
    generate_quivers,
    induced_tuple_operation,
    is_associative_quiver,
    is_word_associative,
    load_quiver,
    loads_quiver,
    quiver_to_shape,
    save_quiver,
    standard_test_systems,
    word_refutation,
)

# the non-associative / associative 4-ary arrangements sharing one shape
QV_BAD_4 = Quiver(4, 3, (((1, 1), (2, 2), (1, 2), (3, 1)),), ((2, 1), (3, 2)))
QV_GOOD_4 = Quiver(4, 3, (((1, 1), (2, 2), (3, 1), (1, 2)),), ((2, 1), (3, 2)))

VERTICAL_33 = Quiver(3, 2, (((1, 1), (1, 2), (1, 3)), ((2, 1), (2, 2), (2, 3))))
VERTICAL_33_REV = Quiver(3, 2, (((1, 1), (1, 2), (1, 3)), ((2, 3), (2, 2), (2, 1))))
POST_33 = Quiver(3, 2, (((1, 1), (2, 2), (1, 3)), ((2, 1), (1, 2), (2, 3))))

INTER_53_A = Quiver(5, 2, (((1, 1), (2, 1), (1, 2), (2, 2), (1, 3)),), ((2, 3),))
INTER_53_B = Quiver(5, 2, (((1, 1), (2, 2), (1, 2), (2, 3), (1, 3)),), ((2, 1),))
INTER_53_OVERACCEPTED = Quiver(
    5, 2, (((1, 1), (2, 1), (2, 2), (1, 2), (1, 3)),), ((2, 3),)
)


def evaluate_placement(quiver, system, args, placement):
    """Composite of two quiver applications with the inner at `placement`."""
    from polyadika.quivers import _apply_cells

    np_ = quiver.n_prime
    inner = _apply_cells(quiver, system, args[placement : placement + np_])
    outer_args = list(args[:placement]) + [inner] + list(args[placement + np_ :])
    return _apply_cells(quiver, system, outer_args)


def test_quiver_validation():
    with pytest.raises(ValueError, match="lmu"):
        Quiver(3, 3, (((1, 1), (1, 2), (1, 3)),), ())
    with pytest.raises(ValueError, match="tile"):
        Quiver(4, 2, (((1, 1), (2, 2), (1, 2), (2, 1)),), ((1, 3),))
    with pytest.raises(ValueError, match="cells"):
        Quiver(3, 2, (((1, 1), (1, 2)), ((2, 1), (2, 2), (2, 3))))
    with pytest.raises(ValueError, match="exactly once"):
        Quiver(3, 2, (((1, 1), (1, 2), (1, 1)), ((2, 1), (2, 2), (2, 3))))
    with pytest.raises(ValueError, match="induced arity"):
        Quiver(3, 2, (), ((1, 1), (2, 1)))
    assert QV_BAD_4.lmu == 1 and QV_BAD_4.lid == 2 and QV_BAD_4.n_prime == 2
    assert POST_33.n_prime == 3


def test_word_associativity_frozen_pair():
    assert not is_word_associative(QV_BAD_4)
    assert is_word_associative(QV_GOOD_4)
    assert word_refutation(QV_GOOD_4) is None


def test_word_refutation_is_a_counterexample():
    # the refutation must evaluate to different values on the truncated
    # free monoid, in the component it names
    for quiver in (QV_BAD_4, INTER_53_OVERACCEPTED):
        placement, component, args = word_refutation(quiver)
        system = truncated_free_monoid(quiver.n)
        first = evaluate_placement(quiver, system, args, 0)
        other = evaluate_placement(quiver, system, args, placement)
        assert first[component] != other[component]


def test_commutative_standard_set_cannot_see_order():
    # both placements of QV_BAD_4 read the same multiset of slots, so the
    # commutative standard systems accept it; the word test does not
    assert is_associative_quiver(QV_BAD_4).ok
    assert not is_word_associative(QV_BAD_4)


def test_noncommutative_witness_matches_direct_scan():
    s3 = sym3_derived(4)
    res = is_associative_quiver(QV_BAD_4, systems=[s3], budget=10**9)
    assert not res.ok
    assert res.witness[0] == 0
    induced = induced_tuple_operation(QV_BAD_4, s3)
    assert res.witness[1:] == is_totally_associative(induced).witness


def test_good_arrangement_exhaustive_on_separators():
    # exhaustive over the 3-element separating monoid: an exact check
    res = is_associative_quiver(QV_GOOD_4, systems=[left_zero_monoid(4)])
    assert res.ok
    for m in (2, 3):
        res = is_associative_quiver(
            QV_GOOD_4, systems=[derived_from_cyclic(m, 4)]
        )
        assert res.ok


def test_induced_vertical_is_componentwise():
    system = derived_from_cyclic(2, 3)
    induced = induced_tuple_operation(VERTICAL_33, system)
    assert induced.arity == 3 and induced.size == 4
    for keys in itertools.product(range(4), repeat=3):
        pairs = [lex_polyad(key, 2, 2) for key in keys]
        expected = (
            sum(p[0] for p in pairs) % 2,
            sum(p[1] for p in pairs) % 2,
        )
        assert induced.evaluate(keys) == lex_index(expected, 2)


def test_induced_post_like_formula():
    system = derived_from_cyclic(2, 3)
    induced = induced_tuple_operation(POST_33, system)
    for keys in itertools.product(range(4), repeat=3):
        (g1, h1), (g2, h2), (g3, h3) = (lex_polyad(key, 2, 2) for key in keys)
        expected = ((g1 + h2 + g3) % 2, (h1 + g2 + h3) % 2)
        assert induced.evaluate(keys) == lex_index(expected, 2)


def test_induced_trivial_quiver_is_original():
    system = z3_ternary()
    trivial = Quiver(3, 1, (((1, 1), (1, 2), (1, 3)),))
    induced = induced_tuple_operation(trivial, system)
    assert induced.op.table == system.op.table


def test_induced_spot_value_z3():
    induced = induced_tuple_operation(POST_33, z3_ternary())
    keys = (lex_index((0, 1), 3), lex_index((1, 2), 3), lex_index((2, 0), 3))
    # components: [0,2,2] = 0 and [1,1,0] = 0
    assert induced.evaluate(keys) == lex_index((0, 0), 3)


def test_induced_budget():
    with pytest.raises(BudgetExceeded):
        induced_tuple_operation(POST_33, z3_ternary(), budget=100)


def test_vertical_family():
    family = generate_quivers(3, 3, 2, 2, 0, "vertical")
    assert len(family) == 4
    assert VERTICAL_33 in family and VERTICAL_33_REV in family
    for quiver in family:
        assert is_word_associative(quiver)
        assert is_associative_quiver(quiver).ok


def test_post_like_family():
    assert generate_quivers(3, 3, 2, 2, 0, "post-like") == [POST_33]
    (post43,) = generate_quivers(4, 4, 3, 3, 0, "post-like")
    assert post43.rows == (
        ((1, 1), (2, 2), (3, 3), (1, 4)),
        ((2, 1), (3, 2), (1, 3), (2, 4)),
        ((3, 1), (1, 2), (2, 3), (3, 4)),
    )
    assert is_word_associative(post43)
    # k = 2 leaves no room between post-like and vertical
    assert generate_quivers(3, 3, 2, 2, 0, "non-post") == []


def test_non_post_family():
    (nonpost,) = generate_quivers(4, 4, 3, 3, 0, "non-post")
    assert nonpost.rows == (
        ((1, 1), (3, 2), (2, 3), (1, 4)),
        ((2, 1), (1, 2), (3, 3), (2, 4)),
        ((3, 1), (2, 2), (1, 3), (3, 4)),
    )
    assert is_word_associative(nonpost)
    assert len(generate_quivers(5, 5, 4, 4, 0, "non-post")) == 2
    for quiver in generate_quivers(5, 5, 4, 4, 0, "non-post"):
        assert is_word_associative(quiver)


def test_non_post_associativity_evidence():
    (nonpost,) = generate_quivers(4, 4, 3, 3, 0, "non-post")
    # m = 3 pushes the exhaustive scan to 27^7 probes: over budget
    with pytest.raises(BudgetExceeded):
        is_associative_quiver(nonpost)
    assert is_associative_quiver(nonpost, systems=[derived_from_cyclic(2, 4)]).ok
    assert is_associative_quiver(nonpost, sample=400, seed=7).ok


def test_intermediate_5_3_exactly_the_pair():
    family = generate_quivers(5, 3, 2, 1, 1, "intermediate")
    assert set(family) == {INTER_53_A, INTER_53_B}
    for quiver in family:
        assert is_associative_quiver(quiver).ok
        assert is_associative_quiver(quiver, systems=[left_zero_monoid(5)]).ok


def test_intermediate_overaccepted_candidate_rejected():
    # monotone, starts at (1,1), passes every commutative system ...
    assert is_associative_quiver(INTER_53_OVERACCEPTED).ok
    # ... but is not word-associative, and the 3-element separator sees it
    assert INTER_53_OVERACCEPTED not in generate_quivers(5, 3, 2, 1, 1, "intermediate")
    assert not is_word_associative(INTER_53_OVERACCEPTED)
    res = is_associative_quiver(
        INTER_53_OVERACCEPTED, systems=[left_zero_monoid(5)]
    )
    assert not res.ok


def test_intermediate_3_2_truncations():
    family = generate_quivers(3, 2, 2, 1, 1, "intermediate")
    assert set(family) == {
        Quiver(3, 2, (((1, 1), (2, 2), (1, 2)),), ((2, 1),)),
        Quiver(3, 2, (((1, 1), (2, 1), (1, 2)),), ((2, 2),)),
    }


def test_intermediate_4_2_3_count_and_spot():
    family = generate_quivers(4, 2, 3, 1, 2, "intermediate")
    assert len(family) == 6
    assert (
        Quiver(4, 3, (((1, 1), (2, 2), (3, 2), (1, 2)),), ((2, 1), (3, 1)))
        in family
    )
    # the non-monotone QV_GOOD_4 is associative but outside the enumeration
    assert QV_GOOD_4 not in family
    for quiver in family:
        assert is_associative_quiver(quiver, systems=[left_zero_monoid(4)]).ok


def test_intermediate_4_3_3_two_row_family():
    family = generate_quivers(4, 3, 3, 2, 1, "intermediate")
    assert len(family) == 4
    assert (
        Quiver(
            4,
            3,
            (((1, 1), (3, 2), (2, 2), (1, 3)), ((2, 1), (1, 2), (3, 3), (2, 3))),
            ((3, 1),),
        )
        in family
    )
    for quiver in family:
        assert is_associative_quiver(
            quiver, systems=[derived_from_cyclic(2, 4)]
        ).ok
        assert is_associative_quiver(quiver, sample=300, seed=11).ok


def test_generate_validates_parameters():
    with pytest.raises(ValueError, match="lmu"):
        generate_quivers(3, 3, 2, 1, 0, "vertical")
    with pytest.raises(ValueError):
        generate_quivers(4, 3, 2, 1, 1, "intermediate")
    with pytest.raises(ValueError, match="family"):
        generate_quivers(3, 3, 2, 2, 0, "diagonal")
    # families that do not fit the parameters are empty, not errors
    assert generate_quivers(5, 3, 2, 1, 1, "vertical") == []
    assert generate_quivers(5, 3, 2, 1, 1, "post-like") == []
    assert generate_quivers(3, 3, 2, 2, 0, "intermediate") == []


def test_generate_all_unions_families():
    full = generate_quivers(4, 4, 3, 3, 0, "all")
    vertical = generate_quivers(4, 4, 3, 3, 0, "vertical")
    post = generate_quivers(4, 4, 3, 3, 0, "post-like")
    nonpost = generate_quivers(4, 4, 3, 3, 0, "non-post")
    assert set(full) == set(vertical) | set(post) | set(nonpost)
    assert len(full) == len(vertical) + len(post) + len(nonpost)


@pytest.mark.parametrize(
    "n,n_prime,k,lmu,lid",
    [
        (3, 3, 2, 2, 0),
        (4, 4, 3, 3, 0),
        (5, 5, 4, 4, 0),
        (3, 2, 2, 1, 1),
        (5, 3, 2, 1, 1),
        (4, 2, 3, 1, 2),
        (4, 3, 3, 2, 1),
        (7, 3, 3, 1, 2),
        (5, 2, 4, 1, 3),
    ],
)
def test_everything_generated_is_word_associative(n, n_prime, k, lmu, lid):
    family = generate_quivers(n, n_prime, k, lmu, lid, "all")
    assert family, "expected at least one quiver for this shape"
    for quiver in family:
        assert is_word_associative(quiver)
        assert quiver.n_prime == n_prime and quiver.lmu == lmu


def test_word_test_agrees_with_separator_scan():
    # every monotone candidate on the (5,3,2) and (3,2,2) shapes: the
    # symbolic word test and the exhaustive left-zero-monoid scan agree
    def candidates(n, n_prime, k, lid):
        cells = [
            (p, c) for p in range(1, k + 1) for c in range(1, n_prime + 1)
        ]
        for intact in itertools.combinations(cells, lid):
            rest = [cell for cell in cells if cell not in intact]
            for row in itertools.permutations(rest):
                yield Quiver(n, k, (row,), intact)

    seen = 0
    for quiver in candidates(3, 2, 2, 1):
        expected = is_word_associative(quiver)
        got = is_associative_quiver(quiver, systems=[left_zero_monoid(3)]).ok
        assert got == expected
        seen += 1
    assert seen == 4 * 6


def test_tautology_identity_map_verifies_shapes():
    cases = [
        (VERTICAL_33, z3_ternary()),
        (VERTICAL_33_REV, z3_ternary()),
        (POST_33, z3_ternary()),
        (QV_GOOD_4, derived_from_cyclic(2, 4)),
        (INTER_53_A, derived_from_cyclic(2, 5)),
        (INTER_53_B, derived_from_cyclic(2, 5)),
    ]
    for quiver, system in cases:
        shape = quiver_to_shape(quiver)
        induced = induced_tuple_operation(quiver, system)
        phi = map_from_callable(
            quiver.k,
            system.size,
            induced.size,
            lambda *args: lex_index(args, system.size),
        )
        assert verify_heteromorphism(system, induced, shape, phi).ok


def test_quiver_to_shape_frozen():
    shape = quiver_to_shape(POST_33)
    assert shape.assignment == (0, 3, 4, 1, 2, 5)
    assert (shape.n, shape.n_prime, shape.k, shape.lmu, shape.lid) == (3, 3, 2, 2, 0)
    trivial = Quiver(3, 1, (((1, 1), (1, 2), (1, 3)),))
    assert quiver_to_shape(trivial) == HeteroShape(3, 3, 1, 1, 0, (0, 1, 2))


def test_standard_test_systems_contents():
    systems = standard_test_systems(3, 2)
    assert [s.size for s in systems] == [2, 3, 4, 4]
    assert systems[3].op.table == z4_ternary().op.table
    assert [s.size for s in standard_test_systems(4, 3)] == [2, 3, 4]
    assert [s.size for s in standard_test_systems(5, 5)] == [2]


def test_sampled_scan_catches_noncommutative_failure():
    # the sampled path must find a violation of QV_BAD_4 on S3
    res = is_associative_quiver(
        QV_BAD_4, systems=[sym3_derived(4)], sample=300, seed=3
    )
    assert not res.ok
    system_index, args, i0, first, i1, other = res.witness
    assert system_index == 0 and i0 == 0
    s3 = sym3_derived(4)
    assert evaluate_placement(QV_BAD_4, s3, list(args), 0) == first
    assert evaluate_placement(QV_BAD_4, s3, list(args), i1) == other


def test_polyqvr_roundtrip():
    for quiver in (POST_33, QV_GOOD_4, INTER_53_A, Quiver(3, 1, (((1, 1), (1, 2), (1, 3)),))):
        text = dumps_quiver(quiver, comment="roundtrip")
        assert loads_quiver(text) == quiver
    text = dumps_quiver(POST_33)
    assert text.splitlines()[0] == "polyqvr 1"
    assert "row 1:1 2:2 1:3" in text


def test_polyqvr_files(tmp_path):
    path = tmp_path / "post.qvr"
    save_quiver(POST_33, path, comment="post-like 3,2")
    assert load_quiver(path) == POST_33


def test_polyqvr_errors():
    with pytest.raises(FormatError, match="magic"):
        loads_quiver("n 3 k 2\nrow 1:1 1:2 1:3\n")
    with pytest.raises(FormatError, match="magic"):
        loads_quiver("# empty\n")
    with pytest.raises(FormatError, match="bad cell"):
        loads_quiver("polyqvr 1\nn 3 k 2\nrow 1:1 2 1:3\nrow 2:1 1:2 2:3\n")
    with pytest.raises(FormatError, match="parameter"):
        loads_quiver("polyqvr 1\nrow 1:1 1:2 1:3\n")
    with pytest.raises(FormatError, match="unexpected"):
        loads_quiver("polyqvr 1\nn 3 k 1\ncolumn 1:1\n")
