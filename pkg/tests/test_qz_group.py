from __future__ import annotations

from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gwmax.errors import GroupTooLargeError, InvalidDimensionError
from gwmax.qz_group import (
    FiniteSubgroup,
    canonicalize,
    element_order,
    from_elements,
    generate,
    identity,
    intersect,
    order,
    parse_element,
    small_generating_set,
)

from oracles import closure as oracle_closure


def el(*xs):
    return canonicalize([F(x) for x in xs])


def as_set(G):
    return {g.phases for g in G.elements}


# -- canonicalize ---------------------------------------------------------


def test_canonicalize_negative_phase():
    assert el("1/3", "-2/3") == el("1/3", "1/3")
    assert str(el("1/3", "-2/3")) == "(1/3, 1/3)"


def test_canonicalize_identity():
    assert el(0, 0).is_identity()
    assert str(el(0, 0)) == "(0, 0)"


def test_canonicalize_out_of_range():
    assert el("7/3", "-1/6").phases == (F(1, 3), F(5, 6))


def test_canonicalize_rejects_empty():
    with pytest.raises(InvalidDimensionError):
        canonicalize([])


def test_phases_are_reduced():
    g = el("2/6", "9/6")
    assert g.phases == (F(1, 3), F(1, 2))
    assert all(p.denominator >= 1 and 0 <= p < 1 for p in g.phases)


def test_integers_render_bare():
    assert str(el(3, "1/2")) == "(0, 1/2)"


def test_parse_element_roundtrip():
    g = el("5/6", "1/3", 0)
    assert parse_element(str(g)) == g


def test_arithmetic():
    a, b = el("1/3", "1/2"), el("2/3", "1/2")
    assert (a + b).is_identity()
    assert -a == b
    assert a * 6 == identity(2)
    assert not (a * 3).is_identity()
    assert 2 * a == el("2/3", 0)


def test_ordering_is_lexicographic():
    xs = [el("1/2", 0), el(0, "1/2"), el("1/3", "2/3"), el(0, 0)]
    assert sorted(xs) == [el(0, 0), el(0, "1/2"), el("1/3", "2/3"), el("1/2", 0)]


# -- element_order --------------------------------------------------------


@pytest.mark.parametrize(
    "g, k",
    [((F(1, 3), F(1, 3)), 3), ((0, 0), 1), ((F(5, 6), F(1, 3)), 6), ((F(1, 2), F(1, 3)), 6)],
)
def test_element_order(g, k):
    g = canonicalize(g)
    assert element_order(g) == k
    assert (g * k).is_identity()


# -- generate -------------------------------------------------------------


def test_generate_nine_element_group():
    G = generate(2, [el("1/3", 0), el(0, "1/3")])
    expected = {(F(i, 3), F(j, 3)) for i in range(3) for j in range(3)}
    assert as_set(G) == expected
    assert order(G) == 9


def test_generate_cyclic():
    G = generate(2, [el("1/3", "1/3")])
    assert [str(g) for g in G.elements] == ["(0, 0)", "(1/3, 1/3)", "(2/3, 2/3)"]


def test_generate_empty_is_trivial():
    G = generate(3, [])
    assert [str(g) for g in G.elements] == ["(0, 0, 0)"]
    assert G == FiniteSubgroup.trivial(3)


def test_klein_four():
    assert len(generate(2, [el("1/2", 0), el(0, "1/2")])) == 4


def test_generate_dimension_mismatch():
    with pytest.raises(InvalidDimensionError):
        generate(2, [el("1/2", 0, 0)])


def test_generate_cap():
    with pytest.raises(GroupTooLargeError) as info:
        generate(2, [el("1/50", 0), el(0, "1/50")], cap=1000)
    assert info.value.cap == 1000


def test_diag3_inverse_columns_golden():
    # columns of diag(3,3)^-1
    G = generate(2, [el("1/3", 0), el(0, "1/3")])
    assert [str(g) for g in G.elements] == [
        "(0, 0)", "(0, 1/3)", "(0, 2/3)",
        "(1/3, 0)", "(1/3, 1/3)", "(1/3, 2/3)",
        "(2/3, 0)", "(2/3, 1/3)", "(2/3, 2/3)",
    ]


def test_generators_are_members():
    gens = [el("1/4", "1/6"), el("1/2", "1/3")]
    G = generate(2, gens)
    assert all(g in G for g in gens)
    assert el("1/5", 0) not in G
    assert el("1/4", "1/6", 0) not in G


def test_codes_beyond_int64():
    # 256**8 = 2**64 does not pack into int64, so codes are Python ints
    gens = [el(*([F(1, 256)] + [F(k, 8) for k in range(7)])), el(*([0] * 7 + ["1/2"]))]
    G = generate(8, gens)
    assert G.codes.dtype == object
    assert as_set(G) == oracle_closure([g.phases for g in gens], 8)
    H = intersect(G, generate(8, [el(*([0] * 7 + ["1/2"]))]))
    assert len(H) == 2


# -- intersect ------------------------------------------------------------


def test_intersect_example_groups():
    G1 = generate(2, [el("1/3", 0), el(0, "1/3")])
    G3 = generate(2, [el("1/6", "2/3"), el("1/2", 0)])
    H = intersect(G1, G3)
    assert len(G3) == 6
    assert [str(g) for g in H.elements] == ["(0, 0)", "(1/3, 1/3)", "(2/3, 2/3)"]


def test_intersect_idempotent():
    G = generate(2, [el("1/4", "1/6")])
    assert intersect(G, G) == G


def test_intersect_generators_are_elements():
    G = intersect(generate(2, [el("1/2", 0)]), generate(2, [el(0, "1/2")]))
    assert G.generators == G.elements == (identity(2),)


def test_intersect_dimension_mismatch():
    with pytest.raises(InvalidDimensionError):
        intersect(generate(2, []), generate(3, []))


def test_from_elements_and_subset():
    G = generate(2, [el("1/6", "1/2")])
    assert from_elements(2, G.elements) == G
    assert generate(2, [el("1/3", 0)]).issubset(G)
    assert not G.issubset(generate(2, [el("1/3", 0)]))


def test_small_generating_set_generates():
    G = generate(3, [el("1/4", 0, "1/2"), el(0, "1/6", 0), el("1/2", "1/2", "1/2")])
    gens = small_generating_set(G)
    assert generate(3, gens) == G
    assert len(gens) <= 3


# -- properties -----------------------------------------------------------

phase_st = st.builds(F, st.integers(-30, 30), st.integers(1, 8))


def vec(n):
    return st.lists(phase_st, min_size=n, max_size=n).map(canonicalize)


gens_st = st.integers(1, 3).flatmap(lambda n: st.tuples(st.just(n), st.lists(vec(n), max_size=3)))


@settings(max_examples=80, deadline=None)
@given(gens_st)
def test_closure_matches_bfs_oracle(data):
    n, gens = data
    G = generate(n, gens)
    assert as_set(G) == oracle_closure([g.phases for g in gens], n)


@settings(max_examples=80, deadline=None)
@given(gens_st)
def test_group_axioms(data):
    n, gens = data
    G = generate(n, gens)
    S = G.element_set()
    assert identity(n) in S
    assert all(-a in S for a in G.elements)
    sample = G.elements[:: max(1, len(G) // 12)]
    for a in sample:
        assert all(a * k in S for k in range(element_order(a)))
    assert all(a + b in S for a in sample for b in sample)
    for g in gens:
        assert len(G) % element_order(g) == 0


@settings(max_examples=80)
@given(st.integers(1, 4).flatmap(lambda n: vec(n)))
def test_canonicalize_idempotent(g):
    assert canonicalize(canonicalize(list(g.phases))) == g


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 3).flatmap(lambda n: st.tuples(*(st.lists(vec(n), max_size=2) for _ in range(3)))))
def test_intersection_laws(gen_lists):
    n = next((g.dimension for gs in gen_lists for g in gs), None)
    if n is None:
        return
    gen_lists = [[g for g in gs if g.dimension == n] for gs in gen_lists]
    A, B, C = (generate(n, gs) for gs in gen_lists)
    AB = intersect(A, B)
    assert AB.element_set() == intersect(B, A).element_set()
    assert AB.element_set() == A.element_set() & B.element_set()
    assert intersect(AB, C) == intersect(A, intersect(B, C))
    assert len(A) % len(AB) == 0 and len(B) % len(AB) == 0
