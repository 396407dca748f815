import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rootcomponents.rootdata import (
    AffineType,
    InvalidTypeError,
    Root,
    RootClass,
    RootError,
    build_cartan,
    classify_root,
    exceptional_roots,
    f_set,
    lemma_root_scan,
    parse_root,
    parse_type,
    positive_real_roots,
    rho_beta,
)
from rootcomponents.weights import Weight

# independent of the tables inside the library: (h^vee, dim, theta)
KNOWN = {
    "A1": (2, 3, (1,)),
    "A2": (3, 8, (1, 1)),
    "C2": (3, 10, (2, 1)),
    "C3": (4, 21, (2, 2, 1)),
    "B3": (5, 21, (1, 2, 2)),
    "D4": (6, 28, (1, 2, 1, 1)),
    "G2": (4, 14, (3, 2)),
    "F4": (9, 52, (2, 3, 4, 2)),
    "E6": (12, 78, (1, 2, 2, 3, 2, 1)),
    "E8": (30, 248, (2, 3, 4, 6, 5, 4, 3, 2)),
}


@pytest.mark.parametrize("label", sorted(KNOWN))
def test_tabulated_data(label):
    cd = build_cartan(label)
    h, dim, theta = KNOWN[label]
    assert (cd.h_dual, cd.dim_g0, tuple(cd.theta)) == (h, dim, theta)


def test_invariants_every_type(any_cd):
    cd = any_cd
    l = cd.rank
    # sum a_i alpha_i = delta
    total = Root((0,) * l, 0)
    for i in cd.indices:
        total = total + cd.marks[i] * Root.simple(cd, i)
    assert total == Root.delta(cd)
    assert cd.marks[0] == 1 and cd.comarks[0] == 1
    assert cd.finite_form(cd.theta, cd.theta) == 2
    assert len(cd.finite_roots) == cd.dim_g0 - l
    assert cd.h_dual == 1 + sum(cd.comarks[1:])
    # alpha_0 row/column from alpha_0 = delta - theta
    assert cd.A[0][0] == 2
    for i in range(1, l + 1):
        assert cd.A[i][0] == -sum(cd.theta[j] * cd.A[i][j + 1] for j in range(l))
    # long roots have squared length 2; other lengths are 1 or 2/3
    lengths = {cd.finite_form(g, g) for g in cd.finite_roots}
    assert max(lengths) == 2
    assert lengths <= {Fraction(2), Fraction(1), Fraction(2, 3)}
    # symmetrized Cartan matrix
    for i in cd.indices:
        for j in cd.indices:
            assert cd.d[i] * cd.A[i][j] == cd.gram[i][j]


def test_marks_annihilate_cartan_matrix(any_cd):
    cd = any_cd
    for i in cd.indices:
        assert sum(cd.A[i][j] * cd.marks[j] for j in cd.indices) == 0
        assert sum(cd.comarks[j] * cd.A[j][i] for j in cd.indices) == 0


def test_small_rank_conventions():
    g2 = build_cartan("G2")
    assert g2.finite_form((1, 0), (1, 0)) == Fraction(2, 3)
    c2 = build_cartan("C2")
    assert c2.finite_form((0, 1), (0, 1)) == 2  # alpha_2 long
    f4 = build_cartan("F4")
    assert [f4.finite_form(r, r) for r in ((1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1))] == [2, 2, 1, 1]


@pytest.mark.parametrize("text", ["A1~", "A1^(1)", "a1", "A1"])
def test_parse_type_forms(text):
    assert parse_type(text).label == "A1~"


def test_b2_becomes_c2():
    assert build_cartan("B2~").label == "C2~"


@pytest.mark.parametrize("family,rank", [("B", 1), ("A", 0), ("D", 3), ("E", 5), ("E", 9), ("F", 3), ("G", 3), ("C", 1)])
def test_invalid_rank(family, rank):
    with pytest.raises(InvalidTypeError, match="invalid rank"):
        AffineType(family, rank)


def test_unknown_family():
    with pytest.raises(InvalidTypeError):
        parse_type("H3~")


def test_classify_examples():
    a1 = build_cartan("A1")
    assert classify_root(a1, (1, 0)) is RootClass.REAL
    assert classify_root(a1, (0, 3)) is RootClass.IMAGINARY
    assert Root((0,), 3).multiplicity(a1) == 1
    assert classify_root(a1, (2, 1)) is RootClass.NOT_ROOT
    assert classify_root(a1, (0, 0)) is RootClass.NOT_ROOT
    e6 = build_cartan("E6")
    assert Root.delta(e6, -2).multiplicity(e6) == 6


@settings(max_examples=200, deadline=None)
@given(st.sampled_from(["A2", "C3", "G2", "F4"]), st.data())
def test_classify_negation_symmetric(label, data):
    cd = build_cartan(label)
    v = data.draw(st.lists(st.integers(-3, 3), min_size=cd.rank + 1, max_size=cd.rank + 1))
    if not any(v):
        return
    assert classify_root(cd, v) is classify_root(cd, [-x for x in v])


def _fset_brute(cd, beta):
    """Definition straight from root-string membership, via simple coordinates."""
    out = set()
    for i in cd.indices:
        c = list(beta.simple_coords(cd))
        c[i] -= 1
        r = Root.from_simple_coords(cd, c)
        zero = not any(c)
        real = any(r.gamma) and r.gamma in set(cd.finite_roots)
        imag = not any(r.gamma) and r.k != 0
        if not (zero or real or imag):
            out.add(i)
    return frozenset(out)


def test_fset_examples():
    a1 = build_cartan("A1")
    assert f_set(a1, Root.simple(a1, 0)) == {1}
    g2 = build_cartan("G2")
    assert f_set(g2, parse_root(g2, "a0+2*a1+a2")) == {2}
    assert parse_root(g2, "a0+2*a1+a2") == Root((-1, -1), 1)
    f4 = build_cartan("F4")
    assert f_set(f4, parse_root(f4, "d-a2")) == {0, 2, 4}


def test_fset_matches_brute_force(small_cd):
    cd = small_cd
    for beta in positive_real_roots(cd, 2):
        assert f_set(cd, beta) == _fset_brute(cd, beta)


def test_fset_delta_invariant(small_cd):
    cd = small_cd
    for beta in positive_real_roots(cd, 1):
        for k in (1, 2, 3):
            assert f_set(cd, beta) == f_set(cd, beta + Root.delta(cd, k))


def test_fset_requires_positive_root():
    a1 = build_cartan("A1")
    with pytest.raises(RootError):
        f_set(a1, Root((-1,), 0))
    with pytest.raises(RootError):
        f_set(a1, Root((2,), 1))


def test_rho_beta_examples():
    f4 = build_cartan("F4")
    assert rho_beta(f4, parse_root(f4, "d-a2")) == Weight.from_pairings(f4, [0, 1, 0, 1, 0])
    g2 = build_cartan("G2")
    assert rho_beta(g2, parse_root(g2, "d-a1-a2")) == Weight.from_pairings(g2, [1, 1, 0])
    a1 = build_cartan("A1")
    assert rho_beta(a1, Root.simple(a1, 0)) == Weight.fundamental(a1, 0)


def test_exceptional_examples():
    assert exceptional_roots(build_cartan("G2")) == [((0, 1), 1), ((1, 1), 1)]
    f4 = exceptional_roots(build_cartan("F4"))
    assert len(f4) == 6
    assert ((0, 1, 0, 0), 3) in f4 and ((1, 2, 2, 2), 3) in f4
    assert exceptional_roots(build_cartan("A2")) == []


def test_exceptional_empty_simply_laced():
    for label in ["A1", "A4", "D4", "D5", "E6", "E7"]:
        assert exceptional_roots(build_cartan(label)) == []


def test_exceptional_is_exhaustive_scan(small_cd):
    cd = small_cd
    want = []
    for gamma in cd.positive_roots:
        for j in range(1, cd.rank + 1):
            r = Root(tuple(-x for x in gamma), 1) - 2 * Root.simple(cd, j)
            if classify_root(cd, r) is not RootClass.NOT_ROOT and r.is_positive(cd):
                want.append((gamma, j))
    assert sorted(exceptional_roots(cd)) == sorted(want)


@pytest.mark.parametrize("label,k", [("A1", 5), ("G2", 3), ("C2", 0), ("B4", 2), ("F4", 2)])
def test_lemma_root_scan_empty(label, k):
    assert lemma_root_scan(build_cartan(label), k) == []


def test_lemma_root_scan_rejects_negative():
    with pytest.raises(ValueError):
        lemma_root_scan(build_cartan("A1"), -1)


def test_parse_root_forms():
    g2 = build_cartan("G2")
    assert parse_root(g2, "a0+3*a1+a2") == Root((0, -1), 1)
    assert parse_root(g2, "d-a2") == Root((0, -1), 1)
    assert parse_root(g2, "2d") == Root.delta(g2, 2)
    for bad in ["", "a3", "a1++a2", "x"]:
        with pytest.raises(ValueError):
            parse_root(g2, bad)


def test_root_string_roundtrip(small_cd):
    cd = small_cd
    for beta in itertools.islice(positive_real_roots(cd, 1), 40):
        assert parse_root(cd, beta.to_str()) == beta
        assert Root.from_simple_coords(cd, beta.simple_coords(cd)) == beta
