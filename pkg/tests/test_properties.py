from fractions import Fraction

from hypothesis import given, settings, strategies as st

from oscgk.exactpoly import Polynomial, Ring, RowReducer, exact_rank, monomials_up_to
from oscgk.weylalg import DiffOp, apply, bracket, compose

R = Ring(2)
MONS = list(monomials_up_to(R.nvars, 2))
coeffs = st.fractions(min_value=-5, max_value=5, max_denominator=4)


@st.composite
def polys(draw, max_terms=4):
    terms = draw(st.dictionaries(st.sampled_from(MONS), coeffs, max_size=max_terms))
    return Polynomial(R, terms)


@st.composite
def ops(draw, max_terms=3):
    pairs = st.tuples(st.sampled_from(MONS[:9]), st.sampled_from(MONS[:9]))
    terms = draw(st.dictionaries(pairs, coeffs, max_size=max_terms))
    return DiffOp(R, terms)


@given(polys(), polys(), polys())
def test_ring_axioms(a, b, c):
    assert a + b == b + a
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a - a == Polynomial(R)


@given(st.lists(polys(), max_size=6), st.randoms(use_true_random=False))
def test_rank_invariant_under_permutation_and_scaling(rows, rnd):
    shuffled = list(rows)
    rnd.shuffle(shuffled)
    scaled = [r.scale(Fraction(rnd.randint(1, 7), rnd.randint(1, 7))) for r in shuffled]
    a, b = exact_rank(rows), exact_rank(scaled)
    assert a.rank == b.rank and a.pivots == b.pivots
    assert a.rank <= len(rows)


@given(st.lists(polys(), max_size=6))
def test_incremental_rank_matches_batch(rows):
    red = RowReducer()
    grew = sum(bool(red.insert(r)) for r in rows)
    assert grew == red.rank == exact_rank(rows).rank


@settings(max_examples=50)
@given(ops(), ops(), polys())
def test_compose_is_operator_product(a, b, f):
    assert apply(compose(a, b), f) == apply(a, apply(b, f))


@settings(max_examples=30)
@given(ops(2), ops(2), ops(2))
def test_jacobi(a, b, c):
    total = bracket(a, bracket(b, c)) + bracket(b, bracket(c, a)) + bracket(c, bracket(a, b))
    assert not total
