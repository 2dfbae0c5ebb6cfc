from oscgk.exactpoly import Polynomial, Ring, monomials_up_to, parse_poly
from oscgk.weylalg import DiffOp, apply, bracket, compose, parse_op

R = Ring(2)


def op(text):
    return parse_op(text, R)


def P(text):
    return parse_poly(text, R)


def test_apply_examples():
    assert apply(op("x1*Dx1"), P("x1^2")) == P("2*x1^2")
    assert not apply(op("Dx1*Dx2 - Dy1*Dy2"), P("x1^5"))
    laplace = op("x1*Dy1 + y2*Dx2")
    assert not apply(laplace, P("x1"))


def test_compose_examples():
    assert compose(op("Dx1"), op("x1")) == op("x1*Dx1 + 1")
    a = op("x1*Dx2 - 3*y1*y2*Dy1")
    assert compose(DiffOp.identity(R), a) == a
    lhs = compose(op("x1*Dy1"), op("y1*Dx1"))
    assert lhs == op("x1*Dx1 + x1*y1*Dy1*Dx1")
    for m in monomials_up_to(R.nvars, 3):
        f = Polynomial.monomial(R, m)
        assert apply(lhs, f) == apply(op("x1*Dy1"), apply(op("y1*Dx1"), f))


def test_bracket_examples():
    assert bracket(op("Dx1"), op("x1")) == op("1")
    a = op("x1*x2*Dy1 - Dx2")
    assert not bracket(a, a)
    assert bracket(op("x1*Dx2"), op("x2*Dx1")) == op("x1*Dx1 - x2*Dx2")


def test_kronecker_constant_term_kept():
    # -x1 Dx1 - 1 is the image of a diagonal unit; the constant must survive
    e = op("-x1*Dx1 - 1")
    assert apply(e, P("1")) == P("-1")
    assert ((DiffOp.identity(R).ring.one, R.one) in e.terms)


def test_degree_shifts():
    assert op("x1*x2 + Dx1*Dy2 + y1*Dy1").degree_shifts() == {2, -2, 0}


def test_text_round_trip():
    a = op("-x1*x2 - y1*Dy2 + 2*Dx1*Dx2")
    assert parse_op(a.to_text(), R) == a
    assert op("-x1*x2 - y1*Dy2").to_text() == "-x1*x2 - y1*Dy2"
