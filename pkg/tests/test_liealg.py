import itertools

import pytest

from oscgk.liealg import (Algebra, AlgebraKind, BasisElement, ConfigError, RepConfig, admissible,
                          build_rep, check_homomorphism, mat_add, mat_commutator, matrix_bracket,
                          matrix_operator, span_check, transcribed_roots, unit_operator)
from oscgk.weylalg import bracket, parse_op

KINDS = list(AlgebraKind)


def dims(kind, n):
    return n * (2 * n - 1) if kind is AlgebraKind.EVEN_ORTHOGONAL else n * (2 * n + 1)


@pytest.mark.parametrize("kind", KINDS)
@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_basis_dimension(kind, n):
    assert Algebra(kind, n).dim == dims(kind, n)


@pytest.mark.parametrize("kind", KINDS)
@pytest.mark.parametrize("n", [1, 2, 3])
def test_homomorphism_all_configs(kind, n):
    for cfg in admissible(kind, n):
        assert check_homomorphism(build_rep(cfg)) == [], cfg.describe()


def test_rep_examples():
    t = build_rep(RepConfig("o-even", 2, 1, 2))
    alg = t.algebra
    b = next(iter(alg.decompose(mat_add((1, {(2, 1): 1}), (-1, {(3, 4): 1})))))
    assert t.ops[b] == parse_op("-x1*x2 - y1*Dy2", t.config.ring)
    t = build_rep(RepConfig("o-even", 2, 1, 1))
    assert t.ops[b] == parse_op("-x1*x2 + y1*y2", t.config.ring)
    for n1 in (1, 2):
        cfg = RepConfig("sp", 2, n1, 2)
        assert unit_operator(cfg, 3, 1) == parse_op("-x1*y1", cfg.ring)


def test_matrix_bracket_examples():
    o4 = Algebra(AlgebraKind.EVEN_ORTHOGONAL, 2)
    got = matrix_bracket(o4, BasisElement("K", 1, 2), BasisElement("K", 2, 1))
    assert got == {BasisElement("K", 1, 1): 1, BasisElement("K", 2, 2): -1}
    assert matrix_bracket(o4, BasisElement("K", 1, 1), BasisElement("K", 2, 2)) == {}
    sp4 = Algebra(AlgebraKind.SYMPLECTIC, 2)
    got = matrix_bracket(sp4, BasisElement("P+", 1, 1), BasisElement("P-", 1, 1))
    assert got == {BasisElement("K", 1, 1): 1}


@pytest.mark.parametrize("kind", KINDS)
@pytest.mark.parametrize("n", [1, 2, 3])
def test_bracket_antisymmetry_and_jacobi(kind, n):
    alg = Algebra(kind, n)
    mats = {b: alg.matrix(b) for b in alg.basis}
    for a, b in itertools.product(alg.basis, repeat=2):
        assert mat_add((1, mat_commutator(mats[a], mats[b])), (1, mat_commutator(mats[b], mats[a]))) == {}
        alg.decompose(mat_commutator(mats[a], mats[b]))
    for a, b, c in itertools.combinations(alg.basis, 3):
        j = mat_add((1, mat_commutator(mats[a], mat_commutator(mats[b], mats[c]))),
                    (1, mat_commutator(mats[b], mat_commutator(mats[c], mats[a]))),
                    (1, mat_commutator(mats[c], mat_commutator(mats[a], mats[b]))))
        assert j == {}


def test_decompose_rejects_outside():
    with pytest.raises(ValueError):
        Algebra(AlgebraKind.EVEN_ORTHOGONAL, 2).decompose({(1, 3): 1})


def test_mutation_is_caught():
    t = build_rep(RepConfig("sp", 2, 1, 1))
    target = t.algebra.parabolic_minus[0]
    bad = check_homomorphism(t.mutated(target))
    assert bad
    assert any(target in (v.a, v.b) for v in bad)


def test_transcribed_tables_match_unit_rules():
    for kind, n in [("o-even", 3), ("o-odd", 3), ("sp", 3), ("o-even", 4)]:
        for cfg in admissible(AlgebraKind(kind), n):
            for rv in transcribed_roots(cfg):
                assert matrix_operator(cfg, dict(rv.matrix)) == rv.op, rv.name


def test_nst_sign_variant_breaks_the_bracket():
    # flipping the sign of y_s Dx_t gives an operator that is not the image of E(n+s,t) - E(n+t,s)
    cfg = RepConfig("o-even", 3, 1, 2)
    s, t = 2, 3
    flipped = parse_op(f"-Dx{s}*Dy{t} - y{s}*Dx{t}", cfg.ring)
    true = matrix_operator(cfg, {(3 + s, t): 1, (3 + t, s): -1})
    assert flipped != true
    assert true == parse_op(f"-Dx{s}*Dy{t} + y{s}*Dx{t}", cfg.ring)


@pytest.mark.parametrize("kind", KINDS)
@pytest.mark.parametrize("n", [2, 3])
def test_split_spans_the_algebra(kind, n):
    for cfg in admissible(kind, n):
        t = build_rep(cfg)
        alg = t.algebra
        assert set(t.g1).isdisjoint(t.g2)
        assert set(t.g1) | set(t.g2) == set(alg.parabolic_minus)
        everything = list(t.kplus) + list(t.g1) + list(t.g2) + alg.cartan
        assert span_check(alg, everything) == alg.dim


@pytest.mark.parametrize("kind", KINDS)
@pytest.mark.parametrize("n", [2, 3])
def test_g2_is_a_subalgebra(kind, n):
    for cfg in admissible(kind, n):
        t = build_rep(cfg)
        members = set(t.g2)
        for a, b in itertools.product(t.g2, repeat=2):
            assert set(matrix_bracket(t.algebra, a, b)) <= members, (cfg.describe(), a, b)


@pytest.mark.parametrize("kind", KINDS)
@pytest.mark.parametrize("n", [2, 3])
def test_split_follows_degree_rule(kind, n):
    # g2 = root vectors whose operator has a degree-raising (+2) term
    for cfg in admissible(kind, n):
        t = build_rep(cfg)
        for b in t.g2:
            assert 2 in t.ops[b].degree_shifts()
        for b in t.g1:
            assert max(t.ops[b].degree_shifts()) <= 0


def test_invalid_config():
    with pytest.raises(ConfigError):
        RepConfig("o-even", 2, 2, 1)
    with pytest.raises(ConfigError):
        RepConfig("sp", 2, 0, 1)


def test_dump_format():
    text = build_rep(RepConfig("o-even", 2, 1, 1)).dump()
    lines = text.strip().splitlines()
    assert len(lines) == 6
    assert all(" := " in line for line in lines)
