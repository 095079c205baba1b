import random
from fractions import Fraction

import pytest

from hyperlog import (
    Alphabet,
    Dependent,
    GaussianRational,
    Multiplier,
    NCPolynomial,
    PoleLocalizedRational,
    PoleSet,
    RelationStatus,
    Word,
    certify,
    discover_relations,
    numeric_relation_defect,
    rational_coefficient_table,
    residue_matrix,
    shuffle_product,
    verify_relation,
    witness_to_degree1_relation,
)

PLR = PoleLocalizedRational
E = Word()
X0 = Word((0,))
X1 = Word((1,))


def expected_counterexample_relation(poles, z0: Fraction) -> NCPolynomial:
    """Coefficients of the depth-2 relation as functions of the basepoint:
    Q = x1x0 + x0x1 + (1 - 1/z0) x1 + (z0/(1-z0)) x0."""
    c1 = 1 - Fraction(1) / z0
    c0 = z0 / (1 - z0)
    return NCPolynomial(
        {
            Word((1, 0)): PLR.one(poles),
            Word((0, 1)): PLR.one(poles),
            X1: PLR.constant(poles, c1),
            X0: PLR.constant(poles, c0),
        }
    )


class TestResidueMatrix:
    def test_polylog(self, polylog_multiplier):
        R = residue_matrix(polylog_multiplier)
        assert R == [
            [GaussianRational(1), GaussianRational(0)],
            [GaussianRational(0), GaussianRational(-1)],
        ]

    def test_counterexample_all_zero(self, counterexample_multiplier):
        R = residue_matrix(counterexample_multiplier)
        assert all(c.is_zero for row in R for c in row)

    def test_poleless_term_gives_zero_column(self, poles01):
        a = Alphabet(["x0"])
        M = Multiplier(a, poles01, {0: PLR.from_poly(poles01, [0, 1])})
        R = residue_matrix(M)
        assert all(c.is_zero for row in R for c in row)


class TestCertify:
    def test_polylog_independent(self, polylog_multiplier):
        v = certify(polylog_multiplier)
        assert v.is_independent
        assert v.pivots == (0, 1)

    def test_counterexample_dependent(self, counterexample_multiplier, poles01):
        v = certify(counterexample_multiplier)
        assert not v.is_independent
        assert v.alpha == (GaussianRational(1), GaussianRational(0))
        assert v.witness_f == PLR.pole_term(poles01, 0, 1, -1)  # -1/z
        # soundness: d(f) = sum alpha_x u_x, here just u0
        assert v.witness_f.derivative() == counterexample_multiplier.terms[0]

    def test_zero_weight_letter_dependent(self, poles01):
        a = Alphabet(["x0"])
        M = Multiplier(a, poles01, {0: PLR.zero(poles01)})
        v = certify(M)
        assert not v.is_independent
        assert v.alpha == (GaussianRational(1),)
        assert v.witness_f.is_zero

    def test_single_simple_pole_independent(self, poles01):
        a = Alphabet(["x0"])
        M = Multiplier(a, poles01, {0: PLR.simple_pole(poles01, 0)})
        assert certify(M).is_independent

    def test_shared_pole_is_dependent(self, poles01):
        # two letters with kernels proportional at one pole
        a = Alphabet(["x0", "x1"])
        M = Multiplier.fuchsian(a, poles01, {0: (0, 2), 1: (0, 3)})
        v = certify(M)
        assert not v.is_independent
        combo = PLR.zero(poles01)
        for letter in a:
            combo = combo + M.terms[letter.index] * v.alpha[letter.index]
        assert v.witness_f.derivative() == combo

    def test_random_fuchsian_independent(self):
        rng = random.Random(99)
        for _ in range(10):
            n = rng.randint(1, 5)
            pts = []
            while len(pts) < n:
                q = GaussianRational(
                    Fraction(rng.randint(-6, 6), rng.randint(1, 4)),
                    Fraction(rng.randint(-6, 6), rng.randint(1, 4)),
                )
                if q not in pts:
                    pts.append(q)
            ps = PoleSet(pts)
            a = Alphabet([f"x{i}" for i in range(n)])
            weights = {}
            for i in range(n):
                w = GaussianRational(0)
                while w.is_zero:
                    w = GaussianRational(
                        Fraction(rng.randint(-5, 5), rng.randint(1, 3)),
                        Fraction(rng.randint(-5, 5), rng.randint(1, 3)),
                    )
                weights[i] = (i, w)
            M = Multiplier.fuchsian(a, ps, weights)
            assert certify(M).is_independent


class TestWitnessRelation:
    def test_counterexample_degree1(self, counterexample_multiplier, poles01):
        v = certify(counterexample_multiplier)
        rel = witness_to_degree1_relation(v, counterexample_multiplier, -1)
        assert rel.status is RelationStatus.EXACT
        # Q = (f(z0) - f)·1 + x0 with f = -1/z, f(-1) = 1
        expected_const = PLR(poles01, (1,), {(0, 1): 1})  # 1 + 1/z
        assert rel.poly.coeff(E) == expected_const
        assert rel.poly.coeff(X0) == PLR.one(poles01)
        assert X1 not in rel.poly.terms
        # numeric spot check: <S|x0> = 1/z0 - 1/z
        defect = numeric_relation_defect(rel.poly, counterexample_multiplier, -1)
        assert defect < 1e-9

    def test_second_nullspace_direction(self, counterexample_multiplier, poles01):
        # alpha = (0, 1): f = 1/(1-z) - analogue for x1
        M = counterexample_multiplier
        alpha = (GaussianRational(0), GaussianRational(1))
        f = M.terms[1].rational_primitive()
        v = Dependent(alpha=alpha, witness_f=f)
        rel = witness_to_degree1_relation(v, M, -1)
        assert rel.status is RelationStatus.EXACT

    def test_fuchsian_precondition(self, polylog_multiplier):
        v = certify(polylog_multiplier)
        with pytest.raises(ValueError):
            witness_to_degree1_relation(v, polylog_multiplier, -1)


class TestRationalCoefficientTable:
    def test_counterexample_depth2(self, counterexample_multiplier, poles01):
        tab = rational_coefficient_table(counterexample_multiplier, -1, 2)
        # <S|x0> = 1/z0 - 1/z = -1 - 1/z at z0 = -1
        assert tab.entries[X0] == PLR(poles01, (-1,), {(0, 1): -1})
        assert tab.entries[X1] == PLR(poles01, (Fraction(-1, 2),), {(1, 1): -1})
        assert set(tab.blocked) == {Word((0, 1)), Word((1, 0))}
        assert set(tab.entries) == {E, X0, X1, Word((0, 0)), Word((1, 1))}
        # invariant: d(entries[x_i v]) = u_i entries[v], entries vanish at z0
        M = counterexample_multiplier
        z0 = GaussianRational(-1)
        for w, F in tab.entries.items():
            if not w:
                continue
            tail = tab.entries[Word(w[1:])]
            assert F.derivative() == M.terms[w[0]] * tail
            assert F.evaluate_exact(z0).is_zero

    def test_polylog_blocks_immediately(self, polylog_multiplier):
        tab = rational_coefficient_table(polylog_multiplier, -1, 2)
        assert set(tab.entries) == {E}
        assert set(tab.blocked) == {X0, X1}

    def test_basepoint_at_pole_rejected(self, counterexample_multiplier):
        with pytest.raises(ValueError):
            rational_coefficient_table(counterexample_multiplier, 0, 1)


class TestVerifyRelation:
    def test_true_relation_exact(self, counterexample_multiplier, poles01):
        M = counterexample_multiplier
        tab = rational_coefficient_table(M, -1, 2)
        Q = expected_counterexample_relation(poles01, Fraction(-1))
        out = verify_relation(Q, M, -1, tab)
        assert out.status is RelationStatus.EXACT

    def test_non_relation_rejected(self, counterexample_multiplier):
        M = counterexample_multiplier
        tab = rational_coefficient_table(M, -1, 2)
        Q = NCPolynomial({X0: PLR.one(M.pole_set)})
        out = verify_relation(Q, M, -1, tab)
        assert out.status is RelationStatus.INCONCLUSIVE

    def test_constant_rejected(self, counterexample_multiplier):
        M = counterexample_multiplier
        tab = rational_coefficient_table(M, -1, 2)
        Q = NCPolynomial({E: PLR.constant(M.pole_set, 5)})
        out = verify_relation(Q, M, -1, tab)
        assert out.status is RelationStatus.INCONCLUSIVE

    def test_blocked_words_fall_back_to_numeric(self, counterexample_multiplier, poles01):
        # shuffle a true relation with x0: still a true relation, but its
        # reduction support hits the blocked words x0x1 / x1x0
        M = counterexample_multiplier
        R2 = expected_counterexample_relation(poles01, Fraction(-1))
        Q3 = shuffle_product(R2, NCPolynomial({X0: PLR.one(poles01)}))
        tab = rational_coefficient_table(M, -1, 3)
        out = verify_relation(Q3, M, -1, tab)
        assert out.status is RelationStatus.NUMERIC
        assert out.defect is not None and out.defect < 1e-8


class TestDiscoverRelations:
    def test_counterexample_z0_minus_one(self, counterexample_multiplier, poles01):
        rels = discover_relations(counterexample_multiplier, -1, 2)
        assert len(rels) == 1
        assert rels[0].poly == expected_counterexample_relation(poles01, Fraction(-1))
        assert rels[0].status is RelationStatus.EXACT
        assert rels[0].defect < 1e-9

    def test_basepoint_parametric_family(self, counterexample_multiplier, poles01):
        rels = discover_relations(counterexample_multiplier, -3, 2)
        assert len(rels) == 1
        assert rels[0].poly == expected_counterexample_relation(poles01, Fraction(-3))
        assert rels[0].status is RelationStatus.EXACT

    def test_depth3_kernel_is_canonicalized(self, counterexample_multiplier, poles01):
        # the depth-3 kernel is multi-dimensional; echelon canonicalization
        # must produce monic rational vectors, not rotated SVD noise
        rels = discover_relations(counterexample_multiplier, -1, 3, sample_count=30)
        assert len(rels) == 5
        depth2 = expected_counterexample_relation(poles01, Fraction(-1))
        assert any(r.poly == depth2 and r.status is RelationStatus.EXACT for r in rels)
        for r in rels:
            lead = max(r.poly.terms)
            assert r.poly.coeff(lead) == PLR.one(poles01)
            assert r.defect < 1e-9
            for c in r.poly.terms.values():
                assert all(q.re.denominator <= 64 and q.im.denominator <= 64
                           for q in c.poly)

    def test_polylog_finds_nothing(self, polylog_multiplier):
        assert discover_relations(polylog_multiplier, -1, 2) == []

    def test_truncation_zero(self, counterexample_multiplier):
        assert discover_relations(counterexample_multiplier, -1, 0) == []

    def test_sample_count_guard(self, counterexample_multiplier):
        with pytest.raises(ValueError):
            discover_relations(counterexample_multiplier, -1, 2, sample_count=3)
