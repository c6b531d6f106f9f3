import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from cuspline.formal import FormalSum
from cuspline.fuzz import line_symbols, random_family
from cuspline.glalg import ONE, M_star, filter_by_support
from cuspline.jantzen import (
    DecompositionRequired,
    SteinbergClass,
    assoc_check,
    classify_steinberg,
    direct_mu_filter,
    langlands_display,
    lemma_nonzero_check,
    mu_filter_left,
    mu_filter_right,
    mu_glue,
    per_line_flags,
    product_distribute,
    psi_glue,
    tempered_glued,
    x_project,
)
from cuspline.lines import InvalidPartition, LineSet
from cuspline.params import (
    ClassicalStandard,
    DiscreteSeriesParam,
    JantzenFamily,
    LanglandsParam,
    ParameterError,
    SigmaSupport,
    TemperedParam,
    degree,
    mu_star_classical,
    s_GL_standard,
)

from conftest import REG, RHO, RHO0, RHO1, SIGMA, U, UT, gl, seg, standards_on

X0, X1, XU = LineSet.of(RHO0), LineSet.of(RHO1), LineSet.of(U)


def lparam(line, neg=(), jord=(), signed=(), extra=(), sigma=SIGMA):
    ds = DiscreteSeriesParam(line, tuple(jord), sigma=sigma)
    return LanglandsParam(tuple(neg), TemperedParam(ds, tuple(signed), tuple(extra)))


P0 = lparam(RHO0, neg=[seg(RHO0, 1, 2)], jord=[seg(RHO0, -1, 1)])
P1 = lparam(RHO1, jord=[seg(RHO1, 1, 2)])
PU = lparam(U, neg=[seg(UT, 1)])
FAM = JantzenFamily.build(SIGMA, [P0, P1, PU])


class TestProjectAndGlue:
    def test_project(self):
        part = (X0, X1 | XU)
        assert x_project(FAM, part, 1) == JantzenFamily.build(SIGMA, [P0])
        assert x_project(FAM, part, 2) == JantzenFamily.build(SIGMA, [P1, PU])

    def test_project_to_empty_side(self):
        fam = JantzenFamily.build(SIGMA, [P0])
        assert x_project(fam, (X1, X0), 1) == JantzenFamily(SIGMA)

    def test_project_needs_covering_partition(self):
        with pytest.raises(InvalidPartition):
            x_project(FAM, (X0, X1), 1)

    def test_project_rejects_half_lines(self):
        with pytest.raises(InvalidPartition):
            x_project(FAM, (X0 | X1 | LineSet(frozenset({U})), LineSet(frozenset({UT}))), 1)

    def test_round_trip(self):
        part = (X0 | XU, X1)
        g1, g2 = x_project(FAM, part, 1), x_project(FAM, part, 2)
        assert psi_glue(SIGMA, [(part[0], g1), (part[1], g2)]) == FAM
        assert psi_glue(SIGMA, [(X0, JantzenFamily.build(SIGMA, [P0])), (X1, JantzenFamily(SIGMA))]) == JantzenFamily.build(SIGMA, [P0])

    def test_degree_law(self):
        g1 = JantzenFamily.build(SIGMA, [P0])
        g2 = JantzenFamily.build(SIGMA, [P1])
        glued = psi_glue(SIGMA, [(X0, g1), (X1, g2)])
        r = SIGMA.rank
        assert degree(glued) == (degree(g1) - r) + (degree(g2) - r) + r

    def test_glue_errors(self):
        g = JantzenFamily.build(SIGMA, [P0])
        with pytest.raises(InvalidPartition):
            psi_glue(SIGMA, [(X0, g), (X0, JantzenFamily(SIGMA))])
        with pytest.raises(ParameterError):
            psi_glue(SigmaSupport("other", 1), [(X0, g)])
        with pytest.raises(InvalidPartition):
            psi_glue(SIGMA, [(X1, g)])

    def test_langlands_display(self):
        q = lparam(RHO1, neg=[seg(RHO1, 1, 2)])
        display, tempered = langlands_display(JantzenFamily.build(SIGMA, [P0, q, PU]))
        assert [ex for ex, _ in display] == [Fraction(3, 2), Fraction(1)]
        assert display[0][1] == gl(seg(RHO0, 1, 2), seg(RHO1, 1, 2))
        assert tempered_glued(tempered) == (True, True) or tempered_glued(tempered)[0]

    @given(st.integers(0, 10**6))
    def test_round_trip_random(self, seed):
        rng = random.Random(seed)
        lines = line_symbols(REG)
        fam = random_family(rng, lines, SIGMA)
        cut = rng.randint(0, len(lines))
        x1, x2 = LineSet.of(*lines[:cut]), LineSet.of(*lines[cut:])
        g1, g2 = x_project(fam, (x1, x2), 1), x_project(fam, (x1, x2), 2)
        assert psi_glue(SIGMA, [(x1, g1), (x2, g2)]) == fam


class TestMuFilters:
    def test_left_rank_one(self):
        r = gl(seg(RHO, 0))
        x1, x2 = LineSet.of(RHO), LineSet()
        out = mu_filter_left(r, SIGMA, x1, x2)
        # 1 (x) (rho x| sigma) has right support on X1 and is filtered out
        assert out == FormalSum.single((r, ClassicalStandard(ONE, SIGMA)), 2)
        assert out == filter_by_support(mu_star_classical(r, SIGMA), x1, x2)

    def test_left_empty_beta(self):
        gamma = JantzenFamily.build(SIGMA, [P1])
        assert mu_filter_left(ONE, gamma, X0, X1) == FormalSum.single((ONE, gamma))

    def test_left_family_verbatim(self):
        gamma = JantzenFamily.build(SIGMA, [P1])
        beta = gl(seg(RHO0, 0, 1))
        out = mu_filter_left(beta, gamma, X0, X1)
        expected = filter_by_support(M_star(beta), X0, LineSet()).map(lambda t: (t[0], gamma))
        assert out == expected and len(out) == 3

    def test_left_support_violation(self):
        with pytest.raises(InvalidPartition):
            mu_filter_left(gl(seg(RHO1, 0)), SIGMA, X0, X1)

    @given(standards_on([RHO0], max_segments=2), standards_on([U, UT], max_segments=2))
    @settings(max_examples=50)
    def test_left_matches_direct(self, beta, g):
        gamma = ClassicalStandard(g, SIGMA)
        assert mu_filter_left(beta, gamma, X0, XU) == direct_mu_filter(beta, gamma, X0, XU)

    def test_right_shape(self):
        r1, r2 = gl(seg(RHO0, 0)), gl(seg(RHO1, 0))
        xi = FormalSum.single((r2, SIGMA), 2)
        assert mu_filter_right(r1, xi, X0, X1) == FormalSum.single((r2, ClassicalStandard(r1, SIGMA)), 2)
        assert not mu_filter_right(r1, FormalSum(), X0, X1)
        assert mu_filter_right(ONE, xi, X0, X1) == FormalSum.single((r2, ClassicalStandard(ONE, SIGMA)), 2)

    @given(standards_on([RHO0], max_segments=2), standards_on([U, UT], max_segments=2))
    @settings(max_examples=50)
    def test_right_matches_direct(self, beta, g):
        full = mu_star_classical(beta * g, SIGMA)
        direct = filter_by_support(full, XU, X0)
        assert mu_filter_right(beta, s_GL_standard(g, SIGMA), X0, XU) == direct

    def test_lemma(self):
        r = gl(seg(RHO, 0))
        assert lemma_nonzero_check(r, SIGMA, LineSet.of(RHO))
        assert lemma_nonzero_check(ONE, SIGMA, LineSet.of(RHO))
        assert lemma_nonzero_check(gl(seg(RHO0, 0)), SIGMA, X1)


class TestDistributeAndGlue:
    def test_irreducible_sides(self):
        g1 = JantzenFamily.build(SIGMA, [P0])
        g2 = JantzenFamily.build(SIGMA, [P1])
        out = product_distribute(SIGMA, [(X0, ONE, g1, None), (X1, ONE, g2, None)])
        assert out == FormalSum.single(JantzenFamily.build(SIGMA, [P0, P1]))

    def test_bilinear(self):
        a = [JantzenFamily.build(SIGMA, [lparam(RHO0, jord=[seg(RHO0, 0, k)])]) for k in (0, 1)]
        b = [JantzenFamily.build(SIGMA, [lparam(RHO1, jord=[seg(RHO1, 1, k)])]) for k in (1, 2, 3)]
        d1 = FormalSum([(a[0], 1), (a[1], 2)])
        d2 = FormalSum([(b[0], 1), (b[1], 1), (b[2], 3)])
        beta1, beta2 = gl(seg(RHO0, 0)), gl(seg(RHO1, 1))
        out = product_distribute(SIGMA, [(X0, beta1, JantzenFamily(SIGMA), d1), (X1, beta2, JantzenFamily(SIGMA), d2)])
        assert len(out) == 6 and out.total() == 3 * 5
        assert out[JantzenFamily.build(SIGMA, [a[1].lines["rho0"], b[2].lines["rho1"]])] == 6

    def test_sigma_side(self):
        a = JantzenFamily.build(SIGMA, [P0])
        d1 = FormalSum([(a, 2)])
        out = product_distribute(SIGMA, [(X0, gl(seg(RHO0, 0)), JantzenFamily(SIGMA), d1), (X1, ONE, JantzenFamily(SIGMA), None)])
        assert out == d1

    def test_requires_decomposition(self):
        with pytest.raises(DecompositionRequired):
            product_distribute(SIGMA, [(X0, gl(seg(RHO0, 0)), JantzenFamily(SIGMA), None)])

    def test_mu_glue_trivial_side(self):
        mu1 = mu_star_classical(gl(seg(RHO0, 0, 1)), SIGMA)
        mu2 = FormalSum.single((ONE, SIGMA))
        assert mu_glue(mu1, mu2, X0, X1) == mu1

    def test_mu_glue_bilinear(self):
        mu1 = FormalSum([((ONE, SIGMA), 1), ((gl(seg(RHO0, 0)), SIGMA), 2)])
        mu2 = FormalSum([((ONE, SIGMA), 1), ((gl(seg(RHO1, 0)), SIGMA), 3)])
        out = mu_glue(mu1, mu2, X0, X1)
        assert len(out) == 4 and out.total() == 12

    @given(standards_on([RHO0], max_segments=2), standards_on([RHO1], max_segments=2))
    @settings(max_examples=40)
    def test_mu_glue_consistency(self, b1, b2):
        glued = mu_glue(mu_star_classical(b1, SIGMA), mu_star_classical(b2, SIGMA), X0, X1)
        assert glued == mu_star_classical(b1 * b2, SIGMA)


class TestTemperedAndAssoc:
    def test_tempered_flags(self):
        ds_only = JantzenFamily.build(SIGMA, [P1, lparam(RHO0, jord=[seg(RHO0, -1, 1)])])
        assert tempered_glued(ds_only) == (True, True)
        assert tempered_glued(FAM)[0] is False
        assert tempered_glued(JantzenFamily(SIGMA)) == (True, True)
        signed = JantzenFamily.build(SIGMA, [lparam(RHO0, signed=[(seg(RHO0, 0), 1)])])
        assert tempered_glued(signed) == (True, False)

    @given(st.integers(0, 10**6))
    def test_tempered_biconditional(self, seed):
        fam = random_family(random.Random(seed), line_symbols(REG), SIGMA)
        flags = per_line_flags(fam).values()
        assert tempered_glued(fam) == (all(f[0] for f in flags), all(f[1] for f in flags))

    def test_assoc_examples(self):
        assert assoc_check(FAM, (X0, X1, XU))
        one = JantzenFamily.build(SIGMA, [P0])
        assert assoc_check(one, (X0, LineSet(), LineSet()))

    def test_assoc_irregular(self):
        with pytest.raises(InvalidPartition):
            assoc_check(FAM, (X0 | X1, X1, XU))


class TestSteinberg:
    def test_examples(self):
        st_param = lparam(RHO, jord=[seg(RHO, Fraction(1, 2), Fraction(3, 2))])
        assert classify_steinberg(st_param, 2) is SteinbergClass.STEINBERG
        split = lparam(RHO, neg=[seg(RHO, Fraction(1, 2)), seg(RHO, Fraction(3, 2))])
        assert classify_steinberg(split, 2) is SteinbergClass.DUAL_CANDIDATE
        assert classify_steinberg(st_param, 3) is SteinbergClass.OTHER

    def test_alpha_zero_dual_candidate(self):
        p = lparam(RHO0, neg=[seg(RHO0, 1), seg(RHO0, 2)], signed=[(seg(RHO0, 0), -1)])
        assert classify_steinberg(p, 3) is SteinbergClass.DUAL_CANDIDATE
        q = lparam(RHO0, neg=[seg(RHO0, 1), seg(RHO0, 2)], signed=[(seg(RHO0, 0), 1)])
        assert classify_steinberg(q, 3) is SteinbergClass.OTHER

    def test_epsilon_ignored(self):
        block = seg(RHO1, 1, 2)
        ds = DiscreteSeriesParam(RHO1, (block,), ((block, -1),), SIGMA)
        assert classify_steinberg(LanglandsParam((), TemperedParam(ds)), 2) is SteinbergClass.STEINBERG

    def test_bad_n(self):
        with pytest.raises(ParameterError):
            classify_steinberg(P1, 0)

    def test_non_self_dual(self):
        assert classify_steinberg(PU, 1) is SteinbergClass.OTHER
