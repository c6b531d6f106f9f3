import random
from collections import Counter
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from cuspline.formal import FormalSum
from cuspline.fuzz import line_symbols, random_family
from cuspline.glalg import ONE, support_symbols
from cuspline.lines import LinePoint
from cuspline.params import (
    ClassicalStandard,
    DiscreteSeriesParam,
    JantzenFamily,
    LanglandsParam,
    ParameterError,
    SigmaSupport,
    TemperedParam,
    contragredient_param,
    contragredient_support,
    cuspidal_support,
    degree,
    infinitesimal_character,
    mu_star_classical,
    normalized_points,
    s_GL_standard,
    steinberg_support,
    trivial_param,
)

from conftest import REG, RHO, RHO0, RHO1, SIGMA, U, UT, gl, seg, standards_on

S0 = SigmaSupport("sigma", 0)


def lparam(line, neg=(), jord=(), signed=(), extra=(), sigma=SIGMA):
    ds = DiscreteSeriesParam(line, tuple(jord), sigma=sigma)
    return LanglandsParam(tuple(neg), TemperedParam(ds, tuple(signed), tuple(extra)))


class TestValidation:
    def test_jordan_blocks_in_alpha_plus_z(self):
        with pytest.raises(ParameterError):
            DiscreteSeriesParam(RHO, (seg(RHO, 0, 1),))
        DiscreteSeriesParam(RHO, (seg(RHO, Fraction(-1, 2), Fraction(1, 2)),))

    def test_jordan_blocks_distinct(self):
        with pytest.raises(ParameterError):
            DiscreteSeriesParam(RHO0, (seg(RHO0, 0, 1), seg(RHO0, 0, 1)))

    def test_eps_domain(self):
        a, b = seg(RHO0, 0, 1), seg(RHO0, -1, 1)
        DiscreteSeriesParam(RHO0, (a, b), ((a, 1), ((a, b), -1)))
        with pytest.raises(ParameterError):
            DiscreteSeriesParam(RHO0, (a,), ((b, 1),))
        with pytest.raises(ParameterError):
            DiscreteSeriesParam(RHO0, (a,), ((a, 2),))

    def test_signed_blocks_must_reduce(self):
        ds = DiscreteSeriesParam(RHO0, (seg(RHO0, 0),))
        # [0,0] is a Jordan block: no reducibility
        with pytest.raises(ParameterError):
            TemperedParam(ds, ((seg(RHO0, 0), 1),))
        TemperedParam(ds, ((seg(RHO0, -1, 1), 1),))
        with pytest.raises(ParameterError):
            TemperedParam(ds, ((seg(RHO0, 0, 1), 1),))

    def test_extra_segments(self):
        ds = DiscreteSeriesParam(RHO, sigma=SIGMA)
        # alpha = 1/2 is not a point of [0,0]: irreducible, allowed
        TemperedParam(ds, (), (seg(RHO, 0),))
        # alpha is a point of [-1/2,1/2]: reducible, needs to be signed
        half = seg(RHO, Fraction(-1, 2), Fraction(1, 2))
        with pytest.raises(ParameterError):
            TemperedParam(ds, (), (half,))
        TemperedParam(ds, ((half, 1),), (half,))

    def test_non_self_dual_line(self):
        with pytest.raises(ParameterError):
            DiscreteSeriesParam(U, (seg(U, 0),))
        t = TemperedParam(DiscreteSeriesParam(U), (), (seg(UT, 0),))
        assert t.extra == (seg(U, 0),)

    def test_langlands_exponents_positive_and_sorted(self):
        with pytest.raises(ParameterError):
            lparam(RHO0, neg=[seg(RHO0, -1, 1)])
        p = lparam(RHO0, neg=[seg(RHO0, 1), seg(RHO0, 1, 3), seg(RHO0, 0, 1)])
        assert [x.e + x.b for x in p.neg] == [4, 2, 1]


class TestDegree:
    def test_additive_example(self):
        p1 = lparam(RHO0, jord=[seg(RHO0, 0, 1)])
        p2 = lparam(RHO1, neg=[seg(RHO1, 1, 3)])
        assert degree(JantzenFamily.build(SIGMA, [p1, p2])) == 6

    def test_empty_and_single(self):
        assert degree(JantzenFamily(SIGMA)) == 1
        assert degree(lparam(RHO0, jord=[seg(RHO0, 0, 1)], sigma=S0)) == 2

    def test_degree_unit(self):
        from cuspline.lines import CuspidalSymbol

        big = CuspidalSymbol("big", True, 0, None, 3)
        assert degree(lparam(big, jord=[seg(big, 0, 1)], sigma=S0)) == 6

    @given(st.integers(0, 10**6))
    def test_family_degree_law(self, seed):
        rng = random.Random(seed)
        fam = random_family(rng, line_symbols(REG), SIGMA)
        k = len(fam.per_line)
        per_line = sum(degree(p) for _, p in fam.per_line)
        assert degree(fam) == per_line - (k - 1) * SIGMA.rank if k else degree(fam) == SIGMA.rank


class TestSupport:
    def test_examples(self):
        p = lparam(RHO1, neg=[seg(RHO1, 1)])
        assert cuspidal_support(p) == (Counter({LinePoint(RHO1, 1): 1}), SIGMA)
        q = lparam(RHO0, jord=[seg(RHO0, -1, 1)])
        assert cuspidal_support(q)[0] == Counter({LinePoint(RHO0, x): 1 for x in (-1, 0, 1)})
        fam = JantzenFamily.build(SIGMA, [p, q])
        assert cuspidal_support(fam)[0] == cuspidal_support(p)[0] + cuspidal_support(q)[0]

    @given(st.integers(0, 10**6))
    def test_contragredient_invariance(self, seed):
        rng = random.Random(seed)
        fam = random_family(rng, line_symbols(REG), SIGMA)
        pts = cuspidal_support(fam)[0]
        lhs = infinitesimal_character(contragredient_param(fam))[0]
        assert lhs == normalized_points(contragredient_support(pts).elements())

    def test_steinberg_support(self):
        assert steinberg_support(RHO, SIGMA, 2) == Counter({LinePoint(RHO, Fraction(1, 2)): 1, LinePoint(RHO, Fraction(3, 2)): 1})
        assert steinberg_support(RHO1, SIGMA, 1) == Counter({LinePoint(RHO1, 1): 1})
        assert steinberg_support(RHO0, SIGMA, 3) == Counter({LinePoint(RHO0, x): 1 for x in range(3)})
        with pytest.raises(ParameterError):
            steinberg_support(RHO0, SIGMA, 0)
        with pytest.raises(ParameterError):
            steinberg_support(U, SIGMA, 1)


class TestMuStar:
    def test_rank_one_self_dual(self):
        r = gl(seg(RHO, 0))
        expected = FormalSum([((ONE, ClassicalStandard(r, SIGMA)), 1), ((r, ClassicalStandard(ONE, SIGMA)), 2)])
        assert mu_star_classical(r, SIGMA) == expected

    def test_empty(self):
        assert mu_star_classical(ONE, SIGMA) == FormalSum.single((ONE, ClassicalStandard(ONE, SIGMA)))
        assert s_GL_standard(ONE, SIGMA) == FormalSum.single((ONE, SIGMA))

    def test_rank_one_non_self_dual(self):
        r, rt = gl(seg(U, 0)), gl(seg(UT, 0))
        expected = FormalSum([
            ((ONE, ClassicalStandard(r, SIGMA)), 1),
            ((r, ClassicalStandard(ONE, SIGMA)), 1),
            ((rt, ClassicalStandard(ONE, SIGMA)), 1),
        ])
        assert mu_star_classical(r, SIGMA) == expected

    def test_s_gl(self):
        r = gl(seg(RHO, 0))
        assert s_GL_standard(r, SIGMA) == FormalSum.single((r, SIGMA), 2)
        # delta([0,1]) x| sigma: all terms with nothing left on the classical side
        s = lambda b, e=None: seg(RHO0, b, e)
        expected = FormalSum([
            ((gl(s(0, 1)), SIGMA), 1),
            ((gl(s(0), s(1)), SIGMA), 1),
            ((gl(s(-1, 0)), SIGMA), 1),
        ])
        assert s_GL_standard(gl(s(0, 1)), SIGMA) == expected

    @given(standards_on([RHO0, U]))
    def test_s_gl_is_the_empty_right_part(self, beta):
        full = mu_star_classical(beta, SIGMA)
        kept = FormalSum(((l, c.sigma), m) for (l, c), m in full if not c.gl)
        assert kept == s_GL_standard(beta, SIGMA)

    @given(standards_on([RHO0]))
    def test_closed_on_self_dual_line(self, beta):
        for (left, right), _ in mu_star_classical(beta, SIGMA):
            assert support_symbols(left) <= {"rho0"}


class TestContragredient:
    def test_symmetric_parameter_fixed(self):
        p = lparam(RHO0, jord=[seg(RHO0, -1, 1)])
        assert contragredient_param(p) == p

    def test_negative_part_renormalized(self):
        p = lparam(RHO0, neg=[seg(RHO0, 1, 2)])
        assert contragredient_param(p).neg == (seg(RHO0, 1, 2),)

    def test_non_self_dual_flip(self):
        p = lparam(U, neg=[seg(U, 1, 2)])
        # [1,2] on u goes to [-2,-1] on u~, whose normal form is [1,2] on u again
        assert contragredient_param(p).neg == (seg(U, 1, 2),)

    @given(st.integers(0, 10**6))
    def test_componentwise_on_families(self, seed):
        rng = random.Random(seed)
        fam = random_family(rng, line_symbols(REG), SIGMA)
        c = contragredient_param(fam)
        assert c.line_ids() == fam.line_ids()
        for k, p in fam.per_line:
            assert c[k] == contragredient_param(p)

    def test_trivial_lines_dropped(self):
        fam = JantzenFamily.build(SIGMA, [trivial_param(RHO0, SIGMA)])
        assert fam.per_line == ()
