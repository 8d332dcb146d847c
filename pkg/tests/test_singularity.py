from fractions import Fraction as F

import pytest
import sympy as sp
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from confluentia.algebra import INF, make_ode, validate
from confluentia.contraction import deformed_lame_ode, deformed_mathieu_ode
from confluentia.equations import algebraic_mathieu_ode, lame_ode, oscillator_algebraic_ode
from confluentia.exceptions import (ConfluentiaError, InconsistentSymbols, IrrationalExponents,
                                    IrregularPoint, NotASingularity)
from confluentia.singularity import (ConfluenceKind, SMultisymbol, classify, classify_point,
                                     confluence_chain, confluence_type, frobenius_exponents,
                                     is_regular, is_singular, smultisymbol)

from oracles import sympy_frobenius

MATHIEU = algebraic_mathieu_ode(1, 1)
OSCILLATOR = oscillator_algebraic_ode(1, 1)
LAME = lame_ode(2, 1, l=1)


def test_regularity_examples():
    assert is_regular(MATHIEU, F(0))
    assert is_regular(MATHIEU, F(1))
    assert not is_regular(MATHIEU, INF)
    assert not is_regular(OSCILLATOR, INF)
    with pytest.raises(NotASingularity):
        is_regular(MATHIEU, F(1, 2))


def test_frobenius_examples():
    assert frobenius_exponents(OSCILLATOR, F(0)) == (0, F(1, 2))
    assert frobenius_exponents(MATHIEU, F(0)) == (0, F(1, 2))
    # z^2 y'' + z y' - y = 0: rho^2 - 1 = 0
    assert frobenius_exponents(make_ode(1, [(0, 2)], [0, 1], [-1]), F(0)) == (-1, 1)
    with pytest.raises(IrregularPoint):
        frobenius_exponents(MATHIEU, INF)


def test_irrational_exponents_flagged():
    # z^2 y'' + z y' - 2y: rho = +-sqrt(2)
    spec = make_ode(1, [(0, 2)], [0, 1], [-2])
    with pytest.raises(IrrationalExponents) as info:
        frobenius_exponents(spec, F(0))
    assert info.value.discriminant == 8
    pt = classify_point(spec, F(0))
    assert pt.regular and pt.irrational_exponents and pt.srank == 1 and not pt.elementary


def test_possibly_apparent_flag():
    # z y'' + 0 y' ... exponents {0, 1}: z y'' + y = 0 has a0 = 0, b0 = 0
    pt = classify_point(make_ode(1, [(0, 1)], [], [1]), F(0))
    assert pt.frobenius_exponents == (0, 1) and pt.possibly_apparent


@st.composite
def regular_point_specs(draw):
    """(z - c)^2 y'' + (z - c) A(z) y' + B(z) y with small integer A, B."""
    c = draw(st.integers(-2, 2))
    a = draw(st.lists(st.integers(-3, 3), min_size=1, max_size=2))
    b = draw(st.lists(st.integers(-3, 3), min_size=1, max_size=2))
    return c, a, b


@given(regular_point_specs())
@settings(max_examples=25, deadline=None)
def test_frobenius_matches_sympy(data):
    c, a, b = data
    z = sp.Symbol("z")
    pa = sum(ai * z ** i for i, ai in enumerate(a))
    pb = sum(bi * z ** i for i, bi in enumerate(b))
    p1 = sp.Poly(sp.expand((z - c) * pa), z).all_coeffs()[::-1]
    p2 = sp.Poly(sp.expand(pb), z).all_coeffs()[::-1] if pb != 0 else []
    spec = make_ode(1, [(c, 2)], [int(x) for x in p1], [int(x) for x in p2])
    try:
        validate(spec)
        ours = frobenius_exponents(spec, F(c))
    except IrrationalExponents:
        ref = sympy_frobenius((z - c) ** 2, (z - c) * pa, pb, c)
        assert any(not r.is_rational for r in ref)
        return
    except ConfluentiaError:
        assume(False)
    ref = sympy_frobenius((z - c) ** 2, (z - c) * pa, pb, c)
    if len(ref) == 1:
        ref = ref * 2
    assert [F(str(r)) for r in ref] == list(ours)


def test_classify_corpus():
    assert str(smultisymbol(MATHIEU)) == "{1/2;1/2;3/2}"
    assert str(smultisymbol(OSCILLATOR)) == "{1/2;2}"
    assert str(smultisymbol(LAME)) == "{1/2;1/2;1/2;1}"
    assert str(smultisymbol(lame_ode(2, 0, l=1))) == "{1/2;1/2;1/2;1}"


def test_point_details():
    inf_pt = classify_point(MATHIEU, INF)
    assert not inf_pt.regular and inf_pt.srank == F(3, 2) and inf_pt.ramified
    inf_pt = classify_point(OSCILLATOR, INF)
    assert inf_pt.srank == 2 and inf_pt.ramified is False
    lame_inf = classify_point(lame_ode(2, 0, l=1), INF)
    assert lame_inf.regular and not lame_inf.elementary and lame_inf.srank == 1
    assert lame_inf.frobenius_exponents == (F(-1, 2), 1)


def test_infinity_ordinary():
    # y'' = 0 in the w chart: w^4 Y'' + 2 w^3 Y' -> strip -> w Y'' + 2 Y': regular
    assert is_singular(make_ode(1, [], [], []), INF)
    # z(z-1) y'' + (2z-1) y' = 0 is ordinary at infinity: log(z/(z-1)) solves it
    spec = make_ode(1, [(0, 1), (1, 1)], [-1, 2], [])
    assert not is_singular(spec, INF)
    assert str(smultisymbol(spec)) == "{1;1}"


@pytest.mark.parametrize("alpha", [F(1, 2), F(1, 3), 2, F(-3, 5)])
def test_deformed_families_keep_symbol(alpha):
    alpha = abs(F(alpha))
    assert str(smultisymbol(deformed_mathieu_ode(alpha, 1, 1))) == "{1/2;1/2;3/2}"
    assert str(smultisymbol(deformed_lame_ode(alpha, 1, 1, l=1))) == "{1/2;1/2;1/2;1}"
    assert str(smultisymbol(deformed_lame_ode(alpha, 3, F(2, 7), l=2))) == "{1/2;1/2;1/2;1}"


def test_report_json_shape():
    rep = classify(MATHIEU).to_dict()
    assert rep["smultisymbol"] == ["1/2", "1/2", "3/2"]
    assert rep["points"][0] == {"location": "0", "regular": True, "elementary": True, "srank": "1/2",
                                "ramified": None, "exponents": ["0", "1/2"]}
    assert rep["points"][2]["location"] == "inf"


# -- confluence ------------------------------------------------------------------

S = SMultisymbol.of


def test_mathieu_to_oscillator_is_strong():
    v = confluence_type(S("1/2", "1/2", "3/2"), ("1/2", "3/2"), S("1/2", "2"))
    assert v.kind is ConfluenceKind.STRONG and v.new_rank == 2


def test_lame_double_confluence_chain():
    chain = confluence_chain([S("1/2", "1/2", "1/2", "1"), S("1/2", "1/2", "3/2"), S("1/2", "2")],
                             [("1/2", "1"), ("1/2", "3/2")])
    assert [v.kind for v in chain] == [ConfluenceKind.STRONG, ConfluenceKind.STRONG]


def test_weak_confluence():
    v = confluence_type(S("1/2", "1/2", "1"), ("1/2", "1/2"), S("1", "3/2"))
    assert v.kind is ConfluenceKind.WEAK


@pytest.mark.parametrize("before,merged,after", [
    (S("1/2", "2"), ("1/2", "1/2"), S("5/2")),
    (S("1/2", "1/2", "1/2", "1"), ("1/2", "1/2"), S("1/2", "1/2", "3/2")),
    (S("1/2", "1/2", "3/2"), ("1/2", "3/2"), S("1/2", "1/2", "2")),
    (S("1/2", "1/2", "3/2"), ("1/2", "3/2"), S("1/2", "1")),
])
def test_inconsistent_symbols(before, merged, after):
    with pytest.raises(InconsistentSymbols):
        confluence_type(before, merged, after)
