from fractions import Fraction

import pytest

from algebra.unipoly import UniPoly
from algebra.weyl_core import X, Y, WeylElement
from shared.utils.errors import ParseError
from shared.utils.text_io import parse_element, parse_unipoly, render_element, render_unipoly, tokenize


class TestParse:
    def test_final_element(self, R):
        assert R == WeylElement({(1, 0): 1, (2, 3): 2, (3, 6): 1})

    def test_products_are_normal_ordered(self):
        assert parse_element("Y*X") == X * Y + 1

    def test_rational_coefficients(self):
        P = parse_element("3/2*X^2")
        assert P.coefficient(2, 0) == Fraction(3, 2)
        assert len(P) == 1

    def test_precedence(self):
        assert parse_element("2*X^2") == 2 * X * X
        assert parse_element("-X^2") == -(X * X)
        assert parse_element("(X + Y)^2") == X * X + 2 * X * Y + Y * Y + 1

    def test_lowercase_symbols(self):
        assert parse_element("x*y + 1") == X * Y + 1

    def test_whitespace_is_insignificant(self):
        assert parse_element("  X+\tY ") == X + Y


class TestParseErrors:
    def test_caret_under_offending_token(self):
        with pytest.raises(ParseError) as excinfo:
            parse_element("X + * Y")
        error = excinfo.value
        assert error.position == (4, 5)
        assert error.highlight("X + * Y") == "X + * Y\n    ^"

    def test_unknown_character(self):
        with pytest.raises(ParseError) as excinfo:
            tokenize("X $ Y")
        assert excinfo.value.position == (2, 3)

    @pytest.mark.parametrize("source", ["", "X +", "(X", "X^-1", "X/Y", "X/0", "X^Y"])
    def test_rejected_sources(self, source):
        with pytest.raises(ParseError):
            parse_element(source)

    def test_parse_error_is_a_precondition_error(self):
        with pytest.raises(ValueError):
            parse_element("X )")


class TestRender:
    def test_canonical_text(self, R):
        assert render_element(R) == "X + 2*X^2*Y^3 + X^3*Y^6"
        assert render_element(parse_element("Y*X")) == "1 + X*Y"

    def test_signs_and_fractions(self):
        assert render_element(parse_element("-X - Y/2")) == "-1/2*Y - X"
        assert render_element(WeylElement.zero()) == "0"

    def test_rendered_text_parses_back(self, R):
        P = parse_element("(X - 1/3*Y)^3 + 7")
        assert parse_element(render_element(P)) == P
        assert parse_element(render_element(R)) == R

    def test_unipoly(self):
        f = UniPoly({0: 1, 1: 1, 2: Fraction(-1, 2)})
        assert render_unipoly(f) == "1 + x - 1/2*x^2"
        assert render_unipoly(f, "y") == "1 + y - 1/2*y^2"


class TestParseUnipoly:
    def test_either_variable(self):
        assert parse_unipoly("1 + 2*y^3 + y^6") == UniPoly({0: 1, 3: 2, 6: 1})
        assert parse_unipoly("1 + x - x^2/2") == UniPoly({0: 1, 1: 1, 2: Fraction(-1, 2)})

    def test_constant(self):
        assert parse_unipoly("5") == UniPoly.constant(5)

    def test_mixed_variables_are_refused(self):
        with pytest.raises(ParseError):
            parse_unipoly("x*y")
