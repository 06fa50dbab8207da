"""Tests for map-spec parsing, presentations, and CSV emitters."""

from fractions import Fraction

import pytest

from permdeform.algebra import ParamPoly, PolyElem
from permdeform.cochains import (
    TwoCochain,
    kappa_C_penta,
    kappa_C_tri,
    kappa_L1,
    kappa_L_tri,
)
from permdeform.obstructions import case_tables, render_cell
from permdeform.perms import parse_perm
from permdeform.render import (
    MapSpec,
    MapSpecError,
    linear_factored,
    parse_subst,
    presentation_lines,
    table_csv,
)

A = ParamPoly.param("a")
B = ParamPoly.param("b")
C = ParamPoly.param("c")
A1 = ParamPoly.param("a1")


class TestMapSpec:
    @pytest.mark.parametrize(
        "text,canonical",
        [
            ("Ltri(a,b)+Cpenta(a,b)+Ctri(c)", "Ltri(a,b)+Ctri(c)+Cpenta(a,b)"),
            ("Ctri(c) + Ltri(a, 1/2)", "Ltri(a,1/2)+Ctri(c)"),
            ("", ""),
            ("L1(a1)", "L1(a1)"),
            ("L1(-3/2)", "L1(-3/2)"),
            ("Cpenta(0,1)+L1(2)", "L1(2)+Cpenta(0,1)"),
        ],
    )
    def test_round_trip(self, text, canonical):
        spec = MapSpec.parse(text)
        assert spec.render() == canonical
        assert MapSpec.parse(spec.render()).render() == canonical

    def test_build_matches_constructors(self):
        kL, kC = MapSpec.parse("Ltri(a,b)").build(5)
        assert kL == kappa_L_tri(A, B, 5)
        assert kC.is_zero()
        kL, kC = MapSpec.parse("Ctri(c)+Cpenta(a,b)").build(5)
        assert kL.is_zero()
        assert kC == kappa_C_tri(C, 5) + kappa_C_penta(A, B, 5)
        kL, kC = MapSpec.parse("L1(1/2)").build(4)
        assert kL == kappa_L1(Fraction(1, 2), 4)

    def test_empty_spec_is_the_zero_map(self):
        kL, kC = MapSpec.parse("").build(3)
        assert kL.is_zero() and kC.is_zero()

    def test_params_used(self):
        assert MapSpec.parse("Ltri(a,b)+Ctri(c)").params_used() == ("a", "b", "c")
        assert MapSpec.parse("L1(a1)+Ltri(1,0)").params_used() == ("a1",)
        assert MapSpec.parse("").params_used() == ()

    def test_unknown_term(self):
        with pytest.raises(MapSpecError, match="unknown term 'Lfoo'"):
            MapSpec.parse("Lfoo(1)")

    def test_duplicate_term(self):
        with pytest.raises(MapSpecError, match="duplicate term"):
            MapSpec.parse("Ltri(1,0)+Ltri(0,1)")

    def test_arity_mismatch(self):
        with pytest.raises(MapSpecError, match="takes 2 parameter"):
            MapSpec.parse("Ltri(a)")
        with pytest.raises(MapSpecError, match="takes 1 parameter"):
            MapSpec.parse("Ctri(a,b)")

    def test_bad_parameter(self):
        with pytest.raises(MapSpecError, match="cannot parse parameter 'x'"):
            MapSpec.parse("Ltri(x,y)")
        with pytest.raises(MapSpecError, match="cannot parse parameter"):
            MapSpec.parse("Ctri(1/0)")

    def test_bad_syntax(self):
        with pytest.raises(MapSpecError, match="cannot parse term"):
            MapSpec.parse("Ltri(a,b")
        with pytest.raises(MapSpecError, match="cannot parse term"):
            MapSpec.parse("Ltri((a),b)")


class TestParseSubst:
    def test_basic(self):
        assert parse_subst("a=1/2, b=0,c=-2") == {
            "a": Fraction(1, 2),
            "b": Fraction(0),
            "c": Fraction(-2),
        }

    def test_empty(self):
        assert parse_subst("") == {}

    def test_errors(self):
        with pytest.raises(MapSpecError, match="cannot parse substitution"):
            parse_subst("x=1")
        with pytest.raises(MapSpecError, match="cannot parse substitution"):
            parse_subst("a")
        with pytest.raises(MapSpecError, match="cannot parse substitution value"):
            parse_subst("a=oops")


class TestLinearFactored:
    def test_groups_by_coefficient(self):
        g = parse_perm("(1 2 3)", 5)
        value = kappa_L_tri(A, B, 5).value(g, 1, 2) + PolyElem.const(5, C)
        assert linear_factored(value) == "a*(e1+e2+e3)+b*(e4+e5)+c"

    def test_sign_grouping(self):
        value = (PolyElem.var(1, 3) - PolyElem.var(2, 3)) * A1
        assert linear_factored(value) == "a1*(e1-e2)"

    def test_unit_coefficient(self):
        value = PolyElem.var(1, 3) + PolyElem.var(2, 3)
        assert linear_factored(value) == "(e1+e2)"

    def test_zero(self):
        assert linear_factored(PolyElem.zero(3)) == "0"


def general_pair(n):
    return MapSpec.parse("Ltri(a,b)+Ctri(c)+Cpenta(a,b)").build(n)


def uncompact(text, n):
    """Parse a compact cycle word like (13452) back into a Perm."""
    spaced = ""
    for ch in text:
        if ch.isdigit() and spaced and spaced[-1].isdigit():
            spaced += " " + ch
        else:
            spaced += ch
    return parse_perm(spaced, n)


def five_cycle_batches(lines, n):
    """Extract {(coefficient, sign): set of cycles} from presentation lines."""
    batches = {}
    for line in lines:
        body = line.strip()
        sign = 1
        if body.startswith("+ "):
            body = body[2:]
        elif body.startswith("- "):
            sign, body = -1, body[2:]
        coeff, sep, cycles_text = body.partition(" (x) ")
        if coeff.startswith("-"):
            sign, coeff = -sign, coeff[1:]
        if not sep or coeff not in ("(a-b)^2", "2*(a-b)^2"):
            continue
        words = cycles_text[1:-1].split("+")
        batches[(coeff, sign)] = {uncompact(w, n) for w in words}
    return batches


class TestPresentation:
    def test_s3_equality_chain(self):
        lines = presentation_lines(3, *general_pair(3))
        assert lines[2] == (
            "kappa(e1,e2) = kappa(e2,e3) = kappa(e3,e1) = "
            "(a*(e1+e2+e3)+c) (x) ((123)-(132))"
        )
        # no equivariance footer at n=3: the chain already covers all pairs
        assert all("for every s" not in line for line in lines)

    def test_s3_chain_is_mathematically_true(self):
        kL, kC = general_pair(3)
        pairs = [(1, 2), (2, 3), (3, 1)]
        values = [
            {g: kL.value(g, i, j) + kC.value(g, i, j) for g in kL.support()}
            for i, j in pairs
        ]
        assert values[0] == values[1] == values[2]

    def test_s4_layout(self):
        lines = presentation_lines(4, *general_pair(4))
        assert "kappa(e1,e2) = (a*(e1+e2+e3)+b*e4+c) (x) ((123)-(132))" in lines
        assert any(
            line.strip() == "+ (a*(e1+e2+e4)+b*e3+c) (x) ((124)-(142))"
            for line in lines
        )
        assert lines[-1].endswith("for every s in S4")

    def test_s5_five_cycle_batches(self):
        lines = presentation_lines(5, *general_pair(5))
        batches = five_cycle_batches(lines, 5)
        expected = {
            ("(a-b)^2", -1): ["(12345)", "(12543)", "(12453)", "(12354)", "(12534)", "(12435)"],
            ("(a-b)^2", 1): ["(21345)", "(21543)", "(21453)", "(21354)", "(21534)", "(21435)"],
            ("2*(a-b)^2", -1): ["(23145)", "(25143)", "(24153)", "(23154)", "(25134)", "(24135)"],
            ("2*(a-b)^2", 1): ["(13245)", "(15243)", "(14253)", "(13254)", "(15234)", "(14235)"],
        }
        assert set(batches) == set(expected)
        for key, words in expected.items():
            assert batches[key] == {uncompact(w, 5) for w in words}, key

    def test_s5_three_cycle_lines(self):
        lines = [line.strip() for line in presentation_lines(5, *general_pair(5))]
        assert "kappa(e1,e2) = (a*(e1+e2+e3)+b*(e4+e5)+c) (x) ((123)-(132))" in lines
        assert "+ (a*(e1+e2+e4)+b*(e3+e5)+c) (x) ((124)-(142))" in lines
        assert "+ (a*(e1+e2+e5)+b*(e3+e4)+c) (x) ((125)-(152))" in lines

    def test_zero_map(self):
        lines = presentation_lines(4, TwoCochain(4), TwoCochain(4))
        assert "kappa(e1,e2) = 0" in lines

    def test_substituted_presentation(self):
        kL, kC = general_pair(3)
        values = {"a": Fraction(1), "b": Fraction(0), "c": Fraction(2)}
        lines = presentation_lines(3, kL.substitute(values), kC.substitute(values))
        assert any("((e1+e2+e3)+2) (x) ((123)-(132))" in line for line in lines)

    def test_identity_component_renders(self):
        lines = presentation_lines(4, kappa_L1(A1, 4), TwoCochain(4))
        assert any("(a1*(e1-e2)) (x) ()" in line for line in lines)


class TestTableCsv:
    def test_three_cycle_case(self):
        table = case_tables("3cycle")[0]
        text = table_csv(table)
        rows = text.strip().split("\n")
        assert rows[0] == 'x,y,"(e1,e2,e3)","(e1,e2,e4)","(e1,e4,e5)"'
        # 6 factor-pair rows plus the block-sum row
        assert len(rows) == 8
        assert rows[-1].startswith("block 1 sum,")
        assert rows[-1].endswith(",0,0,0")

    def test_cells_match_renderer(self):
        table = case_tables("2-2")[0]
        text = table_csv(table)
        (x, y), values = table.blocks[0].rows[0], table.blocks[0].cells[0]
        expected = ",".join([str(x), str(y)] + [render_cell(v) for v in values])
        assert expected.replace('"', "") in text.replace('"', "")

    def test_total_row_only_for_multiple_blocks(self):
        single = table_csv(case_tables("2-2")[0])
        multi = table_csv(case_tables("4-2")[0])
        assert "total," not in single
        assert "total," in multi
