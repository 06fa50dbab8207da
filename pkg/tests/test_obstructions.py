"""Tests for psi, phi, the closed-form phi summands, the five-condition
checker, the mixed Jacobi residual, and the classification driver."""
import itertools

import pytest

from permdeform.algebra import PolyElem, Vect, act, parameters
from permdeform.cochains import (
    ThreeCochain,
    TwoCochain,
    kappa_C_penta,
    kappa_C_tri,
    kappa_L1,
    kappa_L_tri,
)
from permdeform.obstructions import (
    ConditionWitness,
    check_conditions,
    classify,
    closed_form_phi_xy,
    general_family,
    mixed_jacobi_residual,
    phi,
    phi_component,
    phi_xy,
    psi,
)
from permdeform.perms import Perm, conjugacy_classes, conjugate, factor_pairs, parse_perm

A, B, C, A1 = parameters()


def P(text: str, n: int) -> Perm:
    return parse_perm(text, n)


def lin(n, *pairs):
    out = PolyElem.zero(n)
    for coeff, i in pairs:
        out = out + PolyElem(n, {(i,): coeff})
    return out


def three_cycles(n):
    return [
        Perm.from_cycles([c], n)
        for c in itertools.permutations(range(1, n + 1), 3)
        if c[0] == min(c)
    ]


def five_cycles(n):
    return [
        Perm.from_cycles([c], n)
        for c in itertools.permutations(range(1, n + 1), 5)
        if c[0] == min(c)
    ]


class TestPsi:
    def test_constant_tri_map_is_a_cocycle(self):
        assert psi(kappa_C_tri(C, 5)).is_zero()

    def test_linear_tri_map_is_a_cocycle(self):
        assert psi(kappa_L_tri(A, B, 5)).is_zero()

    def test_identity_supported_map_is_a_cocycle(self):
        assert psi(kappa_L1(A1, 4)).is_zero()

    def test_penta_value_on_first_triple(self):
        out = psi(kappa_C_penta(A, B, 6))
        g = P("(1 2 3 4 5)", 6)
        expected = ((A - B) ** 2) * lin(6, (1, 1), (1, 2), (-1, 3), (-1, 4))
        assert out.value(g, 1, 2, 3) == expected

    def test_penta_supported_on_five_cycles_only(self):
        out = psi(kappa_C_penta(A, B, 5))
        assert out.support()
        for g in out.support():
            assert sorted(len(c) for c in g.cycles()) == [5]

    def test_mixed_kind_rejected(self):
        mixed = kappa_L1(A1, 5) + kappa_C_tri(C, 5)
        with pytest.raises(ValueError, match="homogeneous"):
            psi(mixed)

    def test_alternation(self):
        out = psi(kappa_C_penta(A, B, 5))
        g = P("(1 2 3 4 5)", 5)
        assert out.value(g, 2, 1, 3) == -out.value(g, 1, 2, 3)
        assert out.value(g, 1, 1, 3).is_zero()


class TestPhi:
    def test_five_cycle_component_first_value(self):
        kl = kappa_L_tri(A, B, 5)
        out = phi(kl, kl)
        g = P("(1 2 3 4 5)", 5)
        s = (A - B) ** 2
        assert out.value(g, 1, 2, 3) == 2 * s * lin(
            5, (1, 1), (1, 2), (-1, 3), (-1, 4)
        )

    def test_five_cycle_component_second_value(self):
        kl = kappa_L_tri(A, B, 5)
        out = phi(kl, kl)
        g = P("(1 2 3 4 5)", 5)
        s = (A - B) ** 2
        assert out.value(g, 1, 2, 4) == 2 * s * lin(
            5, (-2, 1), (2, 3), (1, 4), (-1, 5)
        )

    def test_supported_on_five_cycles_only(self):
        kl = kappa_L_tri(A, B, 5)
        for g in phi(kl, kl).support():
            assert sorted(len(c) for c in g.cycles()) == [5]

    def test_three_cycle_component_vanishes(self):
        kl = kappa_L_tri(A, B, 5)
        g = P("(1 2 3)", 5)
        for triple in itertools.combinations(range(1, 6), 3):
            assert phi_component(kl, kl, g, triple).is_zero()

    def test_equals_twice_psi_of_penta(self):
        kl = kappa_L_tri(A, B, 5)
        assert phi(kl, kl) == psi(kappa_C_penta(A, B, 5)) * 2

    def test_phi_xy_table_entry(self):
        alpha = kappa_C_penta(A, B, 7)
        beta = kappa_L_tri(A, B, 7)
        x, y = P("(3 4 5 6 7)", 7), P("(7 1 2)", 7)
        value = phi_xy(alpha, beta, x, y, (1, 2, 3))
        assert value == PolyElem.const(7, 2 * (A - B) ** 3)

    def test_constant_beta_rejected(self):
        with pytest.raises(ValueError, match="linear"):
            phi(kappa_C_tri(C, 5), kappa_C_tri(C, 5))

    def test_zero_beta_accepted(self):
        assert phi(kappa_L_tri(A, B, 4), TwoCochain(4)).is_zero()

    def test_equivariance_single_instance(self):
        alpha = kappa_L_tri(A, B, 5)
        beta = kappa_L_tri(A, B, 5)
        h = P("(2 5 3)", 5)
        x, y = P("(1 2 3)", 5), P("(3 4 5)", 5)
        triple = (1, 2, 4)
        left = act(h, phi_xy(alpha, beta, x, y, triple))
        right = phi_xy(
            alpha,
            beta,
            conjugate(h, x),
            conjugate(h, y),
            tuple(h(p) for p in triple),
        )
        assert left == right


class TestClosedForm:
    def test_case1_two_vectors_fixed(self):
        x, y = P("(1 2 3)", 5), P("(3 4 5)", 5)
        assert closed_form_phi_xy("L", x, y, (1, 2, 3)).is_zero()

    def test_case4_no_vector_fixed(self):
        x, y = P("(4 5 1)", 5), P("(1 2 3)", 5)
        assert closed_form_phi_xy("L", x, y, (1, 2, 3)).is_zero()

    def test_case3_penta_table_entry(self):
        x, y = P("(2 3 4 5 6)", 6), P("(6 5 1)", 6)
        value = closed_form_phi_xy("C", x, y, (1, 2, 6))
        assert value == PolyElem.const(6, 2 * (A - B) ** 3)

    def test_case2_fixed_by_both(self):
        x, y = P("(1 2 3)", 6), P("(1 2 4)", 6)
        # e_5 is fixed by y and by x
        assert closed_form_phi_xy("L", x, y, (1, 2, 5)).is_zero()

    @pytest.mark.parametrize("kind", ["L", "C"])
    def test_matches_direct_phi_on_class_factorizations(self, kind):
        n = 5
        alpha = {"L": kappa_L_tri(A, B, n), "C": kappa_C_tri(C, n)}[kind]
        beta = kappa_L_tri(A, B, n)
        ys = three_cycles(n)
        for cls in conjugacy_classes(n):
            for x, y in factor_pairs(cls.rep, three_cycles(n), ys):
                for triple in itertools.combinations(range(1, n + 1), 3):
                    assert closed_form_phi_xy(kind, x, y, triple) == phi_xy(
                        alpha, beta, x, y, triple
                    ), (str(x), str(y), triple)

    def test_matches_direct_phi_for_penta_factors(self):
        n = 5
        alpha = kappa_C_penta(A, B, n)
        beta = kappa_L_tri(A, B, n)
        for cls in conjugacy_classes(n):
            for x, y in factor_pairs(cls.rep, five_cycles(n), three_cycles(n)):
                for triple in itertools.combinations(range(1, n + 1), 3):
                    assert closed_form_phi_xy("C", x, y, triple) == phi_xy(
                        alpha, beta, x, y, triple
                    ), (str(x), str(y), triple)

    def test_second_factor_must_be_three_cycle(self):
        with pytest.raises(ValueError, match="3-cycle"):
            closed_form_phi_xy("L", P("(1 2 3)", 5), P("(1 2)", 5), (1, 2, 3))

    def test_kind_L_rejects_five_cycle(self):
        with pytest.raises(ValueError, match="kind 'L'"):
            closed_form_phi_xy("L", P("(1 2 3 4 5)", 5), P("(1 2 3)", 5), (1, 2, 3))

    def test_unknown_kind(self):
        with pytest.raises(ValueError, match="unknown kind"):
            closed_form_phi_xy("Q", P("(1 2 3)", 5), P("(1 2 3)", 5), (1, 2, 3))

    def test_degenerate_triple_is_zero(self):
        assert closed_form_phi_xy("L", P("(1 2 3)", 5), P("(2 3 4)", 5), (1, 1, 2)).is_zero()


class TestCheckConditions:
    def test_identity_family_passes(self):
        report = check_conditions(kappa_L1(A1, 4), TwoCochain(4))
        assert report.all_pass
        assert report.witnesses == ()

    def test_identity_family_with_constant_tri_fails_condition_four(self):
        report = check_conditions(kappa_L1(1, 4), kappa_C_tri(C, 4))
        assert not report.all_pass
        assert report.passed(0) and report.passed(1) and report.passed(2)
        assert report.passed(3)
        assert not report.passed(4)
        w = report.witness(4)
        assert w.location == (P("(1 2 3)", 4),)
        assert w.triple == (1, 2, 3)
        assert w.residual == PolyElem.const(4, 12 * C)

    def test_off_identity_family_passes(self):
        report = check_conditions(
            kappa_L_tri(A, B, 5), kappa_C_penta(A, B, 5) + kappa_C_tri(C, 5)
        )
        assert report.all_pass

    def test_combined_support_fails_condition_three(self):
        n = 5
        report = check_conditions(
            kappa_L1(A1, n) + kappa_L_tri(A, B, n),
            kappa_C_tri(C, n) + kappa_C_penta(A, B, n),
        )
        assert not report.passed(3)
        w = report.witness(3)
        assert w.location == (P("(1 2 3)", n),)
        assert w.triple == (1, 2, 3)
        head = 2 * A1 * (6 * A + (n - 3) * B)
        tail = 6 * A1 * B
        expected = lin(n, (head, 1), (head, 2), (head, 3), (tail, 4), (tail, 5))
        assert w.residual == expected

    def test_exhaustive_agrees_with_reduced(self):
        kl, kc = kappa_L1(1, 4), kappa_C_tri(C, 4)
        reduced = check_conditions(kl, kc)
        full = check_conditions(kl, kc, exhaustive=True)
        assert (reduced.all_pass, full.all_pass) == (False, False)
        for c in range(5):
            assert reduced.passed(c) == full.passed(c)
        # witnesses may sit at different conjugates, but both are nonzero
        # multiples of c at a 3-cycle
        w = full.witness(4)
        assert w is not None
        assert sorted(len(c) for c in w.location[0].cycles()) == [3]
        assert all(p.divisible_by("c") for p in w.residual.terms.values())

    def test_exhaustive_pass_case(self):
        report = check_conditions(
            kappa_L_tri(A, B, 4), kappa_C_tri(C, 4), exhaustive=True
        )
        assert report.all_pass
        assert report.exhaustive

    def test_exhaustive_capped(self):
        with pytest.raises(ValueError, match="capped"):
            check_conditions(kappa_L_tri(A, B, 7), TwoCochain(7), exhaustive=True)

    def test_kind_guards(self):
        with pytest.raises(ValueError, match="kappa\\^L must be linear"):
            check_conditions(kappa_C_tri(C, 4), TwoCochain(4))
        with pytest.raises(ValueError, match="kappa\\^C must be constant"):
            check_conditions(kappa_L1(A1, 4), kappa_L_tri(A, B, 4))
        with pytest.raises(ValueError, match="degree mismatch"):
            check_conditions(kappa_L1(A1, 4), TwoCochain(5))

    def test_empty_pair_passes(self):
        assert check_conditions(TwoCochain(3), TwoCochain(3)).all_pass

    def test_non_invariant_map_fails_condition_one(self):
        bumpy = TwoCochain(4, {P("(1 2 3)", 4): {(1, 2): PolyElem.const(4, 1)}})
        report = check_conditions(TwoCochain(4), bumpy)
        assert not report.passed(1)
        assert report.witness(1) is not None

    def test_condition_zero_witness(self):
        # e_1 - e_2 is not fixed by (1 2 3), so condition (0) must fail
        leaky = TwoCochain(
            4,
            {
                P("(1 2 3)", 4): {(1, 2): lin(4, (1, 1), (-1, 2))},
                P("(1 2 4)", 4): {(1, 2): lin(4, (1, 1), (-1, 2))},
            },
        )
        report = check_conditions(leaky, TwoCochain(4))
        assert not report.passed(0)
        assert report.witness(0).location == (P("(1 2 3)", 4),)

    def test_report_serialization(self):
        report = check_conditions(kappa_L1(1, 4), kappa_C_tri(C, 4))
        data = report.to_json()
        assert data["all_pass"] is False
        assert data["conditions"]["4"]["passed"] is False
        assert any("12*c" in w["residual"] for w in data["witnesses"])
        text = report.to_markdown()
        assert "FAIL" in text and "pass" in text
        assert "12*c" in str(report.witness(4))


class TestMixedJacobi:
    def test_constant_tri_satisfies_identity(self):
        assert mixed_jacobi_residual(kappa_C_tri(C, 5)).is_zero()

    def test_linear_tri_satisfies_identity(self):
        assert mixed_jacobi_residual(kappa_L_tri(A, B, 5)).is_zero()

    def test_identity_supported_map_satisfies_identity(self):
        assert mixed_jacobi_residual(kappa_L1(A1, 5)).is_zero()

    def test_non_invariant_constant_fails(self):
        lopsided = TwoCochain(4, {P("(1 2 3)", 4): {(1, 2): PolyElem.const(4, 1)}})
        assert not mixed_jacobi_residual(lopsided).is_zero()

    def test_equals_negated_psi(self):
        kappa = kappa_C_penta(A, B, 5)
        assert mixed_jacobi_residual(kappa) == psi(kappa) * -1

    def test_mixed_kind_rejected(self):
        mixed = kappa_L1(A1, 5) + kappa_C_tri(C, 5)
        with pytest.raises(ValueError, match="homogeneous"):
            mixed_jacobi_residual(mixed)


class TestClassify:
    def test_degree_three(self):
        report = classify(3)
        assert report.consistent
        assert report.off_identity_params == ("a", "c")

    def test_degree_four(self):
        report = classify(4)
        assert report.consistent
        assert report.off_identity_params == ("a", "b", "c")
        assert report.residuals
        assert {w.condition for w in report.residuals} <= {3, 4}

    def test_degree_five(self):
        report = classify(5)
        assert report.consistent
        assert report.off_identity_params == ("a", "b", "c")
        assert report.a1_divisible
        assert report.vanish_without_triangle_terms
        assert report.lie_branch.all_pass
        assert report.off_identity_branch.all_pass

    def test_general_family_shape(self):
        kl, kc = general_family(5)
        assert kl.kind == "linear"
        assert kc.kind == "constant"
        lengths = {sorted(len(c) for c in g.cycles() if len(c) > 1) == [] for g in kl.support()}
        assert True in lengths  # identity part present

    def test_degree_guard(self):
        with pytest.raises(ValueError, match="degree"):
            classify(2)

    def test_report_serialization(self):
        report = classify(4)
        data = report.to_json()
        assert data["consistent"] is True
        assert data["off_identity_params"] == ["a", "b", "c"]
        text = report.to_markdown()
        assert "Lie branch" in text
        assert "off-identity branch" in text
