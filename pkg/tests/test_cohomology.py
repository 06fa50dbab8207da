"""Tests for the degree-2 cohomology spaces and the orbit-sum extension."""
from fractions import Fraction

import pytest

from permdeform.algebra import PolyElem, parameters, rank
from permdeform.cochains import (
    TwoCochain,
    act_on_cochain,
    is_invariant,
    kappa_C_tri,
    kappa_L1,
    kappa_L_tri,
)
from permdeform.cohomology import (
    class_dims,
    codim_fixed_space,
    extend_to_G,
    h2_space,
    identity_invariants,
    volume_form,
)
from permdeform.perms import Perm, centralizer, parse_perm

A, B, C, A1 = parameters()


def P(text: str, n: int) -> Perm:
    return parse_perm(text, n)


def lin(n, *pairs):
    """Linear form sum of coeff*e_i from (coeff, i) pairs."""
    out = PolyElem.zero(n)
    for coeff, i in pairs:
        out = out + PolyElem(n, {(i,): coeff})
    return out


def flatten(cochains):
    """Coordinate rows (over all (g, pair, monomial) keys) for rank checks."""
    keys = sorted(
        {
            (g, pair, mono)
            for alpha in cochains
            for g in alpha.support()
            for pair, value in alpha.component(g).items()
            for mono in value.terms
        }
    )
    index = {key: pos for pos, key in enumerate(keys)}
    rows = []
    for alpha in cochains:
        row = [Fraction(0)] * len(keys)
        for g in alpha.support():
            for pair, value in alpha.component(g).items():
                for mono, coeff in value.terms.items():
                    row[index[(g, pair, mono)]] = coeff.constant_value()
        rows.append(row)
    return rows


class TestVolumeForm:
    def test_three_cycle_pinned(self):
        # e1*^e2* + e2*^e3* + e3*^e1*, i.e. -1 on the out-of-order pair (1,3)
        expected = {(1, 2): 1, (2, 3): 1, (1, 3): -1}
        for n in (3, 5):
            assert volume_form(P("(1 2 3)", n)) == expected

    def test_inverse_cycle_same_form(self):
        assert volume_form(P("(1 3 2)", 4)) == volume_form(P("(1 2 3)", 4))

    def test_shifted_support(self):
        assert volume_form(P("(2 4 5)", 5)) == {(2, 4): 1, (4, 5): 1, (2, 5): -1}

    def test_double_transposition_pinned(self):
        # e1*^e3* + e3*^e2* + e2*^e4* + e4*^e1*
        expected = {(1, 3): 1, (2, 3): -1, (2, 4): 1, (1, 4): -1}
        assert volume_form(P("(1 2)(3 4)", 4)) == expected

    def test_values_are_coprime_integers(self):
        form = volume_form(P("(1 2)(4 5)", 5))
        assert all(v.denominator == 1 for v in form.values())
        assert form[min(form)] > 0

    def test_codim_guard(self):
        for text, n in [("(1 2)", 4), ("(1 2 3 4)", 4), ("(1 2 3 4 5)", 5), ("", 3)]:
            assert codim_fixed_space(P(text, n)) != 2
            with pytest.raises(ValueError):
                volume_form(P(text, n))


class TestH2Space:
    def test_three_cycle_dims(self):
        g3 = P("(1 2 3)", 3)
        assert h2_space(g3, 1).dim == 1
        assert h2_space(g3, 0).dim == 1
        for n in (4, 5, 6):
            g = P("(1 2 3)", n)
            assert h2_space(g, 1).dim == 2
            assert h2_space(g, 0).dim == 1

    def test_three_cycle_degree_one_basis(self):
        g = P("(1 2 3)", 5)
        basis = h2_space(g, 1).basis
        v123 = lin(5, (1, 1), (1, 2), (1, 3))
        v45 = lin(5, (1, 4), (1, 5))
        assert basis[0].support() == (g,)
        for i, j in [(1, 2), (2, 3)]:
            assert basis[0].value(g, i, j) == v123
            assert basis[1].value(g, i, j) == v45
        assert basis[0].value(g, 1, 3) == -v123
        assert basis[1].value(g, 3, 1) == v45
        # pairs leaving the moved points contribute nothing
        assert basis[0].value(g, 1, 4).is_zero()
        assert basis[0].value(g, 4, 5).is_zero()

    def test_three_cycle_degree_zero_basis(self):
        g = P("(1 2 3)", 4)
        (gamma,) = h2_space(g, 0).basis
        assert gamma.value(g, 1, 2) == PolyElem.one(4)
        assert gamma.value(g, 2, 3) == PolyElem.one(4)
        assert gamma.value(g, 1, 3) == -PolyElem.one(4)
        assert gamma.kind == "constant"

    def test_minimal_degree_collapses_to_one_line(self):
        g = P("(1 2 3)", 3)
        (b,) = h2_space(g, 1).basis
        assert b.value(g, 1, 2) == lin(3, (1, 1), (1, 2), (1, 3))

    def test_double_transposition_vanishes(self):
        # (1 2) in the centralizer flips the volume form, so nothing survives
        for n in (4, 5, 6):
            g = P("(1 2)(3 4)", n)
            assert h2_space(g, 1).dim == 0
            assert h2_space(g, 0).dim == 0

    def test_other_classes_vanish(self):
        for text, n in [("(1 2)", 4), ("(1 2 3 4)", 4), ("(1 2 3 4 5)", 5), ("(1 2 3)(4 5 6)", 6)]:
            g = P(text, n)
            assert h2_space(g, 1).dim == 0
            assert h2_space(g, 0).dim == 0

    def test_basis_elements_are_centralizer_invariant(self):
        g = P("(1 2 3)", 5)
        elems = h2_space(g, 1).basis + h2_space(g, 0).basis
        for z in centralizer(g):
            for b in elems:
                assert act_on_cochain(z, b) == b

    def test_reynolds_idempotence(self):
        g = P("(1 2 3)", 4)
        zg = centralizer(g)
        for b in h2_space(g, 1).basis:
            total = TwoCochain(4)
            for z in zg:
                total = total + act_on_cochain(z, b)
            assert total == b * zg.order

    def test_identity_delegates(self):
        assert h2_space(Perm.identity(4), 1) == identity_invariants(1, 4)

    def test_guards(self):
        with pytest.raises(ValueError):
            h2_space(P("(1 2 3)", 4), 2)
        with pytest.raises(ValueError):
            h2_space(P("(1 2 3)", 4), 1, n=5)


class TestIdentityInvariants:
    def test_degree_one_is_the_difference_cochain(self):
        for n in (2, 3, 4, 5):
            space = identity_invariants(1, n)
            assert space.dim == 1
            assert space.basis[0] == kappa_L1(1, n)

    def test_degree_zero_vanishes(self):
        for n in (2, 3, 4, 5):
            assert identity_invariants(0, n).dim == 0

    def test_guard(self):
        with pytest.raises(ValueError):
            identity_invariants(2, 4)


class TestExtendToG:
    def test_reproduces_linear_three_cycle_family(self):
        for n in (4, 5):
            g = P("(1 2 3)", n)
            b123, brest = h2_space(g, 1).basis
            combo = b123 * A + brest * B
            assert extend_to_G(combo) == kappa_L_tri(A, B, n)

    def test_reproduces_constant_three_cycle_family(self):
        for n in (4, 5):
            g = P("(1 2 3)", n)
            (gamma,) = h2_space(g, 0).basis
            assert extend_to_G(gamma * C) == kappa_C_tri(C, n)

    def test_minimal_degree(self):
        g = P("(1 2 3)", 3)
        (b,) = h2_space(g, 1).basis
        assert extend_to_G(b * A) == kappa_L_tri(A, B, 3)

    def test_identity_component_passes_through(self):
        elem = identity_invariants(1, 4).basis[0] * A1
        assert extend_to_G(elem) == kappa_L1(A1, 4)

    def test_output_is_invariant(self):
        g = P("(1 2 3)", 4)
        out = extend_to_G(h2_space(g, 0).basis[0])
        ok, witness = is_invariant(out)
        assert ok and witness is None

    def test_zero_passes_through(self):
        zero = TwoCochain(4)
        assert extend_to_G(zero).is_zero()

    def test_rejects_multi_element_support(self):
        with pytest.raises(ValueError):
            extend_to_G(kappa_C_tri(C, 4))

    def test_rejects_non_invariant_component(self):
        g = P("(1 2 3)", 4)
        alpha = TwoCochain(4, {g: {(1, 2): lin(4, (1, 1))}})
        with pytest.raises(ValueError):
            extend_to_G(alpha)

    def test_linear_span_dimension(self):
        # the two extended three-cycle lines plus the identity line
        for n in (4, 5):
            g = P("(1 2 3)", n)
            extended = [extend_to_G(b) for b in h2_space(g, 1).basis]
            extended.append(identity_invariants(1, n).basis[0])
            assert rank(flatten(extended)) == 3
        g = P("(1 2 3)", 3)
        extended = [extend_to_G(b) for b in h2_space(g, 1).basis]
        extended.append(identity_invariants(1, 3).basis[0])
        assert rank(flatten(extended)) == 2


class TestClassDims:
    def test_s4_table(self):
        got = {cls.name: (codim, d1, d0) for cls, codim, d1, d0 in class_dims(4)}
        assert got == {
            "4": (3, 0, 0),
            "3+1": (2, 2, 1),
            "2+2": (2, 0, 0),
            "2+1+1": (1, 0, 0),
            "1+1+1+1": (0, 1, 0),
        }

    def test_s3_totals(self):
        got = {cls.name: d1 + d0 for cls, _, d1, d0 in class_dims(3)}
        assert got == {"3": 2, "2+1": 0, "1+1+1": 1}

    def test_only_identity_and_three_cycles_contribute(self):
        for n in (5, 6):
            for cls, codim, d1, d0 in class_dims(n):
                if cls.partition == tuple([3] + [1] * (n - 3)):
                    assert (codim, d1, d0) == (2, 2, 1)
                elif cls.partition == (1,) * n:
                    assert (codim, d1, d0) == (0, 1, 0)
                else:
                    assert d1 == 0 and d0 == 0
