"""Structural-recursion guard and fixpoint typing."""
from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import corpus_source, elaborated
from pielang import (
    App,
    CheckError,
    DefDecl,
    Fix,
    Lam,
    Name,
    Pi,
    Universe,
    Var,
    desugar_def,
    parse_program,
    parse_term,
)
from pielang.termination import check_fix, guard_check, infer_fix_index
from strategies import F, GUARD_POOL as POOL, XK, deconstruct, recursion_bodies


def passes(guarded, body) -> bool:
    try:
        guard_check(F, 0, XK, frozenset(guarded), body)
        return True
    except CheckError:
        return False


class TestGuard:
    def test_call_on_the_raw_decreasing_argument_fails(self):
        assert not passes([], App(Var(F), Var(XK)))

    def test_call_after_deconstruction_passes(self):
        assert passes([], deconstruct(XK, App(Var(F), Var(Name("m")))))

    def test_call_on_an_unrelated_variable_fails(self):
        assert not passes([], deconstruct(XK, App(Var(F), Var(Name("p")))))

    def test_function_escaping_as_a_value_fails(self):
        body = deconstruct(XK, App(Var(Name("g")), Var(F)))
        with pytest.raises(CheckError) as err:
            guard_check(F, 0, XK, frozenset(), body)
        assert err.value.diagnostic.rule == "Guard"
        assert "escapes" in err.value.diagnostic.message

    def test_call_argument_must_be_a_variable(self):
        # f (g m) is rejected even when m is guarded
        body = deconstruct(XK, App(Var(F), App(Var(Name("g")), Var(Name("m")))))
        assert not passes([], body)

    def test_matching_a_guarded_variable_extends_the_set(self):
        inner = deconstruct(Name("m"), App(Var(F), Var(Name("m"))))
        assert passes([], deconstruct(XK, inner))

    def test_bodies_without_f_are_always_fine(self):
        assert passes([], deconstruct(Name("p"), Var(Name("m"))))

    @given(
        recursion_bodies,
        st.sets(st.sampled_from(POOL)),
        st.sets(st.sampled_from(POOL)),
    )
    @settings(max_examples=200)
    def test_monotone_in_the_guarded_set(self, body, small, extra):
        if passes(small, body):
            assert passes(small | extra, body)


class TestInference:
    def _fix(self, file: str, name: str) -> Fix:
        program = parse_program(corpus_source(file))
        decl = next(
            d for d in program.decls
            if isinstance(d, DefDecl) and str(d.name) == name
        )
        _, value = desugar_def(decl)
        assert isinstance(value, Fix)
        return value

    def test_first_argument(self):
        assert self._fix("add.pie", "add").dec_index == 0

    def test_fourth_argument(self):
        assert self._fix("nat_ind.pie", "nat_ind").dec_index == 3

    def test_no_argument_works(self):
        body = Lam(XK, parse_term("Nat"), App(Var(F), Var(XK)))
        with pytest.raises(CheckError) as err:
            infer_fix_index(F, body)
        assert err.value.diagnostic.rule == "Guard"


class TestCheckFix:
    def test_well_typed_fixpoint_has_its_signature(self):
        ctxt = elaborated("nat.pie").context
        nat = parse_term("Nat")
        sig = Pi(XK, nat, nat)
        fix = Fix(F, 0, sig, Lam(XK, nat, Var(XK)))
        assert check_fix(ctxt, fix) == sig

    def test_decreasing_index_must_name_an_argument(self):
        ctxt = elaborated("nat.pie").context
        nat = parse_term("Nat")
        sig = Pi(XK, nat, nat)
        fix = Fix(F, 5, sig, Lam(XK, nat, Var(XK)))
        with pytest.raises(CheckError) as err:
            check_fix(ctxt, fix)
        assert err.value.diagnostic.rule == "T-Fix"

    def test_body_must_match_the_signature(self):
        ctxt = elaborated("nat.pie").context
        nat = parse_term("Nat")
        sig = Pi(XK, nat, nat)
        fix = Fix(F, 0, sig, Lam(XK, nat, parse_term("Zero")))
        assert check_fix(ctxt, fix) == sig
        bad = Fix(F, 0, Pi(XK, nat, Universe(0)), Lam(XK, nat, Var(XK)))
        with pytest.raises(CheckError) as err:
            check_fix(ctxt, bad)
        assert err.value.diagnostic.rule == "T-Fix"
