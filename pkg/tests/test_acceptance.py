"""End-to-end acceptance suite.

Each test covers one release criterion and prints a single pass/fail
line on the terminal, bypassing pytest capture.
"""
from __future__ import annotations

import contextlib
import time

import pytest
from hypothesis import HealthCheck, assume, given, settings
from hypothesis import strategies as st

from conftest import corpus_source, elaborated, entry_type
from nameless import oracle_subst, to_nameless
from pielang import (
    App,
    Binding,
    BudgetExceeded,
    CheckError,
    Constr,
    Context,
    Diagnostic,
    Fix,
    Lam,
    Name,
    Pi,
    Universe,
    Var,
    alpha_eq,
    check_equal,
    elaborate,
    normalise,
    parse_program,
    parse_term,
    subst,
    type_check,
)
from pielang.cli import NEGATIVE_CORPUS, POSITIVE_CORPUS, check_source, load_corpus
from pielang.inductive import case_type
from pielang.termination import guard_check
from strategies import F, GUARD_POOL, XK, names, recursion_bodies, terms

FULL = settings(max_examples=500, deadline=None,
                suppress_health_check=[HealthCheck.too_slow])


@contextlib.contextmanager
def report(capsys, label: str):
    try:
        yield
    except BaseException:
        with capsys.disabled():
            print(f"acceptance: {label}: FAIL")
        raise
    with capsys.disabled():
        print(f"acceptance: {label}: PASS")


def test_criterion_1_corpus_accepts_quickly(capsys):
    with report(capsys, "corpus acceptance under five seconds"):
        start = time.perf_counter()
        for name in POSITIVE_CORPUS:
            result = elaborate(parse_program(corpus_source(name), name))
            assert not result.diagnostics, (name, result.diagnostics)
        elapsed = time.perf_counter() - start
        assert elapsed < 5.0, f"corpus took {elapsed:.2f}s"


def test_criterion_2_quoted_normalization_facts(capsys):
    with report(capsys, "quoted normalization facts"):
        add_ctxt = elaborated("add.pie").context
        nat = parse_term("Nat")
        with_vars = add_ctxt.extend_type(Name("x"), nat).extend_type(Name("n"), nat)

        assert alpha_eq(normalise(parse_term("(add Zero x)"), with_vars),
                        parse_term("x"))
        assert alpha_eq(normalise(parse_term("(add (Succ n) Zero)"), with_vars),
                        normalise(parse_term("(Succ (add n Zero))"), with_vars))
        assert alpha_eq(normalise(parse_term("(add Zero Zero)"), add_ctxt),
                        normalise(parse_term("Zero"), add_ctxt))

        day_ctxt = elaborated("day.pie").context
        assert alpha_eq(normalise(parse_term("(next_weekday monday)"), day_ctxt),
                        normalise(parse_term("tuesday"), day_ctxt))

        eq = day_ctxt.lookup_val(Name("eq"))
        closed = subst(eq.name, eq, eq.constructors[0][1])
        carrier = parse_term("λT:Set.λp:T.λq:T.λe:(eq T p q).(P q)")
        branch_type = normalise(case_type(closed, carrier, Constr(1, eq)), day_ctxt)
        assert alpha_eq(branch_type, parse_term("ΠT:Set.Πx:T.(P x)"))


def test_criterion_3_typing_rule_spot_checks(capsys):
    with report(capsys, "typing-rule spot checks"):
        empty = Context()
        for i in range(6):
            assert type_check(empty, Universe(i)) == Universe(i + 1)
        assert type_check(empty, Pi(Name("x"), Universe(0), Universe(1))) == Universe(2)

        result = elaborated("fol_proof.pie")
        expected = parse_term("ΠA:o.ΠB:o.(true (⊃ A (⊃ B A)))")
        assert check_equal(entry_type(result, "imp_a_b_a"), expected, result.context)


def test_criterion_4_negative_corpus(capsys):
    with report(capsys, "negative corpus rejected with expected tags"):
        seen_tags = set()
        mutants = 0
        for path, expected in load_corpus():
            if expected == "accepts":
                continue
            mutants += 1
            report_ = check_source(path.read_text(encoding="utf-8"), path.name)
            assert report_.exit_code == 1, path.name
            tags = [d.rule for d in report_.diagnostics if d.severity == "error"]
            assert expected in tags, (path.name, expected, tags)
            seen_tags.add(expected)

        # out-of-bounds constructor index is only reachable through the API
        nat = elaborated("nat.pie").context.lookup_val(Name("Nat"))
        with pytest.raises(CheckError) as err:
            type_check(elaborated("nat.pie").context, Constr(5, nat))
        assert err.value.diagnostic.rule == "T-Constr"
        seen_tags.add("T-Constr")
        mutants += 1

        assert mutants >= 12
        required = {"T-Var", "T-Abs", "T-PI", "T-App", "T-Ind",
                    "T-Constr", "T-Match", "Guard"}
        assert required <= seen_tags, required - seen_tags
        scenarios = {
            "match_swapped_branches.pie", "match_missing_branch.pie",
            "ind_wrong_target.pie", "guard_undeconstructed.pie",
            "guard_escape.pie",
        }
        assert scenarios <= set(NEGATIVE_CORPUS)


def test_criterion_5_property_suites(capsys):
    with report(capsys, "property suites at 500 cases each"):

        @FULL
        @given(names, terms, terms)
        def subst_matches_oracle(v, s, t):
            assert to_nameless(subst(v, s, t)) == oracle_subst(v, s, t)

        @FULL
        @given(terms)
        def normalise_idempotent(t):
            try:
                once = normalise(t, Context(), budget=300)
            except BudgetExceeded:
                assume(False)
            assert alpha_eq(once, normalise(once, Context(), budget=300))

        @FULL
        @given(terms, terms)
        def alpha_equivalence_relation(a, b):
            assert alpha_eq(a, a)
            assert alpha_eq(b, b)
            assert alpha_eq(a, b) == alpha_eq(b, a)

        weakening_cases = _weakening_cases()

        @FULL
        @given(st.sampled_from(weakening_cases),
               st.integers(min_value=0, max_value=10_000),
               st.integers(min_value=0, max_value=10_000))
        def weakening_preserves_typing(case, position, tag):
            ctxt, declared, value = case
            extra = Binding(Name("weakvar", 900_000 + tag), Universe(0))
            cut = position % (len(ctxt.bindings) + 1)
            weakened = Context(ctxt.bindings[:cut] + (extra,) + ctxt.bindings[cut:])
            assert check_equal(type_check(weakened, value), declared, weakened)

        @FULL
        @given(recursion_bodies,
               st.sets(st.sampled_from(GUARD_POOL)),
               st.sets(st.sampled_from(GUARD_POOL)))
        def guard_monotone(body, small, extra):
            def passes(guarded):
                try:
                    guard_check(F, 0, XK, frozenset(guarded), body)
                    return True
                except CheckError:
                    return False

            if passes(small):
                assert passes(small | extra)

        subst_matches_oracle()
        normalise_idempotent()
        alpha_equivalence_relation()
        weakening_preserves_typing()
        guard_monotone()


def _weakening_cases():
    cases = []
    for file in ("add.pie", "fol_proof.pie"):
        result = elaborated(file)
        ctxt = result.context
        for name, declared, status in result.entries:
            value = ctxt.lookup_val(name)
            if status == "ok" and value is not None and not isinstance(value, Constr):
                cases.append((ctxt, declared, value))
    return cases


def test_criterion_6_arithmetic_oracle(capsys):
    with report(capsys, "unary addition against brute-force oracle"):
        ctxt = elaborated("nat.pie").context
        nat = ctxt.lookup_val(Name("Nat"))
        add_program = parse_program(corpus_source("add.pie"))
        ctxt = elaborate(add_program).context

        def numeral(k: int):
            t = Constr(1, nat)
            for _ in range(k):
                t = App(Constr(2, nat), t)
            return t

        for m in range(8):
            for n in range(8):
                call = App(App(parse_term("add"), numeral(m)), numeral(n))
                assert alpha_eq(normalise(call, ctxt), numeral(m + n)), (m, n)


def test_criterion_7_budget_stops_divergence(capsys):
    with report(capsys, "diverging unfolding ends in a Budget diagnostic"):
        ctxt = elaborated("nat.pie").context
        nat = parse_term("Nat")
        f, x = Name("f"), Name("x")
        # wrong decreasing index supplied directly, bypassing the guard
        runaway = Fix(
            f, 0,
            Pi(x, nat, nat),
            Lam(x, nat, App(Var(f), App(parse_term("Succ"), Var(x)))),
        )
        start = time.perf_counter()
        try:
            normalise(App(runaway, parse_term("Zero")), ctxt, budget=50_000)
        except BudgetExceeded as err:
            diagnostic = Diagnostic("Budget", str(err))
        else:
            raise AssertionError("runaway fixpoint normalised")
        assert time.perf_counter() - start < 5.0
        assert diagnostic.render("runaway.pie").startswith("error[Budget]")
