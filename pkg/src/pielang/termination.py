"""Structural-recursion guard predicate and fixpoint typing."""
from __future__ import annotations

from .context import Context
from .normalize import check_equal, normalise
from .syntax import (
    App,
    Constr,
    Fix,
    Ind,
    Lam,
    Match,
    Name,
    Pi,
    Term,
    Universe,
    Var,
    free_vars,
    spine,
)
from .typecheck import CheckError, ensure_universe, fail, type_check


def leading_lambda_binders(t: Term) -> list[Name]:
    binders = []
    while isinstance(t, Lam):
        binders.append(t.binder)
        t = t.body
    return binders


def guard_check(f: Name, k: int, xk: Name, guarded: frozenset[Name], e: Term) -> None:
    """Every call to f must pass a deconstruction-bound variable in argument
    position k, and f must not escape as a value. guarded holds the variables
    bound by matching on the decreasing argument (or on something already
    guarded); it grows under such matches and nowhere else."""
    if f not in free_vars(e):
        return
    match e:
        case Var():
            # free occurrence of f outside call position
            fail("Guard", f"recursive function {f} escapes as a value")
        case Match(carrier=c, scrutinee=m, branches=bs) if (
            isinstance(m, Var) and (m.name in guarded or m.name == xk)
        ):
            guard_check(f, k, xk, guarded, c)
            guard_check(f, k, xk, guarded, m)
            for _, body in bs:
                inner = guarded | set(leading_lambda_binders(body))
                guard_check(f, k, xk, inner, body)
        case App():
            head, args = spine(e)
            if isinstance(head, Var) and head.name == f:
                for a in args:
                    guard_check(f, k, xk, guarded, a)
                if not (
                    len(args) > k
                    and isinstance(args[k], Var)
                    and args[k].name in guarded
                ):
                    fail(
                        "Guard",
                        f"argument {k} of a recursive call to {f} is not a variable "
                        "obtained by deconstructing the decreasing argument",
                    )
            else:
                guard_check(f, k, xk, guarded, e.fn)
                guard_check(f, k, xk, guarded, e.arg)
        case _:
            for sub in _children(e):
                guard_check(f, k, xk, guarded, sub)


def _children(t: Term) -> tuple[Term, ...]:
    match t:
        case Lam(domain=d, body=b) | Pi(domain=d, body=b):
            return (d, b)
        case App(fn=f, arg=a):
            return (f, a)
        case Match(carrier=c, scrutinee=m, branches=bs):
            return (c, m, *(body for _, body in bs))
        case Fix(signature=s, body=b):
            return (s, b)
        case Ind(arity=a, constructors=cs):
            return (a, *(ct for _, ct in cs))
        case Constr(inductive=i):
            return (i,)
        case Var() | Universe():
            return ()
    raise TypeError(f"not a term: {t!r}")


def check_fix(ctxt: Context, fix: Fix) -> Term:
    ensure_universe(ctxt, fix.signature, "T-Fix", "fixpoint signature is not a type", fix.span)
    inner = ctxt.extend_type(fix.name, fix.signature)
    body_type = type_check(inner, fix.body)
    if not check_equal(body_type, fix.signature, inner):
        fail(
            "T-Fix",
            f"fixpoint body of {fix.name} does not have the declared type",
            fix.span,
            expected=normalise(fix.signature, inner),
            actual=normalise(body_type, inner),
        )
    binders = leading_lambda_binders(fix.body)
    if not 0 <= fix.dec_index < len(binders):
        fail(
            "T-Fix",
            f"decreasing-argument index {fix.dec_index} out of range for {fix.name}",
            fix.span,
        )
    guard_check(fix.name, fix.dec_index, binders[fix.dec_index], frozenset(), fix.body)
    return fix.signature


def infer_fix_index(name: Name, body: Term) -> int:
    """Smallest decreasing-argument index accepted by the guard predicate."""
    binders = leading_lambda_binders(body)
    for k, xk in enumerate(binders):
        try:
            guard_check(name, k, xk, frozenset(), body)
            return k
        except CheckError:
            continue
    fail(
        "Guard",
        f"no argument of recursive function {name} satisfies the guard condition "
        f"(tried indices 0..{max(len(binders) - 1, 0)})",
    )
