"""Big-step normalization and definitional equality.

Beta-reduces applications, unfolds definitions bound in the environment,
reduces matches whose scrutinee is constructor-headed, and unfolds
fixpoints only when their decreasing argument is constructor-headed.
Every reduction step draws from a budget so adversarial input raises
BudgetExceeded instead of hanging the kernel.
"""
from __future__ import annotations

import sys

from .context import Context
from .syntax import (
    App,
    Constr,
    Fix,
    Ind,
    Lam,
    Match,
    Pi,
    Term,
    Universe,
    Var,
    alpha_eq,
    apply_spine,
    spine,
    subst,
)

DEFAULT_BUDGET = 100_000


class BudgetExceeded(Exception):
    """Raised when normalization exceeds its reduction-step budget."""

    def __init__(self, budget: int, reason: str = "step budget"):
        super().__init__(f"normalization exceeded the {reason} of {budget}")
        self.budget = budget


class _Normalizer:
    def __init__(self, budget: int):
        self.budget = budget
        self.remaining = budget

    def tick(self) -> None:
        self.remaining -= 1
        if self.remaining < 0:
            raise BudgetExceeded(self.budget)

    def norm(self, e: Term, ctxt: Context) -> Term:
        match e:
            case Var(name=x):
                v = ctxt.lookup_val(x)
                if v is not None and not isinstance(v, Fix):
                    self.tick()
                    return self.norm(v, ctxt)
                return e
            case Universe() | Ind() | Constr() | Fix():
                return e
            case Lam(binder=x, domain=d, body=b):
                inner = ctxt.extend_type(x, d)
                return Lam(x, self.norm(d, ctxt), self.norm(b, inner))
            case Pi(binder=x, domain=d, body=b):
                inner = ctxt.extend_type(x, d)
                return Pi(x, self.norm(d, ctxt), self.norm(b, inner))
            case App(fn=f, arg=a):
                return self.norm_app(self.norm(f, ctxt), self.norm(a, ctxt), ctxt)
            case Match(carrier=c, scrutinee=m, branches=bs):
                m = self.norm(m, ctxt)
                head, args = spine(m)
                if isinstance(head, Constr):
                    self.tick()
                    _, body = bs[head.index - 1]
                    return self.norm(apply_spine(body, args), ctxt)
                return Match(c, m, bs)
        raise TypeError(f"not a term: {e!r}")

    def norm_app(self, f: Term, a: Term, ctxt: Context) -> Term:
        """Both f and a are already in normal form."""
        if isinstance(f, Lam):
            self.tick()
            return self.norm(subst(f.binder, a, f.body), ctxt)
        result = App(f, a)
        head, args = spine(result)
        fix = self._fix_of(head, ctxt)
        if fix is not None and len(args) > fix.dec_index:
            dec = args[fix.dec_index]
            dec_head, _ = spine(dec)
            if isinstance(dec_head, Constr):
                self.tick()
                if ctxt.lookup_val(fix.name) is fix:
                    # stuck residual calls keep the bound name, so they
                    # compare equal to calls written with that name
                    unfolded = fix.body
                else:
                    unfolded = subst(fix.name, fix, fix.body)
                return self.norm(apply_spine(unfolded, args), ctxt)
        return result

    @staticmethod
    def _fix_of(head: Term, ctxt: Context) -> Fix | None:
        if isinstance(head, Fix):
            return head
        if isinstance(head, Var):
            v = ctxt.lookup_val(head.name)
            if isinstance(v, Fix):
                return v
        return None


_DEPTH_LIMIT = 4000


def normalise(e: Term, ctxt: Context, budget: int | None = None) -> Term:
    if budget is None:
        budget = DEFAULT_BUDGET
    limit = sys.getrecursionlimit()
    sys.setrecursionlimit(max(limit, _DEPTH_LIMIT))
    try:
        return _Normalizer(budget).norm(e, ctxt)
    except RecursionError:
        # divergence can pile up nesting faster than it burns steps
        raise BudgetExceeded(budget, "nesting depth limit") from None
    finally:
        sys.setrecursionlimit(limit)


def check_equal(a: Term, b: Term, ctxt: Context, budget: int | None = None) -> bool:
    return alpha_eq(normalise(a, ctxt, budget), normalise(b, ctxt, budget))
