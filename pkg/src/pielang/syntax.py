"""Kernel term language: variables, universes, binders, applications,
inductive definitions, constructors, case matches and fixpoints.

Terms are immutable. Binding is name-based; capture is avoided by
renaming binders to fresh names on demand during substitution.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field


@dataclass(frozen=True)
class SourceSpan:
    start_line: int
    start_col: int
    end_line: int
    end_col: int

    def __str__(self) -> str:
        return f"{self.start_line}:{self.start_col}"


@dataclass(frozen=True)
class Name:
    """A variable name. fresh_tag == 0 means the name came from source text;
    renamed binders carry a positive tag that never collides with source names.
    """

    text: str
    fresh_tag: int = 0

    def __str__(self) -> str:
        if self.fresh_tag == 0:
            return self.text
        return f"{self.text}'{self.fresh_tag}"


_fresh_counter = itertools.count(1)


def fresh_name(base: Name | str) -> Name:
    text = base.text if isinstance(base, Name) else base
    return Name(text, next(_fresh_counter))


def reset_fresh_names() -> None:
    """Restart the fresh-name sequence (one checking session is single-threaded)."""
    global _fresh_counter
    _fresh_counter = itertools.count(1)


class Term:
    """Base class for all expression variants."""

    __slots__ = ()


def _span_field():
    return field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class Var(Term):
    name: Name
    span: SourceSpan | None = _span_field()


@dataclass(frozen=True)
class Universe(Term):
    level: int
    span: SourceSpan | None = _span_field()


@dataclass(frozen=True)
class Lam(Term):
    binder: Name
    domain: Term
    body: Term
    span: SourceSpan | None = _span_field()


@dataclass(frozen=True)
class Pi(Term):
    binder: Name
    domain: Term
    body: Term
    span: SourceSpan | None = _span_field()


@dataclass(frozen=True)
class App(Term):
    fn: Term
    arg: Term
    span: SourceSpan | None = _span_field()


@dataclass(frozen=True)
class Ind(Term):
    """An inductive definition. The name is in scope inside the constructor
    types (self-reference) but not inside the arity."""

    name: Name
    arity: Term
    constructors: tuple[tuple[Name, Term], ...]
    span: SourceSpan | None = _span_field()


@dataclass(frozen=True)
class Constr(Term):
    """The index-th constructor (1-based) of an inductive definition."""

    index: int
    inductive: Term
    span: SourceSpan | None = _span_field()


@dataclass(frozen=True)
class Match(Term):
    carrier: Term
    scrutinee: Term
    branches: tuple[tuple[Name, Term], ...]
    span: SourceSpan | None = _span_field()


@dataclass(frozen=True)
class Fix(Term):
    """A recursive function; dec_index is the 0-based position of the
    structurally decreasing argument."""

    name: Name
    dec_index: int
    signature: Term
    body: Term
    span: SourceSpan | None = _span_field()


# ---------------------------------------------------------------------------
# Spines
# ---------------------------------------------------------------------------

def spine(t: Term) -> tuple[Term, list[Term]]:
    """Decompose left-nested applications into (head, [arg1, ..., argn])."""
    args: list[Term] = []
    while isinstance(t, App):
        args.append(t.arg)
        t = t.fn
    args.reverse()
    return t, args


def apply_spine(head: Term, args) -> Term:
    for a in args:
        head = App(head, a)
    return head


# ---------------------------------------------------------------------------
# Free variables
# ---------------------------------------------------------------------------

def free_vars(t: Term) -> frozenset[Name]:
    match t:
        case Var(name=n):
            return frozenset((n,))
        case Universe():
            return frozenset()
        case Lam(binder=x, domain=d, body=b) | Pi(binder=x, domain=d, body=b):
            return free_vars(d) | (free_vars(b) - {x})
        case App(fn=f, arg=a):
            return free_vars(f) | free_vars(a)
        case Ind(name=n, arity=a, constructors=cs):
            fv = free_vars(a)
            for _, ct in cs:
                fv |= free_vars(ct) - {n}
            return fv
        case Constr(inductive=i):
            return free_vars(i)
        case Match(carrier=c, scrutinee=s, branches=bs):
            fv = free_vars(c) | free_vars(s)
            for _, body in bs:
                fv |= free_vars(body)
            return fv
        case Fix(name=n, signature=s, body=b):
            return free_vars(s) | (free_vars(b) - {n})
    raise TypeError(f"not a term: {t!r}")


# ---------------------------------------------------------------------------
# Substitution
# ---------------------------------------------------------------------------

def _subst_binder(x: Name, s: Term, binder: Name, body: Term):
    """Prepare a binder for substitution: stop under shadowing, rename to a
    fresh name when the binder would capture a free variable of s."""
    if binder == x:
        return binder, body, False
    if binder in free_vars(s) and x in free_vars(body):
        renamed = fresh_name(binder)
        body = subst(binder, Var(renamed), body)
        return renamed, body, True
    return binder, body, True


def subst(x: Name, s: Term, t: Term) -> Term:
    match t:
        case Var(name=n):
            return s if n == x else t
        case Universe():
            return t
        case Lam(binder=y, domain=d, body=b):
            y, b, descend = _subst_binder(x, s, y, b)
            return Lam(y, subst(x, s, d), subst(x, s, b) if descend else b)
        case Pi(binder=y, domain=d, body=b):
            y, b, descend = _subst_binder(x, s, y, b)
            return Pi(y, subst(x, s, d), subst(x, s, b) if descend else b)
        case App(fn=f, arg=a):
            return App(subst(x, s, f), subst(x, s, a))
        case Ind(name=n, arity=a, constructors=cs):
            arity = subst(x, s, a)
            if n == x:
                return Ind(n, arity, cs)
            if n in free_vars(s) and any(x in free_vars(ct) for _, ct in cs):
                renamed = fresh_name(n)
                cs = tuple((cn, subst(n, Var(renamed), ct)) for cn, ct in cs)
                n = renamed
            return Ind(n, arity, tuple((cn, subst(x, s, ct)) for cn, ct in cs))
        case Constr(index=i, inductive=ind):
            return Constr(i, subst(x, s, ind))
        case Match(carrier=c, scrutinee=m, branches=bs):
            return Match(
                subst(x, s, c),
                subst(x, s, m),
                tuple((cn, subst(x, s, body)) for cn, body in bs),
            )
        case Fix(name=n, dec_index=k, signature=sig, body=b):
            sig = subst(x, s, sig)
            if n == x:
                return Fix(n, k, sig, b)
            if n in free_vars(s) and x in free_vars(b):
                renamed = fresh_name(n)
                b = subst(n, Var(renamed), b)
                n = renamed
            return Fix(n, k, sig, subst(x, s, b))
    raise TypeError(f"not a term: {t!r}")


# ---------------------------------------------------------------------------
# Alpha equivalence
# ---------------------------------------------------------------------------

def alpha_eq(a: Term, b: Term) -> bool:
    return _aeq(a, b, {}, {}, 0)


def _aeq(a: Term, b: Term, ea: dict, eb: dict, depth: int) -> bool:
    match a, b:
        case Var(name=x), Var(name=y):
            lx, ly = ea.get(x), eb.get(y)
            if lx is None and ly is None:
                return x == y
            return lx == ly
        case Universe(level=i), Universe(level=j):
            return i == j
        case (Lam(binder=x, domain=da, body=ba), Lam(binder=y, domain=db, body=bb)) | (
            Pi(binder=x, domain=da, body=ba), Pi(binder=y, domain=db, body=bb)
        ):
            if type(a) is not type(b):
                return False
            if not _aeq(da, db, ea, eb, depth):
                return False
            return _aeq(ba, bb, {**ea, x: depth}, {**eb, y: depth}, depth + 1)
        case App(fn=fa, arg=aa), App(fn=fb, arg=ab):
            return _aeq(fa, fb, ea, eb, depth) and _aeq(aa, ab, ea, eb, depth)
        case Ind(name=na, arity=aa, constructors=ca), Ind(name=nb, arity=ab, constructors=cb):
            if len(ca) != len(cb) or not _aeq(aa, ab, ea, eb, depth):
                return False
            ea2, eb2 = {**ea, na: depth}, {**eb, nb: depth}
            for (cn_a, ct_a), (cn_b, ct_b) in zip(ca, cb):
                if cn_a != cn_b or not _aeq(ct_a, ct_b, ea2, eb2, depth + 1):
                    return False
            return True
        case Constr(index=ia, inductive=ta), Constr(index=ib, inductive=tb):
            return ia == ib and _aeq(ta, tb, ea, eb, depth)
        case Match(carrier=ca, scrutinee=sa, branches=ba), Match(
            carrier=cb, scrutinee=sb, branches=bb
        ):
            if len(ba) != len(bb):
                return False
            if not (_aeq(ca, cb, ea, eb, depth) and _aeq(sa, sb, ea, eb, depth)):
                return False
            return all(
                na == nb and _aeq(ta, tb, ea, eb, depth)
                for (na, ta), (nb, tb) in zip(ba, bb)
            )
        case Fix(name=na, dec_index=ka, signature=sa, body=ba), Fix(
            name=nb, dec_index=kb, signature=sb, body=bb
        ):
            if ka != kb or not _aeq(sa, sb, ea, eb, depth):
                return False
            return _aeq(ba, bb, {**ea, na: depth}, {**eb, nb: depth}, depth + 1)
    return False


# ---------------------------------------------------------------------------
# Pretty printing
# ---------------------------------------------------------------------------

def pretty(t: Term) -> str:
    match t:
        case Var(name=n):
            return str(n)
        case Universe(level=0):
            return "Set"
        case Universe(level=i):
            return f"(Type {i})"
        case Lam(binder=x, domain=d, body=b):
            return f"λ{x}:{_atom(d)}.{pretty(b)}"
        case Pi(binder=x, domain=d, body=b):
            if x.fresh_tag != 0 and x not in free_vars(b):
                return f"{_atom(d)} -> {pretty(b)}"
            return f"Π{x}:{_atom(d)}.{pretty(b)}"
        case App():
            head, args = spine(t)
            parts = " ".join(pretty(u) for u in (head, *args))
            return f"({parts})"
        case Ind(name=n):
            return str(n)
        case Constr(index=i, inductive=ind):
            if isinstance(ind, Ind) and 1 <= i <= len(ind.constructors):
                return str(ind.constructors[i - 1][0])
            return f"Constr({i},{pretty(ind)})"
        case Match(carrier=c, scrutinee=s, branches=bs):
            body = "; ".join(f"{n} => {pretty(e)}" for n, e in bs)
            return f"<{pretty(c)}> match {pretty(s)} with {{ {body} }}"
        case Fix(name=n, dec_index=k, signature=sig, body=b):
            return f"(fix {n}[{k}] : {pretty(sig)}. {pretty(b)})"
    raise TypeError(f"not a term: {t!r}")


def _atom(t: Term) -> str:
    """Parenthesize terms that would not reparse in domain position."""
    s = pretty(t)
    if isinstance(t, (Lam, Pi, Match, Fix)):
        return f"({s})"
    return s
