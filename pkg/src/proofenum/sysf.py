"""Positive System F frontend: types, the translation to unary-predicate
formulas, positivity of types and System F rendering of proof-terms."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

from .ljplus import LamTm, ProofTerm, Spine
from .syntax import (Atom, Forall, Formula, Impl, Polarity, SyntaxError_,
                     Var, parse_formula, polarity)


@dataclass(frozen=True)
class TVar:
    name: str


@dataclass(frozen=True)
class Arrow:
    lhs: "FType"
    rhs: "FType"


@dataclass(frozen=True)
class ForallT:
    var: str
    body: "FType"


FType = Union[TVar, Arrow, ForallT]

PRED = "eps"


def parse_sysf_type(text: str) -> FType:
    """`forall X. T`, right-associative `->`, variables as identifiers."""
    f = parse_formula(text)

    def conv(g: Formula) -> FType:
        if isinstance(g, Atom):
            if g.args:
                raise SyntaxError_(
                    f"type variable {g.pred!r} takes no arguments", 0)
            return TVar(g.pred)
        if isinstance(g, Impl):
            return Arrow(conv(g.lhs), conv(g.rhs))
        return ForallT(g.var, conv(g.body))

    return conv(f)


def phi(t: FType) -> Formula:
    if isinstance(t, TVar):
        return Atom(PRED, (Var(t.name),))
    if isinstance(t, Arrow):
        return Impl(phi(t.lhs), phi(t.rhs))
    return Forall(t.var, phi(t.body))


def unphi(f: Formula) -> FType:
    if isinstance(f, Atom):
        if f.pred != PRED or len(f.args) != 1 or not isinstance(f.args[0],
                                                               Var):
            raise ValueError(f"not in the image of the translation: {f!r}")
        return TVar(f.args[0].name)
    if isinstance(f, Impl):
        return Arrow(unphi(f.lhs), unphi(f.rhs))
    return ForallT(f.var, unphi(f.body))


def is_positive_type(t: FType) -> bool:
    return polarity(phi(t)) in (Polarity.POSITIVE_ONLY, Polarity.BOTH)


def _up(name: str) -> str:
    return name[:1].upper() + name[1:]


def render_type(t: FType) -> str:
    if isinstance(t, TVar):
        return _up(t.name)
    if isinstance(t, Arrow):
        lhs = render_type(t.lhs)
        if isinstance(t.lhs, (Arrow, ForallT)):
            lhs = f"({lhs})"
        return f"{lhs} -> {render_type(t.rhs)}"
    return f"forall {_up(t.var)}. {render_type(t.body)}"


def render_sysf_term(t: ProofTerm) -> str:
    """Proof-terms of translated types read back as System F terms: term
    binders become (uppercase) type abstractions and proof binders keep
    their System F type annotations.  Spines need no type applications
    since instantiation happens at binding time."""
    if isinstance(t, Spine):
        if not t.args:
            return t.head
        return f"({t.head} {' '.join(render_sysf_term(a) for a in t.args)})"
    if isinstance(t, LamTm):
        return f"\\{_up(t.var)}. {render_sysf_term(t.body)}"
    return (f"\\{t.pvar}:{render_type(unphi(t.annot))}. "
            f"{render_sysf_term(t.body)}")
