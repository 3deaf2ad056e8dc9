"""First-order formulas over -> and forall: parsing, printing, polarity,
renaming and alpha-equivalence."""

from __future__ import annotations

import enum
import itertools
import re
from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping, Optional, Union


class SyntaxError_(Exception):
    """Malformed concrete syntax; carries the input offset."""

    def __init__(self, message: str, pos: int):
        super().__init__(f"{message} (at offset {pos})")
        self.pos = pos


class NotNegative(Exception):
    """Raised when a formula expected to be negative is not."""


# ---------------------------------------------------------------------------
# Terms and formulas


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class Fn:
    symbol: str
    args: tuple


FoTerm = Union[Var, Fn]


@dataclass(frozen=True)
class Atom:
    pred: str
    args: tuple = ()


@dataclass(frozen=True)
class Impl:
    lhs: "Formula"
    rhs: "Formula"


@dataclass(frozen=True)
class Forall:
    var: str
    body: "Formula"


Formula = Union[Atom, Impl, Forall]


class Polarity(enum.Enum):
    POSITIVE_ONLY = "positive"
    NEGATIVE_ONLY = "negative"
    BOTH = "both"
    NEITHER = "neither"


def is_positive(f: Formula) -> bool:
    if isinstance(f, Atom):
        return True
    if isinstance(f, Impl):
        return is_negative(f.lhs) and is_positive(f.rhs)
    return is_positive(f.body)


def is_negative(f: Formula) -> bool:
    if isinstance(f, Atom):
        return True
    if isinstance(f, Impl):
        return is_positive(f.lhs) and is_negative(f.rhs)
    return False


def polarity(f: Formula) -> Polarity:
    p, n = is_positive(f), is_negative(f)
    if p and n:
        return Polarity.BOTH
    if p:
        return Polarity.POSITIVE_ONLY
    if n:
        return Polarity.NEGATIVE_ONLY
    return Polarity.NEITHER


def decompose_negative(f: Formula):
    """Split a negative formula into (positive arguments, atomic head)."""
    args = []
    g = f
    while isinstance(g, Impl):
        args.append(g.lhs)
        g = g.rhs
    if not isinstance(g, Atom):
        raise NotNegative(f"not a negative formula: {render(f)}")
    for a in args:
        if not is_positive(a):
            raise NotNegative(f"not a negative formula: {render(f)}")
    return tuple(args), g


def fold_negative(args: Iterable[Formula], head: Atom) -> Formula:
    f: Formula = head
    for a in reversed(tuple(args)):
        f = Impl(a, f)
    return f


# ---------------------------------------------------------------------------
# Variables

def term_vars(t: FoTerm) -> Iterator[str]:
    if isinstance(t, Var):
        yield t.name
    else:
        for a in t.args:
            yield from term_vars(a)


def free_vars(f: Formula) -> frozenset:
    if isinstance(f, Atom):
        out = set()
        for t in f.args:
            out.update(term_vars(t))
        return frozenset(out)
    if isinstance(f, Impl):
        return free_vars(f.lhs) | free_vars(f.rhs)
    return free_vars(f.body) - {f.var}


def bound_vars(f: Formula) -> frozenset:
    if isinstance(f, Atom):
        return frozenset()
    if isinstance(f, Impl):
        return bound_vars(f.lhs) | bound_vars(f.rhs)
    return bound_vars(f.body) | {f.var}


def all_names(f: Formula) -> frozenset:
    return free_vars(f) | bound_vars(f)


def subst_term(t: FoTerm, m: Mapping[str, str]) -> FoTerm:
    if isinstance(t, Var):
        return Var(m.get(t.name, t.name))
    return Fn(t.symbol, tuple(subst_term(a, m) for a in t.args))


def rename(f: Formula, m: Mapping[str, str]) -> Formula:
    """Capture-avoiding renaming of free variable occurrences; binders
    shadow the map and are alpha-renamed when they would capture an
    image."""
    if isinstance(f, Atom):
        return Atom(f.pred, tuple(subst_term(t, m) for t in f.args))
    if isinstance(f, Impl):
        return Impl(rename(f.lhs, m), rename(f.rhs, m))
    inner = {k: v for k, v in m.items() if k != f.var}
    relevant = free_vars(f.body) & set(inner)
    inner = {k: v for k, v in inner.items() if k in relevant}
    if not inner:
        return Forall(f.var, f.body)
    if f.var in inner.values():
        nv = fresh_name(f.var,
                        set(inner) | set(inner.values()) | all_names(f.body))
        body = rename(f.body, {f.var: nv})
        return Forall(nv, rename(body, inner))
    return Forall(f.var, rename(f.body, inner))


# ---------------------------------------------------------------------------
# Printing

def render_term(t: FoTerm) -> str:
    if isinstance(t, Var):
        return t.name
    return f"{t.symbol}({', '.join(render_term(a) for a in t.args)})"


def render(f: Formula) -> str:
    if isinstance(f, Atom):
        if not f.args:
            return f.pred
        return f"{f.pred}({', '.join(render_term(a) for a in f.args)})"
    if isinstance(f, Impl):
        lhs = render(f.lhs)
        if isinstance(f.lhs, (Impl, Forall)):
            lhs = f"({lhs})"
        return f"{lhs} -> {render(f.rhs)}"
    return f"forall {f.var}. {render(f.body)}"


# ---------------------------------------------------------------------------
# Parsing

_TOKEN = re.compile(r"\s*(->|[()\.,]|[A-Za-z_][A-Za-z0-9_']*)")


def _tokenize(text: str):
    pos = 0
    out = []
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            stripped = text[pos:].lstrip()
            if not stripped:
                break
            raise SyntaxError_(f"unexpected character {stripped[0]!r}",
                               len(text) - len(stripped))
        out.append((m.group(1), m.start(1)))
        pos = m.end()
    out.append((None, len(text)))
    return out


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i][0]

    def pos(self):
        return self.toks[self.i][1]

    def next(self):
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def expect(self, tok: str):
        got, pos = self.next()
        if got != tok:
            raise SyntaxError_(f"expected {tok!r}, got {got!r}", pos)

    def ident(self) -> str:
        got, pos = self.next()
        if got is None or not got[0].isalpha() and got[0] != "_":
            raise SyntaxError_(f"expected identifier, got {got!r}", pos)
        return got

    def formula(self) -> Formula:
        if self.peek() == "forall":
            self.next()
            v = self.ident()
            self.expect(".")
            return Forall(v, self.formula())
        lhs = self.primary()
        if self.peek() == "->":
            self.next()
            return Impl(lhs, self.formula())
        return lhs

    def primary(self) -> Formula:
        tok, pos = self.toks[self.i]
        if tok == "(":
            self.next()
            f = self.formula()
            self.expect(")")
            return f
        if tok is None or tok in (")", ".", ",", "->"):
            raise SyntaxError_(f"expected formula, got {tok!r}", pos)
        if tok == "forall":
            return self.formula()
        self.next()
        if self.peek() == "(":
            self.next()
            args = [self.term()]
            while self.peek() == ",":
                self.next()
                args.append(self.term())
            self.expect(")")
            return Atom(tok, tuple(args))
        return Atom(tok)

    def term(self) -> FoTerm:
        name = self.ident()
        if self.peek() == "(":
            self.next()
            args = [self.term()]
            while self.peek() == ",":
                self.next()
                args.append(self.term())
            self.expect(")")
            return Fn(name, tuple(args))
        return Var(name)


def parse_formula(text: str) -> Formula:
    p = _Parser(text)
    f = p.formula()
    tok, pos = p.toks[p.i]
    if tok is not None:
        raise SyntaxError_(f"trailing input {tok!r}", pos)
    return f


# ---------------------------------------------------------------------------
# Fresh names and Barendregt form

_SUFFIX = re.compile(r"[0-9]+$")


def fresh_name(base: str, avoid) -> str:
    stem = _SUFFIX.sub("", base) or base
    for n in itertools.count(1):
        cand = f"{stem}{n}"
        if cand not in avoid:
            return cand


def _is_barendregt(f: Formula) -> bool:
    seen = set()

    def walk(g: Formula) -> bool:
        if isinstance(g, Atom):
            return True
        if isinstance(g, Impl):
            return walk(g.lhs) and walk(g.rhs)
        if g.var in seen:
            return False
        seen.add(g.var)
        return walk(g.body)

    return walk(f) and not (seen & free_vars(f))


def ensure_distinct_binders(f: Formula) -> Formula:
    """Rename binders so they are pairwise distinct and distinct from the
    free variables.  Already-conforming formulas are returned unchanged."""
    if _is_barendregt(f):
        return f
    avoid = set(all_names(f))

    def walk(g: Formula, env: dict) -> Formula:
        if isinstance(g, Atom):
            return Atom(g.pred, tuple(subst_term(t, env) for t in g.args))
        if isinstance(g, Impl):
            return Impl(walk(g.lhs, env), walk(g.rhs, env))
        nv = fresh_name(g.var, avoid)
        avoid.add(nv)
        env2 = dict(env)
        env2[g.var] = nv
        return Forall(nv, walk(g.body, env2))

    return walk(f, {})


# ---------------------------------------------------------------------------
# Alpha-equivalence

def alpha_eq(f: Formula, g: Formula, env: Optional[tuple] = None) -> bool:
    """Alpha-equivalence of formulas; free variables must match exactly
    unless related by the (optional) renaming env (pairs of names)."""
    pairs = () if env is None else env

    def look(x: str, left: bool) -> Optional[str]:
        for a, b in reversed(pairs):
            if left and a == x:
                return b
            if not left and b == x:
                return a
        return None

    def eq_t(s: FoTerm, t: FoTerm, bnd) -> bool:
        if isinstance(s, Var) and isinstance(t, Var):
            for a, b in reversed(bnd):
                if a == s.name or b == t.name:
                    return a == s.name and b == t.name
            m = look(s.name, True)
            if m is not None:
                return m == t.name
            m = look(t.name, False)
            if m is not None:
                return False
            return s.name == t.name
        if isinstance(s, Fn) and isinstance(t, Fn):
            return (s.symbol == t.symbol and len(s.args) == len(t.args)
                    and all(eq_t(a, b, bnd) for a, b in zip(s.args, t.args)))
        return False

    def eq_f(a: Formula, b: Formula, bnd) -> bool:
        if isinstance(a, Atom) and isinstance(b, Atom):
            return (a.pred == b.pred and len(a.args) == len(b.args)
                    and all(eq_t(s, t, bnd) for s, t in zip(a.args, b.args)))
        if isinstance(a, Impl) and isinstance(b, Impl):
            return eq_f(a.lhs, b.lhs, bnd) and eq_f(a.rhs, b.rhs, bnd)
        if isinstance(a, Forall) and isinstance(b, Forall):
            return eq_f(a.body, b.body, bnd + ((a.var, b.var),))
        return False

    return eq_f(f, g, ())


def formula_size(f: Formula) -> int:
    if isinstance(f, Atom):
        return 1
    if isinstance(f, Impl):
        return 1 + formula_size(f.lhs) + formula_size(f.rhs)
    return 1 + formula_size(f.body)
