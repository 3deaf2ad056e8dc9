"""Context-free grammar of schemes: saturation of the reachable bracket
sequents, emptiness, and height-bounded scheme enumeration."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Dict, FrozenSet, List, Optional, Tuple

from .ljb import (LJBContext, LJBSequent, apply_rforall, apply_rimpl,
                  expose, normalize, render_ljb_sequent)
from .ljplus import LamPf, LamTm, ProofTerm, Spine, render_proof
from .syntax import (Atom, Forall, Formula, Polarity,
                     ensure_distinct_binders, polarity, render)

Scheme = ProofTerm

DEFAULT_CAP = 10 ** 4


class NotPositive(Exception):
    pass


class CapExceeded(Exception):
    pass


@dataclass(frozen=True)
class Nonterminal:
    id: int
    sequent: LJBSequent


@dataclass(frozen=True)
class Production:
    lhs: int
    kind: str  # "spine" | "forall" | "impl"
    premises: Tuple[int, ...]
    head: Optional[str] = None
    var: Optional[str] = None
    annot: Optional[Formula] = None
    occurrence_id: Optional[int] = None


@dataclass(frozen=True)
class Grammar:
    start: int
    nonterminals: Tuple[Nonterminal, ...]
    productions: Tuple[Production, ...]


def build_grammar(goal: Formula, session, cap: int = DEFAULT_CAP) -> Grammar:
    """Saturate the set of sequents reachable from |- goal and emit one
    production per applicable rule instance."""
    if polarity(goal) not in (Polarity.POSITIVE_ONLY, Polarity.BOTH):
        raise NotPositive(render(goal))
    goal = ensure_distinct_binders(goal)

    ids: Dict[str, int] = {}
    nts: List[Nonterminal] = []
    prods: List[Production] = []
    work: deque = deque()

    def intern(seq: LJBSequent) -> int:
        k = render_ljb_sequent(seq)
        if k in ids:
            return ids[k]
        if len(nts) >= cap:
            raise CapExceeded(f"more than {cap} nonterminals")
        nt = Nonterminal(len(nts), seq)
        ids[k] = nt.id
        nts.append(nt)
        work.append(nt)
        return nt.id

    start = intern(LJBSequent(LJBContext(), goal))
    while work:
        nt = work.popleft()
        seq = nt.sequent
        if isinstance(seq.goal, Atom):
            for entry in expose(seq.context, seq.goal):
                premise_ctx, _ = normalize(entry.restructured)
                premises = tuple(
                    intern(LJBSequent(premise_ctx, a)) for a in entry.args)
                prods.append(Production(
                    lhs=nt.id, kind="spine", premises=premises,
                    head=session.canonical_var(entry.formula),
                    occurrence_id=entry.occurrence_id))
        elif isinstance(seq.goal, Forall):
            premise = intern(apply_rforall(seq))
            prods.append(Production(lhs=nt.id, kind="forall",
                                    premises=(premise,), var=seq.goal.var))
        else:
            premise = intern(apply_rimpl(seq))
            prods.append(Production(lhs=nt.id, kind="impl",
                                    premises=(premise,),
                                    head=session.canonical_var(seq.goal.lhs),
                                    annot=seq.goal.lhs))
    return Grammar(start, tuple(nts), tuple(prods))


def is_inhabited(g: Grammar) -> bool:
    """Emptiness of the scheme language by productivity marking."""
    productive: set = set()
    changed = True
    while changed:
        changed = False
        for p in g.productions:
            if p.lhs in productive:
                continue
            if all(q in productive for q in p.premises):
                productive.add(p.lhs)
                changed = True
    return g.start in productive


def enumerate_schemes(g: Grammar, max_height: int) -> List[Scheme]:
    """All schemes of height <= max_height derivable from the start
    nonterminal, canonically ordered."""
    by_lhs: Dict[int, List[Production]] = {}
    for p in g.productions:
        by_lhs.setdefault(p.lhs, []).append(p)
    memo: Dict[Tuple[int, int], FrozenSet[Scheme]] = {}

    def gen(nt: int, h: int) -> FrozenSet[Scheme]:
        if h <= 0:
            return frozenset()
        key = (nt, h)
        if key in memo:
            return memo[key]
        memo[key] = frozenset()  # cycle guard; heights strictly decrease
        out: set = set()
        for p in by_lhs.get(nt, []):
            if p.kind == "spine":
                if not p.premises:
                    out.add(Spine(p.head))
                    continue
                choices = [gen(q, h - 1) for q in p.premises]
                if all(choices):
                    combos = [()]
                    for ch in choices:
                        combos = [pre + (s,)
                                  for pre in combos
                                  for s in sorted(ch, key=render_proof)]
                    out.update(Spine(p.head, tup) for tup in combos)
            elif p.kind == "forall":
                out.update(LamTm(p.var, b) for b in gen(p.premises[0], h - 1))
            else:
                out.update(LamPf(p.head, p.annot, b)
                           for b in gen(p.premises[0], h - 1))
        memo[key] = frozenset(out)
        return memo[key]

    return sorted(gen(g.start, max_height), key=render_proof)


def render_grammar(g: Grammar) -> str:
    lines = []
    for p in g.productions:
        if p.kind == "spine":
            rhs = f"({p.head}{''.join(f' S{q}' for q in p.premises)})" \
                if p.premises else p.head
        elif p.kind == "forall":
            rhs = f"\\{p.var}. S{p.premises[0]}"
        else:
            rhs = f"\\{p.head}:{render(p.annot)}. S{p.premises[0]}"
        lines.append(f"S{p.lhs} -> {rhs}")
    return "\n".join(lines)


def grammar_to_json(g: Grammar) -> dict:
    prods = []
    for p in g.productions:
        entry = {"lhs": p.lhs, "kind": p.kind, "premises": list(p.premises)}
        if p.head is not None:
            entry["head"] = p.head
        if p.var is not None:
            entry["var"] = p.var
        if p.annot is not None:
            entry["annot"] = render(p.annot)
        if p.occurrence_id is not None:
            entry["occurrenceId"] = p.occurrence_id
        prods.append(entry)
    return {
        "start": g.start,
        "nonterminals": [{"id": nt.id,
                          "sequent": render_ljb_sequent(nt.sequent)}
                         for nt in g.nonterminals],
        "productions": prods,
    }
