"""Bracketed contexts, the cleaning rewrite system with traces, the three
deduction rules of the bracket calculus, and the scheme checker."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, List, Optional, Tuple, Union

from .syntax import (Atom, Forall, Formula, Impl, bound_vars, free_vars,
                     render)

STEP_CAP = 10 ** 6


class CleaningOverflow(RuntimeError):
    """Cleaning exceeded the step cap; signals an implementation bug."""


class GoalNotForall(Exception):
    pass


class GoalNotImpl(Exception):
    pass


# ---------------------------------------------------------------------------
# Contexts and items


@dataclass(frozen=True)
class Fml:
    formula: Formula
    fid: int = -1


@dataclass(frozen=True)
class Bracket:
    binds: frozenset
    inner: "LJBContext"


Item = Union[Fml, Bracket]


@dataclass(frozen=True)
class LJBContext:
    items: Tuple[Item, ...] = ()


@dataclass(frozen=True)
class LJBSequent:
    context: LJBContext
    goal: Formula


def render_item(it: Item) -> str:
    if isinstance(it, Fml):
        return render(it.formula)
    inner = ", ".join(render_item(x) for x in it.inner.items)
    binds = ",".join(sorted(it.binds))
    return f"[{inner}]_{{{binds}}}"


def render_context(ctx: LJBContext) -> str:
    return ", ".join(render_item(it) for it in ctx.items)


def render_ljb_sequent(s: LJBSequent) -> str:
    ctx = render_context(s.context)
    return f"{ctx} |- {render(s.goal)}" if ctx else f"|- {render(s.goal)}"


def item_free_vars(it: Item) -> frozenset:
    if isinstance(it, Fml):
        return free_vars(it.formula)
    out: set = set()
    for x in it.inner.items:
        out |= item_free_vars(x)
    return frozenset(out) - it.binds


def context_free_vars(ctx: LJBContext) -> frozenset:
    out: set = set()
    for it in ctx.items:
        out |= item_free_vars(it)
    return frozenset(out)


def item_fids(it: Item) -> Tuple[int, ...]:
    if isinstance(it, Fml):
        return (it.fid,)
    out: Tuple[int, ...] = ()
    for x in it.inner.items:
        out += item_fids(x)
    return out


def erase_formulas(ctx: LJBContext) -> List[Formula]:
    """The bracket-erased formula multiset, in traversal order."""
    out: List[Formula] = []
    for it in ctx.items:
        if isinstance(it, Fml):
            out.append(it.formula)
        else:
            out.extend(erase_formulas(it.inner))
    return out


def iter_fmls(ctx: LJBContext) -> Iterator[Fml]:
    for it in ctx.items:
        if isinstance(it, Fml):
            yield it
        else:
            yield from iter_fmls(it.inner)


def canon(ctx: LJBContext) -> LJBContext:
    """Canonical (sorted) representation; multiset semantics unchanged."""
    items = tuple(
        it if isinstance(it, Fml) else Bracket(it.binds, canon(it.inner))
        for it in ctx.items)
    return LJBContext(tuple(sorted(items,
                                   key=lambda i: (render_item(i),
                                                  item_fids(i)))))


def annotate(ctx: LJBContext) -> LJBContext:
    """Assign occurrence ids 0.. in traversal order of the canonical form."""
    ctx = canon(ctx)
    counter = [0]

    def walk(c: LJBContext) -> LJBContext:
        out = []
        for it in c.items:
            if isinstance(it, Fml):
                out.append(Fml(it.formula, counter[0]))
                counter[0] += 1
            else:
                out.append(Bracket(it.binds, walk(it.inner)))
        return LJBContext(tuple(out))

    return walk(ctx)


# ---------------------------------------------------------------------------
# Cleaning


@dataclass(frozen=True)
class SplitStep:
    parent: Tuple[int, ...]
    bracket: int
    inner: int


@dataclass(frozen=True)
class DropStep:
    parent: Tuple[int, ...]
    bracket: int


@dataclass(frozen=True)
class MergeStep:
    parent: Tuple[int, ...]
    keep: int
    drop: int


CleaningStep = Union[SplitStep, DropStep, MergeStep]
CleaningTrace = Tuple[CleaningStep, ...]


def _rebuild(ctx: LJBContext, path: Tuple[int, ...], fn) -> LJBContext:
    if not path:
        return LJBContext(fn(ctx.items))
    items = list(ctx.items)
    br = items[path[0]]
    items[path[0]] = Bracket(br.binds, _rebuild(br.inner, path[1:], fn))
    return LJBContext(tuple(items))


def _find_step(ctx: LJBContext, path: Tuple[int, ...]) -> Optional[CleaningStep]:
    for idx, it in enumerate(ctx.items):
        if not isinstance(it, Bracket):
            continue
        sub = _find_step(it.inner, path + (idx,))
        if sub is not None:
            return sub
        for j, inner_it in enumerate(it.inner.items):
            if not (item_free_vars(inner_it) & it.binds):
                return SplitStep(path, idx, j)
        if not it.inner.items:
            return DropStep(path, idx)
    for i in range(len(ctx.items) - 1):
        if render_item(ctx.items[i]) == render_item(ctx.items[i + 1]):
            return MergeStep(path, i, i + 1)
    return None


def is_normal(ctx: LJBContext) -> bool:
    return _find_step(ctx, ()) is None


def apply_step(ctx: LJBContext, step: CleaningStep) -> LJBContext:
    if isinstance(step, SplitStep):
        def fn(items):
            items = list(items)
            br = items[step.bracket]
            moved = br.inner.items[step.inner]
            rest = br.inner.items[:step.inner] + br.inner.items[step.inner + 1:]
            items[step.bracket] = Bracket(br.binds, LJBContext(rest))
            items.append(moved)
            return tuple(items)
    elif isinstance(step, DropStep):
        def fn(items):
            return items[:step.bracket] + items[step.bracket + 1:]
    else:
        def fn(items):
            return items[:step.drop] + items[step.drop + 1:]
    return canon(_rebuild(ctx, step.parent, fn))


def merge_pairs(ctx: LJBContext, step: MergeStep) -> List[Tuple[int, int]]:
    """(dropped fid, kept fid) pairs for a merge step on ctx."""
    level = ctx
    for idx in step.parent:
        level = level.items[idx].inner
    kept = item_fids(level.items[step.keep])
    dropped = item_fids(level.items[step.drop])
    assert len(kept) == len(dropped)
    return list(zip(dropped, kept))


def normalize_chain(ctx: LJBContext):
    """Small-step normalization under the fixed strategy.

    Returns (chain, steps): chain[0] is the canonical form of ctx,
    chain[-1] the normal form, and steps[i] rewrites chain[i] to
    chain[i+1].
    """
    cur = canon(ctx)
    chain = [cur]
    steps: List[CleaningStep] = []
    for _ in range(STEP_CAP):
        step = _find_step(cur, ())
        if step is None:
            return chain, tuple(steps)
        cur = apply_step(cur, step)
        chain.append(cur)
        steps.append(step)
    raise CleaningOverflow(f"no normal form within {STEP_CAP} steps")


def normalize(ctx: LJBContext):
    """Normal form of a context plus the cleaning trace reaching it."""
    chain, steps = normalize_chain(ctx)
    return chain[-1], steps


def replay(ctx: LJBContext, trace: CleaningTrace) -> List[LJBContext]:
    """Re-run a recorded trace from ctx; raises on a non-applicable step."""
    cur = canon(ctx)
    chain = [cur]
    for step in trace:
        cur = apply_step(cur, step)
        chain.append(cur)
    return chain


# ---------------------------------------------------------------------------
# Deduction rules


@dataclass(frozen=True)
class ExposeEntry:
    occurrence_id: int
    restructured: LJBContext
    formula: Formula
    fid: int
    args: Tuple[Formula, ...]
    path: Tuple[int, ...]


def expose(ctx: LJBContext, goal_atom: Formula) -> List[ExposeEntry]:
    """All usable occurrences of hypotheses whose atomic head equals the
    goal, each with the bracket-restructured context."""
    assert isinstance(goal_atom, Atom)
    entries: List[ExposeEntry] = []

    def walk(level: LJBContext, chain, crossed: frozenset, path):
        for idx, it in enumerate(level.items):
            if isinstance(it, Bracket):
                walk(it.inner, chain + [(level, idx, it.binds)],
                     crossed | it.binds, path + (idx,))
                continue
            args, head = _impl_parts(it.formula)
            if head is None or head != goal_atom:
                continue
            if free_vars(head) & crossed:
                continue
            entries.append(ExposeEntry(
                occurrence_id=len(entries),
                restructured=_restructure(chain, level, idx),
                formula=it.formula,
                fid=it.fid,
                args=args,
                path=path + (idx,)))

    walk(ctx, [], frozenset(), ())
    return entries


def _impl_parts(f: Formula):
    args = []
    while isinstance(f, Impl):
        args.append(f.lhs)
        f = f.rhs
    if not isinstance(f, Atom):
        return (), None
    return tuple(args), f


def _restructure(chain, final_level: LJBContext, final_idx: int) -> LJBContext:
    exposed = final_level.items[final_idx]
    rest = final_level.items[:final_idx] + final_level.items[final_idx + 1:]
    if not chain:
        return canon(LJBContext(rest + (exposed,)))
    core: Optional[Item] = None
    for level, idx, binds in chain:
        gamma = level.items[:idx] + level.items[idx + 1:]
        inner = gamma if core is None else (core,) + gamma
        core = Bracket(binds, LJBContext(inner))
    return canon(LJBContext((core,) + rest + (exposed,)))


def apply_rforall(s: LJBSequent) -> LJBSequent:
    if not isinstance(s.goal, Forall):
        raise GoalNotForall(render(s.goal))
    v = frozenset(bound_vars(s.goal))
    bracketed = LJBContext((Bracket(v, s.context),))
    normal, _ = normalize(bracketed)
    return LJBSequent(normal, s.goal.body)


def apply_rimpl(s: LJBSequent) -> LJBSequent:
    if not isinstance(s.goal, Impl):
        raise GoalNotImpl(render(s.goal))
    extended = LJBContext(s.context.items + (Fml(s.goal.lhs),))
    normal, _ = normalize(extended)
    return LJBSequent(normal, s.goal.rhs)


# ---------------------------------------------------------------------------
# Scheme checking

def scheme_check(session, s: LJBSequent, pi) -> bool:
    """Derivability of s |- pi : goal in the bracket calculus with
    canonical proof variables."""
    from .ljplus import LamPf, LamTm, Spine

    goal = s.goal
    if isinstance(goal, Atom):
        if not isinstance(pi, Spine):
            return False
        for entry in expose(s.context, goal):
            if session.canonical_var(entry.formula) != pi.head:
                continue
            if len(entry.args) != len(pi.args):
                continue
            premise_ctx, _ = normalize(entry.restructured)
            if all(scheme_check(session, LJBSequent(premise_ctx, a), sub)
                   for a, sub in zip(entry.args, pi.args)):
                return True
        return False
    if isinstance(goal, Forall):
        if not isinstance(pi, LamTm) or pi.var != goal.var:
            return False
        return scheme_check(session, apply_rforall(s), pi.body)
    if not isinstance(pi, LamPf):
        return False
    if pi.annot != goal.lhs:
        return False
    if session.canonical_var(goal.lhs) != pi.pvar:
        return False
    return scheme_check(session, apply_rimpl(s), pi.body)
