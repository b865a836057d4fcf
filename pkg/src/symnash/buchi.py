"""Formula-to-automaton translation (declarative tableau).

States are sets of obligations in negation normal form.  Expanding a state
yields its covers: ways to satisfy every obligation now, each cover being a
consistent set of literals to check against the current configuration plus
the obligations postponed to the next step.  Untils may postpone forever
("defer"), which the acceptance condition rules out: one acceptance set per
until, containing every edge that does not defer it, degeneralized into a
single Buechi condition with a counter.

The automaton reads configuration words; edge labels are conjunctions of
(player, state, positive) literals.  to_buchi is deterministic: states are
numbered in discovery order under a canonical expansion order.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional

from .errors import BudgetExceeded
from .ltl import (
    And,
    Atom,
    Const,
    Eventually,
    Always,
    FALSE,
    Formula,
    Implies,
    Lasso,
    Next,
    Not,
    Or,
    Release,
    TRUE,
    Until,
    formula_to_str,
)

Literal = tuple[int, str, bool]
Label = frozenset[Literal]


def nnf(f: Formula) -> Formula:
    """Negation normal form over {literals, true/false, &, |, X, U, R}."""
    match f:
        case Atom() | Const():
            return f
        case And(l, r):
            return And(nnf(l), nnf(r))
        case Or(l, r):
            return Or(nnf(l), nnf(r))
        case Implies(l, r):
            return Or(nnf(Not(l)), nnf(r))
        case Next(g):
            return Next(nnf(g))
        case Eventually(g):
            return Until(TRUE, nnf(g))
        case Always(g):
            return Release(FALSE, nnf(g))
        case Until(l, r):
            return Until(nnf(l), nnf(r))
        case Release(l, r):
            return Release(nnf(l), nnf(r))
        case Not(g):
            match g:
                case Atom():
                    return Not(g)
                case Const(value):
                    return Const(not value)
                case Not(h):
                    return nnf(h)
                case And(l, r):
                    return Or(nnf(Not(l)), nnf(Not(r)))
                case Or(l, r):
                    return And(nnf(Not(l)), nnf(Not(r)))
                case Implies(l, r):
                    return And(nnf(l), nnf(Not(r)))
                case Next(h):
                    return Next(nnf(Not(h)))
                case Eventually(h):
                    return Release(FALSE, nnf(Not(h)))
                case Always(h):
                    return Until(TRUE, nnf(Not(h)))
                case Until(l, r):
                    return Release(nnf(Not(l)), nnf(Not(r)))
                case Release(l, r):
                    return Until(nnf(Not(l)), nnf(Not(r)))
    raise TypeError(f"not a formula: {f!r}")


def _until_subformulas(f: Formula) -> list[Formula]:
    """All Until nodes of an NNF formula, in canonical (string) order."""
    found: set[Formula] = set()

    def walk(g: Formula) -> None:
        match g:
            case Until(l, r):
                found.add(g)
                walk(l)
                walk(r)
            case Release(l, r) | And(l, r) | Or(l, r):
                walk(l)
                walk(r)
            case Next(h) | Not(h):
                walk(h)
            case _:
                pass

    walk(f)
    return sorted(found, key=formula_to_str)


@dataclass(frozen=True)
class _Cover:
    label: Label
    nxt: frozenset[Formula]
    deferred: frozenset[Formula]  # untils postponed via their defer branch


def _add_literal(label: Label, lit: Literal) -> Optional[Label]:
    """Extend a label, or None when it becomes unsatisfiable."""
    player, state, positive = lit
    for p, s, pos in label:
        if p != player:
            continue
        if positive and pos and s != state:
            return None  # one component cannot hold two states
        if s == state and pos != positive:
            return None
    return label | {lit}


def _covers(obligations: frozenset[Formula]) -> list[_Cover]:
    results: list[_Cover] = []

    def expand(
        todo: frozenset[Formula],
        done: frozenset[Formula],
        label: Label,
        nxt: frozenset[Formula],
        deferred: frozenset[Formula],
    ) -> None:
        if not todo:
            results.append(_Cover(label, nxt, deferred))
            return
        f = min(todo, key=formula_to_str)
        rest = todo - {f}
        done = done | {f}

        def push(extra: Iterable[Formula]) -> frozenset[Formula]:
            return rest | (frozenset(extra) - done)

        match f:
            case Const(True):
                expand(rest, done, label, nxt, deferred)
            case Const(False):
                return
            case Atom(player, state):
                extended = _add_literal(label, (player, state, True))
                if extended is not None:
                    expand(rest, done, extended, nxt, deferred)
            case Not(Atom(player, state)):
                extended = _add_literal(label, (player, state, False))
                if extended is not None:
                    expand(rest, done, extended, nxt, deferred)
            case And(l, r):
                expand(push([l, r]), done, label, nxt, deferred)
            case Or(l, r):
                expand(push([l]), done, label, nxt, deferred)
                expand(push([r]), done, label, nxt, deferred)
            case Next(g):
                expand(rest, done, label, nxt | {g}, deferred)
            case Until(l, r):
                expand(push([r]), done, label, nxt, deferred)  # fulfil now
                expand(push([l]), done, label, nxt | {f}, deferred | {f})
            case Release(l, r):
                expand(push([l, r]), done, label, nxt, deferred)  # released now
                expand(push([r]), done, label, nxt | {f}, deferred)
            case _:
                raise TypeError(f"not in negation normal form: {f!r}")

    expand(obligations, frozenset(), frozenset(), frozenset(), frozenset())

    unique: dict[tuple[Label, frozenset[Formula], frozenset[Formula]], _Cover] = {}
    for c in results:
        unique.setdefault((c.label, c.nxt, c.deferred), c)
    return list(unique.values())


@dataclass(frozen=True)
class BuchiAutomaton:
    """Nondeterministic Buechi automaton over configuration words.

    edges[q] lists (label, target) pairs; a label is a conjunction of
    literals (player, state, positive).  State 0 is initial.
    """

    formula: Formula
    num_states: int
    initial: tuple[int, ...]
    accepting: frozenset[int]
    edges: tuple[tuple[tuple[Label, int], ...], ...]
    state_names: tuple[str, ...]

    def matches(self, label: Label, config: tuple[str, ...]) -> bool:
        return all(
            (config[player] == state) == positive for player, state, positive in label
        )

    def successors(self, q: int, config: tuple[str, ...]) -> tuple[int, ...]:
        """Target states reachable from q reading `config`, ascending, deduped."""
        seen: set[int] = set()
        for label, target in self.edges[q]:
            if self.matches(label, config):
                seen.add(target)
        return tuple(sorted(seen))

    def to_dot(self) -> str:
        lines = ["digraph buchi {", "  rankdir=LR;", '  node [shape=circle];']
        for q in range(self.num_states):
            shape = "doublecircle" if q in self.accepting else "circle"
            name = self.state_names[q].replace('"', '\\"')
            lines.append(f'  q{q} [shape={shape} label="q{q}\\n{name}"];')
        for q in self.initial:
            lines.append(f"  init{q} [shape=point];")
            lines.append(f"  init{q} -> q{q};")
        for q in range(self.num_states):
            for label, target in self.edges[q]:
                lines.append(f'  q{q} -> q{target} [label="{label_to_str(label)}"];')
        lines.append("}")
        return "\n".join(lines) + "\n"


def label_to_str(label: Label) -> str:
    if not label:
        return "true"
    parts = []
    for player, state, positive in sorted(label):
        text = f"at({player},{state})"
        parts.append(text if positive else "!" + text)
    return " & ".join(parts)


def _obligations_name(obligations: frozenset[Formula], counter: int, k: int) -> str:
    if not obligations:
        return "{}" if k == 0 else f"{{}} #{counter}"
    body = ", ".join(sorted(formula_to_str(f) for f in obligations))
    return f"{{{body}}}" if k == 0 else f"{{{body}}} #{counter}"


def to_buchi(f: Formula, max_states: Optional[int] = None) -> BuchiAutomaton:
    """Translate a formula into a Buechi automaton accepting exactly its models."""
    root = nnf(f)
    untils = _until_subformulas(root)
    k = len(untils)

    cover_cache: dict[frozenset[Formula], list[_Cover]] = {}

    def covers_of(obligations: frozenset[Formula]) -> list[_Cover]:
        hit = cover_cache.get(obligations)
        if hit is None:
            hit = _covers(obligations)
            cover_cache[obligations] = hit
        return hit

    def advance(counter: int, cover: _Cover) -> int:
        j = 0 if counter == k else counter
        while j < k and untils[j] not in cover.deferred:
            j += 1
        return j

    start = (frozenset([root]), 0)
    index: dict[tuple[frozenset[Formula], int], int] = {start: 0}
    order = [start]
    out_edges: list[list[tuple[Label, int]]] = [[]]
    queue = [start]
    while queue:
        state = queue.pop(0)
        obligations, counter = state
        q = index[state]
        for cover in covers_of(obligations):
            target = (cover.nxt, advance(counter, cover) if k else 0)
            if target not in index:
                if max_states is not None and len(order) >= max_states:
                    raise BudgetExceeded("automaton states", max_states)
                index[target] = len(order)
                order.append(target)
                out_edges.append([])
                queue.append(target)
            out_edges[q].append((cover.label, index[target]))

    if k:
        accepting = frozenset(i for i, (_, c) in enumerate(order) if c == k)
    else:
        accepting = frozenset(range(len(order)))

    return BuchiAutomaton(
        formula=f,
        num_states=len(order),
        initial=(0,),
        accepting=accepting,
        edges=tuple(tuple(es) for es in out_edges),
        state_names=tuple(_obligations_name(obs, c, k) for obs, c in order),
    )


def accepts_lasso(aut: BuchiAutomaton, lasso: Lasso) -> bool:
    """Membership of an ultimately periodic word in the automaton's language.

    Explores the finite product of lasso positions with automaton states
    and looks for a reachable accepting node that lies on a cycle.
    """
    total = len(lasso)

    def node_successors(node: tuple[int, int]) -> list[tuple[int, int]]:
        pos, q = node
        letter = lasso.position(pos)
        nxt = lasso.successor(pos)
        return [(nxt, q2) for q2 in aut.successors(q, letter)]

    reachable: set[tuple[int, int]] = set()
    stack = [(0, q) for q in aut.initial]
    while stack:
        node = stack.pop()
        if node in reachable:
            continue
        reachable.add(node)
        stack.extend(node_successors(node))

    for node in sorted(reachable):
        if node[1] not in aut.accepting:
            continue
        # can `node` reach itself?
        seen: set[tuple[int, int]] = set()
        stack = node_successors(node)
        while stack:
            v = stack.pop()
            if v == node:
                return True
            if v in seen:
                continue
            seen.add(v)
            stack.extend(node_successors(v))
    return False
