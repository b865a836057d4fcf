"""Linear-time objectives over configurations.

Formulas are built from atoms at(k, s) — "player k's component is state s" —
with the usual boolean and temporal connectives.  Precedence, tightest
first: unary (!, X, F, G), then U/R (right-associative), then &, then |,
then -> (right-associative).

A Lasso is an ultimately periodic configuration word, and eval_lasso
decides a formula on it directly; this is the reference semantics that the
automaton route (see buchi.py) is checked against.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterator, Optional, Sequence

from .errors import FormulaSyntaxError, PlayerIndexOutOfRange, UnknownState
from .symmetry import SymmetricRepresentation, permute_play


class Formula:
    def __str__(self) -> str:
        return formula_to_str(self)


@dataclass(frozen=True)
class Atom(Formula):
    player: int
    state: str


@dataclass(frozen=True)
class Const(Formula):
    value: bool


TRUE = Const(True)
FALSE = Const(False)


@dataclass(frozen=True)
class Not(Formula):
    operand: Formula


@dataclass(frozen=True)
class And(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Or(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Implies(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Next(Formula):
    operand: Formula


@dataclass(frozen=True)
class Eventually(Formula):
    operand: Formula


@dataclass(frozen=True)
class Always(Formula):
    operand: Formula


@dataclass(frozen=True)
class Until(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Release(Formula):
    left: Formula
    right: Formula


_BARE_STATE = re.compile(r"^[A-Za-z0-9_@.]+$")


def _state_token(state: str) -> str:
    if _BARE_STATE.match(state):
        return state
    return '"' + state.replace("\\", "\\\\").replace('"', '\\"') + '"'


def formula_to_str(f: Formula) -> str:
    """Render a formula; parse(formula_to_str(f)) reproduces f."""

    def unary(op: str, child: Formula) -> str:
        body = formula_to_str(child)
        if isinstance(child, (And, Or, Implies, Until, Release)):
            return f"{op} ({body})" if op != "!" else f"!({body})"
        return f"{op} {body}" if op != "!" else f"!{body}"

    match f:
        case Atom(player, state):
            return f"at({player},{_state_token(state)})"
        case Const(value):
            return "true" if value else "false"
        case Not(operand):
            return unary("!", operand)
        case Next(operand):
            return unary("X", operand)
        case Eventually(operand):
            return unary("F", operand)
        case Always(operand):
            return unary("G", operand)
        case And(left, right):
            return f"({formula_to_str(left)} & {formula_to_str(right)})"
        case Or(left, right):
            return f"({formula_to_str(left)} | {formula_to_str(right)})"
        case Implies(left, right):
            return f"({formula_to_str(left)} -> {formula_to_str(right)})"
        case Until(left, right):
            return f"({formula_to_str(left)} U {formula_to_str(right)})"
        case Release(left, right):
            return f"({formula_to_str(left)} R {formula_to_str(right)})"
    raise TypeError(f"not a formula: {f!r}")


_TOKEN = re.compile(
    r"""\s*(?:
        (?P<arrow>->)
      | (?P<sym>[!&|(),])
      | (?P<string>"(?:[^"\\]|\\.)*")
      | (?P<word>[A-Za-z0-9_@.]+)
    )""",
    re.VERBOSE,
)


def _tokenize(src: str) -> Iterator[tuple[str, str, int]]:
    pos = 0
    while pos < len(src):
        m = _TOKEN.match(src, pos)
        if m is None:
            stripped = src[pos:].lstrip()
            if not stripped:
                break
            at = len(src) - len(stripped)
            raise FormulaSyntaxError(f"unexpected character {src[at]!r}", at)
        if m.lastgroup == "arrow":
            yield ("->", "->", m.start("arrow"))
        elif m.lastgroup == "sym":
            yield (m.group("sym"), m.group("sym"), m.start("sym"))
        elif m.lastgroup == "string":
            raw = m.group("string")
            value = raw[1:-1].replace('\\"', '"').replace("\\\\", "\\")
            yield ("string", value, m.start("string"))
        else:
            yield ("word", m.group("word"), m.start("word"))
        pos = m.end()
    yield ("end", "", len(src))


class _Parser:
    def __init__(self, src: str):
        self.tokens = list(_tokenize(src))
        self.index = 0

    def peek(self) -> tuple[str, str, int]:
        return self.tokens[self.index]

    def take(self) -> tuple[str, str, int]:
        tok = self.tokens[self.index]
        self.index += 1
        return tok

    def expect(self, kind: str) -> tuple[str, str, int]:
        tok = self.take()
        if tok[0] != kind:
            raise FormulaSyntaxError(f"expected {kind!r}, found {tok[1]!r}", tok[2])
        return tok

    # implication, lowest precedence, right-associative
    def implication(self) -> Formula:
        left = self.disjunction()
        if self.peek()[0] == "->":
            self.take()
            return Implies(left, self.implication())
        return left

    def disjunction(self) -> Formula:
        left = self.conjunction()
        while self.peek()[0] == "|":
            self.take()
            left = Or(left, self.conjunction())
        return left

    def conjunction(self) -> Formula:
        left = self.until()
        while self.peek()[0] == "&":
            self.take()
            left = And(left, self.until())
        return left

    def until(self) -> Formula:
        left = self.unary()
        kind, value, _ = self.peek()
        if kind == "word" and value in ("U", "R"):
            self.take()
            right = self.until()  # right-associative
            return Until(left, right) if value == "U" else Release(left, right)
        return left

    def unary(self) -> Formula:
        kind, value, pos = self.peek()
        if kind == "!":
            self.take()
            return Not(self.unary())
        if kind == "word" and value in ("X", "F", "G"):
            self.take()
            operand = self.unary()
            return {"X": Next, "F": Eventually, "G": Always}[value](operand)
        return self.primary()

    def primary(self) -> Formula:
        kind, value, pos = self.take()
        if kind == "(":
            inner = self.implication()
            self.expect(")")
            return inner
        if kind == "word":
            if value == "true":
                return TRUE
            if value == "false":
                return FALSE
            if value == "at":
                self.expect("(")
                pkind, pvalue, ppos = self.take()
                if pkind != "word" or not pvalue.isdigit():
                    raise FormulaSyntaxError("expected player index", ppos)
                self.expect(",")
                skind, svalue, spos = self.take()
                if skind not in ("word", "string"):
                    raise FormulaSyntaxError("expected state identifier", spos)
                self.expect(")")
                return Atom(int(pvalue), svalue)
        raise FormulaSyntaxError(f"unexpected token {value!r}", pos)


def parse(
    src: str,
    *,
    n: Optional[int] = None,
    states: Optional[Sequence[str]] = None,
) -> Formula:
    """Parse a formula; with n and/or states given, atoms are range-checked."""
    parser = _Parser(src)
    formula = parser.implication()
    kind, value, pos = parser.peek()
    if kind != "end":
        raise FormulaSyntaxError(f"trailing input {value!r}", pos)
    check_atoms(formula, n=n, states=states)
    return formula


def atoms_of(f: Formula) -> frozenset[Atom]:
    match f:
        case Atom():
            return frozenset([f])
        case Const():
            return frozenset()
        case Not(g) | Next(g) | Eventually(g) | Always(g):
            return atoms_of(g)
        case And(l, r) | Or(l, r) | Implies(l, r) | Until(l, r) | Release(l, r):
            return atoms_of(l) | atoms_of(r)
    raise TypeError(f"not a formula: {f!r}")


def check_atoms(
    f: Formula,
    *,
    n: Optional[int] = None,
    states: Optional[Sequence[str]] = None,
) -> None:
    """Raise if an atom mentions an unknown player index or state."""
    known = None if states is None else set(states)
    for atom in sorted(atoms_of(f), key=lambda a: (a.player, a.state)):
        if n is not None and not 0 <= atom.player < n:
            raise PlayerIndexOutOfRange(atom.player, n)
        if known is not None and atom.state not in known:
            raise UnknownState(atom.state)


def map_atoms(f: Formula, fn) -> Formula:
    """Rebuild f with every atom a replaced by fn(a)."""
    match f:
        case Atom():
            return fn(f)
        case Const():
            return f
        case Not(g):
            return Not(map_atoms(g, fn))
        case Next(g):
            return Next(map_atoms(g, fn))
        case Eventually(g):
            return Eventually(map_atoms(g, fn))
        case Always(g):
            return Always(map_atoms(g, fn))
        case And(l, r):
            return And(map_atoms(l, fn), map_atoms(r, fn))
        case Or(l, r):
            return Or(map_atoms(l, fn), map_atoms(r, fn))
        case Implies(l, r):
            return Implies(map_atoms(l, fn), map_atoms(r, fn))
        case Until(l, r):
            return Until(map_atoms(l, fn), map_atoms(r, fn))
        case Release(l, r):
            return Release(map_atoms(l, fn), map_atoms(r, fn))
    raise TypeError(f"not a formula: {f!r}")


def instantiate_for_player(
    f: Formula, player: int, rep: SymmetricRepresentation
) -> Formula:
    """Player `player`'s objective: atoms at(k,s) become at(perm(0,player)(k), s).

    Rewriting through the symmetry family keeps objectives compatible: a
    play satisfies player i's instance exactly when the play permuted by
    perm(i,j)^-1 satisfies player j's.
    """
    if not 0 <= player < rep.n:
        raise PlayerIndexOutOfRange(player, rep.n)
    perm = rep.perm(0, player)
    return map_atoms(f, lambda a: Atom(perm.image[a.player], a.state))


@dataclass(frozen=True)
class Lasso:
    """An ultimately periodic configuration word: prefix . cycle^omega."""

    prefix: tuple[tuple[str, ...], ...]
    cycle: tuple[tuple[str, ...], ...]

    def __post_init__(self):
        if not self.cycle:
            raise ValueError("lasso cycle must be non-empty")

    def __len__(self) -> int:
        return len(self.prefix) + len(self.cycle)

    def position(self, index: int) -> tuple[str, ...]:
        """The configuration at step `index` of the infinite word."""
        if index < len(self.prefix):
            return self.prefix[index]
        return self.cycle[(index - len(self.prefix)) % len(self.cycle)]

    def successor(self, pos: int) -> int:
        """Successor among the len(self) distinct positions, wrapping the cycle."""
        if pos + 1 < len(self):
            return pos + 1
        return len(self.prefix)

    def permuted(self, perm) -> "Lasso":
        return Lasso(permute_play(self.prefix, perm), permute_play(self.cycle, perm))


def eval_lasso(f: Formula, lasso: Lasso) -> bool:
    """Decide whether the infinite word of `lasso` satisfies `f`.

    Works position-by-position over the finite quotient (prefix plus one
    turn of the cycle): boolean operators pointwise, X through the
    successor map, and U/R/F/G as least/greatest fixpoints, which converge
    within len(lasso) rounds.
    """
    total = len(lasso)
    positions = range(total)
    succ = [lasso.successor(p) for p in positions]
    cache: dict[Formula, frozenset[int]] = {}

    def lfp(start: frozenset[int], keep: frozenset[int]) -> frozenset[int]:
        # positions from which `start` is reached along `keep`
        sat = set(start)
        changed = True
        while changed:
            changed = False
            for p in positions:
                if p not in sat and p in keep and succ[p] in sat:
                    sat.add(p)
                    changed = True
        return frozenset(sat)

    def gfp(inside: frozenset[int], release: frozenset[int]) -> frozenset[int]:
        # largest set within `inside` closed under succ except where released
        sat = set(inside)
        changed = True
        while changed:
            changed = False
            for p in list(sat):
                if p not in release and succ[p] not in sat:
                    sat.discard(p)
                    changed = True
        return frozenset(sat)

    def sat_set(g: Formula) -> frozenset[int]:
        hit = cache.get(g)
        if hit is not None:
            return hit
        match g:
            case Atom(player, state):
                result = frozenset(p for p in positions if lasso.position(p)[player] == state)
            case Const(value):
                result = frozenset(positions) if value else frozenset()
            case Not(h):
                result = frozenset(positions) - sat_set(h)
            case And(l, r):
                result = sat_set(l) & sat_set(r)
            case Or(l, r):
                result = sat_set(l) | sat_set(r)
            case Implies(l, r):
                result = (frozenset(positions) - sat_set(l)) | sat_set(r)
            case Next(h):
                inner = sat_set(h)
                result = frozenset(p for p in positions if succ[p] in inner)
            case Eventually(h):
                result = lfp(sat_set(h), frozenset(positions))
            case Always(h):
                result = gfp(sat_set(h), frozenset())
            case Until(l, r):
                result = lfp(sat_set(r), sat_set(l))
            case Release(l, r):
                result = gfp(sat_set(r), sat_set(l))
            case _:
                raise TypeError(f"not a formula: {g!r}")
        cache[g] = result
        return result

    return 0 in sat_set(f)
