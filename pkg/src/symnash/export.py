"""Graphviz views of a network: the reachable product game, and the graph a
single deviating player faces when everyone else is locked to a profile.
Output is deterministic — nodes in sorted order, edges in canonical action
order — so exports diff cleanly."""

from __future__ import annotations

from .arena import GameNetwork, config_successors, reachable_configurations
from .solver import _Context, _deviation_successors
from .strategy import MooreStrategy
from .symmetry import SymmetricRepresentation


def _quote(text: str) -> str:
    escaped = text.replace("\\", "\\\\").replace('"', '\\"')
    return f'"{escaped}"'


def _config_label(t) -> str:
    return "(" + ",".join(t) + ")"


def product_dot(g: GameNetwork) -> str:
    """The product game restricted to configurations reachable from the
    initial one (all joint moves allowed)."""
    lines = ["digraph product {", "  rankdir=LR;"]
    reach = reachable_configurations(g)
    for t in reach:
        shape = "doublecircle" if t == g.initial else "circle"
        lines.append(f"  {_quote(_config_label(t))} [shape={shape}];")
    for t in reach:
        for u in config_successors(g, t):
            lines.append(f"  {_quote(_config_label(t))} -> {_quote(_config_label(u))};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def deviation_dot(
    g: GameNetwork,
    rep: SymmetricRepresentation,
    sigma0: MooreStrategy,
    player: int,
) -> str:
    """The one-player graph for `player` deviating against the symmetric
    profile derived from sigma0: nodes are (configuration, live memories),
    edges are the deviator's own moves."""
    ctx = _Context(g, rep, None)
    strategies = [sigma0] * g.n
    successors = _deviation_successors(ctx, strategies, player)
    start = (
        g.initial,
        tuple(0 if j == player else sigma0.initial_memory for j in range(g.n)),
    )

    def label(node) -> str:
        t, mems = node
        return _config_label(t) + "|" + ",".join(str(q) for q in mems)

    order: dict = {start: 0}
    queue = [start]
    edges = []
    while queue:
        node = queue.pop(0)
        for action, child in successors(node):
            if child not in order:
                order[child] = len(order)
                queue.append(child)
            edges.append((node, action, child))

    lines = [f"digraph deviation_by_{player} {{", "  rankdir=LR;"]
    for node in order:
        shape = "doublecircle" if node == start else "circle"
        lines.append(f"  {_quote(label(node))} [shape={shape}];")
    for node, action, child in edges:
        lines.append(
            f"  {_quote(label(node))} -> {_quote(label(child))}"
            f" [label={_quote(action)}];"
        )
    lines.append("}")
    return "\n".join(lines) + "\n"
