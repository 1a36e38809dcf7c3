"""Graphviz DOT export of Bergman graphs.

Vertices are circles, hyperedges are point nodes.  Source connectors have
no arrowhead, range connectors do.  Blue hyperedges are dashed, red solid.
"""

from __future__ import annotations

from .structures import BLUE, BergmanGraph, BergmanPresentation, pres_to_graph


def _q(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def _expand(e, order):
    pos = {v: i for i, v in enumerate(order)}
    out = []
    for v, m in sorted(e.items(), key=lambda t: pos[t[0]]):
        out += [v] * m
    return out


def dot_export(g: BergmanGraph | BergmanPresentation, name: str = "bergman") -> str:
    if isinstance(g, BergmanPresentation):
        g = pres_to_graph(g)
    lines = [f"digraph {_q(name)} {{"]
    for v in g.vertices:
        lines.append(f"  {_q('v:' + v)} [shape=circle, label={_q(v)}];")
    for h in g.hyperedges:
        style = "dashed" if h.colour == BLUE else "solid"
        colour = "blue" if h.colour == BLUE else "red"
        node = _q("h:" + h.label)
        lines.append(f"  {node} [shape=point, xlabel={_q(h.label)}, color={colour}];")
        for v in _expand(h.source, g.vertices):
            lines.append(f"  {_q('v:' + v)} -> {node} [dir=none, style={style}, color={colour}];")
        for v in _expand(h.range, g.vertices):
            lines.append(f"  {node} -> {_q('v:' + v)} [style={style}, color={colour}];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def node_ids(text: str) -> list[str]:
    """Node ids declared in a DOT text produced by :func:`dot_export`."""
    out = []
    for line in text.splitlines():
        line = line.strip()
        if line.startswith('"') and "->" not in line and "[" in line:
            out.append(line.split(" [", 1)[0].strip('"'))
    return out
