"""Semantic type hierarchy with simple property inheritance.

The hierarchy is a single-rooted DAG of named concept nodes.  Each node may
have several parents (multiple classificatory dimensions) and a flat map of
property values.  Two operations matter to the resolver: reachability
(``subsumes`` / ``type_consistent``) and nearest-ancestor property lookup
(``inherited_property``).

File format, one node per line, order independent::

    # comment
    entity:
    animate-entity: entity [animate=true]
    person: animate-entity
    amphibian: vehicle, vessel

i.e. ``name: parent1, parent2 [key=value key=value]``.  The root must be
named ``entity`` and is the only node allowed to have no parents.  Values
``true``/``false`` parse as booleans, everything else stays a string.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from pathlib import Path

from .errors import OntologyError

ROOT_NAME = "entity"

_NODE_RE = re.compile(
    r"^(?P<name>[^:\s]+)\s*:\s*(?P<parents>[^\[\]]*?)\s*(?:\[(?P<props>[^\]]*)\])?$"
)


@dataclass(frozen=True)
class OntologyNode:
    name: str
    parents: tuple[str, ...]
    properties: dict = field(default_factory=dict)


class Ontology:
    """Immutable lookup structure over a validated node set."""

    def __init__(self, nodes):
        self._nodes = {n.name: n for n in nodes}
        self._validate()

    def _validate(self):
        roots = [n for n in self._nodes.values() if not n.parents]
        if len(roots) != 1 or roots[0].name != ROOT_NAME:
            names = sorted(n.name for n in roots)
            raise OntologyError(
                f"expected a single parentless root named {ROOT_NAME!r}, found {names}"
            )
        for node in self._nodes.values():
            for p in node.parents:
                if p not in self._nodes:
                    raise OntologyError(
                        f"node {node.name!r} references unknown parent {p!r}"
                    )
        # cycle check: every node must bottom out at the root
        state = {}  # name -> 1 while on stack, 2 when done

        def visit(name, stack):
            if state.get(name) == 2:
                return
            if state.get(name) == 1:
                cycle = " -> ".join(stack + [name])
                raise OntologyError(f"cycle in ISA graph: {cycle}")
            state[name] = 1
            for p in self._nodes[name].parents:
                visit(p, stack + [name])
            state[name] = 2

        for name in self._nodes:
            visit(name, [])

    def __contains__(self, name):
        return name in self._nodes

    def __len__(self):
        return len(self._nodes)

    def node(self, name) -> OntologyNode:
        try:
            return self._nodes[name]
        except KeyError:
            raise OntologyError(f"unknown ontology node: {name!r}") from None

    def names(self):
        return sorted(self._nodes)

    def ancestors(self, name) -> set[str]:
        """All nodes reachable from ``name`` via parent edges, excluding it."""
        seen = set()
        frontier = list(self.node(name).parents)
        while frontier:
            current = frontier.pop()
            if current in seen:
                continue
            seen.add(current)
            frontier.extend(self._nodes[current].parents)
        return seen

    def subsumes(self, a, b) -> bool:
        """True iff ``a`` equals ``b`` or is an ancestor of ``b``."""
        self.node(a)
        if a == b:
            self.node(b)
            return True
        return a in self.ancestors(b)

    def type_consistent(self, a, b) -> bool:
        """True iff one of the two types subsumes the other."""
        return self.subsumes(a, b) or self.subsumes(b, a)

    def inherited_property(self, name, prop):
        """Value of ``prop`` on ``name`` or its nearest ancestor, else None.

        Search is breadth-first over parent links; among carriers at the
        same depth the lexicographically smallest node name wins, which
        makes multiple-inheritance lookups deterministic.
        """
        level = [self.node(name).name]
        seen = set(level)
        while level:
            carriers = sorted(
                n for n in level if prop in self._nodes[n].properties
            )
            if carriers:
                return self._nodes[carriers[0]].properties[prop]
            nxt = []
            for n in level:
                for p in self._nodes[n].parents:
                    if p not in seen:
                        seen.add(p)
                        nxt.append(p)
            level = nxt
        return None


def _parse_value(raw):
    if raw == "true":
        return True
    if raw == "false":
        return False
    return raw


def parse_ontology(text, source="<string>") -> Ontology:
    nodes = []
    seen = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        m = _NODE_RE.match(line)
        if m is None:
            raise OntologyError(f"{source}:{lineno}: cannot parse node line: {raw!r}")
        name = m.group("name")
        if name in seen:
            raise OntologyError(f"{source}:{lineno}: duplicate node {name!r}")
        seen.add(name)
        parents = tuple(
            p.strip() for p in m.group("parents").split(",") if p.strip()
        )
        props = {}
        for item in (m.group("props") or "").split():
            if "=" not in item:
                raise OntologyError(
                    f"{source}:{lineno}: property {item!r} is not key=value"
                )
            key, value = item.split("=", 1)
            props[key] = _parse_value(value)
        nodes.append(OntologyNode(name=name, parents=parents, properties=props))
    return Ontology(nodes)


def load_ontology(path) -> Ontology:
    path = Path(path)
    return parse_ontology(path.read_text(encoding="utf-8"), source=str(path))
