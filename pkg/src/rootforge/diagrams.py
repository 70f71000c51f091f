"""Diagrams of root sets, ADE shape recognition and graph isomorphism.

Two diagram kinds appear: the plain diagram of a root set (single bonds
between non-orthogonal non-opposite roots, quadruple bonds between a root
and its negative) and the projective diagram obtained after identifying
each root with its negative.  Both are small labeled graphs, so shape
recognition and isomorphism are done by direct backtracking.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .errors import TooLarge, UnrecognizedComponent
from .rootsystem import RootSet, RootSystem

MAX_NODES = 64


@dataclass(frozen=True)
class Diagram:
    """Multigraph on opaque node ids with bond multiplicities in {1, 4}."""

    nodes: tuple
    bonds: frozenset  # of (frozenset({a, b}), multiplicity)

    def multiplicity(self, a, b) -> int:
        key = frozenset((a, b))
        for pair, m in self.bonds:
            if pair == key:
                return m
        return 0

    def neighbors(self, a) -> tuple:
        out = []
        for pair, _ in self.bonds:
            if a in pair:
                out.extend(x for x in pair if x != a)
        return tuple(sorted(out, key=_node_key))


@dataclass(frozen=True)
class ProjectiveDiagram:
    """Simple graph on projective-root ids; a bond joins non-orthogonal roots."""

    nodes: tuple
    adjacency: frozenset  # of frozenset({a, b})

    def adjacent(self, a, b) -> bool:
        return frozenset((a, b)) in self.adjacency

    def neighbors(self, a) -> tuple:
        out = [next(iter(p - {a})) for p in self.adjacency if a in p]
        return tuple(sorted(out, key=_node_key))

    def induced(self, nodes) -> "ProjectiveDiagram":
        ns = set(nodes)
        adj = frozenset(p for p in self.adjacency if p <= ns)
        return ProjectiveDiagram(tuple(sorted(ns, key=_node_key)), adj)


def _node_key(x):
    return (0, x) if isinstance(x, int) else (1, str(x))


@dataclass(frozen=True, order=True)
class Irreducible:
    """One irreducible diagram shape: series, rank and an extended flag."""

    series: str
    rank: int
    extended: bool = False

    def render(self) -> str:
        return f"{self.series}{'~' if self.extended else ''}{self.rank}"


@dataclass(frozen=True)
class TypeLabel:
    """Multiset of irreducible shapes with a canonical rendering."""

    parts: tuple[Irreducible, ...]

    def __post_init__(self):
        object.__setattr__(
            self,
            "parts",
            tuple(sorted(self.parts, key=lambda p: (-p.rank, p.series, p.extended))),
        )

    def render(self) -> str:
        if not self.parts:
            return "0"
        out = []
        i = 0
        while i < len(self.parts):
            j = i
            while j < len(self.parts) and self.parts[j] == self.parts[i]:
                j += 1
            count = j - i
            text = self.parts[i].render()
            out.append(text if count == 1 else f"{count}{text}")
            i = j
        return "+".join(out)

    def __str__(self) -> str:  # pragma: no cover
        return self.render()


def type_label(*parts: tuple[str, int] | Irreducible) -> TypeLabel:
    fixed = [
        p if isinstance(p, Irreducible) else Irreducible(p[0], p[1]) for p in parts
    ]
    return TypeLabel(tuple(fixed))


# -- building diagrams ----------------------------------------------------


def gamma_diagram(rs: RootSet) -> Diagram:
    sysm = rs.system
    bonds = []
    for a, b in combinations(rs.members, 2):
        if sysm.negative(a) == b:
            bonds.append((frozenset((a, b)), 4))
        elif sysm.cartan(a, b) != 0:
            bonds.append((frozenset((a, b)), 1))
    return Diagram(tuple(rs.members), frozenset(bonds))


def delta_diagram(rs: RootSet) -> ProjectiveDiagram:
    sysm = rs.system
    nodes = sorted({sysm.proj_rep(i) for i in rs.members})
    adj = set()
    for a, b in combinations(nodes, 2):
        if sysm.cartan(a, b) != 0:
            adj.add(frozenset((a, b)))
    return ProjectiveDiagram(tuple(nodes), frozenset(adj))


def projective_diagram_of(system: RootSystem, nodes: tuple[int, ...]) -> ProjectiveDiagram:
    return delta_diagram(RootSet(system, nodes))


# -- shape recognition -----------------------------------------------------


def _graph_view(d: Diagram | ProjectiveDiagram):
    """Uniform (nodes, adjacency-dict, quad-pairs) view of either kind."""
    if isinstance(d, ProjectiveDiagram):
        adj = {n: set() for n in d.nodes}
        for p in d.adjacency:
            a, b = tuple(p)
            adj[a].add(b)
            adj[b].add(a)
        return d.nodes, adj, set()
    adj = {n: set() for n in d.nodes}
    quads = set()
    for pair, m in d.bonds:
        a, b = tuple(pair)
        adj[a].add(b)
        adj[b].add(a)
        if m == 4:
            quads.add(pair)
    return d.nodes, adj, quads


def classify_components(d: Diagram | ProjectiveDiagram) -> TypeLabel:
    """Recognize every connected component as an ADE or extended ADE shape."""
    nodes, adj, quads = _graph_view(d)
    seen: set = set()
    parts = []
    for start in nodes:
        if start in seen:
            continue
        comp = _component(start, adj)
        seen.update(comp)
        parts.append(_classify_one(comp, adj, quads))
    return TypeLabel(tuple(parts))


def _component(start, adj):
    comp = {start}
    queue = [start]
    while queue:
        cur = queue.pop()
        for nxt in adj[cur]:
            if nxt not in comp:
                comp.add(nxt)
                queue.append(nxt)
    return comp


def _classify_one(comp: set, adj, quads) -> Irreducible:
    n = len(comp)
    comp_quads = [q for q in quads if q <= comp]
    if comp_quads:
        if n == 2 and len(comp_quads) == 1:
            return Irreducible("A", 1, extended=True)
        raise UnrecognizedComponent("quadruple bond inside a larger component")
    edges = sum(len(adj[x] & comp) for x in comp) // 2
    degs = sorted(len(adj[x] & comp) for x in comp)
    if edges == n and n >= 3 and degs == [2] * n:
        return Irreducible("A", n - 1, extended=True)
    if edges != n - 1:
        raise UnrecognizedComponent(f"component with {n} nodes and {edges} bonds")
    # Tree shapes.
    if degs[-1] <= 2:
        return Irreducible("A", n)
    if degs[-1] == 4:
        if n == 5 and degs == [1, 1, 1, 1, 4]:
            return Irreducible("D", 4, extended=True)
        raise UnrecognizedComponent("degree-4 node outside the extended D4 star")
    branch = [x for x in comp if len(adj[x] & comp) == 3]
    if len(branch) == 1:
        arms = sorted(_arm_lengths(branch[0], comp, adj))
        table = {
            (1, 2, 2): Irreducible("E", 6),
            (1, 2, 3): Irreducible("E", 7),
            (1, 2, 4): Irreducible("E", 8),
            (2, 2, 2): Irreducible("E", 6, extended=True),
            (1, 3, 3): Irreducible("E", 7, extended=True),
            (1, 2, 5): Irreducible("E", 8, extended=True),
        }
        if arms[0] == arms[1] == 1:
            return Irreducible("D", n)
        if tuple(arms) in table:
            return table[tuple(arms)]
        raise UnrecognizedComponent(f"branching tree with arms {arms}")
    if len(branch) == 2:
        ok = all(
            len(adj[x] & comp) <= 2 for x in comp if x not in branch
        ) and all(
            sum(1 for y in adj[x] & comp if len(adj[y] & comp) == 1) == 2
            for x in branch
        )
        if ok:
            return Irreducible("D", n - 1, extended=True)
    raise UnrecognizedComponent("tree with more than one branching node")


def _arm_lengths(branch, comp, adj):
    arms = []
    for first in adj[branch] & comp:
        length = 1
        prev, cur = branch, first
        while True:
            nxt = [x for x in adj[cur] & comp if x != prev]
            if not nxt:
                break
            prev, cur = cur, nxt[0]
            length += 1
        arms.append(length)
    return arms


def is_dynkin_shape(d: ProjectiveDiagram) -> bool:
    """True iff every component is a plain (non-extended) ADE diagram."""
    try:
        label = classify_components(d)
    except UnrecognizedComponent:
        return False
    return all(not p.extended for p in label.parts)


# -- subdiagram search and isomorphism -------------------------------------


def find_subdiagrams(d: ProjectiveDiagram, pattern: TypeLabel) -> list[dict]:
    """All node subsets of d whose induced diagram has the given irreducible
    type, each with one explicit isomorphism from a model diagram.

    Results are sorted by node subset; one witness per subset.
    """
    assert len(pattern.parts) == 1, "pattern must be irreducible"
    model = _model_diagram(pattern.parts[0])
    out = {}
    for emb in _embeddings(model, d, induced=True):
        key = tuple(sorted(emb.values(), key=_node_key))
        if key not in out:
            out[key] = emb
    return [out[k] for k in sorted(out, key=lambda t: tuple(map(_node_key, t)))]


def _model_diagram(part: Irreducible) -> ProjectiveDiagram:
    """A concrete diagram of the requested irreducible shape on 0..n-1."""
    s, r, ext = part.series, part.rank, part.extended
    edges: list[tuple[int, int]] = []
    if s == "A" and not ext:
        n = r
        edges = [(i, i + 1) for i in range(n - 1)]
    elif s == "A" and ext:
        n = r + 1
        edges = [(i, (i + 1) % n) for i in range(n)]
    elif s == "D" and not ext:
        n = r
        edges = [(i, i + 1) for i in range(n - 3)] + [(n - 3, n - 2), (n - 3, n - 1)]
    elif s == "D" and ext and r == 4:
        n = 5
        edges = [(0, i) for i in range(1, 5)]
    elif s == "D" and ext:
        n = r + 1
        chain = list(range(n - 4))
        edges = [(i, i + 1) for i in chain[:-1]]
        edges += [(chain[0], n - 4), (chain[0], n - 3), (chain[-1], n - 2), (chain[-1], n - 1)]
        if len(chain) == 1:
            edges = [(0, n - 4), (0, n - 3), (0, n - 2), (0, n - 1)]
    elif s == "E":
        n = r + (1 if ext else 0)
        base = {6: [(0, 2), (2, 3), (3, 4), (4, 5), (1, 3)],
                7: [(0, 2), (2, 3), (3, 4), (4, 5), (5, 6), (1, 3)],
                8: [(0, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 7), (1, 3)]}[r]
        edges = list(base)
        if ext:
            extra = {6: (1, r), 7: (0, r), 8: (7, r)}[r]
            edges.append(extra)
    else:  # pragma: no cover
        raise UnrecognizedComponent(str(part))
    nodes = tuple(range(n))
    return ProjectiveDiagram(nodes, frozenset(frozenset(e) for e in edges))


def _embeddings(small: ProjectiveDiagram, big: ProjectiveDiagram, induced: bool):
    """Backtracking search for (induced) embeddings of small into big."""
    s_nodes = sorted(small.nodes, key=lambda x: -len(small.neighbors(x)))
    b_adj = {n: set(big.neighbors(n)) for n in big.nodes}
    s_adj = {n: set(small.neighbors(n)) for n in small.nodes}

    def extend(i, mapping, used):
        if i == len(s_nodes):
            yield dict(mapping)
            return
        v = s_nodes[i]
        req = s_adj[v]
        for cand in big.nodes:
            if cand in used:
                continue
            ok = True
            for w in s_nodes[:i]:
                w_img = mapping[w]
                adj_small = w in req
                adj_big = cand in b_adj[w_img]
                if adj_small != adj_big and (induced or adj_small):
                    ok = False
                    break
            if ok:
                mapping[v] = cand
                used.add(cand)
                yield from extend(i + 1, mapping, used)
                used.discard(cand)
                del mapping[v]

    yield from extend(0, {}, set())


def are_isomorphic(d1, d2) -> tuple[bool, dict | None]:
    """Isomorphism of labeled (multi)graphs, ignoring node ids."""
    p1, p2 = _as_weighted(d1), _as_weighted(d2)
    if len(p1.nodes) != len(p2.nodes) or len(p1.adjacency) != len(p2.adjacency):
        return False, None
    deg1 = sorted(len(p1.neighbors(n)) for n in p1.nodes)
    deg2 = sorted(len(p2.neighbors(n)) for n in p2.nodes)
    if deg1 != deg2:
        return False, None
    for emb in _embeddings(p1, p2, induced=True):
        return True, emb
    return False, None


def _as_weighted(d) -> ProjectiveDiagram:
    """View a Diagram as a simple graph with quadruple bonds marked by
    auxiliary degree (a pseudo node per quadruple bond)."""
    if isinstance(d, ProjectiveDiagram):
        return d
    nodes = list(d.nodes)
    adj = set()
    extra = 0
    for pair, m in d.bonds:
        a, b = tuple(pair)
        adj.add(frozenset((a, b)))
        if m == 4:
            marker = ("quad", extra)
            extra += 1
            nodes.append(marker)
            adj.add(frozenset((a, marker)))
            adj.add(frozenset((b, marker)))
    return ProjectiveDiagram(tuple(nodes), frozenset(adj))


def automorphism_group(d: ProjectiveDiagram) -> list[dict]:
    """Every automorphism of the diagram, as node -> node mappings."""
    if len(d.nodes) > MAX_NODES:
        raise TooLarge(f"{len(d.nodes)} nodes exceeds the {MAX_NODES}-node bound")
    return list(_embeddings(d, d, induced=True))


# -- DOT export -------------------------------------------------------------


def to_dot(d: Diagram | ProjectiveDiagram, bold_nodes=(), names=None) -> str:
    """Graphviz source; bold nodes get penwidth=3, quadruple bonds label 4."""
    names = names or {}
    bold = set(bold_nodes)

    def nm(x):
        return str(names.get(x, x))

    lines = ["graph diagram {", "  node [shape=circle];"]
    for n in d.nodes:
        attrs = ["label=\"%s\"" % nm(n)]
        if n in bold:
            attrs.append("penwidth=3")
        lines.append("  \"%s\" [%s];" % (nm(n), ", ".join(attrs)))
    if isinstance(d, ProjectiveDiagram):
        pairs = [(tuple(sorted(p, key=_node_key)), 1) for p in d.adjacency]
    else:
        pairs = [(tuple(sorted(p, key=_node_key)), m) for p, m in d.bonds]
    for (a, b), m in sorted(pairs, key=lambda e: (_node_key(e[0][0]), _node_key(e[0][1]))):
        attr = " [label=\"4\"]" if m == 4 else ""
        lines.append("  \"%s\" -- \"%s\"%s;" % (nm(a), nm(b), attr))
    lines.append("}")
    return "\n".join(lines) + "\n"
