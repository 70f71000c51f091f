"""Completion of symmetric root sets and enhanced bases.

A symmetric set is complete when every D4-type subset contains its
extension root.  The completion is computed by repeated elementary
extensions; for an irreducible system the completion of a simple basis is
the enhanced basis, whose projective diagram carries canonical node names
("1".."n" for basis nodes, "l1","l2",... for the extra nodes of the E
series, primed labels for the D series).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations

from .diagrams import ProjectiveDiagram, projective_diagram_of
from .errors import NotD4, NotIrreducible, NotSymmetric, RootForgeError
from .rootsystem import RootSet, RootSystem, components


# -- D4 stars and extension roots -----------------------------------------


def d4_stars(system: RootSystem, nodes: tuple[int, ...]) -> list[tuple[int, tuple[int, ...]]]:
    """All D4-type subdiagrams of the projective node set, as (center, ends)."""
    nodeset = list(nodes)
    stars = []
    for c in nodeset:
        nbrs = [x for x in nodeset if x != c and system.cartan(c, x) != 0]
        if len(nbrs) < 3:
            continue
        for ends in combinations(nbrs, 3):
            if all(system.cartan(a, b) == 0 for a, b in combinations(ends, 2)):
                stars.append((c, tuple(sorted(ends))))
    return stars


def extension_root(system: RootSystem, center: int, ends: tuple[int, ...]) -> int:
    """Root index completing a D4 set {ends, center} to its extended set.

    Signs are normalized so that every end pairs to -1 with the center;
    the returned root d satisfies ends + d + 2*center = 0 after that
    normalization, which makes {ends, d} the four ends of the extended
    star around the center.
    """
    if len(ends) != 3:
        raise NotD4("a D4 set has exactly three end roots")
    c = system.proj_rep(center)
    fixed = []
    for e in ends:
        pairing = system.cartan(e, c)
        if pairing == -1:
            fixed.append(e)
        elif pairing == 1:
            fixed.append(system.negative(e))
        else:
            raise NotD4("end root not adjacent to the center")
    for a, b in combinations(fixed, 2):
        if system.cartan(a, b) != 0:
            raise NotD4("end roots of a D4 set must be orthogonal")
    coords = [0] * system.ambient_dim
    for e in fixed:
        for k, x in enumerate(system.roots[e]):
            coords[k] += x
    for k, x in enumerate(system.roots[c]):
        coords[k] += 2 * x
    delta = tuple(-x for x in coords)
    idx = system.index(delta)
    if idx is None:
        raise NotD4("extension of a D4 set left the root system")
    return idx


def is_complete(rs: RootSet) -> bool:
    """True iff every D4-type subset has its extension root in the set."""
    if not rs.symmetric:
        raise NotSymmetric("completeness is defined for symmetric sets")
    sysm = rs.system
    nodes = tuple(sorted({sysm.proj_rep(i) for i in rs.members}))
    present = set(rs.members)
    for center, ends in d4_stars(sysm, nodes):
        if extension_root(sysm, center, ends) not in present:
            return False
    return True


def elementary_extension(
    system: RootSystem, nodes: tuple[int, ...], center: int, ends: tuple[int, ...]
) -> tuple[tuple[int, ...], int]:
    """Extend one D4 subdiagram of the projective node set by its extra node.

    Returns the enlarged node tuple and the new node.  The new node's bonds
    are those of the actual extension root; they are checked against the
    parity rule: outside the D4 star it connects exactly the nodes having
    one or three neighbors among the star's ends.
    """
    delta = system.proj_rep(extension_root(system, center, ends))
    if delta in nodes:
        raise NotD4("the D4 set is already extended inside this node set")
    for x in nodes:
        if x in ends or x == center:
            continue
        adjacent = system.cartan(delta, x) != 0
        among_ends = sum(1 for e in ends if system.cartan(x, e) != 0)
        if adjacent != (among_ends % 2 == 1):
            raise RootForgeError(
                "extension root adjacency violates the odd-neighbor rule"
            )
    if system.cartan(delta, center) == 0:
        raise RootForgeError("extension root must neighbor the branching node")
    return tuple(sorted(nodes + (delta,))), delta


def complete(rs: RootSet, key=None) -> RootSet:
    """Minimal complete symmetric superset of the given set.

    The set is symmetrized first; then the D4 subdiagram with the smallest
    key that lacks its extension root is extended, until none remains.
    """
    sysm = rs.system
    members = set(sysm.symmetrize(rs.members))
    keyfunc = key or (lambda star: tuple(sorted(star[1] + (star[0],))))
    while True:
        nodes = tuple(sorted({sysm.proj_rep(i) for i in members}))
        missing = []
        for center, ends in d4_stars(sysm, nodes):
            delta = extension_root(sysm, center, ends)
            if delta not in members:
                missing.append(((center, ends), delta))
        if not missing:
            return RootSet(sysm, tuple(sorted(members)))
        missing.sort(key=lambda item: keyfunc(item[0]))
        delta = missing[0][1]
        members.add(delta)
        members.add(sysm.negative(delta))


def completion_nodes(rs: RootSet, key=None) -> tuple[int, ...]:
    """Projective node set of the completion."""
    full = complete(rs, key=key)
    sysm = rs.system
    return tuple(sorted({sysm.proj_rep(i) for i in full.members}))


# -- enhanced bases --------------------------------------------------------


@dataclass(frozen=True)
class EnhancedBasis:
    """Completion of a simple basis with canonical node names.

    nodes are canonical projective representatives; names maps node ->
    label string; moset is the boldfaced maximal orthogonal subset shown
    on the enhanced diagram.
    """

    system: RootSystem
    nodes: tuple[int, ...]
    names: dict
    moset: tuple[int, ...]
    added_order: tuple[int, ...]

    @property
    def name_to_node(self) -> dict:
        return {v: k for k, v in self.names.items()}

    @property
    def base_nodes(self) -> tuple[int, ...]:
        return tuple(sorted(self.system.simple_basis))

    @property
    def full(self) -> RootSet:
        return RootSet(self.system, self.system.symmetrize(self.nodes))

    def diagram(self) -> ProjectiveDiagram:
        return projective_diagram_of(self.system, self.nodes)

    def node(self, label: str) -> int:
        try:
            return self.name_to_node[label]
        except KeyError:
            raise RootForgeError(f"no node named {label!r} in {self.system.name}")

    def subset(self, labels) -> tuple[int, ...]:
        return tuple(sorted(self.node(l) for l in labels))

    def labels_of(self, nodes) -> list[str]:
        return [self.names[n] for n in sorted(nodes)]

    def neighbors(self, node: int) -> tuple[int, ...]:
        return tuple(
            x for x in self.nodes if x != node and self.system.cartan(node, x) != 0
        )

    def columns(self) -> list[tuple[int, int]]:
        """Twin columns of a D-series enhanced diagram, ordered by label."""
        assert self.system.series == "D"
        m = self.system.rank // 2
        out = []
        for i in range(1, m + 1):
            out.append((self.node(str(2 * i - 1)), self.node(f"{2 * i - 1}'")))
        return out

    def to_json(self) -> dict:
        n2n = self.name_to_node
        labels = sorted(n2n, key=_label_key)
        adjacency = {
            label: sorted(
                (self.names[x] for x in self.neighbors(n2n[label])), key=_label_key
            )
            for label in labels
        }
        return {
            "schema": "rootforge/1",
            "system": self.system.name,
            "nodes": labels,
            "adjacency": adjacency,
            "moset": sorted((self.names[x] for x in self.moset), key=_label_key),
            "roots": {label: list(self.system.roots[n2n[label]]) for label in labels},
        }


def _label_key(label: str):
    if label.endswith("'"):
        return (0, int(label[:-1]), 1)
    if label.isdigit():
        return (0, int(label), 0)
    return (1, int(label[1:]), 0)


def _support(vec) -> frozenset:
    return frozenset(i for i, x in enumerate(vec) if x != 0)


def _name_basis(system: RootSystem) -> dict:
    """Canonical labels for the simple basis nodes of an irreducible system."""
    basis = list(system.simple_basis)
    adj = {
        b: [x for x in basis if x != b and system.cartan(b, x) != 0] for b in basis
    }
    names: dict = {}
    if system.series == "A":
        ends = [b for b in basis if len(adj[b]) <= 1]
        start = min(ends, key=lambda b: system.roots[b])
        names[start] = "1"
        prev, cur = None, start
        for k in range(2, len(basis) + 1):
            nxt = [x for x in adj[cur] if x != prev]
            prev, cur = cur, nxt[0]
            names[cur] = str(k)
    elif system.series == "D":
        twins = [
            (a, b)
            for a, b in combinations(basis, 2)
            if _support(system.roots[a]) == _support(system.roots[b])
        ]
        assert len(twins) == 1
        a, b = twins[0]
        if system.roots[b] < system.roots[a]:
            a, b = b, a
        names[a] = "1"
        names[b] = "1'"
        common = [x for x in adj[a] if x in adj[b]]
        assert len(common) == 1
        prev, cur = None, common[0]
        names[cur] = "2"
        for k in range(3, len(basis)):
            nxt = [x for x in adj[cur] if x != prev and x not in (a, b)]
            prev, cur = cur, nxt[0]
            names[cur] = str(k)
    else:
        branch = next(b for b in basis if len(adj[b]) == 3)
        names[branch] = "4"
        arms = []
        for first in adj[branch]:
            arm = [first]
            prev, cur = branch, first
            while True:
                nxt = [x for x in adj[cur] if x != prev]
                if not nxt:
                    break
                prev, cur = cur, nxt[0]
                arm.append(cur)
            arms.append(arm)
        arms.sort(key=lambda arm: (len(arm), system.roots[arm[-1]]))
        short = arms[0]
        assert len(short) == 1
        names[short[0]] = "2"
        if system.rank == 6:
            two_a, two_b = arms[1], arms[2]
            names[two_a[0]], names[two_a[1]] = "3", "1"
            names[two_b[0]], names[two_b[1]] = "5", "6"
        else:
            two = next(a for a in arms[1:] if len(a) == 2)
            longer = next(a for a in arms[1:] if len(a) > 2)
            names[two[0]], names[two[1]] = "3", "1"
            for k, node in enumerate(longer):
                names[node] = str(5 + k)
    return names


def _unique(candidates, what: str):
    if len(candidates) != 1:
        raise RootForgeError(f"cannot identify {what}: {len(candidates)} candidates")
    return candidates[0]


def _name_added(system: RootSystem, nodes, names, added_order) -> dict:
    """Extend basis names to the extra nodes of the completion."""
    names = dict(names)
    added = [n for n in nodes if n not in names]

    def nbrs(n):
        return {x for x in nodes if x != n and system.cartan(n, x) != 0}

    if system.series == "A":
        assert not added
        return names
    if system.series == "D":
        support_of = {n: _support(system.roots[n]) for n in nodes}
        for n in added:
            twin = _unique(
                [
                    x
                    for x in nodes
                    if x != n and x in names and support_of[x] == support_of[n]
                ],
                f"support twin of an extra node in {system.name}",
            )
            names[n] = names[twin] + "'"
        return names

    def named(label):
        return next(k for k, v in names.items() if v == label)

    def pick(pred, what):
        return _unique([n for n in added if n not in names.values() and pred(n)], what)

    l1 = _unique(
        [n for n in added if {named("1"), named("4"), named("6")} <= nbrs(n)],
        "the extra node joined to basis nodes 1, 4 and 6",
    )
    names[l1] = "l1"
    rest = [n for n in added if n != l1]
    if system.rank == 6:
        l2 = _unique(rest, "the second extra node of E6")
        names[l2] = "l2"
        return names
    l2 = _unique([n for n in rest if l1 in nbrs(n)], "the extra node joined to l1")
    names[l2] = "l2"
    rest = [n for n in rest if n != l2]
    l3 = _unique(
        [n for n in rest if named("1") in nbrs(n) and named("6") in nbrs(n)],
        "the extra node joined to 1 and 6",
    )
    names[l3] = "l3"
    rest = [n for n in rest if n != l3]
    l4 = _unique(
        [n for n in rest if named("1") in nbrs(n) and l2 in nbrs(n)],
        "the extra node joined to 1 and l2",
    )
    names[l4] = "l4"
    rest = [n for n in rest if n != l4]
    if system.rank == 7:
        assert not rest
        return names
    l5 = _unique([n for n in rest if named("8") in nbrs(n)], "the extra node joined to 8")
    names[l5] = "l5"
    rest = [n for n in rest if n != l5]
    l6 = _unique([n for n in rest if l4 in nbrs(n)], "the extra node joined to l4")
    names[l6] = "l6"
    rest = [n for n in rest if n != l6]
    l7 = _unique([n for n in rest if named("7") in nbrs(n)], "the extra node joined to 7")
    names[l7] = "l7"
    rest = [n for n in rest if n != l7]
    l8 = _unique(rest, "the last extra node of E8")
    names[l8] = "l8"
    assert l3 in nbrs(l8) and named("3") in nbrs(l8)
    return names


def _moset_nodes(system: RootSystem, names: dict) -> tuple[int, ...]:
    """Boldfaced nodes of the enhanced diagram: a moset of the system."""
    by_name = {v: k for k, v in names.items()}
    if system.series == "A":
        labels = [str(k) for k in range(1, system.rank + 1, 2)]
    elif system.series == "D":
        labels = [l for l in by_name if l.endswith("'") or int(l) % 2 == 1]
    elif system.rank == 6:
        labels = ["2", "3", "5", "l1"]
    elif system.rank == 7:
        labels = ["2", "3", "5", "7", "l1", "l3", "l4"]
    else:
        labels = ["2", "3", "5", "7", "l1", "l3", "l4", "l5"]
    nodes = tuple(sorted(by_name[l] for l in labels))
    for a, b in combinations(nodes, 2):
        assert system.cartan(a, b) == 0, "boldfaced nodes must be orthogonal"
    return nodes


@lru_cache(maxsize=None)
def enhanced_basis(system: RootSystem, policy: str = "least") -> EnhancedBasis:
    """Enhanced basis of an irreducible system: the completion of its
    simple basis, with canonical node names and the boldfaced moset.

    policy picks which extendable D4 subdiagram is used first ("least" or
    "greatest" by node labels); the resulting diagrams are isomorphic.
    """
    if len(components(system, tuple(range(len(system.roots))))) != 1:
        raise NotIrreducible("enhanced bases are defined for irreducible systems")
    base_names = _name_basis(system)
    temp = dict(base_names)
    counter = [0]

    def star_key(star):
        center, ends = star
        labels = sorted(_label_key(temp[x]) for x in ends + (center,))
        return tuple(labels)

    sysm = system
    members = set(sysm.symmetrize(tuple(sysm.simple_basis)))
    added_order = []
    while True:
        nodes = tuple(sorted({sysm.proj_rep(i) for i in members}))
        missing = []
        for center, ends in d4_stars(sysm, nodes):
            delta = extension_root(sysm, center, ends)
            if delta not in members:
                missing.append(((center, ends), sysm.proj_rep(delta)))
        if not missing:
            break
        missing.sort(key=lambda item: star_key(item[0]), reverse=(policy == "greatest"))
        delta = missing[0][1]
        counter[0] += 1
        temp[delta] = f"l{counter[0]}"
        added_order.append(delta)
        members.add(delta)
        members.add(sysm.negative(delta))
    nodes = tuple(sorted({sysm.proj_rep(i) for i in members}))
    names = _name_added(sysm, nodes, base_names, added_order)
    moset = _moset_nodes(sysm, names)
    return EnhancedBasis(sysm, nodes, names, moset, tuple(added_order))
