"""Maximal orthogonal subsets (mosets), perfect mosets and their counts."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .errors import NotIrreducible, NotOrthogonalSeed, NotPiSystem, OracleCapExceeded
from .rootsystem import (
    RootSet,
    RootSystem,
    components,
    orthogonal_complement,
)


@dataclass(frozen=True)
class Moset:
    """A maximal orthogonal subset of a scope, at the projective level."""

    system: RootSystem
    members: tuple[int, ...]
    scope: tuple[int, ...]


def _proj_scope(system: RootSystem, scope) -> tuple[int, ...]:
    return tuple(sorted({system.proj_rep(i) for i in scope}))


def extend_to_moset(system: RootSystem, seed, scope) -> Moset:
    """Greedy completion of an orthogonal seed to a moset of the scope.

    Candidates are taken in the deterministic root order, so the result is
    reproducible; by conjugacy of mosets the choice is immaterial for any
    classification question.
    """
    scope_p = _proj_scope(system, scope)
    seed_p = tuple(sorted({system.proj_rep(i) for i in seed}))
    for a, b in combinations(seed_p, 2):
        if system.cartan(a, b) != 0:
            raise NotOrthogonalSeed("seed must be pairwise orthogonal")
    members = list(seed_p)
    for cand in scope_p:
        if cand in members:
            continue
        if all(system.cartan(cand, m) == 0 for m in members):
            members.append(cand)
    return Moset(system, tuple(sorted(members)), scope_p)


def mu(system: RootSystem) -> int:
    """Common cardinality of the mosets of an irreducible system.

    Computed from the series formula and cross-checked against the
    recursion through the orthogonal complement of a root.
    """
    value = _mu_formula(system.series, system.rank)
    alpha = system.simple_basis[0]
    psi = orthogonal_complement(system, (alpha,), tuple(range(len(system.roots))))
    recursed = 1 + sum(
        _mu_of_component(system, comp) for comp in components(system, psi)
    ) if psi else 1
    assert value == recursed, "moset cardinality recursion failed"
    return value


def _mu_formula(series: str, rank: int) -> int:
    if series == "A":
        return (rank + 1) // 2
    if series == "D":
        return 2 * (rank // 2)
    return {6: 4, 7: 7, 8: 8}[rank]


def _mu_of_component(system: RootSystem, comp: tuple[int, ...]) -> int:
    from .classify import component_type  # local import to avoid a cycle

    part = component_type(system, comp)
    return _mu_formula(part.series, part.rank)


def perfect_moset(rs: RootSet) -> Moset:
    """A perfect moset of a Pi-system: an orthogonal subset whose
    complement inside the set is orthogonal and not larger.

    Per irreducible component the two color classes of the (bipartite)
    diagram are the candidates; the larger one is taken, ties resolved
    toward the class containing the smallest node.
    """
    sysm = rs.system
    from .diagrams import is_dynkin_shape, projective_diagram_of

    nodes = tuple(sorted({sysm.proj_rep(i) for i in rs.members}))
    if not is_dynkin_shape(projective_diagram_of(sysm, nodes)):
        raise NotPiSystem("perfect mosets are defined for Pi-systems")
    chosen: list[int] = []
    for comp in components(sysm, nodes):
        color = {comp[0]: 0}
        queue = [comp[0]]
        while queue:
            cur = queue.pop()
            for other in comp:
                if other not in color and sysm.cartan(cur, other) != 0:
                    color[other] = 1 - color[cur]
                    queue.append(other)
        cls = [
            tuple(sorted(x for x in comp if color[x] == c)) for c in (0, 1)
        ]
        cls.sort(key=lambda t: (-len(t), t))
        chosen.extend(cls[0])
    return Moset(sysm, tuple(sorted(chosen)), tuple(rs.members))


def all_mosets(system: RootSystem, scope=None) -> list[tuple[int, ...]]:
    """Every moset of the scope (default: the whole system).

    Mosets are the maximal cliques of the orthogonality graph on projective
    roots, enumerated by Bron-Kerbosch with pivoting.
    """
    scope_p = _proj_scope(system, scope or range(len(system.roots)))
    orth = {
        a: {b for b in scope_p if b != a and system.cartan(a, b) == 0}
        for a in scope_p
    }
    out: list[tuple[int, ...]] = []

    def bron_kerbosch(current: set, candidates: set, excluded: set):
        if not candidates and not excluded:
            out.append(tuple(sorted(current)))
            return
        pivot = max(candidates | excluded, key=lambda x: len(orth[x] & candidates))
        for v in sorted(candidates - orth[pivot]):
            bron_kerbosch(current | {v}, candidates & orth[v], excluded & orth[v])
            candidates = candidates - {v}
            excluded = excluded | {v}

    bron_kerbosch(set(), set(scope_p), set())
    return sorted(out)


def all_mosets_conjugate_check(system: RootSystem, cap: int = 10**6) -> bool:
    """Enumerate all mosets, verify the uniform cardinality, and verify by a
    generator orbit walk that they form a single Weyl orbit."""
    from .oracle import subset_orbit_bfs

    if len(system.roots) > 130:
        raise OracleCapExceeded("moset conjugacy scan is limited to small ranks")
    if len(components(system, tuple(range(len(system.roots))))) != 1:
        raise NotIrreducible("moset conjugacy check expects an irreducible system")
    mosets = all_mosets(system)
    m = mu(system)
    if any(len(x) != m for x in mosets):
        return False
    orbit = subset_orbit_bfs(system, mosets[0], cap=cap)
    return {frozenset(x) for x in mosets} == orbit
