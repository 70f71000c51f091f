"""Exact construction of ADE root systems and elementary root operations.

Coordinates are stored doubled (all entries multiplied by 2) so that the
half-integer roots of E8 become odd integers and every computation stays in
plain integer arithmetic.  With doubled coordinates a root has squared
length 8, and the Cartan pairing of roots a, b is dot(a, b) // 4.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import NamedTuple
from itertools import combinations, product

from .errors import (
    NotIrreducible,
    NotIrreducibleParent,
    NotOrthogonal,
    NotPiSystem,
    UnsupportedType,
)
from .intlin import IntLattice, Vec, dot, neg, rank, solve_integer_combination

SERIES = ("A", "D", "E")


class RootSystem:
    """An ADE root system with a fixed coordinate model and root order.

    Roots are sorted lexicographically on their (doubled) coordinate
    vectors; all set-valued results elsewhere in the package are reported
    in terms of these indices, which makes every output reproducible.
    """

    def __init__(self, series: str, rank_: int, roots: list[Vec], ambient_dim: int):
        self.series = series
        self.rank = rank_
        self.roots: tuple[Vec, ...] = tuple(sorted(roots))
        self.ambient_dim = ambient_dim
        self._index = {r: i for i, r in enumerate(self.roots)}
        self._neg = tuple(self._index[neg(r)] for r in self.roots)
        self._cartan: dict[tuple[int, int], int] = {}
        self._reflect: dict[tuple[int, int], int] = {}
        self.positive = tuple(i for i, r in enumerate(self.roots) if _lex_positive(r))
        self.simple_basis = self._find_simple_basis()

    # -- basic queries -------------------------------------------------

    def __repr__(self) -> str:  # pragma: no cover
        return f"RootSystem({self.series}{self.rank}, {len(self.roots)} roots)"

    @property
    def name(self) -> str:
        return f"{self.series}{self.rank}"

    def index(self, coords: Vec) -> int | None:
        return self._index.get(coords)

    def is_root(self, coords: Vec) -> bool:
        return coords in self._index

    def negative(self, i: int) -> int:
        return self._neg[i]

    def cartan(self, i: int, j: int) -> int:
        """Cartan pairing <r_i | r_j>; symmetric for ADE (all roots equal length)."""
        key = (i, j) if i <= j else (j, i)
        c = self._cartan.get(key)
        if c is None:
            c = dot(self.roots[key[0]], self.roots[key[1]]) // 4
            self._cartan[key] = c
        return c

    def reflect(self, i: int, j: int) -> int:
        """Index of s_{r_j}(r_i) = r_i - <r_i|r_j> r_j."""
        out = self._reflect.get((i, j))
        if out is None:
            c = self.cartan(i, j)
            if c == 0:
                out = i
            else:
                img = tuple(a - c * b for a, b in zip(self.roots[i], self.roots[j]))
                out = self._index[img]
            self._reflect[(i, j)] = out
        return out

    def proj_rep(self, i: int) -> int:
        """Canonical representative of the projective root {r_i, -r_i}.

        The representative is the member whose first nonzero coordinate is
        positive, i.e. the lexicographically positive one.
        """
        return i if _lex_positive(self.roots[i]) else self._neg[i]

    @property
    def proj_nodes(self) -> tuple[int, ...]:
        return self.positive

    def symmetrize(self, members: tuple[int, ...]) -> tuple[int, ...]:
        out = set(members)
        out.update(self._neg[i] for i in members)
        return tuple(sorted(out))

    # -- simple basis ---------------------------------------------------

    def _find_simple_basis(self) -> tuple[int, ...]:
        pos = set(self.positive)
        simple = []
        for i in self.positive:
            decomposable = False
            for j in self.positive:
                if j == i:
                    continue
                rest = tuple(a - b for a, b in zip(self.roots[i], self.roots[j]))
                k = self._index.get(rest)
                if k is not None and k in pos:
                    decomposable = True
                    break
            if not decomposable:
                simple.append(i)
        return tuple(simple)

    # -- serialization --------------------------------------------------

    def to_json(self) -> dict:
        return {
            "schema": "rootforge/1",
            "series": self.series,
            "rank": self.rank,
            "roots": [list(r) for r in self.roots],
            "basis": list(self.simple_basis),
        }


def _lex_positive(v: Vec) -> bool:
    for x in v:
        if x != 0:
            return x > 0
    return False


@dataclass(frozen=True)
class RootSet:
    """An ordered set of root indices inside a fixed parent system."""

    system: RootSystem
    members: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "members", tuple(sorted(set(self.members))))

    @property
    def symmetric(self) -> bool:
        m = set(self.members)
        return all(self.system.negative(i) in m for i in self.members)

    def __iter__(self):
        return iter(self.members)

    def __len__(self) -> int:
        return len(self.members)

    def to_json(self) -> dict:
        return {
            "schema": "rootforge/1",
            "system": self.system.name,
            "members": list(self.members),
        }


# -- construction -------------------------------------------------------


@lru_cache(maxsize=None)
def build_root_system(series: str, rank_: int) -> RootSystem:
    """Build the root system of the given ADE type in its fixed model.

    A_n lives in dimension n+1 as {e_i - e_j}; D_n as {+-e_i +- e_j};
    E8 as the D8 roots plus all half-integer vectors with an even number
    of minus signs.  E7 and E6 are cut out of E8 as the orthogonal
    complements of the lexicographically least A1 (resp. A2) subset.
    """
    if series == "A":
        if rank_ < 1:
            raise UnsupportedType(f"A{rank_}: rank must be >= 1")
        n = rank_ + 1
        roots = []
        for i in range(n):
            for j in range(n):
                if i != j:
                    v = [0] * n
                    v[i] = 2
                    v[j] = -2
                    roots.append(tuple(v))
        return RootSystem("A", rank_, roots, n)
    if series == "D":
        if rank_ < 4:
            raise UnsupportedType(
                f"D{rank_}: rank must be >= 4 (D2 = A1+A1 and D3 = A3 are"
                " reachable through series A)"
            )
        roots = []
        for i, j in combinations(range(rank_), 2):
            for si, sj in product((2, -2), repeat=2):
                v = [0] * rank_
                v[i] = si
                v[j] = sj
                roots.append(tuple(v))
        return RootSystem("D", rank_, roots, rank_)
    if series == "E":
        if rank_ not in (6, 7, 8):
            raise UnsupportedType(f"E{rank_}: rank must be 6, 7 or 8")
        e8 = _e8_roots()
        if rank_ == 8:
            return RootSystem("E", 8, e8, 8)
        e8_sorted = sorted(e8)
        alpha = e8_sorted[0]
        if rank_ == 7:
            roots = [r for r in e8_sorted if dot(r, alpha) == 0]
            return RootSystem("E", 7, roots, 8)
        beta = next(r for r in e8_sorted if dot(r, alpha) // 4 == -1)
        roots = [r for r in e8_sorted if dot(r, alpha) == 0 and dot(r, beta) == 0]
        return RootSystem("E", 6, roots, 8)
    raise UnsupportedType(f"unknown series {series!r}")


def _e8_roots() -> list[Vec]:
    roots: list[Vec] = []
    for i, j in combinations(range(8), 2):
        for si, sj in product((2, -2), repeat=2):
            v = [0] * 8
            v[i] = si
            v[j] = sj
            roots.append(tuple(v))
    for signs in product((1, -1), repeat=8):
        if signs.count(-1) % 2 == 0:
            roots.append(signs)
    return roots


def parse_system(text: str) -> RootSystem:
    """Parse a label like 'E7' or 'd5' into a root system."""
    text = text.strip()
    if not text or text[0].upper() not in SERIES or not text[1:].isdigit():
        raise UnsupportedType(f"cannot parse system label {text!r}")
    return build_root_system(text[0].upper(), int(text[1:]))


# -- elementary operations ----------------------------------------------


def cartan_pair(system: RootSystem, i: int, j: int) -> int:
    return system.cartan(i, j)


def reflect(system: RootSystem, beta: int, alpha: int) -> int:
    """Index of s_alpha(beta)."""
    return system.reflect(beta, alpha)


def is_pi_system(rs: RootSet) -> bool:
    """True iff the set is linearly independent and no difference of two
    members is again a root."""
    sysm = rs.system
    mem = rs.members
    if len(mem) == 0:
        return True
    vecs = [sysm.roots[i] for i in mem]
    if rank(vecs) != len(mem):
        return False
    for a, b in combinations(mem, 2):
        diff = tuple(x - y for x, y in zip(sysm.roots[a], sysm.roots[b]))
        if sysm.is_root(diff):
            return False
    return True


def components(system: RootSystem, members: tuple[int, ...]) -> list[tuple[int, ...]]:
    """Connected components under the non-orthogonality relation."""
    mem = list(members)
    seen: set[int] = set()
    out = []
    for start in mem:
        if start in seen:
            continue
        comp = [start]
        seen.add(start)
        queue = [start]
        while queue:
            cur = queue.pop()
            for other in mem:
                if other not in seen and system.cartan(cur, other) != 0:
                    seen.add(other)
                    comp.append(other)
                    queue.append(other)
        out.append(tuple(sorted(comp)))
    return out


def subsystem_generated(rs: RootSet) -> RootSet:
    """Intersection of the parent system with the integer span of the set."""
    sysm = rs.system
    if not rs.members:
        return RootSet(sysm, ())
    lat = IntLattice(sysm.ambient_dim, [sysm.roots[i] for i in rs.members])
    out = tuple(i for i, r in enumerate(sysm.roots) if r in lat)
    return RootSet(sysm, out)


def minimal_root(rs: RootSet) -> int:
    """Minimal root of the subsystem generated by an irreducible Pi-system,
    with respect to the set itself taken as the basis."""
    sysm = rs.system
    if not is_pi_system(rs):
        raise NotPiSystem("minimal root needs a Pi-system")
    if len(components(sysm, rs.members)) != 1:
        raise NotIrreducible("minimal root needs an irreducible Pi-system")
    sub = subsystem_generated(rs)
    basis = [sysm.roots[i] for i in rs.members]
    best = None
    best_sum = None
    for i in sub.members:
        coeffs = solve_integer_combination(basis, sysm.roots[i])
        if coeffs is None:
            continue
        s = sum(coeffs)
        if best_sum is None or s < best_sum:
            best, best_sum = i, s
    assert best is not None
    return best


def extended_pi_system(rs: RootSet) -> RootSet:
    """The set together with the minimal root of the subsystem it generates."""
    extra = minimal_root(rs)
    return RootSet(rs.system, rs.members + (extra,))


class ElementaryTransformation(NamedTuple):
    result: "RootSet"
    trivial: bool  # isomorphic to the input set


def elementary_transformations(rs: RootSet) -> list[ElementaryTransformation]:
    """All sets obtained by extending one irreducible component and deleting
    a single element of the extension, each flagged as trivial when it is
    isomorphic to the input."""
    from .diagrams import are_isomorphic, delta_diagram

    sysm = rs.system
    if not is_pi_system(rs):
        raise NotPiSystem("elementary transformations need a Pi-system")
    base = delta_diagram(rs)
    out = []
    for comp in components(sysm, rs.members):
        rest = tuple(i for i in rs.members if i not in comp)
        hat = extended_pi_system(RootSet(sysm, comp)).members
        for drop in hat:
            cand = RootSet(sysm, rest + tuple(i for i in hat if i != drop))
            if is_pi_system(cand):
                trivial = are_isomorphic(base, delta_diagram(cand))[0]
                out.append(ElementaryTransformation(cand, trivial))
    return out


def orthogonal_complement(system: RootSystem, x: tuple[int, ...], scope: tuple[int, ...]) -> tuple[int, ...]:
    """All members of scope orthogonal to every element of x."""
    return tuple(
        i for i in scope if all(system.cartan(i, j) == 0 for j in x)
    )


def theta_component(system: RootSystem, o: tuple[int, ...]) -> tuple[int, ...]:
    """The unique irreducible component of the orthogonal complement of o
    that is not of type A1, or the empty tuple when every component is A1."""
    for a, b in combinations(o, 2):
        if system.cartan(a, b) != 0:
            raise NotOrthogonal("theta component needs an orthogonal subset")
    if len(components(system, tuple(range(len(system.roots))))) != 1:
        raise NotIrreducibleParent("theta component needs an irreducible parent")
    psi = orthogonal_complement(system, o, tuple(range(len(system.roots))))
    big = [c for c in components(system, psi) if len(c) > 2]
    if not big:
        return ()
    assert len(big) == 1, "orthogonal complement has two non-A1 components"
    return big[0]
