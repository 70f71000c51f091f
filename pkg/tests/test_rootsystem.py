import pytest

from rootforge import (
    RootSet,
    build_root_system,
    cartan_pair,
    components,
    elementary_transformations,
    extended_pi_system,
    is_pi_system,
    orthogonal_complement,
    parse_system,
    reflect,
    subsystem_generated,
    theta_component,
)
from rootforge.classify import subsystem_type
from rootforge.errors import NotIrreducible, NotOrthogonal, UnsupportedType


def test_root_counts():
    # n(n+1), 2n(n-1), 72, 126, 240: counted from the coordinate models.
    assert len(build_root_system("A", 2).roots) == 6
    assert len(build_root_system("D", 4).roots) == 24
    assert len(build_root_system("E", 8).roots) == 240
    assert len(build_root_system("E", 7).roots) == 126
    assert len(build_root_system("E", 6).roots) == 72
    for n in range(1, 9):
        assert len(build_root_system("A", n).roots) == n * (n + 1)
    for n in range(4, 9):
        assert len(build_root_system("D", n).roots) == 2 * n * (n - 1)


def test_e8_root_breakdown():
    s = build_root_system("E", 8)
    integral = [r for r in s.roots if all(x % 2 == 0 for x in r)]
    half = [r for r in s.roots if all(x % 2 == 1 for x in r)]
    assert len(integral) == 112 and len(half) == 128


def test_rejected_types():
    for series, rank in [("D", 2), ("D", 3), ("E", 5), ("E", 9), ("A", 0), ("B", 2)]:
        with pytest.raises(UnsupportedType):
            build_root_system(series, rank)
    with pytest.raises(UnsupportedType):
        parse_system("F4")


def test_squared_lengths_and_closure():
    for label in [("A", 3), ("D", 4), ("E", 6)]:
        s = build_root_system(*label)
        for r in s.roots:
            assert sum(x * x for x in r) == 8  # doubled coordinates
        n = len(s.roots)
        for i in range(n):
            for j in range(n):
                assert 0 <= s.reflect(i, j) < n
        for i in range(n):
            assert s.negative(s.negative(i)) == i


def test_cartan_pair_values():
    a2 = build_root_system("A", 2)
    i, j = a2.simple_basis
    assert cartan_pair(a2, i, i) == 2
    assert cartan_pair(a2, i, j) == -1  # adjacent simple roots
    d4 = build_root_system("D", 4)
    b = d4.simple_basis
    vals = {cartan_pair(d4, x, y) for x in b for y in b if x != y}
    assert vals <= {0, -1}


def test_reflect_basics():
    a2 = build_root_system("A", 2)
    i, j = a2.simple_basis
    assert reflect(a2, i, i) == a2.negative(i)
    # orthogonal roots are fixed
    d4 = build_root_system("D", 4)
    x, y = d4.simple_basis[0], d4.simple_basis[3]
    if cartan_pair(d4, x, y) == 0:
        assert reflect(d4, x, y) == x
    # s_alpha(beta) = alpha + beta for adjacent simple roots of A2
    img = reflect(a2, j, i)
    expected = tuple(a + b for a, b in zip(a2.roots[i], a2.roots[j]))
    assert a2.roots[img] == expected
    # involutive
    assert reflect(a2, reflect(a2, j, i), i) == j


def test_is_pi_system():
    a2 = build_root_system("A", 2)
    assert is_pi_system(RootSet(a2, a2.simple_basis))
    i = a2.simple_basis[0]
    assert not is_pi_system(RootSet(a2, (i, a2.negative(i))))
    # {alpha, alpha+beta} has a root-valued difference
    i, j = a2.simple_basis
    k = a2.index(tuple(a + b for a, b in zip(a2.roots[i], a2.roots[j])))
    assert not is_pi_system(RootSet(a2, (i, k)))
    for label in [("A", 4), ("D", 5), ("E", 6), ("E", 7), ("E", 8)]:
        s = build_root_system(*label)
        assert is_pi_system(RootSet(s, s.simple_basis))


def test_extended_pi_system():
    a2 = build_root_system("A", 2)
    base = RootSet(a2, a2.simple_basis)
    ext = extended_pi_system(base)
    assert len(ext) == len(base) + 1
    i, j = a2.simple_basis
    lowest = tuple(-(a + b) for a, b in zip(a2.roots[i], a2.roots[j]))
    assert a2.index(lowest) in ext.members
    # removing any single element leaves a Pi-system
    for label in [("A", 2), ("A", 4), ("D", 4), ("D", 5), ("E", 6)]:
        s = build_root_system(*label)
        full = extended_pi_system(RootSet(s, s.simple_basis))
        assert len(full) == s.rank + 1
        for drop in full.members:
            rest = tuple(x for x in full.members if x != drop)
            assert is_pi_system(RootSet(s, rest))


def test_extended_d4_sum_rule():
    # ends of the extended set plus twice the center vanish
    d4 = build_root_system("D", 4)
    base = RootSet(d4, d4.simple_basis)
    ext = extended_pi_system(base)
    members = list(ext.members)
    center = next(
        m
        for m in members
        if sum(1 for x in members if x != m and d4.cartan(m, x) != 0) == 4
    )
    total = [0] * d4.ambient_dim
    for m in members:
        w = 2 if m == center else 1
        for k, x in enumerate(d4.roots[m]):
            total[k] += w * x
    assert all(x == 0 for x in total)


def test_extended_requires_irreducible():
    d4 = build_root_system("D", 4)
    b = d4.simple_basis
    pair = (b[0], b[3])  # two orthogonal simple roots
    if d4.cartan(*pair) == 0:
        with pytest.raises(NotIrreducible):
            extended_pi_system(RootSet(d4, pair))


def test_elementary_transformations():
    a1 = build_root_system("A", 1)
    out = elementary_transformations(RootSet(a1, (a1.simple_basis[0],)))
    assert out and all(len(t.result) == 1 and t.trivial for t in out)
    d4 = build_root_system("D", 4)
    outs = elementary_transformations(RootSet(d4, d4.simple_basis))
    assert all(is_pi_system(t.result) for t in outs)
    types = {
        subsystem_type(d4, subsystem_generated(t.result).members).render()
        for t in outs
    }
    assert "4A1" in types  # deleting the branching node of the extended D4
    four = next(t for t in outs if len(subsystem_generated(t.result)) == 8)
    assert not four.trivial


def test_subsystem_generated():
    a2 = build_root_system("A", 2)
    assert len(subsystem_generated(RootSet(a2, a2.simple_basis))) == 6
    i = a2.simple_basis[0]
    assert set(subsystem_generated(RootSet(a2, (i,))).members) == {i, a2.negative(i)}
    e8 = build_root_system("E", 8)
    d8_like = [e8.index(r) for r in e8.roots if all(x % 2 == 0 for x in r)]
    from rootforge.classify import subsystem_basis

    basis = subsystem_basis(e8, tuple(d8_like))
    sub = subsystem_generated(RootSet(e8, basis))
    assert len(sub) == 112


def test_orthogonal_complement_and_theta():
    e8 = build_root_system("E", 8)
    alpha = e8.simple_basis[0]
    psi = orthogonal_complement(e8, (alpha,), tuple(range(len(e8.roots))))
    assert subsystem_type(e8, psi).render() == "E7"
    a4 = build_root_system("A", 4)
    alpha = a4.simple_basis[0]
    psi = orthogonal_complement(a4, (alpha,), tuple(range(len(a4.roots))))
    assert subsystem_type(a4, psi).render() == "A2"
    assert orthogonal_complement(a4, (), tuple(range(20))) == tuple(range(20))

    e7 = build_root_system("E", 7)
    theta = theta_component(e7, (e7.simple_basis[0],))
    assert subsystem_type(e7, theta).render() == "D6"
    assert theta_component(e7, ()) == tuple(range(len(e7.roots)))
    d4 = build_root_system("D", 4)
    from rootforge.mosets import all_mosets

    moset = all_mosets(d4)[0]
    assert theta_component(d4, moset) == ()
    adjacent = next(
        (x, y)
        for x in e7.simple_basis
        for y in e7.simple_basis
        if x != y and e7.cartan(x, y) != 0
    )
    with pytest.raises(NotOrthogonal):
        theta_component(e7, adjacent)


def test_complement_table_rows():
    # full scan per root at small rank
    for series, rank, expected in [("A", 4, "A2"), ("D", 5, "A3+A1"), ("E", 6, "A5")]:
        s = build_root_system(series, rank)
        for alpha in range(len(s.roots)):
            psi = orthogonal_complement(s, (alpha,), tuple(range(len(s.roots))))
            assert subsystem_type(s, psi).render() == expected


def test_simple_basis_properties():
    for label in [("A", 5), ("D", 6), ("E", 7)]:
        s = build_root_system(*label)
        basis = RootSet(s, s.simple_basis)
        assert is_pi_system(basis)
        assert len(subsystem_generated(basis)) == len(s.roots)
        assert len(components(s, s.simple_basis)) == 1


def test_every_root_is_signed_basis_combination():
    from rootforge.intlin import solve_integer_combination

    for label in [("A", 3), ("D", 4), ("E", 6)]:
        s = build_root_system(*label)
        basis = [s.roots[i] for i in s.simple_basis]
        for r in s.roots:
            coeffs = solve_integer_combination(basis, r)
            assert coeffs is not None
            assert all(c >= 0 for c in coeffs) or all(c <= 0 for c in coeffs)


def test_json_round_trip():
    s = build_root_system("A", 2)
    payload = s.to_json()
    assert payload["schema"] == "rootforge/1"
    assert payload["series"] == "A" and payload["rank"] == 2
    assert len(payload["roots"]) == 6 and len(payload["basis"]) == 2
    rs = RootSet(s, s.simple_basis)
    assert rs.to_json()["members"] == sorted(s.simple_basis)
