from itertools import combinations

import pytest

from rootforge import (
    build_root_system,
    conjugate_in_moset,
    core_group_model,
    enhanced_basis,
    extend_partial_map,
    induced_group_on,
    parity,
)
from rootforge.coregroups import core_order_formula
from rootforge.errors import NotInMoset, NotMoset, Unsupported
from rootforge.coregroups import verify_moset
from rootforge.mosets import _mu_formula
from rootforge.oracle import (
    enumerate_weyl,
    induced_action,
    perm_from_word,
    set_stabilizer,
)


ALL = [("A", n) for n in range(1, 9)] + [("D", n) for n in range(4, 9)] + [
    ("E", 6), ("E", 7), ("E", 8),
]


def test_order_table():
    expected = {
        ("A", 5): 6, ("A", 8): 24, ("D", 4): 4, ("D", 5): 8, ("D", 6): 24,
        ("D", 7): 48, ("D", 8): 192, ("E", 6): 24, ("E", 7): 168, ("E", 8): 1344,
    }
    for label, value in expected.items():
        assert core_group_model(build_root_system(*label)).order == value
    for label in ALL:
        model = core_group_model(build_root_system(*label))
        assert model.order == core_order_formula(*label)


def test_order_recursion_through_complement():
    # order(core) = order(core of the complement of a root) * mu
    complement = {
        ("A", n): [("A", n - 2)] for n in range(3, 9)
    }
    complement.update({("A", 1): [], ("A", 2): []})
    complement.update(
        {("D", n): ([("D", n - 2)] if n >= 6 else [("A", 3)] if n == 5 else [("A", 1)] * 3) + [("A", 1)] for n in range(4, 9)}
    )
    complement.update({("E", 6): [("A", 5)], ("E", 7): [("D", 6)], ("E", 8): [("E", 7)]})
    for label, parts in complement.items():
        nu = core_order_formula(*label)
        nu_psi = 1
        for part in parts:
            nu_psi *= core_order_formula(*part)
        assert nu == nu_psi * _mu_formula(*label)


def test_transitive_and_faithful():
    for label in [("A", 5), ("D", 5), ("D", 6), ("E", 6), ("E", 7), ("E", 8)]:
        model = core_group_model(build_root_system(*label))
        k = len(model.moset)
        if k > 1:
            images = {perm[0] for perm in model.elements}
            assert images == set(range(k))  # transitivity
        assert sum(1 for p in model.elements if p == tuple(range(k))) == 1


def test_pointwise_fix_is_identity_small():
    # no nontrivial Weyl element fixes every moset root
    for label in [("A", 3), ("D", 4), ("D", 5)]:
        s = build_root_system(*label)
        model = core_group_model(s)
        ident = bytes(range(len(s.roots)))
        for w in enumerate_weyl(s):
            if all(w.perm[m] == m for m in model.moset):
                assert w.perm == ident


def test_oracle_stabilizer_agreement():
    for label in [("D", 4), ("D", 5), ("D", 6), ("E", 6)]:
        s = build_root_system(*label)
        model = core_group_model(s)
        stab = set_stabilizer(s, model.moset, enumerate_weyl(s))
        assert induced_action(s, model.moset, stab) == set(model.elements)


def test_words_replay_as_weyl_elements():
    for label in [("D", 5), ("E", 6), ("E", 7)]:
        s = build_root_system(*label)
        model = core_group_model(s)
        sample = list(model.elements.items())[:40]
        for perm, word in sample:
            p = perm_from_word(s, word)
            for i, m in enumerate(model.moset):
                assert s.proj_rep(p[m]) == model.moset[perm[i]]


def test_labeling_parities_match_tables():
    e7 = build_root_system("E", 7)
    eb7 = enhanced_basis(e7)
    m7 = core_group_model(e7)
    assert parity(m7, eb7.subset(["2", "5", "7"])) == 0
    assert parity(m7, eb7.subset(["3", "5", "7"])) == 1
    assert parity(m7, ()) == 0
    assert parity(m7, m7.moset) == 0  # all nonzero vectors sum to zero
    e8 = build_root_system("E", 8)
    eb8 = enhanced_basis(e8)
    m8 = core_group_model(e8)
    assert parity(m8, eb8.subset(["2", "5", "7", "l5"])) == 0
    assert parity(m8, eb8.subset(["3", "5", "7", "l5"])) == 1
    with pytest.raises(NotInMoset):
        parity(m7, eb7.subset(["1"]))


def test_fano_interpretation():
    # dependent triples form 7 lines meeting pairwise in one point
    e7 = build_root_system("E", 7)
    m = core_group_model(e7)
    labels = m.labeling.labels
    lines = [
        frozenset(t)
        for t in combinations(m.moset, 3)
        if labels[t[0]] ^ labels[t[1]] ^ labels[t[2]] == 0
    ]
    assert len(lines) == 7
    for l1, l2 in combinations(lines, 2):
        assert len(l1 & l2) == 1
    points = set()
    for l in lines:
        points |= l
    assert len(points) == 7


def test_conjugate_in_moset_rules():
    e7 = build_root_system("E", 7)
    eb7 = enhanced_basis(e7)
    m7 = core_group_model(e7)
    pairs = list(combinations(m7.moset, 2))
    assert conjugate_in_moset(m7, pairs[0], pairs[-1])
    o1 = eb7.subset(["2", "5", "7"])
    o2 = eb7.subset(["3", "5", "7"])
    assert not conjugate_in_moset(m7, o1, o2)
    assert conjugate_in_moset(m7, o1, o1)
    e8 = build_root_system("E", 8)
    eb8 = enhanced_basis(e8)
    m8 = core_group_model(e8)
    assert not conjugate_in_moset(
        m8, eb8.subset(["2", "5", "7", "l5"]), eb8.subset(["3", "5", "7", "l5"])
    )
    # rule agrees with a direct orbit scan (sampled sizes)
    for k in (1, 2, 3, 4, 5):
        subs = list(combinations(m7.moset, k))[:12]
        for a in subs:
            for b in subs:
                rule = conjugate_in_moset(m7, a, b)
                pa = frozenset(m7.position(x) for x in a)
                pb = frozenset(m7.position(x) for x in b)
                scan = any(
                    frozenset(p[i] for i in pa) == pb for p in m7.elements
                )
                assert rule == scan


def test_dn_matrix_model():
    d6 = build_root_system("D", 6)
    model = core_group_model(d6)
    assert model.labeling.kind == "dn_matrix"
    cols = {}
    for node, (col, row) in model.labeling.labels.items():
        cols.setdefault(col, set()).add(row)
    assert all(rows == {0, 1} for rows in cols.values())
    # every element moves whole columns and flips rows evenly (D even)
    labels = model.labeling.labels
    moset = model.moset
    for perm in model.elements:
        flips = 0
        for i, node in enumerate(moset):
            col, row = labels[node]
            ncol, nrow = labels[moset[perm[i]]]
            if row == 0:
                flips += nrow
        assert flips % 2 == 0
    d5 = build_root_system("D", 5)
    m5 = core_group_model(d5)
    odd_flip = False
    labels5 = m5.labeling.labels
    for perm in m5.elements:
        flips = sum(
            labels5[m5.moset[perm[i]]][1]
            for i, node in enumerate(m5.moset)
            if labels5[node][1] == 0
        )
        if flips % 2 == 1:
            odd_flip = True
    assert odd_flip  # single row transpositions allowed for D odd


def test_extend_partial_map():
    e7 = build_root_system("E", 7)
    eb7 = enhanced_basis(e7)
    model = core_group_model(e7)
    nodes = model.moset
    ok, word = extend_partial_map(model, {nodes[0]: nodes[0]})
    assert ok and word == ()
    # mapping a line onto a non-line cannot extend
    labels = model.labeling.labels
    line = next(
        t
        for t in combinations(nodes, 3)
        if labels[t[0]] ^ labels[t[1]] ^ labels[t[2]] == 0
    )
    nonline = next(
        t
        for t in combinations(nodes, 3)
        if labels[t[0]] ^ labels[t[1]] ^ labels[t[2]] != 0
    )
    ok, _ = extend_partial_map(model, dict(zip(line, nonline)))
    assert not ok
    e8 = build_root_system("E", 8)
    m8 = core_group_model(e8)
    shift = {
        node: next(
            k for k, v in m8.labeling.labels.items() if v == m8.labeling.labels[node] ^ 7
        )
        for node in m8.moset
    }
    ok, word = extend_partial_map(m8, shift)  # translation by 111
    assert ok
    p = perm_from_word(e8, word)
    for src, dst in shift.items():
        assert e8.proj_rep(p[src]) == dst


def test_induced_groups():
    e7 = build_root_system("E", 7)
    eb7 = enhanced_basis(e7)
    m7 = core_group_model(e7)
    assert len(induced_group_on(m7, eb7.subset(["2", "5", "7"]))) == 6
    assert len(induced_group_on(m7, eb7.subset(["3", "5", "7", "l4"]))) == 24
    g = induced_group_on(m7, eb7.subset(["2", "5", "7", "l4"]))
    assert len(g) == 6
    nodes = sorted(eb7.subset(["2", "5", "7", "l4"]))
    fixed = [
        k
        for k, a in enumerate(nodes)
        if parity(m7, [x for x in nodes if x != a]) == 0
    ]
    assert len(fixed) == 1 and all(p[fixed[0]] == fixed[0] for p in g)
    e8 = build_root_system("E", 8)
    m8 = core_group_model(e8)
    eb8 = enhanced_basis(e8)
    assert len(induced_group_on(m8, eb8.subset(["3", "5", "7", "l5"]))) == 24
    with pytest.raises(Unsupported):
        induced_group_on(m8, m8.moset[:5])
    a5 = build_root_system("A", 5)
    with pytest.raises(Unsupported):
        induced_group_on(core_group_model(a5), core_group_model(a5).moset[:2])


def test_verify_moset():
    e7 = build_root_system("E", 7)
    model = core_group_model(e7)
    verify_moset(e7, model.moset)
    with pytest.raises(NotMoset):
        verify_moset(e7, model.moset[:3])
    adjacent = next(
        (x, y)
        for x in e7.simple_basis
        for y in e7.simple_basis
        if x != y and e7.cartan(x, y) != 0
    )
    with pytest.raises(NotMoset):
        verify_moset(e7, adjacent)


def test_model_json():
    e8 = build_root_system("E", 8)
    payload = core_group_model(e8).to_json()
    assert payload["nu"] == 1344 and payload["mu"] == 8
    assert payload["schema"] == "rootforge/1"
    assert set(payload["labeling"].values()) == {
        format(k, "03b") for k in range(8)
    }
    assert payload["generators"]
