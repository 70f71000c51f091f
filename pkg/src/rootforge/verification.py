"""Acceptance checks runnable both from the CLI (verify) and from pytest.

Each check returns a Result and is expected to hold exactly, within the
stated wall-clock budget on an ordinary desktop.  The full Weyl group of
E7 is only enumerated when slow mode is requested.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass

from .classify import (
    EmbeddingMap,
    enumerate_pi_orbits,
    hasse_diagram,
    is_weyl_embedding,
    orbit_label,
    order_between_orbits,
    pi_node_subsets,
    subsystem_type,
)
from .completion import complete, enhanced_basis
from .coregroups import core_group_model, core_order_formula
from .diagrams import are_isomorphic, automorphism_group
from .mosets import all_mosets, mu, _mu_formula
from .oracle import (
    compose,
    enumerate_weyl,
    identity_perm,
    induced_action,
    orbit_id_map,
    set_stabilizer,
    simple_reflection_perms,
    perm_from_word,
)
from .rootsystem import RootSet, build_root_system, orthogonal_complement

SMALL = [("A", n) for n in range(1, 9)] + [("D", n) for n in range(4, 9)] + [
    ("E", 6),
    ("E", 7),
    ("E", 8),
]


@dataclass
class Result:
    name: str
    ok: bool
    detail: str
    seconds: float
    budget: float | None = None

    def line(self) -> str:
        status = "PASS" if self.ok else "FAIL"
        budget = f" (budget {self.budget:.0f}s)" if self.budget else ""
        return f"[{status}] {self.name}: {self.detail} [{self.seconds:.1f}s{budget}]"


def _run(name, budget, fn) -> Result:
    start = time.time()
    try:
        ok, detail = fn()
    except Exception as exc:  # pragma: no cover - defensive reporting
        return Result(name, False, f"error: {exc!r}", time.time() - start, budget)
    elapsed = time.time() - start
    if budget is not None and elapsed > budget:
        ok = False
        detail += f"; exceeded {budget:.0f}s budget"
    return Result(name, ok, detail, elapsed, budget)


# -- criterion 1: moset cardinality table ------------------------------------


MU_TABLE = {
    **{("A", n): (n + 1) // 2 for n in range(1, 9)},
    **{("D", n): 2 * (n // 2) for n in range(4, 9)},
    ("E", 6): 4,
    ("E", 7): 7,
    ("E", 8): 8,
}


def check_moset_cardinalities() -> Result:
    def fn():
        bad = []
        for series, rank in SMALL:
            system = build_root_system(series, rank)
            if mu(system) != MU_TABLE[(series, rank)]:
                bad.append((series, rank))
        return not bad, f"mu over {len(SMALL)} systems" + (f"; bad {bad}" if bad else "")

    return _run("1 moset cardinality table", 1.0, fn)


# -- criterion 2: orthogonal complements of roots ------------------------------


def _expected_complement(series: str, rank: int):
    if series == "A":
        return [("A", rank - 2)] if rank >= 3 else []
    if series == "E":
        return {6: [("A", 5)], 7: [("D", 6)], 8: [("E", 7)]}[rank]
    rest = rank - 2
    if rest >= 4:
        return [("D", rest), ("A", 1)]
    if rest == 3:  # D3 realized as A3
        return [("A", 3), ("A", 1)]
    return [("A", 1), ("A", 1), ("A", 1)]  # D2 = A1 + A1


def check_complement_types() -> Result:
    def fn():
        bad = []
        for series, rank in SMALL:
            system = build_root_system(series, rank)
            roots = list(range(len(system.roots)))
            sample = roots if len(roots) <= 80 else roots[:: len(roots) // 7]
            expected = sorted(_expected_complement(series, rank))
            for alpha in sample:
                psi = orthogonal_complement(system, (alpha,), tuple(roots))
                got = sorted(
                    (p.series, p.rank) for p in subsystem_type(system, psi).parts
                )
                if got != expected:
                    bad.append((series, rank, alpha, got))
                    break
        return not bad, "complement types over sampled roots" + (
            f"; bad {bad}" if bad else ""
        )

    return _run("2 orthogonal complement table", 5.0, fn)


# -- criterion 3: core group orders --------------------------------------------


def check_core_orders() -> Result:
    def fn():
        bad = []
        for series, rank in SMALL:
            system = build_root_system(series, rank)
            model = core_group_model(system)
            if model.order != core_order_formula(series, rank):
                bad.append((series, rank, model.order))
        return not bad, "generator closure orders" + (f"; bad {bad}" if bad else "")

    return _run("3a core group order table", 1.0, fn)


def check_core_stabilizer_agreement(slow: bool = False, cap: int | None = None) -> Result:
    systems = [("D", 4), ("D", 5), ("D", 6), ("E", 6)]
    if slow:
        systems = systems + [("E", 7)]
    budget = 1800.0 if slow else 120.0

    def fn():
        bad = []
        for series, rank in systems:
            system = build_root_system(series, rank)
            model = core_group_model(system)
            w = enumerate_weyl(system) if cap is None else enumerate_weyl(system, cap)
            stab = set_stabilizer(system, model.moset, w)
            induced = induced_action(system, model.moset, stab)
            if induced != set(model.elements):
                bad.append((series, rank))
        return not bad, f"stabilizer agreement on {len(systems)} systems" + (
            f"; bad {bad}" if bad else ""
        )

    return _run("3b core group vs brute stabilizer", budget, fn)


# -- criterion 4: enhanced diagrams --------------------------------------------


def check_enhanced_diagrams() -> Result:
    def fn():
        problems = []
        e7 = enhanced_basis(build_root_system("E", 7))
        if len(e7.nodes) != 11:
            problems.append("E7 node count")
        nbrs = lambda eb, lab: {
            eb.names[x] for x in eb.neighbors(eb.node(lab))
        }
        if not {"1", "4", "6"} <= nbrs(e7, "l1"):
            problems.append("E7 l1 trace")
        if not {"l1", "2", "7"} <= nbrs(e7, "l2"):
            problems.append("E7 l2 trace")
        e8 = enhanced_basis(build_root_system("E", 8))
        if len(e8.nodes) != 16:
            problems.append("E8 node count")
        if any(len(e8.neighbors(n)) != 4 for n in e8.nodes):
            problems.append("E8 regularity")
        auts = automorphism_group(e8.diagram())
        first = e8.nodes[0]
        if {a[first] for a in auts} != set(e8.nodes):
            problems.append("E8 vertex transitivity")
        for series, rank in SMALL:
            system = build_root_system(series, rank)
            eb = enhanced_basis(system)
            if len(eb.moset) != _mu_formula(series, rank):
                problems.append(f"moset size {series}{rank}")
            other = enhanced_basis(system, "greatest")
            if not are_isomorphic(eb.diagram(), other.diagram())[0]:
                problems.append(f"policy isomorphism {series}{rank}")
        return not problems, "diagram shape checks" + (
            f"; bad {problems}" if problems else ""
        )

    return _run("4 enhanced Dynkin diagrams", 20.0, fn)


# -- criterion 5: small-rank classification vs oracle ---------------------------


def check_small_rank_exactness() -> Result:
    systems = [("A", 2), ("A", 3), ("A", 4), ("A", 5), ("D", 4), ("D", 5), ("D", 6), ("E", 6)]

    def fn():
        for series, rank in systems:
            system = build_root_system(series, rank)
            eb = enhanced_basis(system)
            subsets = pi_node_subsets(eb)
            oracle = orbit_id_map(system, subsets)
            label_to_orbit: dict = {}
            orbit_to_label: dict = {}
            for subset in subsets:
                label = orbit_label(RootSet(system, subset))
                oid = oracle[frozenset(system.proj_rep(i) for i in subset)]
                if label_to_orbit.setdefault(label, oid) != oid:
                    return False, f"label splits an orbit in {series}{rank}"
                if orbit_to_label.setdefault(oid, label) != label:
                    return False, f"two labels share an orbit in {series}{rank}"
        return True, f"orbit partitions equal the oracle on {len(systems)} systems"

    return _run("5 small-rank classification vs oracle", 300.0, fn)


# -- criterion 6: E7/E8 special tables ------------------------------------------


E7_TABLE = {
    ("3A1", 0): ["2", "5", "7"],
    ("3A1", 1): ["3", "5", "7"],
    ("A3+A1", 0): ["5", "6", "7", "2"],
    ("A3+A1", 1): ["5", "6", "7", "3"],
    ("A5", 0): ["2", "4", "5", "6", "7"],
    ("A5", 1): ["3", "4", "5", "6", "7"],
    ("4A1", 0): ["3", "5", "7", "l4"],
    ("4A1", 1): ["2", "5", "7", "l4"],
    ("A3+2A1", 0): ["5", "6", "7", "3", "l4"],
    ("A3+2A1", 1): ["5", "6", "7", "2", "l4"],
    ("A5+A1", 0): ["3", "4", "5", "6", "7", "l4"],
    ("A5+A1", 1): ["2", "4", "5", "6", "7", "l4"],
}

E8_TABLE = {
    ("4A1", 0): ["2", "5", "7", "l5"],
    ("4A1", 1): ["3", "5", "7", "l5"],
    ("A3+2A1", 0): ["7", "8", "l5", "5", "2"],
    ("A3+2A1", 1): ["7", "8", "l5", "5", "3"],
    ("2A3", 0): ["7", "8", "l5", "2", "4", "5"],
    ("2A3", 1): ["7", "8", "l5", "3", "4", "5"],
    ("A5+A1", 0): ["5", "6", "7", "8", "l5", "2"],
    ("A5+A1", 1): ["5", "6", "7", "8", "l5", "3"],
    ("A7", 0): ["2", "4", "5", "6", "7", "8", "l5"],
    ("A7", 1): ["3", "4", "5", "6", "7", "8", "l5"],
}


def check_special_orbits() -> Result:
    def fn():
        for rank, table, expected in ((7, E7_TABLE, 12), (8, E8_TABLE, 10)):
            system = build_root_system("E", rank)
            eb = enhanced_basis(system)
            orbits = enumerate_pi_orbits(system)
            special = [l for l, _ in orbits if l.kind == "ep"]
            if len(special) != expected:
                return False, f"E{rank} has {len(special)} special orbits"
            for (ttext, par), labels in table.items():
                got = orbit_label(RootSet(system, eb.subset(labels)))
                if got.kind != "ep" or got.type_text != ttext or got.data[1] != par:
                    return False, f"E{rank} {ttext} parity {par} misread as {got}"
        return True, "12 + 10 special orbits with the expected parities"

    return _run("6 special orbit tables (E7, E8)", 60.0, fn)


# -- criterion 7: worked examples -------------------------------------------------


def check_worked_examples() -> Result:
    def fn():
        e8 = build_root_system("E", 8)
        eb8 = enhanced_basis(e8)
        src = ["2", "4", "5", "6", "7", "8", "l5"]
        dst = ["3", "1", "l1", "l2", "2", "l7", "l5"]
        emb = EmbeddingMap(
            e8, {eb8.node(a): eb8.node(b) for a, b in zip(src, dst)}
        )
        dec = is_weyl_embedding(emb)
        if dec.is_weyl or "parity mismatch" not in (dec.reason or ""):
            return False, f"E8 example gave {dec}"
        e7 = build_root_system("E", 7)
        eb7 = enhanced_basis(e7)
        src = ["7", "6", "l3", "4"]
        dst = ["1", "3", "4", "6"]
        emb7 = EmbeddingMap(
            e7, {eb7.node(a): eb7.node(b) for a, b in zip(src, dst)}
        )
        dec7 = is_weyl_embedding(emb7)
        if not dec7.is_weyl:
            return False, "E7 example not recognized as Weyl"
        perm = perm_from_word(e7, dec7.witness_word)
        for a, b in zip(src, dst):
            if e7.proj_rep(perm[eb7.node(a)]) != eb7.node(b):
                return False, "E7 witness replay failed"
        return True, "E8 rejects by parity, E7 witness replays on roots"

    return _run("7 worked membership examples", 20.0, fn)


# -- criterion 8: order graphs -----------------------------------------------------


E7_ORDER_EDGES = {
    ("[A5+A1]^0", "[A3+2A1]^0"), ("[A3+2A1]^0", "[4A1]^0"),
    ("[A5]^1", "[A3+A1]^1"), ("[A3+A1]^1", "[3A1]^1"),
    ("[A5+A1]^1", "[A3+2A1]^1"), ("[A3+2A1]^1", "[4A1]^1"),
    ("[A5]^0", "[A3+A1]^0"), ("[A3+A1]^0", "[3A1]^0"),
    ("[A5+A1]^0", "[A5]^1"), ("[A3+2A1]^0", "[A3+A1]^1"), ("[4A1]^0", "[3A1]^1"),
    ("[A3+2A1]^1", "[A3+A1]^1"), ("[4A1]^1", "[3A1]^1"),
    ("[A5+A1]^1", "[A5]^0"), ("[A3+2A1]^1", "[A3+A1]^0"), ("[4A1]^1", "[3A1]^0"),
}

E8_ORDER_EDGES = {
    (f"[A7]^{i}", f"[2A3]^{i}") for i in (0, 1)
} | {
    (f"[A7]^{i}", f"[A5+A1]^{i}") for i in (0, 1)
} | {
    (f"[2A3]^{i}", f"[A3+2A1]^{i}") for i in (0, 1)
} | {
    (f"[A5+A1]^{i}", f"[A3+2A1]^{i}") for i in (0, 1)
} | {
    (f"[A3+2A1]^{i}", f"[4A1]^{i}") for i in (0, 1)
}


def check_order_graphs() -> Result:
    def fn():
        for rank, expected in ((7, E7_ORDER_EDGES), (8, E8_ORDER_EDGES)):
            system = build_root_system("E", rank)
            special = [l for l, _ in enumerate_pi_orbits(system) if l.kind == "ep"]
            h = hasse_diagram(system, special)
            got = {(a.render(), b.render()) for a, b in h.edges}
            if got != expected:
                return False, f"E{rank} special order graph differs: {got ^ expected}"
        e8 = build_root_system("E", 8)
        orbits = dict(enumerate_pi_orbits(e8))
        e6_label = next(l for l in orbits if l.type_text == "E6" and l.kind == "plain")
        four0 = next(l for l in orbits if l.render() == "[4A1]^0")
        four1 = next(l for l in orbits if l.render() == "[4A1]^1")
        if not order_between_orbits(four0, e6_label, e8):
            return False, "[4A1]^0 should lie below E6"
        if order_between_orbits(four1, e6_label, e8) or order_between_orbits(
            e6_label, four1, e8
        ):
            return False, "[4A1]^1 should be incomparable with E6"
        return True, "E7/E8 special order graphs and the E6 comparability example"

    return _run("8 order graphs", 120.0, fn)


# -- criterion 9: property suites ---------------------------------------------------


def check_property_suites(seed: int = 0, embeddings_per_system: int = 1000) -> Result:
    def fn():
        # Reflection closure of every system: full scan over all pairs
        # (reflect raises if an image were to leave the root list).
        for series, rank in SMALL:
            system = build_root_system(series, rank)
            n = len(system.roots)
            for j in range(n):
                for i in range(n):
                    system.reflect(i, j)
        # Completion monotonicity on random nested subsets, rank <= 6.
        rng = random.Random(seed)
        for series, rank in [("A", 4), ("D", 4), ("D", 5), ("D", 6), ("E", 6)]:
            system = build_root_system(series, rank)
            n = len(system.roots)
            for _ in range(10):
                y = rng.sample(range(n), rng.randint(2, min(8, n)))
                x = rng.sample(y, rng.randint(1, len(y)))
                cx = set(complete(RootSet(system, tuple(x))).members)
                cy = set(complete(RootSet(system, tuple(y))).members)
                if not cx <= cy:
                    return False, f"completion not monotone in {series}{rank}"
        # Uniform moset cardinality by exhaustive enumeration, rank <= 6.
        for series, rank in [(s, r) for s, r in SMALL if r <= 6]:
            system = build_root_system(series, rank)
            target = MU_TABLE[(series, rank)]
            sizes = {len(m) for m in all_mosets(system)}
            if sizes != {target}:
                return False, f"moset sizes {sizes} in {series}{rank}"
        # Witness replay soundness on randomized embeddings.
        for series, rank in SMALL:
            system = build_root_system(series, rank)
            eb = enhanced_basis(system)
            subsets = [s for s in pi_node_subsets(eb) if s]
            gens = simple_reflection_perms(system)
            for _ in range(embeddings_per_system):
                subset = rng.choice(subsets)
                w = identity_perm(system)
                for _ in range(rng.randint(0, 6)):
                    w = compose(rng.choice(gens), w)
                emb = EmbeddingMap(
                    system, {n: system.proj_rep(w[n]) for n in subset}
                )
                dec = is_weyl_embedding(emb)
                if not dec.is_weyl:
                    return False, f"true embedding rejected in {series}{rank}"
                perm = perm_from_word(system, dec.witness_word)
                for n in subset:
                    if system.proj_rep(perm[n]) != system.proj_rep(w[n]):
                        return False, f"witness replay failed in {series}{rank}"
        return True, "closure, monotonicity, moset sizes, witness replays"

    return _run("9 property suites", None, fn)


def run_all(
    slow: bool = False, seed: int = 0, embeddings: int = 1000, cap: int | None = None
) -> list[Result]:
    checks = [
        check_moset_cardinalities(),
        check_complement_types(),
        check_core_orders(),
        check_core_stabilizer_agreement(slow=slow, cap=cap),
        check_enhanced_diagrams(),
        check_small_rank_exactness(),
        check_special_orbits(),
        check_worked_examples(),
        check_order_graphs(),
        check_property_suites(seed=seed, embeddings_per_system=embeddings),
    ]
    return checks
