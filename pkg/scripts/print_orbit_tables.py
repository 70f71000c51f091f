#!/usr/bin/env python3
"""Print the moset/core-group tables and the orbit tables for chosen systems.

Usage: python scripts/print_orbit_tables.py [E7 E8 D6 ...]
"""

import sys

from rootforge import build_root_system, enhanced_basis, enumerate_pi_orbits, mu
from rootforge.coregroups import core_group_model


def main(argv):
    labels = argv or ["A5", "D6", "E6", "E7", "E8"]
    print(f"{'system':8} {'mu':>3} {'nu':>5}  orbits (special)")
    for text in labels:
        system = build_root_system(text[0].upper(), int(text[1:]))
        model = core_group_model(system)
        orbits = enumerate_pi_orbits(system)
        special = sum(1 for l, _ in orbits if l.kind == "ep")
        print(f"{system.name:8} {mu(system):>3} {model.order:>5}  {len(orbits)} ({special})")
    for text in labels:
        system = build_root_system(text[0].upper(), int(text[1:]))
        eb = enhanced_basis(system)
        print(f"\n== {system.name} orbit table ==")
        for label, rep in enumerate_pi_orbits(system):
            names = ",".join(eb.names[n] for n in rep)
            print(f"  {label.render():24} rep {{{names}}}")
    return 0


if __name__ == "__main__":
    sys.exit(main(sys.argv[1:]))
