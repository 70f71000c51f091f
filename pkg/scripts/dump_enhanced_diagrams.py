#!/usr/bin/env python3
"""Write DOT files of the enhanced Dynkin diagrams into a directory.

Usage: python scripts/dump_enhanced_diagrams.py [outdir]
"""

import os
import sys

from rootforge import build_root_system, enhanced_basis, to_dot

SYSTEMS = ["A5", "A6", "D4", "D5", "D6", "D7", "D8", "E6", "E7", "E8"]


def main(argv):
    outdir = argv[0] if argv else "diagrams"
    os.makedirs(outdir, exist_ok=True)
    for text in SYSTEMS:
        system = build_root_system(text[0], int(text[1:]))
        eb = enhanced_basis(system)
        names = {n: eb.names[n] for n in eb.nodes}
        path = os.path.join(outdir, f"{system.name}.dot")
        with open(path, "w") as fh:
            fh.write(to_dot(eb.diagram(), bold_nodes=eb.moset, names=names))
        print(f"{system.name}: {len(eb.nodes)} nodes, moset {len(eb.moset)} -> {path}")
    return 0


if __name__ == "__main__":
    sys.exit(main(sys.argv[1:]))
