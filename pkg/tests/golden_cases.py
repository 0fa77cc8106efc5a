"""Commands whose outputs are frozen under tests/golden.

Run ``python3 tests/golden_cases.py`` to regenerate after an intended change.
"""

import os
import sys
from pathlib import Path

from tilewave.cli import main

GOLDEN = Path(__file__).parent / "golden"

# (output names, argv with {out} placeholders -> paths in the target directory)
CASES = [
    (["tile_shearlet.json"], ["tile", "shearlet", "--a", "2", "--b", "1", "-o", "{0}"]),
    (["tile_similitude.json"], ["tile", "similitude", "--a", "2", "--n", "6", "-o", "{0}"]),
    (["verify_translational.json"], ["verify", "translational", "--a", "2", "--b", "1", "--lattice", "1,0,0,3/2",
                                     "--k", "2", "--samples", "20000", "--seed", "42", "-o", "{0}"]),
    (["verify_refuted.json"], ["verify", "translational", "--a", "2", "--b", "1", "--lattice", "1,0,0,1/2",
                               "--k", "8", "-o", "{0}"]),
    (["verify_multiplicative.json"], ["verify", "multiplicative", "--a", "2", "--b", "1", "--samples", "5000",
                                      "--seed", "7", "-o", "{0}"]),
    (["verify_similitude.json"], ["verify", "multiplicative", "--group", "similitude", "--a", "3", "--n", "6",
                                  "--samples", "2000", "-o", "{0}"]),
    (["certificate.json", "gram.csv"], ["certify", "--a", "2", "--b", "1", "--seed", "42", "--radius", "2",
                                        "--det-samples", "2000", "--method", "jacobi", "-o", "{0}",
                                        "--gram-csv", "{1}"]),
    (["figure1.svg"], ["render", "--figure", "1", "-o", "{0}"]),
    (["figure2.svg"], ["render", "--figure", "2", "-o", "{0}"]),
    (["figure3.svg"], ["render", "--figure", "3", "-o", "{0}"]),
]


def produce(target: Path) -> list:
    """Run every case writing into ``target``; return the produced file names."""
    names = []
    for outs, argv in CASES:
        paths = [str(target / n) for n in outs]
        code = main([a.format(*paths) for a in argv])
        if code not in (0, 1):
            raise RuntimeError(f"{argv} exited {code}")
        names += outs
    return names


if __name__ == "__main__":
    GOLDEN.mkdir(exist_ok=True)
    produce(GOLDEN)
    print(f"regenerated {len(os.listdir(GOLDEN))} files", file=sys.stderr)
