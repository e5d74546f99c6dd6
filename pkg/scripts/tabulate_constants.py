"""Print the Case 1 / Case 2 structure constants for a range of a_ij.

    python3 scripts/tabulate_constants.py --min -5 --format latex
"""
import argparse

from qsp.cli import RENDERERS
from qsp.qring import QContext
from qsp.relations import assemble_relation


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--min", type=int, default=-4, help="most negative a_ij")
    ap.add_argument("--case", default="1", choices=["1", "2", "split"])
    ap.add_argument("--format", default="text", choices=sorted(RENDERERS))
    ap.add_argument("--epsi", type=int, default=1)
    args = ap.parse_args()
    for a in range(-1, args.min - 1, -1):
        table = assemble_relation(args.case, QContext.symmetric(a, args.epsi, args.epsi))
        print(f"% a_ij = {a}, {len(table.terms)} nonzero terms")
        print(RENDERERS[args.format](table))


if __name__ == "__main__":
    main()
