"""Apply seeded elementary-move scripts and compare freeness verdicts."""

import argparse

from freelab.field import field_make
from freelab.parsing import format_element
from freelab.schreier import transform_trial


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--field", default="Q(t)")
    ap.add_argument("--trials", type=int, default=20)
    ap.add_argument("--degree", type=int, default=4)
    ap.add_argument("--verbose", action="store_true", help="print tuples before and after")
    args = ap.parse_args()

    fld = field_make(args.field)
    changed = 0
    for seed in range(args.trials):
        tr = transform_trial(seed, fld, args.degree)
        changed += not tr.preserved
        moves = ",".join(m.kind for m in tr.moves)
        print(f"{seed:3d} {tr.variety!s:16s} {tr.kind:8s} [{moves}] {tr.before_verdict} -> {tr.after_verdict}")
        if args.verbose:
            for a, b in zip(tr.before, tr.after):
                print(f"      {format_element(a)}  =>  {format_element(b)}")
    print(f"changed verdicts: {changed}/{args.trials}")


if __name__ == "__main__":
    main()
