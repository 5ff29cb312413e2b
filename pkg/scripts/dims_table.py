"""Print basis dimensions per variety and degree as an aligned table."""

import argparse

from freelab.experiments import dims_table
from freelab.varieties import Variety


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n", type=int, default=2, help="number of generators")
    ap.add_argument("--degree", type=int, default=5, help="largest degree")
    args = ap.parse_args()

    rows = dims_table(args.n, args.degree)
    print("variety".ljust(16) + "".join(f"d={d}".rjust(8) for d in range(1, args.degree + 1)))
    for v in Variety:
        dims = [r["dim"] for r in rows if r["variety"] == str(v)]
        print(str(v).ljust(16) + "".join(str(x).rjust(8) for x in dims))


if __name__ == "__main__":
    main()
