"""Run seeded random MLM batches for several varieties and summarize verdicts."""

import argparse
import json
import time

from freelab.experiments import MLM_VARIETIES, mlm_batch_report
from freelab.field import field_make


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--field", default="Q(t)")
    ap.add_argument("--count", type=int, default=50)
    ap.add_argument("--seed", type=int, default=1)
    ap.add_argument("--variety", action="append", help="repeatable; default is all seven")
    ap.add_argument("--json", help="also write the full reports here")
    args = ap.parse_args()

    fld = field_make(args.field)
    reports = []
    for v in args.variety or [str(v) for v in MLM_VARIETIES]:
        start = time.time()
        rep = mlm_batch_report(v, fld, args.count, args.seed)
        reports.append(rep)
        print(f"{rep['variety']:16s} {rep['verdict']:20s} {rep['verdicts']}  ({time.time() - start:.1f}s)")
    if args.json:
        with open(args.json, "w", encoding="utf-8") as fh:
            json.dump(reports, fh, indent=2)


if __name__ == "__main__":
    main()
