"""Run the full prime-pair scan and write a JSON report plus a short summary.

    python scripts/run_scan.py --max-p 31 --max-q 5 --jobs 4 --out scan.json
"""

import argparse
import json
from pathlib import Path

from cltlab import verify as V


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-p", type=int, default=31)
    ap.add_argument("--max-q", type=int, default=5)
    ap.add_argument("--jobs", type=int, default=1)
    ap.add_argument("--witness-only", action="store_true", help="skip the exhaustive enumeration")
    ap.add_argument("--out", type=Path, default=Path("scan.json"))
    args = ap.parse_args()

    rows = V.scan(args.max_p, args.max_q, exhaustive=not args.witness_only, jobs=args.jobs)
    args.out.write_text(json.dumps([r.to_dict(timing=True) for r in rows], indent=2, sort_keys=True))

    for r in rows:
        v = r.verdict
        flag = "" if v.agreement in (True, None) else "  <-- disagreement"
        print(f"p={r.p:>2} q={r.q}  order={r.order:>5}  predicted={v.predicted_exists!s:5}  "
              f"observed={v.observed_exists!s:5}  {r.timing_ms / 1000:6.1f}s{flag}")
    bad = [r for r in rows if r.verdict.agreement is False]
    print(f"\n{len(rows)} pairs, {len(bad)} disagreement(s); report written to {args.out}")


if __name__ == "__main__":
    main()
