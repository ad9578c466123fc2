"""Brute-force automorphism counts for the groups of order q^3 against the closed forms."""

import argparse

from cltlab import verify as V


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("q", type=int, nargs="*", default=[3, 5, 7])
    args = ap.parse_args()
    for q in args.q:
        rep = V.verify_aut_formulas(q, bound=q**3)
        print(f"q = {q}")
        for r in rep["formulas"]:
            print(f"  {r['group']:24s} count={r['count']!s:>8}  formula={r['formula']:>10}  {r['method']}")
        c = rep["cyclic"]
        print(f"  {c['group']:24s} count={c['count']:>8}  expected={c['expected']:>9}")


if __name__ == "__main__":
    main()
