"""Exhaustive probe of order 1029 = 3 * 7^3, where 3 divides both 7^2+7+1 and 7-1.

Prints each group with its missing orders and the Sylow 7 type, then the verdict.
"""

import time

from cltlab import verify as V


def main():
    t0 = time.perf_counter()
    v = V.verify_pair(3, 7, exhaustive=True)
    for G, rep in V.exhaustive_members(3, 7):
        print(f"{G.spec_tag:60s} clt={rep.is_clt!s:5}  missing={rep.missing_orders}")
    print()
    print(f"groups checked   {len(v.groups_checked)}")
    print(f"predicted        {v.predicted_exists}")
    print(f"observed         {v.observed_exists}")
    print(f"agreement        {v.agreement}")
    print(f"notes            {'; '.join(v.notes)}")
    print(f"elapsed          {time.perf_counter() - t0:.1f}s")


if __name__ == "__main__":
    main()
