"""Run the three-way verification across the whole catalog.

For every record: enumerate the spinor regular form, build the genus mask
from the local solver, build the squareclass mask, evaluate the general
criterion, and demand that all routes agree.  Usage:

    python3 demos/verify_catalog.py [bound]
"""

import sys
from time import perf_counter

from spinor_ternary import load_default_catalog
from spinor_ternary.cli_verify import verify_records


def main() -> None:
    bound = int(sys.argv[1]) if len(sys.argv) > 1 else 5000
    catalog = load_default_catalog()
    t0 = perf_counter()
    reports = verify_records(catalog.records, bound)
    elapsed = perf_counter() - t0

    for rep in reports:
        print(rep.summary())
    failed = [rep.rid for rep in reports if not rep.passed]
    print()
    print(f"{len(reports)} records, bound {bound}, {elapsed:.1f}s")
    print("all agree" if not failed else f"FAILURES: {failed}")
    sys.exit(1 if failed else 0)


if __name__ == "__main__":
    main()
