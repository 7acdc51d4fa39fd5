"""Run every oracle and freeze the results into tests/data/oracles.json."""

import json
import sys
import time
from pathlib import Path

import cansys_symbolic
import density_projection
import measures
import membership_terms
import quadratic
import secular
import simex_roots

OUT = Path(__file__).resolve().parent.parent / "tests" / "data" / "oracles.json"


def main():
    only = set(sys.argv[1:])
    data = json.loads(OUT.read_text()) if OUT.exists() else {}
    for mod in (quadratic, secular, simex_roots, density_projection, membership_terms,
                cansys_symbolic, measures):
        name = mod.__name__
        if only and name not in only:
            continue
        t0 = time.perf_counter()
        data[name] = mod.compute()
        print(f"{name}: {time.perf_counter() - t0:.1f} s")
    OUT.parent.mkdir(parents=True, exist_ok=True)
    OUT.write_text(json.dumps(data, indent=1, sort_keys=True) + "\n")


if __name__ == "__main__":
    main()
