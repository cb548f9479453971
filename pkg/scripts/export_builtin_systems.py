#!/usr/bin/env python3
"""Write the two built-in context systems as JSON documents.

The exported files can be fed back through ``qnogo check-system`` to
reproduce the UNSAT results, or edited to explore variants (for example
flipping the negative-product target to +1 makes the state-dependent
system satisfiable).
"""

import argparse
import json
import pathlib

from qnogo.ks_search import state_dependent_system, state_independent_system, system_to_document


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("outdir", nargs="?", default="systems", help="output directory (default ./systems)")
    args = parser.parse_args()

    outdir = pathlib.Path(args.outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    for name, builder in (
        ("state_dependent", state_dependent_system),
        ("state_independent", state_independent_system),
    ):
        path = outdir / f"{name}.json"
        path.write_text(json.dumps(system_to_document(builder()), indent=2) + "\n")
        print(f"wrote {path}")


if __name__ == "__main__":
    main()
