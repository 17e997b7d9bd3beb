#!/usr/bin/env python3
"""Write the full certificate set for a genus range to a directory.

Per genus this emits one invariant certificate per construction plus the
comparison certificate, then prints a one-line summary.  A nonzero exit
means some certificate did not pass; the files are still written so the
failure can be inspected.
"""

import argparse
import json
import pathlib

from lf_forge import (
    fibration_certificate,
    ishikawa_fibration,
    isomorphism_certificate,
    johns_fibration,
)


def dump(path: pathlib.Path, doc: dict) -> None:
    path.write_text(json.dumps(doc, indent=2) + "\n")


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--max-genus", type=int, default=8)
    parser.add_argument("--out", type=pathlib.Path, default=pathlib.Path("certificates"))
    args = parser.parse_args()
    args.out.mkdir(parents=True, exist_ok=True)

    bad = 0
    for genus in range(args.max_genus + 1):
        johns = johns_fibration(genus)
        ishikawa = ishikawa_fibration(genus)
        results = []
        for fib in (johns, ishikawa):
            cert = fibration_certificate(fib)
            dump(args.out / f"certificate-{fib.construction}-g{genus}.json", cert)
            results.append((fib.construction, cert["passed"]))
        comparison = isomorphism_certificate(johns, ishikawa)
        dump(args.out / f"isomorphism-g{genus}.json", comparison)
        results.append(("isomorphism", comparison["found"]))
        bad += sum(not ok for _, ok in results)
        summary = ", ".join(f"{name} {'ok' if ok else 'FAILED'}" for name, ok in results)
        print(f"genus {genus}: {summary}")
    print(f"wrote {3 * (args.max_genus + 1)} documents to {args.out}")
    return 1 if bad else 0


if __name__ == "__main__":
    raise SystemExit(main())
