"""Regenerate the shipped .deriv files from the builtin fixture templates."""

import argparse

from teamlogic.proofcheck import check_derivation, export_fixtures
from teamlogic.proofcheck.fixtures import FIXTURE_DIR, builtin_fixtures

if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", default=str(FIXTURE_DIR))
    args = ap.parse_args()
    for f in builtin_fixtures():
        if f.accept:
            assert check_derivation(f.derivation) == f.expected, f.name
    for path in export_fixtures(args.out):
        print(path)
