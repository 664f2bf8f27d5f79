"""Regenerate the fixture files from the transcribed tables."""

import argparse

from crtkit.catalog import FIXTURE_DIR, write_fixtures


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", default=str(FIXTURE_DIR))
    args = ap.parse_args()
    for path in write_fixtures(args.out):
        print(path)


if __name__ == "__main__":
    main()
