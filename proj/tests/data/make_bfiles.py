#!/usr/bin/env python3
"""Regenerate the OEIS-format reference files in this directory.

The terms are counted by brute force over the integer grid, independently of
the C++ closed forms they are compared against:
  A000328  #{(x, y) : x^2 + y^2 <= k^2}
  A051132  #{(x, y) : x^2 + y^2 <  k^2}
  A046109  #{(x, y) : x^2 + y^2 == k^2}
"""
import pathlib

KMAX = 100  # terms start at the OEIS offset k = 0
HERE = pathlib.Path(__file__).resolve().parent


def counts(k):
    le = lt = eq = 0
    for x in range(-k, k + 1):
        for y in range(-k, k + 1):
            s = x * x + y * y
            le += s <= k * k
            lt += s < k * k
            eq += s == k * k
    return le, lt, eq


def main():
    rows = [counts(k) for k in range(0, KMAX + 1)]
    names = {
        "A000328": "lattice points with x^2 + y^2 <= k^2",
        "A051132": "lattice points with x^2 + y^2 < k^2",
        "A046109": "lattice points with x^2 + y^2 = k^2",
    }
    for col, (seq, what) in enumerate(names.items()):
        with open(HERE / f"b{seq[1:]}.txt", "w") as f:
            f.write(f"# {seq}: {what}, k = 0..{KMAX}\n")
            f.write("# generated by make_bfiles.py (brute-force grid count)\n")
            for k, row in enumerate(rows):
                f.write(f"{k} {row[col]}\n")


if __name__ == "__main__":
    main()
