"""Writes offline a_p caches for the weight-two labels from point counts."""

import argparse
import pathlib

CURVES = {
    # label: (a1, a2, a3, a4, a6, conductor)
    "27.2.a.a": (0, 0, 1, 0, -7, 27),
    "36.2.a.a": (0, 0, 0, 0, 1, 36),
}


def primes(limit):
    sieve = bytearray([1]) * (limit + 1)
    sieve[:2] = b"\x00\x00"
    for i in range(2, int(limit**0.5) + 1):
        if sieve[i]:
            sieve[i * i :: i] = bytearray(len(sieve[i * i :: i]))
    return [i for i in range(limit + 1) if sieve[i]]


def trace(p, a1, a2, a3, a4, a6):
    # count y for each x via the number of roots of y^2 + (a1 x + a3) y - f(x)
    count = 1
    for x in range(p):
        b = (a1 * x + a3) % p
        c = -(x**3 + a2 * x * x + a4 * x + a6) % p
        count += sum(1 for y in range(p) if (y * y + b * y + c) % p == 0)
    return p + 1 - count


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("out", type=pathlib.Path)
    ap.add_argument("--pmax", type=int, default=1000)
    args = ap.parse_args()
    for label, (*coeffs, conductor) in CURVES.items():
        path = args.out / "lmfdb" / f"{label}.txt"
        path.parent.mkdir(parents=True, exist_ok=True)
        with path.open("w") as fh:
            fh.write(f"# {label}\n# source: point counts on [{','.join(map(str, coeffs))}], good primes only\n")
            for p in primes(args.pmax):
                if conductor % p:
                    fh.write(f"{p}\t{trace(p, *coeffs)}\n")


if __name__ == "__main__":
    main()
