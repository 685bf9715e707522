#!/usr/bin/env python3
"""Track order/type estimates of the fixture series across truncation depths."""

import argparse
from fractions import Fraction

from fischerdec.entire import decay_series, exp_axis_series, order_estimate, strip_harmonic_series


def describe(name, series):
    estimate = order_estimate(series)
    type_text = "-" if estimate.type is None else f"{estimate.type:.4f}"
    print(f"{name:<28} N={series.truncation:<3} order={estimate.order:.4f} type={type_text}")


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--depths", type=int, nargs="+", default=[20, 40, 60])
    args = parser.parse_args()

    for truncation in args.depths:
        describe("exp(x1)", exp_axis_series(2, 0, truncation))
        describe("sin(c x1) exp(c x2)", strip_harmonic_series(truncation))
        for rho in (Fraction(1, 2), Fraction(1), Fraction(2)):
            describe(f"decay rho={rho}", decay_series(rho, truncation))
        print()


if __name__ == "__main__":
    main()
