#!/usr/bin/env python
"""
Example script demonstrating hmclass usage.

This script shows different ways to use the hmclass package.
"""

from hmclass import (
    build_lattice,
    hirzebruch_pn,
    hm_p2,
    hm_p3,
    hm_p3_closed,
    hm_pushforward,
    pushforward_sigma,
)
from hmclass.corpus import braid_arrangement, near_pencil_arrangement, xyz_xy_arrangement
from hmclass.report import format_graded, format_sigma, render_lattice_text


def main():
    """Run different examples of hmclass."""

    # Example 1: both engines on xyz(x+y) = 0 in P^3
    lat = build_lattice(xyz_xy_arrangement())
    print(render_lattice_text(lat))
    print("spectrum engine:", format_sigma(hm_p3(lat)))
    print("K-theory engine:", format_graded(hm_pushforward(lat)))
    print("closed formula: ", format_graded(hm_p3_closed(lat)))

    # Example 2: a near-pencil of five lines in P^2
    lat = build_lattice(near_pencil_arrangement(5))
    sigma = hm_p2(lat)
    print("\nnear-pencil:", format_sigma(sigma))
    print("pushforward:", format_graded(pushforward_sigma(sigma)))

    # Example 3: the braid arrangement in P^3 is not essential, so mu(1) = 0
    lat = build_lattice(braid_arrangement(4))
    print("\nbraid arrangement: essential =", lat.essential, "mu(1) =", lat.mu_one)
    print("class:", format_graded(hm_pushforward(lat)))

    # Example 4: Hirzebruch classes of projective spaces
    for m in range(3):
        print(f"\nT_y(P^{m}) =", format_graded(hirzebruch_pn(m)))

    print("\nThe same computations are available from the command line:")
    print("  hmclass compute hmclass_corpus/xyz_xy.arr --algorithm both")
    print("  hmclass check hmclass_corpus")
    print("  hmclass lattice hmclass_corpus/xyz_xy.arr --format json")


if __name__ == "__main__":
    main()
