#!/usr/bin/env python3
"""Print the full inequality report for each built-in family.

The tori and projective spaces reproduce the sharp (all-slack-zero) tables;
the synthetic K3-bundle datum shows the literature-bound violation that the
cone inequalities avoid.
"""

from conemorse.families import projective_space, s2_bundle_over_k3, torus
from conemorse.inequalities import cone_report, report_to_text
from conemorse.morse import product, stabilize


def show(datum):
    print(report_to_text(cone_report(datum)))


def main():
    show(torus(2))
    show(projective_space(3))
    show(stabilize(torus(2), 1, "s1"))
    show(product(projective_space(1), projective_space(1)))
    show(s2_bundle_over_k3(omega_rank=22))


if __name__ == "__main__":
    main()
