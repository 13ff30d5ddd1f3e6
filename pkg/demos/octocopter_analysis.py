"""Quantitative resilience of the octocopter to the loss of one propeller.

Two subsystems are analyzed:
  * rotational torques (roll/pitch/yaw accelerations, order 1), and
  * translational accelerations (order 1 here; order 2 gives positions).

The PNPNPNPN octocopter keeps full controllability after any single
propeller loss, but the price in reach time differs sharply between the
four main rotors (1-4) and the four tilted rotors (5-8).

Run:  python demos/octocopter_analysis.py
"""

import numpy as np

from resil import catalog, reach, resilience
from resil.model import split


def sweep(system, d_list):
    print(f"-- {system.name}  (n={system.n}, inputs={system.n_inputs})")
    header = f"{'loss':>4}  {'r(C)':>8}  {'r(-C)':>8}  {'r_q':>8}  {'r_2q':>8}"
    header += "".join(f"  {'t(' + label + ')':>8}" for label, _ in d_list)
    print(header)
    for j in range(system.n_inputs):
        sp = split(system, j)
        r_plus, r_minus = resilience.r_pair(sp)
        rep = resilience.quantitative_resilience(sp)
        rep2 = resilience.quantitative_resilience(sp, order=2)
        row = f"{j + 1:>4}  {r_plus:>8.4f}  {r_minus:>8.4f}  {rep.r_q:>8.4f}  {rep2.r_kq:>8.4f}"
        for _, d in d_list:
            t = reach.time_ratio(sp, d)
            row += "  " + ("     inf" if np.isinf(t) else f"{t:8.4f}")
        print(row)
    print()


def main() -> None:
    rot = catalog.octocopter_rotational()
    trans = catalog.octocopter_translational()

    sweep(rot, [("roll", np.array([1.0, 0.0, 0.0])),
                ("yaw", np.array([0.0, 0.0, 1.0]))])
    sweep(trans, [("down", np.array([0.0, 0.0, -1.0])),
                  ("fwd", np.array([1.0, 0.0, 0.0]))])

    print("reading the tables:")
    print(" * losing a main rotor (1-4) costs about 77% descent speed margin")
    print("   (t(down) = 1.774), a tilted rotor (5-8) about 126% (t(down) = 2.264);")
    print(" * horizontal motion is free after most losses (t(fwd) = 1) because the")
    print("   tilted rotors provide lateral force symmetrically;")
    print(" * r_2q = r_q^(1/2) converts the rate penalty into a position-level one.")


if __name__ == "__main__":
    main()
