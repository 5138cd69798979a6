"""How far from Poissonian the four-photon state is at zero squeezing.

At r = 0 the two-photon state is coherent (g2 = 1).  The nonlinear term
leaves a residual that grows with the coupling; this prints g2 - 1 and
g4 - 1 against gamma_tilde at fixed beta.
"""

import argparse
import math

from multiphoton.states import StateParams, state_x1
from multiphoton.statistics import fock_auto, moments


def main() -> None:
    ap = argparse.ArgumentParser(description="g2, g4 at r = 0 versus coupling")
    ap.add_argument("--beta", type=float, default=3 * math.sqrt(2))
    ap.add_argument("--couplings", type=float, nargs="+", default=[0.01, 0.02, 0.05, 0.1, 0.2, 0.5])
    args = ap.parse_args()
    print("gamma_tilde,mean_n,g2_minus_1,g4_minus_1")
    for g in args.couplings:
        m = moments(fock_auto(state_x1(StateParams.from_beta("fpss2", 0.0, g, args.beta))))
        print(f"{g:.12g},{m['mean_n']:.12g},{m['g2'] - 1:.6e},{m['g4'] - 1:.6e}")


if __name__ == "__main__":
    main()
