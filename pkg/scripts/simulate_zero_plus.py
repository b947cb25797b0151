"""Play the guessing game on the |0>, |+> pair and compare against the closed form."""

import argparse

import numpy as np

from quantum_guesswork import closed_form_guesswork
from quantum_guesswork.game import simulate_game
from quantum_guesswork.objects import Ensemble, basis_state, pure_state


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--shots", type=int, default=1_000_000)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args(argv)

    ens = Ensemble([basis_state(2, 0), pure_state([1, 1])], [0.5, 0.5])
    res = closed_form_guesswork(ens)
    for shots in np.unique(np.geomspace(100, args.shots, 5).astype(int)):
        stats = simulate_game(ens, res.optimal_povm, int(shots), seed=args.seed)
        z = (stats.mean_guesses - res.value) / stats.std_error
        print(f"shots={shots:>9d} mean={stats.mean_guesses:.6f} se={stats.std_error:.6f} z={z:+.2f}")
    print(f"closed form: {res.value:.12f}")


if __name__ == "__main__":
    main()
