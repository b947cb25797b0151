"""Write the fixture ensembles used by the tests and the CLI examples.

The non-dominant qutrit fixture comes from a seeded random search over non-uniform qutrit
ensembles; the first instance whose dominance gap clearly exceeds the tolerance is kept.
"""

import argparse
from pathlib import Path

import numpy as np

from quantum_guesswork.engine import dominance_search
from quantum_guesswork.objects import Ensemble, basis_state, pure_state, random_ensemble
from quantum_guesswork.serialization import save_ensemble

ROOT = Path(__file__).resolve().parents[1]


def canonical():
    zero, one, plus = basis_state(2, 0), basis_state(2, 1), pure_state([1, 1])
    return {
        "orthogonal": Ensemble([zero, one], [0.5, 0.5]),
        "identical": Ensemble([plus, plus], [0.5, 0.5]),
        "zero_plus": Ensemble([zero, plus], [0.5, 0.5]),
    }


def find_nondominant(seed=0, n=3, min_gap=1e-3, max_tries=10_000):
    rng = np.random.default_rng(seed)
    for attempt in range(max_tries):
        ens = random_ensemble(3, n, rng, ranks=[1] * n)
        search = dominance_search(ens)
        if search.violation > min_gap:
            return attempt, ens, search
    raise RuntimeError("no non-dominant ensemble found")


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", type=Path, default=ROOT / "fixtures")
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    args.out.mkdir(exist_ok=True)
    for name, ens in canonical().items():
        save_ensemble(ens, args.out / f"{name}.json")
    attempt, ens, search = find_nondominant(args.seed)
    save_ensemble(ens, args.out / "qutrit_nondominant.json")
    print(f"non-dominant qutrit ensemble after {attempt + 1} draws: sigma_best={search.sigma_best} gap={search.violation:.4g}")


if __name__ == "__main__":
    main()
