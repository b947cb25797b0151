"""Von Neumann entropy, Holevo information and the entropic lower bound on guesswork (bits)."""

from __future__ import annotations

import numpy as np

from .classical import rioul_bound, shannon_entropy
from .hermitian import as_hermitian
from .objects import Ensemble, average_state


def von_neumann_entropy(rho) -> float:
    vals = np.linalg.eigvalsh(as_hermitian(rho))
    vals = vals[vals > 1e-15]
    return float(max(0.0, -(vals * np.log2(vals)).sum()))


def holevo_chi(ens: Ensemble) -> float:
    """``S(sum_x p(x) rho_x) - sum_x p(x) S(rho_x)``, clamped at zero against round-off."""
    mixed = sum(p * von_neumann_entropy(rho) for p, rho in zip(ens.probs, ens.states))
    return max(0.0, von_neumann_entropy(average_state(ens)) - mixed)


def guesswork_lower_bound(ens: Ensemble) -> float:
    """``max(1, 2^(H(X) - chi) / e + 1/2)``."""
    return max(1.0, rioul_bound(shannon_entropy(ens.probs) - holevo_chi(ens)))
