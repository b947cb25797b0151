"""Monte-Carlo simulation of the guessing game under a ranking POVM."""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass

import numpy as np

from .engine import born_conditional, rank_table
from .errors import ValidationError
from .objects import POVM, Ensemble

CHUNK_SHOTS = 1 << 16


@dataclass(frozen=True)
class GameStats:
    shots: int
    mean_guesses: float
    std_error: float
    histogram: tuple[int, ...]  # histogram[k] counts shots needing k + 1 guesses

    def to_json(self) -> str:
        return json.dumps(asdict(self))

    @classmethod
    def from_json(cls, text: str) -> "GameStats":
        data = json.loads(text)
        data["histogram"] = tuple(data["histogram"])
        return cls(**data)


def _play_chunk(p_x, outcome_cdf, ranks, shots, rng):
    x = rng.choice(len(p_x), size=shots, p=p_x)
    u = rng.random(shots)
    k = np.empty(shots, dtype=int)
    for label in np.unique(x):
        sel = x == label
        k[sel] = np.searchsorted(outcome_cdf[label], u[sel], side="right")
    k = np.minimum(k, ranks.shape[0] - 1)
    return ranks[k, x]


def simulate_game(ens: Ensemble, povm: POVM, shots: int, seed=None) -> GameStats:
    """Play ``shots`` rounds: Alice draws ``x``, Bob measures ``rho_x`` and guesses in ranking order.

    Shots are generated in fixed-size chunks, each with its own child seed, so the result is
    fully determined by ``seed`` and ``shots``.
    """
    if int(shots) != shots or shots < 1:
        raise ValidationError("shots must be a positive integer")
    shots = int(shots)
    ranks = rank_table(povm.outcomes, ens.n)
    w = born_conditional(ens, povm)
    # renormalize each row to absorb round-off in Tr[E rho]
    w = w / w.sum(axis=1, keepdims=True)
    cdf = np.cumsum(w, axis=1)
    cdf[:, -1] = 1.0
    p_x = np.clip(ens.probs, 0, None)
    p_x = p_x / p_x.sum()

    n_chunks = -(-shots // CHUNK_SHOTS)
    children = np.random.SeedSequence(seed).spawn(n_chunks)
    counts = np.zeros(ens.n, dtype=np.int64)
    for c, child in enumerate(children):
        size = min(CHUNK_SHOTS, shots - c * CHUNK_SHOTS)
        guesses = _play_chunk(p_x, cdf, ranks, size, np.random.default_rng(child))
        counts += np.bincount(guesses - 1, minlength=ens.n)

    steps = np.arange(1, ens.n + 1)
    mean = float(counts @ steps / shots)
    var = float(counts @ (steps - mean) ** 2 / max(shots - 1, 1))
    return GameStats(shots, mean, float(np.sqrt(var / shots)), tuple(int(c) for c in counts))
