"""Closed-form quantum guesswork with a bracketing fallback."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .engine import N_MAX, dominance_search, optimal_povm, povm_guesswork
from .entropy import guesswork_lower_bound
from .objects import POVM, Ensemble, average_state, random_povm

CLOSED_FORM = "closed_form"
BRACKET_ONLY = "bracket_only"
DEFAULT_TRIAL_POVMS = 32


@dataclass(frozen=True)
class GuessworkResult:
    value: float | None
    method: str
    bracket: tuple[float, float]
    sigma_star: tuple[int, ...] | None = None
    optimal_povm: POVM | None = None
    witness: str | None = None
    witness_povm: POVM | None = field(default=None, repr=False)

    @property
    def povm(self) -> POVM | None:
        """Optimal POVM in closed form, otherwise the POVM attaining the bracket's upper end."""
        return self.optimal_povm if self.optimal_povm is not None else self.witness_povm


@dataclass(frozen=True)
class Bracket:
    lower: float
    upper: float
    witness: str
    witness_povm: POVM
    candidates: dict[str, float]

    def __iter__(self):
        yield self.lower
        yield self.upper


def bracket_candidates(ens: Ensemble, trial_povms: int = DEFAULT_TRIAL_POVMS, seed=0, n_max: int = N_MAX):
    """Named POVMs whose guesswork upper-bounds the optimum.

    Random candidate ``k`` depends only on ``(seed, k)``, so raising ``trial_povms`` only adds
    candidates.
    """
    d = ens.dim
    yield "trivial", POVM(np.eye(d)[None])
    _, vecs = np.linalg.eigh(average_state(ens))
    yield "average_eigenbasis", POVM(np.einsum("ik,jk->kij", vecs, vecs.conj()))
    if ens.n <= n_max:
        sigma_best = dominance_search(ens, n_max=n_max).sigma_best
        yield "score_sigma_best", optimal_povm(ens, sigma_best)
    seeds = np.random.SeedSequence(seed).spawn(trial_povms)
    outcomes = max(2, ens.n, d)
    for k, s in enumerate(seeds):
        yield f"random[{k}]", random_povm(d, outcomes, np.random.default_rng(s))


def guesswork_bracket(ens: Ensemble, trial_povms: int = DEFAULT_TRIAL_POVMS, seed=0, n_max: int = N_MAX) -> Bracket:
    """Entropic lower bound and the best guesswork over a family of candidate measurements."""
    lower = guesswork_lower_bound(ens)
    values = {}
    best = None
    for name, povm in bracket_candidates(ens, trial_povms, seed, n_max):
        g = povm_guesswork(ens, povm)
        values[name] = g
        # a later candidate must win by more than round-off to become the witness
        if best is None or g < best[0] - 1e-12:
            best = (g, name, povm)
    upper, witness, witness_povm = best
    return Bracket(lower, upper, witness, witness_povm, values)


def closed_form_guesswork(
    ens: Ensemble,
    tol: float | None = None,
    n_max: int = N_MAX,
    trial_povms: int = DEFAULT_TRIAL_POVMS,
    seed=0,
) -> GuessworkResult:
    """Exact guesswork ``(n + 1)/2 - ||S_sigma*||_1 / 2`` when a dominant ranking exists.

    Without a dominant ranking only a bracket is returned (``value`` is ``None``).
    """
    search = dominance_search(ens, tol, n_max)
    lower = guesswork_lower_bound(ens)
    if search.dominant:
        value = (ens.n + 1) / 2 - search.norm_best / 2
        povm = optimal_povm(ens, search.sigma_best)
        return GuessworkResult(
            value=value,
            method=CLOSED_FORM,
            bracket=(lower, value),
            sigma_star=search.sigma_best,
            optimal_povm=povm,
            witness="optimal",
            witness_povm=povm,
        )
    b = guesswork_bracket(ens, trial_povms, seed, n_max)
    return GuessworkResult(
        value=None,
        method=BRACKET_ONLY,
        bracket=(b.lower, b.upper),
        witness=b.witness,
        witness_povm=b.witness_povm,
    )
