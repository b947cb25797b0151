"""Guesswork of a quantum ensemble under a measurement, and the dominant-ranking construction.

Rankings (permutation outcomes) are 1-based tuples with ``sigma[t-1]`` the ``t``-th guess.
"""

from __future__ import annotations

from itertools import permutations
from math import factorial
from typing import NamedTuple, Sequence

import numpy as np

from .classical import conditional_guesswork, invert, is_permutation, reverse
from .errors import SizeError, ValidationError
from .hermitian import projector_parts
from .objects import POVM, Ensemble

N_MAX = 8
DOMINANCE_RTOL = 1e-8
_CHUNK = 5040


def _check_dims(ens: Ensemble, povm: POVM):
    if ens.dim != povm.dim:
        raise ValidationError(f"ensemble dim {ens.dim} does not match POVM dim {povm.dim}")


def born_conditional(ens: Ensemble, povm: POVM) -> np.ndarray:
    """Matrix of ``p(y | x) = Tr[E_y rho_x]`` with shape ``(n, k)``."""
    _check_dims(ens, povm)
    # Tr[E rho] = sum_ij E_ij rho_ji
    w = np.einsum("yij,xji->xy", povm.elements, ens.states).real
    return np.clip(w, 0.0, None)


def povm_guesswork(ens: Ensemble, povm: POVM) -> float:
    """``G(X | Y_E)``: guess in descending posterior order after observing the outcome."""
    return conditional_guesswork(ens.probs, born_conditional(ens, povm))


def rank_table(outcomes: Sequence[Sequence[int]], n: int) -> np.ndarray:
    """``ranks[k, x-1]`` is the step at which ranking ``outcomes[k]`` guesses label ``x``."""
    ranks = np.empty((len(outcomes), n), dtype=int)
    for k, sigma in enumerate(outcomes):
        if not is_permutation(sigma, n) or len(sigma) != n:
            raise ValidationError(f"outcome {sigma!r} is not a permutation of 1..{n}")
        ranks[k] = invert(sigma)
    return ranks


def ranking_guesswork(ens: Ensemble, povm: POVM) -> float:
    """Mean number of guesses when the outcome is used as-is for the guessing order.

    Equals ``sum_t t * sum_sigma Tr[E_sigma rho_sigma(t)] p(sigma(t))``.
    """
    ranks = rank_table(povm.outcomes, ens.n)
    joint = born_conditional(ens, povm) * ens.probs[:, None]
    return float(np.sum(ranks.T * joint))


def posterior_ranking_povm(ens: Ensemble, povm: POVM) -> POVM:
    """Merge outcomes that induce the same posterior guessing order into one ranking outcome."""
    joint = born_conditional(ens, povm) * ens.probs[:, None]
    merged: dict[tuple[int, ...], np.ndarray] = {}
    for k in range(len(povm)):
        sigma = tuple(int(i) + 1 for i in np.argsort(-joint[:, k], kind="stable"))
        merged[sigma] = merged.get(sigma, 0) + povm.elements[k]
    return POVM(np.stack(list(merged.values())), tuple(merged))


def all_rankings(n: int, n_max: int = N_MAX) -> list[tuple[int, ...]]:
    if n > n_max:
        raise SizeError(f"n = {n} exceeds n_max = {n_max} ({factorial(n)} permutations)")
    return list(permutations(range(1, n + 1)))


def _score_coefficients(rankings: Sequence[Sequence[int]], n: int) -> np.ndarray:
    # coefficient of p(x) rho_x in the score matrix of sigma is 2 sigma^{-1}(x) - n - 1
    return 2.0 * rank_table(rankings, n) - n - 1


def score_matrix(ens: Ensemble, sigma: Sequence[int]) -> np.ndarray:
    """``sum_t (2t - n - 1) p(sigma(t)) rho_sigma(t)``."""
    coeff = _score_coefficients([tuple(sigma)], ens.n)[0]
    return np.einsum("x,xij->ij", coeff, ens.weighted_states())


def score_matrices(ens: Ensemble, rankings: Sequence[Sequence[int]]) -> np.ndarray:
    return np.einsum("kx,xij->kij", _score_coefficients(rankings, ens.n), ens.weighted_states())


def score_trace(p, sigma: Sequence[int]) -> float:
    """Trace of the score matrix, ``2 E[sigma^{-1}(X)] - (n + 1)``, from the prior alone."""
    p = np.asarray(p, dtype=float)
    return float(2 * np.asarray(invert(sigma)) @ p - (len(p) + 1))


class DominanceSearch(NamedTuple):
    sigma_best: tuple[int, ...]
    norm_best: float
    violation: float  # largest negative eigenvalue of |E_best| - |E_sigma| over sigma, as >= 0
    tol: float
    dominant: bool


def _abs_stack(stack: np.ndarray) -> np.ndarray:
    vals, vecs = np.linalg.eigh(stack)
    return (vecs * np.abs(vals)[:, None, :]) @ np.swapaxes(vecs, -1, -2).conj()


def dominance_search(ens: Ensemble, tol: float | None = None, n_max: int = N_MAX) -> DominanceSearch:
    """Pick the ranking with the largest score trace norm and test it for Loewner dominance.

    A Loewner-dominant ``|E_sigma*|`` necessarily has maximal trace, so the maximiser is the
    only candidate worth verifying. Ties go to the lexicographically smallest ranking.
    """
    rankings = all_rankings(ens.n, n_max)
    weighted = ens.weighted_states()
    coeff = _score_coefficients(rankings, ens.n)

    norms = np.empty(len(rankings))
    for lo in range(0, len(rankings), _CHUNK):
        stack = np.einsum("kx,xij->kij", coeff[lo : lo + _CHUNK], weighted)
        norms[lo : lo + _CHUNK] = np.abs(np.linalg.eigvalsh(stack)).sum(axis=1)
    top = norms.max()
    best = int(np.flatnonzero(norms >= top - 1e-12 * (1 + top))[0])
    sigma_best = rankings[best]
    if tol is None:
        tol = DOMINANCE_RTOL * (1 + norms[best])

    abs_best = _abs_stack(np.einsum("x,xij->ij", coeff[best], weighted)[None])[0]
    violation = 0.0
    for lo in range(0, len(rankings), _CHUNK):
        stack = np.einsum("kx,xij->kij", coeff[lo : lo + _CHUNK], weighted)
        gap = abs_best[None] - _abs_stack(stack)
        violation = max(violation, float(-np.linalg.eigvalsh(gap)[:, 0].min()))
    return DominanceSearch(sigma_best, float(norms[best]), violation, float(tol), violation <= tol)


def find_dominant_permutation(ens: Ensemble, tol: float | None = None, n_max: int = N_MAX):
    """Ranking whose score-matrix absolute value dominates all others, or ``None``."""
    search = dominance_search(ens, tol, n_max)
    return search.sigma_best if search.dominant else None


def optimal_povm(ens: Ensemble, sigma_star: Sequence[int], zero_tol: float | None = None) -> POVM:
    """Two-outcome ranking POVM on ``sigma*`` and its reversal.

    ``E_sigma* = Pi_-(S) + Pi_0(S) / 2`` and ``E_rev = Pi_+(S) + Pi_0(S) / 2`` for the score
    matrix ``S`` of ``sigma*``; every other ranking gets the zero element. The second element
    is the negative-part construction applied to ``-S``, taken from the same eigenbasis.
    """
    sigma_star = tuple(int(s) for s in sigma_star)
    if len(sigma_star) != ens.n or not is_permutation(sigma_star):
        raise ValidationError(f"{sigma_star!r} is not a permutation of 1..{ens.n}")
    rev = reverse(sigma_star)
    if rev == sigma_star:
        return POVM(np.eye(ens.dim)[None], (sigma_star,))
    pos, neg, null = projector_parts(score_matrix(ens, sigma_star), zero_tol)
    return POVM(np.stack([neg + null / 2, pos + null / 2]), (sigma_star, rev))
