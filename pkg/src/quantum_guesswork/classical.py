"""Classical guesswork, guessing orders, majorization and Shannon entropy.

Permutations use two conventions, both 1-based tuples:

* a *guessing order* ``tau`` maps a label to its rank (``tau[i-1]`` is the rank of label ``i``);
* a *ranking* ``sigma`` maps a rank to a label (``sigma[t-1]`` is the ``t``-th guess).

They are inverse to each other.
"""

from __future__ import annotations

from typing import Callable, Sequence

import numpy as np

from .errors import ValidationError

PROB_TOL = 1e-9


def as_distribution(p, name: str = "distribution") -> np.ndarray:
    p = np.asarray(p, dtype=float)
    if p.ndim != 1 or len(p) == 0:
        raise ValidationError(f"{name} must be a non-empty vector")
    if np.any(p < -PROB_TOL) or not np.all(np.isfinite(p)):
        raise ValidationError(f"{name} has negative or non-finite entries")
    if abs(p.sum() - 1) > PROB_TOL:
        raise ValidationError(f"{name} does not sum to 1 (sum = {p.sum():.12g})")
    return np.clip(p, 0, None)


def descending_labels(p) -> np.ndarray:
    """0-based label indices by descending probability; ties keep the lower index first."""
    return np.argsort(-np.asarray(p, dtype=float), kind="stable")


def guesswork(p) -> float:
    p = as_distribution(p)
    return float(np.sort(p)[::-1] @ np.arange(1, len(p) + 1))


def guessing_order(p) -> tuple[int, ...]:
    """Rank of each label under the optimal (descending-probability) strategy."""
    p = as_distribution(p)
    tau = np.empty(len(p), dtype=int)
    tau[descending_labels(p)] = np.arange(1, len(p) + 1)
    return tuple(int(t) for t in tau)


def invert(perm: Sequence[int]) -> tuple[int, ...]:
    inv = [0] * len(perm)
    for i, v in enumerate(perm, start=1):
        inv[v - 1] = i
    return tuple(inv)


def reverse(sigma: Sequence[int]) -> tuple[int, ...]:
    """The reversed ranking ``sigma_bar(t) = sigma(n + 1 - t)``."""
    return tuple(sigma[::-1])


def is_permutation(perm, n: int | None = None) -> bool:
    try:
        values = sorted(int(v) for v in perm)
    except TypeError:
        return False
    size = len(values) if n is None else n
    return values == list(range(1, size + 1))


def expected_rank(p, tau: Sequence[int]) -> float:
    """``sum_i tau(i) p(i)``: mean number of guesses when label ``i`` is guessed at step ``tau(i)``."""
    return float(np.asarray(tau, dtype=float) @ np.asarray(p, dtype=float))


def conditional_guesswork(p_x, p_y_given_x) -> float:
    """``sum_y p_Y(y) G(X | Y = y)`` for a channel with rows ``p(y | x)``."""
    p_x = as_distribution(p_x, "p_X")
    w = np.asarray(p_y_given_x, dtype=float)
    if w.ndim != 2 or w.shape[0] != len(p_x):
        raise ValidationError(f"channel must have shape ({len(p_x)}, m), got {w.shape}")
    if np.any(w < -PROB_TOL) or np.max(np.abs(w.sum(axis=1) - 1)) > PROB_TOL:
        raise ValidationError("rows of the channel must be probability distributions")
    # joint[x, y] = p(x) p(y|x); sorting each column descending gives p_Y(y) * posterior
    joint = np.clip(w, 0, None) * p_x[:, None]
    ranked = -np.sort(-joint, axis=0)
    return float(np.arange(1, len(p_x) + 1) @ ranked.sum(axis=1))


def majorizes(q, p, tol: float = 1e-12) -> bool:
    """True iff ``q`` majorizes ``p`` (shorter vector zero-padded)."""
    q = np.asarray(q, dtype=float)
    p = np.asarray(p, dtype=float)
    size = max(len(p), len(q))
    q = np.pad(q, (0, size - len(q)))
    p = np.pad(p, (0, size - len(p)))
    cq = np.cumsum(np.sort(q)[::-1])
    cp = np.cumsum(np.sort(p)[::-1])
    return bool(np.all(cq >= cp - tol))


def shannon_entropy(p) -> float:
    p = as_distribution(p)
    nz = p[p > 0]
    return float(-(nz * np.log2(nz)).sum()) + 0.0


def pushforward(p, f: Callable[[int], int] | Sequence[int], size: int | None = None) -> np.ndarray:
    """Distribution of ``f(X)`` on labels ``1..size``.

    ``f`` is a callable or a sequence with ``f[x-1]`` the image of label ``x``; images are
    1-based. ``size`` defaults to the largest image.
    """
    p = as_distribution(p)
    images = _images(f, len(p))
    size = max(images) if size is None else size
    out = np.zeros(size)
    np.add.at(out, np.asarray(images) - 1, p)
    return out


def _images(f, n: int) -> list[int]:
    images = [int(f(x)) for x in range(1, n + 1)] if callable(f) else [int(v) for v in f]
    if len(images) != n or min(images) < 1:
        raise ValidationError("f must map every label 1..n to a positive label")
    return images


def rioul_bound(entropy_bits: float) -> float:
    """Lower bound ``2^H / e + 1/2`` on guesswork from an entropy in bits."""
    return 2.0**entropy_bits / np.e + 0.5
