"""Density matrices, ensembles, POVMs and Kraus channels, plus seeded random generators.

Labels of an ensemble are the 1-based indices ``1..n``. Matrices are stored as complex
numpy arrays; the dataclasses freeze their arrays after validation.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Hashable, Sequence

import numpy as np

from .errors import ValidationError
from .hermitian import as_hermitian

PSD_TOL = 1e-9
TRACE_TOL = 1e-9
POVM_SUM_TOL = 1e-8
KRAUS_TOL = 1e-8
UNITARY_TOL = 1e-9


def _frozen(a: np.ndarray) -> np.ndarray:
    a = np.array(a, dtype=complex)
    a.setflags(write=False)
    return a


def _psd_violation(stack: np.ndarray) -> float:
    """Most negative eigenvalue across a stack, as a nonnegative violation."""
    return float(max(0.0, -np.linalg.eigvalsh(stack).min()))


def as_density(rho, name: str = "state") -> np.ndarray:
    rho = as_hermitian(rho, name)
    if rho.ndim != 2:
        raise ValidationError(f"{name} must be a single matrix")
    tr = np.trace(rho).real
    if abs(tr - 1) > TRACE_TOL:
        raise ValidationError(f"{name} does not have unit trace (trace = {tr:.12g})")
    neg = _psd_violation(rho)
    if neg > PSD_TOL:
        raise ValidationError(f"{name} is not positive semidefinite (min eigenvalue = {-neg:.3g})")
    return rho


def check_unitary(u, tol: float = UNITARY_TOL) -> np.ndarray:
    u = np.asarray(u, dtype=complex)
    if u.ndim != 2 or u.shape[0] != u.shape[1]:
        raise ValidationError(f"unitary must be square, got shape {u.shape}")
    err = float(np.max(np.abs(u.conj().T @ u - np.eye(len(u)))))
    if err > tol:
        raise ValidationError(f"matrix is not unitary (max |U^dagger U - I| = {err:.3g})")
    return u


@dataclass(frozen=True)
class Ensemble:
    """States ``rho_1..rho_n`` (shape ``(n, d, d)``) with prior ``probs``."""

    states: np.ndarray
    probs: np.ndarray

    def __post_init__(self):
        states = np.asarray(self.states, dtype=complex)
        probs = np.asarray(self.probs, dtype=float)
        if states.ndim != 3:
            raise ValidationError(f"states must have shape (n, d, d), got {states.shape}")
        if probs.ndim != 1 or len(probs) != len(states):
            raise ValidationError(f"{len(states)} states but probs has shape {probs.shape}")
        if len(probs) < 1:
            raise ValidationError("ensemble needs at least one state")
        if np.any(probs < 0) or not np.all(np.isfinite(probs)):
            raise ValidationError("probs must be nonnegative and finite")
        if abs(probs.sum() - 1) > 1e-9:
            raise ValidationError(f"probs do not sum to 1 (sum = {probs.sum():.12g})")
        states = np.stack([as_density(s, f"state {i + 1}") for i, s in enumerate(states)])
        object.__setattr__(self, "states", _frozen(states))
        p = probs.copy()
        p.setflags(write=False)
        object.__setattr__(self, "probs", p)

    @property
    def n(self) -> int:
        return len(self.probs)

    @property
    def dim(self) -> int:
        return self.states.shape[-1]

    def weighted_states(self) -> np.ndarray:
        """``p_X(x) rho_x`` stacked along the first axis."""
        return self.states * self.probs[:, None, None]

    def with_probs(self, probs) -> "Ensemble":
        return Ensemble(self.states, probs)


@dataclass(frozen=True)
class POVM:
    """Measurement elements (shape ``(k, d, d)``) with hashable outcome labels.

    Outcomes are integers for generic measurements or tuples for permutation-indexed
    (ranking) measurements, where ``outcome[t - 1]`` is the label guessed at step ``t``.
    """

    elements: np.ndarray
    outcomes: tuple = field(default=None)

    def __post_init__(self):
        el = as_hermitian(np.asarray(self.elements, dtype=complex), "POVM elements")
        if el.ndim != 3 or len(el) < 1:
            raise ValidationError(f"POVM elements must have shape (k, d, d), got {el.shape}")
        outcomes = self.outcomes
        if outcomes is None:
            outcomes = tuple(range(1, len(el) + 1))
        outcomes = tuple(tuple(o) if isinstance(o, (list, tuple, np.ndarray)) else o for o in outcomes)
        if len(outcomes) != len(el):
            raise ValidationError(f"{len(el)} elements but {len(outcomes)} outcome labels")
        if len(set(outcomes)) != len(outcomes):
            raise ValidationError("POVM outcome labels must be distinct")
        neg = _psd_violation(el)
        if neg > PSD_TOL:
            raise ValidationError(f"POVM element not positive semidefinite (min eigenvalue = {-neg:.3g})")
        err = float(np.max(np.abs(el.sum(axis=0) - np.eye(el.shape[-1]))))
        if err > POVM_SUM_TOL:
            raise ValidationError(f"POVM elements do not sum to identity (max deviation {err:.3g})")
        object.__setattr__(self, "elements", _frozen(el))
        object.__setattr__(self, "outcomes", outcomes)

    @property
    def dim(self) -> int:
        return self.elements.shape[-1]

    def __len__(self) -> int:
        return len(self.elements)

    def element(self, outcome: Hashable) -> np.ndarray:
        """Element for ``outcome``; outcomes absent from the POVM have the zero element."""
        try:
            return self.elements[self.outcomes.index(outcome)]
        except ValueError:
            return np.zeros((self.dim, self.dim), dtype=complex)


@dataclass(frozen=True)
class KrausChannel:
    """CPTP map ``rho -> sum_l V_l rho V_l^dagger`` with ops of shape ``(L, d_out, d_in)``."""

    kraus_ops: np.ndarray

    def __post_init__(self):
        ops = np.asarray(self.kraus_ops, dtype=complex)
        if ops.ndim == 2:
            ops = ops[None]
        if ops.ndim != 3 or len(ops) < 1:
            raise ValidationError(f"Kraus operators must have shape (L, d_out, d_in), got {ops.shape}")
        gram = np.einsum("lji,ljk->ik", ops.conj(), ops)
        err = float(np.max(np.abs(gram - np.eye(ops.shape[-1]))))
        if err > KRAUS_TOL:
            raise ValidationError(f"Kraus operators are not trace preserving (max |sum V^dagger V - I| = {err:.3g})")
        object.__setattr__(self, "kraus_ops", _frozen(ops))

    @property
    def dim_in(self) -> int:
        return self.kraus_ops.shape[2]

    @property
    def dim_out(self) -> int:
        return self.kraus_ops.shape[1]

    def compose(self, first: "KrausChannel") -> "KrausChannel":
        """Channel ``self o first`` (apply ``first``, then ``self``)."""
        if first.dim_out != self.dim_in:
            raise ValidationError("dimension mismatch in channel composition")
        ops = np.einsum("aij,bjk->abik", self.kraus_ops, first.kraus_ops)
        return KrausChannel(ops.reshape(-1, self.dim_out, first.dim_in))


def identity_channel(dim: int) -> KrausChannel:
    return KrausChannel(np.eye(dim)[None])


def unitary_channel(u) -> KrausChannel:
    return KrausChannel(check_unitary(u)[None])


def depolarizing_channel(dim: int) -> KrausChannel:
    """Completely depolarizing channel with Kraus set ``{|i><j| / sqrt(d)}``."""
    ops = np.zeros((dim * dim, dim, dim), dtype=complex)
    for i in range(dim):
        for j in range(dim):
            ops[i * dim + j, i, j] = 1 / np.sqrt(dim)
    return KrausChannel(ops)


def apply_channel(ch: KrausChannel, rho) -> np.ndarray:
    rho = np.asarray(rho, dtype=complex)
    if rho.shape[-1] != ch.dim_in:
        raise ValidationError(f"channel input dim {ch.dim_in} does not match state dim {rho.shape[-1]}")
    v = ch.kraus_ops
    out = np.einsum("lij,...jk,lmk->...im", v, rho, v.conj())
    return (out + np.swapaxes(out, -1, -2).conj()) / 2


def apply_channel_ensemble(ens: Ensemble, ch: KrausChannel) -> Ensemble:
    return Ensemble(apply_channel(ch, ens.states), ens.probs)


def conjugate_ensemble(ens: Ensemble, u) -> Ensemble:
    u = check_unitary(u)
    if len(u) != ens.dim:
        raise ValidationError(f"unitary dim {len(u)} does not match ensemble dim {ens.dim}")
    return Ensemble(u @ ens.states @ u.conj().T, ens.probs)


def pullback_povm(ch: KrausChannel, povm: POVM) -> POVM:
    """Heisenberg-picture POVM ``sum_l V_l^dagger E_y V_l`` on the channel input."""
    if povm.dim != ch.dim_out:
        raise ValidationError(f"POVM dim {povm.dim} does not match channel output dim {ch.dim_out}")
    v = ch.kraus_ops
    el = np.einsum("lji,yjk,lkm->yim", v.conj(), povm.elements, v)
    return POVM(el, povm.outcomes)


def conjugate_povm(povm: POVM, u) -> POVM:
    """``U^dagger E_y U`` for every element."""
    u = check_unitary(u)
    return POVM(u.conj().T @ povm.elements @ u, povm.outcomes)


def average_state(ens: Ensemble) -> np.ndarray:
    return ens.weighted_states().sum(axis=0)


def basis_state(dim: int, k: int) -> np.ndarray:
    rho = np.zeros((dim, dim), dtype=complex)
    rho[k, k] = 1
    return rho


def pure_state(vec) -> np.ndarray:
    v = np.asarray(vec, dtype=complex)
    v = v / np.linalg.norm(v)
    return np.outer(v, v.conj())


# --- random generators ------------------------------------------------------------


def _ginibre(rng: np.random.Generator, rows: int, cols: int) -> np.ndarray:
    return (rng.standard_normal((rows, cols)) + 1j * rng.standard_normal((rows, cols))) / np.sqrt(2)


def _positive(name: str, value: int, minimum: int = 1) -> int:
    if int(value) != value or value < minimum:
        raise ValidationError(f"{name} must be an integer >= {minimum}, got {value}")
    return int(value)


def random_haar_unitary(dim: int, seed=None) -> np.ndarray:
    dim = _positive("dim", dim)
    rng = np.random.default_rng(seed)
    q, r = np.linalg.qr(_ginibre(rng, dim, dim))
    d = np.diag(r)
    return q * (d / np.abs(d))


def random_density(dim: int, rank: int | None = None, seed=None) -> np.ndarray:
    """Ginibre-distributed state ``G G^dagger / Tr(G G^dagger)`` with ``G`` of shape ``(dim, rank)``."""
    dim = _positive("dim", dim)
    rank = dim if rank is None else _positive("rank", rank)
    if rank > dim:
        raise ValidationError(f"rank {rank} exceeds dim {dim}")
    rng = np.random.default_rng(seed)
    g = _ginibre(rng, dim, rank)
    rho = g @ g.conj().T
    rho = rho / np.trace(rho).real
    return (rho + rho.conj().T) / 2


def random_isometry(dim_in: int, dim_out: int, seed=None) -> np.ndarray:
    if dim_out < dim_in:
        raise ValidationError("an isometry needs dim_out >= dim_in")
    rng = np.random.default_rng(seed)
    q, r = np.linalg.qr(_ginibre(rng, dim_out, dim_in))
    d = np.diag(r)
    return q * (d / np.abs(d))


def random_channel(dim: int, kraus_rank: int, seed=None, dim_out: int | None = None) -> KrausChannel:
    """Random channel from a Haar-like isometry ``C^dim -> C^(dim_out * kraus_rank)`` cut into blocks."""
    dim = _positive("dim", dim)
    kraus_rank = _positive("kraus_rank", kraus_rank)
    dim_out = dim if dim_out is None else _positive("dim_out", dim_out)
    if dim_out * kraus_rank < dim:
        raise ValidationError("dim_out * kraus_rank must be at least dim")
    w = random_isometry(dim, dim_out * kraus_rank, seed)
    return KrausChannel(w.reshape(kraus_rank, dim_out, dim))


def inverse_sqrt_psd(s: np.ndarray) -> np.ndarray:
    vals, vecs = np.linalg.eigh(s)
    if vals.min() <= 0:
        raise ValidationError("matrix is singular")
    return (vecs / np.sqrt(vals)) @ vecs.conj().T


def random_povm(dim: int, count: int, seed=None, rank: int | None = None) -> POVM:
    """``count`` random elements ``S^{-1/2} A_y S^{-1/2}`` with ``S = sum_y A_y``."""
    dim = _positive("dim", dim)
    count = _positive("count", count)
    rank = dim if rank is None else _positive("rank", rank)
    if count * rank < dim:
        raise ValidationError("count * rank must be at least dim for the elements to span the space")
    rng = np.random.default_rng(seed)
    a = []
    for _ in range(count):
        g = _ginibre(rng, dim, rank)
        a.append(g @ g.conj().T)
    a = np.stack(a)
    t = inverse_sqrt_psd(a.sum(axis=0))
    el = t @ a @ t
    return POVM((el + np.swapaxes(el, -1, -2).conj()) / 2)


def random_ensemble(dim: int, n: int, seed=None, *, uniform: bool = False, ranks: Sequence[int] | None = None) -> Ensemble:
    """Ensemble of ``n`` Ginibre states with a Dirichlet(1) prior, or the uniform prior.

    When ``ranks`` is omitted each state's rank is drawn uniformly from ``1..dim``.
    """
    rng = np.random.default_rng(seed)
    if ranks is None:
        ranks = rng.integers(1, dim + 1, size=n)
    states = np.stack([random_density(dim, int(r), rng) for r in ranks])
    probs = np.full(n, 1 / n) if uniform else rng.dirichlet(np.ones(n))
    return Ensemble(states, probs)
