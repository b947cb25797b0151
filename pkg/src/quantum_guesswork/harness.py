"""Seeded randomized campaigns checking the structural properties of quantum guesswork.

Every check returns a :class:`CheckOutcome`. Equalities report an absolute difference;
inequalities report the signed amount by which the claimed ordering fails, so slack shows up
as a negative violation. Inequalities are asserted exactly only when both sides have a closed
form; otherwise a weaker bracket consistency is checked and the trial counts as a skip.
"""

from __future__ import annotations

import json
import zlib
from dataclasses import asdict, dataclass, field
from math import factorial
from typing import Callable, NamedTuple, Sequence

import numpy as np

from .classical import _images, as_distribution, expected_rank, majorizes
from .engine import all_rankings, povm_guesswork, score_matrices
from .errors import ValidationError
from .objects import (
    Ensemble,
    KrausChannel,
    POVM,
    apply_channel_ensemble,
    conjugate_ensemble,
    conjugate_povm,
    pullback_povm,
    random_channel,
    random_density,
    random_ensemble,
    random_haar_unitary,
    random_povm,
    unitary_channel,
)
from .entropy import guesswork_lower_bound
from .solver import GuessworkResult, closed_form_guesswork

PASS, FAIL, SKIP = "pass", "fail", "skip"


class CheckOutcome(NamedTuple):
    status: str
    violation: float | None
    reason: str | None = None
    detail: tuple = ()


def _judge(violation: float, tol: float, detail: tuple = ()) -> CheckOutcome:
    return CheckOutcome(PASS if violation <= tol else FAIL, float(violation), None, detail)


# --- equality checks ---------------------------------------------------------------


def check_unitary_pullback(ens: Ensemble, u, povm: POVM, tol: float = 1e-8, closed_form: bool = True) -> CheckOutcome:
    """``G(U E U^dagger, E) == G(E, U^dagger E U)``, plus closed-form invariance when available."""
    transformed = conjugate_ensemble(ens, u)
    violation = abs(povm_guesswork(transformed, povm) - povm_guesswork(ens, conjugate_povm(povm, u)))
    detail = ()
    if closed_form:
        a, b = _exact(ens), _exact(transformed)
        if a is not None and b is not None:
            violation = max(violation, abs(a - b))
            detail = (a, b)
    return _judge(violation, tol, detail)


def check_channel_pullback(ens: Ensemble, ch: KrausChannel, povm: POVM, tol: float = 1e-8) -> CheckOutcome:
    """``G(N(E), E) == G(E, N~(E))`` with ``N~`` the Heisenberg-picture pullback."""
    lhs = povm_guesswork(apply_channel_ensemble(ens, ch), povm)
    rhs = povm_guesswork(ens, pullback_povm(ch, povm))
    return _judge(abs(lhs - rhs), tol, (lhs, rhs))


# --- inequality checks -------------------------------------------------------------


def _exact(ens: Ensemble) -> float | None:
    return closed_form_guesswork(ens, trial_povms=0).value


def _solve(ens: Ensemble, trial_povms: int, seed) -> GuessworkResult:
    return closed_form_guesswork(ens, trial_povms=trial_povms, seed=seed)


def check_ordered(smaller: Ensemble, larger: Ensemble, tol: float = 1e-8, trial_povms: int = 8, seed=0) -> CheckOutcome:
    """Check ``G(smaller) <= G(larger)``.

    With both closed forms the inequality itself is asserted. Otherwise the trial is a skip
    unless even ``lower(smaller) <= upper(larger)`` fails, which is a genuine failure.
    """
    a = _solve(smaller, trial_povms, seed)
    b = _solve(larger, trial_povms, seed)
    if a.value is not None and b.value is not None:
        return _judge(a.value - b.value, tol, (a.value, b.value))
    gap = a.bracket[0] - b.bracket[1]
    if gap > tol:
        return CheckOutcome(FAIL, gap, "bracket_inconsistent", (a.bracket, b.bracket))
    return CheckOutcome(SKIP, None, "no_closed_form", (a.bracket, b.bracket))


def check_post_dpi(ens: Ensemble, ch: KrausChannel, tol: float = 1e-8, **kw) -> CheckOutcome:
    """``G(X|E) <= G(X|N(E))``."""
    return check_ordered(ens, apply_channel_ensemble(ens, ch), tol, **kw)


def check_unitary_via_post_dpi(ens: Ensemble, u, tol: float = 1e-8, **kw) -> CheckOutcome:
    """Unitary invariance from post-DPI applied with ``U`` and then with ``U^dagger``."""
    u = np.asarray(u, dtype=complex)
    forward = check_post_dpi(ens, unitary_channel(u), tol, **kw)
    transformed = conjugate_ensemble(ens, u)
    back = check_post_dpi(transformed, unitary_channel(u.conj().T), tol, **kw)
    outcomes = (forward, back)
    if any(o.status == FAIL for o in outcomes):
        worst = max((o for o in outcomes if o.status == FAIL), key=lambda o: o.violation)
        return worst
    if any(o.status == SKIP for o in outcomes):
        return CheckOutcome(SKIP, None, "no_closed_form")
    return _judge(max(forward.violation, back.violation), tol)


def merge_labels(ens: Ensemble, f, size: int | None = None) -> Ensemble:
    """Ensemble of ``Z = f(X)`` with states ``sum_{f(x)=z} p(x) rho_x / p(z)``.

    Images without preimage mass get the maximally mixed state and zero probability.
    """
    images = np.asarray(_images(f, ens.n)) - 1
    m = int(images.max()) + 1 if size is None else size
    probs = np.zeros(m)
    np.add.at(probs, images, ens.probs)
    sums = np.zeros((m, ens.dim, ens.dim), dtype=complex)
    np.add.at(sums, images, ens.weighted_states())
    states = np.empty_like(sums)
    for z in range(m):
        states[z] = sums[z] / probs[z] if probs[z] > 0 else np.eye(ens.dim) / ens.dim
    return Ensemble(states, probs / probs.sum())


def check_pre_dpi(ens: Ensemble, target, tol: float = 1e-8, **kw) -> CheckOutcome:
    """``G(Z|E) <= G(X|E)`` for a majorizing prior ``p_Z`` (array) or a label map ``f``.

    An array ``target`` replaces the prior over the same states and must majorize ``p_X``.
    A callable or integer sequence of images is treated as a function of the label.
    """
    if callable(target) or np.asarray(target).dtype.kind in "iu":
        other = merge_labels(ens, target)
    else:
        q = as_distribution(target, "p_Z")
        if len(q) != ens.n:
            raise ValidationError("p_Z must have one entry per state")
        if not majorizes(q, ens.probs):
            raise ValidationError("p_Z does not majorize p_X")
        other = ens.with_probs(q)
    return check_ordered(other, ens, tol, **kw)


def check_entropy_bound(ens: Ensemble, tol: float = 1e-9, trial_povms: int = 8, seed=0) -> CheckOutcome:
    """Margin ``G - max(1, 2^(H - chi)/e + 1/2)``; reported violation is the negated margin."""
    res = _solve(ens, trial_povms, seed)
    if res.value is None:
        lo, hi = res.bracket
        if lo - hi > tol:
            return CheckOutcome(FAIL, lo - hi, "bracket_inconsistent", res.bracket)
        return CheckOutcome(SKIP, None, "no_closed_form", res.bracket)
    margin = res.value - guesswork_lower_bound(ens)
    return _judge(-margin, tol, (res.value, margin))


# --- identities ----------------------------------------------------------------------


def check_score_sum_zero(ens: Ensemble, tol: float = 1e-9) -> CheckOutcome:
    total = score_matrices(ens, all_rankings(ens.n)).sum(axis=0)
    return _judge(float(np.max(np.abs(total))), tol)


def trace_monotone_triple(seed=None, dim: int = 2):
    """``(A, X, Y)`` with ``A >= 0`` and ``0 <= X <= Y`` in the Loewner order."""
    rng = np.random.default_rng(seed)
    scale = rng.exponential(size=3)
    a = scale[0] * random_density(dim, int(rng.integers(1, dim + 1)), rng)
    x = scale[1] * random_density(dim, int(rng.integers(1, dim + 1)), rng)
    y = x + scale[2] * random_density(dim, int(rng.integers(1, dim + 1)), rng)
    return a, x, y


def check_trace_monotone(seed=None, dim: int = 2, tol: float = 1e-9, triple=None) -> CheckOutcome:
    """``Tr[A X] <= Tr[A Y]`` on a generated (or given) triple."""
    a, x, y = trace_monotone_triple(seed, dim) if triple is None else triple
    lhs = np.trace(a @ x).real
    rhs = np.trace(a @ y).real
    return _judge(lhs - rhs, tol, (lhs, rhs))


def permutation_sum(p) -> float:
    """``sum_{sigma in S_n} E[sigma(X)]`` by enumeration."""
    p = as_distribution(p)
    return sum(expected_rank(p, sigma) for sigma in all_rankings(len(p), n_max=10))


def check_permutation_identity(p, tol: float = 1e-6) -> CheckOutcome:
    n = len(p)
    return _judge(abs(permutation_sum(p) - factorial(n + 1) / 2), tol)


# --- campaigns -----------------------------------------------------------------------


@dataclass(frozen=True)
class Tolerances:
    pullback: float = 1e-8
    inequality: float = 1e-8
    entropy: float = 1e-9
    lemma: float = 1e-9
    identity: float = 1e-6


@dataclass(frozen=True)
class SuiteConfig:
    seed: int = 0
    trials: int = 1000
    dims: tuple[int, ...] = (2,)
    n_values: tuple[int, ...] = (2, 3)
    channel_dims: tuple[int, ...] = (2, 3, 4)
    tolerances: Tolerances = field(default_factory=Tolerances)
    uniform_fraction: float = 0.9
    trial_povms: int = 8
    properties: tuple[str, ...] | None = None

    def __post_init__(self):
        if self.trials < 0:
            raise ValidationError("trials must be nonnegative")
        for name in ("dims", "n_values", "channel_dims"):
            values = getattr(self, name)
            if not values or any(int(v) != v or v < 1 for v in values):
                raise ValidationError(f"{name} must be a non-empty tuple of positive integers")
        if any(v < 2 for v in self.n_values):
            raise ValidationError("n_values must be >= 2")
        if not 0 <= self.uniform_fraction <= 1:
            raise ValidationError("uniform_fraction must lie in [0, 1]")
        if self.properties is not None:
            unknown = set(self.properties) - set(CAMPAIGNS)
            if unknown:
                raise ValidationError(f"unknown properties: {sorted(unknown)}")


@dataclass
class TrialReport:
    property_name: str
    trials: int
    passes: int
    failures: int
    skips: int
    skip_reasons: dict[str, int]
    worst_violation: float | None
    tolerance: float
    seed: int

    @property
    def passed(self) -> bool:
        return self.failures == 0

    @property
    def skip_rate(self) -> float:
        return self.skips / self.trials if self.trials else 0.0

    def to_json(self) -> str:
        return json.dumps({**asdict(self), "passed": self.passed})

    @classmethod
    def from_json(cls, line: str) -> "TrialReport":
        data = json.loads(line)
        data.pop("passed", None)
        return cls(**data)


def trial_rng(seed: int, name: str, trial: int) -> np.random.Generator:
    """Generator for one trial, derived from ``(seed, campaign, trial)`` only."""
    return np.random.default_rng(np.random.SeedSequence([seed, zlib.crc32(name.encode()), trial]))


def robin_hood_inverse(p, rng, steps: int = 3) -> np.ndarray:
    """Majorizing distribution: repeatedly move a random share of a smaller entry to a larger one."""
    q = np.array(p, dtype=float)
    if len(q) < 2:
        return q
    for _ in range(steps):
        i, j = rng.choice(len(q), 2, replace=False)
        if q[i] < q[j]:
            i, j = j, i
        amount = rng.uniform(0, q[j])
        q[i] += amount
        q[j] -= amount
    return q


def _pick(rng, values) -> int:
    return int(values[rng.integers(len(values))])


def _ensemble(cfg: SuiteConfig, rng, dims=None, uniform=None) -> Ensemble:
    if uniform is None:
        uniform = bool(rng.random() < cfg.uniform_fraction)
    return random_ensemble(_pick(rng, dims or cfg.dims), _pick(rng, cfg.n_values), rng, uniform=uniform)


def _unitary_pullback(cfg, rng):
    d = _pick(rng, cfg.channel_dims)
    ens = _ensemble(cfg, rng, dims=(d,), uniform=False)
    povm = random_povm(d, int(rng.integers(2, 5)), rng)
    return check_unitary_pullback(ens, random_haar_unitary(d, rng), povm, cfg.tolerances.pullback, closed_form=False)


def _unitary_closed_form(cfg, rng):
    ens = _ensemble(cfg, rng, dims=(2,), uniform=True)
    u = random_haar_unitary(2, rng)
    a, b = _exact(ens), _exact(conjugate_ensemble(ens, u))
    if a is None or b is None:
        return CheckOutcome(SKIP, None, "no_closed_form")
    return _judge(abs(a - b), cfg.tolerances.pullback, (a, b))


def _unitary_via_post_dpi(cfg, rng):
    ens = _ensemble(cfg, rng, dims=(2,))
    return check_unitary_via_post_dpi(ens, random_haar_unitary(2, rng), cfg.tolerances.inequality, trial_povms=cfg.trial_povms, seed=rng.integers(2**32))


def _channel_pullback(cfg, rng):
    d_in, d_out = _pick(rng, cfg.channel_dims), _pick(rng, cfg.channel_dims)
    ens = _ensemble(cfg, rng, dims=(d_in,), uniform=False)
    k_min = -(-d_in // d_out)
    ch = random_channel(d_in, int(rng.integers(k_min, k_min + 3)), rng, dim_out=d_out)
    povm = random_povm(d_out, int(rng.integers(2, 5)), rng)
    return check_channel_pullback(ens, ch, povm, cfg.tolerances.pullback)


def _post_dpi(cfg, rng):
    ens = _ensemble(cfg, rng, dims=(2,))
    ch = random_channel(2, int(rng.integers(1, 4)), rng)
    return check_post_dpi(ens, ch, cfg.tolerances.inequality, trial_povms=cfg.trial_povms, seed=rng.integers(2**32))


def _pre_dpi_majorization(cfg, rng):
    ens = _ensemble(cfg, rng, uniform=False)
    q = robin_hood_inverse(ens.probs, rng, steps=int(rng.integers(1, 4)))
    return check_pre_dpi(ens, q, cfg.tolerances.inequality, trial_povms=cfg.trial_povms, seed=rng.integers(2**32))


def _pre_dpi_merge(cfg, rng):
    ens = _ensemble(cfg, rng)
    m = int(rng.integers(1, ens.n + 1))
    f = [int(v) for v in rng.integers(1, m + 1, size=ens.n)]
    return check_pre_dpi(ens, f, cfg.tolerances.inequality, trial_povms=cfg.trial_povms, seed=rng.integers(2**32))


def _entropy_bound(cfg, rng):
    # populations with a guaranteed closed form: uniform qubits, or any two-state ensemble
    if rng.random() < 0.5:
        ens = _ensemble(cfg, rng, dims=(2,), uniform=True)
    else:
        ens = random_ensemble(_pick(rng, cfg.channel_dims), 2, rng)
    return check_entropy_bound(ens, cfg.tolerances.entropy, trial_povms=cfg.trial_povms, seed=rng.integers(2**32))


def _score_sum_zero(cfg, rng):
    ens = random_ensemble(_pick(rng, cfg.channel_dims), int(rng.integers(2, 6)), rng)
    return check_score_sum_zero(ens, cfg.tolerances.lemma)


def _trace_monotone(cfg, rng):
    return check_trace_monotone(rng, _pick(rng, cfg.channel_dims), cfg.tolerances.lemma)


def _permutation_identity(cfg, rng):
    n = int(rng.integers(1, 7))
    return check_permutation_identity(rng.dirichlet(np.ones(n)), cfg.tolerances.identity)


Campaign = Callable[[SuiteConfig, np.random.Generator], CheckOutcome]

CAMPAIGNS: dict[str, tuple[Campaign, str]] = {
    "unitary_pullback": (_unitary_pullback, "pullback"),
    "unitary_closed_form": (_unitary_closed_form, "pullback"),
    "unitary_via_post_dpi": (_unitary_via_post_dpi, "inequality"),
    "channel_pullback": (_channel_pullback, "pullback"),
    "post_dpi": (_post_dpi, "inequality"),
    "pre_dpi_majorization": (_pre_dpi_majorization, "inequality"),
    "pre_dpi_merge": (_pre_dpi_merge, "inequality"),
    "entropy_bound": (_entropy_bound, "entropy"),
    "score_sum_zero": (_score_sum_zero, "lemma"),
    "trace_monotone": (_trace_monotone, "lemma"),
    "permutation_identity": (_permutation_identity, "identity"),
}


def run_campaign(name: str, cfg: SuiteConfig, trials: int | None = None) -> TrialReport:
    fn, tol_name = CAMPAIGNS[name]
    trials = cfg.trials if trials is None else trials
    passes = failures = skips = 0
    reasons: dict[str, int] = {}
    worst = None
    for t in range(trials):
        out = fn(cfg, trial_rng(cfg.seed, name, t))
        if out.status == SKIP:
            skips += 1
            reasons[out.reason] = reasons.get(out.reason, 0) + 1
        elif out.status == PASS:
            passes += 1
        else:
            failures += 1
        if out.violation is not None:
            worst = out.violation if worst is None else max(worst, out.violation)
    return TrialReport(name, trials, passes, failures, skips, reasons, worst, getattr(cfg.tolerances, tol_name), cfg.seed)


def run_suite(cfg: SuiteConfig | None = None) -> list[TrialReport]:
    cfg = cfg or SuiteConfig()
    names: Sequence[str] = cfg.properties or tuple(CAMPAIGNS)
    return [run_campaign(name, cfg) for name in names]
