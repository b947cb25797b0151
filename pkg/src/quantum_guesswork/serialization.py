"""JSON documents for ensembles, POVMs, channels and guesswork results.

A complex number is ``[re, im]`` and a matrix is a row-major list of rows.
"""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from .errors import ParseError, ValidationError
from .objects import POVM, Ensemble, KrausChannel
from .solver import GuessworkResult


def matrix_to_json(m) -> list:
    m = np.asarray(m, dtype=complex)
    return [[[float(z.real), float(z.imag)] for z in row] for row in m]


def matrix_from_json(data, dim: int | None = None, what: str = "matrix") -> np.ndarray:
    try:
        arr = np.asarray(data, dtype=float)
    except (TypeError, ValueError) as exc:
        raise ParseError(f"{what}: entries must be [re, im] pairs of numbers") from exc
    if arr.ndim != 3 or arr.shape[-1] != 2:
        raise ParseError(f"{what}: expected a list of rows of [re, im] pairs, got shape {arr.shape}")
    if dim is not None and arr.shape[:2] != (dim, dim):
        raise ParseError(f"{what}: expected {dim}x{dim}, got {arr.shape[0]}x{arr.shape[1]}")
    return arr[..., 0] + 1j * arr[..., 1]


def _require(doc, keys, what):
    if not isinstance(doc, dict):
        raise ParseError(f"{what}: expected a JSON object")
    missing = [k for k in keys if k not in doc]
    if missing:
        raise ParseError(f"{what}: missing key(s) {missing}")


def ensemble_to_dict(ens: Ensemble) -> dict:
    return {"dim": ens.dim, "states": [matrix_to_json(s) for s in ens.states], "probs": [float(p) for p in ens.probs]}


def ensemble_from_dict(doc) -> Ensemble:
    """Parse an ensemble document; raises ParseError for shape problems, ValidationError for invariants."""
    _require(doc, ("dim", "states", "probs"), "ensemble")
    dim = doc["dim"]
    if not isinstance(dim, int) or dim < 1:
        raise ParseError("ensemble: dim must be a positive integer")
    if not isinstance(doc["states"], list) or not doc["states"]:
        raise ParseError("ensemble: states must be a non-empty list")
    states = np.stack([matrix_from_json(s, dim, f"state {i + 1}") for i, s in enumerate(doc["states"])])
    try:
        probs = np.asarray(doc["probs"], dtype=float)
    except (TypeError, ValueError) as exc:
        raise ParseError("ensemble: probs must be a list of numbers") from exc
    if probs.shape != (len(states),):
        raise ParseError(f"ensemble: {len(states)} states but {probs.size} probabilities")
    return Ensemble(states, probs)


def povm_to_dict(povm: POVM) -> dict:
    outcomes = [list(o) if isinstance(o, tuple) else o for o in povm.outcomes]
    return {"dim": povm.dim, "outcomes": outcomes, "elements": [matrix_to_json(e) for e in povm.elements]}


def povm_from_dict(doc) -> POVM:
    _require(doc, ("dim", "elements"), "povm")
    elements = np.stack([matrix_from_json(e, doc["dim"], f"element {i + 1}") for i, e in enumerate(doc["elements"])])
    outcomes = doc.get("outcomes")
    if outcomes is not None:
        outcomes = tuple(tuple(o) if isinstance(o, list) else o for o in outcomes)
    return POVM(elements, outcomes)


def channel_to_dict(ch: KrausChannel) -> dict:
    return {"dim_in": ch.dim_in, "dim_out": ch.dim_out, "kraus": [matrix_to_json(v) for v in ch.kraus_ops]}


def channel_from_dict(doc) -> KrausChannel:
    _require(doc, ("kraus",), "channel")
    ops = []
    for i, v in enumerate(doc["kraus"]):
        arr = np.asarray(v, dtype=float)
        if arr.ndim != 3 or arr.shape[-1] != 2:
            raise ParseError(f"channel: Kraus operator {i + 1} has bad shape {arr.shape}")
        ops.append(arr[..., 0] + 1j * arr[..., 1])
    return KrausChannel(np.stack(ops))


def result_to_dict(res: GuessworkResult) -> dict:
    povm = res.povm
    return {
        "value": res.value,
        "method": res.method,
        "sigma_star": list(res.sigma_star) if res.sigma_star is not None else None,
        "bracket": [float(res.bracket[0]), float(res.bracket[1])],
        "povm": povm_to_dict(povm) if povm is not None else None,
        "witness": res.witness,
    }


def result_from_dict(doc) -> GuessworkResult:
    _require(doc, ("value", "method", "sigma_star", "bracket", "povm"), "result")
    povm = povm_from_dict(doc["povm"]) if doc["povm"] is not None else None
    closed = doc["method"] == "closed_form"
    return GuessworkResult(
        value=doc["value"],
        method=doc["method"],
        bracket=tuple(doc["bracket"]),
        sigma_star=tuple(doc["sigma_star"]) if doc["sigma_star"] is not None else None,
        optimal_povm=povm if closed else None,
        witness=doc.get("witness"),
        witness_povm=povm,
    )


def load_json(path) -> object:
    try:
        return json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: invalid JSON ({exc})") from exc
    except OSError as exc:
        raise ParseError(f"{path}: cannot read ({exc.strerror})") from exc


def load_ensemble(path) -> Ensemble:
    return ensemble_from_dict(load_json(path))


def save_ensemble(ens: Ensemble, path) -> None:
    Path(path).write_text(json.dumps(ensemble_to_dict(ens), indent=1) + "\n")

