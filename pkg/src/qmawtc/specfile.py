"""JSON channel specification files.

A spec names the channel kind, its alphabet sizes and output dimensions,
and lists one density matrix per input tuple (row-major over the inputs) as
a flat row-major list of ``[re, im]`` pairs.  An input law and smoothing
parameters are optional.  Floats are written with ``repr`` precision, so a
write-then-read cycle reproduces every entry bit for bit.

Example (a two-input, qubit-output broadcast channel)::

    {
      "schema_version": 1,
      "kind": "qbc",
      "alphabet": [2],
      "dims": [2, 1],
      "outputs": [[[1, 0], [0, 0], [0, 0], [0, 0]],
                  [[0.5, 0], [0, 0], [0, 0], [0.5, 0]]],
      "law": {"p_u": [1.0], "p_x_u": [[0.5, 0.5]]},
      "params": {"eps": 0.1}
    }
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, fields
from pathlib import Path
from typing import Any, Union

import numpy as np

from .channels import CqMaWtc, MacLaw, PpLaw, PpQwtc, Qbc, QbcLaw, QbcPairLaw
from .params import SmoothingParams
from .qstate import StateError, check_density, check_distribution

SCHEMA_VERSION = 1
KINDS = ("mawtc", "ppqwtc", "qbc")

Channel = Union[CqMaWtc, PpQwtc, Qbc]
Law = Union[MacLaw, PpLaw, QbcLaw, QbcPairLaw]


class SpecError(ValueError):
    """A spec file failed validation; ``where`` locates the offending field."""

    def __init__(self, where: str, message: str):
        super().__init__(f"{where}: {message}")
        self.where = where


@dataclass(frozen=True, eq=False)
class ChannelSpec:
    kind: str
    channel: Channel
    law: Law | None = None
    params: SmoothingParams = SmoothingParams()

    @property
    def alphabet(self) -> tuple[int, ...]:
        if isinstance(self.channel, Qbc):
            return (self.channel.size,)
        return tuple(self.channel.sizes)

    @property
    def dims(self) -> tuple[int, int]:
        ch = self.channel
        if isinstance(ch, Qbc):
            return ch.dim_y1, ch.dim_y2
        return ch.dim_y, ch.dim_z

    def resolved_law(self) -> Law:
        """The stated law, or the uniform law on the alphabet."""
        if self.law is not None:
            return self.law
        if self.kind == "mawtc":
            return MacLaw.uniform(*self.alphabet)
        if self.kind == "ppqwtc":
            return PpLaw.uniform(*self.alphabet)
        n = self.alphabet[0]
        return QbcLaw(np.ones(1), np.full((1, n), 1.0 / n))


# --------------------------------------------------------------------------
# reading


def _int_list(v, where: str, length: int) -> list[int]:
    if not isinstance(v, list) or len(v) != length:
        raise SpecError(where, f"expected a list of {length} positive integers")
    out = []
    for i, x in enumerate(v):
        if isinstance(x, bool) or not isinstance(x, int) or x < 1:
            raise SpecError(f"{where}[{i}]", f"expected a positive integer, got {x!r}")
        out.append(x)
    return out


def _number(x, where: str) -> float:
    if isinstance(x, bool) or not isinstance(x, (int, float)) or not math.isfinite(x):
        raise SpecError(where, f"expected a finite number, got {x!r}")
    return float(x)


def _matrix(v, d: int, where: str) -> np.ndarray:
    if not isinstance(v, list) or len(v) != d * d:
        n = len(v) if isinstance(v, list) else type(v).__name__
        raise SpecError(where, f"expected {d * d} [re, im] pairs for a {d}x{d} matrix, got {n}")
    out = np.empty(d * d, dtype=complex)
    for i, pair in enumerate(v):
        if not isinstance(pair, list) or len(pair) != 2:
            raise SpecError(f"{where}[{i}]", f"expected an [re, im] pair, got {pair!r}")
        out[i] = complex(_number(pair[0], f"{where}[{i}][0]"), _number(pair[1], f"{where}[{i}][1]"))
    m = out.reshape(d, d)
    try:
        check_density(m, name="output")
    except StateError as exc:
        raise SpecError(where, str(exc)) from None
    return m


def _vector(v, where: str) -> np.ndarray:
    if not isinstance(v, list) or not v:
        raise SpecError(where, "expected a non-empty list of numbers")
    return np.array([_number(x, f"{where}[{i}]") for i, x in enumerate(v)])


def _dist(v, where: str, size: int | None = None) -> np.ndarray:
    p = _vector(v, where)
    if size is not None and p.size != size:
        raise SpecError(where, f"expected {size} probabilities, got {p.size}")
    try:
        return check_distribution(p, where)
    except StateError as exc:
        raise SpecError(where, str(exc)) from None


def _rows(v, where: str, cols: int) -> np.ndarray:
    if not isinstance(v, list) or not v:
        raise SpecError(where, "expected a non-empty list of probability rows")
    return np.array([_dist(r, f"{where}[{i}]", cols) for i, r in enumerate(v)])


def _law(kind: str, raw: dict, alphabet: list[int]) -> Law:
    if not isinstance(raw, dict):
        raise SpecError("law", "expected an object")
    keys = set(raw)
    try:
        if kind == "mawtc":
            n1, n2 = alphabet
            if keys == {"p_x1", "p_x2"}:
                return MacLaw.independent(_dist(raw["p_x1"], "law.p_x1", n1), _dist(raw["p_x2"], "law.p_x2", n2))
            if keys == {"p_q", "p_x1_q", "p_x2_q"}:
                pq = _dist(raw["p_q"], "law.p_q")
                a = _rows(raw["p_x1_q"], "law.p_x1_q", n1)
                b = _rows(raw["p_x2_q"], "law.p_x2_q", n2)
                if len(a) != pq.size or len(b) != pq.size:
                    raise SpecError("law", "p_x1_q and p_x2_q need one row per time-sharing symbol")
                return MacLaw(pq, a, b)
            raise SpecError("law", "expected keys {p_x1, p_x2} or {p_q, p_x1_q, p_x2_q}")
        if kind == "ppqwtc":
            n1, n2 = alphabet
            if keys != {"p_u1u2"}:
                raise SpecError("law", "expected key p_u1u2")
            rows = raw["p_u1u2"]
            if not isinstance(rows, list) or len(rows) != n1:
                raise SpecError("law.p_u1u2", f"expected {n1} rows")
            p = np.array([_vector(r, f"law.p_u1u2[{i}]") for i, r in enumerate(rows)])
            if p.shape != (n1, n2):
                raise SpecError("law.p_u1u2", f"expected shape ({n1}, {n2}), got {p.shape}")
            return PpLaw(p)
        (n,) = alphabet
        if keys == {"p_u", "p_x_u"}:
            pu = _dist(raw["p_u"], "law.p_u")
            pxu = _rows(raw["p_x_u"], "law.p_x_u", n)
            if len(pxu) != pu.size:
                raise SpecError("law.p_x_u", "need one row per value of U")
            return QbcLaw(pu, pxu)
        if keys == {"p_u", "p_x1_u", "p_x2_ux1"}:
            pu = _dist(raw["p_u"], "law.p_u")
            a = np.array([_vector(r, f"law.p_x1_u[{i}]") for i, r in enumerate(raw["p_x1_u"])])
            b = np.array(raw["p_x2_ux1"], dtype=float)
            law = QbcPairLaw(pu, a, b)
            if law.sizes[1] * law.sizes[2] != n:
                raise SpecError("law", f"pair law enumerates {law.sizes[1] * law.sizes[2]} inputs, alphabet has {n}")
            return law
        raise SpecError("law", "expected keys {p_u, p_x_u} or {p_u, p_x1_u, p_x2_ux1}")
    except (StateError, ValueError) as exc:
        if isinstance(exc, SpecError):
            raise
        raise SpecError("law", str(exc)) from None


_PARAM_NAMES = {f.name for f in fields(SmoothingParams)}


def _params(raw) -> SmoothingParams:
    if not isinstance(raw, dict):
        raise SpecError("params", "expected an object")
    unknown = sorted(set(raw) - _PARAM_NAMES)
    if unknown:
        raise SpecError("params", f"unknown parameter(s) {', '.join(unknown)}")
    return SmoothingParams(**{k: _number(v, f"params.{k}") for k, v in raw.items()})


def spec_from_dict(raw: Any) -> ChannelSpec:
    if not isinstance(raw, dict):
        raise SpecError("<root>", "expected a JSON object")
    allowed = {"schema_version", "kind", "alphabet", "dims", "outputs", "encoding", "law", "params"}
    unknown = sorted(set(raw) - allowed)
    if unknown:
        raise SpecError("<root>", f"unknown field(s) {', '.join(unknown)}")
    for key in ("schema_version", "kind", "alphabet", "dims", "outputs"):
        if key not in raw:
            raise SpecError(key, "required field is missing")
    if raw["schema_version"] != SCHEMA_VERSION:
        raise SpecError("schema_version", f"unsupported version {raw['schema_version']!r} (expected {SCHEMA_VERSION})")
    kind = raw["kind"]
    if kind not in KINDS:
        raise SpecError("kind", f"expected one of {', '.join(KINDS)}, got {kind!r}")
    alphabet = _int_list(raw["alphabet"], "alphabet", 1 if kind == "qbc" else 2)
    dims = _int_list(raw["dims"], "dims", 2)
    d = dims[0] * dims[1]
    n_tuples = int(np.prod(alphabet))
    outs = raw["outputs"]
    if not isinstance(outs, list) or len(outs) != n_tuples:
        n = len(outs) if isinstance(outs, list) else type(outs).__name__
        raise SpecError("outputs", f"alphabet {alphabet} needs {n_tuples} output matrices, got {n}")
    mats = np.array([_matrix(m, d, f"outputs[{i}]") for i, m in enumerate(outs)])

    if kind == "qbc":
        if "encoding" in raw:
            raise SpecError("encoding", "only ppqwtc specs carry an encoding table")
        channel: Channel = Qbc(mats, dims[0], dims[1])
    else:
        table = mats.reshape(alphabet[0], alphabet[1], d, d)
        if kind == "mawtc":
            if "encoding" in raw:
                raise SpecError("encoding", "only ppqwtc specs carry an encoding table")
            channel = CqMaWtc(table, dims[0], dims[1])
        else:
            enc = raw.get("encoding")
            if enc is not None:
                try:
                    enc = np.array(enc, dtype=int).reshape(alphabet[0], alphabet[1])
                except (TypeError, ValueError):
                    raise SpecError("encoding", f"expected an integer table of shape {tuple(alphabet)}") from None
            channel = PpQwtc(table, dims[0], dims[1], enc)
    law = _law(kind, raw["law"], alphabet) if raw.get("law") is not None else None
    params = _params(raw.get("params", {}))
    return ChannelSpec(kind, channel, law, params)


def loads_spec(text: str) -> ChannelSpec:
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SpecError(f"line {exc.lineno} column {exc.colno}", exc.msg) from None
    return spec_from_dict(raw)


def read_spec(path) -> ChannelSpec:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise SpecError(str(path), f"cannot read spec file ({exc.strerror})") from None
    return loads_spec(text)


# --------------------------------------------------------------------------
# writing


def _pairs(m: np.ndarray) -> list[list[float]]:
    return [[float(z.real), float(z.imag)] for z in np.asarray(m).reshape(-1)]


def _law_dict(law: Law) -> dict:
    if isinstance(law, MacLaw):
        return {"p_q": law.p_q.tolist(), "p_x1_q": law.p_x1_q.tolist(), "p_x2_q": law.p_x2_q.tolist()}
    if isinstance(law, PpLaw):
        return {"p_u1u2": law.p_u1u2.tolist()}
    if isinstance(law, QbcPairLaw):
        return {"p_u": law.p_u.tolist(), "p_x1_u": law.p_x1_u.tolist(), "p_x2_ux1": law.p_x2_ux1.tolist()}
    return {"p_u": law.p_u.tolist(), "p_x_u": law.p_x_u.tolist()}


def spec_to_dict(spec: ChannelSpec) -> dict:
    ch = spec.channel
    d = int(np.prod(spec.dims))
    out = {
        "schema_version": SCHEMA_VERSION,
        "kind": spec.kind,
        "alphabet": list(spec.alphabet),
        "dims": list(spec.dims),
        "outputs": [_pairs(m) for m in ch.outputs.reshape(-1, d, d)],
    }
    if isinstance(ch, PpQwtc):
        out["encoding"] = ch.encoding.tolist()
    if spec.law is not None:
        out["law"] = _law_dict(spec.law)
    params = spec.params.as_dict()
    if params:
        out["params"] = params
    return out


def dumps_spec(spec: ChannelSpec) -> str:
    return json.dumps(spec_to_dict(spec), indent=1) + "\n"


def write_spec(spec: ChannelSpec, path) -> None:
    Path(path).write_text(dumps_spec(spec), encoding="utf-8")


def spec_for(channel: Channel, law: Law | None = None, params: SmoothingParams | None = None) -> ChannelSpec:
    kind = {CqMaWtc: "mawtc", PpQwtc: "ppqwtc", Qbc: "qbc"}[type(channel)]
    return ChannelSpec(kind, channel, law, params or SmoothingParams())
