"""Smoothing parameter bundle with independently checkable validity predicates."""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass
from typing import Callable

from .quantities import InvalidParams


@dataclass(frozen=True)
class SmoothingParams:
    """Error and smoothing parameters shared by the rate-region builders.

    Every field is optional; each builder checks only the predicates it needs.
    ``o1`` is the unspecified constant term carried by the second-sender and
    sum-rate secrecy penalties.  ``c`` is the Hayashi-Nagaoka constant used by
    the decoder simulations.
    """

    eps: float | None = None
    delta: float | None = None
    eps_prime: float | None = None
    delta_prime: float | None = None
    eps1: float | None = None
    eps2: float | None = None
    delta1: float | None = None
    delta2: float | None = None
    gamma: float | None = None
    c: float = 1.0
    o1: float = 0.0

    @property
    def eta(self) -> float:
        """Smoothing radius of the leakage terms, ``delta_prime - eps_prime``."""
        self._need("eps_prime", "delta_prime")
        return self.delta_prime - self.eps_prime

    def replace(self, **changes) -> "SmoothingParams":
        d = asdict(self)
        d.update(changes)
        return SmoothingParams(**d)

    def as_dict(self) -> dict:
        return {k: v for k, v in asdict(self).items() if v is not None}

    def _need(self, *names):
        for n in names:
            v = getattr(self, n)
            if v is None:
                raise InvalidParams(f"{n}_present", f"parameter {n} is required")
            if not math.isfinite(v):
                raise InvalidParams(f"{n}_finite", f"parameter {n} must be finite, got {v!r}")

    def check(self, *predicates: str) -> "SmoothingParams":
        """Raise ``InvalidParams`` naming the first failing predicate."""
        for name in predicates:
            try:
                fn = PREDICATES[name]
            except KeyError:
                raise KeyError(f"unknown predicate {name!r}") from None
            ok, message = fn(self)
            if not ok:
                raise InvalidParams(name, message)
        return self

    def violations(self, *predicates: str) -> list[str]:
        bad = []
        for name in predicates:
            try:
                self.check(name)
            except InvalidParams as exc:
                bad.append(exc.predicate)
        return bad


def _open_unit(field_name: str) -> Callable[[SmoothingParams], tuple[bool, str]]:
    def check(p: SmoothingParams):
        p._need(field_name)
        v = getattr(p, field_name)
        return 0.0 < v < 1.0, f"{field_name} must lie in (0, 1), got {v!r}"

    return check


def _eps_prime_below_delta_prime(p: SmoothingParams):
    p._need("eps_prime", "delta_prime")
    return (
        p.delta_prime > 0 and 0.0 < p.eps_prime < p.delta_prime,
        f"need 0 < eps_prime < delta_prime, got eps_prime={p.eps_prime!r}, delta_prime={p.delta_prime!r}",
    )


def _eta_in_unit(p: SmoothingParams):
    eta = p.eta
    return 0.0 < eta < 1.0, f"eta = delta_prime - eps_prime must lie in (0, 1), got {eta!r}"


def _delta_in_eps(p: SmoothingParams):
    p._need("eps", "delta")
    return 0.0 < p.delta <= p.eps, f"need 0 < delta <= eps, got delta={p.delta!r}, eps={p.eps!r}"


def _delta1_in_eps1(p: SmoothingParams):
    p._need("eps1", "delta1")
    return 0.0 < p.delta1 < p.eps1, f"need 0 < delta1 < eps1, got delta1={p.delta1!r}, eps1={p.eps1!r}"


def _delta2_in_eps2(p: SmoothingParams):
    p._need("eps2", "delta2")
    return 0.0 < p.delta2 <= p.eps2, f"need 0 < delta2 <= eps2, got delta2={p.delta2!r}, eps2={p.eps2!r}"


def _sqrt_eps2_exceeds_delta2(p: SmoothingParams):
    p._need("eps2", "delta2")
    r = math.sqrt(p.eps2) - p.delta2
    return 0.0 < r < 1.0, f"sqrt(eps2) - delta2 must lie in (0, 1), got {r!r}"


def _delta_in_sqrt_eps(p: SmoothingParams):
    p._need("eps", "delta")
    return (
        0.0 < p.delta <= math.sqrt(p.eps),
        f"need 0 < delta <= sqrt(eps), got delta={p.delta!r}, eps={p.eps!r}",
    )


def _gamma_in_eps(p: SmoothingParams):
    p._need("eps", "gamma")
    return 0.0 < p.gamma < p.eps, f"need 0 < gamma < eps, got gamma={p.gamma!r}, eps={p.eps!r}"


def _c_positive(p: SmoothingParams):
    return p.c > 0 and math.isfinite(p.c), f"c must be positive, got {p.c!r}"


PREDICATES: dict[str, Callable[[SmoothingParams], tuple[bool, str]]] = {
    "eps_in_unit": _open_unit("eps"),
    "eps1_in_unit": _open_unit("eps1"),
    "eps2_in_unit": _open_unit("eps2"),
    "eps_prime_below_delta_prime": _eps_prime_below_delta_prime,
    "eta_in_unit": _eta_in_unit,
    "delta_in_eps": _delta_in_eps,
    "delta1_in_eps1": _delta1_in_eps1,
    "delta2_in_eps2": _delta2_in_eps2,
    "sqrt_eps2_exceeds_delta2": _sqrt_eps2_exceeds_delta2,
    "delta_in_sqrt_eps": _delta_in_sqrt_eps,
    "gamma_in_eps": _gamma_in_eps,
    "c_positive": _c_positive,
}

SECRECY_MAC = ("eps_in_unit", "eps_prime_below_delta_prime", "eta_in_unit")
SIMULTANEOUS_MAC = SECRECY_MAC + ("delta_in_eps",)
PP_SUCCESSIVE = (
    "eps1_in_unit",
    "eps2_in_unit",
    "delta1_in_eps1",
    "delta2_in_eps2",
    "sqrt_eps2_exceeds_delta2",
)
