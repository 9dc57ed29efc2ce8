"""Command-line front end.

Every command reads a JSON channel spec, validates all inputs, computes, and
only then writes a CSV report: ``#`` lines echo the command and parameters,
followed by a header row and the result rows.  Warnings go to stderr.
Exit status is 0 on success, 1 on invalid input and 2 on a numeric failure
(non-convergence or an exceeded dimension cap); errors print a single line
prefixed ``error[validation]:`` or ``error[numeric]:``.
"""

from __future__ import annotations

import argparse
import csv
import io
import math
import sys
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from . import __version__
from . import decoders as dec
from . import quantities as qt
from . import regions as rg
from .channels import (
    MacLaw,
    PpLaw,
    PpQwtc,
    QbcLaw,
    QbcPairLaw,
    control_state_mawtc,
    control_state_ppqwtc,
    control_state_qbc,
    mawtc_to_ppqwtc,
)
from .params import PP_SUCCESSIVE, SECRECY_MAC, SIMULTANEOUS_MAC, SmoothingParams
from .qstate import StateError, trace_out
from .specfile import ChannelSpec, SpecError, read_spec


class ValidationError(ValueError):
    pass


# --------------------------------------------------------------------------
# reports


def fmt(v) -> str:
    """Deterministic text for a CSV cell; floats keep full precision."""
    if isinstance(v, (bool, np.bool_)):
        return "true" if v else "false"
    if isinstance(v, (float, np.floating)):
        v = float(v)
        if math.isnan(v):
            return "nan"
        if math.isinf(v):
            return "inf" if v > 0 else "-inf"
        return repr(v + 0.0)
    if v is None:
        return ""
    return str(v)


def write_csv(header, rows, echo=()) -> str:
    buf = io.StringIO()
    for line in echo:
        buf.write(f"# {line}\n")
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for r in rows:
        w.writerow([fmt(r.get(h)) for h in header])
    return buf.getvalue()


@dataclass
class RunReport:
    command: str
    params: dict
    header: list
    rows: list
    warnings: list = field(default_factory=list)
    extra_files: dict = field(default_factory=dict)

    def render(self) -> str:
        echo = [f"qmawtc {__version__} {self.command}"]
        echo += [f"{k}={fmt(v)}" for k, v in sorted(self.params.items())]
        return write_csv(self.header, self.rows, echo)


# --------------------------------------------------------------------------
# argument helpers


def _labels(text: str | None, name: str) -> list[str]:
    if text is None or not text.strip():
        return []
    out = [t.strip() for t in text.split(",")]
    if any(not t for t in out):
        raise ValidationError(f"--{name}: empty register label in {text!r}")
    return out


def _ints(text: str, name: str, length: int | None = None) -> list[int]:
    try:
        out = [int(t) for t in text.split(",")]
    except ValueError:
        raise ValidationError(f"--{name}: expected comma-separated integers, got {text!r}") from None
    if length is not None and len(out) != length:
        raise ValidationError(f"--{name}: expected {length} integers, got {len(out)}")
    return out


PARAM_FLAGS = ("eps", "delta", "eps_prime", "delta_prime", "eps1", "eps2", "delta1", "delta2", "gamma", "c", "o1")


def _params(spec: ChannelSpec, args) -> SmoothingParams:
    changes = {k: getattr(args, k) for k in PARAM_FLAGS if getattr(args, k, None) is not None}
    return spec.params.replace(**changes)


def _check(params: SmoothingParams, *predicates: str):
    params.check(*predicates)


def _need_kind(spec: ChannelSpec, kinds: tuple[str, ...], what: str):
    if spec.kind not in kinds:
        raise ValidationError(f"{what} needs a {' or '.join(kinds)} spec, got {spec.kind}")


def _mac_single(law: MacLaw, what: str) -> MacLaw:
    if law.sizes[0] != 1:
        raise ValidationError(f"{what} requires a law without time sharing (|Q| = 1)")
    return law


def _as_pp(spec: ChannelSpec, what: str) -> tuple[PpQwtc, PpLaw]:
    """Point-to-point view of the spec; a MAC spec maps its input pair to the auxiliary pair."""
    _need_kind(spec, ("ppqwtc", "mawtc"), what)
    law = spec.resolved_law()
    if spec.kind == "ppqwtc":
        return spec.channel, law
    _mac_single(law, what)
    return mawtc_to_ppqwtc(spec.channel), PpLaw(np.outer(law.p_x1_q[0], law.p_x2_q[0]))


def control_state(spec: ChannelSpec):
    law = spec.resolved_law()
    if spec.kind == "mawtc":
        return control_state_mawtc(spec.channel, law)
    if spec.kind == "ppqwtc":
        return control_state_ppqwtc(spec.channel, law)
    return control_state_qbc(spec.channel, law)


# --------------------------------------------------------------------------
# quantity


MI_QUANTITIES = {
    "H": "von Neumann entropy H(A|Z)",
    "I": "mutual information I(A;B|Z)",
    "I_H": "hypothesis-testing mutual information I_H^eps(A;B|Z)",
    "I_max": "max-information I_max(A;B)",
    "I_max_smooth": "smooth max-information I_max^eps(A;B|Z)",
    "I_alt": "smooth max-information with the B marginal fixed and A smoothed",
}
OUTPUT_QUANTITIES = {
    "D": "relative entropy D(rho||sigma)",
    "D_H": "hypothesis-testing relative entropy D_H^eps(rho||sigma)",
    "D_max": "max-relative entropy D_max(rho||sigma)",
    "D_max_smooth": "smooth max-relative entropy D_max^eps(rho||sigma)",
}
NEEDS_EPS = {"I_H", "I_max_smooth", "I_alt", "D_H", "D_max_smooth"}


def _output_operator(spec: ChannelSpec, tuple_text: str, system: str, name: str) -> np.ndarray:
    idx = _ints(tuple_text, name, len(spec.alphabet))
    for i, (v, n) in enumerate(zip(idx, spec.alphabet)):
        if not 0 <= v < n:
            raise ValidationError(f"--{name}: input {i} = {v} outside alphabet of size {n}")
    flat = int(np.ravel_multi_index(tuple(idx), spec.alphabet))
    d1, d2 = spec.dims
    op = spec.channel.outputs.reshape(-1, d1 * d2, d1 * d2)[flat]
    names = ("Y1", "Y2") if spec.kind == "qbc" else ("Y", "Z")
    if system == names[0]:
        return trace_out(op, [d1, d2], [1])
    if system == names[1]:
        return trace_out(op, [d1, d2], [0])
    if system == names[0] + names[1]:
        return op
    raise ValidationError(f"--system must be one of {names[0]}, {names[1]}, {names[0] + names[1]}; got {system!r}")


def cmd_quantity(spec: ChannelSpec, args) -> RunReport:
    name = args.name
    params = _params(spec, args)
    if name not in MI_QUANTITIES and name not in OUTPUT_QUANTITIES:
        known = ", ".join(list(MI_QUANTITIES) + list(OUTPUT_QUANTITIES))
        raise ValidationError(f"unknown quantity {name!r}; expected one of {known}")
    if name in NEEDS_EPS:
        _check(params, "eps_in_unit")
    eps = params.eps
    echo = {"spec": args.spec, "quantity": name}
    if name in NEEDS_EPS:
        echo["eps"] = eps

    if name in OUTPUT_QUANTITIES:
        if args.rho is None or args.sigma is None:
            raise ValidationError(f"{name} needs --rho and --sigma input tuples")
        system = args.system or ("Y1" if spec.kind == "qbc" else "Y")
        rho = _output_operator(spec, args.rho, system, "rho")
        sigma = _output_operator(spec, args.sigma, system, "sigma")
        echo.update(rho=args.rho, sigma=args.sigma, system=system)
        fns: dict[str, Callable[[], float]] = {
            "D": lambda: qt.relative_entropy(rho, sigma),
            "D_H": lambda: qt.hypothesis_testing_relative_entropy(rho, sigma, eps)[0],
            "D_max": lambda: qt.max_relative_entropy(rho, sigma),
            "D_max_smooth": lambda: qt.smooth_max_relative_entropy(rho, sigma, eps),
        }
        value = fns[name]()
        row = {"quantity": name, "a": "", "b": "", "z": "", "value": value, "definition": OUTPUT_QUANTITIES[name]}
        return RunReport("quantity", echo, ["quantity", "a", "b", "z", "value", "definition"], [row])

    s = control_state(spec)
    a, b, z = _labels(args.a, "a"), _labels(args.b, "b"), _labels(args.z, "z")
    for lab in a + b + z:
        if lab not in s.labels:
            raise ValidationError(f"unknown register {lab!r}; this spec has {', '.join(s.labels)}")
    if not a:
        raise ValidationError(f"{name} needs --a")
    if name != "H" and not b:
        raise ValidationError(f"{name} needs --b")
    if len(set(a + b + z)) != len(a + b + z):
        raise ValidationError("register lists --a, --b and --z must be disjoint")
    for lab in z:
        if not s.register(lab).classical:
            raise ValidationError(f"conditioning register {lab!r} must be classical")
    if name == "I_max" and z:
        raise ValidationError("I_max is unconditional; drop --z")

    if name == "H":
        value = qt.conditional_entropy(s, a, z) if z else qt.von_neumann_entropy(s, a)
    elif name == "I":
        value = qt.conditional_mutual_information(s, a, b, z) if z else qt.mutual_information(s, a, b)
    elif name == "I_H":
        value = qt.conditional_hypothesis_testing_mi(s, a, b, z, eps) if z else qt.hypothesis_testing_mi(s, a, b, eps)
    elif name == "I_max":
        value = qt.max_mi(s, a, b)
    elif name == "I_max_smooth":
        value = qt.conditional_smooth_max_mi(s, a, b, z, eps) if z else qt.smooth_max_mi(s, a, b, eps)
    else:
        value = qt.conditional_alt_smooth_max_mi(s, a, b, z, eps) if z else qt.alt_smooth_max_mi(s, a, b, eps)
    row = {
        "quantity": name, "a": " ".join(a), "b": " ".join(b), "z": " ".join(z),
        "value": value, "definition": MI_QUANTITIES[name],
    }
    return RunReport("quantity", echo, ["quantity", "a", "b", "z", "value", "definition"], [row])


# --------------------------------------------------------------------------
# region


REGIONS = ("corollary1", "theorem1", "theorem2", "theorem3", "corollary2", "eq18", "eq19", "asymptotic")
REGION_PREDICATES = {
    "corollary1": SECRECY_MAC,
    "theorem1": SIMULTANEOUS_MAC,
    "theorem2": PP_SUCCESSIVE,
    "eq19": ("eps1_in_unit",),
    "theorem3": ("eps_in_unit",),
    "corollary2": ("eps_in_unit",),
    "eq18": ("eps_in_unit",),
    "asymptotic": (),
}


def _region_builder(spec: ChannelSpec, name: str, params: SmoothingParams):
    """``(builder, channel, law, extra_args, law_grid)`` for the named region."""
    if name in ("corollary1", "theorem1"):
        _need_kind(spec, ("mawtc",), name)
        fn = rg.region_corollary1 if name == "corollary1" else rg.region_theorem1
        n1, n2 = spec.alphabet
        return fn, spec.channel, spec.resolved_law(), (params,), lambda step: rg.mac_law_grid(n1, n2, step)
    if name in ("theorem2", "eq19", "asymptotic"):
        ch, law = _as_pp(spec, name)
        n1, n2 = ch.sizes
        grid = lambda step: rg.pp_law_grid(n1, n2, step)
        if name == "theorem2":
            return rg.region_theorem2, ch, law, (params,), grid
        if name == "eq19":
            return rg.region_19, ch, law, (params.eps1,), grid
        return rg.asymptotic_region, ch, law, (), grid
    _need_kind(spec, ("qbc",), name)
    law = spec.resolved_law()
    if name == "theorem3":
        if not isinstance(law, QbcLaw):
            raise ValidationError("theorem3 needs a law with keys p_u, p_x_u")
        return rg.region_theorem3, spec.channel, law, (params.eps,), None
    if not isinstance(law, QbcPairLaw):
        raise ValidationError(f"{name} needs a pair law with keys p_u, p_x1_u, p_x2_ux1")
    fn = rg.region_corollary2 if name == "corollary2" else rg.region_18
    return fn, spec.channel, law, (params.eps,), None


def _terms_text(con) -> str:
    return "; ".join(f"{n}={fmt(v)}" for n, v in con.terms)


def cmd_region(spec: ChannelSpec, args) -> RunReport:
    name = args.name
    if name not in REGIONS:
        raise ValidationError(f"unknown region {name!r}; expected one of {', '.join(REGIONS)}")
    params = _params(spec, args)
    _check(params, *REGION_PREDICATES[name])
    builder, ch, law, extra, grid = _region_builder(spec, name, params)
    if args.frontier and grid is None:
        raise ValidationError(f"frontier scans are available for MAC and point-to-point regions, not {name}")
    if args.frontier:
        try:
            laws = grid(args.grid_step)
        except ValueError as exc:
            raise ValidationError(f"--grid-step: {exc}") from None

    region = builder(ch, law, *extra)
    coords = list(region.coords)
    header = ["region", "constraint"] + [f"coef_{c}" for c in coords] + ["bound", "budget", "terms"]
    rows = []
    for con, bnd in zip(region.constraints, region.bounds(args.clamp)):
        row = {"region": region.name, "constraint": con.label, "bound": bnd,
               "budget": region.budget_label, "terms": _terms_text(con)}
        row.update({f"coef_{c}": k for c, k in zip(coords, con.coeffs)})
        rows.append(row)
    for key, value in region.metadata:
        rows.append({"region": region.name, "constraint": f"meta:{key}", "bound": value})
    echo = {"spec": args.spec, "region": name, "clamp": args.clamp, **{f"param.{k}": v for k, v in params.as_dict().items()}}
    if region.budget_value:
        echo["budget_value"] = ";".join(fmt(v) for v in region.budget_value)
    report = RunReport("region", echo, header, rows, list(region.notes))

    if args.corners:
        pts = region.corners(args.clamp)
        report.extra_files[args.corners] = write_csv(coords, [dict(zip(coords, p)) for p in pts])
    if args.frontier:
        scan = rg.frontier_scan(builder, ch, laws, *extra, clamp=args.clamp)
        report.extra_files[args.frontier] = write_csv(coords, [dict(zip(coords, p)) for p in scan.envelope])
    return report


# --------------------------------------------------------------------------
# simulate


DECODERS = ("simultaneous", "successive", "superposition", "leakage", "convex-split", "hn-check")


def _trial_seeds(seed: int, trials: int):
    return np.random.SeedSequence(seed).spawn(trials)


def _sim_simultaneous(spec, args, params, sizes, seeds):
    _need_kind(spec, ("mawtc",), "simultaneous")
    law = _mac_single(spec.resolved_law(), "simultaneous")
    dp = dec.DecoderParams(tuple(sizes), params.c)
    if args.test == "np":
        _check(params, "eps_in_unit")
    p1, p2 = law.p_x1_q[0], law.p_x2_q[0]
    m1, k1, m2, k2 = sizes
    dense = int(np.prod([p1.size] * (m1 * k1) + [p2.size] * (m2 * k2))) * spec.channel.dim_y
    if args.ensemble and dense > dp.cap:
        raise qt.CapExceeded("position-based construction", dense, dp.cap)

    def run():
        test = dec.simultaneous_test(spec.channel, law, params.eps) if args.test == "np" else dec.support_test(spec.channel)
        rows = []
        for t, ss in enumerate(seeds):
            if args.codebook == "enumerate":
                cb1, cb2 = dec.Codebook.enumerate(p1.size, m1, k1), dec.Codebook.enumerate(p2.size, m2, k2)
            else:
                s1, s2 = ss.spawn(2)
                cb1 = dec.Codebook.draw(p1, m1, k1, seed=s1)
                cb2 = dec.Codebook.draw(p2, m2, k2, seed=s2)
            r = dec.exact_error_simultaneous(spec.channel, test, cb1, cb2, params.c)
            rows.append({"kind": "realization", "trial": t, "error": r.error, "index_error": r.index_error,
                         "bound": r.hn_bound, "bound_kind": "hayashi-nagaoka per realization"})
        if args.ensemble:
            e = dec.ensemble_error_simultaneous(spec.channel, law, test, dp)
            rows.append({"kind": "ensemble", "trial": "", "error": e.error, "index_error": e.index_error,
                         "bound": e.bound, "bound_kind": "four-trace hayashi-nagaoka"})
        return rows

    header = ["kind", "trial", "error", "index_error", "bound", "bound_kind"]
    echo = {
        "test": "neyman-pearson vs equal-weight mixture" if args.test == "np" else "support projector",
        "codebook": args.codebook,
    }
    return run, header, echo, []


def _sim_successive(spec, args, params, sizes, seeds):
    ch, law = _as_pp(spec, "successive")
    _check(params, "eps1_in_unit")
    m1, k1, m2, k2 = sizes
    p = law.p_u1u2

    def run():
        rows = []
        for t, ss in enumerate(seeds):
            if args.codebook == "enumerate":
                cb1 = dec.Codebook.enumerate(p.shape[0], m1, k1)
                cb2 = dec.Codebook.enumerate(p.shape[1], m2, k2)
            else:
                s1, s2 = ss.spawn(2)
                cb1 = dec.Codebook.draw(p.sum(axis=1), m1, k1, seed=s1)
                cb2 = dec.Codebook.draw(p.sum(axis=0), m2, k2, seed=s2)
            for order in ("12", "21"):
                r = dec.successive_decoder_sim(ch, law, cb1, cb2, params.eps1, order)
                rows.append({"trial": t, "order": order, "p_e1": r.p_e1, "p_e2": r.p_e2,
                             "budget_reliability": r.budget_reliability, "budget_secrecy": r.budget_secrecy})
        return rows

    header = ["trial", "order", "p_e1", "p_e2", "budget_reliability", "budget_secrecy"]
    return run, header, {"codebook": args.codebook}, []


def _sim_superposition(spec, args, params, sizes, seeds):
    _need_kind(spec, ("qbc",), "superposition")
    law = spec.resolved_law()
    if not isinstance(law, QbcLaw):
        raise ValidationError("superposition needs a law with keys p_u, p_x_u")
    _check(params, "eps_in_unit")
    m1, mc = sizes[0], sizes[2]

    def run():
        rows = []
        for t, ss in enumerate(seeds):
            su, sx = ss.spawn(2)
            cu = dec.Codebook.draw(law.p_u, mc, 1, seed=su)
            cx = dec.Codebook.draw_conditional(law.p_x_u, cu, m1, seed=sx)
            r = dec.superposition_decoder_sim(spec.channel, law, cu, cx, params.eps)
            row = {"trial": t, "p_e1": r.p_e1, "p_e2": r.p_e2, "bound": r.bound}
            row.update(r.rates)
            rows.append(row)
        return rows

    header = ["trial", "p_e1", "p_e2", "bound", "I_H(X;Y1|U)", "I_H(U;Y2)", "I_H(X;Y1)", "I_H(UX;Y1)"]
    return run, header, {"sizes_used": f"M1={m1},Mc={mc}"}, []


def _sim_leakage(spec, args, params, sizes, seeds):
    _need_kind(spec, ("mawtc",), "leakage")
    law = _mac_single(spec.resolved_law(), "leakage")
    k1, k2 = sizes[1], sizes[3]
    trials = len(seeds)
    dp_ = params.delta_prime
    warnings = []
    if dp_ is not None and 20.0 * dp_**0.125 >= 2.0:
        warnings.append(f"bound 20 delta'^(1/8) = {20.0 * dp_**0.125:.4g} is vacuous (>= 2)")

    def run():
        r = dec.leakage_estimate(spec.channel, law, k1, k2, trials, args.seed, dp_)
        return [{"k1": k1, "k2": k2, "trials": trials, "mean": r.mean, "stderr": r.stderr,
                 "bound": r.bound, "vacuous": r.vacuous}]

    return run, ["k1", "k2", "trials", "mean", "stderr", "bound", "vacuous"], {}, warnings


def _sim_convex_split(spec, args, params, sizes, seeds):
    _check(params, "eps_in_unit", "delta_in_sqrt_eps")
    s = control_state(spec)
    a, b = _labels(args.a, "a"), _labels(args.b, "b")
    if len(a) != 1 or len(b) != 1 or a == b:
        raise ValidationError("convex-split needs one --a register (X) and a different --b register (B)")
    for lab in a + b:
        if lab not in s.labels:
            raise ValidationError(f"unknown register {lab!r}; this spec has {', '.join(s.labels)}")
    ks = _ints(args.k, "k")
    if min(ks) < 1:
        raise ValidationError("--k values must be positive")
    dx, db = s.register(a[0]).dim, s.register(b[0]).dim
    for k in ks:
        if dx**k * db > dec.DENSE_CAP:
            raise qt.CapExceeded("convex-split state", dx**k * db, dec.DENSE_CAP)

    def run():
        rows = []
        for k in ks:
            r = dec.convex_split_verify(s, a[0], b[0], k, params.eps, params.delta)
            rows.append({"k": k, "distance": r.distance, "distance_smoothed": r.distance_smoothed,
                         "condition": r.condition, "log2_k": r.log_k, "required": r.required,
                         "radius": r.radius, "holds": r.holds})
        return rows

    header = ["k", "distance", "distance_smoothed", "condition", "log2_k", "required", "radius", "holds"]
    return run, header, {"x": a[0], "b": b[0]}, []


def _sim_hn_check(spec, args, params, sizes, seeds):
    dims = _ints(args.dims, "dims")
    if min(dims) < 1:
        raise ValidationError("--dims values must be positive")
    cs = (0.1, 1.0, 10.0)

    def run():
        rows = []
        for t, ss in enumerate(seeds):
            rng = np.random.default_rng(ss)
            d = dims[t % len(dims)]
            c = cs[t % len(cs)]
            s_op, t_op = dec.random_hn_instance(rng, d)
            ok, m = dec.hayashi_nagaoka_check(s_op, t_op, c)
            rows.append({"trial": t, "dim": d, "c": c, "min_eig": m, "holds": ok})
        return rows

    return run, ["trial", "dim", "c", "min_eig", "holds"], {}, []


SIMULATORS = {
    "simultaneous": _sim_simultaneous,
    "successive": _sim_successive,
    "superposition": _sim_superposition,
    "leakage": _sim_leakage,
    "convex-split": _sim_convex_split,
    "hn-check": _sim_hn_check,
}


def cmd_simulate(spec: ChannelSpec, args) -> RunReport:
    if args.decoder not in SIMULATORS:
        raise ValidationError(f"unknown decoder {args.decoder!r}; expected one of {', '.join(DECODERS)}")
    params = _params(spec, args)
    _check(params, "c_positive")
    sizes = _ints(args.sizes, "sizes", 4)
    if min(sizes) < 1:
        raise ValidationError("--sizes entries must be positive")
    if args.seed < 0:
        raise ValidationError("--seed must be non-negative")
    trials = args.trials if args.trials is not None else (200 if args.decoder in ("leakage", "hn-check") else 1)
    if trials < 1:
        raise ValidationError("--trials must be at least 1")
    seeds = _trial_seeds(args.seed, trials)
    run, header, extra_echo, warnings = SIMULATORS[args.decoder](spec, args, params, sizes, seeds)
    rows = run()
    echo = {"spec": args.spec, "decoder": args.decoder, "seed": args.seed, "trials": trials,
            "sizes": args.sizes, **extra_echo, **{f"param.{k}": v for k, v in params.as_dict().items()}}
    return RunReport("simulate", echo, header, rows, warnings)


# --------------------------------------------------------------------------
# converge


def cmd_converge(spec: ChannelSpec, args) -> RunReport:
    ch, law = _as_pp(spec, "converge")
    params = _params(spec, args)
    _check(params, *PP_SUCCESSIVE)
    if args.n_max < 1:
        raise ValidationError("--n-max must be at least 1")
    n1, n2 = ch.sizes
    dim = max(n1 * n2 * ch.dim_y, n1 * n2 * ch.dim_z)
    if dim**args.n_max > rg.DIM_CAP:
        raise qt.CapExceeded(f"{args.n_max}-fold tensor power of a {dim}-dimensional block", dim**args.n_max, rg.DIM_CAP)
    rows = []
    for r in rg.convergence_harness(ch, law, params, args.n_max):
        d = r.as_dict()
        d["gap_ih_1"] = abs(r.ih_1 - r.target_ih_1)
        d["gap_ih_2"] = abs(r.ih_2 - r.target_ih_2)
        d["gap_leak_1"] = abs(r.leak_1 - r.target_leak_1)
        d["gap_leak_2"] = abs(r.leak_2 - r.target_leak_2)
        rows.append(d)
    header = ["n", "ih_1", "ih_2", "leak_1", "leak_2", "target_ih_1", "target_ih_2", "target_leak_1",
              "target_leak_1_cond", "target_leak_2", "gap_ih_1", "gap_ih_2", "gap_leak_1", "gap_leak_2"]
    echo = {"spec": args.spec, "n_max": args.n_max, **{f"param.{k}": v for k, v in params.as_dict().items()}}
    return RunReport("converge", echo, header, rows)


# --------------------------------------------------------------------------
# entry point


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise ValidationError(message)


def _add_params(p):
    g = p.add_argument_group("smoothing parameters (override the spec's params)")
    for name in PARAM_FLAGS:
        g.add_argument("--" + name.replace("_", "-"), dest=name, type=float, default=None)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="qmawtc", description="One-shot rate regions and decoder simulations for wiretap channels.")
    parser.add_argument("--version", action="version", version=f"qmawtc {__version__}")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True

    q = sub.add_parser("quantity", help="evaluate an entropic quantity")
    q.add_argument("spec")
    q.add_argument("--name", required=True, help=", ".join(list(MI_QUANTITIES) + list(OUTPUT_QUANTITIES)))
    q.add_argument("--a", help="comma-separated register labels")
    q.add_argument("--b")
    q.add_argument("--z", help="classical conditioning registers")
    q.add_argument("--rho", help="input tuple selecting rho for D-type quantities, e.g. 0,1")
    q.add_argument("--sigma", help="input tuple selecting sigma")
    q.add_argument("--system", help="output system for D-type quantities (default Y or Y1)")
    _add_params(q)

    r = sub.add_parser("region", help="build a rate region")
    r.add_argument("spec")
    r.add_argument("--name", required=True, help=", ".join(REGIONS))
    r.add_argument("--clamp", action="store_true", help="clamp negative bounds at zero")
    r.add_argument("--corners", help="write the corner points to this CSV file")
    r.add_argument("--frontier", help="scan a law grid and write the upper envelope to this CSV file")
    r.add_argument("--grid-step", type=float, default=0.25)
    _add_params(r)

    s = sub.add_parser("simulate", help="run a decoder simulation or lemma check")
    s.add_argument("spec")
    s.add_argument("--decoder", required=True, help=", ".join(DECODERS))
    s.add_argument("--sizes", default="2,1,2,1", help="M1,K1,M2,K2 (superposition uses M1 and M2 as |M1|, |Mc|)")
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--trials", type=int, default=None, help="default 200 for leakage and hn-check, else 1")
    s.add_argument("--test", choices=("np", "support"), default="np")
    s.add_argument("--codebook", choices=("random", "enumerate"), default="random",
                   help="draw codebooks from the law, or assign symbols by position")
    s.add_argument("--ensemble", action="store_true", help="also average exactly over every codebook")
    s.add_argument("--a", help="convex-split: register X")
    s.add_argument("--b", help="convex-split: register B")
    s.add_argument("--k", default="1,2,4,8", help="convex-split: numbers of copies")
    s.add_argument("--dims", default="2,3,4,5,6,7,8", help="hn-check: dimensions cycled over trials")
    _add_params(s)

    c = sub.add_parser("converge", help="per-copy one-shot terms for n = 1..n_max")
    c.add_argument("spec")
    c.add_argument("--n-max", type=int, default=3)
    _add_params(c)

    for p in (q, r, s, c):
        p.add_argument("--out", help="write the report here instead of stdout")
    return parser


COMMANDS = {"quantity": cmd_quantity, "region": cmd_region, "simulate": cmd_simulate, "converge": cmd_converge}


def run(argv=None) -> RunReport:
    args = build_parser().parse_args(argv)
    spec = read_spec(args.spec)
    return COMMANDS[args.command](spec, args)


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        spec = read_spec(args.spec)
        report = COMMANDS[args.command](spec, args)
        text = report.render()
    except qt.NumericError as exc:
        print(f"error[numeric]: {_one_line(exc)}", file=sys.stderr)
        return 2
    except (ValidationError, SpecError, qt.InvalidParams, StateError, ValueError) as exc:
        print(f"error[validation]: {_one_line(exc)}", file=sys.stderr)
        return 1
    for note in report.warnings:
        print(f"warning: {note}", file=sys.stderr)
    try:
        for path, content in report.extra_files.items():
            with open(path, "w", encoding="utf-8", newline="\n") as fh:
                fh.write(content)
        if args.out:
            with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
                fh.write(text)
        else:
            sys.stdout.write(text)
    except OSError as exc:
        print(f"error[validation]: cannot write output ({exc.strerror}: {exc.filename})", file=sys.stderr)
        return 1
    return 0


def _one_line(exc: Exception) -> str:
    return " ".join(str(exc).split())


if __name__ == "__main__":
    raise SystemExit(main())
