"""Command-line front door.

Every run echoes its exact argv and resolved configuration so outputs are
reproducible; identical invocations with --threads 1 are byte-identical.
Exit codes: 0 success, 1 computation or validation failure, 2 usage error.
"""
from __future__ import annotations

import argparse
import json
import math
import os
import sys

import numpy as np

from . import __version__
from .arith import twin_config, verify_golomb_range
from .asymptotic import a_series, twin_series
from .constraint import q_big, q_residue_check, q_sub
from .exceptions import TwinZetaError
from .explicit import QuadratureSpec, compare_report, i1_quadrature, zero_sum_scaled
from .numutil import richardson
from .sieve import FactorSieve
from .zeros import bundled_zeros, find_critical_zeros, load_zeros
from .zseries import (functional_residual, residue_z_at_1, residue_z_at_rho,
                      z_direct, z_formula, z_poles)

DEFAULT_SIEVE_LIMIT = 10 ** 7
ZEROS_ENV = "GZ_ZEROS_PATH"


class UsageError(Exception):
    """missing or inconsistent flags detected after parsing"""


def _parse_complex(text: str) -> complex:
    parts = text.split(",")
    if len(parts) == 1:
        return complex(float(parts[0]), 0.0)
    if len(parts) == 2:
        return complex(float(parts[0]), float(parts[1]))
    raise argparse.ArgumentTypeError(f"expected re or re,im, got {text!r}")


def _parse_tlist(text: str) -> list[float]:
    return [float(x) for x in text.split(",") if x]


def _cx(z: complex):
    return [z.real, z.imag]


def _cache_dir() -> str:
    base = os.environ.get("TWINZETA_CACHE") or os.path.join(
        os.environ.get("XDG_CACHE_HOME", os.path.expanduser("~/.cache")),
        "twinzeta")
    return base


class Session:
    """lazy shared resources for one CLI run"""

    def __init__(self, args):
        self.args = args
        self._sieve = None
        self._zeros = None

    def sieve(self, need: int = 2) -> FactorSieve:
        limit = max(int(self.args.sieve_limit), int(need) + 16)
        if self._sieve is None or self._sieve.limit < limit:
            path = os.path.join(_cache_dir(), f"spf_{limit}.bin")
            if os.path.exists(path):
                try:
                    self._sieve = FactorSieve.load(path)
                    return self._sieve
                except TwinZetaError:
                    pass
            self._sieve = FactorSieve(limit)
            if limit >= 10 ** 6 and not self.args.no_cache:
                try:
                    os.makedirs(_cache_dir(), exist_ok=True)
                    self._sieve.save(path)
                except OSError:
                    pass
        return self._sieve

    def zeros(self):
        if self._zeros is None:
            path = self.args.zeros or os.environ.get(ZEROS_ENV)
            self._zeros = load_zeros(path) if path else bundled_zeros("large")
        return self._zeros

    def config(self) -> dict:
        cfg = {
            "argv": list(self.args._argv),
            "format": self.args.format,
            "sieve_limit": int(self.args.sieve_limit),
            "threads": int(self.args.threads),
            "version": __version__,
        }
        if self._zeros is not None:
            cfg["zero_source"] = self._zeros.source_id
            cfg["assumption"] = "beta=1/2"
        return cfg


# ---------------------------------------------------------------------------
# subcommand implementations, each returning (result dict, exit code)
# ---------------------------------------------------------------------------

def cmd_golomb_verify(sess: Session, a):
    cfg = twin_config(sess.sieve(10 ** 5), a.d, a.parity)
    need = cfg.median(a.a_max) + a.d
    rep = verify_golomb_range(sess.sieve(need), cfg, a.a_max,
                              threads=sess.args.threads)
    result = {
        "d": rep.d, "parity": rep.parity, "a_begin": rep.a_begin,
        "a_max": rep.a_max, "checked": rep.checked,
        "max_abs_dev": rep.max_abs_dev,
        "exceptional": [{"a": int(x), "lhs": l, "rhs": r}
                        for x, l, r in rep.exceptional],
        "coprime_failures": rep.coprime_failures,
        "ok": rep.ok,
    }
    return result, (0 if rep.ok else 1)


def cmd_eval(sess: Session, a):
    which = a.target
    out = {"target": which}
    if which in ("z", "qd", "qsub") and a.s is None:
        raise UsageError(f"eval {which} requires --s")
    if which == "aw" and a.w is None:
        raise UsageError("eval aw requires --w")
    if which == "z":
        s = a.s
        method = a.method or "formula"
        out["s"] = _cx(s)
        out["method"] = method
        if method == "formula":
            out["value"] = _cx(z_formula(s))
        elif method == "direct":
            sv = z_direct(sess.sieve(a.n_max), s, a.n_max)
            out.update(value=_cx(sv.value), tail_bound=sv.tail_bound,
                       terms_used=sv.terms_used)
        elif method == "poles":
            zt = sess.zeros()
            t_max = a.t_max or zt.max_gamma
            sv = z_poles(s, zt, t_max)
            out.update(value=_cx(sv.value), tail_bound=sv.tail_bound,
                       terms_used=sv.terms_used, t_max=t_max,
                       assumption="beta=1/2")
        else:
            raise TwinZetaError(f"unknown z method {method!r}")
        return out, 0
    cfg = twin_config(sess.sieve(10 ** 5), a.d, a.parity)
    out.update(d=cfg.d, parity=cfg.parity)
    if which == "qd":
        method = a.method or "direct"
        sv = q_big(cfg, a.s, method=method)
        out.update(s=_cx(a.s), method=method, value=_cx(sv.value),
                   tail_bound=sv.tail_bound, terms_used=sv.terms_used)
    elif which == "qsub":
        sv = q_sub(cfg, a.s)
        out.update(s=_cx(a.s), value=_cx(sv.value), tail_bound=sv.tail_bound,
                   terms_used=sv.terms_used)
    elif which == "aw":
        method = a.method or "closed"
        sv = a_series(sess.sieve(a.n_max), cfg, a.w, method=method,
                      n_max=a.n_max)
        out.update(w=_cx(a.w), method=method, value=_cx(sv.value),
                   tail_bound=sv.tail_bound, terms_used=sv.terms_used)
    else:
        raise TwinZetaError(f"unknown eval target {which!r}")
    return out, 0


def cmd_twin_sum(sess: Session, a):
    cfg = twin_config(sess.sieve(10 ** 5), a.d, a.parity)
    need = cfg.median(a.a_max) + a.d
    sv = twin_series(sess.sieve(need), cfg, a.w, a.a_max)
    return {"d": cfg.d, "parity": cfg.parity, "w": _cx(a.w),
            "a_max": a.a_max, "value": _cx(sv.value),
            "tail_bound": sv.tail_bound, "tail_heuristic": sv.heuristic,
            "terms": sv.terms_used}, 0


def cmd_explicit(sess: Session, a):
    cfg = twin_config(sess.sieve(10 ** 5), a.d, a.parity)
    zt = sess.zeros()
    if a.target == "zerosum":
        rows = []
        for t in a.t:
            sv = zero_sum_scaled(cfg, a.w, zt, t)
            rows.append({"T": t, "value": _cx(sv.value), "pairs": sv.terms_used})
        return {"d": cfg.d, "parity": cfg.parity, "w": _cx(a.w),
                "assumption": "beta=1/2", "rows": rows}, 0
    if a.target == "i1":
        rows = []
        for t in a.t:
            sv = i1_quadrature(cfg, a.w, QuadratureSpec(t, a.step, a.sigma))
            rows.append({"T": t, "value": _cx(sv.value),
                         "quad_error": sv.tail_bound, "nodes": sv.terms_used})
        return {"d": cfg.d, "parity": cfg.parity, "w": _cx(a.w),
                "sigma": a.sigma, "step": a.step, "rows": rows}, 0
    if a.target == "compare":
        need = cfg.median(a.a_max) + a.d
        rep = compare_report(cfg, a.w, a.t, zt, sess.sieve(need),
                             a_max=a.a_max, sigma=a.sigma, step=a.step)
        return {"compare": rep.to_json(), "_csv": rep.to_csv()}, 0
    raise TwinZetaError(f"unknown explicit target {a.target!r}")


def cmd_check(sess: Session, a):
    if a.target == "functional":
        pts = [complex(0.2, 2.0), complex(0.3, 5.0), complex(0.4, 7.3),
               complex(0.5, 9.1), complex(0.6, 11.6), complex(0.7, 16.4),
               complex(0.8, 18.2), complex(0.25, 19.4), complex(1.5, 3.7),
               complex(1.5, 12.6)]
        rows = [{"s": _cx(s), "residual": functional_residual(s)} for s in pts]
        worst = max(r["residual"] for r in rows)
        ok = worst < 1e-8
        return {"check": "functional", "rows": rows, "max_residual": worst,
                "ok": ok}, (0 if ok else 1)
    if a.target != "residues":
        raise TwinZetaError(f"unknown check {a.target!r}")
    which = a.which
    if which == "z1":
        zt = sess.zeros()
        closed = residue_z_at_1(zt, zt.max_gamma)
        hs = (1e-2, 5e-3, 2.5e-3)
        est = richardson([(h * z_formula(1.0 + h)).real for h in hs])
        ok = abs(est - closed.value.real) < 1e-3
        return {"check": "residue_z_at_1", "closed_form": closed.value.real,
                "limit_estimate": est, "tail_bound": closed.tail_bound,
                "assumption": "beta=1/2", "ok": ok}, (0 if ok else 1)
    if which == "zrho":
        zt = sess.zeros()
        rho = complex(0.5, zt.gammas[0])
        val = residue_z_at_rho(rho)
        return {"check": "residue_z_at_rho", "rho": _cx(rho),
                "closed_form": _cx(val), "assumption": "beta=1/2", "ok": True}, 0
    if which == "qd":
        cfg = twin_config(sess.sieve(10 ** 5), a.d, a.parity)
        rc = q_residue_check(cfg, a.nu)
        ok = any(abs(rc.estimate - v) < 1e-6 for v in rc.candidates.values())
        return {"check": "q_residue", "d": rc.d, "parity": rc.parity,
                "nu": rc.nu, "s_pole": rc.s_pole, "estimate": rc.estimate,
                "candidates": rc.candidates, "best": rc.best,
                "ok": ok}, (0 if ok else 1)
    if which == "aw":
        cfg = twin_config(sess.sieve(10 ** 5), a.d, a.parity)
        hs = (1e-2, 5e-3, 2.5e-3)
        vals = [(h * a_series(sess.sieve(10 ** 5), cfg, 0.5 + h,
                              method="closed").value).real for h in hs]
        est = richardson(vals)
        reference = math.log(2.0) if cfg.parity == "odd" else math.log(3.0) / 2.0
        ok = abs(est - reference) < 1e-3
        return {"check": "a_series_residue", "d": cfg.d, "parity": cfg.parity,
                "limit_estimate": est, "reference": reference,
                "reference_note": "log 2 for odd families; log(3)/2 for even "
                                  "(the geometric factor halves the even residue)",
                "ok": ok}, (0 if ok else 1)
    raise TwinZetaError(f"unknown residues target {which!r}")


def cmd_zeros_validate(sess: Session, a):
    zt = load_zeros(a.file)
    k = min(3, len(zt))
    recomputed = find_critical_zeros(count=k)
    dev = float(np.max(np.abs(recomputed - zt.gammas[:k])))
    ok = dev < 1e-6
    return {"file": str(a.file), "count": len(zt),
            "first": float(zt.gammas[0]), "max_gamma": zt.max_gamma,
            "recomputed_head_dev": dev, "ok": ok}, (0 if ok else 1)


# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "csv"), default="json")
    common.add_argument("--sieve-limit", type=int, default=DEFAULT_SIEVE_LIMIT)
    common.add_argument("--threads", type=int, default=1)
    common.add_argument("--out", default=None, help="write output to a file")
    common.add_argument("--zeros", default=None,
                        help=f"zero-table path (default ${ZEROS_ENV} or bundled)")
    common.add_argument("--no-cache", action="store_true",
                        help="do not write sieve caches")
    # leaf commands re-accept the globals so they may trail the subcommand
    trailing = argparse.ArgumentParser(add_help=False)
    for flag, kw in (("--format", dict(choices=("json", "csv"))),
                     ("--sieve-limit", dict(type=int)),
                     ("--threads", dict(type=int)),
                     ("--out", {}),
                     ("--zeros", {})):
        trailing.add_argument(flag, default=argparse.SUPPRESS, **kw)
    trailing.add_argument("--no-cache", action="store_true",
                          default=argparse.SUPPRESS)

    p = argparse.ArgumentParser(prog="twinzeta", parents=[common],
                                description="twin-family Dirichlet series "
                                            "and zeta-zero explicit sums")
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("golomb").add_subparsers(dest="sub", required=True)
    gv = g.add_parser("verify", parents=[trailing])
    gv.add_argument("--d", type=int, required=True)
    gv.add_argument("--parity", choices=("odd", "even"), default=None)
    gv.add_argument("--a-max", type=int, required=True)
    gv.set_defaults(func=cmd_golomb_verify)

    e = sub.add_parser("eval", parents=[trailing])
    e.add_argument("target", choices=("z", "qd", "qsub", "aw"))
    e.add_argument("--s", type=_parse_complex, default=None)
    e.add_argument("--w", type=_parse_complex, default=None)
    e.add_argument("--d", type=int, default=1)
    e.add_argument("--parity", choices=("odd", "even"), default=None)
    e.add_argument("--method", default=None)
    e.add_argument("--n-max", type=int, default=10 ** 6)
    e.add_argument("--t-max", type=float, default=None)
    e.set_defaults(func=cmd_eval)

    t = sub.add_parser("twin").add_subparsers(dest="sub", required=True)
    ts = t.add_parser("sum", parents=[trailing])
    ts.add_argument("--d", type=int, required=True)
    ts.add_argument("--parity", choices=("odd", "even"), default=None)
    ts.add_argument("--w", type=_parse_complex, required=True)
    ts.add_argument("--a-max", type=int, required=True)
    ts.set_defaults(func=cmd_twin_sum)

    x = sub.add_parser("explicit", parents=[trailing])
    x.add_argument("target", choices=("zerosum", "i1", "compare"))
    x.add_argument("--d", type=int, default=1)
    x.add_argument("--parity", choices=("odd", "even"), default=None)
    x.add_argument("--w", type=_parse_complex, required=True)
    x.add_argument("--t", type=_parse_tlist, required=True)
    x.add_argument("--sigma", type=float, default=1.25)
    x.add_argument("--step", type=float, default=0.02)
    x.add_argument("--a-max", type=int, default=100000)
    x.set_defaults(func=cmd_explicit)

    c = sub.add_parser("check", parents=[trailing])
    c.add_argument("target", choices=("functional", "residues"))
    c.add_argument("--which", choices=("z1", "zrho", "qd", "aw"), default=None)
    c.add_argument("--d", type=int, default=1)
    c.add_argument("--parity", choices=("odd", "even"), default=None)
    c.add_argument("--nu", type=int, default=0)
    c.set_defaults(func=cmd_check)

    z = sub.add_parser("zeros").add_subparsers(dest="sub", required=True)
    zv = z.add_parser("validate", parents=[trailing])
    zv.add_argument("--file", required=True)
    zv.set_defaults(func=cmd_zeros_validate)
    return p


def _emit_csv(payload: dict) -> str:
    if "_csv" in payload.get("result", {}):
        cfg_lines = "".join(f"# {k}={v}\n" for k, v in
                            sorted(payload["config"].items()) if k != "argv")
        argv_line = "# argv=" + " ".join(payload["config"]["argv"]) + "\n"
        return cfg_lines + argv_line + payload["result"]["_csv"]
    lines = []
    for k, v in sorted(payload["config"].items()):
        lines.append(f"# {k}={v if k != 'argv' else ' '.join(v)}")
    lines.append("key,value")

    def flatten(prefix, obj):
        if isinstance(obj, dict):
            for k, v in obj.items():
                flatten(f"{prefix}{k}." if prefix else f"{k}.", v) \
                    if isinstance(v, (dict, list)) else \
                    lines.append(f"{prefix}{k},{v}")
        elif isinstance(obj, list):
            for i, v in enumerate(obj):
                if isinstance(v, (dict, list)):
                    flatten(f"{prefix}{i}.", v)
                else:
                    lines.append(f"{prefix}{i},{v}")

    flatten("", payload["result"])
    return "\n".join(lines) + "\n"


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    args._argv = argv
    sess = Session(args)
    try:
        result, code = args.func(sess, args)
    except UsageError as exc:
        sys.stderr.write(f"usage error: {exc}\n")
        return 2
    except TwinZetaError as exc:
        err = {"error": {"type": type(exc).__name__, "message": str(exc)},
               "config": {"argv": argv}}
        text = (json.dumps(err, indent=2, sort_keys=True) + "\n"
                if args.format == "json"
                else f"# error={type(exc).__name__}: {exc}\n")
        _write(args.out, text)
        return 1
    payload = {"config": sess.config(), "result": result}
    if args.format == "json":
        result.pop("_csv", None)
        text = json.dumps(payload, indent=2, sort_keys=True) + "\n"
    else:
        text = _emit_csv(payload)
    _write(args.out, text)
    return code


def _write(out, text: str) -> None:
    if out:
        with open(out, "w", encoding="utf-8") as f:
            f.write(text)
    else:
        sys.stdout.write(text)


if __name__ == "__main__":
    raise SystemExit(main())
