"""Command-line front end.

Exit codes: 0 when the result matches what is expected, 1 when an
asserted identity fails, 2 for usage, input or IO errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import dcpo
from . import embeddings as em
from . import numtheory as nt
from . import phasespace as ps
from . import quantities as q
from . import topology as topo
from .qsystem import verify_sp_embed
from .reports import validate
from .sampling import ginibre, sample_rngs

EXIT_OK, EXIT_VIOLATION, EXIT_USAGE = 0, 1, 2
MAX_SEED = 2**64 - 1


class UsageError(Exception):
    pass


@dataclass(frozen=True)
class RunConfig:
    seed: int = 0
    tolerance: float = 1e-9
    samples: int = 100
    output_format: str = "human"
    workers: int = 1

    def __post_init__(self):
        if not 0 <= self.seed <= MAX_SEED:
            raise UsageError("seed must be a 64-bit unsigned integer")
        if not self.tolerance > 0:
            raise UsageError("tolerance must be positive")
        if self.samples < 1:
            raise UsageError("samples must be at least 1")
        if self.workers < 1:
            raise UsageError("workers must be at least 1")
        if self.output_format not in ("human", "json"):
            raise UsageError("format must be human or json")

    def to_dict(self) -> dict:
        # workers is left out on purpose: reports must not depend on it
        return {"seed": self.seed, "tolerance": self.tolerance, "samples": self.samples}

    @classmethod
    def from_args(cls, args) -> RunConfig:
        return cls(args.seed, args.tol, args.samples, args.format, args.workers)


# -- output --------------------------------------------------------------------


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, ensure_ascii=False)


def _human(obj, indent: int = 0) -> list[str]:
    pad = " " * indent
    if isinstance(obj, dict):
        width = max((len(k) for k in obj), default=0)
        lines = []
        for k in sorted(obj):
            v = obj[k]
            nested = isinstance(v, list) and any(isinstance(x, (dict, list)) for x in v)
            if (isinstance(v, dict) and v) or nested:
                lines.append(f"{pad}{k}:")
                lines.extend(_human(v, indent + 2))
            else:
                lines.append(f"{pad}{k.ljust(width)}  {_scalar(v)}")
        return lines
    if isinstance(obj, list):
        lines = []
        for item in obj:
            if isinstance(item, dict):
                lines.append(f"{pad}- " + ", ".join(f"{k}={_scalar(item[k])}" for k in sorted(item)))
            else:
                lines.append(f"{pad}- {_scalar(item)}")
        return lines
    return [pad + _scalar(obj)]


def _scalar(v) -> str:
    if isinstance(v, list):
        return " ".join(_scalar(x) for x in v)
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return f"{v:.6g}"
    if v is None:
        return "-"
    return str(v)


def emit(out, cfg: RunConfig, payload: dict, schema: str, text: str | None = None) -> None:
    if cfg.output_format == "json":
        validate(payload, schema)
        print(dumps(payload), file=out)
    elif text is not None:
        print(text, file=out)
    else:
        print("\n".join(_human(payload)), file=out)


# -- nt -----------------------------------------------------------------------


def cmd_nt(args, cfg: RunConfig, out) -> int:
    sub = args.sub
    if sub == "sigma":
        result = nt.sigma_k(args.n, args.k)
    elif sub == "phi":
        result = nt.euler_phi(args.n)
    elif sub == "jordan":
        result = nt.jordan_totient(args.k, args.n)
    elif sub == "psi":
        result = nt.dedekind_psi(args.n)
    elif sub == "sp2":
        result = nt.sp2_order(args.n)
    elif sub == "tau":
        result = list(nt.tau_perm(args.n, args.m).table)
    elif sub == "divisors":
        result = nt.divisors_in_X(args.n)
    else:
        raise UsageError(f"unknown nt command {sub}")
    params = {k: getattr(args, k) for k in ("n", "m", "k") if getattr(args, k, None) is not None}
    payload = {"command": f"nt {sub}", "params": params, "result": result}
    emit(out, cfg, payload, "nt", _scalar(result))
    return EXIT_OK


# -- topo ---------------------------------------------------------------------


def _open_from(gens) -> topo.OpenSet:
    if not gens:
        raise UsageError("--sets needs at least one generator")
    return topo.OpenSet.from_generators(nt.check_dim(g, "generator") for g in gens)


def _open_dict(s: topo.OpenSet) -> dict:
    return {"generators": sorted(s.basics), "points": s.points(), "text": str(s)}


def cmd_topo(args, cfg: RunConfig, out) -> int:
    sub = args.sub
    if sub == "open":
        s = topo.basic_open(args.n)
        payload, text = {"open": _open_dict(s)}, _scalar(s.points())
    elif sub in ("union", "intersect"):
        sets = [topo.basic_open(nt.check_dim(g, "generator")) for g in args.sets]
        if not sets:
            raise UsageError("--sets needs at least one generator")
        s = sets[0]
        for t in sets[1:]:
            s = topo.union(s, t) if sub == "union" else topo.intersect(s, t)
        if s.kind is topo.Kind.EMPTY:
            payload, text = {"open": {"generators": [], "points": [], "text": "{}"}}, "(empty)"
        else:
            payload, text = {"open": _open_dict(s)}, _scalar(s.points())
    elif sub == "member":
        s = _open_from(args.sets)
        res = topo.member(nt.check_dim(args.m, "m"), s)
        payload, text = {"member": res, "open": _open_dict(s), "point": args.m}, _scalar(res)
    elif sub == "closure":
        pts = topo.closure_list(args.n, args.limit)
        payload, text = {"point": args.n, "limit": args.limit, "closure": pts}, _scalar(pts)
    elif sub == "t0":
        w = topo.t0_witness(args.a, args.b)
        inside = args.a if topo.member(args.a, w) else args.b
        payload = {"a": args.a, "b": args.b, "witness": _open_dict(w), "contains": inside}
        text = f"{w} contains {inside} but not {args.b if inside == args.a else args.a}"
    elif sub == "t1":
        fails = topo.t1_fails(args.a, args.b)
        lo, hi = sorted((args.a, args.b))
        if fails:
            text = f"T1 separation impossible: {lo} | {hi}"
        else:
            text = f"T1 separation possible: U({args.a}) omits {args.b}, U({args.b}) omits {args.a}"
        payload = {"a": args.a, "b": args.b, "t1_separable": not fails, "text": text}
    else:
        raise UsageError(f"unknown topo command {sub}")
    payload = {"command": f"topo {sub}", **payload}
    emit(out, cfg, payload, "topo", text)
    return EXIT_OK


# -- embed --------------------------------------------------------------------


def _parse_dims(text: str) -> tuple[int, ...]:
    try:
        dims = tuple(int(x) for x in text.split(","))
    except ValueError as exc:
        raise UsageError(f"bad dimensions {text!r}") from exc
    if len(dims) not in (1, 2):
        raise UsageError("dimensions are 'n' or 'n1,n2'")
    return tuple(nt.check_dim(d) for d in dims)


def _complex_list(pairs) -> np.ndarray:
    arr = np.asarray(pairs, dtype=float)
    if arr.shape[-1] != 2:
        raise UsageError("complex numbers are written as [re, im]")
    return arr[..., 0] + 1j * arr[..., 1]


def _pairs(a: np.ndarray) -> list:
    return np.stack([a.real, a.imag], axis=-1).tolist()


def state_to_json(f: em.QState) -> dict:
    out = {"basis": f.basis, "amplitudes": _pairs(f.amplitudes)}
    if len(f.dims) == 1:
        out["dim"] = f.dims[0]
    else:
        out["dims"] = list(f.dims)
    return out


def state_from_json(obj: dict) -> em.QState:
    dims = (obj["dim"],) if "dim" in obj else tuple(obj["dims"])
    return em.QState(dims, _complex_list(obj["amplitudes"]), obj.get("basis", em.POSITION))


def density_to_json(rho: em.DensityMatrix) -> dict:
    return {"dims": list(rho.dims), "matrix": _pairs(rho.matrix)}


def density_from_json(obj: dict) -> em.DensityMatrix:
    return em.DensityMatrix(tuple(obj["dims"]), _complex_list(obj["matrix"]))


def cmd_embed(args, cfg: RunConfig, out) -> int:
    src, dst = _parse_dims(args.src), _parse_dims(args.dst)
    if len(src) != len(dst):
        raise UsageError("--from and --to must have the same number of components")
    for a, b in zip(src, dst):
        nt.check_divides(a, b)
    try:
        text = sys.stdin.read() if args.infile == "-" else Path(args.infile).read_text(encoding="utf-8")
        obj = json.loads(text)
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read {args.infile}: {exc}") from exc
    if not isinstance(obj, dict):
        raise UsageError("input must be a JSON object")
    try:
        if "amplitudes" in obj:
            f = state_from_json(obj)
            if f.dims != src:
                raise UsageError(f"input has dims {f.dims}, --from says {src}")
            res = em.embed_state(f, dst[0]) if len(src) == 1 else em.embed_bipartite_state(f, dst)
            result = state_to_json(res)
        elif "matrix" in obj:
            rho = density_from_json(obj)
            if rho.dims != src:
                raise UsageError(f"input has dims {rho.dims}, --from says {src}")
            res = em.embed_density(rho, dst[0]) if len(src) == 1 else em.embed_bipartite_density(rho, dst)
            result = density_to_json(res)
        else:
            raise UsageError("input is neither a state nor a density")
    except (KeyError, TypeError) as exc:
        raise UsageError(f"malformed input: {exc}") from exc
    validate(result, "state" if "amplitudes" in result else "density")
    body = dumps(result)
    if args.outfile and args.outfile != "-":
        try:
            Path(args.outfile).write_text(body + "\n", encoding="utf-8")
        except OSError as exc:
            raise UsageError(f"cannot write {args.outfile}: {exc}") from exc
    else:
        print(body, file=out)
    return EXIT_OK


# -- verify -------------------------------------------------------------------


def _need(args, *names):
    missing = [f"--{n}" for n in names if getattr(args, n, None) is None]
    if missing:
        raise UsageError(f"{args.suite} needs {' '.join(missing)}")
    return [getattr(args, n) for n in names]


def _star_report(n: int, cfg: RunConfig) -> tuple[dict, bool]:
    rows = []
    ok = True
    for kind, fn, star, frozen in (
        (ps.WIGNER, ps.wigner, ps.wigner_star, ps.wigner_star_constant(n)),
        (ps.WEYL, ps.weyl, ps.weyl_star, ps.weyl_star_constant(n)),
    ):
        calibrated = ps.calibrate_star(kind, n, seed=cfg.seed)
        worst = 0.0
        for rng in sample_rngs(cfg.seed, cfg.samples):
            t, f = ginibre(rng, n), ginibre(rng, n)
            got = star(fn(t, n), fn(f, n), frozen).values
            worst = max(worst, float(np.max(np.abs(got - fn(t @ f, n).values))))
        passed = abs(calibrated - frozen) <= 1e-9 * frozen and worst <= max(cfg.tolerance, 1e-8)
        ok &= passed
        rows.append(
            {"function": kind, "calibrated": calibrated, "frozen": frozen, "max_deviation": worst, "passed": passed}
        )
    return {"n": n, "functions": rows}, ok


def run_verify(args, cfg: RunConfig) -> tuple[dict, int]:
    s = args.suite
    kw = dict(samples=cfg.samples, seed=cfg.seed, tol=cfg.tolerance, workers=cfg.workers)
    if s in ("entropy", "measured-entropy"):
        m, n = _need(args, "m", "n")
        fn = q.verify_entropy if s == "entropy" else q.verify_measured_entropy
        rep = fn(m, n, **kw)
        return rep.to_dict(), EXIT_OK if rep.ubiquitous else EXIT_VIOLATION
    if s in ("mutual-info", "conditional-entropy", "negativity"):
        m1, m2, n1, n2 = _need(args, "m1", "m2", "n1", "n2")
        name = s
        if s == "conditional-entropy" and args.conditioned == "2|1":
            name = "conditional-entropy-2|1"
        rep = q.verify_bipartite(name, (m1, m2), (n1, n2), **kw)
        return rep.to_dict(), EXIT_OK if rep.ubiquitous else EXIT_VIOLATION
    if s == "chain":
        m, n, l = _need(args, "m", "n", "l")
        rep = em.verify_chain_compatibility(m, n, l, **kw)
        return rep.to_dict(), EXIT_OK if rep.passed else EXIT_VIOLATION
    if s == "displacement":
        m, n = _need(args, "m", "n")
        rep = em.verify_displacement_compat(m, n, tol=cfg.tolerance)
        return rep.to_dict(), EXIT_OK if rep.surviving else EXIT_VIOLATION
    if s == "sp-embed":
        m, n = _need(args, "m", "n")
        # informational: the report describes the candidate map, nothing is asserted
        return verify_sp_embed(m, n).to_dict(), EXIT_OK
    if s in ("wigner", "weyl"):
        m, n = _need(args, "m", "n")
        fn = ps.verify_wigner_ubiquity if s == "wigner" else ps.verify_weyl_ubiquity
        rep = fn(m, n, tol=cfg.tolerance)
        return rep.to_dict(), EXIT_OK if rep.decisive else EXIT_VIOLATION
    if s == "star":
        (n,) = _need(args, "n")
        report, ok = _star_report(n, cfg)
        return report, EXIT_OK if ok else EXIT_VIOLATION
    if s == "nonubiquitous-demo":
        m = args.m if args.m is not None else 2
        n = args.n if args.n is not None else 4
        rep = q.nonubiquitous_demo(m, n, args.lam, tol=cfg.tolerance)
        # the expected outcome here is a violation
        return rep.to_dict(), EXIT_OK if not rep.ubiquitous else EXIT_VIOLATION
    raise UsageError(f"unknown suite {s}")


SUITE_SCHEMAS = {
    "entropy": "ubiquity",
    "measured-entropy": "ubiquity",
    "mutual-info": "ubiquity",
    "conditional-entropy": "ubiquity",
    "negativity": "ubiquity",
    "nonubiquitous-demo": "ubiquity",
    "chain": "chain",
    "displacement": "displacement",
    "sp-embed": "sp_embed",
    "wigner": "phase_ubiquity",
    "weyl": "phase_ubiquity",
    "star": "star",
}
SUITES = tuple(SUITE_SCHEMAS)


def cmd_verify(args, cfg: RunConfig, out) -> int:
    report, code = run_verify(args, cfg)
    payload = {
        "suite": args.suite,
        "config": cfg.to_dict(),
        "passed": code == EXIT_OK,
        "report": report,
    }
    emit(out, cfg, payload, SUITE_SCHEMAS[args.suite])
    return code


# -- dcpo ---------------------------------------------------------------------


def cmd_dcpo(args, cfg: RunConfig, out) -> int:
    vals = [dcpo.parse(v) for v in args.values]
    if args.sub == "divides":
        if len(vals) != 2:
            raise UsageError("divides takes exactly two values")
        res = dcpo.divides(*vals)
        result, text = res, _scalar(res)
    elif args.sub == "sup":
        res = dcpo.sup(vals)
        result, text = str(res), str(res)
    elif args.sub == "inf":
        res = dcpo.inf(vals)
        result = None if res is None else str(res)
        text = "none (the meet would be 1)" if res is None else str(res)
    elif args.sub == "chain-sup":
        if len(vals) != 1:
            raise UsageError("chain-sup takes one base")
        res = dcpo.chain_sup(dcpo.GeometricChain(vals[0]))
        result, text = str(res), str(res)
    else:
        raise UsageError(f"unknown dcpo command {args.sub}")
    payload = {"command": f"dcpo {args.sub}", "values": [str(v) for v in vals], "result": result}
    emit(out, cfg, payload, "dcpo", text)
    return EXIT_OK


# -- parser -------------------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--tol", type=float, default=1e-9)
    common.add_argument("--samples", type=int, default=100)
    common.add_argument("--format", choices=("human", "json"), default="human")
    common.add_argument("--workers", type=int, default=1)
    common.add_argument("--limit", type=int, default=100)

    p = _Parser(prog="wholepart", description="Divisor-poset systems: queries, embeddings and verification.")
    groups = p.add_subparsers(dest="group", required=True, parser_class=_Parser)

    g = groups.add_parser("nt", help="arithmetic functions")
    subs = g.add_subparsers(dest="sub", required=True, parser_class=_Parser)
    for name, need in (
        ("sigma", ("n", "k")),
        ("phi", ("n",)),
        ("jordan", ("k", "n")),
        ("psi", ("n",)),
        ("sp2", ("n",)),
        ("tau", ("n", "m")),
        ("divisors", ("n",)),
    ):
        sp = subs.add_parser(name, parents=[common])
        for arg in need:
            default = 1 if (name, arg) == ("sigma", "k") else None
            sp.add_argument(f"--{arg}", type=int, required=default is None, default=default)

    g = groups.add_parser("topo", help="divisor topology")
    subs = g.add_subparsers(dest="sub", required=True, parser_class=_Parser)
    sp = subs.add_parser("open", parents=[common])
    sp.add_argument("--n", type=int, required=True)
    for name in ("union", "intersect"):
        sp = subs.add_parser(name, parents=[common])
        sp.add_argument("--sets", type=int, nargs="+", required=True)
    sp = subs.add_parser("member", parents=[common])
    sp.add_argument("--m", type=int, required=True)
    sp.add_argument("--sets", type=int, nargs="+", required=True)
    sp = subs.add_parser("closure", parents=[common])
    sp.add_argument("--n", type=int, required=True)
    for name in ("t0", "t1"):
        sp = subs.add_parser(name, parents=[common])
        sp.add_argument("--a", type=int, required=True)
        sp.add_argument("--b", type=int, required=True)

    g = groups.add_parser("embed", parents=[common], help="embed a state or density")
    g.add_argument("--from", dest="src", required=True)
    g.add_argument("--to", dest="dst", required=True)
    g.add_argument("--in", dest="infile", required=True)
    g.add_argument("--out", dest="outfile", default=None)

    g = groups.add_parser("verify", parents=[common], help="run a verification suite")
    g.add_argument("suite", choices=SUITES)
    for arg in ("m", "n", "l", "m1", "m2", "n1", "n2"):
        g.add_argument(f"--{arg}", type=int)
    g.add_argument("--lam", type=float, default=2.0)
    g.add_argument("--conditioned", choices=("1|2", "2|1"), default="1|2")

    g = groups.add_parser("dcpo", help="supernatural numbers")
    subs = g.add_subparsers(dest="sub", required=True, parser_class=_Parser)
    for name in ("divides", "sup", "inf", "chain-sup"):
        sp = subs.add_parser(name, parents=[common])
        sp.add_argument("values", nargs="+")
    return p


COMMANDS = {"nt": cmd_nt, "topo": cmd_topo, "embed": cmd_embed, "verify": cmd_verify, "dcpo": cmd_dcpo}


def main(argv: list[str] | None = None, out=None, err=None) -> int:
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    try:
        args = build_parser().parse_args(argv)
        cfg = RunConfig.from_args(args)
        return COMMANDS[args.group](args, cfg, out)
    except UsageError as exc:
        print(f"error: {exc}", file=err)
        return EXIT_USAGE
    except ValueError as exc:
        # divisibility, dimension and invariant failures on user input
        print(f"error: {exc}", file=err)
        return EXIT_USAGE
    except SystemExit as exc:
        # --help
        return int(exc.code or 0)


if __name__ == "__main__":
    sys.exit(main())
