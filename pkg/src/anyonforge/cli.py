"""Command-line front end.

Exit codes: 0 success, 1 verification failure, 2 usage error, 3 size limit.
The default tolerance comes from ``ANYONFORGE_TOL`` when set.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import circuits, consistency, fusion, gates, knots
from .model import ModelError, builtin_model, load_model, save_model, to_dict
from .qarith import DEFAULT_TOL

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_LIMIT = 0, 1, 2, 3


@dataclass
class CliConfig:
    tolerance: float = DEFAULT_TOL
    output: str = "text"
    jobs: int = 1
    max_crossings: int = knots.MAX_CROSSINGS
    max_strands: int = knots.MAX_STRANDS

    def __post_init__(self):
        if self.tolerance <= 0:
            raise ValueError("tolerance must be positive")
        if min(self.jobs, self.max_crossings, self.max_strands) < 1:
            raise ValueError("limits must be at least 1")


class UsageError(Exception):
    pass


def _cpx(z):
    z = complex(z)
    return [z.real, z.imag]


def _fmt(z) -> str:
    z = complex(z)
    if abs(z.imag) < 1e-12:
        return f"{z.real:+.6f}"
    return f"{z.real:+.6f}{z.imag:+.6f}i"


def _emit(cfg: CliConfig, doc: dict, text: str) -> None:
    if cfg.output == "json":
        print(json.dumps(doc, indent=1, sort_keys=False))
    else:
        print(text)


def _get_model(name: str):
    if Path(name).suffix == ".json" and Path(name).exists():
        return load_model(name)
    return builtin_model(name)


# ---------------------------------------------------------------- handlers

def cmd_model_show(args, cfg):
    m = _get_model(args.name)
    lines = [f"model {m.name} ({m.rank} labels)"]
    for i, lab in enumerate(m.labels):
        lines.append(f"  {lab:<6} d={m.qdims[i]:.6f} theta={_fmt(m.twists[i])}")
    lines.append("fusion:")
    for a in range(m.rank):
        for b in range(a, m.rank):
            prods = [m.labels[c] for c in range(m.rank) if m.fusion[a, b, c]]
            lines.append(f"  {m.labels[a]} x {m.labels[b]} = {' + '.join(prods)}")
    for key, val in m.notes.items():
        if key == "twist_mismatch" and val:
            lines.append(f"note: alternative twist list disagrees at {', '.join(val)}")
    doc = to_dict(m)
    if "twist_mismatch" in m.notes:
        doc["twist_mismatch"] = m.notes["twist_mismatch"]
    _emit(cfg, doc, "\n".join(lines))
    return EXIT_OK


def cmd_model_verify(args, cfg):
    m = _get_model(args.name)
    reports = consistency.full_suite(m, cfg.tolerance)
    ok = consistency.suite_passes(reports)
    _emit(cfg, {"model": m.name, "pass": ok, "checks": [r.to_record() for r in reports]},
          "\n".join(str(r) for r in reports) + f"\n{'OK' if ok else 'FAILED'}")
    return EXIT_OK if ok else EXIT_FAIL


def cmd_model_save(args, cfg):
    m = _get_model(args.name)
    save_model(m, args.path)
    _emit(cfg, {"saved": str(args.path), "model": m.name}, f"wrote {m.name} to {args.path}")
    return EXIT_OK


def cmd_model_load(args, cfg):
    m = load_model(args.path, cfg.tolerance)
    _emit(cfg, {"loaded": str(args.path), "model": m.name, "labels": m.labels},
          f"loaded {m.name}: labels {', '.join(m.labels)}")
    return EXIT_OK


def cmd_fr_table(args, cfg):
    m = _get_model(args.name)
    doc = to_dict(m)
    lines = ["# F[a b c; d][e, f]"]
    L = m.labels
    for (a, b, c, d, e, f), v in sorted(m.f_table.items()):
        lines.append(f"F {L[a]} {L[b]} {L[c]} ; {L[d]} [{L[e]},{L[f]}] = {_fmt(v)}")
    lines.append("# R[a b; c]")
    for (a, b, c), v in sorted(m.r_table.items()):
        lines.append(f"R {L[a]} {L[b]} ; {L[c]} = {_fmt(v)}")
    _emit(cfg, {"F": doc["F"], "R": doc["R"]}, "\n".join(lines))
    return EXIT_OK


def cmd_braid_rep(args, cfg):
    m = _get_model(args.name)
    label = args.label if args.label is not None else m.labels[1 if m.rank > 1 else 0]
    basis = fusion.enumerate_basis(m, (label, args.anyons), args.total, args.shape)
    gens = {f"sigma{i}": fusion.braid_generator(basis, i) for i in range(1, basis.n)}
    lines = [f"basis ({basis.dim} states): " + ", ".join("(" + ",".join(s) + ")" for s in basis.state_names())]
    for name, g in gens.items():
        lines.append(f"{name}:")
        for row in g:
            lines.append("  " + "  ".join(_fmt(z) for z in row))
    doc = {
        "basis": [list(s) for s in basis.state_names()],
        "generators": {k: [[_cpx(z) for z in row] for row in g] for k, g in gens.items()},
    }
    _emit(cfg, doc, "\n".join(lines))
    return EXIT_OK


def _poly_doc(p):
    return {"var": p.var, "terms": [{"exp": e, "coeff": c} for e, c in p.coeffs.items()]}


def cmd_knot_jones(args, cfg):
    w = knots.parse_braid(args.word)
    p = knots.jones(w, args.closure, cfg.max_crossings)
    _emit(cfg, {"word": str(w), "closure": args.closure, "jones": _poly_doc(p),
                "exponent_unit": "t^(1/2)"},
          f"{p.format('t-half')}\n  = {p.format('t')}")
    return EXIT_OK


def cmd_knot_bracket(args, cfg):
    w = knots.parse_braid(args.word)
    d = knots.close(w, args.closure)
    p = knots.kauffman_bracket(d, cfg.max_crossings)
    _emit(cfg, {"word": str(w), "closure": args.closure, "bracket": _poly_doc(p)}, p.format())
    return EXIT_OK


def cmd_knot_rinv(args, cfg):
    w = knots.parse_braid(args.word)
    p = knots.rmatrix_invariant(w, cfg.max_strands)
    aligned = knots.ALIGNMENT(p)
    _emit(cfg, {"word": str(w), "rinv": _poly_doc(p), "aligned": _poly_doc(aligned), "exponent_unit": "t^(1/2)"},
          f"{p.format('t-half')}\naligned with V: {aligned.format('t-half')}")
    return EXIT_OK


def _load_circ(spec: str):
    if spec in circuits.BUILTINS:
        return circuits.builtin_circuit(spec)
    if Path(spec).exists():
        return circuits.load_circuit(spec)
    raise UsageError(f"{spec!r} is neither a built-in circuit nor a file")


def cmd_circuit_run(args, cfg):
    c = _load_circ(args.file)
    values = [int(x) for x in args.input.replace(",", " ").split()] if args.input else []
    state = circuits.simulate(c, values)
    terms = sorted(state.amps.items())
    lines = [f"|{''.join(map(str, k))}>: {_fmt(v)}" for k, v in terms]
    doc = {"circuit": c.name, "input": values,
           "state": [{"basis": list(k), "amp": _cpx(v)} for k, v in terms]}
    _emit(cfg, doc, "\n".join(lines))
    return EXIT_OK


def cmd_circuit_table(args, cfg):
    c = _load_circ(args.spec)
    rows = circuits.truth_table(c)
    head_in = [c.wire_names.get(w, str(w)) for w in c.inputs]
    head_out = c.output_names or [c.wire_names.get(w, str(w)) for w in c.outputs]
    lines = [",".join(head_in + head_out)]
    lines += [",".join(map(str, i + o)) for i, o in rows]
    _emit(cfg, {"header": head_in + head_out, "rows": [list(i + o) for i, o in rows]}, "\n".join(lines))
    return EXIT_OK


def cmd_circuit_verify(args, cfg):
    name = args.name
    if name in ("two_digit_adder", "multiplier"):
        bad = circuits.oracle_check(name)
        ok = not bad
        text = f"{name}: {81 - len(bad)}/81 input pairs match integer arithmetic"
        text += "".join(f"\n  A={ab[0]} B={ab[1]} want {w} got {g} stage {s}" for ab, w, g, s in bad)
        doc = {"circuit": name, "matched": 81 - len(bad), "total": 81,
               "mismatches": [{"A": ab[0], "B": ab[1], "want": w, "got": g, "stage": s} for ab, w, g, s in bad]}
    elif name in circuits.BUILTINS:
        matched, total, bad = circuits.compare_to_reference(name)
        ok = not bad
        text = f"{name}: {matched}/{total} rows matched"
        text += "".join(f"\n  in {i} want {w} got {g}" for i, w, g in bad)
        doc = {"circuit": name, "matched": matched, "total": total,
               "mismatches": [{"in": i, "want": w, "got": g} for i, w, g in bad]}
    else:
        raise UsageError(f"unknown built-in circuit {name!r}")
    _emit(cfg, {**doc, "pass": ok}, text)
    return EXIT_OK if ok else EXIT_FAIL


def cmd_gates_verify(args, cfg):
    reports = gates.verify_synthesis(tol=cfg.tolerance, include_corrected=not args.literal_only)
    ok = all(r.passed for r in reports)
    _emit(cfg, {"pass": ok, "checks": [r.to_record() for r in reports]},
          "\n".join(str(r) for r in reports) + f"\n{'OK' if ok else 'FAILED'}")
    return EXIT_OK if ok else EXIT_FAIL


# ---------------------------------------------------------------- parser

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    env_tol = os.environ.get("ANYONFORGE_TOL")
    p = _Parser(prog="anyonforge", description="Anyon models, braids, qutrit circuits and knot invariants.")
    p.add_argument("--tol", type=float, default=float(env_tol) if env_tol else DEFAULT_TOL)
    p.add_argument("--format", choices=["text", "json"], default="text")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--max-crossings", type=int, default=knots.MAX_CROSSINGS)
    p.add_argument("--max-strands", type=int, default=knots.MAX_STRANDS)
    sub = p.add_subparsers(dest="group", required=True, parser_class=_Parser)

    mod = sub.add_parser("model").add_subparsers(dest="action", required=True, parser_class=_Parser)
    s = mod.add_parser("show")
    s.add_argument("name")
    s.set_defaults(fn=cmd_model_show)
    s = mod.add_parser("verify")
    s.add_argument("name")
    s.set_defaults(fn=cmd_model_verify)
    s = mod.add_parser("save")
    s.add_argument("name")
    s.add_argument("path")
    s.set_defaults(fn=cmd_model_save)
    s = mod.add_parser("load")
    s.add_argument("path")
    s.set_defaults(fn=cmd_model_load)

    fr = sub.add_parser("fr").add_subparsers(dest="action", required=True, parser_class=_Parser)
    s = fr.add_parser("table")
    s.add_argument("name")
    s.set_defaults(fn=cmd_fr_table)

    br = sub.add_parser("braid").add_subparsers(dest="action", required=True, parser_class=_Parser)
    s = br.add_parser("rep")
    s.add_argument("name")
    s.add_argument("--anyons", type=int, required=True)
    s.add_argument("--total", required=True)
    s.add_argument("--shape", default="staircase", choices=["staircase", "paired4", "paired8"])
    s.add_argument("--label", default=None, help="leaf charge (default: first non-vacuum label)")
    s.set_defaults(fn=cmd_braid_rep)

    kn = sub.add_parser("knot").add_subparsers(dest="action", required=True, parser_class=_Parser)
    for name, fn in (("jones", cmd_knot_jones), ("bracket", cmd_knot_bracket)):
        s = kn.add_parser(name)
        s.add_argument("word")
        s.add_argument("--closure", choices=["trace", "plat"], default="trace")
        s.set_defaults(fn=fn)
    s = kn.add_parser("rinv")
    s.add_argument("word")
    s.set_defaults(fn=cmd_knot_rinv)

    ci = sub.add_parser("circuit").add_subparsers(dest="action", required=True, parser_class=_Parser)
    s = ci.add_parser("run")
    s.add_argument("file")
    s.add_argument("--input", default="", help="input trits, e.g. '1,2'")
    s.set_defaults(fn=cmd_circuit_run)
    s = ci.add_parser("table")
    s.add_argument("spec")
    s.set_defaults(fn=cmd_circuit_table)
    s = ci.add_parser("verify")
    s.add_argument("name")
    s.set_defaults(fn=cmd_circuit_verify)

    ga = sub.add_parser("gates").add_subparsers(dest="action", required=True, parser_class=_Parser)
    s = ga.add_parser("verify")
    s.add_argument("--literal-only", action="store_true",
                   help="skip the as-realized readings of the permutation identities")
    s.set_defaults(fn=cmd_gates_verify)
    return p


def dispatch(argv: list[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        cfg = CliConfig(args.tol, args.format, args.jobs, args.max_crossings, args.max_strands)
        np.set_printoptions(precision=6, suppress=True)
        return args.fn(args, cfg)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except knots.LimitError as exc:
        print(f"limit exceeded: {exc}", file=sys.stderr)
        return EXIT_LIMIT
    except (ModelError, knots.KnotError, circuits.CircuitError, ValueError, IndexError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main() -> None:
    sys.exit(dispatch())


if __name__ == "__main__":
    main()
