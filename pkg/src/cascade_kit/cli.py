"""Command-line front end: ``cascade``, ``verify``, ``table`` and ``constants``."""
from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

from . import __version__
from .cascade import compute_cascade, verify_section1
from .chevalley import build_chevalley
from .coadjoint import DEFAULT_SEED, verify_coadjoint
from .invariants import CapExceeded, TheoremViolation, semigroup_generators, verify_invariants
from .report import SCHEMA_VERSION, VerificationReport, jsonable
from .rootsys import TypeSpec, TypeSpecError, build_root_system

SUITES = ("section1", "coadjoint", "invariants")
EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    type_specs: list[TypeSpec]
    checks: tuple[str, ...] = SUITES
    seed: int = DEFAULT_SEED
    samples: int = 25
    r_cap: int = 6
    format: str = "json"
    invariance_samples: int = 10
    polynomials: bool | None = None  # None: full for classical/G2, lattice-only for F4/E
    inject_failure: bool = False

    def __post_init__(self):
        if not self.type_specs:
            raise UsageError("no types given")
        if self.samples < 1:
            raise UsageError("--samples must be >= 1")
        if self.r_cap < 1:
            raise UsageError("--r-cap must be >= 1")
        if not 0 <= self.seed < 2**64:
            raise UsageError("--seed must be a 64-bit unsigned integer")

    def header(self, command: str = "verify") -> dict:
        head = {"version": __version__, "schema": SCHEMA_VERSION, "command": command,
                "seed": self.seed, "samples": self.samples, "r_cap": self.r_cap,
                "types": [str(t) for t in self.type_specs]}
        if command == "verify":
            head["checks"] = list(self.checks)
            head["invariance_samples"] = self.invariance_samples
            head["polynomials"] = self.polynomials
        return head


def _workers() -> int:
    raw = os.environ.get("CASCADE_KIT_THREADS", "")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def _fan_out(fn, items):
    """Map ``fn`` over ``items`` on a bounded pool; results keep input order."""
    items = list(items)
    n = min(_workers(), len(items))
    if n <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=n) as pool:
        return list(pool.map(fn, items))


def _polynomials_for(spec: TypeSpec, cfg: RunConfig) -> bool:
    if cfg.polynomials is not None:
        return cfg.polynomials
    return all(fam in "ABCDG" for fam, _ in spec.components)


# ---------------------------------------------------------------- commands

def cascade_record(spec: TypeSpec) -> dict:
    rs = build_root_system(spec)
    cas = compute_cascade(rs)
    out = cas.to_dict()
    out["n_positive"] = len(rs.positive_roots)
    out["layer_sizes"] = [len(n.layer) for n in cas.nodes]
    return out


def cmd_cascade(cfg: RunConfig) -> tuple[int, str]:
    records = _fan_out(cascade_record, cfg.type_specs)
    if cfg.format == "json":
        return EXIT_OK, _dump({**cfg.header("cascade"), "cascades": records})
    if cfg.format == "tsv":
        rows = ["type\tindex\tbeta\tsupport\tparent\th_dual\tlayer_size"]
        for rec in records:
            for k, node in enumerate(rec["nodes"]):
                parent = "" if node["parent"] is None else node["parent"]
                rows.append(f"{rec['type']}\t{k}\t{_vec(node['beta'])}\t{_vec(node['support'])}"
                            f"\t{parent}\t{node['h_dual']}\t{len(node['layer'])}")
        return EXIT_OK, "\n".join(rows) + "\n"
    lines = []
    for rec in records:
        lines.append(f"{rec['type']}: m={rec['m']}  |Delta+|={rec['n_positive']}")
        for node in rec["nodes"]:
            depth = 0
            p = node["parent"]
            while p is not None:
                depth += 1
                p = rec["nodes"][p]["parent"]
            lines.append(f"{'  ' * (depth + 1)}beta={_vec(node['beta'])}  h_dual={node['h_dual']}"
                         f"  |E(beta)|={len(node['layer'])}  support={_vec(node['support'])}")
    return EXIT_OK, "\n".join(lines) + "\n"


def verify_type(spec: TypeSpec, cfg: RunConfig) -> list[VerificationReport]:
    rs = build_root_system(spec)
    cas = compute_cascade(rs)
    reports = []
    if "section1" in cfg.checks:
        rep = verify_section1(rs, cas)
        rep.seed, rep.samples = cfg.seed, cfg.samples
        reports.append(rep)
    if "coadjoint" in cfg.checks or "invariants" in cfg.checks:
        tbl = build_chevalley(rs)
    if "coadjoint" in cfg.checks:
        reports.append(verify_coadjoint(tbl, cas, cfg.samples, cfg.seed))
    if "invariants" in cfg.checks:
        reports.append(verify_invariants(
            tbl, cas, cfg.r_cap, cfg.seed, invariance_samples=cfg.invariance_samples,
            polynomials=_polynomials_for(spec, cfg)))
    if cfg.inject_failure:
        rep = VerificationReport("injected", str(spec), cfg.seed, cfg.samples)
        rep.add("forced_failure", False, "failure injected by test hook")
        reports.append(rep)
    return reports


def cmd_verify(cfg: RunConfig) -> tuple[int, str]:
    per_type = _fan_out(lambda s: verify_type(s, cfg), cfg.type_specs)
    reports = [r for group in per_type for r in group]
    ok = all(r.passed for r in reports)
    code = EXIT_OK if ok else EXIT_FAIL
    records = [rec for r in reports for rec in r.records()]
    if cfg.format == "json":
        return code, _dump({**cfg.header(), "status": "pass" if ok else "fail",
                            "results": records})
    if cfg.format == "tsv":
        rows = ["check\ttype\tstatus\tevidence"]
        rows += [f"{r['check']}\t{r['type']}\t{r['status']}\t{r['evidence']}" for r in records]
        return code, "\n".join(rows) + "\n"
    body = "\n".join(r.summary() for r in reports)
    return code, f"{body}\n{'PASS' if ok else 'FAIL'}: {sum(r.passed for r in reports)}" \
                 f"/{len(reports)} suites\n"


def table_record(spec: TypeSpec, r_cap: int) -> dict:
    rs = build_root_system(spec)
    cas = compute_cascade(rs)
    rec = {"type": str(spec), "m": cas.m, "betas": [list(b) for b in cas.order]}
    try:
        gens = semigroup_generators(rs, cas, r_cap)
    except (CapExceeded, TheoremViolation) as exc:
        return {**rec, "mus_over_B": [], "mus_over_simples": [], "degrees": [], "det": None,
                "status": f"error: {exc}"}
    return {**rec, "mus_over_B": [list(mu) for mu in gens.mus],
            "mus_over_simples": [list(mu) for mu in gens.mus_simple],
            "degrees": list(gens.degrees), "det": gens.det, "status": "ok"}


def cmd_table(cfg: RunConfig) -> tuple[int, str]:
    records = _fan_out(lambda s: table_record(s, cfg.r_cap), cfg.type_specs)
    code = EXIT_OK if all(r["status"] == "ok" for r in records) else EXIT_FAIL
    if cfg.format == "json":
        return code, _dump({**cfg.header("table"), "rows": records})
    if cfg.format == "tsv":
        cols = ("type", "m", "betas", "mus_over_B", "mus_over_simples", "degrees", "det",
                "status")
        rows = ["\t".join(cols)]
        rows += ["\t".join(_cell(rec[c]) for c in cols) for rec in records]
        return code, "\n".join(rows) + "\n"
    lines = []
    for rec in records:
        lines.append(f"{rec['type']}  m={rec['m']}  det={rec['det']}"
                     + ("" if rec["status"] == "ok" else f"  [{rec['status']}]"))
        for b, mu, ms, d in zip(rec["betas"], rec["mus_over_B"], rec["mus_over_simples"],
                                rec["degrees"]):
            lines.append(f"  beta={_vec(b)}  mu={_vec(mu)} (simples {_vec(ms)})  degree {d}")
    return code, "\n".join(lines) + "\n"


def cmd_constants(cfg: RunConfig) -> tuple[int, str]:
    tables = _fan_out(lambda s: build_chevalley(build_root_system(s)), cfg.type_specs)
    if cfg.format == "json":
        data = [{"type": str(s), "constants": [[list(a), list(b), n] for (a, b), n
                                                in sorted(t.constants.items())]}
                for s, t in zip(cfg.type_specs, tables)]
        return EXIT_OK, _dump({**cfg.header("constants"), "tables": data})
    out = []
    for s, t in zip(cfg.type_specs, tables):
        out.append(f"# {s}\n{t.to_tsv()}")
    return EXIT_OK, "".join(out)


COMMANDS = {"cascade": cmd_cascade, "verify": cmd_verify, "table": cmd_table,
            "constants": cmd_constants}


# ---------------------------------------------------------------- helpers

def _dump(obj) -> str:
    return json.dumps(jsonable(obj), sort_keys=True, indent=2) + "\n"


def _vec(v) -> str:
    return "[" + ",".join(str(x) for x in v) + "]"


def _cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, list):
        if value and isinstance(value[0], list):
            return ";".join(_vec(v) for v in value)
        return _vec(value)
    return str(value)


def _parse_types(positional: list[str], option: list[str]) -> list[TypeSpec]:
    raw = [tok for chunk in positional + option for tok in chunk.split(",")]
    raw = [tok.strip() for tok in raw if tok.strip()]
    return [TypeSpec.parse(tok) for tok in raw]


def _parse_checks(text: str) -> tuple[str, ...]:
    names = {t.strip() for t in text.split(",") if t.strip()}
    unknown = names - set(SUITES) - {"all"}
    if unknown or not names:
        raise UsageError(f"unknown checks: {sorted(unknown) or text!r}")
    if "all" in names:
        return SUITES
    return tuple(s for s in SUITES if s in names)


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("types", nargs="*", help="type specs, e.g. A3 B2xG2 (commas allowed)")
    common.add_argument("--types", dest="types_opt", action="append", default=[],
                        help="comma-separated type specs")
    common.add_argument("--seed", type=lambda s: int(s, 0), default=DEFAULT_SEED)
    common.add_argument("--samples", type=int, default=25)
    common.add_argument("--r-cap", type=int, default=6)
    common.add_argument("--format", choices=("json", "tsv", "text"), default=None)
    common.add_argument("--out", metavar="FILE")

    parser = _Parser(prog="cascade-kit", description=__doc__)
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    sub.add_parser("cascade", parents=[common], help="cascade forest, layers and h_dual")
    verify = sub.add_parser("verify", parents=[common], help="run verification suites")
    verify.add_argument("--checks", default="all",
                        help="comma list of section1, coadjoint, invariants or all")
    verify.add_argument("--invariance-samples", type=int, default=10,
                        help="group elements and points for the N-invariance grid")
    poly = verify.add_mutually_exclusive_group()
    poly.add_argument("--polynomials", dest="polynomials", action="store_true", default=None,
                      help="compute invariant polynomials even for F4/E types")
    poly.add_argument("--lattice-only", dest="polynomials", action="store_false",
                      help="only the generator/lattice part of the invariants suite")
    verify.add_argument("--inject-failure", action="store_true", help=argparse.SUPPRESS)
    sub.add_parser("table", parents=[common], help="generator table per type")
    sub.add_parser("constants", parents=[common], help="Chevalley structure constants")
    return parser


def config_from_args(args: argparse.Namespace) -> RunConfig:
    default_format = "text" if args.command == "cascade" else (
        "tsv" if args.command == "constants" else "json")
    return RunConfig(
        type_specs=_parse_types(args.types, args.types_opt),
        checks=_parse_checks(getattr(args, "checks", "all")),
        seed=args.seed, samples=args.samples, r_cap=args.r_cap,
        format=args.format or default_format,
        invariance_samples=getattr(args, "invariance_samples", 10),
        polynomials=getattr(args, "polynomials", None),
        inject_failure=getattr(args, "inject_failure", False),
    )


def run(argv: list[str] | None = None) -> tuple[int, str, str | None]:
    """Parse and execute; returns (exit code, output text, output file)."""
    try:
        args = build_parser().parse_args(argv)
        cfg = config_from_args(args)
    except (UsageError, TypeSpecError, ValueError) as exc:
        return EXIT_USAGE, f"error: {exc}\n", None
    code, text = COMMANDS[args.command](cfg)
    return code, text, args.out


def main(argv: list[str] | None = None) -> int:
    code, text, out = run(argv)
    if code == EXIT_USAGE:
        sys.stderr.write(text)
        return code
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
