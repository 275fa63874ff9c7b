"""Command-line runner: declare families in a config, run experiments.

Subcommands:
    constants   estimate (c, epsilon, r) for every declared family
    density     empirical vs predicted 1-level density per family
    convolve    shorthand: constants for two families and their convolution
    weil        evaluate expressions in the archimedean representation algebra
    rmt-table   closed-form density predictions on a (group, sigma, rank) grid
    ec-scan     per-prime second-moment ratios and rank partial sums

Configs are flat key-table INI files ([run] section plus one [family ID]
section per family); JSON with the same shape is accepted.  Output is
deterministic: fixed row order, floats printed with 12 significant digits.
"""

from __future__ import annotations

import argparse
import configparser
import json
import re
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Optional

from . import families as fam_mod
from . import rmt, stats, weil
from .arith import sieve_primes
from .ecgeom import EllipticFamilySpec, michel_moment, residue_trace_sum

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_NUMERIC = 3
EXIT_CHECK = 4


class ConfigError(Exception):
    pass


def fmt(x) -> str:
    """Deterministic scalar formatting: 12 significant digits for floats."""
    if isinstance(x, float):
        return f"{x:.12g}"
    if x is None:
        return ""
    return str(x)


# ---------------------------------------------------------------------------
# Configuration


@dataclass
class RunSettings:
    primes: int = 1000
    sigma: float = 1.0
    nu_max: int = 10
    tolerance: float = 0.2
    check_tolerance: float = 0.2
    threads: int = 1
    out: Optional[str] = None
    log_r: Optional[float] = None


@dataclass
class FamilyDecl:
    ident: str
    kind: str
    options: dict = field(default_factory=dict)


@dataclass
class ExperimentConfig:
    run: RunSettings
    declarations: list[FamilyDecl]

    def resolve(self) -> dict[str, fam_mod.Family]:
        """Instantiate declared families; references resolve in order."""
        built: dict[str, fam_mod.Family] = {}
        pending = list(self.declarations)
        progress = True
        while pending and progress:
            progress = False
            remaining = []
            for decl in pending:
                try:
                    built[decl.ident] = _build_family(decl, built)
                    progress = True
                except _Unresolved:
                    remaining.append(decl)
                except (ValueError, TypeError) as exc:
                    raise ConfigError(f"family {decl.ident!r}: {exc}") from exc
            pending = remaining
        if pending:
            missing = ", ".join(d.ident for d in pending)
            raise ConfigError(f"unresolved family references in: {missing}")
        return built


class _Unresolved(Exception):
    pass


def _ints(text: str) -> tuple[int, ...]:
    return tuple(int(tok) for tok in str(text).replace(",", " ").split())


def _build_family(decl: FamilyDecl, built: dict) -> fam_mod.Family:
    kind = decl.kind
    opt = decl.options
    try:
        if kind == "dirichlet":
            return fam_mod.dirichlet_family(int(opt["modulus"]))
        if kind == "quadratic":
            return fam_mod.quadratic_family(
                (int(opt["d_min"]), int(opt["d_max"])),
                stride=int(opt.get("stride", 1)),
            )
        if kind == "elliptic":
            spec = EllipticFamilySpec(
                a_coeffs=_ints(opt["a_poly"]),
                b_coeffs=_ints(opt["b_poly"]),
                t_min=int(opt["t_min"]),
                t_max=int(opt["t_max"]),
            )
            return fam_mod.elliptic_family(spec)
        if kind == "delta":
            return fam_mod.cusp_form_delta(int(opt.get("bound", 2000)))
        if kind == "sym_lift":
            base = opt["base"]
            if base not in built:
                raise _Unresolved(base)
            return fam_mod.sym_lift(built[base], int(opt["power"]))
        if kind == "convolve":
            left, right = opt["left"], opt["right"]
            if left not in built or right not in built:
                raise _Unresolved(left)
            return fam_mod.convolve(
                built[left], built[right], opt.get("collisions", "auto")
            )
        if kind == "twist":
            base = opt["base"]
            if base not in built:
                raise _Unresolved(base)
            return fam_mod.twist_by_fixed(_build_twist(opt["twist"]), built[base])
    except KeyError as exc:
        raise ConfigError(f"family {decl.ident!r}: missing option {exc}") from exc
    raise ConfigError(f"family {decl.ident!r}: unknown kind {kind!r}")


def _build_twist(text: str) -> fam_mod.FixedTwist:
    parts = str(text).split()
    if parts[0] == "kronecker":
        return fam_mod.kronecker_twist(int(parts[1]))
    if parts[0] == "character":
        return fam_mod.character_twist(int(parts[1]), int(parts[2]))
    if parts[0] == "delta":
        bound = int(parts[1]) if len(parts) > 1 else 2000
        return fam_mod.delta_twist(bound)
    raise ConfigError(f"unknown twist spec {text!r}")


def load_config(path: str) -> ExperimentConfig:
    text = Path(path).read_text()
    if path.endswith(".json") or text.lstrip().startswith("{"):
        return _config_from_dict(json.loads(text))
    parser = configparser.ConfigParser()
    parser.read_string(text)
    data: dict = {"run": dict(parser["run"]) if "run" in parser else {}}
    data["families"] = []
    for section in parser.sections():
        if section.startswith("family"):
            ident = section.split(None, 1)[1] if " " in section else section
            opts = dict(parser[section])
            data["families"].append({"id": ident, **opts})
    return _config_from_dict(data)


def _config_from_dict(data: dict) -> ExperimentConfig:
    run_raw = data.get("run", {})
    run = RunSettings(
        primes=int(run_raw.get("primes", 1000)),
        sigma=float(run_raw.get("sigma", 1.0)),
        nu_max=int(run_raw.get("nu_max", 10)),
        tolerance=float(run_raw.get("tolerance", 0.2)),
        check_tolerance=float(run_raw.get("check_tolerance", 0.2)),
        threads=int(run_raw.get("threads", 1)),
        out=run_raw.get("out"),
        log_r=float(run_raw["log_r"]) if "log_r" in run_raw else None,
    )
    decls = []
    for raw in data.get("families", []):
        raw = dict(raw)
        ident = raw.pop("id")
        kind = raw.pop("kind")
        decls.append(FamilyDecl(ident=ident, kind=kind, options=raw))
    if len({d.ident for d in decls}) != len(decls):
        raise ConfigError("duplicate family ids")
    return ExperimentConfig(run=run, declarations=decls)


# ---------------------------------------------------------------------------
# Experiment runners


CONSTANT_COLUMNS = [
    "family_id",
    "sigma",
    "P",
    "c_est",
    "c_class",
    "r_est",
    "eps",
    "log_r",
    "bad_mass",
    "product_check",
]

DENSITY_COLUMNS = [
    "family_id",
    "sigma",
    "P",
    "c_est",
    "c_class",
    "r_est",
    "eps",
    "D1_emp",
    "D1_pred",
    "nu3_tail",
    "bad_mass",
]


def _class_label(value: Optional[int]) -> str:
    return "indeterminate" if value is None else str(value)


def _eps_label(value: Optional[int]) -> str:
    return "unknown" if value is None else str(value)


def run_constants(config: ExperimentConfig) -> list[dict]:
    """FamilyConstant rows; convolutions get a product check column."""
    built = config.resolve()
    run = config.run
    phi = rmt.fejer_test_function(run.sigma)
    cfg = stats.ConstantConfig(
        phi=phi,
        prime_cutoff=run.primes,
        tolerance=run.tolerance,
        log_r=run.log_r,
    )

    def work(item):
        ident, family = item
        return ident, stats.family_constant(family, cfg)

    results: dict[str, stats.FamilyConstant] = {}
    with ThreadPoolExecutor(max_workers=max(1, run.threads)) as pool:
        for ident, fc in pool.map(work, built.items()):
            results[ident] = fc

    rows = []
    for decl in config.declarations:
        fc = results[decl.ident]
        product = ""
        if decl.kind == "convolve":
            left = results.get(decl.options["left"])
            right = results.get(decl.options["right"])
            if left and right:
                product = fmt(left.c_estimate * right.c_estimate)
        rows.append(
            {
                "family_id": decl.ident,
                "sigma": fmt(run.sigma),
                "P": str(run.primes),
                "c_est": fmt(fc.c_estimate),
                "c_class": _class_label(fc.c_class),
                "r_est": fmt(fc.rank_estimate),
                "eps": _eps_label(fc.epsilon),
                "log_r": fmt(fc.log_r),
                "bad_mass": fmt(fc.bad_mass),
                "product_check": product,
            }
        )
    return rows


def run_density(config: ExperimentConfig) -> list[dict]:
    """DensityReport rows joined with the matching closed-form prediction."""
    built = config.resolve()
    run = config.run
    phi = rmt.fejer_test_function(run.sigma)
    cfg = stats.ConstantConfig(
        phi=phi,
        prime_cutoff=run.primes,
        tolerance=run.tolerance,
        log_r=run.log_r,
    )

    def work(item):
        ident, family = item
        fc = stats.family_constant(family, cfg)
        rep = stats.one_level_density(
            family, phi, run.primes, nu_max=run.nu_max, log_r=run.log_r
        )
        c_for_prediction = fc.c_class if fc.c_class is not None else fc.c_estimate
        rep = rep.with_prediction(
            stats.predicted_density(c_for_prediction, fc.rank_estimate, phi)
        )
        return ident, fc, rep

    results = {}
    with ThreadPoolExecutor(max_workers=max(1, run.threads)) as pool:
        for ident, fc, rep in pool.map(work, built.items()):
            results[ident] = (fc, rep)

    rows = []
    for decl in config.declarations:
        fc, rep = results[decl.ident]
        rows.append(
            {
                "family_id": decl.ident,
                "sigma": fmt(run.sigma),
                "P": str(run.primes),
                "c_est": fmt(fc.c_estimate),
                "c_class": _class_label(fc.c_class),
                "r_est": fmt(fc.rank_estimate),
                "eps": _eps_label(fc.epsilon),
                "D1_emp": fmt(rep.empirical),
                "D1_pred": fmt(rep.predicted),
                "nu3_tail": fmt(rep.breakdown["tail"]),
                "bad_mass": fmt(rep.bad_prime_mass),
            }
        )
    return rows


def rows_to_csv(rows: list[dict], columns: list[str]) -> str:
    lines = [",".join(columns)]
    for row in rows:
        lines.append(",".join(row.get(c, "") for c in columns))
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# Weil expression mini-language

_TOKEN_RE = re.compile(
    r"\s*(?:(?P<tensor>\(\*\))|(?P<sym>sym\^\d+)|(?P<name>wedge2|eps|gamma|logcond)"
    r"|(?P<lparen>\()|(?P<rparen>\))|(?P<lbrack>\[)|(?P<rbrack>\])"
    r"|(?P<comma>,)|(?P<rational>-?\d+(?:/\d+)?)|(?P<sign>[+-]))"
)


class WeilParseError(ValueError):
    pass


class _Tokens:
    def __init__(self, text: str):
        self.text = text
        self.items: list[tuple[str, str, int]] = []
        pos = 0
        while pos < len(text):
            m = _TOKEN_RE.match(text, pos)
            if not m or m.end() == pos:
                raise WeilParseError(f"parse error at position {pos}: {text[pos:]!r}")
            kind = m.lastgroup
            self.items.append((kind, m.group(kind), m.start(kind)))
            pos = m.end()
        self.idx = 0

    def peek(self):
        return self.items[self.idx] if self.idx < len(self.items) else (None, "", len(self.text))

    def next(self, expect: Optional[str] = None):
        kind, value, pos = self.peek()
        if expect and kind != expect:
            raise WeilParseError(
                f"parse error at position {pos}: expected {expect}, got {value!r}"
            )
        self.idx += 1
        return kind, value, pos


def _parse_atom(tok: _Tokens) -> weil.WeilRep:
    tok.next("lbrack")
    kind, value, pos = tok.next()
    twist = Fraction(0)
    if kind == "sign":
        base = weil.plus if value == "+" else weil.minus
        maker = lambda t: weil.WeilRep([base(t)])
    elif kind == "rational":
        k = int(value)
        if k < 1:
            raise WeilParseError(f"invalid weight {k} at position {pos}")
        if k == 1:
            maker = lambda t: weil.WeilRep([weil.plus(t), weil.minus(t)])
        else:
            maker = lambda t: weil.WeilRep([weil.disc(k, t)])
    else:
        raise WeilParseError(f"parse error at position {pos}: bad atom")
    if tok.peek()[0] == "comma":
        tok.next()
        _, tval, _ = tok.next("rational")
        twist = Fraction(tval)
    tok.next("rbrack")
    return maker(twist)


def _single_irreducible(rep: weil.WeilRep, what: str) -> weil.WeilIrr:
    cons = rep.constituents()
    if len(cons) != 1:
        raise WeilParseError(f"{what} requires an irreducible input, got {rep}")
    return cons[0]


def _parse_factor(tok: _Tokens) -> weil.WeilRep:
    kind, value, pos = tok.peek()
    if kind == "lbrack":
        return _parse_atom(tok)
    if kind == "sym":
        tok.next()
        m = int(value.split("^")[1])
        tok.next("lparen")
        inner = _parse_expr(tok)
        tok.next("rparen")
        return weil.sym_power(_single_irreducible(inner, value), m)
    if kind == "name" and value == "wedge2":
        tok.next()
        tok.next("lparen")
        inner = _parse_expr(tok)
        tok.next("rparen")
        irr = _single_irreducible(inner, "wedge2")
        if irr.kind != weil.DISC:
            raise WeilParseError("wedge2 of a one-dimensional representation")
        return weil.wedge2(irr)
    if kind == "lparen":
        tok.next()
        inner = _parse_expr(tok)
        tok.next("rparen")
        return inner
    raise WeilParseError(f"parse error at position {pos}: unexpected {value!r}")


def _parse_expr(tok: _Tokens) -> weil.WeilRep:
    rep = _parse_factor(tok)
    while tok.peek()[0] == "tensor":
        tok.next()
        rep = weil.tensor(rep, _parse_factor(tok))
    return rep


_EPS_LABEL = {0: "+1", 1: "i", 2: "-1", 3: "-i"}


def evaluate_weil_expression(text: str) -> dict:
    """Evaluate the mini-language; returns {'kind', 'text', 'value'}."""
    tok = _Tokens(text)
    kind, value, _ = tok.peek()
    query = None
    if kind == "name" and value in ("eps", "gamma", "logcond"):
        query = value
        tok.next()
        tok.next("lparen")
        rep = _parse_expr(tok)
        tok.next("rparen")
    else:
        rep = _parse_expr(tok)
    if tok.peek()[0] is not None:
        _, value, pos = tok.peek()
        raise WeilParseError(f"parse error at position {pos}: trailing {value!r}")
    if query is None:
        return {"kind": "decomposition", "text": str(rep), "value": str(rep)}
    if query == "eps":
        e = weil.epsilon_exponent(rep)
        return {"kind": "epsilon", "text": _EPS_LABEL[e], "value": e}
    if query == "gamma":
        g = weil.gamma_factor(rep)
        parts = [f"GammaR(s+{t})" for t in g.real_shifts]
        parts += [f"GammaC(s+{t})" for t in g.complex_shifts]
        return {
            "kind": "gamma",
            "text": " ".join(parts) if parts else "1",
            "value": {
                "real_shifts": [str(t) for t in g.real_shifts],
                "complex_shifts": [str(t) for t in g.complex_shifts],
            },
        }
    val = weil.log_analytic_conductor(rep)
    return {"kind": "log_conductor", "text": fmt(val), "value": val}


# ---------------------------------------------------------------------------
# Other subcommands


def rmt_table(sigmas: list[float], ranks: list[float]) -> list[dict]:
    rows = []
    for group in rmt.SymmetryGroup:
        for sigma in sigmas:
            phi = rmt.fejer_test_function(sigma)
            for r in ranks:
                rows.append(
                    {
                        "group": group.value,
                        "sigma": fmt(sigma),
                        "r": fmt(r),
                        "prediction": fmt(rmt.one_level_prediction(group, phi, r)),
                    }
                )
    return rows


def ec_scan(spec: EllipticFamilySpec, prime_cutoff: int) -> list[dict]:
    """Per-prime second-moment ratio and running rank estimate."""
    rows = []
    table = sieve_primes(prime_cutoff)
    running = 0.0
    for p, lp in zip(table.primes, table.log_p):
        p = int(p)
        if p < 5:
            continue
        moment = michel_moment(spec, p)
        running += lp / p * residue_trace_sum(spec, p)
        rows.append(
            {
                "p": str(p),
                "michel_ratio": fmt(moment / p**2),
                "nagao_partial": fmt(-running / p),
            }
        )
    return rows


# ---------------------------------------------------------------------------
# Entry point


def _write_output(text: str, out_dir: Optional[str], name: str) -> None:
    if out_dir:
        path = Path(out_dir)
        path.mkdir(parents=True, exist_ok=True)
        (path / name).write_text(text)
    sys.stdout.write(text)


def _has_nan(rows: list[dict]) -> bool:
    return any(v == "nan" or v == "-nan" for row in rows for v in row.values())


def main(argv: Optional[list[str]] = None) -> int:
    parser = argparse.ArgumentParser(
        prog="lfsym", description="Symmetry types of L-function families."
    )
    sub = parser.add_subparsers(dest="command", required=True)

    for name in ("constants", "density"):
        p = sub.add_parser(name)
        p.add_argument("--config", required=True)
        p.add_argument("--primes", type=int)
        p.add_argument("--sigma", type=float)
        p.add_argument("--threads", type=int)
        p.add_argument("--out")
        p.add_argument("--check", action="store_true")
        p.add_argument("--json", action="store_true")

    p = sub.add_parser("convolve")
    p.add_argument("--config", required=True)
    p.add_argument("--left", required=True)
    p.add_argument("--right", required=True)
    p.add_argument("--primes", type=int)
    p.add_argument("--sigma", type=float)
    p.add_argument("--threads", type=int)
    p.add_argument("--out")
    p.add_argument("--check", action="store_true")

    p = sub.add_parser("weil")
    p.add_argument("expression")
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("rmt-table")
    p.add_argument("--sigma", default="0.5,0.8")
    p.add_argument("--ranks", default="0")
    p.add_argument("--out")

    p = sub.add_parser("ec-scan")
    p.add_argument("--a-poly", required=True)
    p.add_argument("--b-poly", required=True)
    p.add_argument("--primes", type=int, default=200)
    p.add_argument("--out")

    args = parser.parse_args(argv)

    try:
        return _dispatch(args)
    except (ConfigError, WeilParseError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


def _apply_overrides(config: ExperimentConfig, args) -> None:
    if getattr(args, "primes", None):
        config.run.primes = args.primes
    if getattr(args, "sigma", None):
        config.run.sigma = args.sigma
    if getattr(args, "threads", None):
        config.run.threads = args.threads


def _dispatch(args) -> int:
    if args.command == "weil":
        result = evaluate_weil_expression(args.expression)
        if args.json:
            print(json.dumps(result, sort_keys=True))
        else:
            print(result["text"])
        return EXIT_OK

    if args.command == "rmt-table":
        sigmas = [float(s) for s in args.sigma.split(",")]
        ranks = [float(r) for r in args.ranks.split(",")]
        rows = rmt_table(sigmas, ranks)
        _write_output(
            rows_to_csv(rows, ["group", "sigma", "r", "prediction"]),
            args.out,
            "rmt_table.csv",
        )
        return EXIT_OK

    if args.command == "ec-scan":
        spec = EllipticFamilySpec(
            a_coeffs=_ints(args.a_poly), b_coeffs=_ints(args.b_poly), t_min=0, t_max=1
        )
        rows = ec_scan(spec, args.primes)
        _write_output(
            rows_to_csv(rows, ["p", "michel_ratio", "nagao_partial"]),
            args.out,
            "ec_scan.csv",
        )
        return EXIT_OK

    config = load_config(args.config)
    _apply_overrides(config, args)

    if args.command == "convolve":
        ids = {d.ident for d in config.declarations}
        for ref in (args.left, args.right):
            if ref not in ids:
                raise ConfigError(f"unknown family id {ref!r}")
        config.declarations.append(
            FamilyDecl(
                ident=f"{args.left}x{args.right}",
                kind="convolve",
                options={"left": args.left, "right": args.right},
            )
        )
        rows = run_constants(config)
        text = rows_to_csv(rows, CONSTANT_COLUMNS)
        _write_output(text, args.out, "constants.csv")
        if _has_nan(rows):
            return EXIT_NUMERIC
        if args.check and any(r["c_class"] == "indeterminate" for r in rows):
            return EXIT_CHECK
        return EXIT_OK

    if args.command == "constants":
        rows = run_constants(config)
        if getattr(args, "json", False):
            text = json.dumps(rows, indent=1, sort_keys=True) + "\n"
            _write_output(text, args.out, "constants.json")
        else:
            _write_output(rows_to_csv(rows, CONSTANT_COLUMNS), args.out, "constants.csv")
        if _has_nan(rows):
            return EXIT_NUMERIC
        if args.check and any(r["c_class"] == "indeterminate" for r in rows):
            return EXIT_CHECK
        return EXIT_OK

    if args.command == "density":
        rows = run_density(config)
        if getattr(args, "json", False):
            text = json.dumps(rows, indent=1, sort_keys=True) + "\n"
            _write_output(text, args.out, "density.json")
        else:
            _write_output(rows_to_csv(rows, DENSITY_COLUMNS), args.out, "density.csv")
        if _has_nan(rows):
            return EXIT_NUMERIC
        if args.check:
            tol = config.run.check_tolerance
            for row in rows:
                if abs(float(row["D1_emp"]) - float(row["D1_pred"])) > tol:
                    return EXIT_CHECK
        return EXIT_OK

    raise ConfigError(f"unknown command {args.command!r}")


if __name__ == "__main__":
    sys.exit(main())
