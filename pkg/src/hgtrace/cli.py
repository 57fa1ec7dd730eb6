"""Command-line interface.

    hgtrace hsum --alpha 1/2,1/2 --beta 1,1 --lambda 2 --p 7
    hgtrace trace --group 2,3,inf --weight 12 --p 5..47 --format csv
    hgtrace eigen --group 2,4,6 --weight 24 --p 5
    hgtrace verify --suite k2-sums --pmax 50
    hgtrace ec-count --family gamma1_4 --t 2 --p 7
    hgtrace fixtures fetch --label 6.4.a.a --pmax 200

Exit status is 0 on success, 1 when a computation raises an error and 2
on a usage error.  JSON output has sorted keys, so identical inputs give
byte-identical output; nothing here depends on a random seed except the
parameter sampling in ``verify``, which uses a fixed seed by default.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

from sympy import isprime, primerange

from . import __version__
from .errors import BadPrime, HGTraceError

FORMATS = ("json", "csv", "text")


class UsageError(Exception):
    """Raised for arguments that parse but make no sense; maps to exit status 2."""


@dataclass
class RunConfig:
    command: str
    group: str = ""
    weight: int = 0
    primes: list[int] = field(default_factory=list)
    datum: str = ""
    alpha: str = ""
    beta: str = ""
    r: int = 1
    lam: str = ""
    output: str = "json"
    route: str = "hq"
    table_limit: int = 2_000_000
    guard_primes: int = 1
    network: bool = False
    jobs: int = 1
    suite: str = ""
    seed: int = 0
    family: str = ""
    t: str = ""
    label: str = ""
    pmax: int = 200
    action: str = ""

    def validate(self) -> None:
        if self.output not in FORMATS:
            raise UsageError(f"unknown format {self.output!r}")
        if self.guard_primes < 1:
            raise UsageError("--guard-primes must be at least 1")
        if self.jobs < 1:
            raise UsageError("--jobs must be at least 1")
        if self.command in {"trace", "eigen", "hsum", "ec-count"} and not self.primes:
            raise UsageError("the prime range is empty")


def parse_primes(text: str) -> list[int]:
    """``"7"`` or ``"A..B"`` (primes only, inclusive)."""
    text = text.strip()
    try:
        if ".." in text:
            lo, hi = (int(x) for x in text.split("..", 1))
            if lo > hi:
                raise UsageError(f"empty range {text!r}")
            return [int(p) for p in primerange(lo, hi + 1)]
        p = int(text)
    except ValueError as exc:
        raise UsageError(f"cannot parse prime range {text!r}") from exc
    if not isprime(p):
        raise UsageError(f"{p} is not prime")
    return [p]


# ---------------------------------------------------------------------------
# serialisation


def _canon(x):
    if isinstance(x, Fraction):
        return x.numerator if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
    if isinstance(x, dict):
        return {str(k): _canon(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_canon(v) for v in x]
    if hasattr(x, "item") and not isinstance(x, (int, float, str)):
        return x.item()
    return x


def dumps(obj) -> str:
    return json.dumps(_canon(obj), sort_keys=True, indent=2) + "\n"


def _notice(msg: str) -> None:
    print(f"notice: {msg}", file=sys.stderr)


# ---------------------------------------------------------------------------
# commands


def _trace_one(args: tuple[str, int, int]) -> dict:
    from .trace_engine import hecke_trace

    group, k, p = args
    return hecke_trace(group, k, p).to_dict()


def _good_primes(cfg: RunConfig, check) -> list[int]:
    good = []
    for p in cfg.primes:
        try:
            check(p)
        except BadPrime as exc:
            _notice(f"skipping p = {p}: {exc}")
            continue
        good.append(p)
    return good


def cmd_trace(cfg: RunConfig) -> str:
    from .groups import check_prime, lookup
    from .trace_engine import _admissible

    spec = lookup(cfg.group)
    k = cfg.weight - 2
    _admissible(spec, k)
    primes = _good_primes(cfg, lambda p: check_prime(spec, p))
    tasks = [(spec.name, k, p) for p in primes]
    if cfg.jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(cfg.jobs) as pool:
            reports = list(pool.map(_trace_one, tasks))
    else:
        reports = [_trace_one(t) for t in tasks]
    if cfg.output == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["group", "weight", "p", "trace"])
        for r in reports:
            w.writerow([r["group"], r["weight"], r["p"], r["trace"]])
        return buf.getvalue()
    if cfg.output == "text":
        return "".join(f"Tr T_{r['p']} on S_{r['weight']}({r['group']}) = {r['trace']}\n" for r in reports)
    return dumps(reports[0] if len(reports) == 1 else reports)


def cmd_eigen(cfg: RunConfig) -> str:
    from .eigensolver import hecke_eigenvalues
    from .groups import check_prime, lookup

    spec = lookup(cfg.group)
    primes = _good_primes(cfg, lambda p: check_prime(spec, p))
    reports = [hecke_eigenvalues(spec, cfg.weight, p) for p in primes]
    if cfg.output == "text":
        return "".join(
            f"T_{r.p} on S_{r.weight}({r.group}): " + ", ".join(str(e) for e in r.eigenvalues or r.numeric) + "\n"
            for r in reports
        )
    if cfg.output == "csv":
        raise UsageError("eigen supports json and text output")
    out = [r.to_dict() for r in reports]
    return dumps(out[0] if len(out) == 1 else out)


def _hsum_datum(cfg: RunConfig):
    from .hgdata import build_datum, parse_datum, parse_rationals

    if cfg.datum:
        return parse_datum(cfg.datum)
    if not (cfg.alpha and cfg.beta):
        raise UsageError("give --datum or both --alpha and --beta")
    return build_datum(parse_rationals(cfg.alpha), parse_rationals(cfg.beta))


def cmd_hsum(cfg: RunConfig) -> str:
    from .charsum import h_function, pp_function
    from .errors import CongruenceRequired, Unsupported
    from .ffield import make_extension_field

    d = _hsum_datum(cfg)
    rows = []
    for p in cfg.primes:
        ctx = make_extension_field(p, cfg.r, cfg.table_limit)
        lams = [cfg.lam] if cfg.lam else [str(x) for x in range(p)]
        for lam in lams:
            v = h_function(d, Fraction(lam), ctx, route=cfg.route, guard=cfg.guard_primes)
            try:
                pval = pp_function(d, Fraction(lam), ctx).value
            except (CongruenceRequired, Unsupported):
                pval = None
            rows.append(
                {
                    "datum": str(d),
                    "p": p,
                    "q": ctx.q,
                    "lambda": lam,
                    "route": cfg.route,
                    "H": v.value,
                    "aux_primes": len(v.primes),
                    "P": pval,
                    "integer_lift": v.integer_lift,
                }
            )
    if cfg.output == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["datum", "q", "lambda", "H"])
        for r in rows:
            w.writerow([r["datum"], r["q"], r["lambda"], _canon(r["H"])])
        return buf.getvalue()
    if cfg.output == "text":
        return "".join(f"H_{r['q']}({r['datum']}; {r['lambda']}) = {_canon(r['H'])}\n" for r in rows)
    return dumps(rows[0] if len(rows) == 1 else rows)


def cmd_verify(cfg: RunConfig) -> str:
    from .oracles import SUITES, run_identity_suite

    names = list(SUITES) if cfg.suite == "all" else [cfg.suite]
    for n in names:
        if n not in SUITES:
            raise UsageError(f"unknown suite {n!r}; choose from {', '.join(SUITES)} or all")
    reports = []
    for n in names:
        try:
            reports.append(run_identity_suite(n, cfg.pmax, seed=cfg.seed).to_dict())
        except HGTraceError as exc:
            if type(exc).__name__ != "FixtureRequired":
                raise
            reports.append({"suite": n, "passed": False, "skipped": str(exc), "checks": 0, "failures": []})
    if cfg.output == "text":
        lines = []
        for r in reports:
            status = "SKIP" if r["skipped"] else ("PASS" if r["passed"] else "FAIL")
            lines.append(f"{status} {r['suite']} ({r['checks']} checks)\n")
        return "".join(lines)
    return dumps(reports[0] if len(reports) == 1 else reports)


def cmd_ec_count(cfg: RunConfig) -> str:
    from .oracles import ec_count, family

    fam = family(cfg.family)
    rows = [{"family": fam.name, "t": cfg.t, "p": p, "count": ec_count(fam, Fraction(cfg.t), p)} for p in cfg.primes]
    if cfg.output == "text":
        return "".join(f"#E_{r['t']}(F_{r['p']}) = {r['count']}\n" for r in rows)
    if cfg.output == "csv":
        return "family,t,p,count\n" + "".join(f"{r['family']},{r['t']},{r['p']},{r['count']}\n" for r in rows)
    return dumps(rows[0] if len(rows) == 1 else rows)


def cmd_fixtures(cfg: RunConfig) -> str:
    from . import fixtures

    if cfg.action == "fetch":
        if not (cfg.network or fixtures.network_allowed()):
            raise fixtures.FixtureUnavailable(f"fetching needs --network or {fixtures.NETWORK_ENV}=1")
        fx = fixtures.fetch(cfg.label, cfg.pmax)
    else:
        fx = fixtures.get_fixture(cfg.label, allow_network=cfg.network)
    out = fx.to_dict()
    out["source"] = fx.source
    return dumps(out)


COMMANDS = {
    "trace": cmd_trace,
    "eigen": cmd_eigen,
    "hsum": cmd_hsum,
    "verify": cmd_verify,
    "ec-count": cmd_ec_count,
    "fixtures": cmd_fixtures,
}


# ---------------------------------------------------------------------------
# argument parsing


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", dest="output", choices=FORMATS, default="json")
    common.add_argument("--json", dest="output", action="store_const", const="json")
    common.add_argument("--csv", dest="output", action="store_const", const="csv")
    common.add_argument("--jobs", type=int, default=1, help="worker processes (default 1)")

    ap = argparse.ArgumentParser(prog="hgtrace", description="Exact hypergeometric character sums and Hecke traces.")
    ap.add_argument("--version", action="version", version=f"hgtrace {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    s = sub.add_parser("trace", parents=[common], help="Tr T_p on S_w(Gamma)")
    s.add_argument("--group", required=True)
    s.add_argument("--weight", type=int, required=True)
    s.add_argument("--p", required=True, help="a prime or a range A..B")

    s = sub.add_parser("eigen", parents=[common], help="eigenvalues of T_p")
    s.add_argument("--group", required=True)
    s.add_argument("--weight", type=int, required=True)
    s.add_argument("--p", required=True)

    s = sub.add_parser("hsum", parents=[common], help="H_p(datum; lambda)")
    s.add_argument("--datum", default="", help='e.g. "1/2,1/2;1,1"')
    s.add_argument("--alpha", default="", help='e.g. "1/2,1/2"')
    s.add_argument("--beta", default="", help='e.g. "1,1"')
    s.add_argument("--lambda", "--lam", dest="lam", default="", help="a rational; omit for every lambda in F_p")
    s.add_argument("--p", required=True)
    s.add_argument("--r", type=int, default=1, help="extension degree")
    s.add_argument("--route", choices=("hq", "gauss", "pp"), default="hq")
    s.add_argument("--table-limit", type=int, default=2_000_000)
    s.add_argument("--guard-primes", type=int, default=1, help="auxiliary primes beyond the CRT bound (default 1)")

    s = sub.add_parser("verify", parents=[common], help="run a character-sum identity suite")
    s.add_argument("--suite", required=True)
    s.add_argument("--pmax", type=int, default=97)
    s.add_argument("--seed", type=int, default=0)

    s = sub.add_parser("ec-count", parents=[common], help="#E_t(F_p) by enumeration")
    s.add_argument("--family", required=True)
    s.add_argument("--t", required=True)
    s.add_argument("--p", required=True)

    s = sub.add_parser("fixtures", parents=[common], help="reference newform coefficients")
    s.add_argument("action", choices=("fetch", "show"))
    s.add_argument("--label", required=True)
    s.add_argument("--pmax", type=int, default=200)
    s.add_argument("--network", action="store_true", help="permit HTTP requests")
    return ap


def config_from_args(ns: argparse.Namespace) -> RunConfig:
    cfg = RunConfig(command=ns.command, output=ns.output, jobs=ns.jobs)
    for name in ("group", "weight", "datum", "alpha", "beta", "r", "lam", "route", "table_limit", "guard_primes", "suite", "seed", "family", "t", "label", "pmax", "network", "action"):
        if hasattr(ns, name):
            setattr(cfg, name, getattr(ns, name))
    if hasattr(ns, "p"):
        cfg.primes = parse_primes(ns.p)
    cfg.validate()
    return cfg


def run(argv: list[str] | None = None, out=None) -> int:
    out = sys.stdout if out is None else out
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        cfg = config_from_args(ns)
        text = COMMANDS[cfg.command](cfg)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    except HGTraceError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    out.write(text)
    return 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
