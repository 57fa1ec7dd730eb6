"""Reference Hecke eigenvalues for a short list of newform labels.

Values come from JSON files, one per label.  Some files ship with the
package and the rest can be fetched from the public modular-forms database
(needs ``HGTRACE_NETWORK=1`` or ``allow_network=True``) into a local cache.
A file looks like

    {"label": "6.4.a.a", "weight": 4, "level": 6, "ap": {"5": 6, ...}}

An irrational coefficient a + b sqrt(D) is stored as {"a": a, "b": b, "D": D},
with rationals written as "n/d" strings.
"""

from __future__ import annotations

import json
import logging
import os
import re
import tempfile
import time
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources
from pathlib import Path

from sympy import isprime

from .eigensolver import Surd, _squarefree_split
from .errors import FixtureUnavailable, UnknownLabel

log = logging.getLogger(__name__)

LABELS = (
    "6.8.a.a",
    "6.4.a.a",
    "24.3.h.a",
    "8.3.d.a",
    "48.3.e.a",
    "144.3.g.a",
    "36.2.a.a",
    "64.2.a.a",
    "256.2.a.a",
    "676.2.a.a",
    "18.4.a.a",
    "6.24.a.d",
)

DEFAULT_BASE_URL = "https://www.lmfdb.org"
BASE_URL_ENV = "HGTRACE_LMFDB_URL"
NETWORK_ENV = "HGTRACE_NETWORK"
CACHE_ENV = "HGTRACE_FIXTURE_DIR"

_LABEL_RE = re.compile(r"^(\d+)\.(\d+)\.([a-z]+)\.([a-z]+)$")

Coefficient = int | Surd


def parse_label(label: str) -> tuple[int, int]:
    """(level, weight) of a newform label N.k.c.x."""
    m = _LABEL_RE.match(label.strip())
    if not m:
        raise UnknownLabel(f"malformed newform label {label!r}")
    return int(m.group(1)), int(m.group(2))


def _check_label(label: str) -> str:
    label = label.strip()
    parse_label(label)
    if label not in LABELS:
        raise UnknownLabel(f"{label} is not one of the supported labels: {', '.join(LABELS)}")
    return label


def network_allowed() -> bool:
    return os.environ.get(NETWORK_ENV, "").strip().lower() in {"1", "true", "yes", "on"}


def cache_dir() -> Path:
    env = os.environ.get(CACHE_ENV)
    return Path(env) if env else Path.home() / ".cache" / "hgtrace" / "fixtures"


def _file_name(label: str) -> str:
    return label + ".json"


# ---------------------------------------------------------------------------
# encoding


def _num(x: Fraction):
    return x.numerator if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def encode_coefficient(c: Coefficient):
    if isinstance(c, Surd):
        if c.b == 0:
            return _num(c.a)
        return {"a": _num(c.a), "b": _num(c.b), "D": c.D}
    return int(c)


def decode_coefficient(v) -> Coefficient:
    if isinstance(v, dict):
        return Surd(Fraction(v["a"]), Fraction(v["b"]), int(v["D"]))
    if isinstance(v, str):
        x = Fraction(v)
        return x.numerator if x.denominator == 1 else Surd(x, Fraction(0), 1)
    return int(v)


@dataclass
class NewformFixture:
    label: str
    weight: int
    level: int
    ap: dict[int, Coefficient]
    source: str = "shipped"
    fetched_at: str = ""
    origin: str = ""
    extra: dict = field(default_factory=dict)

    @property
    def p_max(self) -> int:
        return max(self.ap, default=0)

    def is_bad(self, p: int) -> bool:
        return self.level % p == 0

    def deligne_ok(self) -> bool:
        """|a_p| <= 2 p^((w-1)/2) at good primes, for every embedding."""
        for p, c in self.ap.items():
            if self.is_bad(p):
                continue
            vals = [float(c), float(c.conjugate())] if isinstance(c, Surd) else [float(c)]
            if any(v * v > 4 * p ** (self.weight - 1) * (1 + 1e-12) for v in vals):
                return False
        return True

    def to_dict(self) -> dict:
        out = {
            "label": self.label,
            "weight": self.weight,
            "level": self.level,
            "ap": {str(p): encode_coefficient(self.ap[p]) for p in sorted(self.ap)},
        }
        if self.origin:
            out["origin"] = self.origin
        if self.fetched_at:
            out["fetched_at"] = self.fetched_at
        out.update(self.extra)
        return out

    def dumps(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=1) + "\n"

    @classmethod
    def from_dict(cls, data: dict, source: str = "shipped") -> "NewformFixture":
        known = {"label", "weight", "level", "ap", "origin", "fetched_at"}
        return cls(
            label=data["label"],
            weight=int(data["weight"]),
            level=int(data["level"]),
            ap={int(p): decode_coefficient(v) for p, v in data["ap"].items()},
            source=source,
            fetched_at=data.get("fetched_at", ""),
            origin=data.get("origin", ""),
            extra={k: v for k, v in data.items() if k not in known},
        )


# ---------------------------------------------------------------------------
# storage

_MEMO: dict[str, NewformFixture] = {}


def _shipped_text(label: str) -> str | None:
    res = resources.files("hgtrace") / "data" / "fixtures" / _file_name(label)
    return res.read_text() if res.is_file() else None


def _cached_text(label: str) -> str | None:
    path = cache_dir() / _file_name(label)
    return path.read_text() if path.is_file() else None


def persist(fx: NewformFixture, directory: Path | None = None) -> Path:
    """Write ``fx`` to the cache by atomic replacement."""
    directory = cache_dir() if directory is None else Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    target = directory / _file_name(fx.label)
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".tmp-", suffix=".json")
    with os.fdopen(fd, "w") as fh:
        fh.write(fx.dumps())
    os.chmod(tmp, 0o644)
    os.replace(tmp, target)
    return target


def load_fixture(label: str) -> NewformFixture | None:
    """The cached or shipped fixture, or None; the cache takes precedence."""
    label = _check_label(label)
    if label in _MEMO:
        return _MEMO[label]
    for text, source in ((_cached_text(label), "fetched"), (_shipped_text(label), "shipped")):
        if text is not None:
            fx = NewformFixture.from_dict(json.loads(text), source)
            _MEMO[label] = fx
            return fx
    return None


def clear_memo() -> None:
    _MEMO.clear()


# ---------------------------------------------------------------------------
# network client


def _surd_from_quadratic(coeffs: list[Fraction], poly: list[int]) -> Surd:
    """c0 + c1 x with x the larger root of poly[2] x^2 + poly[1] x + poly[0]."""
    c0, c1 = coeffs
    b, c = Fraction(poly[1], poly[2]), Fraction(poly[0], poly[2])
    disc = b * b - 4 * c
    if disc <= 0:
        raise FixtureUnavailable("the coefficient field is not real quadratic")
    # sqrt(N/M) = sqrt(N M)/M = s sqrt(D)/M
    s, D = _squarefree_split(disc.numerator * disc.denominator)
    rational = c0 - c1 * b / 2
    irr = c1 * Fraction(s, 2 * disc.denominator)
    if D == 1:
        return Surd(rational + irr, Fraction(0), 1)
    return Surd(rational, irr, D)


def _parse_newform(rec: dict, hecke: dict | None, label: str, pmax: int) -> NewformFixture:
    level, weight = int(rec["level"]), int(rec["weight"])
    dim = int(rec.get("dim", 1))
    ap: dict[int, Coefficient] = {}
    if dim == 1:
        traces = rec["traces"]
        shift = 0 if traces and traces[0] == 0 else 1
        for p in range(2, pmax + 1):
            if isprime(p) and p - shift < len(traces):
                ap[p] = int(traces[p - shift])
    elif dim == 2 and hecke is not None:
        poly = [int(c) for c in hecke["field_poly"]]
        nums = hecke.get("hecke_ring_numerators") or [[1, 0], [0, 1]]
        dens = hecke.get("hecke_ring_denominators") or [1, 1]
        basis = [[Fraction(int(n), int(d)) for n in row] + [Fraction(0)] * (2 - len(row)) for row, d in zip(nums, dens)]
        an = hecke["an"]
        for p in range(2, pmax + 1):
            if isprime(p) and p - 1 < len(an):
                v = [int(x) for x in an[p - 1]]
                coeffs = [sum(v[i] * basis[i][j] for i in range(len(v))) for j in range(2)]
                ap[p] = _surd_from_quadratic(coeffs, poly)
    else:
        raise FixtureUnavailable(f"{label} has dimension {dim}; only dimensions 1 and 2 can be imported")
    return NewformFixture(
        label,
        weight,
        level,
        ap,
        source="fetched",
        fetched_at=time.strftime("%Y-%m-%dT%H:%M:%SZ", time.gmtime()),
        origin="lmfdb",
    )


def fetch(label: str, pmax: int = 200, *, base_url: str | None = None, timeout: float = 30.0) -> NewformFixture:
    """Download a_p for p <= pmax and persist them to the cache."""
    import requests

    label = _check_label(label)
    base = (base_url or os.environ.get(BASE_URL_ENV) or DEFAULT_BASE_URL).rstrip("/")
    try:
        r = requests.get(
            f"{base}/api/mf_newforms/",
            params={"label": label, "_format": "json", "_fields": "label,level,weight,dim,traces"},
            timeout=timeout,
        )
        r.raise_for_status()
        rows = r.json().get("data", [])
        if not rows:
            raise FixtureUnavailable(f"{label} was not found at {base}")
        rec = rows[0]
        hecke = None
        if int(rec.get("dim", 1)) == 2:
            h = requests.get(
                f"{base}/api/mf_hecke_nf/",
                params={"label": label, "_format": "json"},
                timeout=timeout,
            )
            h.raise_for_status()
            hrows = h.json().get("data", [])
            hecke = hrows[0] if hrows else None
    except requests.RequestException as exc:
        raise FixtureUnavailable(f"could not fetch {label}: {exc}") from exc
    fx = _parse_newform(rec, hecke, label, pmax)
    persist(fx)
    _MEMO[label] = fx
    return fx


def get_fixture(label: str, p: int = 0, *, allow_network: bool | None = None) -> NewformFixture:
    """A fixture covering p, fetching it when that is permitted."""
    label = _check_label(label)
    fx = load_fixture(label)
    if fx is not None and (p == 0 or p in fx.ap):
        return fx
    allowed = network_allowed() if allow_network is None else allow_network
    if not allowed:
        have = f"cached up to p = {fx.p_max}" if fx else "not cached"
        raise FixtureUnavailable(f"{label} is {have} and network access is disabled (set {NETWORK_ENV}=1)")
    return fetch(label, max(200, p))


def get_ap(label: str, p: int, *, allow_network: bool | None = None) -> Coefficient:
    """a_p of the newform ``label``; a bad prime returns the stored value with a notice."""
    fx = get_fixture(label, p, allow_network=allow_network)
    if p not in fx.ap:
        raise FixtureUnavailable(f"{label} has no stored a_{p}")
    if fx.is_bad(p):
        log.info("%s: p = %d divides the level %d (bad prime)", label, p, fx.level)
    return fx.ap[p]


__all__ = [
    "LABELS",
    "NewformFixture",
    "cache_dir",
    "clear_memo",
    "decode_coefficient",
    "encode_coefficient",
    "fetch",
    "get_ap",
    "get_fixture",
    "load_fixture",
    "network_allowed",
    "parse_label",
    "persist",
]
