"""Certificates, their checker, and the line-record serialization.

Every pipeline run ends in exactly one certificate: a Hamilton cycle, a
toughness-violating cutset, an induced forbidden-pattern witness, or an
oracle-limit marker.  The checker revalidates each kind from scratch
against the input graph, so a certificate never has to be trusted.

Records are single lines of whitespace-separated tokens: a record name,
``key=value`` fields (rationals as ``num/den``), and, after a ``--``
separator, a vertex list as space-separated ids.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .graph import Graph, bits, mask_of
from .hamilton import CycleCert
from .metrics import ToughnessWitness
from .recognition import InducedWitness, induces_pattern

FORBIDDEN_PATTERN = "2p2+p1"


@dataclass
class RunConfig:
    """Knobs for one pipeline run; defaults mirror the proven regime."""

    t: Fraction = Fraction(11)
    cap_subsets: int = 24      # exact toughness/scattering enumeration
    cap_independence: int = 64
    cap_oracle: int = 32       # Hamilton-cycle backtracking
    seed: int = 0
    trace_detail: bool = True

    def __post_init__(self):
        self.t = Fraction(self.t)
        if self.t <= 0:
            raise ValueError("t must be positive")
        if min(self.cap_subsets, self.cap_independence, self.cap_oracle) < 1:
            raise ValueError("solver caps must be positive")


@dataclass(frozen=True)
class HamiltonCycle:
    cycle: CycleCert


@dataclass(frozen=True)
class ForbiddenWitness:
    witness: InducedWitness


@dataclass(frozen=True)
class OracleLimit:
    stage: str


Certificate = HamiltonCycle | ToughnessWitness | ForbiddenWitness | OracleLimit


def certificate_kind(cert: Certificate) -> str:
    if isinstance(cert, HamiltonCycle):
        return "hamilton-cycle"
    if isinstance(cert, ToughnessWitness):
        return "toughness-witness"
    if isinstance(cert, ForbiddenWitness):
        return "forbidden-witness"
    if isinstance(cert, OracleLimit):
        return "oracle-limit"
    raise TypeError(f"not a certificate: {cert!r}")


def check_certificate(g: Graph, cert: Certificate, cfg: RunConfig) -> tuple[bool, str]:
    """Revalidate a certificate against the graph; returns (ok, reason)."""
    if isinstance(cert, HamiltonCycle):
        order = cert.cycle.order
        if len(order) != g.n or len(set(order)) != g.n:
            return False, f"cycle is not a permutation of 0..{g.n - 1}"
        if g.n < 3:
            return False, "cycles need at least three vertices"
        for i, u in enumerate(order):
            v = order[(i + 1) % len(order)]
            if not g.has_edge(u, v):
                return False, f"edge {u}-{v} missing from the graph"
        return True, "hamilton cycle verified"
    if isinstance(cert, ToughnessWitness):
        if cert.cutset & ~g.full:
            return False, "cutset has out-of-range vertices"
        c = g.component_count(cert.cutset)
        if c != cert.component_count:
            return False, f"component count is {c}, certificate says {cert.component_count}"
        if c < 2:
            return False, "removal leaves the graph connected"
        ratio = Fraction(cert.cutset.bit_count(), c)
        if ratio >= cfg.t:
            return False, f"ratio {ratio} is not below t={cfg.t}"
        return True, f"toughness violated at ratio {ratio}"
    if isinstance(cert, ForbiddenWitness):
        w = cert.witness
        if w.pattern != FORBIDDEN_PATTERN:
            return False, f"witness pattern {w.pattern} is not {FORBIDDEN_PATTERN}"
        if not induces_pattern(g, w.vertices, FORBIDDEN_PATTERN):
            return False, f"vertices {w.vertices} do not induce {FORBIDDEN_PATTERN}"
        return True, "forbidden induced pattern verified"
    if isinstance(cert, OracleLimit):
        return False, f"inconclusive: oracle limit at {cert.stage}"
    return False, f"unknown certificate {cert!r}"


# --- line records ------------------------------------------------------------

def fmt_q(x) -> str:
    f = Fraction(x)
    return f"{f.numerator}/{f.denominator}"


def parse_q(s: str) -> Fraction:
    if "/" in s:
        num, den = s.split("/", 1)
        return Fraction(int(num), int(den))
    return Fraction(int(s))


def record_line(name: str, fields=(), ids=None) -> str:
    parts = [name]
    for key, value in fields:
        if isinstance(value, (Fraction,)):
            value = fmt_q(value)
        elif isinstance(value, bool):
            value = "true" if value else "false"
        text = str(value)
        if " " in text:
            raise ValueError(f"record field {key} contains a space: {text!r}")
        parts.append(f"{key}={text}")
    if ids is not None:
        parts.append("--")
        parts.extend(str(v) for v in ids)
    return " ".join(parts)


def parse_record(line: str):
    """(name, fields dict, ids tuple or None)."""
    tokens = line.split()
    if not tokens:
        raise ValueError("empty record")
    name = tokens[0]
    fields: dict[str, str] = {}
    ids = None
    rest = tokens[1:]
    if "--" in rest:
        cut = rest.index("--")
        ids = tuple(int(tok) for tok in rest[cut + 1:])
        rest = rest[:cut]
    for tok in rest:
        if "=" not in tok:
            raise ValueError(f"malformed field {tok!r} in record {line!r}")
        key, value = tok.split("=", 1)
        fields[key] = value
    return name, fields, ids


def certificate_to_record(cert: Certificate) -> str:
    if isinstance(cert, HamiltonCycle):
        return record_line("cert", [("kind", "hamilton-cycle")], ids=cert.cycle.order)
    if isinstance(cert, ToughnessWitness):
        return record_line(
            "cert",
            [("kind", "toughness-witness"),
             ("components", cert.component_count),
             ("ratio", Fraction(cert.cutset.bit_count(), cert.component_count))],
            ids=bits(cert.cutset),
        )
    if isinstance(cert, ForbiddenWitness):
        return record_line(
            "cert",
            [("kind", "forbidden-witness"), ("pattern", cert.witness.pattern)],
            ids=cert.witness.vertices,
        )
    if isinstance(cert, OracleLimit):
        return record_line("cert", [("kind", "oracle-limit"), ("stage", cert.stage)])
    raise TypeError(f"not a certificate: {cert!r}")


def certificate_from_record(line: str) -> Certificate:
    name, fields, ids = parse_record(line)
    if name != "cert":
        raise ValueError(f"not a certificate record: {line!r}")
    kind = fields.get("kind")
    if kind == "hamilton-cycle":
        return HamiltonCycle(CycleCert(ids or ()))
    if kind == "toughness-witness":
        return ToughnessWitness(mask_of(ids or ()), int(fields["components"]))
    if kind == "forbidden-witness":
        return ForbiddenWitness(InducedWitness(ids or (), fields["pattern"]))
    if kind == "oracle-limit":
        return OracleLimit(fields["stage"])
    raise ValueError(f"unknown certificate kind {kind!r}")


class Trace:
    """Accumulates the structured per-stage records of one pipeline run."""

    def __init__(self, enabled: bool = True):
        self.enabled = enabled
        self.lines: list[str] = []

    def add(self, name: str, ids=None, **fields):
        if self.enabled:
            self.lines.append(record_line(name, sorted(fields.items()), ids=ids))
