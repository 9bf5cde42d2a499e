"""Text formats: edge lists, matching files, matching spec strings, classification reports."""

from __future__ import annotations

import csv
import io
import json
import re
from dataclasses import asdict, dataclass, fields
from pathlib import Path

from foldcube import __version__
from foldcube.cube import CubeGraph, from_binary, graph_from_edges, to_binary
from foldcube.isomorphism import Classification, EccentricityDeficit, ExhaustedSearch, InvariantMismatch
from foldcube.matchings import (
    CLASSES,
    ClassProfile,
    Matching,
    MatchingError,
    MixedSpec,
    canonical_matching,
    mixed_from_complement_closed_set,
    search_mixed_matching,
)

DEFAULT_SEED = 0


class FormatError(ValueError):
    """Malformed file or spec string."""


# --------------------------------------------------------------------------
# edge lists
# --------------------------------------------------------------------------


def _edge_lines(n: int, edges) -> list[str]:
    return sorted(f"{to_binary(int(u), n)} {to_binary(int(v), n)}" for u, v in edges)


def format_edge_list(g: CubeGraph) -> str:
    lines = [f"n {g.n} m {g.num_edges}", *_edge_lines(g.n, g.edges)]
    return "\n".join(lines) + "\n"


def format_matching(m: Matching) -> str:
    lines = [f"n {m.n} k {len(m)}", *_edge_lines(m.n, m.edges)]
    return "\n".join(lines) + "\n"


def _parse_pairs(text: str, count_key: str) -> tuple[int, list[tuple[int, int]]]:
    rows = [ln.split() for ln in text.splitlines() if ln.strip()]
    if not rows:
        raise FormatError("empty input")
    head = rows[0]
    if len(head) != 4 or head[0] != "n" or head[2] != count_key:
        raise FormatError(f"bad header {' '.join(head)!r}; expected 'n <dim> {count_key} <count>'")
    try:
        n, count = int(head[1]), int(head[3])
    except ValueError as exc:
        raise FormatError(f"bad header numbers: {exc}") from None
    pairs = []
    for row in rows[1:]:
        if len(row) != 2:
            raise FormatError(f"bad edge line {' '.join(row)!r}")
        pairs.append((from_binary(row[0], n), from_binary(row[1], n)))
    if len(pairs) != count:
        raise FormatError(f"header announces {count} edges, found {len(pairs)}")
    return n, pairs


def parse_edge_list(text: str) -> CubeGraph:
    n, pairs = _parse_pairs(text, "m")
    return graph_from_edges(n, pairs)


def parse_matching(text: str) -> Matching:
    n, pairs = _parse_pairs(text, "k")
    return Matching.from_edges(n, pairs)


# --------------------------------------------------------------------------
# matching spec strings
# --------------------------------------------------------------------------

_TERM = re.compile(r"^(m00|m11|m1|m2)\s*(>=|=)\s*(\d+)$")


def parse_search_constraints(text: str) -> MixedSpec:
    """``m00>=1,m11>=1,m1>=1,m2>=1`` style constraints.

    ``=`` pins an exact count, ``>=`` a minimum. The token ``canonical-ok``
    lifts the default ban on returning ``m0``, ``m1`` or ``m2`` itself.
    """
    minimum: dict[str, int] = {}
    exact: dict[str, int] = {}
    forbid = True
    for raw in filter(None, (t.strip() for t in text.split(","))):
        if raw == "canonical-ok":
            forbid = False
            continue
        hit = _TERM.match(raw)
        if hit is None:
            raise FormatError(f"bad search term {raw!r}")
        cls, op, val = hit.groups()
        (exact if op == "=" else minimum)[cls] = int(val)
    return MixedSpec(minimum=minimum, exact=exact, forbid_canonical=forbid)


def matching_from_spec(n: int, spec: str) -> Matching:
    """Resolve ``m0|m1|m2|dim:<i>|set:<labels>|search:<constraints>`` or a matching file path."""
    s = spec.strip()
    low = s.lower()
    if low in ("m0", "m1", "m2") or low.startswith("dim:"):
        return canonical_matching(n, low)
    if low.startswith("set:"):
        labels = [t for t in re.split(r"[,\s{}]+", s[4:]) if t]
        return mixed_from_complement_closed_set(n, labels)
    if low.startswith("search:"):
        found = search_mixed_matching(n, parse_search_constraints(s[7:]))
        if found is None:
            raise MatchingError(f"no matching satisfies {s!r} at n={n}")
        return found
    path = Path(s)
    if path.is_file():
        m = parse_matching(path.read_text())
        if m.n != n:
            raise FormatError(f"matching file is for n={m.n}, requested n={n}")
        return m
    raise FormatError(f"unrecognized matching spec or missing file {spec!r}")


# --------------------------------------------------------------------------
# classification reports
# --------------------------------------------------------------------------


@dataclass
class ClassificationReport:
    n: int
    source: str
    m00: int
    m11: int
    m1: int
    m2: int
    other: int
    subset_of_union: bool
    equals_canonical: str | None
    removable: bool | None
    tag: str
    certificate: str | None
    witness_vertex: str | None
    witness_eccentricity: int | None
    detail: str | None
    version: str
    seed: int

    @classmethod
    def field_names(cls) -> list[str]:
        return [f.name for f in fields(cls)]

    def to_json(self) -> str:
        return json.dumps(asdict(self), sort_keys=False)

    @classmethod
    def from_json(cls, text: str) -> ClassificationReport:
        data = json.loads(text)
        if list(data) != cls.field_names():
            raise FormatError("report fields do not match the frozen layout")
        return cls(**data)

    def csv_row(self) -> list[str]:
        return ["" if v is None else str(v).lower() if isinstance(v, bool) else str(v) for v in asdict(self).values()]


def build_report(
    n: int,
    source: str,
    profile: ClassProfile,
    tag: str,
    result: Classification | None = None,
    seed: int = DEFAULT_SEED,
) -> ClassificationReport:
    cert_kind = vertex = ecc = detail = None
    if result is not None:
        cert = result.certificate
        cert_kind = cert.kind
        if isinstance(cert, EccentricityDeficit):
            vertex, ecc = to_binary(cert.vertex, n), cert.eccentricity
        elif isinstance(cert, InvariantMismatch):
            detail = cert.invariant
        elif isinstance(cert, ExhaustedSearch):
            detail = cert.reason
    return ClassificationReport(
        n=n,
        source=source,
        m00=profile.m00,
        m11=profile.m11,
        m1=profile.m1,
        m2=profile.m2,
        other=profile.other,
        subset_of_union=profile.subset_of_union,
        equals_canonical=profile.equals_canonical,
        removable=None if result is None else result.removable,
        tag=tag,
        certificate=cert_kind,
        witness_vertex=vertex,
        witness_eccentricity=ecc,
        detail=detail,
        version=__version__,
        seed=seed,
    )


def reports_to_csv(reports, header: bool = True) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    if header:
        w.writerow(ClassificationReport.field_names())
    for r in reports:
        w.writerow(r.csv_row())
    return buf.getvalue()


def profile_key(p: ClassProfile) -> str:
    return ",".join(str(getattr(p, c)) for c in (*CLASSES, "other"))
