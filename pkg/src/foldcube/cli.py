"""Command line interface: ``foldcube gen|matching|classify|enumerate|verify``.

Errors go to stderr as one line ``error: <code>: <message>`` with a
nonzero exit status. Classification verdicts are not errors.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from collections import Counter
from pathlib import Path

import numpy as np

from foldcube import cube, isomorphism, matchings
from foldcube.formats import (
    DEFAULT_SEED,
    FormatError,
    build_report,
    format_edge_list,
    format_matching,
    matching_from_spec,
    profile_key,
    reports_to_csv,
)
from foldcube.verify import run_suite

EXHAUSTIVE_MAX = 4
SAMPLE_MAX = 8


class CliError(Exception):
    def __init__(self, code: str, message: str, status: int = 1):
        super().__init__(message)
        self.code = code
        self.status = status


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def cmd_gen(args) -> int:
    if args.kind == "qn":
        g = cube.build_hypercube(args.n)
    else:
        g = cube.build_folded_cube(args.n)
    _emit(format_edge_list(g), args.out)
    return 0


def _check_n(n: int) -> None:
    if not 2 <= n <= cube.MAX_DIM:
        raise cube.DimensionError(f"n must lie in [2, {cube.MAX_DIM}], got {n}")


def cmd_matching(args) -> int:
    _check_n(args.n)
    m = matching_from_spec(args.n, args.spec)
    check = matchings.is_perfect_matching(cube.build_folded_cube(args.n), m)
    if not check:
        raise CliError("matching", f"not a perfect matching of FQ_{args.n}: {check.reason} {check.detail}")
    _emit(format_matching(m), args.out)
    return 0


def _render(reports, fmt: str, summary: dict | None = None) -> str:
    if fmt == "csv":
        text = reports_to_csv(reports)
        if summary is not None:
            text += "".join(f"# {k}={json.dumps(v, sort_keys=True)}\n" for k, v in summary.items())
        return text
    lines = [r.to_json() for r in reports]
    if summary is not None:
        lines.append(json.dumps({"summary": summary}, sort_keys=True))
    return "\n".join(lines) + "\n"


def cmd_classify(args) -> int:
    source = args.matching or args.spec
    if not source:
        raise CliError("usage", "classify needs --matching or --spec", status=2)
    if args.n > isomorphism.MAX_ALL_PAIRS_DIM:
        raise cube.DimensionError(f"classify supports n <= {isomorphism.MAX_ALL_PAIRS_DIM}")
    _check_n(args.n)
    m = matching_from_spec(args.n, source)
    result = isomorphism.classify_removability(args.n, m)
    report = build_report(args.n, source, result.profile, result.tag, result)
    _emit(_render([report], args.format), args.out)
    return 0


def _sampled(fq: cube.CubeGraph, k: int, seed: int) -> list[matchings.Matching]:
    rng = np.random.default_rng(seed)
    seen: dict[tuple, matchings.Matching] = {}
    attempts = 0
    while len(seen) < k and attempts < 50 * k:
        attempts += 1
        m = matchings.random_perfect_matching(fq, rng)
        if m is not None:
            seen.setdefault(m.edges, m)
    return sorted(seen.values(), key=lambda m: m.edges)


def cmd_enumerate(args) -> int:
    n = args.n
    if not 2 <= n <= SAMPLE_MAX:
        raise cube.DimensionError(f"enumerate supports 2 <= n <= {SAMPLE_MAX}, got {n}")
    if n > EXHAUSTIVE_MAX and args.sample is None:
        raise CliError("usage", f"n={n} is beyond exhaustive range; pass --sample <k>", status=2)
    fq = cube.build_folded_cube(n)
    if args.sample is not None:
        found = _sampled(fq, args.sample, args.seed)
        source = f"sample:{args.seed}"
    else:
        found = list(matchings.enumerate_perfect_matchings(fq))
        source = "enumerate"

    reports = []
    by_tag: Counter[str] = Counter()
    by_profile: Counter[str] = Counter()
    verdicts: Counter[str] = Counter()
    for idx, m in enumerate(found):
        if args.classify:
            result = isomorphism.classify_removability(n, m, fq)
            profile, tag = result.profile, result.tag
            verdicts["removable" if result.removable else "non_removable"] += 1
            verdicts[f"certificate:{result.certificate.kind}"] += 1
        else:
            result = None
            profile = matchings.matching_class_profile(m)
            tag = isomorphism.matching_tag(profile)
        by_tag[tag] += 1
        by_profile[profile_key(profile)] += 1
        reports.append(build_report(n, f"{source}#{idx}", profile, tag, result, seed=args.seed))

    summary = {
        "n": n,
        "total": len(found),
        "exhaustive": args.sample is None,
        "by_tag": dict(sorted(by_tag.items())),
        "by_profile": dict(sorted(by_profile.items())),
    }
    if args.classify:
        summary["removable"] = verdicts["removable"]
        summary["non_removable"] = verdicts["non_removable"]
        summary["certificates"] = {k.split(":", 1)[1]: v for k, v in sorted(verdicts.items()) if ":" in k}
        summary["removable_by_tag"] = dict(
            sorted(Counter(r.tag for r in reports if r.removable).items())
        )
    _emit(_render(reports, args.format, summary), args.out)
    return 0


def cmd_verify(args) -> int:
    start = time.perf_counter()
    failed = []
    for res in run_suite(args.n_max):
        print(res.line())
        if res.status == "fail":
            failed.append(res)
    elapsed = time.perf_counter() - start
    if failed:
        first = failed[0]
        raise CliError("verify", f"{len(failed)} check(s) failed; first: {first.name} at n={first.n}: {first.detail}")
    print(f"OK verify n-max={args.n_max} in {elapsed:.2f}s")
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="foldcube", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen", help="write the edge list of Q_n or FQ_n")
    g.add_argument("--kind", choices=("qn", "fqn"), required=True)
    g.add_argument("--n", type=int, required=True)
    g.add_argument("--out")
    g.set_defaults(func=cmd_gen)

    m = sub.add_parser("matching", help="build a perfect matching of FQ_n from a spec string")
    m.add_argument("--n", type=int, required=True)
    m.add_argument("--spec", required=True, help="m0|m1|m2|dim:<i>|set:<labels>|search:<constraints>")
    m.add_argument("--out")
    m.set_defaults(func=cmd_matching)

    c = sub.add_parser("classify", help="decide whether FQ_n minus a matching is a hypercube")
    c.add_argument("--n", type=int, required=True)
    c.add_argument("--matching", help="matching file path or spec string")
    c.add_argument("--spec", help="matching spec string (alias of --matching)")
    c.add_argument("--format", choices=("json", "csv"), default="json")
    c.add_argument("--out")
    c.set_defaults(func=cmd_classify)

    e = sub.add_parser("enumerate", help="list (and optionally classify) perfect matchings of FQ_n")
    e.add_argument("--n", type=int, required=True)
    e.add_argument("--classify", action="store_true")
    e.add_argument("--format", choices=("json", "csv"), default="json")
    e.add_argument("--out")
    e.add_argument("--sample", type=int)
    e.add_argument("--seed", type=int, default=DEFAULT_SEED)
    e.set_defaults(func=cmd_enumerate)

    v = sub.add_parser("verify", help="run the invariant and removability suite")
    v.add_argument("--n-max", type=int, required=True)
    v.set_defaults(func=cmd_verify)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except CliError as exc:
        code, status, msg = exc.code, exc.status, str(exc)
    except cube.DimensionError as exc:
        code, status, msg = "dimension", 2, str(exc)
    except (matchings.MatchingError, cube.VertexError) as exc:
        code, status, msg = "matching", 1, str(exc)
    except FormatError as exc:
        code, status, msg = "format", 1, str(exc)
    except OSError as exc:
        code, status, msg = "io", 1, str(exc)
    print(f"error: {code}: {msg}", file=sys.stderr)
    return status


if __name__ == "__main__":
    sys.exit(main())
