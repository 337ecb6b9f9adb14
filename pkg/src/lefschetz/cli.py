"""Command-line front end.

Subcommands: verify, invariants, enumerate, pi1, catalog, bounds.
Exit codes: 0 success / verified, 1 verification negative or infeasible,
2 usage or parse error.  ``--json`` switches every subcommand to a
single JSON document with stable field names and ordering (rationals are
rendered as exact strings like ``-7/4``).
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

from . import catalog as cat
from .feasibility import (
    ADMITTED,
    REJECT_CHI_H,
    ConstraintProfile,
    enumerate_feasible,
    min_fiber_bounds,
)
from .fpgroup import abelianization, quotient_by_cycles, surface_group, todd_coxeter
from .invariants import (
    LEDGER_BLOCK,
    LEDGER_MATSUMOTO_EVEN,
    LEDGER_SEPARATING,
    FiberCounts,
    LedgerEntry,
    chi_and_betti,
    endo_nagami_total,
    euler_characteristic,
    hyperelliptic_signature,
)
from .mono import MonoParseError, parse_mono, serialize_mono
from .twists import MissingHomology, cap_boundary, verify_homological_relator

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_USAGE = 2

_MAX_S_FLAGS = 8  # supports genus up to 17


def _frac(value: Fraction) -> str:
    return str(value)


def _emit(args, document: dict, human: str) -> None:
    if args.json:
        print(json.dumps(document, indent=2))
    else:
        print(human, end="" if human.endswith("\n") else "\n")


class UsageError(Exception):
    pass


def _parse_ledger_spec(spec: str) -> list[LedgerEntry]:
    """Ledger mini-language: comma-separated kind*mult terms.

    Kinds: ``mats`` (-4), ``sep`` (-1), ``block:<int>``; multiplicity
    defaults to 1 and may be negative for cancelled blocks, e.g.
    ``mats*1,block:-6*1,sep*-3``.
    """
    entries = []
    for term in spec.split(","):
        term = term.strip()
        if not term:
            raise UsageError(f"empty term in ledger spec {spec!r}")
        if "*" in term:
            kind_part, _, mult_part = term.rpartition("*")
            try:
                mult = int(mult_part)
            except ValueError:
                raise UsageError(f"bad multiplicity in ledger term {term!r}")
        else:
            kind_part, mult = term, 1
        if kind_part == "mats":
            entries.append(LedgerEntry(LEDGER_MATSUMOTO_EVEN, mult))
        elif kind_part == "sep":
            entries.append(LedgerEntry(LEDGER_SEPARATING, mult))
        elif kind_part.startswith("block:"):
            try:
                value = int(kind_part[len("block:"):])
            except ValueError:
                raise UsageError(f"bad block value in ledger term {term!r}")
            entries.append(LedgerEntry(LEDGER_BLOCK, mult, value=value))
        else:
            raise UsageError(f"unknown ledger kind in term {term!r}")
    return entries


def _counts_from_args(args) -> FiberCounts:
    s = []
    for k in range(1, _MAX_S_FLAGS + 1):
        value = getattr(args, f"s{k}", None)
        if value is not None:
            if k > args.genus // 2:
                raise UsageError(
                    f"--s{k} is out of range for genus {args.genus} "
                    f"(types run 1..{args.genus // 2})"
                )
            while len(s) < k:
                s.append(0)
            s[k - 1] = value
    return FiberCounts.of(args.genus, args.n, *s)


# -- subcommands -------------------------------------------------------------


def _cmd_verify(args) -> int:
    path = Path(args.file)
    if not path.exists():
        raise UsageError(f"no such file: {args.file}")
    try:
        f = parse_mono(path.read_text())
    except MonoParseError as exc:
        print(f"parse error in {args.file}: {exc}", file=sys.stderr)
        return EXIT_USAGE

    try:
        report = verify_homological_relator(f, hyperelliptic=args.hyperelliptic)
    except MissingHomology as exc:
        doc = {
            "command": "verify",
            "file": args.file,
            "matrix_ok": None,
            "reason": str(exc),
        }
        _emit(args, doc, f"indeterminate: {exc}\n(the word cannot be checked "
                         "homologically without classes for every letter)")
        return EXIT_NEGATIVE

    counts = report.counts
    verified = report.matrix_ok and report.congruence_ok is not False
    doc = {
        "command": "verify",
        "file": args.file,
        "matrix_ok": report.matrix_ok,
        "congruence_ok": report.congruence_ok,
        "all_positive": report.all_positive,
        "counts": {"genus": counts.genus, "n": counts.n, "s": list(counts.s)},
        "letters": [
            {"name": name, "kind": kind} for name, kind in report.letter_kinds
        ],
        "note": report.note,
    }
    lines = [
        f"letters          {len(report.letter_kinds)}",
        f"counts           genus {counts.genus}, n = {counts.n}, s = {counts.s}",
        f"all positive     {report.all_positive}",
        f"matrix identity  {report.matrix_ok}",
    ]
    if report.congruence_ok is not None:
        lines.append(f"congruence       {report.congruence_ok}")
    lines.append(f"note: {report.note}")
    _emit(args, doc, "\n".join(lines))
    return EXIT_OK if verified else EXIT_NEGATIVE


def _cmd_invariants(args) -> int:
    counts = _counts_from_args(args)
    e = euler_characteristic(counts)
    routes: dict[str, int] = {}
    if args.hyperelliptic:
        sigma, integral = hyperelliptic_signature(counts)
        if not integral:
            doc = {
                "command": "invariants",
                "genus": counts.genus, "n": counts.n, "s": list(counts.s),
                "e": e, "sigma": _frac(sigma), "sigma_integral": False,
            }
            _emit(args, doc,
                  f"e      {e}\nsigma  {sigma} (not an integer: these counts "
                  "cannot arise from a hyperelliptic fibration)")
            return EXIT_NEGATIVE
        routes["hyperelliptic"] = int(sigma)
    if args.ledger is not None:
        routes["ledger"] = endo_nagami_total(_parse_ledger_spec(args.ledger))
    if not routes:
        raise UsageError(
            "need a signature route: pass --hyperelliptic and/or --ledger SPEC"
        )
    if len(set(routes.values())) > 1:
        print(
            "signature routes disagree: "
            + ", ".join(f"{k} gives {v}" for k, v in routes.items()),
            file=sys.stderr,
        )
        return EXIT_NEGATIVE
    sigma = next(iter(routes.values()))
    report = chi_and_betti(e, sigma)
    doc = {
        "command": "invariants",
        "genus": counts.genus, "n": counts.n, "s": list(counts.s),
        "e": report.e,
        "sigma": report.sigma,
        "sigma_route": sorted(routes),
        "chi_h": _frac(report.chi_h),
        "betti": (
            {"b2plus": report.b2plus, "b2minus": report.b2minus}
            if report.feasible else None
        ),
        "candidate": report.candidate,
    }
    lines = [
        f"genus        {counts.genus}",
        f"counts       n = {counts.n}, s = {counts.s}",
        f"e            {report.e}",
        f"sigma        {report.sigma}   (route: {', '.join(sorted(routes))})",
        f"chi_h        {report.chi_h}",
    ]
    if report.feasible:
        lines.append(f"(b2+, b2-)   ({report.b2plus}, {report.b2minus})")
    else:
        lines.append("(b2+, b2-)   infeasible under b1 = 0")
    if report.candidate:
        lines.append(f"candidate    {report.candidate}")
    _emit(args, doc, "\n".join(lines))
    return EXIT_OK if report.feasible else EXIT_NEGATIVE


def _row_doc(row) -> dict:
    return {
        "n": row.counts.n,
        "s": list(row.counts.s),
        "sigma": _frac(row.sigma),
        "sigma_integral": row.sigma_integral,
        "chi_h": _frac(row.chi_h),
        "verdict": row.verdict,
    }


def _cmd_enumerate(args) -> int:
    if not args.hyperelliptic:
        raise UsageError(
            "enumerate needs --hyperelliptic: sigma is not determined by "
            "counts for general fibrations"
        )
    profile = ConstraintProfile(
        genus=args.genus, max_total_fibers=args.max_fibers, hyperelliptic=True
    )
    rows = enumerate_feasible(profile)
    admitted = [r for r in rows if r.verdict == ADMITTED]
    pre_chi = [r for r in rows if r.verdict in (ADMITTED, REJECT_CHI_H)]
    shown = rows if args.show_rejected else pre_chi
    notes = []
    if args.genus == 4 and args.max_fibers == 24:
        notes.append(
            "(18,0,0) passes every constraint before the chi_h stage "
            "(chi_h = -1) although some published survivor lists omit it"
        )
    doc = {
        "command": "enumerate",
        "genus": args.genus,
        "max_fibers": args.max_fibers,
        "hyperelliptic": True,
        "rows": [_row_doc(r) for r in shown],
        "admitted": [[r.counts.n, *r.counts.s] for r in admitted],
        "pre_chi_survivors": [[r.counts.n, *r.counts.s] for r in pre_chi],
        "notes": notes,
    }
    lines = [
        f"genus {args.genus}, totals strictly below {args.max_fibers}, "
        f"{len(rows)} count vectors evaluated",
        "",
        f"{'n':>4} {'s':>12} {'sigma':>8} {'chi_h':>6}  verdict",
    ]
    for row in shown:
        lines.append(
            f"{row.counts.n:>4} {str(row.counts.s):>12} {str(row.sigma):>8} "
            f"{str(row.chi_h):>6}  "
            + (ADMITTED if row.admitted else f"rejected ({row.verdict})")
        )
    lines.append("")
    lines.append(f"admitted: {len(admitted)}, pre-chi survivors: {len(pre_chi)}")
    for note in notes:
        lines.append(f"note: {note}")
    _emit(args, doc, "\n".join(lines))
    return EXIT_OK if admitted else EXIT_NEGATIVE


def _cmd_pi1(args) -> int:
    source = args.source
    presentation = None
    label = source
    worded = None
    try:
        entry = cat.get_entry(source)
    except KeyError:
        entry = None
    if entry is not None:
        try:
            presentation = cat.pi1_presentation(entry.name)
        except cat.NoWordData as exc:
            raise UsageError(str(exc))
        f = entry.factorization
        distinct = list(dict.fromkeys(l.curve for l in f.letters))
        with_words = sum(1 for name in distinct if f.curve(name).word is not None)
        worded = f"{with_words}/{len(distinct)} distinct letter curves carry words"
        label = f"catalog entry {entry.name}"
    else:
        path = Path(source)
        if not path.exists():
            raise UsageError(
                f"{source!r} is neither a catalog entry ({', '.join(cat.entry_names())}) "
                "nor a file"
            )
        try:
            f = cap_boundary(parse_mono(path.read_text()))
        except MonoParseError as exc:
            print(f"parse error in {source}: {exc}", file=sys.stderr)
            return EXIT_USAGE
        distinct = list(dict.fromkeys(l.curve for l in f.letters))
        cycles = [
            f.curve(name).word for name in distinct if f.curve(name).word is not None
        ]
        if not cycles:
            raise UsageError(f"no letter in {source} carries a pi_1 word")
        worded = f"{len(cycles)}/{len(distinct)} distinct letter curves carry words"
        presentation = quotient_by_cycles(surface_group(f.spec.genus), cycles)

    result = todd_coxeter(presentation, max_cosets=args.max_cosets)
    invariants = abelianization(presentation)
    doc = {
        "command": "pi1",
        "source": source,
        "generators": len(presentation.generators),
        "relators": len(presentation.relators),
        "worded_letters": worded,
        "max_cosets": args.max_cosets,
        "outcome": "order" if result.closed else "exceeded",
        "order": result.order,
        "cosets_defined": result.cosets_defined,
        "abelian_invariants": list(invariants.divisors),
    }
    lines = [
        f"pi_1 of {label}: {len(presentation.generators)} generators, "
        f"{len(presentation.relators)} relators ({worded})",
    ]
    if result.closed:
        lines.append(
            f"order {result.order}   ({result.cosets_defined} cosets defined)"
        )
    else:
        lines.append(
            f"exceeded {args.max_cosets} cosets "
            f"({result.cosets_defined} defined); order not certified"
        )
    lines.append(f"abelian invariants: {list(invariants.divisors)}")
    _emit(args, doc, "\n".join(lines))
    return EXIT_OK if result.closed else EXIT_NEGATIVE


def _entry_summary(entry) -> dict:
    f = entry.factorization
    return {
        "name": entry.name,
        "aliases": list(entry.aliases),
        "genus": f.spec.genus,
        "boundary": f.spec.boundary_count,
        "letters": len(f.letters),
        "n": entry.counts.n,
        "s": list(entry.counts.s),
        "hyperelliptic": entry.hyperelliptic,
        "description": entry.description,
    }


def _cmd_catalog(args) -> int:
    if args.action == "list":
        entries = cat.load_catalog()
        doc = {"command": "catalog", "entries": [_entry_summary(e) for e in entries]}
        width = max(len(e.name) for e in entries)
        lines = [
            f"{e.name:<{width}}  g={e.spec.genus} r={e.spec.boundary_count} "
            f"letters={len(e.factorization.letters)} "
            f"(n, s)=({e.counts.n}, {e.counts.s}) "
            + ("hyperelliptic" if e.hyperelliptic else "nonhyperelliptic")
            for e in entries
        ]
        _emit(args, doc, "\n".join(lines))
        return EXIT_OK
    try:
        entry = cat.get_entry(args.name)
    except KeyError as exc:
        raise UsageError(str(exc))
    if args.action == "export":
        text = serialize_mono(entry.factorization, comment=f"catalog entry {entry.name}")
        if args.json:
            print(json.dumps({"command": "catalog", "name": entry.name, "mono": text}, indent=2))
        else:
            print(text, end="")
        return EXIT_OK
    # show
    report = cat.invariant_report(entry.name)
    doc = {
        "command": "catalog",
        "entry": _entry_summary(entry),
        "target": [list(t) for t in entry.factorization.target] or "identity",
        "word": [
            {"name": l.curve, "sign": l.sign} for l in entry.factorization.letters
        ],
        "invariants": {
            "e": report.e,
            "sigma": report.sigma,
            "chi_h": _frac(report.chi_h),
            "betti": (
                {"b2plus": report.b2plus, "b2minus": report.b2minus}
                if report.feasible else None
            ),
            "candidate": report.candidate,
        },
        "notes": list(entry.notes),
    }
    f = entry.factorization
    word = " ".join(
        l.curve if l.sign == 1 else l.curve + "~" for l in f.letters
    )
    target = (
        "identity" if f.is_identity_target
        else " ".join(f"t_delta{i}^{n}" for i, n in f.target)
    )
    lines = [
        f"{entry.name}: {entry.description}",
        f"  genus {f.spec.genus}, boundary {f.spec.boundary_count}, "
        f"{len(f.letters)} letters, counts (n, s) = ({entry.counts.n}, {entry.counts.s})",
        f"  word: {word}",
        f"  target: {target}",
        f"  e = {report.e}, sigma = {report.sigma}, chi_h = {report.chi_h}"
        + (
            f", (b2+, b2-) = ({report.b2plus}, {report.b2minus})"
            if report.feasible else ", Betti infeasible under b1 = 0"
        )
        + (f", candidate {report.candidate}" if report.candidate else ""),
    ]
    for note in entry.notes:
        lines.append(f"  note: {note}")
    _emit(args, doc, "\n".join(lines))
    return EXIT_OK


def _cmd_bounds(args) -> int:
    report = min_fiber_bounds(args.genus)

    def fmt(lower, upper, label):
        if upper is None:
            return f"{label} >= {lower}"
        if lower == upper:
            return f"{label} = {lower}"
        return f"{lower} <= {label} <= {upper}"

    doc = {
        "command": "bounds",
        "genus": report.genus,
        "n": {"lower": report.n_lower, "upper": report.n_upper},
        "m": {"lower": report.m_lower, "upper": report.m_upper},
        "witnesses": [
            {"name": w.name, "fibers": w.fibers, "hyperelliptic": w.hyperelliptic}
            for w in report.witnesses
        ],
        "notes": list(report.notes),
    }
    lines = [
        fmt(report.n_lower, report.n_upper, f"N_{report.genus}"),
        fmt(report.m_lower, report.m_upper, f"M_{report.genus}"),
    ]
    for w in report.witnesses:
        lines.append(f"witness: {w.name} ({w.fibers} fibers)")
    for note in report.notes:
        lines.append(f"note: {note}")
    _emit(args, doc, "\n".join(lines))
    return EXIT_OK


# -- driver ------------------------------------------------------------------


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lefschetz",
        description=(
            "Compute with monodromy factorizations of Lefschetz fibrations "
            "over the 2-sphere."
        ),
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)

    def add_json(p):
        p.add_argument("--json", action="store_true", help="emit a JSON document")

    p = sub.add_parser("verify", help="homological relator check of a .mono file")
    p.add_argument("file")
    p.add_argument("--hyperelliptic", action="store_true",
                   help="also check the twist-count congruence")
    add_json(p)
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("invariants", help="e, sigma, chi_h, Betti from counts")
    p.add_argument("--genus", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    for k in range(1, _MAX_S_FLAGS + 1):
        p.add_argument(f"--s{k}", type=int, help=argparse.SUPPRESS if k > 3 else None)
    p.add_argument("--hyperelliptic", action="store_true",
                   help="take sigma from the hyperelliptic closed form")
    p.add_argument("--ledger", metavar="SPEC",
                   help="take sigma from a block ledger, e.g. mats*1,block:-6*1,sep*-3")
    add_json(p)
    p.set_defaults(func=_cmd_invariants)

    p = sub.add_parser("enumerate", help="feasible fiber-count vectors below a bound")
    p.add_argument("--genus", type=int, required=True)
    p.add_argument("--max-fibers", type=int, required=True,
                   help="strict bound: totals n + s < this value")
    p.add_argument("--hyperelliptic", action="store_true")
    p.add_argument("--show-rejected", action="store_true",
                   help="also print rows rejected before the chi_h stage")
    add_json(p)
    p.set_defaults(func=_cmd_enumerate)

    p = sub.add_parser("pi1", help="coset enumeration of a total-space pi_1")
    p.add_argument("source", help="catalog entry name or .mono file")
    p.add_argument("--max-cosets", type=int, default=10**6)
    add_json(p)
    p.set_defaults(func=_cmd_pi1)

    p = sub.add_parser("catalog", help="list, show, or export catalog entries")
    catsub = p.add_subparsers(dest="action", required=True)
    pl = catsub.add_parser("list")
    add_json(pl)
    pl.set_defaults(func=_cmd_catalog, action="list")
    ps = catsub.add_parser("show")
    ps.add_argument("name")
    add_json(ps)
    ps.set_defaults(func=_cmd_catalog, action="show")
    pe = catsub.add_parser("export")
    pe.add_argument("name")
    add_json(pe)
    pe.set_defaults(func=_cmd_catalog, action="export")

    p = sub.add_parser("bounds", help="bounds on minimal singular-fiber counts")
    p.add_argument("--genus", type=int, required=True)
    add_json(p)
    p.set_defaults(func=_cmd_bounds)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def console_entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    console_entry()
