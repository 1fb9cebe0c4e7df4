"""ymstrata command line: enumerate, codim, series, verify, flat.

Exit status: 0 on success, 1 when a verification fails, 2 on usage errors.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys

from .abtypes import ABType, Bundle, Surface, enumerate_types, symmetric_strata
from .errors import YMStrataError
from .index import codim_nonorientable, codim_orientable
from .morse import a5_flat_series, scenario_ledger, scenario_name, verify_closed_forms
from .series import as_series
from .tables import PoincareTable, bg_series, default_table, flat_closed_form

GROUPS = ("U1", "U2", "SU2", "U3", "SU3")
COMMANDS = ("enumerate", "codim", "series", "verify", "flat")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="ymstrata", description=__doc__.splitlines()[0])
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("--group", choices=GROUPS, required=True)
    p.add_argument("--surface", nargs="+", required=True, metavar="SPEC",
                   help="rp2 | klein | crosscaps M | genus G")
    p.add_argument("--parity", choices=("+", "-"),
                   help="mod 2 Chern class of a U(n) bundle on a nonorientable surface")
    p.add_argument("--degree", type=int, default=0, help="degree of a U(n) bundle on a genus g surface")
    p.add_argument("--truncate", type=int, default=40, metavar="N")
    p.add_argument("--codim-bound", type=int, metavar="D", help="default N + 2")
    p.add_argument("--format", choices=("json", "csv", "plain"), default="json")
    p.add_argument("--tables", metavar="PATH", help="alternative Poincare series table")
    return p


def parse_surface(words) -> Surface:
    words = [w.lower() for w in words]
    if words == ["rp2"]:
        return Surface.rp2()
    if words == ["klein"]:
        return Surface.klein()
    if len(words) == 2 and words[0] in ("crosscaps", "genus"):
        try:
            value = int(words[1])
        except ValueError:
            raise UsageError(f"--surface {words[0]} needs an integer, got {words[1]!r}") from None
        try:
            return Surface.of_crosscaps(value) if words[0] == "crosscaps" else Surface.of_genus(value)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
    raise UsageError("--surface must be one of: rp2, klein, crosscaps M, genus G")


def make_bundle(group: str, surface: Surface, parity: str | None, degree: int) -> Bundle:
    name, n = group.rstrip("0123456789"), int(group.lstrip("SU"))
    if name == "SU":
        if parity is not None:
            raise UsageError("--parity applies to U(n) bundles only")
        if degree:
            raise UsageError("--degree applies to U(n) bundles only")
        return Bundle("SU", n)
    if surface.orientable:
        if parity is not None:
            raise UsageError("--parity applies to nonorientable surfaces only")
        return Bundle("U", n, degree=degree)
    if degree:
        raise UsageError("--degree applies to orientable surfaces only")
    return Bundle("U", n, parity=-1 if parity == "-" else 1)


def _dump_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=True) + "\n"


def _coeff_rows(series):
    return [(d, str(c)) for d, c in enumerate(series.coeffs)]


def _render_series(payload: dict, series, fmt: str) -> str:
    if fmt == "json":
        return _dump_json(payload)
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["degree", "value"])
        w.writerows(_coeff_rows(series))
        return buf.getvalue()
    return f"{payload['closed_form']}\n{','.join(c for _, c in _coeff_rows(series))}\n"


def _types_payload(rows, fmt: str, header) -> str:
    if fmt == "json":
        return _dump_json(rows)
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(header)
        for row in rows:
            w.writerow([row[h] for h in header])
        return buf.getvalue()
    return "".join(" ".join(str(row[h]) for h in header) + "\n" for row in rows)


def _enumerate(args, surface, bundle, table) -> tuple:
    N = args.truncate
    bound = N + 2 if args.codim_bound is None else args.codim_bound
    if surface.orientable:
        types = enumerate_types(bundle.n, bundle.degree, bound, surface)
    else:
        types = symmetric_strata(bundle, surface, bound)
    rows = []
    for mu in types:
        rows.append({"type": str(mu), "codim": _codim(mu, surface)})
    return 0, _types_payload(rows, args.format, ["type", "codim"])


def _codim(mu: ABType, surface: Surface) -> int:
    if surface.orientable:
        return codim_orientable(mu, surface.cover_genus)
    return codim_nonorientable(mu, surface.cover_genus).lam


def _codim_cmd(args, surface, bundle, table) -> tuple:
    N = args.truncate
    bound = N + 2 if args.codim_bound is None else args.codim_bound
    if surface.orientable:
        types = enumerate_types(bundle.n, bundle.degree, bound, surface)
        rows = [{"type": str(mu), "lambda": codim_orientable(mu, surface.cover_genus)} for mu in types]
        header = ["type", "lambda"]
    else:
        rows = []
        for mu in symmetric_strata(bundle, surface, bound):
            row = {"type": str(mu)}
            row.update(codim_nonorientable(mu, surface.cover_genus).to_json())
            rows.append(row)
        header = ["type", "lambda", "lambda_C", "lambda_R"]
    return 0, _types_payload(rows, args.format, header)


def _nonorientable_only(surface: Surface, command: str):
    if surface.orientable:
        raise UsageError(f"{command} is defined for nonorientable surfaces")


def _series_cmd(args, surface, bundle, table) -> tuple:
    _nonorientable_only(surface, "series")
    rf = bg_series(bundle.key, surface.cover_genus, table)
    s = as_series(rf, args.truncate)
    payload = {"scenario": scenario_name(bundle, surface), "kind": "P_t(BG)", "N": args.truncate,
               "closed_form": str(rf), "coeffs": [str(c) for c in s.coeffs]}
    return 0, _render_series(payload, s, args.format)


def _flat_cmd(args, surface, bundle, table) -> tuple:
    _nonorientable_only(surface, "flat")
    N = args.truncate
    series, closed = a5_flat_series(bundle, surface, N, table, args.codim_bound)
    target = flat_closed_form(bundle.key, surface.cover_genus, bundle.parity, table)
    payload = {"scenario": scenario_name(bundle, surface), "kind": "P_t(A_ss)", "N": N,
               "closed_form": str(target), "assembled_closed_form": str(closed),
               "coeffs": [str(c) for c in series.coeffs]}
    return 0, _render_series(payload, series, args.format)


def _verify_cmd(args, surface, bundle, table) -> tuple:
    _nonorientable_only(surface, "verify")
    N = args.truncate
    ledger = scenario_ledger(bundle, surface, N, table, args.codim_bound)
    closed = verify_closed_forms(bundle, surface, N, table)
    report = {"scenario": closed["scenario"], **ledger.summary(),
              "first_discrepancy": closed["first_discrepancy"],
              "closed_form_equal": closed["rf_equal"]}
    ok = (ledger.morse_inequality == "holds" and ledger.antiperfect == "yes"
          and closed["rf_equal"] and closed["series_equal"])
    if args.format == "json":
        text = _dump_json(report)
    elif args.format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["degree", "value"])
        w.writerows(enumerate(report["R_coeffs"]))
        text = buf.getvalue()
    else:
        text = (f"{report['scenario']}: Morse inequality {report['morse_inequality']} through t^{N}; "
                f"antiperfect through t^{N}: {'yes' if report['antiperfect_through_N'] else 'no'}; "
                f"perfect through t^{N}: {'yes' if report['perfect_through_N'] else 'no'}; "
                f"closed forms {'agree' if report['closed_form_equal'] else 'differ'}"
                + ("" if report["first_discrepancy"] is None else
                   f" (first difference at t^{report['first_discrepancy']})") + "\n")
    return (0 if ok else 1), text


HANDLERS = {"enumerate": _enumerate, "codim": _codim_cmd, "series": _series_cmd,
            "verify": _verify_cmd, "flat": _flat_cmd}


def run(argv=None) -> tuple:
    """Parse ``argv`` and return (exit code, stdout text, stderr text)."""
    try:
        args = build_parser().parse_args(argv)
        if args.truncate < 0:
            raise UsageError("--truncate must be >= 0")
        if args.codim_bound is not None and args.codim_bound < 0:
            raise UsageError("--codim-bound must be >= 0")
        surface = parse_surface(args.surface)
        bundle = make_bundle(args.group, surface, args.parity, args.degree)
        table = PoincareTable.from_path(args.tables) if args.tables else default_table()
        code, text = HANDLERS[args.command](args, surface, bundle, table)
        return code, text, ""
    except UsageError as exc:
        return 2, "", f"ymstrata: error: {exc}\n"
    except (YMStrataError, ValueError, OSError, KeyError) as exc:
        msg = " ".join(str(exc).split()) or type(exc).__name__
        return 2, "", f"ymstrata: error: {msg}\n"


def main(argv=None) -> int:
    code, out, err = run(argv)
    if out:
        sys.stdout.write(out)
    if err:
        sys.stderr.write(err)
    return code


if __name__ == "__main__":
    sys.exit(main())
