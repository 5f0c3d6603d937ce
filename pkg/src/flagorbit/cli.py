"""Command line front end.

    flagorbit classify  INPUT   label, clan and profile of a matrix, frame or pair
    flagorbit convert   INPUT   re-express any representation (--to clan|clan-json|omega|label)
    flagorbit atlas     N       every clan with its normal form, signature and fiber data
    flagorbit count     N       closed-form orbit count, cross-checked by enumeration
    flagorbit galois    TAU     real fiber report for an unsigned pair
    flagorbit verify    LEVEL   brute-force and sampling certification for n <= LEVEL

INPUT may be a file path, an inline payload, or "-" for stdin.
"""

import argparse
import csv
import io
import json
import os
import sys
from dataclasses import dataclass

from .classify import (LagrangianFrame, OrbitLabel, borel_reduce_witness, classify_frame,
                       classify_frame_steps, invariant_profile, normalize_omega, omega_block)
from .clans import (DecoratedClan, clan_to_label, clan_to_omega, count_clans, enumerate_clans,
                    label_to_clan, omega_to_clan, spi_signature)
from .errors import CertificationFailure, FlagOrbitError, ParseError, ValidationError
from .galois import d_of_tau, fiber_report, k_partition, rational_point_test, real_fiber, strip_signs
from .linalg import QQ, QQI, Matrix
from .oracle import DEFAULT_SEED, borel_invariance_sample, certify_classifier
from .params import OmegaPair, TauPair, check_guard, enumerate_R_circle_classes, spi_sign_witness

GUARDS = {"atlas": 8, "verify": 3, "count": 8}
CONVERT_TARGETS = ("clan", "clan-json", "omega", "label")
ATLAS_COLUMNS = ("n", "clan", "I", "spi", "p", "q", "r", "d", "fiber_size")


@dataclass
class CliConfig:
    subcommand: str
    payload: str = None
    case: str = "A"
    fmt: str = "json"
    out: str = None
    seed: int = DEFAULT_SEED
    max_n: int = None
    witness: bool = False
    to: str = "clan"

    def __post_init__(self):
        if self.case not in ("A", "B"):
            raise ValidationError(f"unknown case {self.case!r}")
        if self.fmt not in ("json", "csv", "text"):
            raise ValidationError(f"unknown format {self.fmt!r}")

    def guard(self):
        """--max-n wins over FLAGORBIT_MAX_N, which wins over the built-in limit."""
        if self.max_n is not None:
            return self.max_n
        env = os.environ.get("FLAGORBIT_MAX_N")
        if env:
            try:
                return int(env)
            except ValueError as exc:
                raise ParseError(f"FLAGORBIT_MAX_N={env!r} is not an integer") from exc
        return GUARDS.get(self.subcommand)


# input ------------------------------------------------------------------

def read_payload(payload):
    if payload is None or payload == "-":
        return sys.stdin.read()
    if os.path.isfile(payload):
        with open(payload, encoding="utf-8") as fh:
            return fh.read()
    return payload


def _try_json(text):
    try:
        return json.loads(text)
    except json.JSONDecodeError:
        return None


def parse_document(text, case="A"):
    """Identify a representation. Returns (kind, value).

    Kinds: matrix, frame, omega, tau, label, clan, many (a list of documents),
    report (numeric output with no orbit content).
    """
    text = text.strip()
    obj = _try_json(text)
    if obj is None:
        return _parse_text_document(text)
    return _parse_json_document(obj, case)


def _parse_json_document(obj, case):
    if isinstance(obj, str):
        return "clan", DecoratedClan.from_text(obj)
    if isinstance(obj, list):
        return "many", [_parse_json_document(o, case) for o in obj]
    if not isinstance(obj, dict):
        raise ParseError("expected a JSON object or list")
    if "report" in obj and obj["report"] in ("count", "verify"):
        return "report", obj
    if "rows" in obj and isinstance(obj["rows"], list) and obj.get("report") == "atlas":
        return "many", [_parse_json_document(r, case) for r in obj["rows"]]
    if "fiber" in obj:
        return "many", [("omega", OmegaPair.from_json(o)) for o in obj["fiber"]]
    if "clan" in obj and isinstance(obj["clan"], str):
        return "clan", DecoratedClan.from_text(obj["clan"])
    if "gamma" in obj:
        return "clan", DecoratedClan.from_json(obj)
    if "I" in obj and "spi" in obj:
        return "label", OrbitLabel.from_json(obj)
    if "tau1" in obj and "tau2" in obj:
        om = OmegaPair.from_json(obj)
        return "omega", om
    if "C" in obj and "D" in obj:
        return "frame", LagrangianFrame.from_json(obj, case)
    if {"rows", "cols", "data"} <= set(obj):
        m = Matrix.from_json(obj)
        if case == "B" and m.field == QQI:
            if any(x.im for r in m.data for x in r):
                raise ValidationError("case B admits only rational entries")
            m = m.with_field(QQ)
        return "matrix", m
    raise ParseError(f"unrecognized document with keys {sorted(obj)}")


def _parse_text_document(text):
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise ParseError("empty input")
    if lines[0].startswith("report:"):
        return "report", {"report": lines[0].split(":", 1)[1].strip(), "text": text}
    # text reports put "clan: ..." in its own line or first tab-separated field
    keyed = [ln.split("\t", 1)[0].split(":", 1)[1].strip() for ln in lines if ln.startswith("clan:")]
    if keyed:
        docs = [("clan", DecoratedClan.from_text(s)) for s in keyed]
        return docs[0] if len(docs) == 1 else ("many", docs)
    if "," in lines[0] and "clan" in lines[0].split(","):
        rows = csv.DictReader(io.StringIO(text))
        return "many", [("clan", DecoratedClan.from_text(r["clan"])) for r in rows]
    if len(lines) == 1:
        return "clan", DecoratedClan.from_text(lines[0])
    raise ParseError("could not recognize the input")


def to_clan(kind, value):
    if kind == "clan":
        return value
    if kind == "omega":
        return omega_to_clan(value)
    if kind == "label":
        return label_to_clan(value)
    if kind == "frame":
        return label_to_clan(classify_frame(value))
    if kind == "matrix":
        return label_to_clan(_matrix_label(value))
    raise ParseError(f"a {kind} document has no clan")


def _matrix_label(z):
    frame = LagrangianFrame(z, Matrix.identity(z.rows, z.field), "A" if z.field == QQI else "B")
    return classify_frame(frame)


# output -----------------------------------------------------------------

def _spi_flat(spi):
    return " ".join(str(x) for r in spi.entries for x in r)


def _spi_text(spi):
    return [" ".join(f"{x:2d}" for x in r) for r in spi.entries]


def emit(cfg, obj, text_lines=None, csv_rows=None, columns=None):
    if cfg.fmt == "json" or (cfg.fmt == "csv" and csv_rows is None) or (
            cfg.fmt == "text" and text_lines is None):
        out = json.dumps(obj, ensure_ascii=False, indent=2) + "\n"
    elif cfg.fmt == "csv":
        buf = io.StringIO()
        w = csv.DictWriter(buf, fieldnames=columns, lineterminator="\n")
        w.writeheader()
        for r in csv_rows:
            w.writerow(r)
        out = buf.getvalue()
    else:
        out = "\n".join(text_lines) + "\n"
    if cfg.out:
        with open(cfg.out, "w", encoding="utf-8") as fh:
            fh.write(out)
    else:
        sys.stdout.write(out)


def _label_row(n, clan, label):
    sig = spi_signature(label.spi)
    tau = strip_signs(clan_to_omega(clan))
    d = d_of_tau(tau)
    return {"n": n, "clan": clan.to_text(), "I": " ".join(map(str, label.I)),
            "spi": _spi_flat(label.spi), "p": sig.p, "q": sig.q, "r": sig.r,
            "d": d, "fiber_size": 2 ** d}, tau


# commands ---------------------------------------------------------------

def cmd_classify(cfg):
    kind, value = parse_document(read_payload(cfg.payload), cfg.case)
    witness = {}
    if kind == "matrix":
        z = value
        if not z.is_square():
            raise ValidationError("a Hermitian input must be square")
        label = _matrix_label(z)
        profile = invariant_profile(z)
        if cfg.witness:
            b, w = borel_reduce_witness(z)
            witness = {"b": b.to_json(), "w": w.to_json()}
    elif kind == "frame":
        steps = classify_frame_steps(value)
        label = classify_frame(value)
        profile = invariant_profile(steps.z11)
        if cfg.witness:
            b, w = borel_reduce_witness(steps.z11)
            witness = {"G": steps.G.to_json(), "frame_b": steps.b.to_json(),
                       "z11": steps.z11.to_json(), "b": b.to_json(), "w": w.to_json()}
    elif kind == "omega":
        label = normalize_omega(value)
        _, block = omega_block(value)
        profile = invariant_profile(block.to_matrix())
        if cfg.witness:
            witness = {"block": block.to_json(), "eps": list(spi_sign_witness(block))}
    elif kind == "clan":
        label = clan_to_label(value)
        profile = invariant_profile(label.spi.to_matrix())
    else:
        raise ParseError(f"classify does not accept a {kind} document")
    clan = label_to_clan(label)
    obj = {"case": cfg.case, "input": kind, "clan": clan.to_text(), "label": label.to_json(),
           "profile": profile.to_json()}
    if cfg.witness:
        obj["witness"] = witness
    lines = [f"case: {cfg.case}", f"input: {kind}", f"clan: {clan.to_text()}",
             f"I: {' '.join(map(str, label.I))}", "spi:"] + ["  " + r for r in _spi_text(label.spi)]
    lines.append("ranks: " + " | ".join(" ".join(map(str, r)) for r in profile.ranks))
    lines.append("signatures: " + " ".join(f"({s.p},{s.q},{s.r})" for s in profile.signatures))
    row, _ = _label_row(label.n, clan, label)
    emit(cfg, obj, lines, [row], ATLAS_COLUMNS)
    return 0


def _convert_one(kind, value, target):
    if kind == "many":
        return [_convert_one(k, v, target) for k, v in value]
    clan = to_clan(kind, value)
    if target == "clan":
        return clan.to_text()
    if target == "clan-json":
        return clan.to_json()
    if target == "omega":
        return clan_to_omega(clan).to_json()
    return clan_to_label(clan).to_json()


def cmd_convert(cfg):
    if cfg.to not in CONVERT_TARGETS:
        raise ValidationError(f"--to must be one of {', '.join(CONVERT_TARGETS)}")
    kind, value = parse_document(read_payload(cfg.payload), cfg.case)
    if kind == "report":
        emit(cfg, value)
        return 0
    result = _convert_one(kind, value, cfg.to)
    if cfg.to == "clan" and cfg.fmt != "json":
        items = result if isinstance(result, list) else [result]
        emit(cfg, result, [f"clan: {s}" for s in items])
    else:
        emit(cfg, result)
    return 0


def cmd_atlas(cfg, n):
    check_guard(n, cfg.guard(), "atlas")
    rows, docs = [], []
    for clan in enumerate_clans(n):
        label = clan_to_label(clan)
        row, tau = _label_row(n, clan, label)
        rows.append(row)
        docs.append({"clan": clan.to_text(), "label": label.to_json(),
                     "signature": [row["p"], row["q"], row["r"]], "tau": tau.to_json(),
                     "d": row["d"], "fiber_size": row["fiber_size"]})
    obj = {"report": "atlas", "case": cfg.case, "n": n, "count": len(rows), "rows": docs}
    lines = [f"clan: {r['clan']}\tI: {r['I']}\tspi: {r['spi']}\tsign: ({r['p']},{r['q']},{r['r']})"
             f"\td: {r['d']}\tfiber: {r['fiber_size']}" for r in rows]
    emit(cfg, obj, lines, rows, ATLAS_COLUMNS)
    return 0


def cmd_count(cfg, n):
    if n < 0:
        raise ValidationError("n must be nonnegative")
    formula = count_clans(n)
    limit = cfg.guard()
    enumerated = sum(1 for _ in enumerate_clans(n)) if limit is None or n <= limit else None
    obj = {"report": "count", "n": n, "formula": formula, "enumerated": enumerated,
           "match": enumerated is None or enumerated == formula}
    lines = ["report: count", f"n: {n}", f"formula: {formula}",
             f"enumerated: {'skipped' if enumerated is None else enumerated}"]
    emit(cfg, obj, lines)
    return 0 if obj["match"] else 5


def _parse_tau(text):
    obj = _try_json(text.strip())
    if not isinstance(obj, dict) or "tau1" not in obj or "tau2" not in obj:
        raise ParseError("galois expects a pair JSON with tau1 and tau2")
    try:
        return TauPair.from_json(obj)
    except ValidationError:
        # a signed pair: report on the unsigned pair underneath it
        return strip_signs(OmegaPair.from_json(obj))


def cmd_galois(cfg):
    tau = _parse_tau(read_payload(cfg.payload))
    if not rational_point_test(tau):
        obj = {"case": cfg.case, "tau": tau.to_json(), "rational_points": False, "d": None,
               "K": None, "fiber": [], "labels": []}
        emit(cfg, obj, ["rational_points: false"])
        return 0
    obj = fiber_report(tau, cfg.case)
    obj["rational_points"] = True
    K = k_partition(tau)
    lines = [f"case: {cfg.case}", f"d: {obj['d']}",
             f"K: c={list(K.c)} d={list(K.d)} one={list(K.one)} two={list(K.two)}"]
    lines += [f"clan: {omega_to_clan(om).to_text()}" for om in real_fiber(tau)]
    emit(cfg, obj, lines)
    return 0


def run_verify(level, seed=DEFAULT_SEED, trials=100):
    """Every oracle suite up to ``level``; raises CertificationFailure on the first miss."""
    results = {"certify": [], "sampling": [], "fibers": []}
    for n in range(level + 1):
        results["certify"].append(certify_classifier(n))
        total = sum(2 ** d_of_tau(t) for t in enumerate_R_circle_classes(n))
        labels = [normalize_omega(om) for t in enumerate_R_circle_classes(n) for om in real_fiber(t)]
        ok = total == count_clans(n) and len(set(labels)) == len(labels) == count_clans(n)
        results["fibers"].append({"n": n, "sum_2_pow_d": total, "distinct_labels": len(set(labels)),
                                  "pass": ok})
        if not ok:
            raise CertificationFailure(f"fiber identity fails at n={n}", results["fibers"][-1])
    for fld in (QQ, QQI):
        for m in range(1, min(6, 2 * level) + 1):
            results["sampling"].append(borel_invariance_sample(m, trials, seed, fld))
    return results


def cmd_verify(cfg, level):
    check_guard(level, cfg.guard(), "verify")
    results = run_verify(level, cfg.seed)
    obj = {"report": "verify", "level": level, "pass": True, **results}
    emit(cfg, obj, ["report: verify", f"level: {level}", "pass: true"])
    return 0


# entry point ------------------------------------------------------------

def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--case", choices=("A", "B"), default="A",
                        help="A: Gaussian rational input allowed; B: rational only")
    common.add_argument("--format", dest="fmt", choices=("json", "csv", "text"), default="json")
    common.add_argument("--out", help="write output to this path")
    common.add_argument("--seed", type=int, default=DEFAULT_SEED)
    common.add_argument("--max-n", type=int, default=None, help="override the enumeration guard")
    common.add_argument("--witness", action="store_true", help="include the Borel witness")

    parser = argparse.ArgumentParser(prog="flagorbit", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="subcommand", required=True)
    p = sub.add_parser("classify", parents=[common])
    p.add_argument("input", nargs="?", default="-")
    p = sub.add_parser("convert", parents=[common])
    p.add_argument("input", nargs="?", default="-")
    p.add_argument("--to", choices=CONVERT_TARGETS, default="clan")
    for name in ("atlas", "count"):
        p = sub.add_parser(name, parents=[common])
        p.add_argument("n", type=int)
    p = sub.add_parser("galois", parents=[common])
    p.add_argument("input", nargs="?", default="-")
    p = sub.add_parser("verify", parents=[common])
    p.add_argument("level", type=int)
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        cfg = CliConfig(args.subcommand, getattr(args, "input", None), args.case, args.fmt,
                        args.out, args.seed, args.max_n, args.witness,
                        getattr(args, "to", "clan"))
        if cfg.subcommand == "classify":
            return cmd_classify(cfg)
        if cfg.subcommand == "convert":
            return cmd_convert(cfg)
        if cfg.subcommand == "atlas":
            return cmd_atlas(cfg, args.n)
        if cfg.subcommand == "count":
            return cmd_count(cfg, args.n)
        if cfg.subcommand == "galois":
            return cmd_galois(cfg)
        return cmd_verify(cfg, args.level)
    except FlagOrbitError as exc:
        err = {"error": type(exc).__name__, "message": str(exc)}
        if getattr(exc, "witness", None):
            err["witness"] = exc.witness
        sys.stderr.write(json.dumps(err, ensure_ascii=False) + "\n")
        return exc.exit_code


if __name__ == "__main__":
    sys.exit(main())
