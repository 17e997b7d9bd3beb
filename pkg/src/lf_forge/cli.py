"""Command line front end: generate, verify, compare, export.

Output is deterministic: stable key order, no timestamps unless --stamp.
Exit codes: 0 success, 1 failed check or missing isomorphism, 2 usage error.
LF_FORGE_SEED is reserved for future randomized modes; the current core is
deterministic and never reads it.
"""

from __future__ import annotations

import argparse
import datetime
import json
import sys
from dataclasses import dataclass
from pathlib import Path

from .builders import (
    LefschetzFibration,
    ishikawa_fibration,
    johns_fibration,
    sphere_planar_fibration,
)
from .certify import fibration_certificate
from .divides import standard_divide
from .equivalence import isomorphism_certificate

DEFAULT_MAX_GENUS = 32

_BUILDERS = {
    "johns": johns_fibration,
    "ishikawa": ishikawa_fibration,
    "sphere": lambda g: sphere_planar_fibration(),
}


@dataclass
class RunConfig:
    command: str
    genus: tuple[int, ...] = (0,)
    construction: str = "both"
    target: str = ""
    against: str | None = None
    out: str | None = None
    format: str = "json"
    stamp: bool = False
    verbose: bool = False


def _parse_genus(text: str, max_genus: int) -> tuple[int, ...]:
    """N or A..B, inclusive, within [0, max_genus]."""
    lo, sep, hi = text.partition("..")
    try:
        a = int(lo)
        b = int(hi) if sep else a
    except ValueError:
        raise ValueError(f"genus must be N or A..B, got {text!r}") from None
    if a < 0 or b < a:
        raise ValueError(f"invalid genus range {text!r}")
    if b > max_genus:
        raise ValueError(f"genus {b} exceeds the cap {max_genus}; raise --max-genus")
    return tuple(range(a, b + 1))


def _build(construction: str, genus: int) -> LefschetzFibration:
    if construction == "sphere" and genus != 0:
        raise ValueError("the sphere construction exists only at genus 0")
    return _BUILDERS[construction](genus)


def _constructions(selector: str) -> tuple[str, ...]:
    return ("johns", "ishikawa") if selector == "both" else (selector,)


def _dumps(doc) -> str:
    return json.dumps(doc, indent=2) + "\n"


def _stamped(doc: dict, cfg: RunConfig) -> dict:
    if cfg.stamp:
        doc = dict(doc)
        doc["generated_at"] = datetime.datetime.now(datetime.timezone.utc).isoformat()
    return doc


def _emit(texts: dict[str, str], cfg: RunConfig) -> None:
    """Write named documents to --out (file or directory) or stdout.

    Several documents need a directory; a single one may go to a plain file.
    """
    if cfg.out is None:
        for text in texts.values():
            sys.stdout.write(text)
        return
    out = Path(cfg.out)
    if len(texts) == 1 and not out.is_dir() and not str(cfg.out).endswith("/"):
        out.parent.mkdir(parents=True, exist_ok=True)
        out.write_text(next(iter(texts.values())))
        return
    out.mkdir(parents=True, exist_ok=True)
    for name, text in texts.items():
        (out / name).write_text(text)


def _note(cfg: RunConfig, message: str) -> None:
    if cfg.verbose:
        print(message, file=sys.stderr)


def cmd_generate(cfg: RunConfig) -> int:
    texts = {}
    for construction in _constructions(cfg.construction):
        for g in cfg.genus:
            if construction == "sphere" and g != 0:
                continue
            fib = _build(construction, g)
            _note(cfg, f"built {construction} genus {g}")
            if cfg.format == "dot":
                texts[f"{construction}-g{g}.dot"] = fib.fiber.to_dot(f"{construction}_g{g}")
            else:
                texts[f"{construction}-g{g}.json"] = _dumps(_stamped(fib.to_json_dict(), cfg))
    if not texts:
        raise ValueError("nothing to generate for that construction/genus choice")
    _emit(texts, cfg)
    return 0


def cmd_verify(cfg: RunConfig) -> int:
    certificates = []
    failures = []
    for construction in _constructions(cfg.construction):
        for g in cfg.genus:
            if construction == "sphere" and g != 0:
                continue
            cert = fibration_certificate(_build(construction, g))
            certificates.append(_stamped(cert, cfg))
            _note(cfg, f"verified {construction} genus {g}: "
                       f"{'ok' if cert['passed'] else 'FAILED'}")
            failures += [f"{construction} genus {g}: {c['name']}"
                         for c in cert["checks"] if not c["passed"]]
    if not certificates:
        raise ValueError("nothing to verify for that construction/genus choice")
    doc = certificates[0] if len(certificates) == 1 else certificates
    _emit({"verify.json": _dumps(doc)}, cfg)
    for line in failures:
        print(f"failed invariant: {line}", file=sys.stderr)
    return 1 if failures else 0


def cmd_compare(cfg: RunConfig) -> int:
    against = None
    if cfg.against:
        name, sep, g2 = cfg.against.partition(":")
        if name not in _BUILDERS or not sep or not g2.isdigit():
            raise ValueError(f"--against expects construction:genus, got {cfg.against!r}")
        against = _build(name, int(g2))
    certificates = []
    missing = []
    for g in cfg.genus:
        other = against if against is not None else _build("ishikawa", g)
        cert = isomorphism_certificate(_build("johns", g), other)
        certificates.append(_stamped(cert, cfg))
        _note(cfg, f"compared genus {g}: found={cert['found']}")
        if not cert["found"]:
            missing.append(g)
    doc = certificates[0] if len(certificates) == 1 else certificates
    _emit({"compare.json": _dumps(doc)}, cfg)
    for g in missing:
        print(f"no isomorphism at genus {g}", file=sys.stderr)
    return 1 if missing else 0


def cmd_export(cfg: RunConfig) -> int:
    texts = {}
    if cfg.target == "divide":
        for g in cfg.genus:
            divide = standard_divide(g)
            if cfg.format == "text":
                texts[f"divide-g{g}.txt"] = divide.to_text()
            elif cfg.format == "dot":
                texts[f"divide-g{g}.dot"] = divide.to_dot(f"divide_g{g}")
            else:
                texts[f"divide-g{g}.json"] = _dumps(_stamped(divide.to_json_dict(), cfg))
    else:
        if cfg.format == "text":
            raise ValueError("text export exists only for divides")
        for construction in _constructions(cfg.construction):
            for g in cfg.genus:
                if construction == "sphere" and g != 0:
                    continue
                fiber = _build(construction, g).fiber
                if cfg.format == "dot":
                    texts[f"fiber-{construction}-g{g}.dot"] = fiber.to_dot(f"fiber_{construction}_g{g}")
                else:
                    texts[f"fiber-{construction}-g{g}.json"] = _dumps(_stamped(fiber.to_json_dict(), cfg))
    if not texts:
        raise ValueError("nothing to export for that choice")
    _emit(texts, cfg)
    return 0


def _parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lf-forge",
        description="Build, verify, compare and export the two genus-one "
                    "Lefschetz fibrations on disk cotangent bundles.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, construction_flag=True):
        p.add_argument("--genus", default="0", help="N or A..B (default 0)")
        p.add_argument("--max-genus", type=int, default=DEFAULT_MAX_GENUS,
                       help=f"range cap (default {DEFAULT_MAX_GENUS})")
        p.add_argument("--out", default=None, help="output file or directory")
        p.add_argument("--stamp", action="store_true",
                       help="add a generation timestamp to JSON output")
        p.add_argument("--verbose", "-v", action="store_true")
        if construction_flag:
            p.add_argument("--construction", default="both",
                           choices=("johns", "ishikawa", "sphere", "both"))

    g = sub.add_parser("generate", help="write fibration documents")
    g.add_argument("construction", choices=("johns", "ishikawa", "sphere", "both"))
    g.add_argument("--format", default="json", choices=("json", "dot"))
    common(g, construction_flag=False)

    v = sub.add_parser("verify", help="run all invariant checks")
    v.add_argument("--format", default="json", choices=("json",))
    common(v)

    c = sub.add_parser("compare", help="search for the fibration isomorphism")
    c.add_argument("--against", default=None,
                   help="compare against construction:genus instead of ishikawa")
    c.add_argument("--format", default="json", choices=("json",))
    common(c, construction_flag=False)

    e = sub.add_parser("export", help="write the underlying combinatorial objects")
    e.add_argument("target", choices=("divide", "fiber"))
    e.add_argument("--format", default="json", choices=("json", "dot", "text"))
    common(e)

    return parser


_COMMANDS = {
    "generate": cmd_generate,
    "verify": cmd_verify,
    "compare": cmd_compare,
    "export": cmd_export,
}


def main(argv=None) -> int:
    parser = _parser()
    args = parser.parse_args(argv)
    try:
        genus = _parse_genus(args.genus, args.max_genus)
        cfg = RunConfig(
            command=args.command,
            genus=genus,
            construction=getattr(args, "construction", "both"),
            target=getattr(args, "target", ""),
            against=getattr(args, "against", None),
            out=args.out,
            format=getattr(args, "format", "json"),
            stamp=args.stamp,
            verbose=args.verbose,
        )
    except ValueError as exc:
        parser.error(str(exc))
    try:
        return _COMMANDS[cfg.command](cfg)
    except ValueError as exc:
        parser.error(str(exc))


if __name__ == "__main__":
    sys.exit(main())
