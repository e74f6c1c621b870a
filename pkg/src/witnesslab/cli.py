"""witnesslab command line: every theorem-level operation, JSON out.

One JSON document goes to stdout per invocation; human diagnostics go to
stderr.  Numeric payload values are serialized exactly, as strings.  Exit
codes are a stable contract: 0 ok, 1 usage error, 2 domain error,
3 inconclusive (bounded search gave up), 4 resource budget exceeded.

Subcommands:

    hilbert a b --place {inf|2|p} [--oracle]
    ram a b
    iso a1 b1 a2 b2
    embeds c a b
    distinguish a1 b1 a2 b2
    pfister-distinguish --d d --phi1 s1,...,sd --phi2 s1,...,sd
    crux --place {p|t} --phi1 ... --phi2 ...
    tractable verify --base {q|p|2} --a a1,a2,a3 --b b1,b2,b3
    tractable search --base {p|2}
    rost a1 a2 --b b

Slots are integers or n/d rationals; a trailing t (as in `t`, `-t`, `3t`)
marks a monomial entry over Q(t).  `--bound N` caps every candidate
enumeration (default 10000, env override WITNESSLAB_BOUND); exhausting a
bound reports inconclusive, never a fabricated negative.  `--pretty`
renders indented JSON.
"""

from __future__ import annotations

import json
import os
import re
import sys
from fractions import Fraction

from .brauer import QuaternionAlgebra, embeds, hilbert, is_isomorphic, ram_set
from .errors import DomainError, InconclusiveError, ResourceError, WitnesslabError
from .oracle import hilbert_bruteforce
from .places import DEFAULT_SEARCH_BOUND, Place
from .quadform import Monomial, PfisterForm
from .theorems import (
    TractableConfig,
    distinguish_pfister,
    distinguish_quaternions,
    function_field_step,
    local_divisor_witness,
    tractable_search_local,
    tractable_verify,
)


class UsageError(WitnesslabError):
    pass


_SLOT_RE = re.compile(r"([+-]?)(\d+(?:/\d+)?)?(t?)")


def parse_slot(text: str):
    """An integer, n/d rational, or t-monomial slot."""
    m = _SLOT_RE.fullmatch(text.strip())
    if not m or (not m.group(2) and not m.group(3)):
        raise UsageError(f"bad slot {text!r}")
    coeff = Fraction(m.group(2)) if m.group(2) else Fraction(1)
    if m.group(1) == "-":
        coeff = -coeff
    if m.group(3):
        return Monomial(coeff, 1)
    return coeff


def parse_form(text: str) -> tuple:
    return tuple(parse_slot(part) for part in text.split(","))


def parse_place(text: str) -> Place:
    try:
        return Place.parse(text)
    except (DomainError, ValueError) as exc:
        raise UsageError(f"bad place {text!r}: {exc}") from exc


def fmt(x) -> str:
    return str(x)


def _split_args(tokens: list[str], flags: set[str], valued: set[str]):
    opts: dict[str, object] = {}
    positional: list[str] = []
    i = 0
    while i < len(tokens):
        tok = tokens[i]
        if tok.startswith("--"):
            body = tok[2:]
            if "=" in body:
                name, value = body.split("=", 1)
                if name not in valued:
                    raise UsageError(f"unknown option --{name}")
                opts[name] = value
                i += 1
                continue
            if body in flags:
                opts[body] = True
                i += 1
                continue
            if body in valued:
                if i + 1 >= len(tokens):
                    raise UsageError(f"option --{body} needs a value")
                opts[body] = tokens[i + 1]
                i += 2
                continue
            raise UsageError(f"unknown option --{body}")
        positional.append(tok)
        i += 1
    return opts, positional


def _need(positional: list[str], count: int, what: str) -> list[str]:
    if len(positional) != count:
        raise UsageError(f"{what}: expected {count} arguments, got {len(positional)}")
    return positional


def _rational_slot(text: str) -> Fraction:
    slot = parse_slot(text)
    if isinstance(slot, Monomial):
        raise UsageError(f"monomial slot {text!r} not allowed here")
    return slot


def _algebra(a: str, b: str) -> QuaternionAlgebra:
    return QuaternionAlgebra.of(_rational_slot(a), _rational_slot(b))


def _pfister(text: str) -> PfisterForm:
    return PfisterForm(parse_form(text))


def _bound(opts) -> int:
    raw = opts.get("bound") or os.environ.get("WITNESSLAB_BOUND")
    if raw is None:
        return DEFAULT_SEARCH_BOUND
    try:
        n = int(raw)
    except ValueError as exc:
        raise UsageError(f"bad bound {raw!r}") from exc
    if n < 1:
        raise UsageError("bound must be positive")
    return n


def _cmd_hilbert(tokens):
    opts, pos = _split_args(tokens, {"oracle", "pretty"}, {"place", "bound"})
    a, b = _need(pos, 2, "hilbert")
    if "place" not in opts:
        raise UsageError("hilbert needs --place {inf|2|p}")
    v = parse_place(str(opts["place"]))
    symbol = hilbert(_rational_slot(a), _rational_slot(b), v)
    payload = {"symbol": fmt(symbol)}
    if opts.get("oracle"):
        other = hilbert_bruteforce(_rational_slot(a), _rational_slot(b), v)
        payload["oracle"] = fmt(other)
        payload["agree"] = other == symbol
    return payload, opts


def _cmd_ram(tokens):
    opts, pos = _split_args(tokens, {"pretty"}, {"bound"})
    a, b = _need(pos, 2, "ram")
    ram = ram_set(_algebra(a, b))
    return {"ramified": [str(v) for v in ram], "division": not ram.is_empty}, opts


def _cmd_iso(tokens):
    opts, pos = _split_args(tokens, {"pretty"}, {"bound"})
    a1, b1, a2, b2 = _need(pos, 4, "iso")
    return {"isomorphic": is_isomorphic(_algebra(a1, b1), _algebra(a2, b2))}, opts


def _cmd_embeds(tokens):
    opts, pos = _split_args(tokens, {"pretty"}, {"bound"})
    c, a, b = _need(pos, 3, "embeds")
    return {"embeds": embeds(_rational_slot(c), _algebra(a, b))}, opts


def _cmd_distinguish(tokens):
    opts, pos = _split_args(tokens, {"pretty"}, {"bound"})
    a1, b1, a2, b2 = _need(pos, 4, "distinguish")
    report = distinguish_quaternions(_algebra(a1, b1), _algebra(a2, b2), bound=_bound(opts))
    if report is None:
        return {"witness": None, "isomorphic": True}, opts
    return {
        "witness": fmt(report.witness),
        "embeds_in": f"D{report.embeds_in}",
        "case": report.case_tag,
    }, opts


def _cmd_pfister_distinguish(tokens):
    opts, pos = _split_args(tokens, {"pretty"}, {"d", "phi1", "phi2", "bound"})
    _need(pos, 0, "pfister-distinguish")
    if "phi1" not in opts or "phi2" not in opts:
        raise UsageError("pfister-distinguish needs --phi1 and --phi2")
    phi1 = _pfister(str(opts["phi1"]))
    phi2 = _pfister(str(opts["phi2"]))
    if "d" in opts and int(str(opts["d"])) != phi1.d:
        raise UsageError(f"--d {opts['d']} does not match {phi1.d} slots")
    report = distinguish_pfister(phi1, phi2, bound=_bound(opts))
    if report is None:
        return {"gamma": None, "isometric": True}, opts
    assert isinstance(report.witness, PfisterForm)
    return {
        "gamma": [fmt(s) for s in report.witness.slots],
        "divides": f"phi{report.embeds_in}",
        "case": report.case_tag,
    }, opts


def _cmd_crux(tokens):
    opts, pos = _split_args(tokens, {"pretty"}, {"place", "phi1", "phi2", "bound"})
    _need(pos, 0, "crux")
    for key in ("place", "phi1", "phi2"):
        if key not in opts:
            raise UsageError(f"crux needs --{key}")
    raw_place = str(opts["place"])
    v: int | str = "t" if raw_place == "t" else int(raw_place)
    report = local_divisor_witness(_pfister(str(opts["phi1"])), _pfister(str(opts["phi2"])), v)
    return {
        "gamma": [fmt(s) for s in report.gamma.slots],
        "divides": f"phi{report.divides}",
        "case": report.case_tag,
    }, opts


def _parse_base(text: str) -> Place | None:
    if text == "q":
        return None
    return parse_place(text)


def _cmd_tractable(tokens):
    if not tokens:
        raise UsageError("tractable needs a mode: verify or search")
    mode, rest = tokens[0], tokens[1:]
    if mode == "verify":
        opts, pos = _split_args(rest, {"pretty"}, {"base", "a", "b", "bound"})
        _need(pos, 0, "tractable verify")
        if "a" not in opts or "b" not in opts:
            raise UsageError("tractable verify needs --a a1,a2,a3 and --b b1,b2,b3")
        a = tuple(int(_rational_slot(s)) for s in str(opts["a"]).split(","))
        b = tuple(int(_rational_slot(s)) for s in str(opts["b"]).split(","))
        if len(a) != 3 or len(b) != 3:
            raise UsageError("tractable verify needs three a-slots and three b-slots")
        base = _parse_base(str(opts.get("base", "q")))
        report = tractable_verify(TractableConfig(a, b, base))
        return {
            "premises_hold": report.premises_hold,
            "conclusion_holds": report.conclusion_holds,
            "violation": report.violation,
        }, opts
    if mode == "search":
        opts, pos = _split_args(rest, {"pretty"}, {"base", "bound"})
        _need(pos, 0, "tractable search")
        base = _parse_base(str(opts.get("base", "2")))
        if base is None:
            raise DomainError("the exhaustive tractability search runs over a completion, not Q")
        cfg = tractable_search_local(base)
        if cfg is None:
            return {"violation": None, "proved_empty": True}, opts
        return {
            "violation": {"a": [fmt(x) for x in cfg.a], "b": [fmt(x) for x in cfg.b]},
            "proved_empty": False,
        }, opts
    raise UsageError(f"unknown tractable mode {mode!r}")


def _cmd_rost(tokens):
    opts, pos = _split_args(tokens, {"pretty"}, {"b", "bound"})
    a1, a2 = _need(pos, 2, "rost")
    if "b" not in opts:
        raise UsageError("rost needs --b")
    b = str(opts["b"])
    report = function_field_step(_algebra(a1, b), _algebra(a2, b), bound=_bound(opts))
    return {
        "c": fmt(report.c),
        "contains": f"Q{report.contains}",
        "q": [fmt(e) for e in report.form.entries],
        "anisotropic": report.anisotropic,
        "det": fmt(report.det_class),
        "det_nonsquare": report.det_nonsquare,
        "not_similar": report.not_similar,
        "albert": {
            "witt_index": fmt(report.albert_witt_index),
            "scale": fmt(report.albert_scale),
            "matched": report.albert_matched,
        },
    }, opts


_COMMANDS = {
    "hilbert": _cmd_hilbert,
    "ram": _cmd_ram,
    "iso": _cmd_iso,
    "embeds": _cmd_embeds,
    "distinguish": _cmd_distinguish,
    "pfister-distinguish": _cmd_pfister_distinguish,
    "crux": _cmd_crux,
    "tractable": _cmd_tractable,
    "rost": _cmd_rost,
}


def _emit(payload, pretty: bool) -> None:
    if pretty:
        print(json.dumps(payload, indent=2, sort_keys=False))
    else:
        print(json.dumps(payload, sort_keys=False))


def _fail(status: str, message: str, code: int, pretty: bool) -> int:
    print(message, file=sys.stderr)
    _emit({"status": status, "error": message}, pretty)
    return code


def main(argv: list[str] | None = None) -> int:
    args = list(sys.argv[1:] if argv is None else argv)
    pretty = "--pretty" in args
    if not args or args[0] in ("-h", "--help", "help"):
        print(__doc__, file=sys.stderr)
        return 0 if args and args[0] in ("-h", "--help", "help") else 1
    command, rest = args[0], args[1:]
    handler = _COMMANDS.get(command)
    try:
        if handler is None:
            raise UsageError(f"unknown command {command!r}")
        payload, opts = handler(rest)
    except UsageError as exc:
        return _fail("usage-error", str(exc), 1, pretty)
    except DomainError as exc:
        return _fail("domain-error", str(exc), 2, pretty)
    except InconclusiveError as exc:
        return _fail("inconclusive", str(exc), 3, pretty)
    except ResourceError as exc:
        return _fail("resource-error", str(exc), 4, pretty)
    _emit(payload, bool(opts.get("pretty")))
    return 0


if __name__ == "__main__":
    sys.exit(main())
