"""Batch front end: generate instances, compute chromatic numbers, detect
subdivisions, run the certifiers, and verify certificates.

Exit codes: 0 success / certificate valid, 1 failed check or invalid
certificate, 2 usage errors. All randomness sits behind --seed.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Optional

from . import generators, io
from .certificates import check_certificate, make_certificate
from .coloring import exact_chromatic
from .errors import BispindleError, PreconditionError
from .nice import certify_b_k11
from .spindles import BispindlePattern, extract_b211, find_subdivision
from .suitable import certify_b_k1k


def _parse_pattern(text: str) -> BispindlePattern:
    if ":" in text:
        left, right = text.split(":", 1)
    else:
        left, right = text, ""
    fwd = [int(x) for x in left.split(",") if x]
    bwd = [int(x) for x in right.split(",") if x]
    return BispindlePattern(fwd, bwd)


def _emit(payload: dict, as_json: bool, path: Optional[str] = None) -> None:
    text = json.dumps(payload, indent=2, sort_keys=True) + "\n"
    if path:
        with open(path, "w", encoding="ascii") as fh:
            fh.write(text)
    if as_json:
        sys.stdout.write(text)
    else:
        for key, val in sorted(payload.items()):
            if key not in ("witness", "coloring"):
                sys.stdout.write(f"{key}: {val}\n")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="bispindle",
        description="certifying toolkit for spindle/bispindle subdivisions in digraphs",
    )
    ap.add_argument("--json", action="store_true", help="machine-readable output")
    ap.add_argument("--threads", type=int, default=1,
                    help="accepted for interface stability; kernels are deterministic")
    sub = ap.add_subparsers(dest="cmd", required=True)

    g = sub.add_parser("gen", help="generate an instance family member")
    g.add_argument("family", choices=[
        "odd-cycle", "cycle", "rotative", "complete", "tt", "random", "spindle-free",
    ])
    g.add_argument("--n", type=int)
    g.add_argument("--k", type=int)
    g.add_argument("--p", type=float, default=0.5)
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--dkb", help="edge-list file with a validated many-block instance")
    g.add_argument("-o", "--output", required=True)

    c = sub.add_parser("chi", help="exact chromatic number of the underlying graph")
    c.add_argument("file")

    det = sub.add_parser("detect", help="search for a bispindle subdivision")
    det.add_argument("file")
    det.add_argument("--pattern", required=True, help="forward mins ':' backward mins, e.g. 3,1:1")
    det.add_argument("--exhaustive", action="store_true")
    det.add_argument("-o", "--output")

    ce = sub.add_parser("certify", help="run a certifying theorem")
    ce.add_argument("file")
    ce.add_argument("--theorem", required=True, choices=["p211", "bk11", "bk1k"])
    ce.add_argument("--k", type=int)
    ce.add_argument("-o", "--output")

    v = sub.add_parser("verify", help="independently check a certificate")
    v.add_argument("file")
    v.add_argument("certificate")
    return ap


def _cmd_gen(args) -> int:
    fam = args.family
    header = [f"family={fam}", f"seed={args.seed}"]
    if fam == "odd-cycle":
        d = generators.odd_dicycle(args.n)
        header.append(f"n={args.n}")
    elif fam == "cycle":
        d = generators.directed_cycle(args.n)
        header.append(f"n={args.n}")
    elif fam == "rotative":
        d = generators.rotative_tournament(args.k)
        header.append(f"k={args.k}")
    elif fam == "complete":
        d = generators.bidirected_complete(args.n)
        header.append(f"n={args.n}")
    elif fam == "tt":
        d = generators.transitive_tournament(args.n)
        header.append(f"n={args.n}")
    elif fam == "random":
        d = generators.random_strong_digraph(args.n, args.p, args.seed)
        header.extend([f"n={args.n}", f"p={args.p}"])
    else:
        if args.k is None:
            raise PreconditionError("spindle-free needs --k")
        if args.dkb:
            base = io.read_edge_list(args.dkb)
        else:
            base = generators.find_dkb(args.k, 4, seed=args.seed)
            if base is None:
                raise PreconditionError("no valid many-block instance found; pass --dkb")
        d = generators.spindle_free_construction(base, args.k)
        header.append(f"k={args.k}")
    io.write_edge_list(d, args.output, header)
    sys.stdout.write(f"wrote {args.output} (n={d.n}, m={len(d.arcs)})\n")
    return 0


def _cmd_chi(args, as_json: bool) -> int:
    d = io.read_edge_list(args.file)
    chi, _ = exact_chromatic(d)
    _emit({"chi": chi, "n": d.n, "m": len(d.arcs)}, as_json)
    return 0


def _cmd_detect(args, as_json: bool) -> int:
    d = io.read_edge_list(args.file)
    pat = _parse_pattern(args.pattern)
    res = find_subdivision(d, pat, exhaustive=True if args.exhaustive else None)
    payload: dict = {"status": res.status, "pattern": args.pattern}
    if res.witness is not None:
        payload["witness"] = res.witness.to_json()
    _emit(payload, as_json, args.output)
    return 0


def _cmd_certify(args, as_json: bool) -> int:
    d = io.read_edge_list(args.file)
    if args.theorem == "p211":
        result = extract_b211(d)
        k = None
    elif args.theorem == "bk11":
        if args.k is None:
            raise PreconditionError("bk11 needs --k")
        result = certify_b_k11(d, args.k)
        k = args.k
    else:
        if args.k is None:
            raise PreconditionError("bk1k needs --k")
        result = certify_b_k1k(d, args.k)
        k = args.k
    cert = make_certificate(args.theorem, k, result, d.n)
    _emit(cert, as_json, args.output)
    return 0


def _cmd_verify(args, as_json: bool) -> int:
    d = io.read_edge_list(args.file)
    with open(args.certificate, "r", encoding="ascii") as fh:
        cert = json.load(fh)
    ok, reason = check_certificate(d, cert)
    _emit({"valid": ok, "reason": reason}, as_json)
    return 0 if ok else 1


def run(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        if args.cmd == "gen":
            return _cmd_gen(args)
        if args.cmd == "chi":
            return _cmd_chi(args, args.json)
        if args.cmd == "detect":
            return _cmd_detect(args, args.json)
        if args.cmd == "certify":
            return _cmd_certify(args, args.json)
        if args.cmd == "verify":
            return _cmd_verify(args, args.json)
        return 2
    except BispindleError as exc:
        payload = {"error": str(exc)}
        if args.json:
            sys.stdout.write(json.dumps(payload) + "\n")
        else:
            sys.stderr.write(f"error: {exc}\n")
        return 1
    except FileNotFoundError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
