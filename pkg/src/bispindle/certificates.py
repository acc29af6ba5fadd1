"""Certificate JSON encoding plus the independent checker used by `verify`.

The checker deliberately shares no code path with the producers beyond the
data types, the properness test, and the witness verifier: a certificate is
replayed against the digraph from scratch.
"""

from __future__ import annotations

import re
from typing import Optional, Union

from .coloring import Coloring, is_proper
from .digraph import Digraph
from .errors import PreconditionError
from .spindles import BispindlePattern, SubdivisionWitness, verify_witness
from .suitable import Bounds

THEOREMS = ("p211", "bk11", "bk1k")


def pattern_for(theorem: str, k: Optional[int]) -> BispindlePattern:
    if theorem == "p211":
        return BispindlePattern.b(2, 1, 1)
    if theorem == "bk11":
        if k is None or k < 3:
            raise PreconditionError("bk11 needs k >= 3")
        return BispindlePattern.b(k, 1, 1)
    if theorem == "bk1k":
        if k is None or k < 1:
            raise PreconditionError("bk1k needs k >= 1")
        return BispindlePattern.b(k, 1, k)
    raise PreconditionError(f"unknown theorem {theorem!r}")


def coloring_threshold(theorem: str, k: Optional[int]) -> int:
    if theorem == "bk11":
        assert k is not None
        return (2 * k - 2) * (2 * k - 3)
    if theorem == "bk1k":
        assert k is not None
        return Bounds.of(k).gamma
    raise PreconditionError(f"theorem {theorem!r} has no coloring branch")


def pattern_label(pat: BispindlePattern) -> str:
    return pat.label()


def parse_pattern_label(text: str) -> BispindlePattern:
    m = re.fullmatch(r"B\(([\d,]*);([\d,]*)\)", text.strip())
    if not m:
        raise PreconditionError(f"bad pattern label {text!r}")
    fwd = [int(x) for x in m.group(1).split(",") if x]
    bwd = [int(x) for x in m.group(2).split(",") if x]
    return BispindlePattern(fwd, bwd)


def make_certificate(
    theorem: str,
    k: Optional[int],
    result: Union[Coloring, SubdivisionWitness],
    n: int,
) -> dict:
    out: dict = {"theorem": theorem}
    if k is not None:
        out["parameter"] = k
    if isinstance(result, Coloring):
        out["kind"] = "coloring"
        out["bound"] = coloring_threshold(theorem, k)
        out["coloring"] = result.to_json(n)
    else:
        out["kind"] = "witness"
        out["pattern"] = pattern_label(pattern_for(theorem, k))
        out["witness"] = result.to_json()
    return out


def check_certificate(d: Digraph, cert: dict) -> tuple[bool, str]:
    """Replay a certificate against the digraph; (ok, reason)."""
    try:
        theorem = cert["theorem"]
        if theorem not in THEOREMS:
            return False, f"unknown theorem {theorem!r}"
        k = cert.get("parameter")
        kind = cert["kind"]
        if kind == "coloring":
            col = Coloring.from_json(cert["coloring"])
            if set(col.colors) != set(range(d.n)):
                return False, "coloring does not cover the vertex set"
            if not is_proper(d, col):
                return False, "coloring is improper"
            claimed = int(cert["bound"])
            if col.bound > claimed:
                return False, "coloring bound exceeds the claimed bound"
            if claimed != coloring_threshold(theorem, k):
                return False, "claimed bound does not match the theorem threshold"
            return True, "ok"
        if kind == "witness":
            pat = parse_pattern_label(cert["pattern"])
            expected = pattern_for(theorem, k)
            if (pat.forward, pat.backward) != (expected.forward, expected.backward):
                return False, "pattern does not match the theorem"
            w = SubdivisionWitness.from_json(cert["witness"])
            if not verify_witness(d, pat, w):
                return False, "witness failed verification"
            return True, "ok"
        return False, f"unknown certificate kind {kind!r}"
    except (KeyError, ValueError, TypeError, PreconditionError) as exc:
        return False, f"malformed certificate: {exc}"
