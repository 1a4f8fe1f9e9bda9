"""Fuchsian signatures: μ(Γ), covolume, free rank and the text grammar.

Grammar::

    (m1,...,md)          oriented genus-0 group; an entry "inf" or "∞" is a cusp
    g=K                  oriented closed surface of genus K
    o|n;g;m1,...,md;s;t  full form (periods may be empty)

``format_signature`` always emits the full form.
"""

from __future__ import annotations

from fractions import Fraction

from fuchsian_growth.errors import (
    Cocompact,
    IndivisibleIndex,
    InvalidSignature,
    NoAdmissibleIndex,
    NonFuchsian,
    SignatureMismatch,
    SignatureParseError,
)
from fuchsian_growth.types import FuchsianSignature, PiMultiple

_CUSP_TOKENS = ("inf", "∞")


# ---------- Invariants ----------

def mu(sig: FuchsianSignature) -> Fraction:
    """−χ(Γ)."""
    base = 2 * sig.genus - 2 if sig.oriented else sig.genus - 2
    return base + sum((1 - Fraction(1, m) for m in sig.periods), Fraction(0)) + sig.cusps + sig.boundary


def require_fuchsian(sig: FuchsianSignature) -> Fraction:
    value = mu(sig)
    if value <= 0:
        raise NonFuchsian(f"{format_signature(sig)} has μ = {value} ≤ 0")
    return value


def covolume(sig: FuchsianSignature) -> PiMultiple:
    """Gauss–Bonnet: 2π·μ(Γ)."""
    return PiMultiple(2 * require_fuchsian(sig))


def is_cocompact(sig: FuchsianSignature) -> bool:
    return sig.cusps == 0 and sig.boundary == 0


def free_rank(sig: FuchsianSignature) -> int:
    """r with Γ ≅ Z_{m_1} * ... * Z_{m_d} * F_r."""
    if is_cocompact(sig):
        raise Cocompact(f"{format_signature(sig)} has no cusps or boundary")
    if sig.oriented:
        return 2 * sig.genus + sig.cusps + sig.boundary - 1
    return sig.genus + sig.cusps + sig.boundary - 1


def require_cocompact(sig: FuchsianSignature) -> None:
    if not is_cocompact(sig):
        raise SignatureMismatch(f"{format_signature(sig)} is not cocompact")


def cover_genus(sig: FuchsianSignature, n: int) -> int:
    """Genus g′ of an index-n torsion-free subgroup: 2g′ − 2 = n·μ."""
    require_cocompact(sig)
    if not sig.oriented:
        raise SignatureMismatch("cover genus is defined for oriented signatures")
    bad = [m for m in sig.periods if n % m]
    if bad:
        raise IndivisibleIndex(f"periods {bad} do not divide {n}")
    euler = n * require_fuchsian(sig)
    if euler.denominator != 1 or euler.numerator % 2:
        raise NoAdmissibleIndex(f"n·μ = {euler} is not an even integer")
    return euler.numerator // 2 + 1


def index_for_genus(sig: FuchsianSignature, genus: int) -> int:
    """n = (2g′ − 2)/μ, provided it is a positive integer divisible by every period."""
    if genus < 2:
        raise NoAdmissibleIndex(f"surface genus must be at least 2, got {genus}")
    n = Fraction(2 * genus - 2) / require_fuchsian(sig)
    if n.denominator != 1:
        raise NoAdmissibleIndex(f"(2g′−2)/μ = {n} is not an integer")
    bad = [m for m in sig.periods if n.numerator % m]
    if bad:
        raise NoAdmissibleIndex(f"index {n} is not divisible by periods {bad}")
    return n.numerator


# ---------- Grammar ----------

class _Cursor:
    def __init__(self, text: str) -> None:
        self.text = text
        self.pos = 0

    def peek(self) -> str:
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def at_end(self) -> bool:
        return self.pos >= len(self.text)

    def fail(self, message: str, expected: set[str]) -> SignatureParseError:
        return SignatureParseError(message, self.text, self.pos, frozenset(expected))

    def expect(self, token: str) -> None:
        if not self.text.startswith(token, self.pos):
            raise self.fail(f"expected {token!r}", {token})
        self.pos += len(token)

    def accept(self, token: str) -> bool:
        if self.text.startswith(token, self.pos):
            self.pos += len(token)
            return True
        return False

    def integer(self, minimum: int = 0) -> int:
        start = self.pos
        while self.peek().isdigit():
            self.pos += 1
        if start == self.pos:
            raise self.fail("expected an integer", {"integer"})
        value = int(self.text[start:self.pos])
        if value < minimum:
            self.pos = start
            raise self.fail(f"{value} is below {minimum}", {f"integer ≥ {minimum}"})
        return value

    def finish(self) -> None:
        if not self.at_end():
            raise self.fail("trailing input", {"end of input"})


def _period_list(cur: _Cursor, stop: str, allow_cusps: bool) -> tuple[list[int], int]:
    periods: list[int] = []
    cusps = 0
    if cur.peek() == stop:
        return periods, cusps
    while True:
        if allow_cusps and any(cur.accept(tok) for tok in _CUSP_TOKENS):
            cusps += 1
        else:
            periods.append(cur.integer(minimum=2))
        if not cur.accept(","):
            return periods, cusps


def parse_signature(text: str) -> FuchsianSignature:
    cur = _Cursor(text.strip().replace(" ", ""))
    if cur.accept("("):
        periods, cusps = _period_list(cur, ")", allow_cusps=True)
        cur.expect(")")
        cur.finish()
        return FuchsianSignature(oriented=True, genus=0, periods=tuple(periods), cusps=cusps)
    if cur.accept("g="):
        genus = cur.integer()
        cur.finish()
        return FuchsianSignature(oriented=True, genus=genus)
    if cur.accept("o"):
        oriented = True
    elif cur.accept("n"):
        oriented = False
    else:
        raise cur.fail("unrecognised signature", {"(", "g=", "o", "n"})
    cur.expect(";")
    genus = cur.integer(minimum=0 if oriented else 1)
    cur.expect(";")
    periods, _ = _period_list(cur, ";", allow_cusps=False)
    cur.expect(";")
    cusps = cur.integer()
    cur.expect(";")
    boundary = cur.integer()
    cur.finish()
    try:
        return FuchsianSignature(oriented, genus, tuple(periods), cusps, boundary)
    except InvalidSignature as exc:
        raise cur.fail(str(exc), {"valid signature"}) from exc


def format_signature(sig: FuchsianSignature) -> str:
    kind = "o" if sig.oriented else "n"
    periods = ",".join(str(m) for m in sig.periods)
    return f"{kind};{sig.genus};{periods};{sig.cusps};{sig.boundary}"
