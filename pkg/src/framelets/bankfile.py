"""
Line-oriented text format for filter banks.

::

    FRAMELET-BANK 1
    field real
    # comment lines start with '#'
    filter a lo -1 len 3
    0.25 0
    0.5 0
    0.25 0
    filter b1 lo -1 len 2
    ...

``len`` counts coefficient lines.  Each coefficient line holds the real and
imaginary parts.  Serialization uses 17 significant digits, so parsing a
serialized bank gives back the same doubles.
"""
from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

from .analysis import FilterBank
from .errors import BankSyntaxError, DuplicateFilter, IoFailure, MissingLowpass
from .laurent import LaurentPoly

MAGIC = "FRAMELET-BANK"
VERSION = 1
NAMES = ("a", "b1", "b2", "bp", "bn")


@dataclass(frozen=True)
class BankFile:
    field: str
    filters: tuple                  # ((name, LaurentPoly), ...)
    version: int = VERSION

    def get(self, name: str) -> LaurentPoly:
        for n, p in self.filters:
            if n == name:
                return p
        raise KeyError(name)

    @property
    def names(self) -> tuple:
        return tuple(n for n, _ in self.filters)

    @property
    def highpass(self) -> tuple:
        return tuple(p for n, p in self.filters if n != "a")

    def to_bank(self) -> FilterBank:
        return FilterBank(self.get("a"), self.highpass, self.field)

    @classmethod
    def from_bank(cls, bank: FilterBank, names=None) -> "BankFile":
        names = names or (("b1", "b2") if bank.arity == 2 else tuple(f"b{i + 1}" for i in range(bank.arity)))
        if len(names) != bank.arity:
            raise ValueError("one name per high-pass filter is needed")
        return cls(bank.field, (("a", bank.a), *zip(names, bank.highpass)))

    @classmethod
    def lowpass_only(cls, a: LaurentPoly) -> "BankFile":
        return cls("real" if a.is_real else "complex", (("a", a),))


def _fmt(x: float) -> str:
    return "%.17g" % (x + 0.0)      # adding 0.0 turns -0.0 into 0.0


def serialize_bank(bf: BankFile) -> str:
    out = [f"{MAGIC} {bf.version}", f"field {bf.field}"]
    for name, p in bf.filters:
        out.append(f"filter {name} lo {p.lo} len {len(p)}")
        out.extend(f"{_fmt(c.real)} {_fmt(c.imag)}" for c in p.coeffs)
    return "\n".join(out) + "\n"


def _int(tok: str, line: int, col: int) -> int:
    try:
        return int(tok)
    except ValueError:
        raise BankSyntaxError(f"expected an integer, got {tok!r}", line, col) from None


def _float(tok: str, line: int, col: int) -> float:
    try:
        return float(tok)
    except ValueError:
        raise BankSyntaxError(f"expected a number, got {tok!r}", line, col) from None


def _tokens(text: str):
    """Yield ``(line_no, [(column, token), ...])`` for non-blank, non-comment lines."""
    for no, raw in enumerate(text.splitlines(), start=1):
        if not raw.strip() or raw.lstrip().startswith("#"):
            continue
        toks, col = [], 0
        for part in raw.split():
            col = raw.index(part, col)
            toks.append((col + 1, part))
            col += len(part)
        yield no, toks


def parse_bank(text: str, require_highpass: bool = True) -> BankFile:
    """
    Parse the bank format.

    Raises
    ------
    BankSyntaxError
        Malformed text; carries the line and column.
    DuplicateFilter, MissingLowpass
        Structural problems.
    """
    lines = list(_tokens(text))
    if not lines:
        raise BankSyntaxError("empty bank file", 1, 1)
    it = iter(lines)

    no, toks = next(it)
    if len(toks) != 2 or toks[0][1] != MAGIC:
        raise BankSyntaxError(f"expected header '{MAGIC} {VERSION}'", no, 1)
    version = _int(toks[1][1], no, toks[1][0])
    if version != VERSION:
        raise BankSyntaxError(f"unsupported version {version}", no, toks[1][0])

    try:
        no, toks = next(it)
    except StopIteration:
        raise BankSyntaxError("missing 'field' line", no + 1, 1) from None
    if len(toks) != 2 or toks[0][1] != "field" or toks[1][1] not in ("real", "complex"):
        raise BankSyntaxError("expected 'field real' or 'field complex'", no, 1)
    field_tag, field_line = toks[1][1], no

    filters, seen = [], set()
    for no, toks in it:
        words = [t for _, t in toks]
        if len(words) != 6 or words[0] != "filter" or words[2] != "lo" or words[4] != "len":
            raise BankSyntaxError("expected 'filter <name> lo <int> len <int>'", no, 1)
        name = words[1]
        if name not in NAMES:
            raise BankSyntaxError(f"unknown filter name {name!r}", no, toks[1][0])
        if name in seen:
            raise DuplicateFilter(f"filter {name!r} appears twice (line {no})")
        seen.add(name)
        lo = _int(words[3], no, toks[3][0])
        n = _int(words[5], no, toks[5][0])
        if n < 0:
            raise BankSyntaxError("len must be nonnegative", no, toks[5][0])
        coeffs = []
        for _ in range(n):
            try:
                cno, ctoks = next(it)
            except StopIteration:
                raise BankSyntaxError(f"filter {name!r} ends early", no, 1) from None
            if len(ctoks) != 2:
                raise BankSyntaxError("expected '<re> <im>'", cno, 1)
            re = _float(ctoks[0][1], cno, ctoks[0][0])
            im = _float(ctoks[1][1], cno, ctoks[1][0])
            coeffs.append(complex(re, im))
        filters.append((name, LaurentPoly(coeffs, lo)))

    if "a" not in seen:
        raise MissingLowpass("the bank has no filter named 'a'")
    if require_highpass and len(filters) < 2:
        raise BankSyntaxError("the bank has no high-pass filter", no, 1)
    if field_tag == "real" and any(not p.is_real for _, p in filters):
        raise BankSyntaxError("field is real but a coefficient is complex", field_line, 7)
    return BankFile(field_tag, tuple(filters), version)


def read_bank(path, require_highpass: bool = True) -> BankFile:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except (OSError, UnicodeDecodeError) as exc:
        raise IoFailure(f"cannot read {path}: {exc}") from exc
    return parse_bank(text, require_highpass)


def write_bank(bf: BankFile, path) -> None:
    try:
        Path(path).write_text(serialize_bank(bf), encoding="utf-8")
    except OSError as exc:
        raise IoFailure(f"cannot write {path}: {exc}") from exc
