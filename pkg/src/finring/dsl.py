"""A small expression language naming finite rings and groups.

Grammar (whitespace is ignored, constructor names are case-insensitive)::

    ring  := "Z" int | "F" int
           | "M(" int "," ring ")" | "T(" int "," ring ")" | "S(" int "," ring ")"
           | "Prod(" ring {"," ring} ")" | "Triv(" ring ["," int] ")" | "DT(" ring ")"
           | "GR(" ring "," group ")" | "Trunc(" ring "," int ["," twist] ")"
           | "K(" ring "," int ")"
    group := atom {"x" atom}
    atom  := "C" int | "D" int | "Q8" | "S3"
    twist := "id" | "frob"

Printing an expression gives its canonical spelling, which is also the
label of the ring it evaluates to.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import prod
from typing import Union

from . import constructors as C
from .core import FiniteRing, RingError, SizeCapError, get_max_order
from .groups import FiniteGroup, cyclic, dihedral, direct_product, quaternion8, symmetric3
from .tables import positional_digits


class ParseError(RingError, ValueError):
    def __init__(self, message: str, text: str = "", pos: int = 0):
        self.text = text
        self.pos = pos
        self.reason = message
        where = f"\n  {text}\n  {' ' * pos}^" if text else ""
        super().__init__(f"{message} at position {pos}{where}")


Span = tuple[int, int]


def _span():
    return field(default=(0, 0), compare=False, repr=False)


# --- groups ---


@dataclass(frozen=True)
class Cyclic:
    n: int
    span: Span = _span()

    def __str__(self):
        return f"C{self.n}"


@dataclass(frozen=True)
class Dihedral:
    n: int
    span: Span = _span()

    def __str__(self):
        return f"D{self.n}"


@dataclass(frozen=True)
class Quaternion8:
    span: Span = _span()

    def __str__(self):
        return "Q8"


@dataclass(frozen=True)
class Symmetric3:
    span: Span = _span()

    def __str__(self):
        return "S3"


@dataclass(frozen=True)
class GroupProduct:
    factors: tuple
    span: Span = _span()

    def __str__(self):
        return "x".join(str(f) for f in self.factors)


GroupExpr = Union[Cyclic, Dihedral, Quaternion8, Symmetric3, GroupProduct]


# --- rings ---


@dataclass(frozen=True)
class ZMod:
    n: int
    span: Span = _span()

    def __str__(self):
        return f"Z{self.n}"


@dataclass(frozen=True)
class GF:
    q: int
    span: Span = _span()

    def __str__(self):
        return f"F{self.q}"


@dataclass(frozen=True)
class Matrix:
    k: int
    base: "RingExpr"
    span: Span = _span()

    def __str__(self):
        return f"M({self.k},{self.base})"


@dataclass(frozen=True)
class Upper:
    k: int
    base: "RingExpr"
    span: Span = _span()

    def __str__(self):
        return f"T({self.k},{self.base})"


@dataclass(frozen=True)
class SN:
    k: int
    base: "RingExpr"
    span: Span = _span()

    def __str__(self):
        return f"S({self.k},{self.base})"


@dataclass(frozen=True)
class Prod:
    factors: tuple
    span: Span = _span()

    def __str__(self):
        return "Prod(" + ",".join(str(f) for f in self.factors) + ")"


@dataclass(frozen=True)
class Triv:
    base: "RingExpr"
    k: int = 1
    span: Span = _span()

    def __str__(self):
        return f"Triv({self.base})" if self.k == 1 else f"Triv({self.base},{self.k})"


@dataclass(frozen=True)
class DT:
    base: "RingExpr"
    span: Span = _span()

    def __str__(self):
        return f"DT({self.base})"


@dataclass(frozen=True)
class GroupRing:
    base: "RingExpr"
    group: GroupExpr
    span: Span = _span()

    def __str__(self):
        return f"GR({self.base},{self.group})"


@dataclass(frozen=True)
class Trunc:
    base: "RingExpr"
    n: int
    twist: str = "id"
    span: Span = _span()

    def __str__(self):
        if self.twist == "id":
            return f"Trunc({self.base},{self.n})"
        return f"Trunc({self.base},{self.n},{self.twist})"


@dataclass(frozen=True)
class KS:
    base: "RingExpr"
    s: int
    span: Span = _span()

    def __str__(self):
        return f"K({self.base},{self.s})"


RingExpr = Union[ZMod, GF, Matrix, Upper, SN, Prod, Triv, DT, GroupRing, Trunc, KS]

RING_CONSTRUCTORS = ("M", "T", "S", "PROD", "TRIV", "DT", "GR", "TRUNC", "K")


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def error(self, msg: str, pos: int | None = None):
        raise ParseError(msg, self.text, self.pos if pos is None else pos)

    def skip(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def expect(self, ch: str):
        if self.peek() != ch:
            got = repr(self.peek()) if self.peek() else "end of input"
            self.error(f"expected {ch!r}, found {got}")
        self.pos += 1

    def word(self) -> str:
        self.skip()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isalpha():
            self.pos += 1
        return self.text[start : self.pos]

    def integer(self, what: str = "integer") -> int:
        self.skip()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if start == self.pos:
            self.error(f"expected {what}")
        return int(self.text[start : self.pos])

    def digits_attached(self) -> int | None:
        """An integer written directly after a name, as in ``Z4``."""
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        return int(self.text[start : self.pos]) if self.pos > start else None

    def done(self):
        self.skip()
        if self.pos != len(self.text):
            self.error(f"unexpected trailing input {self.text[self.pos:]!r}")

    # ring := ...
    def ring(self) -> RingExpr:
        self.skip()
        start = self.pos
        name = self.word()
        if not name:
            self.error("expected a ring expression")
        up = name.upper()
        if up in ("Z", "F"):
            n = self.digits_attached()
            if n is None:
                self.error(f"{name} needs an order, as in {name}4", self.pos)
            if up == "Z":
                if n < 1:
                    self.error("Z needs an order >= 1", start)
                return ZMod(n, span=(start, self.pos))
            if n not in C.GF_ORDERS:
                self.error(f"no field of order {n} available (supported: {', '.join(map(str, C.GF_ORDERS))})", start)
            return GF(n, span=(start, self.pos))
        if up not in RING_CONSTRUCTORS:
            self.error(f"unknown ring constructor {name!r}", start)
        self.expect("(")
        if up in ("M", "T", "S"):
            k = self.integer("matrix size")
            if k < 1:
                self.error("matrix size must be >= 1", start)
            self.expect(",")
            base = self.ring()
            self.close(up, start)
            cls = {"M": Matrix, "T": Upper, "S": SN}[up]
            return cls(k, base, span=(start, self.pos))
        if up == "PROD":
            factors = [self.ring()]
            while self.peek() == ",":
                self.pos += 1
                factors.append(self.ring())
            self.close(up, start)
            return Prod(tuple(factors), span=(start, self.pos))
        if up == "TRIV":
            base = self.ring()
            k = 1
            if self.peek() == ",":
                self.pos += 1
                k = self.integer("module rank")
                if k < 1:
                    self.error("module rank must be >= 1", start)
            self.close(up, start)
            return Triv(base, k, span=(start, self.pos))
        if up == "DT":
            base = self.ring()
            self.close(up, start)
            return DT(base, span=(start, self.pos))
        if up == "GR":
            base = self.ring()
            self.expect(",")
            g = self.group()
            self.close(up, start)
            return GroupRing(base, g, span=(start, self.pos))
        if up == "TRUNC":
            base = self.ring()
            self.expect(",")
            n = self.integer("truncation degree")
            if n < 2:
                self.error("truncation degree must be >= 2", start)
            twist = "id"
            if self.peek() == ",":
                self.pos += 1
                tpos = self.pos
                twist = self.word().lower()
                if twist not in ("id", "frob"):
                    self.error("twist must be 'id' or 'frob'", tpos)
            self.close(up, start)
            return Trunc(base, n, twist, span=(start, self.pos))
        # K
        base = self.ring()
        self.expect(",")
        s = self.integer("element index")
        self.close(up, start)
        return KS(base, s, span=(start, self.pos))

    def close(self, name: str, start: int):
        if self.peek() == ",":
            self.error(f"too many arguments for {name}")
        if self.peek() != ")":
            self.expect(")")
        self.pos += 1

    def group(self) -> GroupExpr:
        self.skip()
        start = self.pos
        factors = [self.group_atom()]
        while self.peek() in ("x", "X", "×"):
            self.pos += 1
            factors.append(self.group_atom())
        if len(factors) == 1:
            return factors[0]
        return GroupProduct(tuple(factors), span=(start, self.pos))

    def group_atom(self) -> GroupExpr:
        self.skip()
        start = self.pos
        name = self.word().upper()
        n = self.digits_attached()
        if not name:
            self.error("expected a group (C<n>, D<n>, Q8 or S3)")
        if name in ("C", "D"):
            if n is None or n < 1:
                self.error(f"{name} needs an order >= 1", start)
            cls = Cyclic if name == "C" else Dihedral
            return cls(n, span=(start, self.pos))
        if name == "Q" and n == 8:
            return Quaternion8(span=(start, self.pos))
        if name == "S" and n == 3:
            return Symmetric3(span=(start, self.pos))
        self.error(f"unknown group {self.text[start:self.pos]!r}", start)


def parse_ring_expr(text: str) -> RingExpr:
    p = _Parser(text)
    e = p.ring()
    p.done()
    return e


def parse_group_expr(text: str) -> GroupExpr:
    p = _Parser(text)
    g = p.group()
    p.done()
    return g


def _as_expr(e) -> RingExpr:
    return parse_ring_expr(e) if isinstance(e, str) else e


def group_order(g: GroupExpr) -> int:
    if isinstance(g, Cyclic):
        return g.n
    if isinstance(g, Dihedral):
        return 2 * g.n
    if isinstance(g, Quaternion8):
        return 8
    if isinstance(g, Symmetric3):
        return 6
    return prod(group_order(f) for f in g.factors)


def expr_order(e) -> int:
    """Order of the ring an expression denotes, without building it."""
    e = _as_expr(e)
    if isinstance(e, ZMod):
        return e.n
    if isinstance(e, GF):
        return e.q
    if isinstance(e, Matrix):
        return expr_order(e.base) ** (e.k * e.k)
    if isinstance(e, Upper):
        return expr_order(e.base) ** (e.k * (e.k + 1) // 2)
    if isinstance(e, SN):
        return expr_order(e.base) ** (e.k * (e.k - 1) // 2 + 1)
    if isinstance(e, Prod):
        return prod(expr_order(f) for f in e.factors)
    if isinstance(e, Triv):
        return expr_order(e.base) ** (e.k + 1)
    if isinstance(e, (DT, KS)):
        return expr_order(e.base) ** 4
    if isinstance(e, GroupRing):
        return expr_order(e.base) ** group_order(e.group)
    if isinstance(e, Trunc):
        return expr_order(e.base) ** e.n
    raise TypeError(f"not a ring expression: {e!r}")


def evaluate_group(g: GroupExpr) -> FiniteGroup:
    if isinstance(g, Cyclic):
        return cyclic(g.n)
    if isinstance(g, Dihedral):
        return dihedral(g.n)
    if isinstance(g, Quaternion8):
        return quaternion8()
    if isinstance(g, Symmetric3):
        return symmetric3()
    return direct_product(*(evaluate_group(f) for f in g.factors))


_GF_PARAMS = {2: (2, 1), 3: (3, 1), 4: (2, 2), 5: (5, 1), 7: (7, 1), 8: (2, 3), 9: (3, 2)}


def evaluate(e, builder=None) -> FiniteRing:
    """Build the ring an expression denotes.

    The order cap is enforced before anything is built.  ``builder`` may be
    used to evaluate sub-expressions (for example through a cache).
    """
    e = _as_expr(e)
    n = expr_order(e)
    if n > get_max_order():
        raise SizeCapError(n, get_max_order(), str(e))
    sub = builder or evaluate
    if isinstance(e, ZMod):
        R = C.zmod(e.n)
    elif isinstance(e, GF):
        R = C.gf(*_GF_PARAMS[e.q])
    elif isinstance(e, Matrix):
        R = C.matrix_ring(e.k, sub(e.base))
    elif isinstance(e, Upper):
        R = C.upper_triangular(e.k, sub(e.base))
    elif isinstance(e, SN):
        R = C.sn_ring(e.k, sub(e.base))
    elif isinstance(e, Prod):
        R = C.product(*(sub(f) for f in e.factors))
    elif isinstance(e, Triv):
        R = C.trivial_extension(sub(e.base), e.k)
    elif isinstance(e, DT):
        R = C.dt_ring(sub(e.base))
    elif isinstance(e, GroupRing):
        R = C.group_ring(sub(e.base), evaluate_group(e.group))
    elif isinstance(e, Trunc):
        base = sub(e.base)
        alpha = C.frobenius(base) if e.twist == "frob" else None
        R = C.trunc_poly(base, e.n, alpha, label=str(e))
    elif isinstance(e, KS):
        base = sub(e.base)
        if not 0 <= e.s < base.order:
            raise ParseError(f"element index {e.s} out of range for {e.base}", str(e), 0)
        R = C.ks_ring(base, e.s)
    else:
        raise TypeError(f"not a ring expression: {e!r}")
    if R.label != str(e):
        # freshly built and not yet shared, so relabelling in place is safe
        object.__setattr__(R, "label", str(e))
    return R


def _digit_layout(e) -> tuple[list, list]:
    """(digit sub-expressions, digit orders) for tuple-shaped expressions."""
    if isinstance(e, Prod):
        return list(e.factors), [expr_order(f) for f in e.factors]
    base = e.base
    q = expr_order(base)
    if isinstance(e, Matrix):
        k = e.k * e.k
    elif isinstance(e, Upper):
        k = e.k * (e.k + 1) // 2
    elif isinstance(e, SN):
        k = e.k * (e.k - 1) // 2 + 1
    elif isinstance(e, Triv):
        k = e.k + 1
    elif isinstance(e, (DT, KS)):
        k = 4
    elif isinstance(e, GroupRing):
        k = group_order(e.group)
    elif isinstance(e, Trunc):
        k = e.n
    else:
        raise TypeError(e)
    return [base] * k, [q] * k


def decode_element(e, idx: int):
    """Readable structure of element ``idx``: ints for Z_n and F_q, nested lists otherwise.

    Matrices (including triangular ones) decode to lists of rows; products and
    tuple constructions decode to tuples of their components.
    """
    e = _as_expr(e)
    n = expr_order(e)
    if not 0 <= idx < n:
        raise ValueError(f"element index {idx} out of range for {e} (order {n})")
    if isinstance(e, (ZMod, GF)):
        return int(idx)
    subs, orders = _digit_layout(e)
    digs = [int(d) for d in positional_digits(idx, orders)]
    vals = [decode_element(s, d) for s, d in zip(subs, digs)]
    zero = decode_element(subs[0], 0) if subs else 0
    if isinstance(e, Matrix):
        return [vals[i * e.k : (i + 1) * e.k] for i in range(e.k)]
    if isinstance(e, Upper):
        pos = C.upper_positions(e.k)
        return _matrix(e.k, dict(zip(pos, vals)), zero)
    if isinstance(e, SN):
        pos = C.sn_positions(e.k)
        entries = dict(zip(pos[:-1], vals[:-1]))
        entries.update({(i, i): vals[-1] for i in range(e.k)})
        return _matrix(e.k, entries, zero)
    return tuple(vals)


def _matrix(k: int, entries: dict, zero):
    return [[entries.get((i, j), zero) for j in range(k)] for i in range(k)]


def format_element(e, idx: int) -> str:
    return _fmt(decode_element(e, idx))


def _fmt(v) -> str:
    if isinstance(v, list):
        return "[" + ",".join(_fmt(x) for x in v) + "]"
    if isinstance(v, tuple):
        return "(" + ",".join(_fmt(x) for x in v) + ")"
    return str(v)
