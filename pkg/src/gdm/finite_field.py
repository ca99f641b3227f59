"""Arithmetic in GF(p^m) backed by exp/log tables.

Elements are stored as a power of the field generator (``alpha``) with a
distinguished zero.  Coefficient vectors over GF(p) are derived views: an
element's *code* packs its polynomial-basis coefficients as the base-p integer
``sum(c_i * p**i)``, which is also the index used by the numpy lookup tables.

Polynomials over GF(p) are tuples of ints, lowest degree first.  Only the
printed "associated vector" of an element is high-degree-first, e.g. the
element ``alpha + 1`` of GF(16) prints as ``(0,0,1,1)``.
"""
from __future__ import annotations

import math
import re
from dataclasses import dataclass
from functools import cached_property
from itertools import product
from typing import Iterable, Iterator, Sequence

import numpy as np

from .errors import (
    DivisionByZero,
    FieldMismatch,
    FieldTooLarge,
    NotIrreducible,
    NotPrime,
    NotPrimitive,
    OrderNotAvailable,
)

MAX_FIELD_SIZE = 1 << 16

# Exponents of the nonzero terms, highest first.
_CONDENSED_PRIMITIVE = {
    (2, 1): (1, 0),
    (2, 2): (2, 1, 0),
    (2, 3): (3, 1, 0),
    (2, 4): (4, 1, 0),
    (2, 5): (5, 2, 0),
    (2, 6): (6, 1, 0),
    (2, 7): (7, 1, 0),
    (2, 8): (8, 4, 3, 2, 0),
    (2, 9): (9, 4, 0),
    (2, 10): (10, 3, 0),
    (2, 11): (11, 2, 0),
    (2, 12): (12, 6, 4, 1, 0),
    (2, 13): (13, 4, 3, 1, 0),
    (2, 14): (14, 10, 6, 1, 0),
    (2, 15): (15, 1, 0),
    (2, 16): (16, 12, 3, 1, 0),
}


def _expand(exponents: Iterable[int]) -> tuple[int, ...]:
    exps = list(exponents)
    coeffs = [0] * (max(exps) + 1)
    for e in exps:
        coeffs[e] = 1
    return tuple(coeffs)


#: Default primitive polynomials, keyed by (p, m).  Users may pass their own.
PRIMITIVE_POLYS: dict[tuple[int, int], tuple[int, ...]] = {
    key: _expand(exps) for key, exps in _CONDENSED_PRIMITIVE.items()
}
PRIMITIVE_POLYS.update({
    (3, 1): (1, 1),        # x + 1, root 2
    (3, 2): (2, 1, 1),     # x^2 + x + 2
    (3, 3): (1, 2, 0, 1),  # x^3 + 2x + 1
    (5, 1): (3, 1),        # x + 3, root 2
    (5, 2): (2, 1, 1),     # x^2 + x + 2
    (7, 1): (4, 1),        # x + 4, root 3
    (7, 2): (3, 1, 1),     # x^2 + x + 3
})


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def prime_factors(n: int) -> list[int]:
    """Distinct prime factors of ``n`` in increasing order."""
    out = []
    f = 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1
    if n > 1:
        out.append(n)
    return out


# ---------------------------------------------------------------------------
# Polynomials over GF(p), lowest degree first
# ---------------------------------------------------------------------------

def poly_trim(a: Sequence[int]) -> tuple[int, ...]:
    a = list(a)
    while len(a) > 1 and a[-1] == 0:
        a.pop()
    return tuple(a)


def poly_mul(a: Sequence[int], b: Sequence[int], p: int) -> tuple[int, ...]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return poly_trim(out)


def poly_mod(a: Sequence[int], b: Sequence[int], p: int) -> tuple[int, ...]:
    """Remainder of ``a`` divided by ``b`` over GF(p)."""
    a = [x % p for x in a]
    b = poly_trim(b)
    db = len(b) - 1
    inv_lead = pow(b[-1], -1, p)
    for shift in range(len(a) - 1 - db, -1, -1):
        c = (a[shift + db] * inv_lead) % p
        if c:
            for j in range(db + 1):
                a[shift + j] = (a[shift + j] - c * b[j]) % p
    return poly_trim(a[:db] if db > 0 else [0])


def is_irreducible(poly: Sequence[int], p: int) -> bool:
    """Trial division by every monic polynomial of degree 1..deg/2."""
    poly = poly_trim(poly)
    deg = len(poly) - 1
    if deg < 1:
        return False
    for d in range(1, deg // 2 + 1):
        for low in product(range(p), repeat=d):
            divisor = low + (1,)
            if poly_mod(poly, divisor, p) == (0,):
                return False
    return True


def format_poly(coeffs: Sequence[int], var: str = "x") -> str:
    """Render ``(1, 1, 0, 0, 1)`` as ``x^4 + x + 1``."""
    terms = []
    for e in range(len(coeffs) - 1, -1, -1):
        c = coeffs[e]
        if not c:
            continue
        if e == 0:
            terms.append(str(c))
            continue
        mono = var if e == 1 else f"{var}^{e}"
        terms.append(mono if c == 1 else f"{c}{mono}")
    return " + ".join(terms) if terms else "0"


# ---------------------------------------------------------------------------
# Field construction
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class FieldParams:
    """Characteristic ``p``, degree ``m`` and the monic reduction polynomial.

    ``poly`` holds m + 1 coefficients, lowest degree first.
    """

    p: int
    m: int
    poly: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "poly", tuple(int(c) % self.p if self.p > 0 else int(c)
                                               for c in self.poly))

    @classmethod
    def default(cls, p: int, m: int) -> "FieldParams":
        """Catalog polynomial for (p, m), else the first primitive one found."""
        if not is_prime(p):
            raise NotPrime(f"p={p} is not prime")
        if (p, m) in PRIMITIVE_POLYS:
            return cls(p, m, PRIMITIVE_POLYS[(p, m)])
        for low in product(range(p), repeat=m):
            cand = tuple(reversed(low)) + (1,)
            if cand[0] and is_irreducible(cand, p) and _root_order(cand, p) == p**m - 1:
                return cls(p, m, cand)
        raise NotPrimitive(f"no primitive polynomial of degree {m} over GF({p})")

    @classmethod
    def from_bits(cls, bits: str, p: int = 2) -> "FieldParams":
        """Parse a high-degree-first digit string such as ``"10011"``."""
        bits = bits.strip()
        if not bits or not all(ch.isdigit() for ch in bits):
            raise ValueError(f"bad polynomial string {bits!r}")
        coeffs = tuple(int(ch) for ch in reversed(bits))
        coeffs = poly_trim(coeffs)
        return cls(p, len(coeffs) - 1, coeffs)

    def bits(self) -> str:
        return "".join(str(c) for c in reversed(self.poly))


def _times_x(digits: list[int], poly: Sequence[int], p: int) -> list[int]:
    """Multiply a residue (digit list, low first) by x modulo the monic poly."""
    m = len(digits)
    top = digits[-1]
    out = [0] + digits[:-1]
    if top:
        for i in range(m):
            out[i] = (out[i] - top * poly[i]) % p
    return out


def _encode(digits: Sequence[int], p: int) -> int:
    code = 0
    for d in reversed(digits):
        code = code * p + d
    return code


def _decode(code: int, p: int, m: int) -> list[int]:
    out = []
    for _ in range(m):
        code, d = divmod(code, p)
        out.append(d)
    return out


def _x_residue(poly: Sequence[int], p: int) -> list[int]:
    m = len(poly) - 1
    if m == 1:
        return [(-poly[0]) % p]
    return [0, 1] + [0] * (m - 2)


def _root_order(poly: Sequence[int], p: int) -> int:
    """Multiplicative order of x modulo an irreducible ``poly``."""
    m = len(poly) - 1
    one = [1] + [0] * (m - 1)
    x = _x_residue(poly, p)
    cur = list(x)
    k = 1
    while cur != one:
        cur = _times_x(cur, poly, p) if m > 1 else [(cur[0] * x[0]) % p]
        k += 1
    return k


class GaloisField:
    """GF(p^m) with full exp/log tables.

    With ``primitive=True`` (default) the reduction polynomial must be primitive
    and the generator ``alpha`` is its root.  With ``primitive=False`` any
    irreducible polynomial is accepted and ``alpha`` is the smallest-code
    primitive element.
    """

    def __init__(self, params: FieldParams, primitive: bool = True):
        p, m, poly = params.p, params.m, params.poly
        if not is_prime(p):
            raise NotPrime(f"p={p} is not prime")
        if m < 1 or len(poly) != m + 1:
            raise ValueError(f"reduction polynomial must have degree m={m}")
        if poly[-1] != 1:
            raise ValueError("reduction polynomial must be monic")
        q = p**m
        if q > MAX_FIELD_SIZE:
            raise FieldTooLarge(f"GF({p}^{m}) has {q} elements; limit is {MAX_FIELD_SIZE}")
        if not is_irreducible(poly, p):
            raise NotIrreducible(f"{format_poly(poly)} is reducible over GF({p})")

        self.params = params
        self.p, self.m, self.q = p, m, q
        self.n_units = q - 1

        exp = self._powers_of_root(poly, p, m)
        if len(exp) != q - 1:
            if primitive:
                raise NotPrimitive(
                    f"{format_poly(poly)} is irreducible but its root has order "
                    f"{len(exp)}, not {q - 1}")
            exp = self._powers_of_primitive(poly, p, m)
        log = [-1] * q
        for i, code in enumerate(exp):
            log[code] = i
        self._exp = exp
        self._log = log
        self.generator_code = exp[1] if q > 2 else 1

        # numpy views; exp is doubled so sums of two logs need no modulo
        self.exp_table = np.array(exp + exp, dtype=np.int64)
        self.log_table = np.array(log, dtype=np.int64)
        self.exp_table.flags.writeable = False
        self.log_table.flags.writeable = False

    @staticmethod
    def _powers_of_root(poly, p, m) -> list[int]:
        one = [1] + [0] * (m - 1)
        x = _x_residue(poly, p)
        out = [1]
        cur = list(x)
        while cur != one:
            out.append(_encode(cur, p))
            cur = _times_x(cur, poly, p) if m > 1 else [(cur[0] * x[0]) % p]
        return out

    @staticmethod
    def _powers_of_primitive(poly, p, m) -> list[int]:
        q = p**m
        one = tuple([1] + [0] * (m - 1))

        def mulmod(a, b):
            prod = poly_mul(a, b, p)
            r = list(poly_mod(prod, poly, p))
            return tuple(r + [0] * (m - len(r)))

        for code in range(2, q):
            g = tuple(_decode(code, p, m))
            out = [1]
            cur = g
            while cur != one:
                out.append(_encode(cur, p))
                cur = mulmod(cur, g)
            if len(out) == q - 1:
                return out
        raise NotPrimitive("no primitive element found")  # unreachable for a field

    # -- identity ---------------------------------------------------------
    def __eq__(self, other):
        if not isinstance(other, GaloisField):
            return NotImplemented
        return self.params == other.params and self.generator_code == other.generator_code

    def __hash__(self):
        return hash((self.params, self.generator_code))

    def __repr__(self):
        return f"GaloisField({self.p}^{self.m}, poly={format_poly(self.params.poly)})"

    # -- element constructors --------------------------------------------
    @property
    def zero(self) -> "FieldElement":
        return FieldElement(self, None)

    @property
    def one(self) -> "FieldElement":
        return FieldElement(self, 0)

    @property
    def alpha(self) -> "FieldElement":
        return FieldElement(self, 1 % self.n_units)

    def power(self, k: int) -> "FieldElement":
        """alpha**k."""
        return FieldElement(self, k % self.n_units)

    def from_code(self, code: int) -> "FieldElement":
        if not 0 <= code < self.q:
            raise ValueError(f"code {code} outside GF({self.q})")
        return FieldElement(self, None if code == 0 else self._log[code])

    def from_coeffs(self, coeffs: Sequence[int]) -> "FieldElement":
        """Element from polynomial-basis coefficients, lowest degree first."""
        if len(coeffs) > self.m:
            raise ValueError(f"expected at most {self.m} coefficients")
        return self.from_code(_encode([c % self.p for c in coeffs], self.p))

    def from_vector(self, vector: Sequence[int]) -> "FieldElement":
        """Element from a high-degree-first coefficient vector."""
        return self.from_coeffs(list(reversed(vector)))

    def coerce(self, x) -> "FieldElement":
        """Accept a FieldElement of this field or an int code."""
        if isinstance(x, FieldElement):
            _check_same(self, x.field)
            return x
        if isinstance(x, (int, np.integer)):
            return self.from_code(int(x))
        raise TypeError(f"cannot interpret {x!r} as an element of {self!r}")

    def elements(self) -> Iterator["FieldElement"]:
        """Zero, then alpha^0 .. alpha^(q-2)."""
        yield self.zero
        for i in range(self.n_units):
            yield FieldElement(self, i)

    # -- scalar code arithmetic -------------------------------------------
    def add_codes(self, a: int, b: int) -> int:
        if self.p == 2:
            return a ^ b
        p, out, scale = self.p, 0, 1
        while a or b:
            a, da = divmod(a, p)
            b, db = divmod(b, p)
            out += ((da + db) % p) * scale
            scale *= p
        return out

    def neg_code(self, a: int) -> int:
        if self.p == 2:
            return a
        p, out, scale = self.p, 0, 1
        while a:
            a, d = divmod(a, p)
            out += ((-d) % p) * scale
            scale *= p
        return out

    def mul_codes(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return self._exp[(self._log[a] + self._log[b]) % self.n_units]

    def log_of(self, code: int) -> int:
        if code == 0:
            raise DivisionByZero("zero has no logarithm")
        return self._log[code]

    def exp_of(self, k: int) -> int:
        return self._exp[k % self.n_units]

    # -- vectorised code arithmetic (numpy int arrays) -----------------------
    def add_arrays(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        if self.p == 2:
            return a ^ b
        out = np.zeros(np.broadcast(a, b).shape, dtype=np.int64)
        scale = 1
        for _ in range(self.m):
            out += ((a // scale + b // scale) % self.p) * scale
            scale *= self.p
        return out

    def mul_arrays(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        prod = self.exp_table[self.log_table[a] + self.log_table[b]]
        return np.where((a == 0) | (b == 0), 0, prod)

    def pow_arrays(self, a: np.ndarray, k: int) -> np.ndarray:
        """Elementwise a**k for k >= 0 (0**0 == 1)."""
        a = np.asarray(a, dtype=np.int64)
        if k == 0:
            return np.ones_like(a)
        idx = (self.log_table[a] * k) % self.n_units
        return np.where(a == 0, 0, self.exp_table[idx])

    # -- field-level operations --------------------------------------------
    def add(self, a: "FieldElement", b: "FieldElement") -> "FieldElement":
        return self.coerce(a) + self.coerce(b)

    def mul(self, a: "FieldElement", b: "FieldElement") -> "FieldElement":
        return self.coerce(a) * self.coerce(b)

    def inv(self, a: "FieldElement") -> "FieldElement":
        return self.coerce(a).inverse()

    def pow(self, a: "FieldElement", k: int) -> "FieldElement":
        return self.coerce(a) ** k

    def element_of_order(self, n: int) -> "FieldElement":
        return find_element_of_order(self, n)

    def subfield_contains(self, a: "FieldElement", degree: int) -> bool:
        """True iff ``a`` lies in the subfield GF(p^degree)."""
        return a ** (self.p**degree) == a

    @cached_property
    def table(self) -> list[dict]:
        """Rows of the field table: power index, vector, order, minimal polynomial."""
        rows = []
        for e in self.elements():
            rows.append({
                "i": e.log,
                "element": e,
                "vector": e.vector,
                "order": None if e.is_zero else element_order(e),
                "minimal_poly": minimal_polynomial(e),
            })
        return rows


def _check_same(f: GaloisField, g: GaloisField) -> None:
    if f is not g and f != g:
        raise FieldMismatch(f"elements belong to different fields: {f!r} vs {g!r}")


class FieldElement:
    """An element of GF(p^m): zero, or alpha**log."""

    __slots__ = ("field", "log")

    def __init__(self, field: GaloisField, log: int | None):
        self.field = field
        self.log = log

    @property
    def is_zero(self) -> bool:
        return self.log is None

    @property
    def code(self) -> int:
        return 0 if self.log is None else self.field._exp[self.log]

    @property
    def coeffs(self) -> tuple[int, ...]:
        """Polynomial-basis coefficients, lowest degree first."""
        return tuple(_decode(self.code, self.field.p, self.field.m))

    @property
    def vector(self) -> tuple[int, ...]:
        """Coefficients highest degree first, as printed in field tables."""
        return tuple(reversed(self.coeffs))

    def in_base_field(self) -> bool:
        return self.code < self.field.p

    def __add__(self, other):
        if not isinstance(other, FieldElement):
            return NotImplemented
        _check_same(self.field, other.field)
        return self.field.from_code(self.field.add_codes(self.code, other.code))

    def __neg__(self):
        return self.field.from_code(self.field.neg_code(self.code))

    def __sub__(self, other):
        if not isinstance(other, FieldElement):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, FieldElement):
            return NotImplemented
        _check_same(self.field, other.field)
        if self.log is None or other.log is None:
            return FieldElement(self.field, None)
        return FieldElement(self.field, (self.log + other.log) % self.field.n_units)

    def inverse(self) -> "FieldElement":
        if self.log is None:
            raise DivisionByZero("zero has no multiplicative inverse")
        return FieldElement(self.field, (-self.log) % self.field.n_units)

    def __truediv__(self, other):
        if not isinstance(other, FieldElement):
            return NotImplemented
        return self * other.inverse()

    def __pow__(self, k: int):
        if self.log is None:
            if k < 0:
                raise DivisionByZero("zero raised to a negative power")
            return FieldElement(self.field, 0 if k == 0 else None)
        return FieldElement(self.field, (self.log * k) % self.field.n_units)

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.log == other.log and (self.field is other.field or self.field == other.field)
        return NotImplemented

    def __hash__(self):
        return hash((self.field.q, self.log))

    def __str__(self):
        return format_element(self)

    def __repr__(self):
        return f"<GF({self.field.q}) {format_element(self)}>"


# ---------------------------------------------------------------------------
# Module-level operations
# ---------------------------------------------------------------------------

def construct_field(params: FieldParams | None = None, *, p: int = 2, m: int = 4,
                    primitive: bool = True) -> GaloisField:
    """Build GF(p^m); without ``params`` the catalog polynomial for (p, m) is used."""
    if params is None:
        params = FieldParams.default(p, m)
    return GaloisField(params, primitive=primitive)


def element_order(a: FieldElement) -> int:
    if a.is_zero:
        raise DivisionByZero("zero has no multiplicative order")
    n = a.field.n_units
    return n // math.gcd(a.log, n)


def find_element_of_order(field: GaloisField, n: int) -> FieldElement:
    """alpha**((q-1)/n), an element of multiplicative order exactly n."""
    if n < 1 or field.n_units % n:
        raise OrderNotAvailable(f"N={n} does not divide {field.n_units}")
    return field.power(field.n_units // n)


def conjugates(a: FieldElement) -> list[FieldElement]:
    """a, a^p, a^(p^2), ... up to the first repeat."""
    out = [a]
    cur = a ** a.field.p
    while cur != a:
        out.append(cur)
        cur = cur ** a.field.p
    return out


def minimal_polynomial(a: FieldElement) -> tuple[int, ...]:
    """Monic minimal polynomial of ``a`` over GF(p), lowest degree first."""
    field = a.field
    poly = [1]  # codes, lowest degree first
    for c in conjugates(a):
        neg = field.neg_code(c.code)
        nxt = [0] * (len(poly) + 1)
        for i, coef in enumerate(poly):
            nxt[i + 1] = field.add_codes(nxt[i + 1], coef)
            nxt[i] = field.add_codes(nxt[i], field.mul_codes(coef, neg))
        poly = nxt
    if any(c >= field.p for c in poly):
        raise ArithmeticError("minimal polynomial left the base field")  # table corruption
    return tuple(poly)


# ---------------------------------------------------------------------------
# Power-index text notation: "0", "1", "a^k"
# ---------------------------------------------------------------------------

_POWER_RE = re.compile(r"^(?:a|α)(?:\^(-?\d+))?$")


def format_element(e: FieldElement) -> str:
    if e.log is None:
        return "0"
    if e.log == 0:
        return "1"
    return f"a^{e.log}"


def parse_element(text: str, field: GaloisField) -> FieldElement:
    s = text.strip().replace(" ", "")
    if s == "0":
        return field.zero
    if s == "1":
        return field.one
    match = _POWER_RE.match(s)
    if not match:
        raise ValueError(f"cannot parse field element {text!r}")
    k = int(match.group(1)) if match.group(1) is not None else 1
    return field.power(k)


def format_vector(values: Iterable[FieldElement]) -> str:
    return ",".join(format_element(v) for v in values)


def parse_vector(text: str, field: GaloisField) -> list[FieldElement]:
    text = text.strip()
    if not text:
        return []
    return [parse_element(tok, field) for tok in text.split(",")]
