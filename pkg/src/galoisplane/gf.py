"""Exact arithmetic in finite fields GF(p^k).

Representation conventions:

- An element is a vector of k integer coefficients in [0, p), constant term
  first, reduced modulo a fixed monic irreducible modulus of degree k.
  Coefficient vectors, not multiplicative-generator logs: addition dominates
  in the linear algebra built on top of this module.
- The modulus is a vector of k+1 coefficients, constant term first, leading
  coefficient 1.  When none is supplied, the lexicographically smallest monic
  irreducible polynomial is selected by exhaustive enumeration, comparing
  coefficient tuples constant term first.  For k = 1 that is the polynomial x
  and arithmetic is plain arithmetic mod p.
- Every element has an integer code sum(coeffs[i] * p**i).  Enumeration is in
  code order, so 0 comes first and the prime subfield occupies codes 0..p-1.
- Field construction is capped (default 2**14): everything downstream works
  by exhaustive enumeration, so unbounded orders only produce silent hangs.

make_field interns specs: equal (p, k, modulus) always returns the identical
FieldSpec object.
"""

from __future__ import annotations

from itertools import product as _cartesian

from .errors import (
    BoundExceeded,
    DivisionByZero,
    InternalCheckFailed,
    NotIrreducible,
    NotPrime,
    SpecMismatch,
)

DEFAULT_MAX_ORDER = 2 ** 14

# Op tables are q*q ints apiece; past this order they cost more than they save.
_TABLE_MAX_ORDER = 512

_ARITH_KINDS = ("add", "sub", "mul", "neg")


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def _poly_rem(f: list[int], d: tuple[int, ...], p: int) -> list[int]:
    """Remainder of f modulo d over GF(p); d is monic so no leading inverse is needed."""
    r = list(f)
    deg_d = len(d) - 1
    for i in range(len(r) - 1, deg_d - 1, -1):
        c = r[i]
        if c:
            r[i] = 0
            for j in range(deg_d):
                r[i - deg_d + j] = (r[i - deg_d + j] - c * d[j]) % p
    return r[:deg_d]


def _is_irreducible(coeffs: tuple[int, ...], p: int) -> bool:
    """Exhaustive divisor check: no monic divisor of degree 1..k//2 divides coeffs."""
    k = len(coeffs) - 1
    if k < 1:
        return False
    f = list(coeffs)
    for deg in range(1, k // 2 + 1):
        for tail in _cartesian(range(p), repeat=deg):
            divisor = tail + (1,)
            if not any(_poly_rem(f, divisor, p)):
                return False
    return True


def _lex_least_irreducible(p: int, k: int) -> tuple[int, ...]:
    for tail in _cartesian(range(p), repeat=k):
        cand = tail + (1,)
        if _is_irreducible(cand, p):
            return cand
    raise InternalCheckFailed(f"no irreducible polynomial of degree {k} over GF({p})")


class FieldSpec:
    """Immutable description of GF(p^k): characteristic, degree, modulus.

    Equality and hashing are by (p, k, modulus).  Construct through
    make_field, which also interns specs so equal inputs share one object.
    """

    __slots__ = ("p", "k", "q", "modulus", "_elements", "_tables")

    def __init__(self, p: int, k: int, modulus: tuple[int, ...]):
        self.p = p
        self.k = k
        self.q = p ** k
        self.modulus = modulus
        self._elements = None
        self._tables = None

    def __eq__(self, other):
        if not isinstance(other, FieldSpec):
            return NotImplemented
        return (self.p, self.k, self.modulus) == (other.p, other.k, other.modulus)

    def __hash__(self):
        return hash((self.p, self.k, self.modulus))

    def __repr__(self):
        return f"FieldSpec({self.to_text()!r})"

    def to_text(self) -> str:
        """Textual form q=p^k:c0,...,ck; the modulus is omitted for prime fields."""
        if self.k == 1:
            return f"q={self.p}"
        mods = ",".join(str(c) for c in self.modulus)
        return f"q={self.p}^{self.k}:{mods}"

    def zero(self) -> FieldElement:
        return FieldElement(self, (0,) * self.k)

    def one(self) -> FieldElement:
        return FieldElement(self, (1,) + (0,) * (self.k - 1))

    def from_int(self, code: int) -> FieldElement:
        """Element with the given integer code in [0, q)."""
        if not 0 <= code < self.q:
            raise ValueError(f"element code {code} out of range for GF({self.q})")
        if self.k == 1:
            return FieldElement(self, (code,))
        digits = []
        n = code
        for _ in range(self.k):
            digits.append(n % self.p)
            n //= self.p
        return FieldElement(self, tuple(digits))

    def element(self, value) -> FieldElement:
        """Coerce an int code, a negative int (additive inverse of its magnitude),
        a coefficient sequence, or an element of this same spec."""
        if isinstance(value, FieldElement):
            if value.spec != self:
                raise SpecMismatch(f"element of {value.spec!r} used with {self!r}")
            return value
        if isinstance(value, int):
            if value < 0:
                # additive inverse of the element coded by the magnitude
                if -value >= self.q:
                    raise ValueError(f"element code {value} out of range for GF({self.q})")
                return -self.from_int(-value)
            return self.from_int(value)
        if isinstance(value, (list, tuple)):
            if len(value) != self.k:
                raise ValueError(f"expected {self.k} coefficients, got {len(value)}")
            return FieldElement(self, tuple(int(c) % self.p for c in value))
        raise TypeError(f"cannot coerce {value!r} to an element of GF({self.q})")

    def elements(self) -> tuple:
        """All q elements in code order (cached)."""
        if self._elements is None:
            self._elements = tuple(self.from_int(n) for n in range(self.q))
        return self._elements

    def op_tables(self):
        """Integer-code operation tables (add, mul, neg, inv) for small fields.

        inv[0] is -1 as a sentinel; callers in the geometry layer only index
        it with nonzero codes.
        """
        if self._tables is None:
            q = self.q
            if q > _TABLE_MAX_ORDER:
                raise BoundExceeded(
                    f"op tables supported only for q <= {_TABLE_MAX_ORDER}, got q={q}"
                )
            p = self.p
            if self.k == 1:
                add = [[(a + b) % p for b in range(p)] for a in range(p)]
                mul = [[(a * b) % p for b in range(p)] for a in range(p)]
                neg = [(-a) % p for a in range(p)]
                inv = [-1] + [pow(a, p - 2, p) for a in range(1, p)]
            else:
                elems = self.elements()
                add = [[(a + b).to_int() for b in elems] for a in elems]
                mul = [[(a * b).to_int() for b in elems] for a in elems]
                neg = [(-a).to_int() for a in elems]
                inv = [-1] + [elems[n].inv().to_int() for n in range(1, q)]
            self._tables = (add, mul, neg, inv)
        return self._tables


class FieldElement:
    """One element of GF(p^k): an immutable reduced coefficient vector."""

    __slots__ = ("spec", "coeffs")

    def __init__(self, spec: FieldSpec, coeffs: tuple[int, ...]):
        self.spec = spec
        self.coeffs = coeffs

    def _check(self, other) -> FieldElement:
        if not isinstance(other, FieldElement):
            raise TypeError(f"expected FieldElement, got {type(other).__name__}")
        if other.spec is not self.spec and other.spec != self.spec:
            raise SpecMismatch(f"mixed specs {self.spec!r} and {other.spec!r}")
        return other

    def __add__(self, other):
        other = self._check(other)
        p = self.spec.p
        return FieldElement(
            self.spec, tuple((a + b) % p for a, b in zip(self.coeffs, other.coeffs))
        )

    def __sub__(self, other):
        other = self._check(other)
        p = self.spec.p
        return FieldElement(
            self.spec, tuple((a - b) % p for a, b in zip(self.coeffs, other.coeffs))
        )

    def __neg__(self):
        p = self.spec.p
        return FieldElement(self.spec, tuple((-a) % p for a in self.coeffs))

    def __mul__(self, other):
        other = self._check(other)
        spec = self.spec
        p = spec.p
        k = spec.k
        if k == 1:
            return FieldElement(spec, ((self.coeffs[0] * other.coeffs[0]) % p,))
        prod = [0] * (2 * k - 1)
        for i, ai in enumerate(self.coeffs):
            if ai:
                row = other.coeffs
                for j in range(k):
                    bj = row[j]
                    if bj:
                        prod[i + j] = (prod[i + j] + ai * bj) % p
        m = spec.modulus
        for d in range(2 * k - 2, k - 1, -1):
            c = prod[d]
            if c:
                prod[d] = 0
                for j in range(k):
                    prod[d - k + j] = (prod[d - k + j] - c * m[j]) % p
        return FieldElement(spec, tuple(prod[:k]))

    def __truediv__(self, other):
        other = self._check(other)
        return self * other.inv()

    def __pow__(self, e: int):
        if e < 0:
            return self.inv() ** (-e)
        result = self.spec.one()
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def inv(self) -> FieldElement:
        """Multiplicative inverse, computed as self**(q-2)."""
        if self.is_zero():
            raise DivisionByZero(f"inverse of zero in GF({self.spec.q})")
        if self.spec.k == 1:
            p = self.spec.p
            return FieldElement(self.spec, (pow(self.coeffs[0], p - 2, p),))
        return self ** (self.spec.q - 2)

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __bool__(self):
        return any(self.coeffs)

    def to_int(self) -> int:
        """Integer code sum(coeffs[i] * p**i)."""
        code = 0
        for c in reversed(self.coeffs):
            code = code * self.spec.p + c
        return code

    def __eq__(self, other):
        if not isinstance(other, FieldElement):
            return NotImplemented
        return self.coeffs == other.coeffs and (
            other.spec is self.spec or other.spec == self.spec
        )

    def __hash__(self):
        return hash((self.spec.q, self.coeffs))

    def __repr__(self):
        return f"GF({self.spec.q}):{self.to_int()}"

    def __str__(self):
        return str(self.to_int())


_spec_cache: dict[tuple, FieldSpec] = {}


def make_field(p: int, k: int = 1, modulus=None, *, max_order: int = DEFAULT_MAX_ORDER) -> FieldSpec:
    """Construct (or fetch the interned) GF(p^k) spec.

    modulus, when given, is a sequence of k+1 coefficients, constant term
    first, and must be monic and irreducible.  Otherwise the lex-least monic
    irreducible polynomial of degree k is selected.
    """
    if not isinstance(p, int) or not isinstance(k, int):
        raise TypeError("p and k must be integers")
    if not _is_prime(p):
        raise NotPrime(f"{p} is not prime")
    if k < 1:
        raise ValueError("extension degree k must be >= 1")
    q = p ** k
    if q > max_order:
        raise BoundExceeded(f"field order {q} exceeds the cap {max_order}")
    if modulus is not None:
        mod = tuple(int(c) % p for c in modulus)
        if len(mod) != k + 1:
            raise NotIrreducible(
                f"modulus must have {k + 1} coefficients (degree {k}), got {len(mod)}"
            )
        if mod[-1] != 1:
            raise NotIrreducible("modulus must be monic")
        if not _is_irreducible(mod, p):
            raise NotIrreducible(f"modulus {list(mod)} is reducible over GF({p})")
    else:
        key0 = (p, k, None)
        cached = _spec_cache.get(key0)
        if cached is not None:
            return cached
        mod = _lex_least_irreducible(p, k)
    key = (p, k, mod)
    spec = _spec_cache.get(key)
    if spec is None:
        spec = FieldSpec(p, k, mod)
        _spec_cache[key] = spec
        if modulus is None:
            _spec_cache[(p, k, None)] = spec
    return spec


def arith(kind: str, a: FieldElement, b: FieldElement | None = None) -> FieldElement:
    """Dispatch add/sub/mul/neg; operands must share a spec."""
    if kind not in _ARITH_KINDS:
        raise ValueError(f"unknown arith kind {kind!r}; expected one of {_ARITH_KINDS}")
    if kind == "neg":
        if b is not None:
            raise ValueError("neg is unary")
        return -a
    if b is None:
        raise ValueError(f"{kind} needs two operands")
    if kind == "add":
        return a + b
    if kind == "sub":
        return a - b
    return a * b


def inv(a: FieldElement) -> FieldElement:
    return a.inv()


def enumerate_field(spec: FieldSpec) -> list[FieldElement]:
    """All q elements, deterministic code order, zero first."""
    return list(spec.elements())


def product_nonzero(spec: FieldSpec) -> FieldElement:
    """Product over all nonzero elements; self-checks that it equals -1."""
    acc = spec.one()
    for e in spec.elements()[1:]:
        acc = acc * e
    if acc != -spec.one():
        raise InternalCheckFailed(
            f"product of nonzero elements of GF({spec.q}) returned {acc!r}, expected -1"
        )
    return acc


def field_to_text(spec: FieldSpec) -> str:
    return spec.to_text()


def _prime_power(n: int):
    """(p, k) with p prime and p**k == n, or None."""
    if n < 2:
        return None
    p = n
    for d in range(2, n + 1):
        if d * d > n:
            break
        if n % d == 0:
            p = d
            break
    k = 0
    m = n
    while m % p == 0 and m > 1:
        m //= p
        k += 1
    if m != 1 or not _is_prime(p):
        return None
    return p, k


def parse_field(text: str, *, max_order: int = DEFAULT_MAX_ORDER) -> FieldSpec:
    """Parse 'q=7', 'q=9', 'q=3^2', or 'q=3^2:2,2,1' into a field spec."""
    s = text.strip()
    if not s.startswith("q="):
        raise ValueError(f"field text must start with 'q=': {text!r}")
    body = s[2:]
    modulus = None
    if ":" in body:
        body, modtext = body.split(":", 1)
        try:
            modulus = [int(c) for c in modtext.split(",")]
        except ValueError:
            raise ValueError(f"bad modulus coefficients in {text!r}") from None
    if "^" in body:
        base, _, exp = body.partition("^")
        try:
            p, k = int(base), int(exp)
        except ValueError:
            raise ValueError(f"bad p^k in {text!r}") from None
    else:
        try:
            n = int(body)
        except ValueError:
            raise ValueError(f"bad field order in {text!r}") from None
        pk = _prime_power(n)
        if pk is None:
            raise NotPrime(f"{n} is not a prime power")
        p, k = pk
    return make_field(p, k, modulus, max_order=max_order)
