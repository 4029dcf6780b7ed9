"""Exact arithmetic in F_p, F_q = F_{p^s} and extensions F_{q^m}.

Field elements are stored as integer codes.  An element of an extension of
degree ``d`` over a field with ``r`` elements has code ``sum(c_i * r**i)``
where ``c_i`` are the codes of its coordinates in the power basis of the
modulus.  With this encoding a subfield element keeps its code in every
extension above it, so the embeddings F_p < F_q < F_{q^m} are the identity
on codes.

Fields of moderate size use Zech logarithm tables; larger fields fall back
to polynomial arithmetic over the next-lower level.
"""

from __future__ import annotations

import random
from functools import lru_cache

MAX_Q = 64
MAX_EXTENSION_DEGREE = 12
TABLE_LIMIT = 1 << 16


class FieldError(ValueError):
    pass


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    k = 3
    while k * k <= n:
        if n % k == 0:
            return False
        k += 2
    return True


def prime_factors(n: int) -> list[int]:
    out = []
    k = 2
    while k * k <= n:
        if n % k == 0:
            out.append(k)
            while n % k == 0:
                n //= k
        k += 1
    if n > 1:
        out.append(n)
    return out


# ---------------------------------------------------------------------------
# dense univariate polynomials over a field, as lists of codes (low -> high)


def ptrim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def padd(F, a, b):
    n = max(len(a), len(b))
    out = [F.add(a[i] if i < len(a) else 0, b[i] if i < len(b) else 0) for i in range(n)]
    return ptrim(out)


def psub(F, a, b):
    n = max(len(a), len(b))
    out = [F.sub(a[i] if i < len(a) else 0, b[i] if i < len(b) else 0) for i in range(n)]
    return ptrim(out)


def pmul(F, a, b):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    add, mul = F.add, F.mul
    for i, x in enumerate(a):
        if x == 0:
            continue
        for j, y in enumerate(b):
            if y:
                out[i + j] = add(out[i + j], mul(x, y))
    return ptrim(out)


def pdivmod(F, a, b):
    b = ptrim(list(b))
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    r = ptrim(list(a))
    db = len(b) - 1
    inv_lead = F.inv(b[-1])
    if len(r) - 1 < db:
        return [], r
    qt = [0] * (len(r) - db)
    for k in range(len(r) - 1, db - 1, -1):
        c = r[k]
        if c == 0:
            continue
        c = F.mul(c, inv_lead)
        qt[k - db] = c
        for j in range(db + 1):
            if b[j]:
                r[k - db + j] = F.sub(r[k - db + j], F.mul(c, b[j]))
    return ptrim(qt), ptrim(r[:db])


def pmod(F, a, b):
    return pdivmod(F, a, b)[1]


def pmonic(F, a):
    if not a:
        return a
    inv = F.inv(a[-1])
    return [F.mul(c, inv) for c in a]


def pgcd(F, a, b):
    a, b = ptrim(list(a)), ptrim(list(b))
    while b:
        a, b = b, pmod(F, a, b)
    return pmonic(F, a)


def ppowmod(F, a, e, m):
    result = [1]
    base = pmod(F, a, m)
    while e:
        if e & 1:
            result = pmod(F, pmul(F, result, base), m)
        e >>= 1
        if e:
            base = pmod(F, pmul(F, base, base), m)
    return result


def peval(F, a, x):
    acc = 0
    for c in reversed(a):
        acc = F.add(F.mul(acc, x), c)
    return acc


def pderiv(F, a):
    return ptrim([F.mul_int(a[i], i) for i in range(1, len(a))])


def is_irreducible(F, g) -> bool:
    """Rabin's test: x^{r^d} = x mod g and gcd(x^{r^{d/l}} - x, g) = 1 for primes l | d."""
    g = ptrim(list(g))
    d = len(g) - 1
    if d < 1:
        return False
    if d == 1:
        return True
    r = F.order
    x = [0, 1]

    def frob_power(k):
        h = x
        for _ in range(k):
            h = ppowmod(F, h, r, g)
        return h

    if psub(F, frob_power(d), x) != []:
        return False
    for ell in prime_factors(d):
        h = psub(F, frob_power(d // ell), x)
        if len(pgcd(F, h, g)) != 1:
            return False
    return True


def find_irreducible(F, d: int, seed: int = 0) -> tuple[int, ...]:
    """Monic irreducible polynomial of degree ``d`` over ``F``, deterministic in (F, d, seed)."""
    if d < 1:
        raise FieldError("degree must be positive")
    rng = random.Random(f"irreducible:{F.label}:{d}:{seed}")
    if d == 1:
        return (F.neg(rng.randrange(F.order)), 1)
    while True:
        cand = [rng.randrange(F.order) for _ in range(d)] + [1]
        if cand[0] == 0:
            continue
        if is_irreducible(F, cand):
            return tuple(cand)


# ---------------------------------------------------------------------------
# fields


class _FieldBase:
    p: int
    order: int
    degree: int
    base: "_FieldBase | None"

    zero = 0
    one = 1

    def __call__(self, value: int) -> "FqElem":
        return FqElem(self, value)

    def elements(self):
        return range(self.order)

    def mul_int(self, a: int, n: int) -> int:
        n %= self.p
        if n == 0 or a == 0:
            return 0
        acc = 0
        for _ in range(n):
            acc = self.add(acc, a)
        return acc

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def contains_code(self, v: int) -> bool:
        return 0 <= v < self.order

    def __repr__(self):
        return f"GF({self.label})"


class PrimeField(_FieldBase):
    def __init__(self, p: int):
        if not is_prime(p):
            raise FieldError(f"{p} is not prime")
        self.p = p
        self.order = p
        self.degree = 1
        self.base = None
        self.modulus = (0, 1)
        self.label = str(p)

    def add(self, a, b):
        s = a + b
        return s - self.p if s >= self.p else s

    def sub(self, a, b):
        s = a - b
        return s + self.p if s < 0 else s

    def neg(self, a):
        return (self.p - a) % self.p

    def mul(self, a, b):
        return a * b % self.p

    def mul_int(self, a, n):
        return a * n % self.p

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(a, self.p - 2, self.p)

    def pow(self, a, e):
        if e < 0:
            return pow(self.inv(a), -e, self.p)
        return pow(a, e, self.p)

    def coords(self, v):
        return (v,)

    def from_coords(self, c):
        return c[0] % self.p

    def prime_coords(self, v):
        return (v,)


class ExtensionField(_FieldBase):
    """F_{r^d} = base[x]/(modulus) with coordinates over ``base``."""

    def __init__(self, base: _FieldBase, modulus, check: bool = True):
        modulus = tuple(modulus)
        if modulus[-1] != 1:
            raise FieldError("modulus must be monic")
        if check and not is_irreducible(base, list(modulus)):
            raise FieldError(f"modulus {modulus} is reducible over {base!r}")
        self.base = base
        self.p = base.p
        self.modulus = modulus
        self.degree = len(modulus) - 1
        self.order = base.order ** self.degree
        self.label = f"{base.label}^{self.degree}"
        self._tabled = self.order <= TABLE_LIMIT
        if self._tabled:
            self._build_tables()

    # -- coordinate conversion
    def coords(self, v: int) -> tuple[int, ...]:
        r = self.base.order
        out = []
        for _ in range(self.degree):
            v, c = divmod(v, r)
            out.append(c)
        return tuple(out)

    def from_coords(self, c) -> int:
        r = self.base.order
        v = 0
        for x in reversed(list(c)[: self.degree]):
            v = v * r + x
        return v

    def prime_coords(self, v: int) -> tuple[int, ...]:
        out = []
        for c in self.coords(v):
            out.extend(self.base.prime_coords(c))
        return tuple(out)

    # -- slow path, polynomial arithmetic over the base
    def _slow_add(self, a, b):
        B = self.base
        ca, cb = self.coords(a), self.coords(b)
        return self.from_coords([B.add(x, y) for x, y in zip(ca, cb)])

    def _slow_neg(self, a):
        B = self.base
        return self.from_coords([B.neg(x) for x in self.coords(a)])

    def _slow_mul(self, a, b):
        if a == 0 or b == 0:
            return 0
        B = self.base
        prod = pmod(B, pmul(B, ptrim(list(self.coords(a))), ptrim(list(self.coords(b)))), list(self.modulus))
        return self.from_coords(prod + [0] * (self.degree - len(prod)))

    def _slow_pow(self, a, e):
        result, base = 1, a
        while e:
            if e & 1:
                result = self._slow_mul(result, base)
            e >>= 1
            if e:
                base = self._slow_mul(base, base)
        return result

    def _build_tables(self):
        n = self.order - 1
        factors = prime_factors(n) if n > 1 else []
        g = 1 if n == 1 else None
        if g is None:
            for cand in range(2, self.order):
                if all(self._slow_pow(cand, n // ell) != 1 for ell in factors):
                    g = cand
                    break
        exp = [0] * n
        log = [0] * self.order
        x = 1
        for k in range(n):
            exp[k] = x
            log[x] = k
            x = self._slow_mul(x, g)
        self.generator = g
        self._exp = exp
        self._log = log
        self._neg = [self._slow_neg(v) for v in range(self.order)]
        # zech[k] = log(1 + g^k), or -1 when 1 + g^k = 0
        zech = [0] * n
        for k in range(n):
            s = self._slow_add(1, exp[k])
            zech[k] = -1 if s == 0 else log[s]
        self._zech = zech

    # -- public arithmetic on codes
    def add(self, a, b):
        if not self._tabled:
            return self._slow_add(a, b)
        if a == 0:
            return b
        if b == 0:
            return a
        n = self.order - 1
        la = self._log[a]
        z = self._zech[(self._log[b] - la) % n]
        if z < 0:
            return 0
        return self._exp[(la + z) % n]

    def neg(self, a):
        return self._neg[a] if self._tabled else self._slow_neg(a)

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        if not self._tabled:
            return self._slow_mul(a, b)
        if a == 0 or b == 0:
            return 0
        return self._exp[(self._log[a] + self._log[b]) % (self.order - 1)]

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        if not self._tabled:
            return self._slow_pow(a, self.order - 2)
        return self._exp[(-self._log[a]) % (self.order - 1)]

    def pow(self, a, e):
        if e < 0:
            a, e = self.inv(a), -e
        if a == 0:
            return 1 if e == 0 else 0
        if not self._tabled:
            return self._slow_pow(a, e)
        return self._exp[(self._log[a] * e) % (self.order - 1)]

    def mul_int(self, a, n):
        n %= self.p
        if n == 0 or a == 0:
            return 0
        return self.mul(a, n)  # n < p is the code of n*1


class FqElem:
    """An element of one field level of a tower, with operator overloading."""

    __slots__ = ("field", "value")

    def __init__(self, field, value: int):
        if not 0 <= value < field.order:
            raise FieldError(f"code {value} out of range for {field!r}")
        self.field = field
        self.value = value

    def _coerce(self, other):
        if isinstance(other, FqElem):
            if other.field is not self.field:
                if other.field.order < self.field.order and other.field.p == self.field.p:
                    return other.value  # subfield codes embed unchanged
                raise FieldError("field level mismatch")
            return other.value
        if isinstance(other, int):
            return other % self.field.p
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else FqElem(self.field, self.field.add(self.value, o))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else FqElem(self.field, self.field.sub(self.value, o))

    def __rsub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else FqElem(self.field, self.field.sub(o, self.value))

    def __mul__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else FqElem(self.field, self.field.mul(self.value, o))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else FqElem(self.field, self.field.div(self.value, o))

    def __neg__(self):
        return FqElem(self.field, self.field.neg(self.value))

    def __pow__(self, e: int):
        return FqElem(self.field, self.field.pow(self.value, e))

    def inverse(self):
        return FqElem(self.field, self.field.inv(self.value))

    def __eq__(self, other):
        if isinstance(other, FqElem):
            return self.field.p == other.field.p and self.value == other.value
        if isinstance(other, int):
            return self.value == other % self.field.p and self.value < self.field.p
        return NotImplemented

    def __hash__(self):
        return hash((self.field.p, self.value))

    def __bool__(self):
        return self.value != 0

    def __repr__(self):
        return f"FqElem({self.field.label}, {self.value})"

    @property
    def coeffs(self):
        return self.field.coords(self.value)


# ---------------------------------------------------------------------------
# towers


@lru_cache(maxsize=None)
def prime_field(p: int) -> PrimeField:
    return PrimeField(p)


@lru_cache(maxsize=None)
def base_field(p: int, s: int, seed: int = 0):
    """F_q = F_{p^s}; the prime field itself when s = 1."""
    Fp = prime_field(p)
    if s == 1:
        return Fp
    return ExtensionField(Fp, find_irreducible(Fp, s, seed), check=False)


@lru_cache(maxsize=None)
def extension_field(p: int, s: int, m: int, seed: int = 0):
    """F_{q^m} with coordinates over F_q; F_q itself when m = 1."""
    B = base_field(p, s, seed)
    if m == 1:
        return B
    if not 1 <= m <= MAX_EXTENSION_DEGREE:
        raise FieldError(f"extension degree {m} outside 1..{MAX_EXTENSION_DEGREE}")
    return ExtensionField(B, find_irreducible(B, m, seed), check=False)


class FieldTower:
    """F_p < F_q < F_{q^m} for the registered extension degrees ``m``.

    Immutable; ``with_extension`` returns a new tower.  Field levels are
    shared between towers with the same (p, s, seed).
    """

    def __init__(self, p: int, s: int = 1, seed: int = 0, degrees=(1,)):
        if not is_prime(p):
            raise FieldError(f"{p} is not prime")
        if s < 1:
            raise FieldError("s must be positive")
        q = p**s
        if q > MAX_Q:
            raise FieldError(f"q = {q} exceeds the configured bound {MAX_Q}")
        self.p, self.s, self.q, self.seed = p, s, q, seed
        self.prime = prime_field(p)
        self.base = base_field(p, s, seed)
        self.base_modulus = self.base.modulus if s > 1 else (0, 1)
        self._levels = {m: extension_field(p, s, m, seed) for m in {1, *degrees}}

    @property
    def degrees(self):
        return tuple(sorted(self._levels))

    @property
    def extensions(self):
        return {m: F.modulus for m, F in self._levels.items() if m > 1}

    def with_extension(self, m: int) -> "FieldTower":
        if m in self._levels:
            return self
        return FieldTower(self.p, self.s, self.seed, degrees=(*self._levels, m))

    def field(self, m: int = 1):
        try:
            return self._levels[m]
        except KeyError:
            raise FieldError(f"extension degree {m} is not registered") from None

    def level_of(self, F) -> int:
        for m, G in self._levels.items():
            if G is F:
                return m
        raise FieldError(f"{F!r} is not a registered level of this tower")

    @property
    def group_generators(self) -> list[int]:
        """An F_p-basis of F_q (codes), used as generators of G = (F_q, +)."""
        return [self.p**k for k in range(self.s)]

    def frobenius(self, F, a: int) -> int:
        return F.pow(a, self.q)

    def __eq__(self, other):
        return isinstance(other, FieldTower) and (self.p, self.s, self.seed) == (other.p, other.s, other.seed)

    def __hash__(self):
        return hash((self.p, self.s, self.seed))

    def __repr__(self):
        return f"FieldTower(p={self.p}, s={self.s}, degrees={self.degrees})"


def trace_to_base(tower: FieldTower, F, x: int) -> int:
    """Sum of x^{q^i}, i < m, for x in F_{q^m}; the result lies in F_q."""
    m = tower.level_of(F)
    acc, y = 0, x
    for _ in range(m):
        acc = F.add(acc, y)
        y = F.pow(y, tower.q)
    return acc


def artin_schreier_matrix(tower: FieldTower, F):
    """Matrix over F_q of the F_q-linear map x -> x^q - x on F_{q^m} (columns = images of basis)."""
    m = tower.level_of(F)
    cols = []
    for j in range(m):
        e = F.from_coords([1 if i == j else 0 for i in range(m)]) if m > 1 else 1
        cols.append(F.coords(F.sub(F.pow(e, tower.q), e)) if m > 1 else (F.sub(F.pow(e, tower.q), e),))
    return [[cols[j][i] for j in range(m)] for i in range(m)]


def solve_artin_schreier(tower: FieldTower, F, c: int) -> list[int]:
    """All x in F_{q^m} with x^q - x = c, sorted by code (q of them, or none)."""
    from .linalg import nullspace, solve

    m = tower.level_of(F)
    B = tower.base
    A = artin_schreier_matrix(tower, F)
    rhs = list(F.coords(c)) if m > 1 else [c]
    x0 = solve(B, A, rhs)
    if x0 is None:
        return []
    kernel = nullspace(B, A)
    if len(kernel) != 1:
        raise FieldError("x^q - x should have a one-dimensional kernel over F_q")
    k = kernel[0]
    out = []
    for lam in range(B.order):
        coords = [B.add(x0[i], B.mul(lam, k[i])) for i in range(m)]
        out.append(F.from_coords(coords) if m > 1 else coords[0])
    return sorted(out)
