"""Sparse multivariate polynomials and truncated power series over a finite field.

Coefficients are integer codes of a field from :mod:`wildquot.gf`.
"""

from __future__ import annotations

from itertools import product

MAX_EXPONENT = 1 << 15


class MPoly:
    __slots__ = ("field", "nvars", "terms")

    def __init__(self, field, nvars: int, terms=None):
        self.field = field
        self.nvars = nvars
        clean = {}
        for e, c in (terms or {}).items():
            e = tuple(e)
            if len(e) != nvars:
                raise ValueError(f"exponent {e} has wrong length for {nvars} variables")
            if any(x < 0 or x > MAX_EXPONENT for x in e):
                raise OverflowError(f"exponent {e} out of range")
            if c:
                clean[e] = c
        self.terms = clean

    @classmethod
    def constant(cls, field, nvars, c=1):
        return cls(field, nvars, {(0,) * nvars: c})

    @classmethod
    def var(cls, field, nvars, i, power=1):
        e = [0] * nvars
        e[i] = power
        return cls(field, nvars, {tuple(e): 1})

    @classmethod
    def univariate(cls, field, coeffs):
        """From a coefficient list c0, c1, ... in one variable."""
        return cls(field, 1, {(i,): c for i, c in enumerate(coeffs) if c})

    def _like(self, terms):
        return MPoly(self.field, self.nvars, terms)

    def _check(self, other):
        if not isinstance(other, MPoly):
            return NotImplemented
        if other.field is not self.field or other.nvars != self.nvars:
            raise ValueError("incompatible polynomials")
        return other

    def __add__(self, other):
        if isinstance(other, int):
            other = MPoly.constant(self.field, self.nvars, self.field.mul_int(1, other))
        if self._check(other) is NotImplemented:
            return NotImplemented
        out = dict(self.terms)
        F = self.field
        for e, c in other.terms.items():
            v = F.add(out.get(e, 0), c)
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return self._like(out)

    __radd__ = __add__

    def __neg__(self):
        F = self.field
        return self._like({e: F.neg(c) for e, c in self.terms.items()})

    def __sub__(self, other):
        if isinstance(other, int):
            return self + (-other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        F = self.field
        if isinstance(other, int):
            return self._like({e: F.mul_int(c, other) for e, c in self.terms.items()})
        if self._check(other) is NotImplemented:
            return NotImplemented
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                v = F.add(out.get(e, 0), F.mul(c1, c2))
                if v:
                    out[e] = v
                else:
                    out.pop(e, None)
        return self._like(out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power")
        result = MPoly.constant(self.field, self.nvars)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __eq__(self, other):
        if not isinstance(other, MPoly):
            return NotImplemented
        return self.field is other.field and self.nvars == other.nvars and self.terms == other.terms

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for e in sorted(self.terms, reverse=True):
            mono = "*".join(f"x{i}^{k}" if k > 1 else f"x{i}" for i, k in enumerate(e) if k)
            parts.append(f"{self.terms[e]}" + (f"*{mono}" if mono else ""))
        return " + ".join(parts)

    def scale(self, c: int):
        F = self.field
        return self._like({e: F.mul(c, v) for e, v in self.terms.items()})

    def over(self, field) -> "MPoly":
        """The same polynomial read in an extension field (subfield codes embed unchanged)."""
        if field.p != self.field.p or field.order % self.field.order:
            raise ValueError("target is not an extension of the coefficient field")
        return MPoly(field, self.nvars, self.terms)

    def coefficient(self, exponent) -> int:
        return self.terms.get(tuple(exponent), 0)

    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def degree(self, var: int) -> int:
        return max((e[var] for e in self.terms), default=-1)

    def is_homogeneous(self) -> bool:
        return len({sum(e) for e in self.terms}) <= 1

    def partial_derivative(self, var: int) -> "MPoly":
        if not 0 <= var < self.nvars:
            raise IndexError("variable index out of range")
        F = self.field
        out = {}
        for e, c in self.terms.items():
            k = e[var]
            if k % F.p == 0:
                continue
            e2 = list(e)
            e2[var] -= 1
            out[tuple(e2)] = F.mul_int(c, k)
        return self._like(out)

    def evaluate(self, point) -> int:
        F = self.field
        if len(point) != self.nvars:
            raise ValueError("point has wrong dimension")
        acc = 0
        cache = {}
        for e, c in self.terms.items():
            v = c
            for i, k in enumerate(e):
                if k:
                    key = (i, k)
                    if key not in cache:
                        cache[key] = F.pow(point[i], k)
                    v = F.mul(v, cache[key])
                    if v == 0:
                        break
            acc = F.add(acc, v)
        return acc

    def compose(self, images) -> "MPoly":
        """Substitute polynomials for the variables (all images share a ring)."""
        if len(images) != self.nvars:
            raise ValueError("need one image per variable")
        target = images[0]
        result = MPoly(target.field, target.nvars)
        powers = {}
        for e, c in self.terms.items():
            term = MPoly.constant(target.field, target.nvars, c)
            for i, k in enumerate(e):
                if k:
                    if (i, k) not in powers:
                        powers[(i, k)] = images[i] ** k
                    term = term * powers[(i, k)]
            result = result + term
        return result

    def restrict(self, var: int, value: int = 0) -> "MPoly":
        """Set one variable to a constant, keeping the variable count."""
        F = self.field
        out = {}
        for e, c in self.terms.items():
            k = e[var]
            v = c if k == 0 else (F.mul(c, F.pow(value, k)) if value else 0)
            if v:
                e2 = list(e)
                e2[var] = 0
                e2 = tuple(e2)
                out[e2] = F.add(out.get(e2, 0), v)
        return self._like(out)

    def divide_by_variable(self, var: int) -> "MPoly":
        """Exact division by the variable; raises if some term is not divisible."""
        out = {}
        for e, c in self.terms.items():
            if e[var] == 0:
                raise ValueError(f"not divisible by variable {var}")
            e2 = list(e)
            e2[var] -= 1
            out[tuple(e2)] = c
        return self._like(out)

    def univariate_coeffs(self, var: int) -> list[int]:
        """Dense coefficients when only ``var`` occurs."""
        deg = self.degree(var)
        out = [0] * (deg + 1)
        for e, c in self.terms.items():
            if any(k for i, k in enumerate(e) if i != var):
                raise ValueError("polynomial involves other variables")
            out[e[var]] = c
        return out


def homogeneous_monomials(nvars: int, degree: int) -> list[tuple[int, ...]]:
    """All exponent vectors of the given total degree, in decreasing lexicographic order."""
    out = [e for e in product(range(degree + 1), repeat=nvars) if sum(e) == degree]
    out.sort(reverse=True)
    return out


class TruncSeries:
    """c_0 + c_1 u + ... + c_{N-1} u^{N-1} modulo u^N."""

    __slots__ = ("field", "N", "coeffs")

    def __init__(self, field, N: int, coeffs=()):
        if N < 1:
            raise ValueError("truncation order must be positive")
        c = list(coeffs)[:N]
        self.field = field
        self.N = N
        self.coeffs = c + [0] * (N - len(c))

    @classmethod
    def variable(cls, field, N):
        return cls(field, N, [0, 1])

    def _check(self, other):
        if not isinstance(other, TruncSeries):
            return NotImplemented
        if other.field is not self.field or other.N != self.N:
            raise ValueError("incompatible series")
        return other

    def __add__(self, other):
        if self._check(other) is NotImplemented:
            return NotImplemented
        F = self.field
        return TruncSeries(F, self.N, [F.add(a, b) for a, b in zip(self.coeffs, other.coeffs)])

    def __sub__(self, other):
        if self._check(other) is NotImplemented:
            return NotImplemented
        F = self.field
        return TruncSeries(F, self.N, [F.sub(a, b) for a, b in zip(self.coeffs, other.coeffs)])

    def __neg__(self):
        F = self.field
        return TruncSeries(F, self.N, [F.neg(a) for a in self.coeffs])

    def __mul__(self, other):
        F = self.field
        if isinstance(other, int):
            return TruncSeries(F, self.N, [F.mul_int(a, other) for a in self.coeffs])
        if self._check(other) is NotImplemented:
            return NotImplemented
        N = self.N
        out = [0] * N
        b = other.coeffs
        nzb = [(j, y) for j, y in enumerate(b) if y]
        add, mul = F.add, F.mul
        for i, x in enumerate(self.coeffs):
            if x == 0:
                continue
            for j, y in nzb:
                if i + j >= N:
                    break
                out[i + j] = add(out[i + j], mul(x, y))
        return TruncSeries(F, N, out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        result = TruncSeries(self.field, self.N, [1])
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __eq__(self, other):
        if not isinstance(other, TruncSeries):
            return NotImplemented
        return self.N == other.N and self.coeffs == other.coeffs

    def __repr__(self):
        terms = [f"{c}*u^{i}" for i, c in enumerate(self.coeffs) if c]
        return (" + ".join(terms) or "0") + f" + O(u^{self.N})"

    def scale(self, c: int):
        F = self.field
        return TruncSeries(F, self.N, [F.mul(c, a) for a in self.coeffs])

    def shift(self, k: int):
        """Multiply by u^k."""
        return TruncSeries(self.field, self.N, [0] * k + self.coeffs)

    def order(self) -> int | None:
        """Index of the first nonzero coefficient, or None when the series is 0 mod u^N."""
        return next((i for i, c in enumerate(self.coeffs) if c), None)

    def truncate(self, M: int) -> "TruncSeries":
        if M > self.N:
            raise ValueError("cannot raise the truncation order")
        return TruncSeries(self.field, M, self.coeffs[:M])

    def compose(self, inner: "TruncSeries") -> "TruncSeries":
        """self(inner(u)) for inner with zero constant term (Horner)."""
        if inner.coeffs[0]:
            raise ValueError("inner series must have zero constant term")
        F = self.field
        acc = TruncSeries(F, self.N)
        for c in reversed(self.coeffs):
            acc = acc * inner
            acc.coeffs[0] = F.add(acc.coeffs[0], c)
        return acc


def partial_derivative(f: MPoly, var: int) -> MPoly:
    return f.partial_derivative(var)


def substitute(f: MPoly, assignments: dict) -> TruncSeries:
    """Evaluate ``f`` at truncated series, one per variable index."""
    missing = [i for i in range(f.nvars) if i not in assignments]
    if missing:
        raise ValueError(f"no series assigned to variables {missing}")
    first = assignments[0] if 0 in assignments else next(iter(assignments.values()))
    F, N = first.field, first.N
    acc = TruncSeries(F, N)
    powers = {}
    for e, c in f.terms.items():
        term = TruncSeries(F, N, [c])
        for i, k in enumerate(e):
            if k:
                if (i, k) not in powers:
                    powers[(i, k)] = assignments[i] ** k
                term = term * powers[(i, k)]
        acc = acc + term
    return acc


def substitute_separated(f: MPoly, left: dict, right: dict, N: int) -> dict:
    """Evaluate ``f`` where ``left`` variables are series in u and ``right`` ones in v.

    Returns the coefficients {(i, j): c} of u^i v^j with i + j < N, i.e. the
    result modulo the ideal (u, v)^N.
    """
    if set(left) & set(right) or set(left) | set(right) != set(range(f.nvars)):
        raise ValueError("every variable needs exactly one series")
    some = next(iter({**left, **right}.values()))
    F = some.field
    for s in (*left.values(), *right.values()):
        if s.N < N:
            raise ValueError("series truncated below N")
    powers = {}

    def power(side, i, k):
        key = (i, k)
        if key not in powers:
            powers[key] = side[i].truncate(N) ** k
        return powers[key]

    grouped = {}
    for e, c in f.terms.items():
        le = tuple((i, e[i]) for i in sorted(left) if e[i])
        re = tuple((i, e[i]) for i in sorted(right) if e[i])
        grouped.setdefault((le, re), 0)
        grouped[(le, re)] = F.add(grouped[(le, re)], c)
    out = {}
    one = TruncSeries(F, N, [1])
    for (le, re), c in grouped.items():
        if not c:
            continue
        a = one
        for i, k in le:
            a = a * power(left, i, k)
        b = one
        for i, k in re:
            b = b * power(right, i, k)
        bnz = [(j, y) for j, y in enumerate(b.coeffs) if y]
        for i, x in enumerate(a.coeffs):
            if not x:
                continue
            cx = F.mul(c, x)
            for j, y in bnz:
                if i + j >= N:
                    break
                key = (i, j)
                v = F.add(out.get(key, 0), F.mul(cx, y))
                if v:
                    out[key] = v
                else:
                    out.pop(key, None)
    return out


def hensel_w(P: MPoly, q: int, N: int) -> TruncSeries:
    """The series w(u) with u^q - u w^{q-1} - P(w) = 0 mod u^N and w(0) = 0.

    Solved one coefficient at a time from w = u^q - u w^{q-1} - (P(w) - w);
    the unit linear coefficient of P makes every step explicit.  Powers of w
    are maintained column by column so the cost is O(deg(P) * N^2).
    """
    if P.nvars != 1:
        raise ValueError("P must be univariate")
    if N <= q:
        raise ValueError("truncation must exceed q")
    F = P.field
    if P.coefficient((0,)) != 0:
        raise ValueError("P(0) must vanish")
    if P.coefficient((1,)) != 1:
        raise ValueError("P must have linear coefficient 1")
    higher = {e[0]: c for e, c in P.terms.items() if e[0] >= 2}
    K = max([q - 1, 1, *higher])
    pw = [None] + [[0] * N for _ in range(K)]  # pw[k][n] = [u^n] w^k
    alpha = pw[1]
    add, mul = F.add, F.mul
    for n in range(N):
        for k in range(2, K + 1):
            prev = pw[k - 1]
            acc = 0
            for i in range(1, n):
                a = alpha[i]
                if a and prev[n - i]:
                    acc = add(acc, mul(a, prev[n - i]))
            pw[k][n] = acc
        rhs = 1 if n == q else 0
        if n >= 1:
            rhs = F.sub(rhs, pw[q - 1][n - 1])
        for k, c in higher.items():
            rhs = F.sub(rhs, mul(c, pw[k][n]))
        alpha[n] = rhs
    return TruncSeries(F, N, alpha)
