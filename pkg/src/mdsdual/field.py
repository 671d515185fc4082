"""Prime-power fields GF(p^m) for odd p, backed by discrete-log tables.

Elements are plain integers in ``[0, q)``: the polynomial-basis element
``c_0 + c_1 T + ... + c_{m-1} T^{m-1}`` is stored as ``sum(c_i * p**i)``.
The integer ``k < p`` is therefore the prime-field constant ``k``.

Multiplication, inversion, powers and the quadratic character run through
log/antilog tables; addition uses a Zech-logarithm table so that every
scalar operation is a handful of list lookups.  The ``v*`` methods are
numpy-vectorised counterparts used by the batched linear-algebra kernels.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property

import numpy as np

MAX_FIELD_SIZE = 1 << 20


class FieldError(ValueError):
    pass


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    i = 3
    while i * i <= n:
        if n % i == 0:
            return False
        i += 2
    return True


def prime_factors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def prime_power(q: int) -> tuple[int, int]:
    """Split ``q`` into ``(p, m)`` with ``q == p**m``; raise if not a prime power."""
    if q < 2:
        raise FieldError(f"{q} is not a prime power")
    factors = prime_factors(q)
    if len(factors) != 1:
        raise FieldError(f"{q} is not a prime power")
    p = factors[0]
    m = 0
    while q > 1:
        q //= p
        m += 1
    return p, m


# -- GF(p)[x] helpers (ascending coefficient lists) used only while building a field


def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _pmod(a: list[int], f: list[int], p: int) -> list[int]:
    a = _trim([c % p for c in a])
    df = len(f) - 1
    inv_lead = pow(f[-1], -1, p)
    while len(a) - 1 >= df:
        c = (a[-1] * inv_lead) % p
        shift = len(a) - 1 - df
        for i, fc in enumerate(f):
            a[shift + i] = (a[shift + i] - c * fc) % p
        _trim(a)
    return a


def _pmulmod(a: list[int], b: list[int], f: list[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _pmod(out, f, p)


def _ppowmod(a: list[int], e: int, f: list[int], p: int) -> list[int]:
    result = [1]
    base = _pmod(list(a), f, p)
    while e:
        if e & 1:
            result = _pmulmod(result, base, f, p)
        base = _pmulmod(base, base, f, p)
        e >>= 1
    return result


def _pgcd(a: list[int], b: list[int], p: int) -> list[int]:
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        a, b = b, _pmod(a, b, p)
    return a


def is_irreducible(modulus: list[int], p: int) -> bool:
    """Rabin's test for a monic polynomial over GF(p) (ascending coefficients)."""
    m = len(modulus) - 1
    if m < 1:
        return False
    if m == 1:
        return True
    x = [0, 1]
    if _ppowmod(x, p**m, modulus, p) != _pmod(list(x), modulus, p):
        return False
    for ell in prime_factors(m):
        h = _ppowmod(x, p ** (m // ell), modulus, p)
        h = h + [0] * max(0, 2 - len(h))
        h[1] = (h[1] - 1) % p
        g = _pgcd(modulus, _trim(h), p)
        if len(g) > 1:
            return False
    return True


def smallest_irreducible(p: int, m: int) -> list[int]:
    # lexicographic in (c_{m-1}, ..., c_0)
    for high_first in itertools.product(range(p), repeat=m):
        modulus = list(reversed(high_first)) + [1]
        if is_irreducible(modulus, p):
            return modulus
    raise FieldError(f"no irreducible polynomial of degree {m} over GF({p})")  # pragma: no cover


def _digits(index: int, p: int, m: int) -> list[int]:
    out = []
    for _ in range(m):
        index, c = divmod(index, p)
        out.append(c)
    return out


def _undigits(coeffs, p: int) -> int:
    v = 0
    for c in reversed(list(coeffs)):
        v = v * p + int(c)
    return v


class Field:
    """The finite field GF(p^m), p odd.

    Parameters
    ----------
    p : int
        Odd prime characteristic.
    m : int
        Extension degree.
    modulus : sequence of int, optional
        Monic irreducible polynomial over GF(p), ascending coefficients.
        Defaults to the smallest one ordered by ``(c_{m-1}, ..., c_0)``.
    generator : int, optional
        Index of the primitive element to tabulate against.  Defaults to
        the smallest index of multiplicative order ``q - 1``.
    """

    def __init__(self, p: int, m: int = 1, modulus=None, generator: int | None = None):
        if not is_prime(p):
            raise FieldError(f"characteristic {p} is not prime")
        if p == 2:
            raise FieldError("characteristic 2 is not supported")
        if m < 1:
            raise FieldError("extension degree must be >= 1")
        if p**m > MAX_FIELD_SIZE:
            raise FieldError(f"q = {p}^{m} exceeds the size limit {MAX_FIELD_SIZE}")
        self.p = p
        self.m = m
        self.q = p**m
        if modulus is None:
            modulus = smallest_irreducible(p, m)
        else:
            modulus = [int(c) % p for c in modulus]
            if len(modulus) != m + 1 or modulus[-1] != 1:
                raise FieldError(f"modulus must be monic of degree {m}")
            if not is_irreducible(modulus, p):
                raise FieldError(f"modulus {modulus} is reducible over GF({p})")
        self.modulus = tuple(modulus)
        if generator is None:
            generator = self._smallest_generator()
        elif not 0 < generator < self.q or not self._has_full_order(generator):
            raise FieldError(f"element {generator} is not a primitive element")
        self.generator = int(generator)
        self._build_tables()

    # -- construction

    def _has_full_order(self, index: int) -> bool:
        n1 = self.q - 1
        if index == 0:
            return False
        poly = _trim(_digits(index, self.p, self.m))
        mod = list(self.modulus)
        if _ppowmod(poly, n1, mod, self.p) != [1]:
            return False
        return all(_ppowmod(poly, n1 // ell, mod, self.p) != [1] for ell in prime_factors(n1)) if n1 > 1 else True

    def _smallest_generator(self) -> int:
        for g in range(1, self.q):
            if self._has_full_order(g):
                return g
        raise FieldError("no primitive element found")  # pragma: no cover

    def _build_tables(self) -> None:
        p, m, q = self.p, self.m, self.q
        n1 = q - 1
        # multiplication by the generator as an m x m matrix over GF(p)
        g = _trim(_digits(self.generator, p, m))
        mat = np.zeros((m, m), dtype=np.int64)
        for j in range(m):
            col = _pmulmod(g, [0] * j + [1], list(self.modulus), p)
            mat[: len(col), j] = col
        vecs = np.zeros((n1, m), dtype=np.int64)
        vecs[0, 0] = 1
        filled, step = 1, mat.copy()
        while filled < n1:
            take = min(filled, n1 - filled)
            vecs[filled : filled + take] = (vecs[:take] @ step.T) % p
            filled += take
            step = (step @ step) % p
        weights = p ** np.arange(m, dtype=np.int64)
        exp = vecs @ weights
        if len(np.unique(exp)) != n1 or 0 in exp:
            raise FieldError("generator does not span the multiplicative group")  # pragma: no cover
        log = np.zeros(q, dtype=np.int64)
        log[exp] = np.arange(n1, dtype=np.int64)
        one_plus = np.where(exp % p == p - 1, exp - (p - 1), exp + 1)
        zech = np.where(one_plus == 0, -1, log[one_plus])

        self._exp_np = np.concatenate([exp, exp])
        self._log_np = log
        self._zech_np = zech
        self.exp_table = exp.tolist()
        self.log_table = log.tolist()
        self._exp2 = self.exp_table + self.exp_table
        self._zech = zech.tolist()
        self._half = n1 // 2

    # -- identity

    def descriptor(self) -> dict:
        return {"p": self.p, "m": self.m, "modulus": list(self.modulus), "generator": self.generator}

    def __eq__(self, other):
        if not isinstance(other, Field):
            return NotImplemented
        return self.descriptor() == other.descriptor()

    def __hash__(self):
        return hash((self.p, self.m, self.modulus, self.generator))

    def __repr__(self):
        return f"Field(q={self.q}, p={self.p}, m={self.m}, modulus={list(self.modulus)}, generator={self.generator})"

    def __call__(self, index: int) -> "FieldElement":
        return FieldElement(self, index)

    # -- encoding

    def coeffs(self, a: int) -> list[int]:
        """Polynomial-basis coordinates of ``a`` (ascending)."""
        return _digits(a, self.p, self.m)

    def from_coeffs(self, coeffs) -> int:
        coeffs = list(coeffs)
        if len(coeffs) > self.m:
            raise FieldError("too many coordinates")
        return _undigits([c % self.p for c in coeffs], self.p)

    def from_int(self, k: int) -> int:
        """Image of the integer ``k`` in the prime field."""
        return k % self.p

    def elements(self) -> range:
        return range(self.q)

    def _check(self, a: int) -> int:
        if not 0 <= a < self.q:
            raise FieldError(f"{a} is not an element of GF({self.q})")
        return a

    # -- scalar arithmetic

    def add(self, a: int, b: int) -> int:
        if a == 0:
            return b
        if b == 0:
            return a
        la = self.log_table[a]
        z = self._zech[(self.log_table[b] - la) % (self.q - 1)]
        if z < 0:
            return 0
        return self._exp2[la + z]

    def neg(self, a: int) -> int:
        if a == 0:
            return 0
        return self._exp2[self.log_table[a] + self._half]

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return self._exp2[self.log_table[a] + self.log_table[b]]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return self.exp_table[(-self.log_table[a]) % (self.q - 1)]

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, e: int) -> int:
        if a == 0:
            if e < 0:
                raise ZeroDivisionError("negative power of zero")
            return 1 if e == 0 else 0
        return self.exp_table[(self.log_table[a] * e) % (self.q - 1)]

    def theta_pow(self, e: int) -> int:
        """The generator raised to ``e``."""
        return self.exp_table[e % (self.q - 1)]

    def log(self, a: int) -> int:
        if a == 0:
            raise FieldError("log of zero")
        return self.log_table[a]

    def order(self, a: int) -> int:
        from math import gcd

        n1 = self.q - 1
        return n1 // gcd(n1, self.log(a))

    def quadratic_character(self, b: int) -> int:
        """+1 if ``b`` is a nonzero square, -1 otherwise; zero is rejected."""
        if b == 0:
            raise FieldError("quadratic character is undefined at 0")
        return -1 if self.log_table[b] & 1 else 1

    eta = quadratic_character

    def sqrt(self, b: int) -> int | None:
        """Square root with the smaller index, or ``None`` for non-squares."""
        if b == 0:
            return 0
        lb = self.log_table[b]
        if lb & 1:
            return None
        root = self.exp_table[lb // 2]
        return min(root, self.neg(root))

    def sum(self, values) -> int:
        acc = 0
        for v in values:
            acc = self.add(acc, v)
        return acc

    def prod(self, values) -> int:
        acc = 1
        for v in values:
            acc = self.mul(acc, v)
        return acc

    # -- vectorised arithmetic (int64 arrays of indices)

    def vmul(self, a, b):
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        out = self._exp_np[self._log_np[a] + self._log_np[b]]
        return np.where((a == 0) | (b == 0), 0, out)

    def vneg(self, a):
        a = np.asarray(a, dtype=np.int64)
        return np.where(a == 0, 0, self._exp_np[self._log_np[a] + self._half])

    def vadd(self, a, b):
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        la = self._log_np[a]
        z = self._zech_np[(self._log_np[b] - la) % (self.q - 1)]
        s = np.where(z < 0, 0, self._exp_np[la + np.maximum(z, 0)])
        return np.where(a == 0, b, np.where(b == 0, a, s))

    def vsub(self, a, b):
        return self.vadd(a, self.vneg(b))

    def vinv(self, a):
        a = np.asarray(a, dtype=np.int64)
        if np.any(a == 0):
            raise ZeroDivisionError("inverse of zero")
        return self._exp_np[(-self._log_np[a]) % (self.q - 1)]

    # -- subfields

    def subfield(self, degree: int) -> "Subfield":
        return Subfield(self, degree)

    @cached_property
    def minus_one(self) -> int:
        return self.p - 1


def make_field(p: int, m: int = 1, modulus=None) -> Field:
    """Build GF(p^m) under the canonical (smallest modulus, smallest generator) conventions."""
    return Field(p, m, modulus)


def field_of_order(q: int) -> Field:
    p, m = prime_power(q)
    return Field(p, m)


@dataclass(frozen=True)
class FieldElement:
    """Operator-friendly wrapper around an element index.

    Mixing elements of different fields raises ``FieldError``.
    """

    field: Field
    index: int

    def __post_init__(self):
        self.field._check(self.index)

    def _other(self, other) -> int:
        if isinstance(other, FieldElement):
            if other.field is not self.field and other.field != self.field:
                raise FieldError("operands belong to different fields")
            return other.index
        if isinstance(other, int):
            return self.field.from_int(other)
        return NotImplemented

    def _wrap(self, index):
        return FieldElement(self.field, index)

    def __add__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else self._wrap(self.field.add(self.index, o))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else self._wrap(self.field.sub(self.index, o))

    def __rsub__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else self._wrap(self.field.sub(o, self.index))

    def __mul__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else self._wrap(self.field.mul(self.index, o))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else self._wrap(self.field.div(self.index, o))

    def __neg__(self):
        return self._wrap(self.field.neg(self.index))

    def __pow__(self, e: int):
        return self._wrap(self.field.pow(self.index, e))

    def inverse(self):
        return self._wrap(self.field.inv(self.index))

    def __int__(self):
        return self.index

    def __repr__(self):
        return f"GF({self.field.q})({self.index})"


class Subfield:
    """GF(r), r = p^s, viewed inside a field GF(p^m) with s | m."""

    def __init__(self, field: Field, degree: int):
        if degree < 1 or field.m % degree:
            raise FieldError(f"subfield degree {degree} does not divide {field.m}")
        self.field = field
        self.degree = degree
        self.r = field.p**degree
        self.index = field.m // degree  # [GF(q) : GF(r)]
        # GF(r)* is generated by theta^((q-1)/(r-1))
        step = (field.q - 1) // (self.r - 1)
        self._members = frozenset([0] + [field.theta_pow(step * i) for i in range(self.r - 1)])

    def member(self, a: int) -> bool:
        return a in self._members

    def elements(self) -> list[int]:
        """Subfield elements sorted by index."""
        return sorted(self._members)

    def nonzero(self) -> list[int]:
        return [a for a in self.elements() if a]

    def relative_trace(self, a: int) -> int:
        F = self.field
        return F.sum(F.pow(a, self.r**i) for i in range(self.index))

    def relative_norm(self, a: int) -> int:
        return self.field.pow(a, (self.field.q - 1) // (self.r - 1))

    def quadratic_character(self, a: int) -> int:
        """Quadratic character of GF(r) evaluated at a subfield element."""
        if not self.member(a):
            raise FieldError(f"{a} is not in GF({self.r})")
        F = self.field
        return 1 if F.pow(a, (self.r - 1) // 2) == 1 else -1


def embed(small: Field, big: Field) -> list[int]:
    """Field embedding ``small -> big`` as a lookup list indexed by ``small`` elements.

    The image of ``T`` is the smallest-index root of ``small.modulus`` lying in
    the degree-``small.m`` subfield of ``big``.
    """
    if small.p != big.p or big.m % small.m:
        raise FieldError(f"GF({small.q}) does not embed in GF({big.q})")
    sub = big.subfield(small.m)
    mod = small.modulus
    root = None
    for rho in sub.elements():
        acc = 0
        for c in reversed(mod):
            acc = big.add(big.mul(acc, rho), big.from_int(c))
        if acc == 0:
            root = rho
            break
    if root is None:  # pragma: no cover
        raise FieldError("no root of the modulus in the subfield")
    powers = [big.pow(root, i) for i in range(small.m)]
    table = []
    for a in range(small.q):
        acc = 0
        for c, rp in zip(small.coeffs(a), powers):
            if c:
                acc = big.add(acc, big.mul(big.from_int(c), rp))
        table.append(acc)
    return table


def trace_table(sub: Subfield) -> np.ndarray:
    """Relative trace of every element of the ambient field, by index."""
    F = sub.field
    n1 = F.q - 1
    idx = np.arange(F.q, dtype=np.int64)
    logs = F._log_np[idx]
    acc = np.zeros(F.q, dtype=np.int64)
    for i in range(sub.index):
        conj = np.where(idx == 0, 0, F._exp_np[(logs * (sub.r**i % n1)) % n1])
        acc = F.vadd(acc, conj)
    return acc


def norm_table(sub: Subfield) -> np.ndarray:
    """Relative norm of every element of the ambient field (0 maps to 0)."""
    F = sub.field
    n1 = F.q - 1
    idx = np.arange(F.q, dtype=np.int64)
    e = n1 // (sub.r - 1)
    return np.where(idx == 0, 0, F._exp_np[(F._log_np[idx] * e) % n1])
