"""Exact arithmetic in GF(q) and GF(q^2) = GF(q)[i].

Elements of GF(q^2) are integer codes 0 .. q^2-1.  Writing x = x1 + i*x2
with x1, x2 in GF(q), the code is code(x1) + q*code(x2); GF(q) itself is
the code range 0 .. q-1.  GF(q) = GF(p^e) uses base-p positional coding
with respect to a deterministically chosen primitive polynomial, so code
addition is digit-wise addition mod p throughout.

The quadratic extension follows the classical setup for Hermitian-curve
coordinates: for q odd, i^2 = h with h the least non-square of GF(q);
for q even, i^2 + i + h = 0 with h the least element of absolute trace 1.
All distinguished constants (h, i, c with c^q + c + 1 = 0, and the
multiplicative generator) are the smallest codes satisfying their
defining condition, so rebuilding a field always yields identical tables.
"""

from __future__ import annotations

import numpy as np

from .errors import NotPrimeError, UnsupportedSizeError

MAX_Q2 = 1 << 20

# Full q^2 x q^2 addition/multiplication tables are built only below this
# size; larger fields fall back to digit/exp-log arithmetic.
_FULL_TABLE_MAX_Q2 = 1024


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


def factorize(n: int) -> dict[int, int]:
    """Prime factorization by trial division (fine for n <= ~2^40)."""
    out: dict[int, int] = {}
    for p in (2, 3):
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
    f = 5
    while f * f <= n:
        for p in (f, f + 2):
            while n % p == 0:
                out[p] = out.get(p, 0) + 1
                n //= p
        f += 6
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def _digits(n: int, p: int, width: int) -> list[int]:
    out = []
    for _ in range(width):
        out.append(n % p)
        n //= p
    return out


def _poly_mul_mod(a: list[int], b: list[int], mod: list[int], p: int) -> list[int]:
    """Multiply polynomials over GF(p) modulo the monic polynomial `mod`."""
    e = len(mod) - 1
    res = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                res[i + j] = (res[i + j] + ai * bj) % p
    for k in range(len(res) - 1, e - 1, -1):
        c = res[k]
        if c:
            res[k] = 0
            for j in range(e):
                res[k - e + j] = (res[k - e + j] - c * mod[j]) % p
    res = res[:e]
    while len(res) < e:
        res.append(0)
    return res


def _poly_pow_mod(base: list[int], exp: int, mod: list[int], p: int) -> list[int]:
    e = len(mod) - 1
    result = [1] + [0] * (e - 1)
    b = list(base)
    while exp:
        if exp & 1:
            result = _poly_mul_mod(result, b, mod, p)
        exp >>= 1
        b = _poly_mul_mod(b, b, mod, p)
    return result


class _BaseField:
    """GF(p^e) with exp/log tables; internal scaffolding for Field."""

    def __init__(self, p: int, e: int):
        self.p = p
        self.e = e
        self.q = p**e
        self.poly = self._find_poly()
        self._build_tables()

    def _find_poly(self) -> list[int]:
        """Least monic primitive polynomial of degree e over GF(p).

        Candidates are ordered by the integer code of their non-leading
        coefficients.  Primitivity of x certifies both irreducibility and
        that x generates the multiplicative group.
        """
        p, e = self.p, self.e
        if e == 1:
            return [0, 1]
        order = p**e - 1
        prime_divs = list(factorize(order))
        x = [0, 1] + [0] * (e - 2)
        one = [1] + [0] * (e - 1)
        for code in range(p**e):
            mod = _digits(code, p, e) + [1]
            if _poly_pow_mod(x, order, mod, p) != one:
                continue
            if any(_poly_pow_mod(x, order // d, mod, p) == one for d in prime_divs):
                continue
            return mod
        raise RuntimeError(f"no primitive polynomial of degree {e} over GF({p})")

    def _build_tables(self):
        p, e, q = self.p, self.e, self.q
        self.exp = [0] * (q - 1)
        self.log = [0] * q
        if e == 1:
            g = self._least_primitive_root()
            v = 1
            for k in range(q - 1):
                self.exp[k] = v
                self.log[v] = k
                v = (v * g) % p
            self.gen = g
        else:
            # generator is x itself (poly is primitive); codes are base-p digits
            v = [1] + [0] * (e - 1)
            x = [0, 1] + [0] * (e - 2)
            for k in range(q - 1):
                code = sum(c * p**i for i, c in enumerate(v))
                self.exp[k] = code
                self.log[code] = k
                v = _poly_mul_mod(v, x, self.poly, p)
            self.gen = p

    def _least_primitive_root(self) -> int:
        p = self.p
        if p == 2:
            return 1
        prime_divs = list(factorize(p - 1))
        for g in range(2, p):
            if all(pow(g, (p - 1) // d, p) != 1 for d in prime_divs):
                return g
        raise RuntimeError("no primitive root found")

    def add(self, a: int, b: int) -> int:
        if self.e == 1:
            return (a + b) % self.p
        p = self.p
        out = 0
        w = 1
        for _ in range(self.e):
            out += ((a + b) % p) * w
            a //= p
            b //= p
            w *= p
        return out

    def neg(self, a: int) -> int:
        if self.e == 1:
            return (-a) % self.p
        p = self.p
        out = 0
        w = 1
        for _ in range(self.e):
            out += ((-a) % p) * w
            a //= p
            w *= p
        return out

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return self.exp[(self.log[a] + self.log[b]) % (self.q - 1)]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return self.exp[(-self.log[a]) % (self.q - 1)]

    def pow(self, a: int, k: int) -> int:
        if a == 0:
            return 0 if k else 1
        return self.exp[(self.log[a] * k) % (self.q - 1)]

    def abs_trace(self, a: int) -> int:
        """Trace to the prime field GF(p)."""
        t = a
        acc = a
        for _ in range(self.e - 1):
            t = self.pow(t, self.p)
            acc = self.add(acc, t)
        return acc


class Field:
    """Arithmetic context for GF(q^2) with its GF(q) subfield and constants.

    Scalar operations take and return integer codes.  Vectorized variants
    (``vadd``, ``vmul``, ...) operate on numpy integer arrays and are the
    building blocks of the geometry kernels.
    """

    def __init__(self, p: int, e: int):
        if not is_prime(p):
            raise NotPrimeError(f"p={p} is not prime")
        if p ** (2 * e) > MAX_Q2:
            raise UnsupportedSizeError(
                f"q^2 = {p}^{2 * e} exceeds the supported maximum 2^20"
            )
        self.p = p
        self.e = e
        base = _BaseField(p, e)
        self._base = base
        self.q = base.q
        self.q2 = self.q**2
        self.poly_q = list(base.poly)
        self.h = self._pick_h()
        # minimal polynomial of i over GF(q), coefficients as GF(q) codes
        if self.q % 2 == 1:
            self.poly_q2 = [base.neg(self.h), 0, 1]  # x^2 - h
        else:
            self.poly_q2 = [self.h, 1, 1]  # x^2 + x + h
        self._build_ext_tables()
        self._check_build()

    # ---- construction helpers -------------------------------------------

    def _pick_h(self) -> int:
        base = self._base
        if self.q % 2 == 1:
            squares = {base.mul(a, a) for a in range(1, self.q)}
            for hcode in range(1, self.q):
                if hcode not in squares:
                    return hcode
        else:
            for hcode in range(1, self.q):
                if base.abs_trace(hcode) == 1:
                    return hcode
        raise RuntimeError("no suitable h found")

    def _emul(self, a: int, b: int) -> int:
        """Extension multiply on codes, used only while building tables."""
        base, q, h = self._base, self.q, self.h
        a1, a2 = a % q, a // q
        b1, b2 = b % q, b // q
        t = base.mul(a2, b2)
        re = base.add(base.mul(a1, b1), base.mul(h, t))
        im = base.add(base.mul(a1, b2), base.mul(a2, b1))
        if q % 2 == 0:
            im = base.add(im, t)  # i^2 = i + h
        return re + q * im

    def _eadd(self, a: int, b: int) -> int:
        base, q = self._base, self.q
        return base.add(a % q, b % q) + q * base.add(a // q, b // q)

    def _econj(self, a: int) -> int:
        base, q = self._base, self.q
        a1, a2 = a % q, a // q
        if q % 2 == 1:
            return a1 + q * base.neg(a2)  # i^q = -i
        return base.add(a1, a2) + q * a2  # i^q = i + 1

    def _build_ext_tables(self):
        q, q2 = self.q, self.q2

        # smallest i with the defining quadratic relation
        h = self.h
        for x in range(q2):
            xx = self._emul(x, x)
            ok = xx == h if q % 2 == 1 else self._eadd(xx, x) == h
            if ok:
                self.i = x
                break
        # smallest root of c^q + c + 1 = 0
        for x in range(q2):
            if self._eadd(self._eadd(self._econj(x), x), 1) == 0:
                self.c = x
                break

        # smallest generator of GF(q^2)^*
        n = q2 - 1
        prime_divs = list(factorize(n))
        for g in range(2, q2):
            if all(self._epow(g, n // d) != 1 for d in prime_divs):
                self.generator = g
                break

        exp = np.zeros(n, dtype=np.int32)
        log = np.zeros(q2, dtype=np.int64)
        v = 1
        for k in range(n):
            exp[k] = v
            log[v] = k
            v = self._emul(v, self.generator)
        self.exp = exp
        self.log = log

        codes = np.arange(q2, dtype=np.int32)
        # frobenius x -> x^q as a table
        frob = np.zeros(q2, dtype=np.int32)
        frob[exp] = exp[(log[exp] * self.q) % n]
        self.frob_t = frob
        neg1 = self.p - 1  # code of -1 (prime-subfield element)
        if self.p == 2:
            self.neg_t = codes.copy()
        else:
            neg = np.zeros(q2, dtype=np.int32)
            neg[exp] = exp[(log[exp] + log[neg1]) % n]
            self.neg_t = neg
        inv = np.zeros(q2, dtype=np.int32)
        inv[exp] = exp[(-log[exp]) % n]
        self.inv_t = inv  # inv_t[0] == 0; zero must be checked by callers

        # base-p digit decomposition for additive structure
        w = 2 * self.e
        dig = np.zeros((q2, w), dtype=np.int16)
        tmp = codes.astype(np.int64).copy()
        for j in range(w):
            dig[:, j] = tmp % self.p
            tmp //= self.p
        self._dig = dig
        self._pvec = (self.p ** np.arange(w)).astype(np.int64)

        if q2 <= _FULL_TABLE_MAX_Q2:
            s = (dig[:, None, :] + dig[None, :, :]) % self.p
            self._add_table = (s @ self._pvec).astype(np.int32)
        else:
            self._add_table = None

        tr = self.vadd(frob, codes)
        self.traceless = [int(m) for m in codes[tr == 0]]

    def _epow(self, a: int, k: int) -> int:
        r = 1
        b = a
        while k:
            if k & 1:
                r = self._emul(r, b)
            k >>= 1
            b = self._emul(b, b)
        return r

    def _check_build(self):
        q, q2 = self.q, self.q2
        assert self.i == q, "i should be the basis element of the extension"
        assert len(self.traceless) == q
        assert self.add(self.add(self.frobenius(self.c), self.c), 1) == 0
        if q % 2 == 1:
            assert self.mul(self.i, self.i) == self.h
            assert self.add(self.frobenius(self.i), self.i) == 0
        else:
            assert self.add(self.mul(self.i, self.i), self.i) == self.h
            assert self.add(self.frobenius(self.i), self.i) == 1
        # subfield = fixed points of frobenius = codes below q
        codes = np.arange(q2, dtype=np.int32)
        fixed = codes[self.frob_t == codes]
        assert fixed.size == q and int(fixed[-1]) == q - 1

    # ---- scalar operations ----------------------------------------------

    def add(self, a: int, b: int) -> int:
        if self._add_table is not None:
            return int(self._add_table[a, b])
        p = self.p
        out, w = 0, 1
        for _ in range(2 * self.e):
            out += ((a + b) % p) * w
            a //= p
            b //= p
            w *= p
        return out

    def neg(self, a: int) -> int:
        return int(self.neg_t[a])

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return int(self.exp[(self.log[a] + self.log[b]) % (self.q2 - 1)])

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return int(self.inv_t[a])

    def div(self, a: int, b: int) -> int:
        if b == 0:
            raise ZeroDivisionError("division by zero")
        return self.mul(a, self.inv(b))

    def pow(self, a: int, k: int) -> int:
        if a == 0:
            if k == 0:
                return 1
            if k < 0:
                raise ZeroDivisionError("negative power of zero")
            return 0
        return int(self.exp[(self.log[a] * k) % (self.q2 - 1)])

    def frobenius(self, a: int) -> int:
        return int(self.frob_t[a])

    def norm(self, a: int) -> int:
        """x^(q+1), landing in the subfield."""
        return self.mul(a, self.frobenius(a))

    def trace(self, a: int) -> int:
        """x^q + x."""
        return self.add(self.frobenius(a), a)

    def arith(self, a: int, b: int, op: str) -> int:
        fn = {
            "add": self.add,
            "sub": self.sub,
            "mul": self.mul,
            "div": self.div,
            "pow": self.pow,
        }.get(op)
        if fn is not None:
            return fn(a, b)
        if op == "frobenius":
            return self.frobenius(a)
        raise ValueError(f"unknown op {op!r}")

    # ---- vector operations (numpy int arrays of codes) -------------------

    def vadd(self, a, b):
        a = np.asarray(a, dtype=np.int32)
        b = np.asarray(b, dtype=np.int32)
        if self._add_table is not None:
            return self._add_table[a, b]
        s = (self._dig[a] + self._dig[b]) % self.p
        return (s @ self._pvec).astype(np.int32)

    def vneg(self, a):
        return self.neg_t[np.asarray(a, dtype=np.int32)]

    def vsub(self, a, b):
        return self.vadd(a, self.vneg(b))

    def vmul(self, a, b):
        a = np.asarray(a, dtype=np.int32)
        b = np.asarray(b, dtype=np.int32)
        out = self.exp[(self.log[a] + self.log[b]) % (self.q2 - 1)]
        zero = (a == 0) | (b == 0)
        if zero.any():
            out = np.where(zero, 0, out)
        return out.astype(np.int32, copy=False)

    def vinv(self, a):
        a = np.asarray(a, dtype=np.int32)
        if (a == 0).any():
            raise ZeroDivisionError("inverse of zero in vector")
        return self.inv_t[a]

    def vfrob(self, a):
        return self.frob_t[np.asarray(a, dtype=np.int32)]

    def vnorm(self, a):
        return self.vmul(a, self.vfrob(a))

    # ---- element sets and solvers ----------------------------------------

    def elements(self) -> range:
        return range(self.q2)

    def subfield_elements(self) -> range:
        """GF(q) inside GF(q^2); exactly the codes below q."""
        return range(self.q)

    def in_subfield(self, a: int) -> bool:
        return 0 <= a < self.q

    def traceless_set(self) -> list[int]:
        """M = {m : m^q + m = 0}, sorted by code; |M| = q and 0 in M."""
        return list(self.traceless)

    def trace_fiber(self, s: int) -> list[int]:
        """All x with x^q + x = s (q solutions for s in GF(q), else none)."""
        if not self.in_subfield(s):
            return []
        q = self.q
        if q % 2 == 1:
            x1 = self.div(s, self.add(1, 1))
            return [x1 + q * t for t in range(q)]
        return [t + q * s for t in range(q)]

    def rth_power_values(self, r: int) -> list[int]:
        """Sorted {u^r : u in GF(q)} (subfield codes)."""
        vals = {0}
        for u in range(1, self.q):
            vals.add(self.pow(u, r))
        return sorted(vals)

    def to_json(self) -> dict:
        return {
            "p": self.p,
            "e": self.e,
            "q": self.q,
            "poly_q": self.poly_q,
            "poly_q2": self.poly_q2,
            "h": self.h,
            "i": self.i,
            "c": self.c,
            "generator": self.generator,
        }


_FIELD_CACHE: dict[tuple[int, int], Field] = {}


def build_field(p: int, e: int) -> Field:
    """Construct (and cache) the GF(q^2) context for q = p^e."""
    key = (p, e)
    if key not in _FIELD_CACHE:
        _FIELD_CACHE[key] = Field(p, e)
    return _FIELD_CACHE[key]


def field_for_q(q: int) -> Field:
    """Resolve a prime power q to its field context."""
    fac = factorize(q)
    if len(fac) != 1:
        raise NotPrimeError(f"q={q} is not a prime power")
    ((p, e),) = fac.items()
    return build_field(p, e)
