"""Arithmetic in small finite fields GF(p^m), p^m <= 256.

A field element is a plain int in ``[0, p**m)``.  Its base-p digits are
the coordinates in the polynomial basis ``1, x, ..., x**(m-1)`` modulo
the irreducible polynomial, so 0 and 1 encode the additive and
multiplicative identities.  The irreducible polynomial is supplied by
the caller (curve files carry it) rather than hard-coded, which keeps
printed element values reproducible and documented per curve.

``mul``/``inv`` run on log/antilog tables built once at construction;
correctness is defined by polynomial arithmetic over GF(p), which is
what the table builder uses.
"""

from __future__ import annotations

from .errors import CurveFormatError, ZeroInversion

MAX_ORDER = 256


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def _poly_divmod(num: list[int], den: list[int], p: int) -> tuple[list[int], list[int]]:
    """Long division of coefficient lists (low degree first) over GF(p)."""
    num = list(num)
    dden = len(den) - 1
    inv_lead = pow(den[-1], p - 2, p)
    quo = [0] * max(len(num) - dden, 0)
    for i in range(len(num) - dden - 1, -1, -1):
        c = (num[i + dden] * inv_lead) % p
        if c:
            quo[i] = c
            for j, dj in enumerate(den):
                num[i + j] = (num[i + j] - c * dj) % p
    while len(num) > 1 and num[-1] == 0:
        num.pop()
    return quo, num


def _monic_polys(degree: int, p: int):
    """All monic polynomials of the given degree over GF(p), low degree first."""
    def rec(prefix):
        if len(prefix) == degree:
            yield prefix + [1]
            return
        for c in range(p):
            yield from rec(prefix + [c])
    yield from rec([])


class Field:
    """GF(p^m) with elements encoded as integers in [0, p^m)."""

    def __init__(self, p: int, m: int, irreducible: tuple[int, ...]):
        if not _is_prime(p):
            raise CurveFormatError(f"characteristic {p} is not prime")
        if m < 1:
            raise CurveFormatError(f"extension degree {m} must be >= 1")
        q = p**m
        if q > MAX_ORDER:
            raise CurveFormatError(f"field order {q} exceeds {MAX_ORDER}")
        irreducible = tuple(c % p for c in irreducible)
        if len(irreducible) != m + 1 or irreducible[m] != 1:
            raise CurveFormatError("irreducible polynomial must be monic of degree m")
        if m > 1:
            for d in range(1, m // 2 + 1):
                for cand in _monic_polys(d, p):
                    _, rem = _poly_divmod(list(irreducible), cand, p)
                    if rem == [0]:
                        raise CurveFormatError(
                            f"polynomial {list(irreducible)} is reducible over GF({p})"
                        )
        self.p = p
        self.m = m
        self.q = q
        self.irreducible = irreducible
        self._build_tables()

    # -- table construction ------------------------------------------------

    def _digits(self, a: int) -> list[int]:
        out = []
        for _ in range(self.m):
            out.append(a % self.p)
            a //= self.p
        return out

    def _undigits(self, ds: list[int]) -> int:
        a = 0
        for d in reversed(ds[: self.m]):
            a = a * self.p + (d % self.p)
        return a

    def _mul_raw(self, a: int, b: int) -> int:
        """Polynomial product reduced mod the irreducible; no tables."""
        p = self.p
        da, db = self._digits(a), self._digits(b)
        prod = [0] * (2 * self.m - 1)
        for i, ai in enumerate(da):
            if ai:
                for j, bj in enumerate(db):
                    prod[i + j] = (prod[i + j] + ai * bj) % p
        # reduce: x^m = -(irreducible tail)
        tail = [(-c) % p for c in self.irreducible[: self.m]]
        for i in range(len(prod) - 1, self.m - 1, -1):
            c = prod[i]
            if c:
                prod[i] = 0
                for j, tj in enumerate(tail):
                    prod[i - self.m + j] = (prod[i - self.m + j] + c * tj) % p
        return self._undigits(prod)

    def _build_tables(self) -> None:
        p, q = self.p, self.q
        # log/antilog from a multiplicative generator
        exp = [1] * q
        log = [0] * q
        for g in range(1, q):
            seen = 1
            x = g
            order = 1
            while x != 1:
                x = self._mul_raw(x, g)
                order += 1
                if order > q:
                    break
            if order == q - 1:
                x = 1
                for k in range(q - 1):
                    exp[k] = x
                    log[x] = k
                    x = self._mul_raw(x, g)
                break
        else:
            if q > 2:
                raise CurveFormatError("no multiplicative generator found")
        self._exp = exp
        self._log = log
        mul = [[0] * q for _ in range(q)]
        for a in range(1, q):
            la = log[a]
            rowa = mul[a]
            for b in range(1, q):
                rowa[b] = exp[(la + log[b]) % (q - 1)]
        self._mul = mul
        if p == 2:
            add = [[a ^ b for b in range(q)] for a in range(q)]
            neg = list(range(q))
        else:
            add = [[0] * q for _ in range(q)]
            digs = [self._digits(a) for a in range(q)]
            for a in range(q):
                for b in range(q):
                    add[a][b] = self._undigits(
                        [(da + db) % p for da, db in zip(digs[a], digs[b])]
                    )
            neg = [self._undigits([(-d) % p for d in digs[a]]) for a in range(q)]
        self._add = add
        self._neg = neg
        self._inv = [0] * q
        for a in range(1, q):
            self._inv[a] = exp[(q - 1 - log[a]) % (q - 1)]

    # -- operations --------------------------------------------------------

    def add(self, a: int, b: int) -> int:
        return self._add[a][b]

    def sub(self, a: int, b: int) -> int:
        return self._add[a][self._neg[b]]

    def neg(self, a: int) -> int:
        return self._neg[a]

    def mul(self, a: int, b: int) -> int:
        return self._mul[a][b]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroInversion("0 has no multiplicative inverse")
        return self._inv[a]

    def div(self, a: int, b: int) -> int:
        if b == 0:
            raise ZeroInversion("division by the zero field element")
        return self._mul[a][self._inv[b]]

    def pow(self, a: int, e: int) -> int:
        if e == 0:
            return 1
        if a == 0:
            return 0
        return self._exp[(self._log[a] * e) % (self.q - 1)]

    def check(self, a: int) -> int:
        if not 0 <= a < self.q:
            raise CurveFormatError(f"field element {a} out of range [0, {self.q})")
        return a

    def elements(self) -> range:
        return range(self.q)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Field)
            and (self.p, self.m, self.irreducible) == (other.p, other.m, other.irreducible)
        )

    def __hash__(self):
        return hash((self.p, self.m, self.irreducible))

    def __repr__(self) -> str:
        return f"Field(p={self.p}, m={self.m}, irreducible={list(self.irreducible)})"
