"""Exact integer Laurent polynomials and determinants of Laurent matrices.

Everything here is exact: coefficients are Python ints and division is
only permitted when it is exact in Z[t, t^-1].  Determinants of matrices
over the ring are computed by evaluation at integer points followed by
exact interpolation (finite differences, with the coefficient lift done
modulo a Mersenne prime larger than a Hadamard-style coefficient bound),
which stays fast even for the long braid words the Burau representation
produces.
"""

from __future__ import annotations

from dataclasses import dataclass

# Exponents of known Mersenne primes, enough for any determinant this
# package can produce.
_MERSENNE_EXPONENTS = (521, 607, 1279, 2203, 2281, 3217, 4253, 4423, 9689, 9941, 11213, 19937)


class ExactDivisionError(ArithmeticError):
    """Division that was required to be exact in Z[t, t^-1] was not."""


@dataclass(frozen=True)
class LaurentPolynomial:
    """Finitely supported exponent -> coefficient map; no zero coefficients."""

    coeffs: tuple[tuple[int, int], ...]  # sorted (exponent, coefficient) pairs

    @staticmethod
    def from_dict(d: dict[int, int]) -> "LaurentPolynomial":
        return LaurentPolynomial(tuple(sorted((e, c) for e, c in d.items() if c != 0)))

    @staticmethod
    def zero() -> "LaurentPolynomial":
        return LaurentPolynomial(())

    @staticmethod
    def one() -> "LaurentPolynomial":
        return LaurentPolynomial(((0, 1),))

    @staticmethod
    def constant(c: int) -> "LaurentPolynomial":
        return LaurentPolynomial.from_dict({0: c})

    @staticmethod
    def t(exponent: int = 1, coefficient: int = 1) -> "LaurentPolynomial":
        return LaurentPolynomial.from_dict({exponent: coefficient})

    def as_dict(self) -> dict[int, int]:
        return dict(self.coeffs)

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def is_one(self) -> bool:
        return self.coeffs == ((0, 1),)

    def min_exp(self) -> int:
        if self.is_zero:
            raise ValueError("zero polynomial has no exponent range")
        return self.coeffs[0][0]

    def max_exp(self) -> int:
        if self.is_zero:
            raise ValueError("zero polynomial has no exponent range")
        return self.coeffs[-1][0]

    def norm1(self) -> int:
        return sum(abs(c) for _, c in self.coeffs)

    def __add__(self, other: "LaurentPolynomial") -> "LaurentPolynomial":
        d = self.as_dict()
        for e, c in other.coeffs:
            d[e] = d.get(e, 0) + c
        return LaurentPolynomial.from_dict(d)

    def __neg__(self) -> "LaurentPolynomial":
        return LaurentPolynomial(tuple((e, -c) for e, c in self.coeffs))

    def __sub__(self, other: "LaurentPolynomial") -> "LaurentPolynomial":
        return self + (-other)

    def __mul__(self, other: "LaurentPolynomial") -> "LaurentPolynomial":
        d: dict[int, int] = {}
        for e1, c1 in self.coeffs:
            for e2, c2 in other.coeffs:
                e = e1 + e2
                d[e] = d.get(e, 0) + c1 * c2
        return LaurentPolynomial.from_dict(d)

    def scale(self, c: int) -> "LaurentPolynomial":
        if c == 0:
            return LaurentPolynomial.zero()
        return LaurentPolynomial(tuple((e, c * v) for e, v in self.coeffs))

    def shift(self, k: int) -> "LaurentPolynomial":
        """Multiply by t^k."""
        return LaurentPolynomial(tuple((e + k, c) for e, c in self.coeffs))

    def mirror(self) -> "LaurentPolynomial":
        """Substitute t -> t^-1."""
        return LaurentPolynomial(tuple(sorted((-e, c) for e, c in self.coeffs)))

    def __call__(self, value):
        """Evaluate at a nonzero rational/integer point (exact)."""
        from fractions import Fraction

        total = Fraction(0)
        for e, c in self.coeffs:
            total += c * Fraction(value) ** e
        if total.denominator == 1:
            return int(total)
        return total

    def divide_exact(self, other: "LaurentPolynomial") -> "LaurentPolynomial":
        """Exact division in Z[t, t^-1]; raises ExactDivisionError otherwise."""
        if other.is_zero:
            raise ZeroDivisionError("division by the zero polynomial")
        if self.is_zero:
            return LaurentPolynomial.zero()
        num = _dense(self)
        den = _dense(other)
        shift = self.min_exp() - other.min_exp()
        quot = [0] * (len(num) - len(den) + 1)
        if len(num) < len(den):
            raise ExactDivisionError("degree of divisor exceeds dividend")
        rem = list(num)
        lead = den[-1]
        for k in range(len(quot) - 1, -1, -1):
            c = rem[k + len(den) - 1]
            if c % lead != 0:
                raise ExactDivisionError("non-exact division")
            q = c // lead
            quot[k] = q
            if q:
                for j, dj in enumerate(den):
                    rem[k + j] -= q * dj
        if any(rem):
            raise ExactDivisionError("non-exact division (nonzero remainder)")
        return LaurentPolynomial.from_dict(
            {k + shift: c for k, c in enumerate(quot)}
        )

    def __str__(self) -> str:
        if self.is_zero:
            return "0"
        parts = []
        for e, c in sorted(self.coeffs, reverse=True):
            mag = abs(c)
            if e == 0:
                body = str(mag)
            else:
                tpow = "t" if e == 1 else f"t^{e}"
                body = tpow if mag == 1 else f"{mag}{tpow}"
            if not parts:
                parts.append(body if c > 0 else f"-{body}")
            else:
                parts.append(f"+{body}" if c > 0 else f"-{body}")
        return "".join(parts)


def _dense(p: LaurentPolynomial) -> list[int]:
    """Coefficient list of p * t^{-min_exp}, constant term first."""
    lo, hi = p.min_exp(), p.max_exp()
    out = [0] * (hi - lo + 1)
    for e, c in p.coeffs:
        out[e - lo] = c
    return out


def geometric_sum(n: int) -> LaurentPolynomial:
    """1 + t + ... + t^{n-1}."""
    return LaurentPolynomial.from_dict({k: 1 for k in range(n)})


def _mersenne_prime_above(bound: int) -> int:
    for e in _MERSENNE_EXPONENTS:
        p = (1 << e) - 1
        if p > bound:
            return p
    raise OverflowError("coefficient bound exceeds the available prime table")


def _det_bareiss(rows: list[list[int]]) -> int:
    """Fraction-free integer determinant (Bareiss)."""
    a = [row[:] for row in rows]
    n = len(a)
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for r in range(k + 1, n):
                if a[r][k] != 0:
                    a[k], a[r] = a[r], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def laurent_det(rows: list[list[LaurentPolynomial]]) -> LaurentPolynomial:
    """Determinant of a square matrix over Z[t, t^-1], exactly.

    Each column is shifted to an ordinary polynomial, the shifted
    determinant is sampled at consecutive integer points, and the integer
    coefficients are recovered by Newton finite differences modulo a
    large Mersenne prime.
    """
    n = len(rows)
    if n == 0:
        return LaurentPolynomial.one()
    for row in rows:
        if len(row) != n:
            raise ValueError("matrix must be square")
    col_lo = []
    col_hi = []
    for c in range(n):
        exps_lo = [rows[r][c].min_exp() for r in range(n) if not rows[r][c].is_zero]
        exps_hi = [rows[r][c].max_exp() for r in range(n) if not rows[r][c].is_zero]
        if not exps_lo:
            return LaurentPolynomial.zero()
        col_lo.append(min(exps_lo))
        col_hi.append(max(exps_hi))
    shift = sum(col_lo)
    degree_bound = sum(hi - lo for lo, hi in zip(col_lo, col_hi))

    # Dense shifted columns: entry (r, c) becomes rows[r][c] * t^{-col_lo[c]}.
    dense = [
        [_dense_shifted(rows[r][c], col_lo[c]) for c in range(n)] for r in range(n)
    ]
    count = degree_bound + 1
    start = -(count // 2)
    points = list(range(start, start + count))
    values = []
    for x in points:
        mat = [[_eval_dense(dense[r][c], x) for c in range(n)] for r in range(n)]
        values.append(_det_bareiss(mat))

    bound = 1
    for c in range(n):
        s = sum(rows[r][c].norm1() for r in range(n))
        bound *= max(s, 1)
    prime = _mersenne_prime_above(2 * bound + 1)
    coeffs = _interpolate_integer(points, values, prime)
    return LaurentPolynomial.from_dict(
        {k + shift: c for k, c in enumerate(coeffs) if c != 0}
    )


def _dense_shifted(p: LaurentPolynomial, lo: int) -> list[int]:
    if p.is_zero:
        return [0]
    out = [0] * (p.max_exp() - lo + 1)
    for e, c in p.coeffs:
        out[e - lo] = c
    return out


def _eval_dense(coeffs: list[int], x: int) -> int:
    total = 0
    for c in reversed(coeffs):
        total = total * x + c
    return total


def _interpolate_integer(points: list[int], values: list[int], prime: int) -> list[int]:
    """Coefficients of the unique integer polynomial through the samples.

    Points must be consecutive integers.  Finite differences give the
    Newton coefficients exactly; the binomial-to-monomial conversion runs
    modulo ``prime`` and the result is lifted to symmetric residues.
    """
    count = len(points)
    diffs = list(values)
    newton = [diffs[0]]
    for k in range(1, count):
        diffs = [diffs[i + 1] - diffs[i] for i in range(len(diffs) - 1)]
        newton.append(diffs[0])

    # P(x) = sum_k newton[k] * C(x - x0, k); accumulate monomial coefficients mod prime.
    x0 = points[0]
    out = [0] * count
    basis = [1] + [0] * (count - 1)  # falling-factorial / k! basis polynomial
    for k in range(count):
        nk = newton[k] % prime
        if nk:
            for j in range(k + 1):
                out[j] = (out[j] + nk * basis[j]) % prime
        if k + 1 < count:
            # basis *= (x - (x0 + k)) / (k + 1)
            root = (x0 + k) % prime
            inv = pow(k + 1, -1, prime)
            new_basis = [0] * count
            for j in range(k + 1):
                if basis[j]:
                    new_basis[j + 1] = (new_basis[j + 1] + basis[j]) % prime
                    new_basis[j] = (new_basis[j] - basis[j] * root) % prime
            basis = [(b * inv) % prime for b in new_basis]
    half = prime // 2
    return [c - prime if c > half else c for c in out]
