"""Truncated q-series with fractional exponents: eta powers, characters, identities."""

import cmath
from fractions import Fraction
from math import ceil, gcd, isqrt, lcm

from .wzwrep import rho_S

__all__ = [
    "QSeries",
    "eta_inverse_cubed",
    "sigma1",
    "log_eta_expansion_check",
    "character",
    "verify_k1_identity",
    "verify_t_parametrization",
    "numeric_eval",
    "s_transform_check",
]


def _canonical(c):
    if isinstance(c, Fraction) and c.denominator == 1:
        return int(c)
    return c


class QSeries:
    """A truncated series sum of coeffs[j] * q^((offset + j)/den).

    The retained window is exact: every exponent from offset/den through
    (offset + truncation)/den has its true coefficient stored (zeros
    included), and nothing is claimed beyond it.  The leading coefficient is
    nonzero unless the series is identically zero, in which case the window
    is kept as bookkeeping.
    """

    __slots__ = ("den", "offset", "coeffs")

    def __init__(self, den, offset, coeffs):
        assert isinstance(den, int) and den >= 1
        assert coeffs, "empty coefficient window"
        coeffs = [_canonical(c) for c in coeffs]
        lead = 0
        while lead < len(coeffs) and coeffs[lead] == 0:
            lead += 1
        if lead == len(coeffs):
            lead = 0
        self.den = den
        self.offset = offset + lead
        self.coeffs = coeffs[lead:]

    @property
    def truncation(self):
        """Highest retained relative index."""
        return len(self.coeffs) - 1

    def end(self):
        """Grid index of the last retained exponent."""
        return self.offset + self.truncation

    def is_zero(self):
        """True when every retained coefficient vanishes."""
        return all(c == 0 for c in self.coeffs)

    def leading_exponent(self):
        return Fraction(self.offset, self.den)

    def end_exponent(self):
        return Fraction(self.end(), self.den)

    def _promoted(self, den):
        assert den % self.den == 0
        step = den // self.den
        if step == 1:
            return self
        coeffs = [0] * (self.truncation * step + 1)
        for j, c in enumerate(self.coeffs):
            coeffs[j * step] = c
        return QSeries(den, self.offset * step, coeffs)

    def shifted(self, delta):
        """Multiply by q^(delta/den)."""
        return QSeries(self.den, self.offset + delta, self.coeffs)

    def coefficient_at(self, exponent):
        """Coefficient of q^exponent; exponent must not exceed the window."""
        e = Fraction(exponent)
        if e < self.leading_exponent():
            return 0
        assert e <= self.end_exponent(), "exponent beyond the reliable window"
        idx = e * self.den - self.offset
        if idx.denominator != 1:
            return 0
        return self.coeffs[int(idx)]

    def table(self, count):
        """Coefficients at integer steps from the leading exponent."""
        lead = self.leading_exponent()
        return [self.coefficient_at(lead + j) for j in range(count)]

    def __add__(self, other):
        if not isinstance(other, QSeries):
            return NotImplemented
        den = lcm(self.den, other.den)
        a, b = self._promoted(den), other._promoted(den)
        offset = min(a.offset, b.offset)
        end = min(a.end(), b.end())
        assert end >= offset, "addition windows do not overlap"
        coeffs = [0] * (end - offset + 1)
        for src in (a, b):
            for j, c in enumerate(src.coeffs):
                pos = src.offset + j - offset
                if 0 <= pos < len(coeffs):
                    coeffs[pos] += c
        return QSeries(den, offset, coeffs)

    def __neg__(self):
        return QSeries(self.den, self.offset, [-c for c in self.coeffs])

    def __sub__(self, other):
        if not isinstance(other, QSeries):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                return QSeries(self.den, self.offset, [0] * len(self.coeffs))
            return QSeries(self.den, self.offset, [c * other for c in self.coeffs])
        if not isinstance(other, QSeries):
            return NotImplemented
        den = lcm(self.den, other.den)
        a, b = self._promoted(den), other._promoted(den)
        rel_end = min(a.truncation, b.truncation)
        coeffs = [0] * (rel_end + 1)
        terms_a = [(j, c) for j, c in enumerate(a.coeffs) if c != 0 and j <= rel_end]
        terms_b = [(j, c) for j, c in enumerate(b.coeffs) if c != 0 and j <= rel_end]
        if len(terms_a) > len(terms_b):
            terms_a, terms_b = terms_b, terms_a
        for u, cu in terms_a:
            for v, cv in terms_b:
                if u + v > rel_end:
                    break
                coeffs[u + v] += cu * cv
        return QSeries(den, a.offset + b.offset, coeffs)

    __rmul__ = __mul__

    def __pow__(self, k):
        assert isinstance(k, int) and k >= 1
        out = self
        for bit in bin(k)[3:]:
            out = out * out
            if bit == "1":
                out = out * self
        return out

    def __eq__(self, other):
        if not isinstance(other, QSeries):
            return NotImplemented
        return (self.den, self.offset, self.coeffs) == (other.den, other.offset, other.coeffs)

    def __str__(self):
        parts = []
        for j, c in enumerate(self.coeffs):
            if c == 0:
                continue
            mag = c if not parts else abs(c)
            if j == 0:
                term = f"{mag}"
            else:
                r = Fraction(j, self.den)
                term = f"{mag} q^{r.numerator if r.denominator == 1 else f'({r})'}"
            if parts:
                parts.append("+" if (c > 0) else "-")
            parts.append(term)
        body = " ".join(parts) if parts else "0"
        lead = self.leading_exponent()
        if lead == 0:
            return body
        return f"q^({lead}) * ({body})"

    def to_dict(self):
        """Serializable form {denominator, offset, coeffs}."""
        return {
            "denominator": self.den,
            "offset": self.offset,
            "coeffs": [c if isinstance(c, int) else str(c) for c in self.coeffs],
        }


def _descending_product_coeffs(truncation):
    """Coefficients of prod_{m>=1} (1 - q^m) through q^truncation."""
    poly = [0] * (truncation + 1)
    poly[0] = 1
    for m in range(1, truncation + 1):
        for j in range(truncation, m - 1, -1):
            poly[j] -= poly[j - m]
    return poly


def eta_inverse_cubed(truncation):
    """The series 1/prod(1-q^m)^3 through q^truncation (no q^(1/8) prefactor)."""
    assert truncation >= 0
    f = _descending_product_coeffs(truncation)
    inv = [0] * (truncation + 1)
    inv[0] = 1
    for k in range(1, truncation + 1):
        inv[k] = -sum(f[j] * inv[k - j] for j in range(1, k + 1))
    sq = [sum(inv[j] * inv[k - j] for j in range(k + 1)) for k in range(truncation + 1)]
    cube = [sum(sq[j] * inv[k - j] for j in range(k + 1)) for k in range(truncation + 1)]
    return QSeries(1, 0, cube)


def sigma1(m):
    """Sum of the divisors of m."""
    assert isinstance(m, int) and m >= 1
    total = 0
    for d in range(1, isqrt(m) + 1):
        if m % d == 0:
            total += d
            if d != m // d:
                total += m // d
    return total


def log_eta_expansion_check(truncation):
    """Verify -ln prod(1-q^m) = sum sigma1(k) q^k / k termwise through q^truncation."""
    assert truncation >= 1
    f = _descending_product_coeffs(truncation)
    # g = -ln f satisfies f g' = -f', solved coefficient by coefficient
    g = [Fraction(0)] * (truncation + 1)
    for k in range(1, truncation + 1):
        acc = Fraction(-k * f[k])
        for j in range(1, k):
            acc -= f[j] * (k - j) * g[k - j]
        g[k] = acc / k
        if g[k] != Fraction(sigma1(k), k):
            return False
    return True


def character(lam, n, truncation):
    """The level n-2 character with shifted weight lam, reliable through q^truncation."""
    assert 1 <= lam <= n - 1 and truncation >= 0
    D = 24 * n
    cutoff = ceil((4 * n * (truncation + 1)) ** 0.5)
    offset = 6 * lam * lam
    end = D * (truncation + 1)
    coeffs = [0] * (end - offset + 1)
    x = lam
    while x <= cutoff:
        if 6 * x * x <= end:
            coeffs[6 * x * x - offset] += x
        x += 2 * n
    x = lam - 2 * n
    while x >= -cutoff:
        if 6 * x * x <= end:
            coeffs[6 * x * x - offset] += x
        x -= 2 * n
    theta = QSeries(D, offset, coeffs)
    # the eta prefactor contributes q^(-1/8) = a grid shift by -3n
    return (theta * eta_inverse_cubed(truncation + 2)).shifted(-3 * n)


def verify_k1_identity(truncation):
    """Check chi1 chi2 (chi1^4 - chi2^4) = 2 as a series through q^truncation."""
    assert truncation >= 0
    chi1 = character(1, 3, truncation + 3)
    chi2 = character(2, 3, truncation + 3)
    p = chi1 * chi2 * (chi1**4 - chi2**4)
    if p.end_exponent() < truncation:
        return False
    if p.leading_exponent() != 0 or p.coeffs[0] != 2:
        return False
    return all(c == 0 for c in p.coeffs[1:])


def verify_t_parametrization(truncation):
    """Check t chi1^8 - 2 chi1^4 - t^5 = 0 (t = chi1 chi2) through q^truncation."""
    assert truncation >= 0
    chi1 = character(1, 3, truncation + 4)
    chi2 = character(2, 3, truncation + 4)
    t = chi1 * chi2
    e = t * chi1**8 - 2 * chi1**4 - t**5
    return e.end_exponent() >= truncation and e.is_zero()


def numeric_eval(s, tau):
    """Evaluate the series at q^(1/D) = e(tau/D); tau in the upper half plane."""
    assert isinstance(s, QSeries)
    tau = complex(tau)
    assert tau.imag > 0, "tau must lie in the upper half plane"
    total = 0j
    for j, c in enumerate(s.coeffs):
        if c != 0:
            total += complex(c) * cmath.exp(2j * cmath.pi * tau * (s.offset + j) / s.den)
    return total


def s_transform_check(n, tau, truncation=400, tol=1e-8):
    """Check chi(-1/tau) = rho(S) chi(tau) numerically for all weights at level n-2."""
    assert tol > 0
    tau = complex(tau)
    stau = -1 / tau
    assert tau.imag > 0 and stau.imag > 0
    chars = [character(lam, n, truncation) for lam in range(1, n)]
    smat = rho_S(n).to_floats()
    worst = 0.0
    for a in range(n - 1):
        lhs = numeric_eval(chars[a], stau)
        rhs = sum(smat[a, b] * numeric_eval(chars[b], tau) for b in range(n - 1))
        worst = max(worst, abs(lhs - rhs))
    return worst < tol
