"""Exact representations of the entire functions the operators act on.

Four variants are closed under the operations needed here:

* :class:`Poly` -- a complex polynomial;
* :class:`ExpPoly` -- ``p(z) * exp(q(z))`` with ``deg q >= 1``;
* :class:`VolterraImage` -- ``z -> int_0^z f(w) g'(w) dw`` kept lazy;
* :class:`ResolventImage` -- the solution of ``lam*y - V_{g1} y = h``.

Derivatives of the two lazy variants are sums of polynomial multiples of
known functions, represented by :class:`PolyCombination`.

Values are produced in *scaled* form ``(v, s)`` with ``f(z) = v * exp(s)``
so that weighted moduli can be formed in log space without overflow.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from ._backend import core
from .config import DEFAULT, QuadConfig
from .planequad import segment_scaled

#: tolerance on ``|alpha| - 1/2`` when deciding the quadratic boundary case
BOUNDARY_TOL = 1e-12


class ComplexPolynomial:
    """Polynomial with complex coefficients in ascending degree."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Sequence[complex] = ()):
        c = [complex(x) for x in coeffs]
        for x in c:
            if not (math.isfinite(x.real) and math.isfinite(x.imag)):
                raise ValueError("polynomial coefficients must be finite")
        while c and c[-1] == 0:
            c.pop()
        self.coeffs = tuple(c)

    @classmethod
    def monomial(cls, n: int, c: complex = 1.0) -> "ComplexPolynomial":
        return cls([0] * n + [c])

    @property
    def degree(self) -> int:
        """Degree, with ``-1`` for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def coef(self, k: int) -> complex:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else 0j

    def array(self) -> np.ndarray:
        return np.array(self.coeffs, dtype=complex)

    def __call__(self, z):
        if not self.coeffs:
            return np.zeros_like(np.asarray(z, dtype=complex)) if np.ndim(z) else 0j
        if np.ndim(z):
            return core.horner(self.array(), np.asarray(z, dtype=complex))
        return complex(np.ravel(core.horner(self.array(), np.asarray([z], dtype=complex)))[0])

    def derivative(self) -> "ComplexPolynomial":
        return ComplexPolynomial([k * c for k, c in enumerate(self.coeffs)][1:])

    def antiderivative(self) -> "ComplexPolynomial":
        """Antiderivative vanishing at 0."""
        return ComplexPolynomial([0] + [c / (k + 1) for k, c in enumerate(self.coeffs)])

    def __add__(self, other):
        other = as_poly(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return ComplexPolynomial([self.coef(k) + other.coef(k) for k in range(n)])

    __radd__ = __add__

    def __neg__(self):
        return ComplexPolynomial([-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-as_poly(other))

    def __mul__(self, other):
        if isinstance(other, (int, float, complex, np.number)):
            return ComplexPolynomial([c * other for c in self.coeffs])
        other = as_poly(other)
        if self.is_zero() or other.is_zero():
            return ComplexPolynomial()
        return ComplexPolynomial(np.convolve(self.array(), other.array()))

    __rmul__ = __mul__

    def __truediv__(self, c):
        return ComplexPolynomial([x / c for x in self.coeffs])

    def __eq__(self, other):
        return isinstance(other, ComplexPolynomial) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def allclose(self, other, rtol=1e-12, atol=1e-14) -> bool:
        other = as_poly(other)
        n = max(len(self.coeffs), len(other.coeffs))
        a = np.array([self.coef(k) for k in range(n)])
        b = np.array([other.coef(k) for k in range(n)])
        return bool(np.allclose(a, b, rtol=rtol, atol=atol))

    def log_bound(self, r):
        """Upper bound for ``log max_{|z|=r} |p(z)|``."""
        r = np.asarray(r, dtype=float)
        if not self.coeffs:
            return np.full_like(r, -745.0)
        mags = np.abs(self.array())
        with np.errstate(divide="ignore"):
            return np.log(np.polynomial.polynomial.polyval(r, mags))

    def __repr__(self):
        return f"ComplexPolynomial({list(self.coeffs)!r})"


def as_poly(x) -> ComplexPolynomial:
    if isinstance(x, ComplexPolynomial):
        return x
    if isinstance(x, (int, float, complex, np.number)):
        return ComplexPolynomial([x])
    return ComplexPolynomial(x)


# --------------------------------------------------------------------------
# growth classification

@dataclass(frozen=True)
class ExpType:
    """Asymptotic type ``|f(z)| <~ r^pdeg exp(quad r^2 + lin r)`` (qdeg <= 2)."""

    qdeg: int
    quad: float = 0.0
    lin: float = 0.0
    pdeg: int = 0
    direction: float | None = None

    def join(self, other: "ExpType") -> "ExpType":
        if self.qdeg != other.qdeg:
            hi, lo = (self, other) if self.qdeg > other.qdeg else (other, self)
            return ExpType(hi.qdeg, hi.quad, hi.lin + lo.lin, max(hi.pdeg, lo.pdeg), hi.direction)
        hi = self if self.quad >= other.quad else other
        return ExpType(self.qdeg, hi.quad, max(self.lin, other.lin),
                       max(self.pdeg, other.pdeg), hi.direction)

    def with_pdeg(self, extra: int) -> "ExpType":
        return ExpType(self.qdeg, self.quad, self.lin, self.pdeg + max(extra, 0), self.direction)

    def status(self) -> str:
        if self.qdeg >= 3:
            return "infinite"
        if self.qdeg <= 1:
            return "finite"
        if self.quad < 0.5 - BOUNDARY_TOL:
            return "finite"
        if self.quad > 0.5 + BOUNDARY_TOL:
            return "infinite"
        return "boundary"


@dataclass(frozen=True)
class GrowthInfo:
    """Symbolic finiteness decision for ``sup |f| e^{-psi_m}`` plus a radial bound."""

    status: str
    report: str
    log_bound: Callable
    rigorous: bool = True
    direction: float | None = None
    sup_value: float | None = None


@dataclass(frozen=True)
class Membership:
    """Outcome of :func:`exp_poly_membership`."""

    status: str  # "member" | "nonmember" | "boundary-directional"
    reason: str
    report: dict = field(default_factory=dict)

    @property
    def is_member(self) -> bool:
        return self.status == "member"


def exp_poly_membership(p, q, m: int) -> Membership:
    """Decide whether ``p(z) e^{q(z)}`` lies in the growth space ``F^inf_{psi_m}``.

    The verdict is read off the degree and the leading coefficients of ``q``.
    On the circle ``|alpha| = 1/2`` (``alpha`` the quadratic coefficient) the
    exponent ``Re q(z) - |z|^2/2`` is flat along the two maximizing rays, and
    the linear coefficient, ``m`` and ``deg p`` decide. When the linear
    coefficient is perpendicular to those rays the supremum is finite but
    only approached along curved paths; that tie is reported as
    ``boundary-directional``.
    """
    p, q = as_poly(p), as_poly(q)
    m = int(m)
    if p.is_zero() or q.degree <= 1:
        return Membership("member", "exponent has degree <= 1", {"qdeg": max(q.degree, 0)})
    d = q.degree
    lead = q.coef(d)
    if d >= 3:
        theta = -np.angle(lead) / d
        return Membership(
            "nonmember",
            f"exponent of degree {d} outgrows |z|^2/2",
            {"qdeg": d, "direction": float(theta), "growth": f"{abs(lead):.6g} r^{d}"},
        )
    alpha = lead
    a = abs(alpha)
    theta0 = float(-np.angle(alpha) / 2)
    if a < 0.5 - BOUNDARY_TOL:
        return Membership("member", f"|alpha| = {a:.6g} < 1/2", {"qdeg": 2, "alpha": a})
    if a > 0.5 + BOUNDARY_TOL:
        return Membership(
            "nonmember",
            f"|alpha| = {a:.6g} > 1/2",
            {"qdeg": 2, "alpha": a, "direction": theta0, "growth": f"{a - 0.5:.6g} r^2"},
        )
    beta = q.coef(1)
    dirs = [theta0, theta0 + math.pi]
    drift = [float((beta * np.exp(1j * t)).real) for t in dirs]
    perp = abs(beta) ** 2 - drift[0] ** 2
    rep = {"qdeg": 2, "alpha": a, "directions": dirs, "linear_drift": drift}
    j = int(np.argmax(drift))
    if drift[j] > BOUNDARY_TOL:
        rep.update(direction=dirs[j], growth=f"exp({drift[j]:.6g} r) along the flat ray")
        return Membership("nonmember", "|alpha| = 1/2 with positive linear drift", rep)
    if m >= 1:
        rep.update(direction=theta0, growth=f"(1+r)^{m} along the flat ray")
        return Membership("nonmember", "|alpha| = 1/2 and m >= 1: log-weight unbounded", rep)
    if p.degree >= 1:
        rep.update(direction=theta0, growth=f"r^{p.degree} along the flat ray")
        return Membership("nonmember", "|alpha| = 1/2, m = 0 and nonconstant prefactor", rep)
    sup = abs(p.coef(0)) * math.exp(q.coef(0).real + max(perp, 0.0) / 4)
    rep.update(sup=sup)
    if abs(beta) <= BOUNDARY_TOL:
        return Membership("member", "|alpha| = 1/2, m = 0, no linear term: exponent flat", rep)
    rep.update(note="supremum approached along curved paths, not attained")
    return Membership("boundary-directional", "|alpha| = 1/2, linear term perpendicular to flat rays", rep)


def exp_poly_lp_finite(p, q, m: int) -> bool:
    """Integrability of ``|p e^q|^s e^{-s psi_m}`` for finite exponents ``s``."""
    p, q = as_poly(p), as_poly(q)
    if p.is_zero() or q.degree <= 1:
        return True
    if q.degree >= 3:
        return False
    # on |alpha| = 1/2 the flat rays carry a nonintegrable r dr mass
    return abs(q.coef(2)) < 0.5 - BOUNDARY_TOL


# --------------------------------------------------------------------------
# function variants

class EntireFunction:
    """Base of the tagged union; subclasses are immutable."""

    kind = "abstract"

    def scaled(self, z, cfg: QuadConfig = DEFAULT):
        raise NotImplementedError

    def evaluate(self, z, cfg: QuadConfig = DEFAULT):
        v, s = self.scaled(np.asarray(z, dtype=complex), cfg)
        with np.errstate(over="ignore", invalid="ignore"):
            out = v * np.exp(s)
        return out if np.ndim(z) else complex(out)

    __call__ = evaluate

    def logabs(self, z, cfg: QuadConfig = DEFAULT):
        v, s = self.scaled(np.asarray(z, dtype=complex), cfg)
        with np.errstate(divide="ignore"):
            return np.log(np.abs(v)) + s

    def derivative(self) -> "EntireFunction":
        raise NotImplementedError

    def at_zero(self) -> complex:
        raise NotImplementedError

    def exp_type(self) -> ExpType:
        raise NotImplementedError

    def exp_form(self):
        """``(p, q)`` coefficient arrays when the function is ``p e^q``, else None."""
        return None

    def lp_finite(self, m: int) -> bool:
        return self.exp_type().status() == "finite"

    def growth_info(self, m: int) -> GrowthInfo:
        t = self.exp_type()
        status = t.status()
        return GrowthInfo(
            status,
            f"asymptotic type r^{t.pdeg} exp({t.quad:.6g} r^2 + {t.lin:.6g} r), exponent degree {t.qdeg}",
            _heuristic_bound(self, t),
            rigorous=False,
            direction=t.direction,
        )

    def angular_degree(self) -> int:
        return self.exp_type().pdeg

    # arithmetic helpers
    def times_poly(self, poly) -> "EntireFunction":
        poly = as_poly(poly)
        if poly.is_zero():
            return Poly(ComplexPolynomial())
        if poly.degree == 0 and poly.coef(0) == 1:
            return self
        return PolyCombination(((poly, self),))

    def scale(self, c: complex) -> "EntireFunction":
        return self.times_poly(ComplexPolynomial([c]))


def _heuristic_bound(f: EntireFunction, t: ExpType):
    """Type-shaped bound fitted to samples; checked a posteriori by the search."""
    rs = np.array([0.5, 1.0, 2.0, 3.0])
    th = 2 * np.pi * np.arange(16) / 16
    z = rs[:, None] * np.exp(1j * th)[None, :]
    shape = lambda r: t.pdeg * np.log1p(r) + t.quad * np.asarray(r) ** 2 + t.lin * np.asarray(r)
    vals = np.asarray(f.logabs(z), dtype=float).max(axis=1)
    vals = np.where(np.isfinite(vals), vals, -745.0)
    c = float(np.max(vals - shape(rs))) + 1.0
    return lambda r: c + shape(r)


class Poly(EntireFunction):
    kind = "poly"

    def __init__(self, p):
        self.p = as_poly(p)

    def scaled(self, z, cfg=DEFAULT):
        z = np.asarray(z, dtype=complex)
        return np.asarray(self.p(z), dtype=complex), np.zeros(z.shape)

    def derivative(self):
        return Poly(self.p.derivative())

    def at_zero(self):
        return self.p.coef(0)

    def exp_type(self):
        return ExpType(0, 0.0, 0.0, max(self.p.degree, 0))

    def exp_form(self):
        return self.p.array(), np.zeros(0, dtype=complex)

    def lp_finite(self, m):
        return True

    def growth_info(self, m):
        return GrowthInfo("finite", "polynomial", self.p.log_bound)

    def times_poly(self, poly):
        return Poly(self.p * as_poly(poly))

    def __repr__(self):
        return f"Poly({list(self.p.coeffs)})"


class ExpPoly(EntireFunction):
    kind = "exppoly"

    def __init__(self, p, q):
        self.p = as_poly(p)
        self.q = as_poly(q)
        if self.q.degree < 1:
            raise ValueError("ExpPoly needs a nonconstant exponent; use exp_poly()")

    def scaled(self, z, cfg=DEFAULT):
        z = np.asarray(z, dtype=complex)
        qv = np.asarray(self.q(z), dtype=complex)
        v = np.asarray(self.p(z), dtype=complex) * np.exp(1j * qv.imag)
        return v, qv.real

    def derivative(self):
        return exp_poly(self.p.derivative() + self.p * self.q.derivative(), self.q)

    def at_zero(self):
        return self.p.coef(0) * complex(np.exp(self.q.coef(0)))

    def exp_type(self):
        d = self.q.degree
        lead = self.q.coef(d)
        direction = float(-np.angle(lead) / d)
        quad = abs(self.q.coef(2)) if d == 2 else (abs(lead) if d > 2 else 0.0)
        return ExpType(d, quad, abs(self.q.coef(1)), max(self.p.degree, 0), direction)

    def exp_form(self):
        return self.p.array(), self.q.array()

    def membership(self, m):
        return exp_poly_membership(self.p, self.q, m)

    def lp_finite(self, m):
        return exp_poly_lp_finite(self.p, self.q, m)

    def growth_info(self, m):
        mem = self.membership(m)
        rep = mem.report
        text = mem.reason + (f"; growth {rep['growth']}" if "growth" in rep else "")
        status = {"member": "finite", "nonmember": "infinite"}.get(mem.status, "boundary")
        c0 = self.q.coef(0).real
        mags = np.abs(self.q.array()[1:])

        def bound(r):
            r = np.asarray(r, dtype=float)
            return self.p.log_bound(r) + c0 + np.polynomial.polynomial.polyval(r, np.concatenate([[0.0], mags]))

        return GrowthInfo(status, text, bound, True, rep.get("direction"), rep.get("sup"))

    def angular_degree(self):
        return max(self.p.degree, 0) + self.q.degree

    def times_poly(self, poly):
        return exp_poly(self.p * as_poly(poly), self.q)

    def __repr__(self):
        return f"ExpPoly(p={list(self.p.coeffs)}, q={list(self.q.coeffs)})"


def exp_poly(p, q) -> EntireFunction:
    """``p e^q``, folding a constant exponent into the prefactor."""
    p, q = as_poly(p), as_poly(q)
    if p.is_zero():
        return Poly(ComplexPolynomial())
    if q.degree < 1:
        return Poly(p * complex(np.exp(q.coef(0))))
    return ExpPoly(p, q)


def multiply(f: EntireFunction, g: EntireFunction) -> EntireFunction:
    """Product of two functions of closed form (Poly or ExpPoly)."""
    ff, gf = f.exp_form(), g.exp_form()
    if ff is None or gf is None:
        raise TypeError("multiply() needs Poly or ExpPoly operands")
    return exp_poly(as_poly(ff[0]) * as_poly(gf[0]), as_poly(ff[1]) + as_poly(gf[1]))


class VolterraImage(EntireFunction):
    """``z -> int_0^z f(w) g'(w) dw`` for non-polynomial ``f``."""

    kind = "volterra"

    def __init__(self, f: EntireFunction, gprime):
        self.f = f
        self.gprime = as_poly(gprime)

    def scaled(self, z, cfg=DEFAULT):
        z = np.asarray(z, dtype=complex)
        gp = self.gprime

        def integrand(w, idx):
            v, s = self.f.scaled(w, cfg)
            return v * gp(w), s

        return segment_scaled(integrand, np.zeros_like(z), z, cfg)

    def derivative(self):
        return self.f.times_poly(self.gprime)

    def at_zero(self):
        return 0j

    def exp_type(self):
        return self.f.exp_type().with_pdeg(self.gprime.degree + 1)

    def __repr__(self):
        return f"VolterraImage({self.f!r}, gprime={list(self.gprime.coeffs)})"


class ResolventImage(EntireFunction):
    """Solution of ``lam*y - V_{g1} y = h``::

        y(z) = (1/lam) [h(0) e^{g1(z)/lam} + int_0^z e^{(g1(z)-g1(w))/lam} h'(w) dw]
    """

    kind = "resolvent"

    def __init__(self, g1, lam: complex, h: EntireFunction):
        lam = complex(lam)
        if lam == 0:
            raise ValueError("lambda = 0 lies in the spectrum; no resolvent")
        g1 = as_poly(g1)
        # V_g only sees g', so the constant term is dropped
        self.g1 = g1 - ComplexPolynomial([g1.coef(0)])
        self.lam = lam
        self.h = h
        self._hprime = h.derivative()
        self._h0 = h.at_zero()

    def scaled(self, z, cfg=DEFAULT):
        z = np.asarray(z, dtype=complex)
        shape = z.shape
        zf = z.ravel()
        lam, g1 = self.lam, self.g1
        gz = np.asarray(g1(zf), dtype=complex) / lam
        hp = self._hprime

        def integrand(w, idx):
            v, s = hp.scaled(w, cfg)
            e = gz[idx, None] - np.asarray(g1(w), dtype=complex) / lam
            return v * np.exp(1j * e.imag), s + e.real

        I, MI = segment_scaled(integrand, np.zeros_like(zf), zf, cfg)
        s1 = gz.real
        v1 = self._h0 * np.exp(1j * gz.imag)
        M = np.maximum(s1, MI)
        v = (v1 * np.exp(s1 - M) + I * np.exp(MI - M)) / lam
        return v.reshape(shape), M.reshape(shape)

    def derivative(self):
        # from lam*y' - g1'*y = h'
        terms = [(self.g1.derivative() / self.lam, self)]
        return PolyCombination(tuple(terms) + _as_terms(self._hprime, 1 / self.lam))

    def at_zero(self):
        return self._h0 / self.lam

    def exp_type(self):
        own = exp_poly([1.0], self.g1 / self.lam).exp_type()
        return own.join(self.h.exp_type()).with_pdeg(1)

    def __repr__(self):
        return f"ResolventImage(g1={list(self.g1.coeffs)}, lam={self.lam!r}, h={self.h!r})"


def _as_terms(f: EntireFunction, c: complex = 1.0):
    if isinstance(f, PolyCombination):
        return tuple((p * c, g) for p, g in f.terms)
    return ((ComplexPolynomial([c]), f),)


class PolyCombination(EntireFunction):
    """``sum_i p_i(z) F_i(z)`` with polynomial multipliers."""

    kind = "combination"

    def __init__(self, terms):
        flat = []
        for p, f in terms:
            p = as_poly(p)
            if p.is_zero():
                continue
            if isinstance(f, PolyCombination):
                flat.extend((p * q, g) for q, g in f.terms)
            else:
                flat.append((p, f))
        self.terms = tuple(flat)

    def scaled(self, z, cfg=DEFAULT):
        z = np.asarray(z, dtype=complex)
        if not self.terms:
            return np.zeros(z.shape, dtype=complex), np.zeros(z.shape)
        parts = [(np.asarray(p(z), dtype=complex) * v, s)
                 for p, f in self.terms for v, s in [f.scaled(z, cfg)]]
        M = np.max(np.stack([np.broadcast_to(s, z.shape) for _, s in parts]), axis=0)
        v = sum(v * np.exp(s - M) for v, s in parts)
        return v, M

    def derivative(self):
        out = []
        for p, f in self.terms:
            out.append((p.derivative(), f))
            out.append((p, f.derivative()))
        return PolyCombination(out)

    def at_zero(self):
        return sum((p.coef(0) * f.at_zero() for p, f in self.terms), 0j)

    def exp_type(self):
        types = [f.exp_type().with_pdeg(p.degree) for p, f in self.terms]
        if not types:
            return ExpType(0)
        out = types[0]
        for t in types[1:]:
            out = out.join(t)
        return out

    def times_poly(self, poly):
        poly = as_poly(poly)
        return PolyCombination(tuple((p * poly, f) for p, f in self.terms))

    def __repr__(self):
        return f"PolyCombination({list(self.terms)!r})"


# --------------------------------------------------------------------------
# operations

def evaluate(f: EntireFunction, z, cfg: QuadConfig = DEFAULT):
    return f.evaluate(z, cfg)


def differentiate(f: EntireFunction) -> EntireFunction:
    return f.derivative()


def volterra_apply(g, f: EntireFunction) -> EntireFunction:
    """``V_g f (z) = int_0^z f(w) g'(w) dw``; exact for polynomial ``f``."""
    gp = as_poly(g).derivative()
    if gp.is_zero():
        return Poly(ComplexPolynomial())
    if isinstance(f, Poly):
        return Poly((f.p * gp).antiderivative())
    return VolterraImage(f, gp)


def resolvent_apply(g1, lam: complex, h: EntireFunction) -> EntireFunction:
    """``(lam I - V_{g1})^{-1} h``."""
    lam = complex(lam)
    if lam == 0:
        raise ValueError("lambda = 0 lies in the spectrum of every V_g; not invertible")
    g1 = as_poly(g1)
    g1 = g1 - ComplexPolynomial([g1.coef(0)])
    if g1.degree < 1:
        return h.scale(1 / lam) if not isinstance(h, Poly) else Poly(h.p / lam)
    if isinstance(h, Poly) and h.p.degree <= 0:
        return exp_poly([h.p.coef(0) / lam], g1 / lam)
    return ResolventImage(g1, lam, h)
