"""Contour-integral oracles for the difference sequences.

Two families:

* `rice_integral` evaluates the residue-sum-as-line-integral representation

      (-1)^(n-1) (1/pi) Int_0^inf Re[ phi(c+it) K_n(c+it) ] dt,
      K_n(s) = n! / (s (s-1) ... (s-n)),

  with phi = zeta on c in (1,2) giving delta_n, phi = zeta on c = -1/2
  giving b_n (the poles at s=0 and s=1 crossed by moving the line are what
  turn delta into b), and phi = 1/zeta on c in (1,2) giving d_n.

* `saddle_contour_integral` evaluates b_n = -(2/pi) Im Int_C F(s) ds with

      F(s) = (2 pi)^(-s-1) sin(pi s/2) zeta(1+s)
             * n! Gamma(s+1) Gamma(s) / Gamma(s+n+1)

  along a contour C that starts on the real axis, runs up-left along the
  steepest-descent slant through the saddle sigma = (1+i) sqrt(pi n)
  (direction e^(5 i pi/8); the slant crosses the axis at exactly
  sqrt(2 pi n)), and finishes with a vertical ray once Re s has dropped
  to c1 sqrt(n).

Quadrature is composite Gauss-Legendre with cached nodes, panels graded
geometrically from the start of each interval (the integrands peak at the
start and decay fast), pairwise summation of panel contributions, and a
panel-doubling error estimate.  Truncation heights come from explicit tail
bounds; a user-supplied height that cannot meet the tolerance raises
TruncationBoundError rather than returning a silently wrong value.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass

import mpmath
from mpmath import mpf, mpc, workdps

from . import mpcore
from .asymptotics import envelope_bound
from .differences import _binomials
from .errors import DomainError, TruncationBoundError
from .precision import PrecisionBudget

SQRT_PI = math.sqrt(math.pi)

RICE_KINDS = ("zeta-right", "zeta-left", "inv-zeta")

_MAX_RICE_N = 100
_MAX_TARGET = 30


@dataclass(frozen=True)
class ContourSpec:
    """Contour geometry; `vertical` is a Rice line, `fig1-saddle` the slant path."""

    kind: str = "vertical"
    c: float | None = None
    c1: float = 1.0
    c2: float = 3.0
    T: float | None = None
    panels: int | None = None
    degree: int = 32

    def __post_init__(self):
        if self.kind not in ("vertical", "fig1-saddle"):
            raise DomainError(f"unknown contour kind {self.kind!r}")
        if self.kind == "fig1-saddle":
            if not (0 < self.c1 < SQRT_PI < self.c2 < 2 * SQRT_PI):
                raise DomainError(
                    "fig1-saddle needs 0 < c1 < sqrt(pi) < c2 < 2 sqrt(pi), "
                    f"got c1={self.c1}, c2={self.c2}"
                )
        if self.T is not None and not self.T > 0:
            raise DomainError(f"truncation height must be positive, got {self.T}")
        if self.panels is not None and self.panels < 1:
            raise DomainError(f"panel count must be >= 1, got {self.panels}")
        if self.degree < 2 or self.degree > 256:
            raise DomainError(f"Gauss-Legendre degree must be in 2..256, got {self.degree}")


@dataclass(frozen=True)
class PieceContribution:
    name: str
    value: mpc


@dataclass(frozen=True)
class QuadratureResult:
    value: mpf
    error_estimate: mpf
    truncation_height: mpf
    truncation_bound: mpf
    pieces: tuple


# cached Gauss-Legendre rules keyed by degree; recomputed if the cached
# precision is below the requested one
_GL_CACHE: dict = {}


def legendre_rule(degree: int, working: int):
    """Nodes and weights of degree-point Gauss-Legendre on [-1, 1]."""
    if degree < 2:
        raise DomainError(f"need degree >= 2, got {degree}")
    cached = _GL_CACHE.get(degree)
    if cached is not None and cached[0] >= working:
        return cached[1]
    dps = working + 10
    with workdps(dps):
        nodes = []
        for i in range(1, degree + 1):
            # Newton iteration from the Chebyshev-like initial guess
            x = mpmath.cos(mpmath.pi * (i - mpf("0.25")) / (degree + mpf("0.5")))
            for _ in range(60):
                p0, p1 = mpf(1), x
                for k in range(2, degree + 1):
                    p0, p1 = p1, ((2 * k - 1) * x * p1 - (k - 1) * p0) / k
                dp = degree * (x * p1 - p0) / (x * x - 1)
                dx = p1 / dp
                x = x - dx
                if abs(dx) < mpf(10) ** (-dps):
                    break
            p0, p1 = mpf(1), x
            for k in range(2, degree + 1):
                p0, p1 = p1, ((2 * k - 1) * x * p1 - (k - 1) * p0) / k
            dp = degree * (x * p1 - p0) / (x * x - 1)
            w = 2 / ((1 - x * x) * dp * dp)
            nodes.append((+x, +w))
    _GL_CACHE[degree] = (working, tuple(nodes))
    return _GL_CACHE[degree][1]


def _pairwise_sum(values: list):
    """Sum by pairwise reduction to keep rounding error O(log n) deep."""
    if not values:
        return mpf(0)
    vals = list(values)
    while len(vals) > 1:
        nxt = [vals[i] + vals[i + 1] for i in range(0, len(vals) - 1, 2)]
        if len(vals) % 2:
            nxt.append(vals[-1])
        vals = nxt
    return vals[0]


def _graded_boundaries(a, b, panels: int):
    """Panel boundaries on [a, b], widths doubling away from a."""
    a = mpf(a)
    b = mpf(b)
    denom = mpf(2) ** panels - 1
    return [a + (b - a) * (mpf(2) ** k - 1) / denom for k in range(panels + 1)]


def _uniform_boundaries(a, b, panels: int):
    a = mpf(a)
    b = mpf(b)
    return [a + (b - a) * mpf(k) / panels for k in range(panels + 1)]


def _gl_panel(f, a, b, rule):
    mid = (a + b) / 2
    half = (b - a) / 2
    terms = [w * f(mid + half * x) for x, w in rule]
    return half * _pairwise_sum(terms)


def _panel_record(f, a, b, rule_hi, rule_lo):
    """(value, error delta) for one panel from an embedded degree pair."""
    fine = _gl_panel(f, a, b, rule_hi)
    coarse = _gl_panel(f, a, b, rule_lo)
    return fine, abs(fine - coarse)


def _adaptive_quad(f, boundaries, rule_hi, rule_lo, tol_abs, max_panels=3000):
    """Composite GL with worst-first bisection until the summed embedded
    deltas drop below tol_abs (or the panel budget runs out; the returned
    error estimate stays honest either way)."""
    panels = {}
    heap = []
    serial = 0
    err = mpf(0)
    for a, b in zip(boundaries, boundaries[1:]):
        fine, delta = _panel_record(f, a, b, rule_hi, rule_lo)
        panels[serial] = (a, b, fine, delta)
        heapq.heappush(heap, (-delta, serial))
        err += delta
        serial += 1

    steps = 0
    while len(panels) < max_panels and heap and err > tol_abs:
        neg_delta, key = heapq.heappop(heap)
        rec = panels.get(key)
        if rec is None:
            continue
        a, b, _, delta = rec
        if delta <= tol_abs / (4 * max(1, len(panels))):
            break  # worst panel is already negligible; the rest are smaller
        mid = (a + b) / 2
        del panels[key]
        err -= delta
        for lo, hi in ((a, mid), (mid, b)):
            fine, dlt = _panel_record(f, lo, hi, rule_hi, rule_lo)
            panels[serial] = (lo, hi, fine, dlt)
            heapq.heappush(heap, (-dlt, serial))
            err += dlt
            serial += 1
        steps += 1
        if steps % 128 == 0:  # refresh the running error against drift
            err = _pairwise_sum([rec[3] for rec in panels.values()])

    ordered = sorted(panels.values(), key=lambda rec: (rec[0], rec[1]))
    value = _pairwise_sum([rec[2] for rec in ordered])
    err = _pairwise_sum([rec[3] for rec in ordered])
    return value, err


def _osc_boundaries(t0: float, T: float, freq, capacity: float):
    """Panel boundaries on [t0, T] with phase per panel near `capacity`.

    `freq(t)` estimates |d(phase)/dt| of the integrand; widths also stay
    below 4t so power-law magnitude variation stays resolved per panel.
    """
    bounds = [mpf(t0)]
    t = float(t0)
    while t < T:
        w = capacity / max(freq(t), 1e-2)
        w = min(w, 4 * max(t, 1.0), T - t)
        t = min(t + w, T)
        bounds.append(mpf(t))
    if len(bounds) < 2:
        bounds.append(mpf(T))
    return bounds


def _gl_capacity(degree: int) -> float:
    """Phase (radians) a degree-point GL panel absorbs at ~1e-14 accuracy."""
    return 0.7 * 2 * degree * 10 ** (-14.0 / (2 * degree))


def rice_sum_residues(phi, n0: int, n: int, prec=15):
    """Finite alternating binomial sum  sum_{k=n0}^{n} C(n,k) (-1)^k phi(k).

    This is the residue side of the line-integral representation; phi may
    return real or complex values.
    """
    if n < 0 or n0 < 0 or n0 > n:
        raise DomainError(f"need 0 <= n0 <= n, got n0={n0}, n={n}")
    working = prec.working_digits if isinstance(prec, PrecisionBudget) else int(prec) + 10
    with workdps(working):
        terms = []
        for k, cnk in _binomials(n):
            if k < n0:
                continue
            val = phi(k)
            sign = -1 if k % 2 else 1
            terms.append(mpmath.mpmathify(val) * (sign * cnk))
        total = _pairwise_sum(terms)
        return +total


def _rice_kernel(s, n: int, ln_fact):
    """n!/(s(s-1)...(s-n)) via exp(ln n!) / running product."""
    prod = mpc(1)
    for j in range(n + 1):
        prod *= s - j
    return mpmath.exp(ln_fact) / prod


def _line_freq(n: int, chi_phase: bool, ln_amp0: float, amp_slope: float, tol: float):
    """Float estimate of the integrand's local phase rate on a Rice line.

    Components: the reflection-factor phase ln(t/2pi) (left line only), the
    kernel's arctan drift <= (n+2)/t, and the highest Dirichlet frequency
    ln k whose k^(-3/2)-sized term is still above tol at height t.
    """
    ln_fact = math.lgamma(n + 1)
    ln_tol = math.log(tol)

    def freq(t: float) -> float:
        t = max(t, 1e-6)
        ln_kern = ln_fact - (n + 1) * math.log(t)
        ln_amp = ln_amp0 + amp_slope * math.log1p(t)
        ln_kmax = (2.0 / 3.0) * (ln_amp + ln_kern - ln_tol)
        base = abs(math.log(t / (2 * math.pi))) if chi_phase else 0.0
        return max(base, ln_kmax, 0.1) + (n + 2) / t

    return freq


def _line_data(kind: str, n: int, c, working: int):
    """Integrand f(t), tail bound, result scale, abscissa, frequency model."""
    with workdps(working):
        ln_fact = mpmath.loggamma(n + 1)
        if kind == "zeta-right":
            c = mpf("1.5") if c is None else mpf(c)
            if not (1 < c < 2):
                raise DomainError(f"zeta-right needs abscissa in (1,2), got {c}")
            zc = mpmath.zeta(c)

            def f(t):
                s = c + mpc(0, 1) * t
                return (mpmath.zeta(s) * _rice_kernel(s, n, ln_fact)).real

            def tail(T):
                return zc * mpmath.exp(ln_fact - n * mpmath.ln(T)) / n

            scale = max(mpf(1), n * mpmath.ln(n + 1))

            def freq_for(tol: float):
                return _line_freq(n, False, float(mpmath.ln(zc)), 0.0, tol)

        elif kind == "inv-zeta":
            c = mpf("1.5") if c is None else mpf(c)
            if not (1 < c < 2):
                raise DomainError(f"inv-zeta needs abscissa in (1,2), got {c}")
            bound = mpmath.zeta(c) / mpmath.zeta(2 * c)

            def f(t):
                s = c + mpc(0, 1) * t
                return (_rice_kernel(s, n, ln_fact) / mpmath.zeta(s)).real

            def tail(T):
                return bound * mpmath.exp(ln_fact - n * mpmath.ln(T)) / n

            scale = mpf(2)

            def freq_for(tol: float):
                return _line_freq(n, False, float(mpmath.ln(bound)), 0.0, tol)

        elif kind == "zeta-left":
            c = mpf("-0.5") if c is None else mpf(c)
            if not (-1 < c < 0):
                raise DomainError(f"zeta-left needs abscissa in (-1,0), got {c}")

            def f(t):
                s = c + mpc(0, 1) * t
                return (mpcore.zeta_cx(s) * _rice_kernel(s, n, ln_fact)).real

            # |zeta(-1/2+it)| <= zeta(3/2) sqrt(1/4+t^2) / (2 pi): the
            # reflection factor has |chi(-1/2+it)| = sqrt(1/4+t^2)/(2 pi)
            # exactly, from |Gamma(3/2+it)|^2 = pi (1/4+t^2)/cosh(pi t) and
            # |sin(pi(-1/2+it)/2)|^2 = cosh(pi t)/2.
            amp = mpmath.zeta(mpf(3) / 2) / (2 * mpmath.pi)

            def tail(T):
                return amp * (
                    mpmath.exp(ln_fact - (n - 1) * mpmath.ln(T)) / (n - 1)
                    + mpmath.exp(ln_fact - n * mpmath.ln(T)) / (2 * n)
                )

            scale = envelope_bound(n, working)

            def freq_for(tol: float):
                return _line_freq(n, True, float(mpmath.ln(amp)), 1.0, tol)

        else:
            raise DomainError(f"unknown Rice line kind {kind!r}; expected one of {RICE_KINDS}")
        return f, tail, +scale, c, freq_for


def _choose_height(tail, tol_abs, T_given, what: str, T_start=4):
    """Smallest doubling-search T with tail(T) <= tol_abs, or validate T_given."""
    if T_given is not None:
        T = mpf(T_given)
        bound = tail(T)
        if not bound <= tol_abs:
            raise TruncationBoundError(
                f"{what}: tail bound {mpmath.nstr(bound, 6)} at height T={mpmath.nstr(T, 6)} "
                f"exceeds tolerance {mpmath.nstr(tol_abs, 6)}; increase T"
            )
        return T, bound
    T = mpf(T_start)
    for _ in range(400):
        bound = tail(T)
        if bound <= tol_abs:
            return T, bound
        T = T * mpf("1.25")
    raise TruncationBoundError(f"{what}: no truncation height up to {mpmath.nstr(T, 6)} meets tolerance")


def _target_digits(prec) -> int:
    if isinstance(prec, PrecisionBudget):
        return prec.target_digits
    t = int(prec)
    if t < 1:
        raise DomainError(f"precision must be >= 1 digit, got {prec!r}")
    return t


def rice_integral(kind: str, n: int, prec=15, spec: ContourSpec | None = None) -> QuadratureResult:
    """Line-integral evaluation of delta_n (zeta-right), b_n (zeta-left) or d_n (inv-zeta).

    Cross-validation oracle: capped at 30 target digits and n <= 100.
    """
    if kind not in RICE_KINDS:
        raise DomainError(f"unknown Rice line kind {kind!r}; expected one of {RICE_KINDS}")
    if not isinstance(n, int) or isinstance(n, bool) or n < 2:
        raise DomainError(f"rice_integral needs an int n >= 2, got {n!r}")
    if kind == "zeta-left" and n < 4:
        raise DomainError(f"zeta-left integral needs n >= 4, got {n}")
    if n > _MAX_RICE_N:
        raise DomainError(f"rice_integral is an oracle for n <= {_MAX_RICE_N}, got {n}")
    target = _target_digits(prec)
    if target > _MAX_TARGET:
        raise DomainError(f"rice_integral is capped at {_MAX_TARGET} digits, got {target}")
    auto_degree = spec is None
    spec = spec or ContourSpec(kind="vertical")
    if spec.kind != "vertical":
        raise DomainError(f"rice_integral needs a vertical contour, got {spec.kind!r}")

    if kind == "zeta-left":
        cancel = math.ceil(2 * math.sqrt(math.pi * n) / math.log(10))
    elif kind == "inv-zeta":
        cancel = 2 + math.ceil(1.5 * math.log10(n))
    else:
        cancel = 2 + math.ceil(math.log10(n + 1))
    working = target + cancel + 12

    with workdps(working):
        f, tail, scale, c, freq_for = _line_data(kind, n, spec.c, working)
        tol_abs = mpf(10) ** (-(target + 1)) * scale
        T, bound = _choose_height(tail, tol_abs, spec.T, f"{kind} line integral at n={n}")

        degree = spec.degree
        if auto_degree and kind == "zeta-left" and float(T) > 2000:
            # long left lines are oscillation-dominated; a wider panel rule
            # absorbs more phase per node (measured ~25% cheaper at n=5)
            degree = 64
        rule_hi = legendre_rule(degree, working)
        rule_lo = legendre_rule(max(6, degree // 2), working)
        if spec.panels is not None:
            boundaries = _graded_boundaries(0, T, spec.panels)
        elif kind == "zeta-left":
            # the reflection factor grows like t and carries a huge steadily
            # swept Dirichlet spectrum; a frequency grid oversizes itself
            # here, so start coarse and let the worst-first splitter resolve
            boundaries = _graded_boundaries(0, T, max(10, int(math.ceil(math.log2(float(T)))) + 6))
        else:
            t_head = min(mpf(16), T / 2)
            head = _graded_boundaries(0, t_head, 12)
            osc = _osc_boundaries(
                float(t_head), float(T), freq_for(float(tol_abs)), _gl_capacity(degree)
            )
            boundaries = head + osc[1:]
        integral, quad_err = _adaptive_quad(f, boundaries, rule_hi, rule_lo, tol_abs / 2)

        sign = 1 if n % 2 else -1
        value = +(sign * integral / mpmath.pi)
        err = +(quad_err / mpmath.pi + bound / mpmath.pi + tol_abs)
        return QuadratureResult(
            value=value,
            error_estimate=err,
            truncation_height=+T,
            truncation_bound=+bound,
            pieces=(PieceContribution("vertical", value),),
        )


def _saddle_integrand(n: int, ln_fact):
    def F(s):
        return (
            (2 * mpmath.pi) ** (-s - 1)
            * mpmath.sinpi(s / 2)
            * mpmath.zeta(1 + s)
            * mpmath.exp(
                ln_fact
                + mpmath.loggamma(s + 1)
                + mpmath.loggamma(s)
                - mpmath.loggamma(s + n + 1)
            )
        )

    return F


def saddle_contour_integral(n: int, prec=15, spec: ContourSpec | None = None) -> QuadratureResult:
    """b_n from the slanted saddle contour (kind fig1-saddle).

    Pieces reported: `axis` (real-axis run from c2 to the slant crossing
    sqrt(2 pi n); exactly real, so it contributes 0 to the imaginary part),
    `slant`, and `vertical`.
    """
    if not isinstance(n, int) or isinstance(n, bool) or n < 4:
        raise DomainError(f"saddle_contour_integral needs an int n >= 4, got {n!r}")
    if n > 500:
        raise DomainError(f"saddle_contour_integral is an oracle for n <= 500, got {n}")
    target = _target_digits(prec)
    if target > _MAX_TARGET:
        raise DomainError(f"saddle_contour_integral is capped at {_MAX_TARGET} digits, got {target}")
    spec = spec or ContourSpec(kind="fig1-saddle")
    if spec.kind != "fig1-saddle":
        raise DomainError(f"saddle_contour_integral needs kind fig1-saddle, got {spec.kind!r}")

    working = target + 18
    with workdps(working):
        ln_fact = mpmath.loggamma(n + 1)
        F = _saddle_integrand(n, ln_fact)
        x_cross = mpmath.sqrt(2 * mpmath.pi * n)
        if not spec.c2 < x_cross:
            raise DomainError(
                f"slant axis crossing {mpmath.nstr(x_cross, 6)} must lie right of c2={spec.c2}"
            )
        e_dir = mpmath.exp(mpc(0, 1) * 5 * mpmath.pi / 8)
        x_left = mpf(spec.c1) * mpmath.sqrt(n)
        u_end = (x_cross - x_left) / (-e_dir.real)
        z_end = x_cross + u_end * e_dir

        scale = envelope_bound(n, working)
        tol_abs = mpf(10) ** (-(target + 1)) * scale

        # vertical tail: |F| ~ t^(c1 sqrt(n) - n - 1/2) up the ray, so
        # integral above T is within 2 |F(T)| T / (p - 1) of zero
        p_decay = n + mpf("0.5") - x_left

        h_end = z_end.imag

        def tail(T):
            if not T > h_end:
                return mpf("inf")  # below the slant end; never acceptable
            return 2 * abs(F(x_left + mpc(0, 1) * T)) * T / max(mpf(1), p_decay - 1)

        T, bound = _choose_height(
            tail, tol_abs, spec.T, f"saddle contour at n={n}", T_start=h_end * mpf("1.2")
        )

        rule_hi = legendre_rule(spec.degree, working)
        rule_lo = legendre_rule(max(6, spec.degree // 2), working)
        base = spec.panels if spec.panels is not None else 12

        slant_bounds = _uniform_boundaries(0, u_end, base)
        slant, err_s = _adaptive_quad(
            lambda u: F(x_cross + u * e_dir) * e_dir, slant_bounds, rule_hi, rule_lo, tol_abs / 4
        )

        if spec.panels is not None:
            vert_bounds = _graded_boundaries(h_end, T, max(8, base // 2 + 4))
        else:
            x_f = float(x_left)
            n_f = float(n)

            def vert_freq(t: float) -> float:
                r = math.hypot(x_f, max(t, 1e-6))
                return abs(math.log(r / (2 * math.pi))) + (n_f + 2) / max(t, 1e-6) + 0.1

            vert_bounds = _osc_boundaries(
                float(h_end), float(T), vert_freq, _gl_capacity(spec.degree)
            )
        vert, err_v = _adaptive_quad(
            lambda t: F(x_left + mpc(0, 1) * t) * mpc(0, 1), vert_bounds, rule_hi, rule_lo, tol_abs / 4
        )

        total = slant + vert
        value = +(-(2 / mpmath.pi) * total.imag)
        err = +((err_s + err_v + bound + tol_abs) * 2 / mpmath.pi)
        return QuadratureResult(
            value=value,
            error_estimate=err,
            truncation_height=+T,
            truncation_bound=+bound,
            pieces=(
                PieceContribution("axis", mpc(0)),
                PieceContribution("slant", +slant),
                PieceContribution("vertical", +vert),
            ),
        )
