"""Finite-difference sequences of zeta values.

The objects here are the alternating binomial transforms

    delta_n   = sum_{k=2..n} C(n,k) (-1)^k zeta(k)
    b_n       = n(1 - gamma - H_{n-1}) - 1/2 + delta_n          (b_0 = 1/2)
    A_n(m,k)  = sum_{l=2..n} C(n,l) (-1)^l zeta(l, m/k) / k^l
    a_n(m,k)  = A_n - (m/k - 1/2) + (n/k)[psi(m/k) + ln k + 1 - H_{n-1}]
    d_n       = sum_{k=2..n} C(n,k) (-1)^k / zeta(k)
    c_n       = -sum_{k=1..n} C(n,k) (-1)^k zeta(k+1) / (k+1)
    D(x)      = sum_l mu(l) [e^(-x/l) - 1 + x/l]

b_n are the Newton-series coefficients of zeta(s) - 1/(s-1); a_n(1,1) = b_n
and A_n(1,1) = delta_n exactly.  delta and d carry a second, independent
evaluation route (series rearrangement / Mobius sum) used for cross-checks.

Every operation sizes its working precision from the budget rules in
`precision` (binomial cancellation costs ~0.30103*n digits; exponentially
small results cost their own scale on routes that assemble them from O(1)
pieces) and refuses budgets that cannot reach the requested target.

Threading: batch evaluation (`sequence_many`) prefills the scalar caches
single-threaded, then dispatches workers that only take cache-hit paths at
one fixed precision, so results are bit-identical for any thread count.
The two methods with internal precision lifting (delta 'series', d
'moebius') always run serially; their results don't depend on threads
either way.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import mpmath
from mpmath import mpf, mpc, workdps

from . import mpcore
from .errors import DomainError
from .mpcore import _coerce_shift
from .precision import PrecisionBudget, as_budget, required_working_digits

_DELTA_METHODS = ("binomial", "series")
_D_METHODS = ("binomial", "moebius")


@dataclass(frozen=True)
class SequencePoint:
    """One computed sequence value: index, value, producing method, digits."""

    n: int
    value: object  # mpf (mpc for dirichlet combinations)
    method: str
    achieved_digits: int


@dataclass(frozen=True)
class CharacterTable:
    """Values chi(1..k) of a completely multiplicative character mod k."""

    k: int
    values: tuple

    def __post_init__(self):
        if self.k < 1 or len(self.values) != self.k:
            raise DomainError(
                f"character table mod {self.k} needs exactly {self.k} values"
            )
        chi = self._chi
        if chi(1) != 1:
            raise DomainError("character must have chi(1) = 1")
        for m in range(1, self.k + 1):
            if math.gcd(m, self.k) != 1 and chi(m) != 0:
                raise DomainError(f"chi({m}) must be 0 (gcd({m},{self.k}) > 1)")
        coprime = [m for m in range(1, self.k + 1) if math.gcd(m, self.k) == 1]
        for x in coprime:
            for y in coprime:
                lhs = chi((x * y - 1) % self.k + 1)
                rhs = chi(x) * chi(y)
                if abs(complex(lhs) - complex(rhs)) > 1e-12:
                    raise DomainError(
                        f"character not multiplicative at ({x},{y}) mod {self.k}"
                    )

    def _chi(self, m: int):
        return self.values[(m - 1) % self.k]

    @classmethod
    def trivial(cls) -> "CharacterTable":
        return cls(1, (1,))

    @classmethod
    def principal(cls, k: int) -> "CharacterTable":
        return cls(k, tuple(1 if math.gcd(m, k) == 1 else 0 for m in range(1, k + 1)))


def _check_index(n, minimum=0) -> int:
    if isinstance(n, bool) or not isinstance(n, int):
        raise DomainError(f"sequence index must be an int, got {n!r}")
    if n < minimum:
        raise DomainError(f"sequence index must be >= {minimum}, got {n}")
    return n


def _binomials(n: int):
    """Yield (k, C(n,k)) for k = 0..n, exact integers by ratio update."""
    c = 1
    for k in range(0, n + 1):
        yield k, c
        c = c * (n - k) // (k + 1)


def _delta_binomial(n: int, working: int) -> mpf:
    with workdps(working):
        acc = mpf(0)
        for k, cnk in _binomials(n):
            if k < 2:
                continue
            term = mpf(cnk) * mpcore.zeta_int(k, working)
            acc = acc + term if k % 2 == 0 else acc - term
        return +acc


def _delta_series(n: int, working: int, target: int) -> mpf:
    # head over l <= L, then the 1/l-power tail resummed through Hurwitz
    # zeta values at shift L+1; the expansion is exact if j reaches n
    L = max(2 * n, 32)
    with workdps(working):
        acc = mpf(0)
        for ell in range(1, L + 1):
            u = mpf(1) / ell
            acc += (1 - u) ** n - 1 + n * u
        tol = mpf(10) ** (-(target + 5)) * max(mpf(1), abs(acc))
        c = n * (n - 1) // 2  # C(n,2)
        j = 2
        while j <= n:
            term = mpf(c) * mpcore.hurwitz_int(j, L + 1, working)
            acc = acc + term if j % 2 == 0 else acc - term
            c = c * (n - j) // (j + 1)
            if j < n:
                # next-term bound; terms shrink by >= 1/2 per step for L >= 2n
                rem = 2 * mpf(c) * ((L + 1) ** mpf(-(j + 1)) + mpf(L) ** (-j) / j)
                if rem < tol:
                    break
            j += 1
        return +acc


def delta(n: int, prec: PrecisionBudget | int = 15, method: str = "binomial") -> SequencePoint:
    """delta_n by the alternating binomial sum or the series rearrangement."""
    n = _check_index(n)
    if method not in _DELTA_METHODS:
        raise DomainError(f"delta method must be one of {_DELTA_METHODS}, got {method!r}")
    budget = as_budget(prec, "delta", n, method=method)
    if n < 2:
        value = mpf(0)
    elif method == "binomial":
        value = _delta_binomial(n, budget.working_digits)
    else:
        value = _delta_series(n, budget.working_digits, budget.target_digits)
    return SequencePoint(n, value, method, budget.target_digits)


def b(n: int, prec: PrecisionBudget | int = 15) -> SequencePoint:
    """Newton coefficient b_n of zeta(s) - 1/(s-1); b_0 = 1/2."""
    n = _check_index(n)
    budget = as_budget(prec, "b", n)
    w = budget.working_digits
    if n == 0:
        return SequencePoint(0, mpf("0.5"), "binomial", budget.target_digits)
    with workdps(w):
        gamma = mpcore.euler_gamma(w)
        h = mpcore.harmonic_mpf(n - 1, w)
        value = +(n * (1 - gamma - h) - mpf("0.5") + _delta_binomial(n, w))
    return SequencePoint(n, value, "binomial", budget.target_digits)


def A(n: int, shift, prec: PrecisionBudget | int = 15) -> SequencePoint:
    """Hurwitz difference A_n(m,k) = sum C(n,l)(-1)^l zeta(l, m/k)/k^l."""
    n = _check_index(n)
    q = _coerce_shift(shift)
    budget = as_budget(prec, "A", n, k=q.k)
    w = budget.working_digits
    if n < 2:
        return SequencePoint(n, mpf(0), "binomial", budget.target_digits)
    with workdps(w):
        acc = mpf(0)
        kk = mpf(q.k)
        for ell, cnl in _binomials(n):
            if ell < 2:
                continue
            term = mpf(cnl) * mpcore.hurwitz_int(ell, q, w) / kk ** ell
            acc = acc + term if ell % 2 == 0 else acc - term
        value = +acc
    return SequencePoint(n, value, "binomial", budget.target_digits)


def a(n: int, shift, prec: PrecisionBudget | int = 15) -> SequencePoint:
    """Exponentially small residue-adjusted part a_n(m,k); a_n(1,1) = b_n."""
    n = _check_index(n, minimum=1)
    q = _coerce_shift(shift)
    budget = as_budget(prec, "a", n, k=q.k)
    w = budget.working_digits
    with workdps(w):
        big = A(n, q, PrecisionBudget(budget.target_digits, w, budget.guard_digits)).value
        gamma = mpcore.euler_gamma(w)
        h = mpcore.harmonic_mpf(n - 1, w)
        psi_q = mpcore.digamma_rational(q, w)
        mk = +mpmath.fraction(q.m, q.k)
        lnk = mpmath.ln(mpf(q.k))
        value = +(big - (mk - mpf("0.5")) + (mpf(n) / q.k) * (psi_q + lnk + 1 - h))
    return SequencePoint(n, value, "residue-adjusted", budget.target_digits)


def dirichlet_diff(chi: CharacterTable, n: int, prec: PrecisionBudget | int = 15) -> mpc:
    """sum_m chi(m) A_n(m,k) = sum_{l=2..n} C(n,l)(-1)^l L(chi, l)."""
    if not isinstance(chi, CharacterTable):
        raise DomainError("dirichlet_diff needs a CharacterTable")
    n = _check_index(n)
    budget = as_budget(prec, "A", n, k=chi.k)
    w = budget.working_digits
    with workdps(w):
        acc = mpc(0)
        for m in range(1, chi.k + 1):
            coeff = chi.values[m - 1]
            if coeff == 0:
                continue
            part = A(n, (m, chi.k), PrecisionBudget(budget.target_digits, w, budget.guard_digits)).value
            acc += mpc(coeff) * part
        return +acc


_MOBIUS_TABLE: list[int] = []


def _mobius_table(limit: int) -> list[int]:
    global _MOBIUS_TABLE
    if len(_MOBIUS_TABLE) <= limit:
        _MOBIUS_TABLE = mpcore.mobius_upto(max(limit, 64))
    return _MOBIUS_TABLE


def _mobius_tail_coeff(j: int, L: int, working: int) -> mpf:
    """sum_{l>L} mu(l) l^(-j) = 1/zeta(j) - partial sum, without cancellation.

    The difference is ~(L+1)^(-j) between O(1) quantities, so it is formed
    at precision elevated by j*log10(L+1) and only then rounded down.
    """
    mu = _mobius_table(L)
    lift = int(math.ceil(j * math.log10(L + 1))) + 10
    with workdps(working + lift):
        part = mpf(0)
        for ell in range(1, L + 1):
            if mu[ell]:
                part += mu[ell] * mpf(ell) ** (-j)
        val = 1 / mpmath.zeta(j) - part
    with workdps(working):
        return +val


def _d_moebius(n: int, working: int, target: int) -> mpf:
    L = max(2 * n, 32)
    mu = _mobius_table(L)
    with workdps(working):
        acc = mpf(0)
        for ell in range(1, L + 1):
            if mu[ell]:
                u = mpf(1) / ell
                acc += mu[ell] * ((1 - u) ** n - 1 + n * u)
        tol = mpf(10) ** (-(target + 5)) * max(mpf(1), abs(acc))
        c = n * (n - 1) // 2
        j = 2
        while j <= n:
            term = mpf(c) * _mobius_tail_coeff(j, L, working)
            acc = acc + term if j % 2 == 0 else acc - term
            c = c * (n - j) // (j + 1)
            if j < n:
                rem = 2 * mpf(c) * ((L + 1) ** mpf(-(j + 1)) + mpf(L) ** (-j) / j)
                if rem < tol:
                    break
            j += 1
        return +acc


def d(n: int, prec: PrecisionBudget | int = 15, method: str = "binomial") -> SequencePoint:
    """Differences of inverse zeta values d_n (tends to 2)."""
    n = _check_index(n)
    if method not in _D_METHODS:
        raise DomainError(f"d method must be one of {_D_METHODS}, got {method!r}")
    budget = as_budget(prec, "d", n, method=method)
    if n < 2:
        value = mpf(0)
    elif method == "binomial":
        with workdps(budget.working_digits):
            acc = mpf(0)
            for k, cnk in _binomials(n):
                if k < 2:
                    continue
                term = mpf(cnk) / mpcore.zeta_int(k, budget.working_digits)
                acc = acc + term if k % 2 == 0 else acc - term
            value = +acc
    else:
        value = _d_moebius(n, budget.working_digits, budget.target_digits)
    return SequencePoint(n, value, method, budget.target_digits)


def c(n: int, prec: PrecisionBudget | int = 15) -> SequencePoint:
    """c_n = -sum_{k=1..n} C(n,k)(-1)^k zeta(k+1)/(k+1) (~ H_n + gamma - 1)."""
    n = _check_index(n)
    budget = as_budget(prec, "c", n)
    if n == 0:
        return SequencePoint(0, mpf(0), "binomial", budget.target_digits)
    with workdps(budget.working_digits):
        acc = mpf(0)
        for k, cnk in _binomials(n):
            if k < 1:
                continue
            term = mpf(cnk) * mpcore.zeta_int(k + 1, budget.working_digits) / (k + 1)
            acc = acc + term if k % 2 == 0 else acc - term
        value = +(-acc)
    return SequencePoint(n, value, "binomial", budget.target_digits)


def D_of(x, prec: PrecisionBudget | int = 15) -> mpf:
    """Mobius-smoothed comparison function D(x) = sum mu(l)[e^(-x/l) - 1 + x/l]."""
    budget = as_budget(prec, "D", 0)
    w = budget.working_digits
    with workdps(w):
        xv = mpf(x)
        if not mpmath.isfinite(xv) or xv <= 0:
            raise DomainError(f"D(x) needs finite x > 0, got {x!r}")
        L = max(32, int(math.ceil(2 * float(xv))))
        mu = _mobius_table(L)
        acc = mpf(0)
        for ell in range(1, L + 1):
            if mu[ell]:
                u = xv / ell
                acc += mu[ell] * (mpmath.exp(-u) - 1 + u)
        # tail: sum_{j>=2} (-1)^j x^j / j! * sum_{l>L} mu(l) l^(-j)
        tol = mpf(10) ** (-(budget.target_digits + 5)) * max(mpf(1), abs(acc))
        j = 2
        xpow = xv * xv
        fact = mpf(2)
        while True:
            term = (xpow / fact) * _mobius_tail_coeff(j, L, w)
            acc = acc + term if j % 2 == 0 else acc - term
            j += 1
            xpow *= xv
            fact *= j
            rem = 2 * (xpow / fact) * ((L + 1) ** mpf(-j) + mpf(L) ** (1 - j) / (j - 1))
            if rem < tol:
                break
        return +acc


_KIND_FUNCS = {
    "delta": lambda n, prec, shift, method: delta(n, prec, method or "binomial"),
    "b": lambda n, prec, shift, method: b(n, prec),
    "A": lambda n, prec, shift, method: A(n, shift, prec),
    "a": lambda n, prec, shift, method: a(n, shift, prec),
    "d": lambda n, prec, shift, method: d(n, prec, method or "binomial"),
    "c": lambda n, prec, shift, method: c(n, prec),
}

# methods with internal precision lifting; always dispatched serially
_SERIAL_METHODS = {("delta", "series"), ("d", "moebius")}


def sequence_many(
    kind: str,
    ns: list[int],
    target_digits: int = 15,
    shift=None,
    method: str | None = None,
    threads: int = 1,
) -> list[SequencePoint]:
    """Evaluate one sequence kind over many indices with shared caches.

    One working precision (sized for the largest index) serves the whole
    batch; the integer-zeta/Hurwitz/digamma caches are prefilled before any
    worker starts, so threaded runs only take read-only cache paths and the
    output is bit-identical for every `threads` value.
    """
    if kind not in _KIND_FUNCS:
        raise DomainError(f"unknown sequence kind {kind!r}")
    if not ns:
        raise DomainError("empty index list")
    for n in ns:
        _check_index(n, minimum=1 if kind == "a" else 0)
    q = None
    if kind in ("A", "a"):
        q = _coerce_shift(shift if shift is not None else (1, 1))
    n_max = max(ns)
    working = required_working_digits(
        kind, n_max, target_digits, k=q.k if q else 1, method=method
    )
    budget = PrecisionBudget(target_digits, working)

    # single-writer prefill phase
    if (method or "binomial") == "binomial":
        max_ell = n_max + 1 if kind == "c" else n_max
        mpcore.prefill_zeta_cache(max(max_ell, 2), working)
    if q is not None:
        mpcore.prefill_hurwitz_cache(max(n_max, 2), q, working)
        mpcore.prefill_constant_cache(working, shifts=(q,))
    else:
        mpcore.prefill_constant_cache(working)

    fn = _KIND_FUNCS[kind]
    serial = (kind, method or "binomial") in _SERIAL_METHODS

    def task(n):
        return fn(n, budget, q, method)

    if threads > 1 and not serial:
        old = mpmath.mp.dps
        mpmath.mp.dps = working
        try:
            with ThreadPoolExecutor(max_workers=threads) as pool:
                results = list(pool.map(task, ns))
        finally:
            mpmath.mp.dps = old
    else:
        results = [task(n) for n in ns]
    return results
