"""Seeded property suites that cross-check every formula against an oracle.

Each suite draws its inputs from one ``random.Random(seed)`` and returns a
:class:`RunReport`.  Exact suites compare rationals for equality; float
suites compare against independent evaluations with explicit tolerances.
"""

from __future__ import annotations

import math
import random
import time
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import ffunc, jacobi, jtable, lineardiag, special
from .contfrac import cf_limit

SUITES = ("f-identities", "jtable", "determinants", "charpoly", "spectrum", "bessel")


@dataclass
class RunReport:
    suite: str
    cases: int = 0
    failures: int = 0
    max_error: float = 0.0
    seed: int = 0
    wall_time_ms: int = 0
    messages: list = field(default_factory=list)
    parts: list = field(default_factory=list)

    def record(self, ok: bool, error: float = 0.0, what: str = "") -> None:
        self.cases += 1
        if error > self.max_error or math.isnan(error):
            self.max_error = float(error)
        if not ok:
            self.failures += 1
            if len(self.messages) < 20:
                self.messages.append(what)

    def as_dict(self) -> dict:
        """Deterministic content only; ``wall_time_ms`` is reported separately."""
        out = {
            "suite": self.suite,
            "cases": self.cases,
            "failures": self.failures,
            "max_error": self.max_error,
            "seed": self.seed,
        }
        if self.parts:
            out["suites"] = [p.as_dict() for p in self.parts]
        return out


def _rat(rng: random.Random, nonzero: bool = False, span: int = 9) -> Fraction:
    while True:
        q = Fraction(rng.randint(-span, span), rng.randint(1, span))
        if q or not nonzero:
            return q


def _err(a, b) -> float:
    return float(abs(a - b))


# -- suites --------------------------------------------------------------------


def suite_f_identities(rng: random.Random, cases: int, report: RunReport) -> None:
    for _ in range(cases):
        n = rng.randint(0, 12)
        x = tuple(_rat(rng) for _ in range(n))
        f = ffunc.f_finite(x)
        ok = f == ffunc.f_direct_sum(x) == ffunc.f_forward(x)
        ok &= f == ffunc.f_finite(x[::-1])
        if n >= 2:
            ok &= f == ffunc.f_finite(x[1:]) - x[0] * x[1] * ffunc.f_finite(x[2:])
        for k in range(1, n):
            ok &= f == ffunc.f_split(x, k)
        for k in range(1, n + 1):
            if ffunc.f_finite(x[:k]) != 0:
                ok &= f == ffunc.f_rescaled_head(x, k)
        m = rng.randint(1, 8)
        u = [_rat(rng) for _ in range(m)]
        v = [_rat(rng) for _ in range(m)]
        lhs, rhs = ffunc.two_sequence_identity(u, v)
        ok &= lhs == rhs
        report.record(bool(ok), 0.0 if ok else 1.0, f"F identities failed for x={x}")


def suite_jtable(rng: random.Random, cases: int, report: RunReport) -> None:
    J = jtable.j_entry
    for _ in range(cases):
        w = _rat(rng, nonzero=True)
        m, n = rng.randint(-20, 20), rng.randint(-20, 20)
        lam = _rat(rng, nonzero=True)
        val = J(m, n, w)
        ok = val == jtable.j_entry_recurrence(m, n, w)
        ok &= val == -J(n, m, w)
        ok &= J(m, -n, w) == (-1) ** (n % 2) * val
        ok &= J(-m, n, w) == (-1) ** (m % 2) * val
        ok &= w * J(m, n - 1, w) - n * val + w * J(m, n + 1, w) == 0
        ok &= w * J(m - 1, n, w) - m * val + w * J(m + 1, n, w) == 0
        ok &= jtable.j_entry_recurrence(m, n, w, unit=lam) == lam * val
        if 0 <= m < n:
            ok &= val == jtable.j_entry_f(m, n, w)
        report.record(bool(ok), 0.0 if ok else 1.0, f"J({m},{n}; w={w}) inconsistent")


def suite_determinants(rng: random.Random, cases: int, report: RunReport) -> None:
    for _ in range(cases):
        d = rng.randint(1, 5)
        w = _rat(rng)
        y = [_rat(rng, nonzero=True) for _ in range(2 * d + 1)]
        y[d] = _rat(rng)
        jm = jacobi.JacobiMatrix(y, w, centered=True)
        ok = jacobi.det_constant_offdiag(y, w) == jacobi.det_oracle(jm)

        size = rng.randint(1, 8)
        lam = [_rat(rng) for _ in range(size)]
        off = [_rat(rng, nonzero=True) for _ in range(size - 1)]
        general = jacobi.JacobiMatrix(lam, off)
        norm = jacobi.normalize(general)
        ok &= norm.reconstruct() == general
        ok &= jacobi.det_oracle(general) == norm.scale() * jacobi.det_oracle(norm.jtilde)

        lam_pos = [_rat(rng) if rng.random() < 0.2 else _rat(rng, nonzero=True) for _ in range(d)]
        kdiag = [-v for v in reversed(lam_pos)] + [0] + lam_pos
        theta = jacobi.kernel_vector_antisym(lam_pos, w)
        dense = jacobi.JacobiMatrix(kdiag, w, centered=True).to_dense()
        ok &= all(r == 0 for r in dense.dot(np.array(theta, dtype=object)))
        ok &= theta[-1] == (-1) ** d * w**d

        chi = jacobi.charpoly_antisym(lam_pos, w)
        ok &= chi * jacobi.Poly.z() * (-1) ** (d + 1) == jacobi.charpoly_oracle(
            jacobi.JacobiMatrix(kdiag, w, centered=True)
        )
        report.record(bool(ok), 0.0 if ok else 1.0, f"determinant check failed d={d} w={w} y={y}")


def suite_charpoly(rng: random.Random, cases: int, report: RunReport) -> None:
    for i in range(cases):
        d = i % 9
        w = _rat(rng, nonzero=True)
        closed = lineardiag.charpoly_closed(d, w)
        ok = closed == lineardiag.charpoly_via_antisym(d, w)
        ok &= closed == lineardiag.reduce_charpoly(lineardiag.charpoly_f(d, w), d)
        ok &= closed == lineardiag.reduce_charpoly(lineardiag.charpoly_det(d, w), d)
        if d <= 6:
            for n in range(d + 4):
                ok &= closed(n) == lineardiag.char_red_at_integer(d, w, n)
            for n in range(1, d + 1):
                chi_n = (-1) ** (d + 1) * n * closed(n)
                ok &= chi_n == lineardiag.char_at_integer_via_j(d, w, n)
        if 1 <= d <= 4:
            z = _rat(rng) + Fraction(1, 11)
            x = lineardiag.eigen_x(d, w, z)
            dense = lineardiag.k_matrix(d, w).to_dense()
            res = (dense - z * np.eye(2 * d + 1, dtype=int)).dot(np.array(x, dtype=object))
            ok &= all(r == 0 for r in res[:-1])
            ok &= res[-1] == lineardiag.kw_xz_coefficient(d, w, z)
            ok &= (
                lineardiag.resolvent_denominator(d, w, z) * _prod_k2(d, z) == closed(z)
            )
        report.record(bool(ok), 0.0 if ok else 1.0, f"charpoly mismatch d={d} w={w}")


def _prod_k2(d, z):
    out = 1
    for k in range(1, d + 1):
        out *= k * k - z * z
    return out


def suite_spectrum(rng: random.Random, cases: int, report: RunReport, tol: float = 1e-12) -> None:
    for _ in range(cases):
        d = rng.choice((0, 1, 2, 3, 5, 8, 13, 21))
        w = round(rng.uniform(-10, 10), 3)
        radius = d + 2 * abs(w)
        try:
            res = lineardiag.spectrum(d, w, tol)
        except lineardiag.SpectralAccuracyError as exc:
            report.record(False, math.inf, f"spectrum d={d} w={w}: {exc}")
            continue
        ev = res.eigenvalues
        ok = bool(np.all(ev == -ev[::-1]))
        ok &= bool(np.any(ev == 0))
        ok &= not np.any((np.abs(ev) < 1) & (ev != 0)) if w != 0 else True
        if len(ev) > 1 and w != 0:
            ok &= bool(np.min(np.diff(ev)) > 10 * tol * radius)
        ok &= res.asymmetry <= 1e-10 * radius
        ref = np.linalg.eigvalsh(lineardiag.k_matrix(d, w).to_dense())
        dev = float(np.max(np.abs(ref - ev)))
        ok &= dev <= 1e-10 * radius
        worst = float(np.max(res.residuals)) / radius
        ok &= worst <= 1e-10
        report.record(bool(ok), max(worst, dev / radius), f"spectrum d={d} w={w}")


def suite_bessel(rng: random.Random, cases: int, report: RunReport) -> None:
    orders = (0.0, 1 / 3, 0.5, 1.0, 2.7)
    for i in range(cases):
        nu = orders[i % len(orders)] if i % 2 == 0 else round(rng.uniform(0, 6), 3)
        w = round(rng.uniform(-5, 5), 4)
        j0 = special.bessel_j(nu, w)
        e_series = _err(j0, special.bessel_j_series(nu, w))
        ok = e_series <= 1e-12
        # z J_nu(z) - 2(nu+1) J_{nu+1}(z) + z J_{nu+2}(z) = 0 with z = 2w
        z = 2 * w
        j1, j2 = special.bessel_j(nu + 1, w), special.bessel_j(nu + 2, w)
        e_rec = abs(z * j0 - 2 * (nu + 1) * j1 + z * j2)
        ok &= e_rec <= 1e-10
        e_cf = 0.0
        if abs(j0) > 1e-3 and w != 0:
            e_cf = abs(special.bessel_ratio_cf(nu, z) - j1 / j0)
            ok &= e_cf <= 1e-10
            # the same ratio from the convergents of the attached F fraction
            seq = special.bessel_sequence(nu, w)
            ratio = cf_limit(seq, 1e-15)
            e_cf = max(e_cf, abs(w / (nu + 1) * ratio - j1 / j0))
            ok &= e_cf <= 1e-10
        # J-table limit: the error at n = m+60 is about half the error at n = m+30
        m = i % 4
        wj = rng.choice((0.5, 1.0, 2.0))
        jm = special.bessel_j(float(m), wj)
        errs = [
            abs(wj ** (n - 1) / math.factorial(n - 1) * jtable.j_entry(m, n, wj) - jm)
            for n in (m + 30, m + 60)
        ]
        ok &= 0.4 <= errs[1] / errs[0] <= 0.6
        # q-series: F on a geometric sequence and the q-recursion
        q = rng.choice((0.25, 0.5))
        zq = round(rng.uniform(-1, 1), 3)
        phi = special.q_phi01
        e_q = abs(phi(q, zq) - phi(q, q * zq) - zq * phi(q, q * q * zq))
        t = math.sqrt(q)
        e_q = max(e_q, abs(special.f_geometric_series(t, wj) - phi(q, -t * wj * wj)))
        ok &= e_q <= 1e-12
        err = max(e_series, e_rec, e_cf, e_q)
        report.record(bool(ok), err, f"bessel nu={nu} w={w}")
    # small-w order of the J*Y residual, one sweep per run
    for m, n in ((0, 0), (0, 2), (1, 1), (1, 3), (1, 0)):
        ratios = [
            abs(special.jy_residual(m, n, w)) / (w ** (m + n + 1) * abs(math.log(w)))
            for w in (1e-1, 1e-2, 1e-3)
        ]
        spread = float(max(ratios) / min(ratios))
        report.record(spread < 10, 0.0, f"J*Y residual order m={m} n={n} spread {spread:.2f}")


_RUNNERS = {
    "f-identities": suite_f_identities,
    "jtable": suite_jtable,
    "determinants": suite_determinants,
    "charpoly": suite_charpoly,
    "spectrum": suite_spectrum,
    "bessel": suite_bessel,
}


def run_suite(suite: str, cases: int = 100, seed: int = 0) -> RunReport:
    """Run one suite (or ``"all"``) with ``cases`` random cases per suite."""
    if suite != "all" and suite not in _RUNNERS:
        raise ValueError(f"unknown suite {suite!r}")
    if cases < 0:
        raise ValueError("cases must be nonnegative")
    start = time.perf_counter()
    if suite == "all":
        report = RunReport("all", seed=seed)
        for i, name in enumerate(SUITES):
            part = run_suite(name, cases, seed + i)
            report.parts.append(part)
            report.cases += part.cases
            report.failures += part.failures
            report.max_error = max(report.max_error, part.max_error)
            report.messages.extend(f"{name}: {m}" for m in part.messages)
    else:
        report = RunReport(suite, seed=seed)
        jtable.clear_cache()
        _RUNNERS[suite](random.Random(seed), cases, report)
    report.wall_time_ms = int(round((time.perf_counter() - start) * 1000))
    return report
