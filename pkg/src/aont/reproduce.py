"""Reproduction checks behind ``aont verify-paper``.

Each check pairs a published value (with where it appears) and a function
that recomputes it. Checks run independently, possibly on a thread pool;
the report is ordered by ``check_id`` whatever the completion order.
"""

from __future__ import annotations

import os
import random
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable

from . import bundle
from .bounds import build_qp, n_t_meq_formula, r1_max, r2_upper_basic, r2_upper_qp, solve_simplex_qp
from .constructions import (
    cauchy_matrix,
    cyclotomic_is_invertible,
    cyclotomic_matrix,
    cyclotomic_numbers,
    cyclotomic_numbers_direct,
    cyclotomic_polynomial,
    cyclotomy_context,
    doubled_matrix,
    hadamard_matrix_qr,
    is_linear_t_aont,
    lehmer_matrix,
    meq_matrix,
)
from .density import count_invertible, count_invertible_2_fast, density
from .designs import incidence_matrix, sbibd_r2, verify_bibd
from .field import FiniteField, is_prime
from .gf2 import BinaryMatrix, circulant, is_invertible, poly_inverse_mod
from .search import SearchConfig, exhaustive_search
from .transform import AontCodec

__all__ = ["Check", "CheckResult", "VerifyPaperReport", "all_checks", "scopes", "verify_paper"]

STATUSES = ("pass", "fail", "skipped")


@dataclass(frozen=True)
class Check:
    check_id: str
    paper_location: str
    expected: Any
    compute: Callable[[], Any] | None
    long: bool = False
    note: str = ""

    @property
    def scope(self) -> str:
        return self.check_id.split(".", 1)[0]


@dataclass
class CheckResult:
    check_id: str
    paper_location: str
    expected: Any
    computed: Any
    status: str
    runtime_ms: float
    note: str = ""

    def to_json(self) -> dict:
        out = {"check_id": self.check_id, "paper_location": self.paper_location,
               "expected": self.expected, "computed": self.computed,
               "status": self.status, "runtime_ms": round(self.runtime_ms, 1)}
        if self.note:
            out["note"] = self.note
        return out


@dataclass
class VerifyPaperReport:
    checks: list[CheckResult] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(c.status != "fail" for c in self.checks)

    def counts(self) -> dict[str, int]:
        return {s: sum(c.status == s for c in self.checks) for s in STATUSES}

    def to_json(self) -> dict:
        return {"ok": self.ok, "counts": self.counts(), "checks": [c.to_json() for c in self.checks]}


def _frac(x: Fraction) -> str:
    return str(x)


def _matrix_floor(m: BinaryMatrix) -> list:
    return [is_invertible(m), count_invertible_2_fast(m)]


def _bundled_floor(bundle_id: str) -> Callable[[], list]:
    return lambda: _matrix_floor(bundle.load_matrix(bundle_id))


def _exhaustive(s: int) -> Callable[[], list]:
    def run():
        res = exhaustive_search(SearchConfig(s, "exhaustive"))
        return [res.best_n2, res.exhausted]
    return run


def _qp(rho: int) -> Callable[[], list]:
    def run():
        sol = solve_simplex_qp(build_qp(rho))
        return [_frac(sol.gamma), list(sol.support), sorted({_frac(z) for z in sol.z_star if z})]
    return run


def _bound_violations() -> int:
    bad = 0
    for e in bundle.catalog("matrix"):
        if not e.invertible:
            continue
        m = bundle.load_matrix(e.id)
        s = m.s
        r2 = density(m, 2).r_t
        limits = (Fraction(5 * s, 8 * (s - 1)), r2_upper_qp(s, min(s, 4)), r2_upper_basic(s))
        if any(r2 > lim for lim in limits):
            bad += 1
    return bad


def _r1_exact() -> bool:
    return all(density(meq_matrix(s), 1).r_t == r1_max(s) for s in range(2, 13))


def _meq_formula() -> bool:
    return all(count_invertible(meq_matrix(s), t) == n_t_meq_formula(s, t)
               for s in range(2, 9) for t in range(1, s))


def _sbibd_direct(m: BinaryMatrix, params: tuple[int, int, int]) -> list:
    """Formula value and direct count, which must agree."""
    return [_frac(sbibd_r2(params)), _frac(density(m, 2).r_t), is_invertible(m)]


def _sbibd_design(bundle_id: str) -> Callable[[], list]:
    def run():
        d = bundle.load_design(bundle_id)
        return _sbibd_direct(incidence_matrix(d), verify_bibd(d).as_tuple())
    return run


def _cyclotomy_row(p: int) -> Callable[[], list]:
    def run():
        ctx = cyclotomy_context(p)
        return [ctx.nu, ctx.alpha, ctx.beta, cyclotomic_is_invertible(ctx),
                count_invertible_2_fast(cyclotomic_matrix(ctx))]
    return run


def _cyclotomic_numbers_agree() -> int:
    """Number of primes p = 1 mod 8 below 500 where closed form and census agree."""
    primes = [p for p in range(17, 500, 8) if is_prime(p)]
    agree = 0
    for p in primes:
        ctx = cyclotomy_context(p)
        agree += cyclotomic_numbers(ctx) == cyclotomic_numbers_direct(ctx)
    return agree


def _poly_inverse() -> list:
    ctx = cyclotomy_context(17)
    m = cyclotomic_polynomial(ctx)
    inv = poly_inverse_mod(m, 17)
    product = circulant(inv, 17) @ circulant(m, 17)
    return [str(m), str(inv), product == BinaryMatrix.identity(17)]


def _cauchy(q: int, s: int) -> bool:
    c = cauchy_matrix(FiniteField(q), s=s)
    return all(is_linear_t_aont(c, t) for t in range(1, s + 1))


def _codec_roundtrip(trials: int = 10_000) -> int:
    codec = AontCodec(bundle.load_matrix("example12"), 8)
    rng = random.Random(12)
    ok = 0
    for _ in range(trials):
        x = [rng.randrange(256) for _ in range(12)]
        ok += codec.decode(codec.encode(x)) == x
    return ok


_N2_MAX = {2: 1, 3: 7, 4: 30, 5: 70, 6: 150, 7: 287, 8: 485}
_N2_MAX_SOURCE = {2: None, 3: "exam-3", 4: "exam4", 5: "example5", 6: "example6",
                  7: "example7", 8: "example8"}
_EXAMPLE_FLOORS = {9: 783, 10: 1194, 11: 1744, 12: 2448}
_CYCLOTOMY = [(17, 3, 1, 4, 9962), (97, 5, 9, -4, 10831020), (193, 5, -7, 12, 170314008),
              (241, 7, -15, 4, 414228390), (401, 3, 1, -20, 3177945050),
              (433, 5, 17, -12, 4320175230), (449, 3, -7, 20, 4995836216)]
_P17_M = "1 + x^2 + x^3 + x^5 + x^6 + x^7 + x^8 + x^9 + x^10 + x^11 + x^12 + x^14 + x^15"
_P17_INV = "1 + x + x^3 + x^4 + x^5 + x^6 + x^7 + x^10 + x^11 + x^12 + x^13 + x^14 + x^16"


def all_checks() -> list[Check]:
    checks: list[Check] = []
    for s, n2 in _N2_MAX.items():
        src = _N2_MAX_SOURCE[s]
        run = (lambda: _matrix_floor(BinaryMatrix.identity(2))) if src is None else _bundled_floor(src)
        checks.append(Check(f"table2.s{s:02d}", f"Table 2, s={s}", [True, n2], run))
    for s, n2 in _EXAMPLE_FLOORS.items():
        checks.append(Check(f"appendix.example{s:02d}", f"Appendix A, Example {s}", [True, n2],
                            _bundled_floor(f"example{s}")))
    for s in range(2, 9):
        checks.append(Check(f"exhaustive.s{s:02d}", f"Table 2, s={s} (exhaustive search)",
                            [_N2_MAX[s], True], _exhaustive(s), long=s >= 7))
    checks += [
        Check("qp.gamma2", "Section 4, QP with rho=2 (derived)", ["1/3", [1, 2, 3], ["1/3"]], _qp(2)),
        Check("qp.gamma3", "Section 4, three-row remark (derived)", ["1", [3, 5, 6], ["1/3"]], _qp(3)),
        Check("qp.gamma4", "Section 4, Figure 1 optimum", ["15/8", [7, 11, 13, 14], ["1/4"]], _qp(4)),
        Check("bounds.corpus", "Theorem upperbound; Corollary Cor-15", 0, _bound_violations),
        Check("bounds.r1_meq", "Theorem R1.thm", True, _r1_exact),
        Check("bounds.meq_closed_form", "Theorem M.bound", True, _meq_formula),
        Check("doubling.n2", "Section 5.3, recursive doubling", [True, 426, "426/784"],
              lambda: [is_invertible(doubled_matrix()), count_invertible_2_fast(doubled_matrix()),
                       f"{count_invertible_2_fast(doubled_matrix())}/784"]),
        Check("sbibd.v011", "Section 5.4, Hadamard design (11,5,2)", ["21/55", "21/55", True],
              lambda: _sbibd_direct(hadamard_matrix_qr(11), (11, 5, 2))),
        Check("sbibd.v013", "Section 5.4, Lehmer complement q=13", ["15/26", "15/26", True],
              lambda: _sbibd_direct(lehmer_matrix(13), (13, 9, 6))),
        Check("sbibd.v031", "Section 5.4, (31,21,14)-SBIBD", ["49/93", "49/93", True],
              _sbibd_design("sbibd31-21-14")),
        Check("sbibd.v040", "Example 40.ex", ["27/52", "27/52", True], _sbibd_design("pg3-3")),
        Check("sbibd.v109", "Section 5.4, Lehmer complement q=109", ["329/654", "329/654", True],
              lambda: _sbibd_direct(lehmer_matrix(109), (109, 81, 60))),
    ]
    for p, nu, a, b, n2 in _CYCLOTOMY:
        checks.append(Check(f"cyclotomy.p{p:03d}", f"Table cyc.tab, p={p}", [nu, a, b, True, n2],
                            _cyclotomy_row(p), note="the table's f column is read as the primitive root nu"))
    n_primes = sum(1 for p in range(17, 500, 8) if is_prime(p))
    checks += [
        Check("cyclonumbers.p017", "Example ex17", [0, 0, 1, 2],
              lambda: list(cyclotomic_numbers(cyclotomy_context(17)))),
        Check("cyclonumbers.below500", "Theorem cyc.thm", n_primes, _cyclotomic_numbers_agree),
        Check("polyinverse.p017", "Section 5.5, inverse of m(x) for p=17", [_P17_M, _P17_INV, True], _poly_inverse),
        Check("cauchy.f5_s2", "Section 2, Cauchy matrices", True, lambda: _cauchy(5, 2)),
        Check("cauchy.f11_s5", "Section 2, Cauchy matrices", True, lambda: _cauchy(11, 5)),
        Check("codec.example12", "Section 2, y = x M^-1; Appendix A, Example 12", 10_000, _codec_roundtrip),
    ]
    return checks


def scopes() -> list[str]:
    return sorted({c.scope for c in all_checks()})


def _run(check: Check, long: bool) -> CheckResult:
    if check.compute is None or (check.long and not long):
        note = "needs --long" if check.long else "no computation available"
        return CheckResult(check.check_id, check.paper_location, check.expected, None, "skipped", 0.0, note)
    t0 = time.perf_counter()
    try:
        computed = check.compute()
        status = "pass" if computed == check.expected else "fail"
        note = check.note
    except Exception as exc:  # a crashing check is a failed check, not a crashed suite
        computed, status, note = None, "fail", f"{type(exc).__name__}: {exc}"
    return CheckResult(check.check_id, check.paper_location, check.expected, computed, status,
                       (time.perf_counter() - t0) * 1000, note)


def verify_paper(scope: str = "all", long: bool = False, workers: int | None = None) -> VerifyPaperReport:
    checks = all_checks()
    if scope != "all":
        if scope not in scopes():
            raise ValueError(f"unknown scope {scope!r}; choose from all, {', '.join(scopes())}")
        checks = [c for c in checks if c.scope == scope]
    cap = os.environ.get("AONT_THREADS")
    n = workers or 1
    if cap:
        n = min(n, max(1, int(cap)))
    if n > 1:
        with ThreadPoolExecutor(n) as pool:
            results = list(pool.map(lambda c: _run(c, long), checks))
    else:
        results = [_run(c, long) for c in checks]
    return VerifyPaperReport(sorted(results, key=lambda r: r.check_id))
