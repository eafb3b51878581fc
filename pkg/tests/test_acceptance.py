"""Acceptance checks: one printed PASS/FAIL line per primary criterion.

Run with ``pytest tests/test_acceptance.py -v``; each line appears in the
terminal output even when pytest captures stdout.
"""

import random
import time
from fractions import Fraction as Fr

import pytest

from realcubic.bundles import bundle_for, check_catalog_discriminant, component_count_over_line
from realcubic.cli import cmd_paper_suite
from realcubic.cohomology import CATALOG_CASES, GaloisLattice, galois_module_catalog, h1_c2
from realcubic.criteria import CRITERION_FAMILIES, criterion_components
from realcubic.exact.linalg import RatFunc, congruence, diagonalize_symmetric
from realcubic.exact.roots import count_real_roots, isolate_real_roots
from realcubic.exact.upoly import UPoly, is_squarefree
from realcubic.families import (
    DISCRIMINANTS, F_, build_cubic, declared_singularities, discriminant_polynomial,
)
from realcubic.singular import ade_type, find_real_singular_points, is_singular_at, node_over_quadratic
from sampling import CATALOG_FAMILIES, draws


@pytest.fixture
def verdict_line(capsys):
    def emit(criterion, ok, detail):
        with capsys.disabled():
            print(f"\n[{'PASS' if ok else 'FAIL'}] {criterion}: {detail}")
        return ok
    return emit


# -- cohomology catalog -----------------------------------------------------------

H1_TARGETS = {"TwoA5": "Z/2", "SixA1Swap": "Z/2", "TwoD4TwoA1OnePlane": "Z/2", "EightA1Case3": "Z/2",
              "SixA1Trivial": "0", "identity": "0"}


def test_cohomology_catalog(verdict_line):
    results, slow = {}, []
    for case, want in H1_TARGETS.items():
        t0 = time.perf_counter()
        if case == "identity":
            lat = GaloisLattice(6, [[int(i == j) for j in range(6)] for i in range(6)])
        else:
            lat = galois_module_catalog(case)
        got = str(h1_c2(lat))
        dt = time.perf_counter() - t0
        results[case] = got
        if dt >= 0.01:
            slow.append(f"{case} {dt * 1000:.1f} ms")
    wrong = [c for c, w in H1_TARGETS.items() if results[c] != w]
    ok = not wrong and not slow
    verdict_line("cohomology catalog", ok,
                 ", ".join(f"{c}={g}" for c, g in results.items()) + (f"; wrong {wrong}" if wrong else "")
                 + (f"; slow {slow}" if slow else "; each < 10 ms"))
    assert ok


# -- verdict suite ------------------------------------------------------------------

def test_verdict_suite(verdict_line):
    from realcubic.suite import run_suite

    t0 = time.perf_counter()
    rows = run_suite()
    dt = time.perf_counter() - t0
    bad = [f"{r.example.name} (got {r.status.value if r.status else r.error}/{r.components})"
           for r in rows if not r.match]
    ok = not bad and dt < 60
    verdict_line("verdict suite", ok, f"{len(rows) - len(bad)}/{len(rows)} rows match in {dt:.1f} s"
                 + (f"; mismatches: {'; '.join(bad)}" if bad else ""))
    text, all_ok = cmd_paper_suite()
    assert all_ok == (not bad)
    assert ok


# -- discriminant formula verification ------------------------------------------------

def test_discriminant_verification(verdict_line):
    t0 = time.perf_counter()
    summary, total_bad = [], 0
    for family in DISCRIMINANTS:
        bad = 0
        for p in draws(family, 100, seed=101):
            bad += not all(c.agrees for c in check_catalog_discriminant(family, p))
        total_bad += bad
        summary.append(f"{family.value} {bad}/100")
    dt = time.perf_counter() - t0
    ok = total_bad == 0 and dt < 30
    verdict_line("discriminant verification", ok, f"mismatches {', '.join(summary)}; {dt:.1f} s")
    assert ok


# -- exact count against the root-ordering criteria -----------------------------------

def _off_boundary(family, p):
    d = discriminant_polynomial(family, p)
    if d.degree < 3 or not is_squarefree(d):
        return False
    if family in (F_.TwoD4MinusQ, F_.TwoD4PlusQ):
        # a root exactly at the comparison point +-t5 is a boundary case
        return d(p["t5"]) != 0 and d(-p["t5"]) != 0
    return True


def test_exact_vs_criterion(verdict_line):
    summary, total_bad = [], 0
    for name in CRITERION_FAMILIES:
        family = F_.parse(name)
        bad = 0
        for p in draws(family, 200, seed=202, accept=lambda q, f=family: _off_boundary(f, q)):
            bad += component_count_over_line(bundle_for(family, p)).count != criterion_components(family, p)
        total_bad += bad
        summary.append(f"{name} {bad}/200")
    ok = total_bad == 0
    verdict_line("exact-vs-criterion", ok, "disagreements " + ", ".join(summary))
    assert ok


# -- singularity audit -------------------------------------------------------------

def _audit_draw(family, p):
    """List of problems for one draw (empty when the audit passes)."""
    f = build_cubic(family, p)
    data = declared_singularities(family, p)
    problems = []
    for pt, want in zip(data.points, data.types):
        if not is_singular_at(f, pt):
            problems.append(f"{pt} not singular")
        elif want is not None and ade_type(f, pt) != want:
            problems.append(f"{pt}: {ade_type(f, pt)} != {want}")
    for coords, modulus, want in data.quadratic:
        if node_over_quadratic(f, coords, modulus) != (True, True):
            problems.append(f"pair mod {modulus} is not a node")
    real = find_real_singular_points(f).points
    if real:
        problems.append(f"real singular points {real}")
    return problems


def test_singularity_audit(verdict_line):
    failures = []
    for family in CATALOG_FAMILIES:
        for p in draws(family, 10, seed=303):
            probs = _audit_draw(family, p)
            if probs:
                failures.append(f"{family.value}: {probs[0]}")
    # the A4 / A5 constraint sets realise A4 / A5 exactly
    exact = []
    for family, n in ((F_.TwoA4, 4), (F_.TwoA5, 5)):
        for p in draws(family, 10, seed=304):
            f = build_cubic(family, p)
            exact.append(all(str(ade_type(f, pt)) == f"A{n}" for pt in declared_singularities(family, p).points))
    ok = not failures and all(exact)
    verdict_line("singularity audit", ok,
                 f"{len(CATALOG_FAMILIES)} families x 10 draws, {len(failures)} failing draws; "
                 f"A4/A5 exact on {sum(exact)}/{len(exact)}" + (f"; first: {failures[0]}" if failures else ""))
    assert ok


# -- kernel properties -----------------------------------------------------------

def _matmul(a, b):
    return [[sum(x * y for x, y in zip(row, col)) for col in zip(*b)] for row in a]


def test_kernel_properties(verdict_line):
    rng = random.Random(404)
    sturm_bad = 0
    for _ in range(1000):
        deg = rng.randint(1, 8)
        coeffs = [Fr(rng.randint(-9, 9), rng.randint(1, 3)) for _ in range(deg)] + [Fr(rng.choice([-3, -1, 1, 2]))]
        p = UPoly(coeffs)
        sturm_bad += count_real_roots(p) != len(isolate_real_roots(p))

    h1_bad = 0
    for k in range(50):
        case = CATALOG_CASES[k % len(CATALOG_CASES)]
        lat = galois_module_catalog(case)
        n = lat.rank
        p = [[int(i == j) for j in range(n)] for i in range(n)]
        pinv = [row[:] for row in p]
        for _ in range(8):
            i, j = rng.sample(range(n), 2) if n > 1 else (0, 0)
            if i == j:
                continue
            c = rng.randint(-3, 3)
            for row in p:
                row[j] += c * row[i]
            pinv[i] = [x - c * y for x, y in zip(pinv[i], pinv[j])]
        assert _matmul(p, pinv) == [[int(i == j) for j in range(n)] for i in range(n)]
        h1_bad += h1_c2(lat.conjugate(p, pinv)) != h1_c2(lat)

    cong_bad = 0
    for k in range(100):
        n = rng.randint(2, 4)
        if k % 2:
            entry = lambda: UPoly([Fr(rng.randint(-4, 4)) for _ in range(rng.randint(1, 3))])
        else:
            entry = lambda: Fr(rng.randint(-9, 9), rng.randint(1, 4))
        m = [[None] * n for _ in range(n)]
        for i in range(n):
            for j in range(i, n):
                m[i][j] = m[j][i] = entry()
        d = diagonalize_symmetric(m)
        out = congruence(d.transform, m)
        zero = RatFunc(0) if k % 2 else 0
        cong_bad += any(out[i][j] != (d.diag[i] if i == j else zero) for i in range(n) for j in range(n))
    ok = sturm_bad == 0 and h1_bad == 0 and cong_bad == 0
    verdict_line("kernel properties", ok,
                 f"Sturm vs isolation {1000 - sturm_bad}/1000, H1 basis invariance {50 - h1_bad}/50, "
                 f"congruence identity {100 - cong_bad}/100")
    assert ok
