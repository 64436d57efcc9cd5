"""Acceptance suite: one test per criterion, each printing a pass/fail line.

Run with `pytest tests/test_acceptance.py -v -s` to see the per-criterion
lines as they complete.
"""

import ast
import itertools
import pathlib
import random
import time
from contextlib import contextmanager
from fractions import Fraction

import pytest

import surfcalc
from surfcalc import (
    ChernData,
    CurveRecord,
    DivisorClass,
    NotPseudoeffective,
    PrimeComponent,
    QDivisor,
    cusp_bound,
    discriminant,
    euler_characteristic,
    fractional_part,
    intersect,
    is_nef_on_table,
    k3_end_euler,
    load_fixture,
    matsusaka_thresholds,
    miranda_example,
    mult_at,
    mumford_intersect,
    mumford_pullback,
    pluricanonical_status,
    reider_freeness,
    round_down,
    round_up,
    seshadri_at_point,
    singularity_production_check,
    twist,
    zariski_decompose,
)
from surfcalc.criteria import FREENESS_SIGNATURES, VERY_AMPLE_SIGNATURES

from conftest import diag_surface
from test_positivity import brute_force_zariski

MODULE_START = time.monotonic()


@contextmanager
def criterion(number, description):
    try:
        yield
    except BaseException:
        print(f"[FAIL] criterion {number:2d}: {description}")
        raise
    print(f"[PASS] criterion {number:2d}: {description}")


# ---------------------------------------------------------------------------


def test_criterion_01_obstruction_tables():
    with criterion(1, "obstruction signature tables and integer-scan dichotomy"):
        assert FREENESS_SIGNATURES == ((0, -1), (1, 0))
        assert VERY_AMPLE_SIGNATURES == ((0, -1), (0, -2), (1, 0), (1, -1), (2, 0))
        scan = [
            (ld, d2)
            for ld in range(0, 11)
            for d2 in range(-10, 11)
            if ld - 1 <= d2 and 2 * d2 < ld
        ]
        assert scan == [(0, -1), (1, 0)]


def test_criterion_02_ruled_fibre_witness():
    with criterion(2, "quadric fixture: L = (1,3) is obstructed by the fibre F2 at (1,0)"):
        model = load_fixture("p1xp1")
        report = reider_freeness(model, DivisorClass([1, 3]))
        assert report.verdict == "obstruction-found"
        [w] = report.witnesses
        assert w.label == "F2" and w.signature == (1, 0)


def test_criterion_03_pluricanonical_table():
    with criterion(3, "pluricanonical decision table over K^2 in 1..5, m in 1..6"):
        expected_free = {
            (k2, m): (m >= 4 or (m >= 3 and k2 >= 2)) for k2 in range(1, 6) for m in range(1, 7)
        }
        for (k2, m), free in expected_free.items():
            status = pluricanonical_status(k2, m)
            assert (status.free == "yes") == free, (k2, m)
            embed = m >= 5 or (m >= 4 and k2 >= 2) or (m >= 3 and k2 >= 3)
            assert (status.embedding_away_from_minus2 == "yes") == embed, (k2, m)
        assert pluricanonical_status(1, 4).free == "yes"
        assert pluricanonical_status(2, 3).free == "yes"
        assert pluricanonical_status(1, 3).free == "unknown"


def test_criterion_04_cusp_bound():
    with criterion(4, "septic curves carry at most ten simple cusps"):
        assert cusp_bound(7) == (3, 10)


def test_criterion_05_matsusaka_plane():
    with criterion(5, "effective power thresholds on the plane: m_free 2, m_very_ample 4"):
        thresholds = matsusaka_thresholds(1, 1)
        assert thresholds.m_free == 2
        assert thresholds.m_very_ample == 4
        for m in range(0, 8):
            assert thresholds.rho(m) == (m + 3) ** 2 - 2 * (m + 3)


def test_criterion_06_mumford_intersections():
    with criterion(6, "quadric-cone and A2-chain Mumford corrections, vs a Cramer oracle"):
        cone = load_fixture("quadric_cone")
        assert mumford_pullback(cone, "ruling1") == [Fraction(1, 2)]
        assert mumford_intersect(cone, "ruling1", "ruling2", Fraction(0)) == Fraction(1, 2)

        chain = load_fixture("a2_chain")
        delta = mumford_pullback(chain, "D")
        assert delta == [Fraction(2, 3), Fraction(1, 3)]
        # independent linear-solve oracle (Cramer's rule on the 2x2 system)
        g = chain.exceptional_gram
        det = Fraction(g[0][0] * g[1][1] - g[0][1] * g[1][0])
        rhs = [Fraction(-x) for x in chain.incidence["D"]]
        assert delta == [
            (rhs[0] * g[1][1] - g[0][1] * rhs[1]) / det,
            (g[0][0] * rhs[1] - rhs[0] * g[1][0]) / det,
        ]


def test_criterion_07_zariski_random_suite():
    with criterion(7, "Zariski suite: 200 random fixtures vs subset brute force"):
        rng = random.Random(70707)
        done = 0
        while done < 200:
            rank = rng.randint(2, 4)
            curves = []
            for i in range(rng.randint(1, 4)):
                coeffs = [rng.randint(0, 2)] + [rng.randint(-2, 1) for _ in range(rank - 1)]
                if not any(coeffs):
                    coeffs[0] = 1
                curves.append(CurveRecord(f"C{i}", DivisorClass(coeffs), {}, genus=None))
            model = diag_surface(
                [1] + [-1] * (rank - 1), [-3] + [1] * (rank - 1),
                curves=curves, name=f"z{done}",
            )
            d = DivisorClass.zero(rank)
            for record in curves:
                d = d + rng.randint(0, 3) * record.klass
            try:
                z = zariski_decompose(model, d)
            except NotPseudoeffective:
                continue
            done += 1
            assert is_nef_on_table(model, z.positive_part).nef
            negative_names = set()
            for name, c in z.negative_part:
                assert c > 0
                assert intersect(model, z.positive_part, model.curve(name).klass) == 0
                negative_names.add(name)
            if z.negative_part:
                sub = [
                    [int(intersect(model, model.curve(n1).klass, model.curve(n2).klass))
                     for n2 in negative_names]
                    for n1 in negative_names
                ]
                from surfcalc.positivity import _is_negative_definite
                assert _is_negative_definite(sub)
            assert z.positive_part + z.negative_class(model) == d
            # idempotence on the positive part
            again = zariski_decompose(model, z.positive_part)
            assert again.positive_part == z.positive_part and again.negative_part == ()
            # subset brute-force oracle agreement
            solutions = brute_force_zariski(model, d)
            assert (tuple(z.positive_part.coeffs), z.negative_part) in solutions
            assert len({p for p, _ in solutions}) == 1


def test_criterion_08_discriminant_twist_invariance():
    with criterion(8, "1000 random twists leave the discriminant fixed"):
        rng = random.Random(80808)
        models = [
            load_fixture("p1xp1"),
            load_fixture("blp2"),
            load_fixture("k3_rank2"),
            load_fixture("abelian_1_5"),
            diag_surface([1, -1, -1], [-3, 1, 1], name="rank3"),
        ]
        for _ in range(1000):
            model = models[rng.randrange(len(models))]
            e = ChernData(
                2,
                DivisorClass([rng.randint(-5, 5) for _ in range(model.rank)]),
                rng.randint(-10, 10),
            )
            n = DivisorClass([rng.randint(-5, 5) for _ in range(model.rank)])
            assert discriminant(model, twist(model, e, n)) == discriminant(model, e)


def test_criterion_09_riemann_roch_oracle():
    with criterion(9, "plane sections match the monomial count; chi is integral everywhere"):
        p2 = load_fixture("p2")
        h = DivisorClass([1])
        for d in range(0, 11):
            monomials = sum(
                1 for a, b in itertools.product(range(d + 1), repeat=2) if a + b <= d
            )
            assert euler_characteristic(p2, d * h) == monomials
        rng = random.Random(909)
        models = [
            p2,
            load_fixture("p1xp1"),
            load_fixture("blp2"),
            load_fixture("k3_rank2"),
            load_fixture("abelian_1_5"),
        ]
        for _ in range(1000):
            model = models[rng.randrange(len(models))]
            d = DivisorClass([rng.randint(-9, 9) for _ in range(model.rank)])
            assert isinstance(euler_characteristic(model, d), int)


def test_criterion_10_k3_endomorphism_identity():
    with criterion(10, "chi(End) via Riemann-Roch equals 2 - 2*rho on 100 random triples"):
        rng = random.Random(1010)
        for _ in range(100):
            r, d, g = rng.randint(1, 5), rng.randint(0, 20), rng.randint(2, 12)
            value = k3_end_euler(r, d, g)
            assert value == 2 - 2 * (g - (r + 1) * (g - d + r))


def test_criterion_11_rounding_calculus():
    with criterion(11, "1000 random Q-divisors satisfy the rounding identities"):
        rng = random.Random(1111)
        comps = [
            PrimeComponent("A", DivisorClass([1, 0]), {"x": 1}),
            PrimeComponent("B", DivisorClass([0, 1]), {"x": 2, "y": 1}),
            PrimeComponent("C", DivisorClass([1, 1]), {"y": 3}),
        ]

        def rand_qd():
            return QDivisor(
                (Fraction(rng.randint(-40, 40), rng.randint(1, 12)), c)
                for c in comps
                if rng.random() < 0.8
            )

        for _ in range(1000):
            m = rand_qd()
            assert round_down(m) + fractional_part(m) == m
            assert all(0 <= c < 1 for c, _ in fractional_part(m).terms)
            assert round_up(m) == -round_down(-m)
            n = rand_qd()
            for point in ("x", "y"):
                assert mult_at(m + n, point) == mult_at(m, point) + mult_at(n, point)


def test_criterion_12_seshadri_bounds():
    with criterion(12, "pencil fixtures bound the constant by 1/m; plane gives 1; homogeneity"):
        for d, m, a in ((4, 3, 2), (5, 4, 2), (6, 5, 3)):
            ex = miranda_example(d, m, a)
            bound = seshadri_at_point(ex.model, ex.l, ex.point)
            assert bound.value <= Fraction(1, m)
            assert bound.achieving_curve == "D"
        p2 = load_fixture("p2")
        h = DivisorClass([1])
        assert seshadri_at_point(p2, h, "x").value == 1
        for k in range(1, 6):
            assert seshadri_at_point(p2, k * h, "x").value == k


def test_criterion_13_thresholds_and_float_ban():
    with criterion(13, "jet thresholds (5,3)/(10,7) via exact squaring; no floats in source"):
        p2 = load_fixture("p2")
        five = diag_surface(
            [5], [1],
            curves=[CurveRecord("g", DivisorClass([1]), {"x": 1}, genus=6)],
            name="five",
        )
        report = singularity_production_check(five, DivisorClass([1]), 0, "x")
        assert report.verdict == "criterion-holds"
        [fs] = [t for t in report.trace if "f_0" in t.check]
        assert fs.passed and (fs.left, fs.right) == (4, 5)

        ten = diag_surface(
            [10], [0], chi=2,
            curves=[CurveRecord("g", DivisorClass([1]), {"x": 1}, genus=6)],
            name="ten",
        )
        report = singularity_production_check(ten, DivisorClass([1]), 1, "x")
        [l2_line] = [t for t in report.trace if t.check.startswith("L^2 >=")]
        assert l2_line.right == 10
        [deg_line] = [t for t in report.trace if "min L.C" in t.check]
        assert deg_line.right == 7
        [fs] = [t for t in report.trace if "f_1" in t.check]
        assert fs.passed and (fs.left, fs.right) == (9, 10)

        # the source-level ban: no float/complex constants, no float() calls,
        # no float-bearing modules anywhere in the package
        banned_modules = {"math", "cmath", "numpy", "statistics", "random", "decimal"}
        package_root = pathlib.Path(surfcalc.__file__).parent
        for source in sorted(package_root.rglob("*.py")):
            tree = ast.parse(source.read_text(encoding="utf-8"))
            for node in ast.walk(tree):
                if isinstance(node, ast.Constant):
                    assert not isinstance(node.value, (float, complex)), (
                        source, node.lineno)
                if isinstance(node, ast.Name):
                    assert node.id not in ("float", "complex"), (source, node.lineno)
                if isinstance(node, ast.Import):
                    for alias in node.names:
                        assert alias.name.split(".")[0] not in banned_modules, source
                if isinstance(node, ast.ImportFrom) and node.module:
                    assert node.module.split(".")[0] not in banned_modules, source


def test_criterion_14_suite_wall_clock(session_start):
    with criterion(14, "suite wall clock stays under sixty seconds"):
        assert time.monotonic() - session_start < 60
        assert time.monotonic() - MODULE_START < 60
