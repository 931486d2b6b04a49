#include "hornvol/multiplicity.hpp"
#include "hornvol/volume.hpp"

#include <doctest.h>

#include <cmath>
#include <random>
#include <set>

using namespace hornvol;

namespace {

const RootSystem& b2() {
    static const RootSystem rs = build_root_system(Family::B, 2);
    return rs;
}

Point2 pt(long x, long y) { return {Rational(x), Rational(y)}; }
Point2 ptq(Rational x, Rational y) { return {x, y}; }

const PiecewiseQuadratic& analysis_17_4() {
    static const PiecewiseQuadratic pq = piecewise_analyze_b2(pt(17, 4), pt(15, 9));
    return pq;
}

}  // namespace

TEST_CASE("orthonormal coordinates of Dynkin labels") {
    CHECK(b2_orthonormal(IVec{4, 7}) == ptq(make_rational(15, 2), make_rational(7, 2)));
    CHECK(b2_orthonormal(IVec{5, 3}) == ptq(make_rational(13, 2), make_rational(3, 2)));
    CHECK(b2_orthonormal(IVec{2, 4}) == pt(4, 2));
    CHECK(b2_orthonormal(IVec{1, 1}) == ptq(make_rational(3, 2), make_rational(1, 2)));
    CHECK_THROWS_AS(require_regular_ordered(pt(2, 2), "x"), std::domain_error);
    CHECK_THROWS_AS(require_regular_ordered(pt(2, 0), "x"), std::domain_error);
    CHECK_NOTHROW(require_regular_ordered(pt(3, 1), "x"));
}

TEST_CASE("direct volume function values") {
    Point2 a = b2_orthonormal(IVec{4, 7}), b = b2_orthonormal(IVec{5, 3}), g = b2_orthonormal(IVec{2, 4});
    CHECK(j_b2(a, b, g) == make_rational(7, 4));
    CHECK(j_b2_triple_sum(a, b, g) == make_rational(7, 4));
    Point2 a3{3 * a[0], 3 * a[1]}, b3{3 * b[0], 3 * b[1]}, g3{3 * g[0], 3 * g[1]};
    CHECK(j_b2(a3, b3, g3) == make_rational(63, 4));
    CHECK(j_b2(pt(17, 4), pt(15, 9), pt(40, 0)) == 0);
    Point2 rho = b2_orthonormal(IVec{1, 1});
    CHECK(j_b2(rho, rho, rho) == make_rational(3, 8));
    CHECK(j_b2_triple_sum(rho, rho, rho) == make_rational(3, 8));
    // Rational arguments exercise the mpq fallback of the scaled kernel.
    Point2 big{make_rational(1000000007, 3), make_rational(1, 7)};
    CHECK(j_b2(big, pt(5, 2), ptq(make_rational(1000000007, 3) + 1, make_rational(1, 2))) ==
          j_b2_triple_sum(big, pt(5, 2), ptq(make_rational(1000000007, 3) + 1, make_rational(1, 2))));
}

TEST_CASE("reduced sum agrees with the full triple sum") {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<long> d(1, 40);
    for (int i = 0; i < 60; ++i) {
        Point2 a = ptq(make_rational(d(rng), 2), make_rational(d(rng), 3));
        Point2 b = ptq(make_rational(d(rng), 5), make_rational(d(rng), 2));
        Point2 g = ptq(make_rational(d(rng), 2), make_rational(d(rng), 4));
        CHECK(j_b2(a, b, g) == j_b2_triple_sum(a, b, g));
    }
}

TEST_CASE("Horn containment") {
    CHECK(horn_contains_b2(pt(17, 4), pt(15, 9), pt(32, 13)));
    CHECK_FALSE(horn_contains_b2(pt(17, 4), pt(15, 9), pt(40, 0)));
    CHECK_THROWS(horn_contains_b2(pt(4, 17), pt(15, 9), pt(20, 3)));
    RationalPolygon p = horn_polygon_b2(pt(17, 4), pt(15, 9));
    CHECK(p.dim == 2);
    bool top = false;
    for (const auto& v : p.vertices) top = top || v == pt(32, 13);
    CHECK(top);
    for (const auto& v : p.vertices) CHECK(horn_contains_b2(pt(17, 4), pt(15, 9), v));
}

TEST_CASE("support of the volume function is the Horn polygon") {
    for (auto [a, b] : {std::pair{pt(17, 4), pt(15, 9)}, std::pair{pt(15, 3), pt(17, 8)}, std::pair{pt(5, 2), pt(5, 2)}}) {
        for (long x = 0; x <= 2 * 34; ++x)
            for (long y = 0; y <= x && y <= 40; ++y) {
                Point2 g = ptq(make_rational(x, 2), make_rational(y, 2) + make_rational(1, 7));
                if (g[1] > g[0]) continue;
                bool inside = horn_contains_b2(a, b, g);
                Rational v = j_b2(a, b, g);
                if (!inside) CHECK(v == 0);
                else CHECK(v >= 0);
            }
    }
}

TEST_CASE("singular lines") {
    auto lines = singular_lines_b2(pt(17, 4), pt(15, 9));
    std::set<Rational> g1;
    for (const auto& l : lines)
        if (l.kind == LineKind::Gamma1) g1.insert(l.level);
    CHECK(g1 == std::set<Rational>{26, 19, 13, 8, 11});
    for (const auto& l : lines) CHECK(l.multiplicity >= 1);

    auto same = singular_lines_b2(pt(5, 2), pt(5, 2));
    bool zero_diff = false;
    int merged = 0;
    std::set<std::pair<int, Rational>> keys;
    for (const auto& l : same) {
        CHECK(keys.insert({static_cast<int>(l.kind), l.level}).second);
        if (l.level == 0) zero_diff = true;
        merged += l.multiplicity > 1 ? 1 : 0;
    }
    CHECK(zero_diff);
    CHECK(merged > 0);
}

TEST_CASE("half squared distance and the Pythagorean identity at four-prong vertices") {
    Point2 v = pt(26, 11);
    Quadratic2 x = half_delta_squared(1, 0, v[0]), y = half_delta_squared(0, 1, v[1]);
    Quadratic2 s = half_delta_squared(1, 1, v[0] + v[1]), d = half_delta_squared(1, -1, v[0] - v[1]);
    CHECK((x + y - s - d).is_zero());
    Quadratic2 h = half_delta_squared(1, 1, 3, 2);
    CHECK(h(pt(3, 2)) == make_rational(2 * 4, 4));
}

TEST_CASE("piecewise quadratic structure for (17,4),(15,9)") {
    const PiecewiseQuadratic& pq = analysis_17_4();
    CHECK_FALSE(pq.swapped);
    CHECK(pq.cells.size() > 20);
    CHECK(pq.all_walls_classified());
    CHECK(pq.all_loops_consistent());
    std::size_t ramps = 0, linear = 0;
    for (const auto& w : pq.walls) {
        CHECK(w.kind != WallKind::Anomalous);
        if (w.kind == WallKind::QuadraticRamp) {
            ++ramps;
            CHECK((w.k == 1 || w.k == -1));
        }
        if (w.kind == WallKind::BoundaryLinear) ++linear;
    }
    CHECK(ramps > 0);
    CHECK(linear > 0);
    CHECK(pq.four_prong.size() == 4);
    for (const auto& f : pq.four_prong) CHECK(f.lines_through == 4);
    bool has_i = false;
    for (const auto& f : pq.four_prong) has_i = has_i || (f.label == 'I' && f.point == pt(26, 11));
    CHECK(has_i);
    std::mt19937_64 rng(3);
    std::uniform_int_distribution<long> d(0, 64 * 32);
    int tested = 0;
    while (tested < 200) {
        Point2 g = ptq(make_rational(d(rng), 64), make_rational(d(rng), 97));
        if (!horn_contains_b2(pq.alpha, pq.beta, g)) continue;
        CHECK(pq.evaluate(g) == j_b2(pq.alpha, pq.beta, g));
        ++tested;
    }
    CHECK(pq.evaluate(pt(40, 0)) == 0);
}

TEST_CASE("second Horn polygon and the swapped orientation") {
    PiecewiseQuadratic pq = piecewise_analyze_b2(pt(15, 3), pt(17, 8));
    CHECK(pq.all_walls_classified());
    CHECK(pq.all_loops_consistent());
    PiecewiseQuadratic sw = piecewise_analyze_b2(pt(15, 9), pt(17, 4));
    CHECK(sw.swapped);
    CHECK(sw.cells.size() == analysis_17_4().cells.size());
    for (long x = 10; x < 32; x += 3)
        for (long y = 1; y < x && y < 13; y += 2) CHECK(sw.evaluate(pt(x, y)) == j_b2(pt(15, 9), pt(17, 4), pt(x, y)));
}

TEST_CASE("C1 smoothness and independent transect scan") {
    C1Report c1 = c1_check_b2(analysis_17_4(), make_rational(1, 10000));
    CHECK(c1.walls_checked > 100);
    CHECK(c1.ok);
    TransectReport t = transect_scan_b2(pt(17, 4), pt(15, 9), 40, 200, 11);
    CHECK(t.breaks > 0);
    CHECK(t.unexplained == 0);
}

TEST_CASE("exact normalization of the Horn density") {
    CHECK(pdf_normalization_b2(analysis_17_4()) == 1);
    for (auto [a, b] : {std::pair{pt(3, 1), pt(2, 1)}, std::pair{pt(5, 2), pt(5, 2)}, std::pair{pt(7, 3), pt(4, 1)}}) {
        PiecewiseQuadratic pq = piecewise_analyze_b2(a, b);
        CHECK(pdf_normalization_b2(pq) == 1);
    }
    CHECK(pdf_b2(pt(17, 4), pt(15, 9), pt(40, 0)) == 0);
    CHECK(pdf_b2(pt(17, 4), pt(15, 9), pt(25, 0)) == 0);
    const PiecewiseQuadratic& pq = analysis_17_4();
    CHECK(pdf_mass_in_box(pq, 0, 100, 0, 100) == 1);
    Rational left = pdf_mass_in_box(pq, 0, 20, 0, 100), right = pdf_mass_in_box(pq, 20, 100, 0, 100);
    CHECK(left + right == 1);
    CHECK(left > 0);
}

TEST_CASE("volume function from LR coefficients") {
    Rational direct = j_b2(b2_orthonormal(IVec{4, 7}), b2_orthonormal(IVec{5, 3}), b2_orthonormal(IVec{2, 4}));
    CHECK(j_lr_unshifted({4, 7}, {5, 3}, {2, 4}) == make_rational(7, 4));
    CHECK(j_lr_unshifted({4, 7}, {5, 3}, {2, 4}) == direct);
    CHECK(j_lr_shifted({0, 0}, {0, 0}, {0, 0}) == make_rational(3, 8));
    CHECK(j_lr_shifted({4, 7}, {5, 3}, {2, 4}) ==
          j_b2(b2_orthonormal(IVec{5, 8}), b2_orthonormal(IVec{6, 4}), b2_orthonormal(IVec{3, 5})));
    CHECK_THROWS_AS(j_lr_unshifted({0, 7}, {5, 3}, {2, 4}), std::domain_error);
    CHECK_THROWS_AS(j_lr_shifted({0, 1}, {0, 0}, {0, 0}), std::domain_error);

    // Deep-nu form: quarter of the sum of four ordinary coefficients.
    std::int64_t sum = 0;
    for (IVec k : {IVec{2, 0}, IVec{1, 2}, IVec{1, 0}, IVec{0, 2}})
        sum += lr_klimyk(b2(), IVec{3, 6}, IVec{4, 2}, IVec{2 - k[0], 4 - k[1]});
    CHECK(Rational(static_cast<long>(sum), 4) == make_rational(7, 4));
}

TEST_CASE("LR relations on a sweep of compatible triples") {
    // rho is not in the root lattice, so the two relations apply to different triples.
    int shifted = 0, unshifted = 0;
    for (long a = 0; a <= 4; ++a)
        for (long b = 0; b <= 4; ++b)
            for (long c = 0; c <= 4; ++c)
                for (long d = 0; d <= 4; ++d)
                    for (long e = 0; e <= 4; ++e)
                        for (long f = 0; f <= 4; ++f) {
                            IVec l{a, b}, m{c, d}, n{e, f};
                            if (!integral_simple_difference(b2(), l, m, n)) continue;
                            Rational plain = j_b2(b2_orthonormal(l), b2_orthonormal(m), b2_orthonormal(n));
                            if (a && b && c && d && e && f) {
                                CHECK(j_lr_unshifted(l, m, n) == plain);
                                ++unshifted;
                            }
                            if (a > 2 || c > 2 || e > 2) continue;
                            Point2 ls = b2_orthonormal(IVec{a + 1, b + 1}), ms = b2_orthonormal(IVec{c + 1, d + 1}),
                                   ns = b2_orthonormal(IVec{e + 1, f + 1});
                            CHECK(j_lr_shifted(l, m, n) == j_b2(ls, ms, ns));
                            ++shifted;
                        }
    CHECK(shifted > 100);
    CHECK(unshifted > 100);
}

TEST_CASE("coefficient sums and Kissinger points") {
    KappaData k = kappa_data(b2(), false);
    Rational s = 0;
    for (std::size_t i = 0; i < k.weights.size(); ++i) s += k.coefficients[i] * Rational(weyl_dimension(b2(), k.weights[i]));
    CHECK(s == 1);
    KappaData kh = kappa_data(b2(), true);
    CHECK(kh.coefficients[0] * Rational(weyl_dimension(b2(), kh.weights[0])) == 1);
    CHECK(kappa_weights(b2(), false) == std::vector<IVec>{{0, 0}, {1, 0}});
    CHECK(kappa_weights(b2(), true) == std::vector<IVec>{{0, 1}});

    KissingerResult r0 = c_kappa_via_kissinger(b2(), {0, 0}, 2, 2);
    CHECK(r0.coefficient == make_rational(3, 8));
    CHECK(r0.fit.poly.coeffs[0] == RVec{1, make_rational(3, 4), make_rational(3, 8)});
    CHECK(r0.fit.poly.class_vanishes(1));
    CHECK(c_kappa_via_kissinger(b2(), {1, 0}, 2, 2).coefficient == make_rational(1, 8));
    CHECK(c_kappa_via_kissinger(b2(), {0, 1}, 2, 2).coefficient == make_rational(1, 4));
}

TEST_CASE("real symmetric SO(2) case") {
    CHECK(j_so2_symmetric(1, 2, 0.5) == 0);
    CHECK(j_so2_symmetric(1, 2, 3.5) == 0);
    CHECK(std::isinf(j_so2_symmetric(1, 2, 1)));
    CHECK(std::isinf(j_so2_symmetric(1, 2, 3)));
    CHECK(j_so2_symmetric(1, 2, 1 + 1e-9) > j_so2_symmetric(1, 2, 2));
    CHECK(j_so2_symmetric(1, 2, 3 - 1e-9) > j_so2_symmetric(1, 2, 2));
    CHECK_THROWS_AS(j_so2_symmetric(0, 2, 1), std::domain_error);
    for (double g : {1.2, 1.7, 2.0, 2.6, 2.95}) {
        double ratio = j_so2_symmetric(1, 2, g) / so2_density(1, 2, g);
        CHECK(ratio == doctest::Approx(std::sqrt(2 / g) / std::numbers::pi).epsilon(1e-12));
        double h = 1e-6;
        double numeric = (so2_cdf(1, 2, g + h) - so2_cdf(1, 2, g - h)) / (2 * h);
        CHECK(numeric == doctest::Approx(so2_density(1, 2, g)).epsilon(1e-5));
    }
    CHECK(so2_cdf(1, 2, 1) == 0);
    CHECK(so2_cdf(1, 2, 3) == 1);
}
