#include "hornvol/linalg.hpp"
#include "hornvol/rootsys.hpp"

#include <doctest.h>

#include <cmath>
#include <random>
#include <set>

using namespace hornvol;

namespace {

struct Case {
    Family f;
    int rank;
    int positive_roots;
};

// Number of positive roots by family: A r(r+1)/2, B and C r^2, D r(r-1); exceptional fixed.
std::vector<Case> all_cases() {
    std::vector<Case> out;
    for (int r = 1; r <= 8; ++r) out.push_back({Family::A, r, r * (r + 1) / 2});
    for (int r = 2; r <= 8; ++r) out.push_back({Family::B, r, r * r});
    for (int r = 2; r <= 8; ++r) out.push_back({Family::C, r, r * r});
    for (int r = 3; r <= 8; ++r) out.push_back({Family::D, r, r * (r - 1)});
    out.push_back({Family::E6, 6, 36});
    out.push_back({Family::E7, 7, 63});
    out.push_back({Family::E8, 8, 120});
    out.push_back({Family::F4, 4, 24});
    out.push_back({Family::G2, 2, 6});
    return out;
}

Rational prod_delta_ratio(const RootSystem& rs, const IVec& lambda) {
    Weight shifted = dynkin(lambda);
    for (auto& c : shifted.coords) c += 1;
    return delta_g(rs, shifted) / delta_g(rs, rs.weyl_vector);
}

}  // namespace

TEST_CASE("positive root counts, Cartan matrices and rho") {
    for (const auto& c : all_cases()) {
        CAPTURE(family_name(c.f));
        CAPTURE(c.rank);
        RootSystem rs = build_root_system(c.f, c.rank);
        CHECK(rs.num_positive_roots() == c.positive_roots);
        CHECK(static_cast<int>(rs.positive_roots_simple.size()) == c.positive_roots);
        for (int i = 0; i < rs.rank; ++i)
            for (int j = 0; j < rs.rank; ++j) {
                Rational expected =
                    2 * dot(rs.simple_roots[i], rs.simple_roots[j]) / dot(rs.simple_roots[j], rs.simple_roots[j]);
                CHECK(Rational(rs.cartan_matrix[i][j]) == expected);
            }
        for (const auto& x : rs.weyl_vector.coords) CHECK(x == 1);
        // rho is half the sum of the positive roots.
        RVec half_sum(rs.ambient_dim, 0);
        for (const auto& root : rs.positive_roots)
            for (int k = 0; k < rs.ambient_dim; ++k) half_sum[k] += root[k] / 2;
        Weight rho_orth = to_basis(rs, rs.weyl_vector, Basis::Orthonormal);
        CHECK(rho_orth.coords == half_sum);
    }
}

TEST_CASE("unsupported family and rank pairs are rejected") {
    CHECK_THROWS(build_root_system(Family::B, 1));
    CHECK_THROWS(build_root_system(Family::D, 2));
    CHECK_THROWS(build_root_system(Family::G2, 3));
    CHECK_THROWS(build_root_system("X5"));
    CHECK(build_root_system("B3").rank == 3);
    CHECK(build_root_system("A1").num_positive_roots() == 1);
}

TEST_CASE("B2 realization") {
    RootSystem rs = build_root_system(Family::B, 2);
    std::set<std::vector<Rational>> roots(rs.positive_roots.begin(), rs.positive_roots.end());
    std::set<std::vector<Rational>> expected{{1, -1}, {0, 1}, {1, 0}, {1, 1}};
    CHECK(roots == expected);
    Weight rho_simple = to_basis(rs, rs.weyl_vector, Basis::SimpleRoot);
    CHECK(rho_simple.coords == RVec{make_rational(3, 2), 2});
    CHECK(rs.num_positive_roots() - rs.rank == 2);
    RootSystem b3 = build_root_system(Family::B, 3);
    CHECK(b3.num_positive_roots() == 9);
    CHECK(b3.num_positive_roots() - b3.rank == 6);
}

TEST_CASE("B2 Weyl group table") {
    const auto& table = b2_weyl_table();
    std::set<std::tuple<bool, int, int>> distinct;
    for (const auto& w : table) distinct.insert({w.swap, w.sign1, w.sign2});
    CHECK(distinct.size() == 8);
    const Weight x = orthonormal({17, 4});
    for (const auto& w : table) {
        if (!w.swap && w.sign1 == 1 && w.sign2 == 1) CHECK(apply_weyl(w, x).coords == x.coords);
        if (w.swap && w.sign1 == 1 && w.sign2 == 1) {
            CHECK(apply_weyl(w, x).coords == RVec{4, 17});
            CHECK(w.epsilon() == -1);
        }
        if (!w.swap && w.sign1 == -1 && w.sign2 == 1) {
            CHECK(apply_weyl(w, x).coords == RVec{-17, 4});
            CHECK(w.epsilon() == -1);
        }
    }
    // The sign is multiplicative: compose on a generic point and find the product in the table.
    const std::array<Rational, 2> generic{make_rational(7, 3), make_rational(2, 5)};
    for (const auto& a : table)
        for (const auto& b : table) {
            auto composed = a.apply(b.apply(generic));
            int found = 0;
            for (const auto& c : table)
                if (c.apply(generic) == composed) {
                    ++found;
                    CHECK(c.epsilon() == a.epsilon() * b.epsilon());
                }
            CHECK(found == 1);
        }
}

TEST_CASE("Weyl group orders") {
    CHECK(weyl_group(build_root_system(Family::B, 2)).size() == 8);
    CHECK(weyl_group(build_root_system(Family::A, 3)).size() == 24);
    CHECK(weyl_group(build_root_system(Family::G2, 2)).size() == 12);
    CHECK(weyl_group(build_root_system(Family::F4, 4)).size() == 1152);
    CHECK(weyl_group(build_root_system(Family::B, 3)).size() == 48);
    // Signs: half of the elements are odd.
    int odd = 0;
    for (const auto& w : weyl_group(build_root_system(Family::A, 3))) odd += w.sign < 0;
    CHECK(odd == 12);
}

TEST_CASE("Weyl dimension formula") {
    RootSystem b2 = build_root_system(Family::B, 2);
    CHECK(weyl_dimension(b2, IVec{0, 0}) == 1);
    CHECK(weyl_dimension(b2, IVec{1, 0}) == 5);
    CHECK(weyl_dimension(b2, IVec{0, 1}) == 4);
    CHECK(weyl_dimension(b2, IVec{0, 2}) == 10);
    RootSystem b3 = build_root_system(Family::B, 3);
    std::vector<IVec> k{{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {2, 0, 0}, {0, 0, 2}, {1, 1, 0}, {1, 0, 2}};
    std::vector<long> dims{1, 7, 21, 27, 35, 105, 189};
    for (std::size_t i = 0; i < k.size(); ++i) CHECK(weyl_dimension(b3, k[i]) == dims[i]);
    CHECK(weyl_dimension(b3, IVec{0, 0, 1}) == 8);
    // Independent route: ratio of products over positive roots, in every family.
    for (const auto& c : all_cases()) {
        RootSystem rs = build_root_system(c.f, c.rank);
        IVec lambda(rs.rank, 0);
        lambda[0] = 1;
        lambda[rs.rank - 1] += 2;
        CAPTURE(rs.name());
        CHECK(Rational(weyl_dimension(rs, lambda)) == prod_delta_ratio(rs, lambda));
    }
    // Dimension 1 exactly for the trivial representation on a grid.
    for (long a = 0; a <= 3; ++a)
        for (long b = 0; b <= 3; ++b) {
            BigInt d = weyl_dimension(b2, IVec{a, b});
            CHECK(d >= 1);
            CHECK((d == 1) == (a == 0 && b == 0));
        }
    CHECK_THROWS(weyl_dimension(b2, IVec{-1, 0}));
}

TEST_CASE("Delta products") {
    RootSystem a2 = build_root_system(Family::A, 2);
    CHECK(delta_g(a2, a2.weyl_vector) == 2);
    RootSystem b2 = build_root_system(Family::B, 2);
    CHECK(delta_g(b2, orthonormal({3, 3})) == 0);
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<int> d(-40, 40);
    for (int t = 0; t < 20; ++t) {
        Weight x = orthonormal({make_rational(d(rng), 7), make_rational(d(rng), 3)});
        for (const auto& w : b2_weyl_table())
            CHECK(delta_g(b2, apply_weyl(w, x)) == w.epsilon() * delta_g(b2, x));
    }
}

TEST_CASE("kappa constants") {
    for (int r = 2; r <= 6; ++r) CHECK(kappa_constants(build_root_system(Family::B, r)).K == BigInt(1) << r);
    for (auto rs : {build_root_system(Family::A, 4), build_root_system(Family::D, 5), build_root_system(Family::E6, 6)})
        CHECK(kappa_constants(rs).K == 1);
    CHECK(kappa_constants(build_root_system(Family::G2, 2)).K == 27);
    // Normalized Delta(rho) = prod l_i! / K in every family.
    for (const auto& c : all_cases()) {
        KappaG k = kappa_constants(build_root_system(c.f, c.rank));
        CHECK(k.delta_rho_normalized == Rational(k.exponent_factorials) / Rational(k.K));
        CHECK(k.two_pi_exponent == c.positive_roots);
    }
}

TEST_CASE("kappa_theta") {
    ExactConstant k = kappa_theta(1, 2);
    CHECK(k.coefficient == 1);
    CHECK(k.two_pi_exponent == 1);
    CHECK(k.sqrt_pi_power == 0);
    // theta = 2, n = 2: (2 pi)^2 * 2 / (Gamma(5) / Gamma(3)).
    ExactConstant k2 = kappa_theta(2, 2);
    CHECK(k2.coefficient == make_rational(1, 6));
    CHECK(k2.two_pi_exponent == 2);
    // theta = 1 reproduces kappa of su(n).
    for (int n = 2; n <= 7; ++n) {
        ExactConstant kt = kappa_theta(1, n);
        KappaG kg = kappa_constants(build_root_system(Family::A, n - 1));
        CHECK(kt.coefficient == kg.prefactor);
        CHECK(kt.two_pi_exponent == kg.two_pi_exponent);
    }
    // theta = 1/2, n = 2: (2 pi)^(1/2) * 2 / (Gamma(2) / Gamma(3/2)) = (2 pi)^(1/2) * sqrt(pi).
    ExactConstant kh = kappa_theta(make_rational(1, 2), 2);
    CHECK(kh.coefficient == 1);
    CHECK(kh.sqrt_pi_power == 1);
    CHECK(kh.two_pi_exponent == make_rational(1, 2));
    CHECK(kh.to_double() == doctest::Approx(std::sqrt(2 * M_PI) * std::sqrt(M_PI)));
    CHECK_THROWS(kappa_theta(3, 2));
    CHECK_THROWS(kappa_theta(1, 1));
}

TEST_CASE("compatibility") {
    RootSystem b2 = build_root_system(Family::B, 2);
    CHECK_FALSE(is_compatible(b2, dynkin({0, 1}), dynkin({0, 1}), dynkin({0, 1})));
    CHECK(is_compatible(b2, dynkin({1, 0}), dynkin({1, 0}), dynkin({1, 0})));
    for (const auto& c : all_cases()) {
        RootSystem rs = build_root_system(c.f, c.rank);
        IVec l(rs.rank, 1), m(rs.rank, 2), n(rs.rank, 3);
        CHECK(is_compatible(rs, dynkin(l), dynkin(m), dynkin(n)));
    }
}

TEST_CASE("basis conversions round-trip") {
    std::mt19937_64 rng(3);
    std::uniform_int_distribution<int> d(-9, 9);
    for (const auto& c : all_cases()) {
        RootSystem rs = build_root_system(c.f, c.rank);
        RVec coords;
        for (int i = 0; i < rs.rank; ++i) coords.push_back(make_rational(d(rng), 1 + (i % 3)));
        Weight w{coords, Basis::Dynkin};
        for (Basis via : {Basis::SimpleRoot, Basis::Orthonormal}) {
            Weight there = to_basis(rs, w, via);
            Weight back = to_basis(rs, there, Basis::Dynkin);
            CHECK(back.coords == coords);
        }
        // Dynkin labels are the Cartan-transposed simple coordinates.
        Weight simple = to_basis(rs, w, Basis::SimpleRoot);
        for (int j = 0; j < rs.rank; ++j) {
            Rational s = 0;
            for (int i = 0; i < rs.rank; ++i) s += simple.coords[i] * rs.cartan_matrix[i][j];
            CHECK(s == coords[j]);
        }
    }
}

TEST_CASE("simple reflections on Dynkin labels") {
    RootSystem b2 = build_root_system(Family::B, 2);
    IVec x{3, 5};
    reflect_dynkin(b2, 0, x);
    // s_1 subtracts 3 times the first row of the Cartan matrix.
    CHECK(x == IVec{-3, 5 + 3 * 2});
    reflect_dynkin(b2, 0, x);
    CHECK(x == IVec{3, 5});
}
