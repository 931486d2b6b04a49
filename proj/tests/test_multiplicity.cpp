#include "hornvol/bzpolytope.hpp"
#include "hornvol/linalg.hpp"
#include "hornvol/multiplicity.hpp"

#include <doctest.h>

#include <random>

using namespace hornvol;

namespace {

// Brute-force count of a alpha1 + b alpha2 = n1 alpha1 + n2 alpha2 + n3 (alpha1+alpha2) + n4 (alpha1+2alpha2).
std::int64_t partitions_b2_brute(std::int64_t a, std::int64_t b) {
    if (a < 0 || b < 0) return 0;
    std::int64_t count = 0;
    for (std::int64_t n3 = 0; n3 <= a; ++n3)
        for (std::int64_t n4 = 0; n3 + n4 <= a && n3 + 2 * n4 <= b; ++n4) ++count;
    return count;
}

// Weight multiplicity by the Kostant multiplicity formula with the brute-force partition count.
std::int64_t b2_multiplicity_oracle(const IVec& lambda, const IVec& mu) {
    static const RootSystem rs = build_root_system(Family::B, 2);
    std::int64_t total = 0;
    for (const auto& w : weyl_group(rs)) {
        IVec shifted = w.apply(IVec{lambda[0] + 1, lambda[1] + 1});
        std::int64_t d1 = shifted[0] - mu[0] - 1, d2 = shifted[1] - mu[1] - 1;
        // Dynkin (d1, d2) in simple coordinates is (d1 + d2/2, d1 + d2).
        if (d2 % 2 != 0) continue;
        total += w.sign * partitions_b2_brute(d1 + d2 / 2, d1 + d2);
    }
    return total;
}

BigInt weighted_dimension(const RootSystem& rs, const std::map<IVec, std::int64_t>& decomposition) {
    BigInt total = 0;
    for (const auto& [nu, m] : decomposition) total += m * weyl_dimension(rs, nu);
    return total;
}

}  // namespace

TEST_CASE("Freudenthal weight systems") {
    RootSystem b2 = build_root_system(Family::B, 2);
    auto spinor = freudenthal_weights(b2, IVec{0, 1});
    CHECK(spinor->entries.size() == 4);
    for (const auto& [w, m] : spinor->entries) CHECK(m == 1);
    auto adjoint = freudenthal_weights(b2, IVec{0, 2});
    CHECK(adjoint->dominant.at(IVec{0, 0}) == 2);
    for (const auto& rs : {build_root_system(Family::A, 3), build_root_system(Family::G2, 2), b2}) {
        auto trivial = freudenthal_weights(rs, IVec(rs.rank, 0));
        CHECK(trivial->entries.size() == 1);
        CHECK(trivial->total() == 1);
    }
    // Every multiplicity against the Kostant multiplicity formula.
    for (std::int64_t a = 0; a <= 4; ++a)
        for (std::int64_t b = 0; b <= 4; ++b) {
            auto t = freudenthal_weights(b2, IVec{a, b});
            for (const auto& [w, m] : t->entries) CHECK(m == b2_multiplicity_oracle({a, b}, w));
        }
}

TEST_CASE("weight systems sum to the Weyl dimension and are Weyl invariant") {
    std::vector<std::pair<RootSystem, IVec>> cases = {
        {build_root_system(Family::A, 2), {2, 1}},   {build_root_system(Family::B, 2), {3, 2}},
        {build_root_system(Family::C, 3), {1, 0, 1}}, {build_root_system(Family::B, 3), {1, 1, 1}},
        {build_root_system(Family::G2, 2), {1, 1}},  {build_root_system(Family::D, 4), {1, 0, 0, 1}},
        {build_root_system(Family::F4, 4), {1, 0, 0, 0}}};
    for (const auto& [rs, lambda] : cases) {
        CAPTURE(rs.name());
        auto t = freudenthal_weights(rs, lambda);
        CHECK(t->total() == weyl_dimension(rs, lambda));
        std::map<IVec, std::int64_t> all(t->entries.begin(), t->entries.end());
        for (const auto& [w, m] : t->entries)
            for (int i = 0; i < rs.rank; ++i) {
                IVec r = w;
                reflect_dynkin(rs, i, r);
                CHECK(all.at(r) == m);
            }
    }
}

TEST_CASE("Kostant partition function") {
    RootSystem b2 = build_root_system(Family::B, 2);
    CHECK(kostant_partition(b2, Weight{{0, 0}, Basis::SimpleRoot}) == 1);
    CHECK(kostant_partition(b2, Weight{{1, 1}, Basis::SimpleRoot}) == 2);
    CHECK(kostant_partition(b2, dynkin({0, 1})) == 0);
    for (std::int64_t a = 0; a <= 12; ++a)
        for (std::int64_t b = 0; b <= 12; ++b) {
            CHECK(kostant_b2(a, b) == partitions_b2_brute(a, b));
            CHECK(kostant_partition(b2, Weight{{Rational(static_cast<long>(a)), Rational(static_cast<long>(b))},
                                               Basis::SimpleRoot}) == partitions_b2_brute(a, b));
        }
    RootSystem a3 = build_root_system(Family::A, 3);
    KostantTable table(a3, IVec{4, 4, 4});
    for (long x = 0; x <= 4; ++x)
        for (long y = 0; y <= 4; ++y)
            for (long z = 0; z <= 4; ++z)
                CHECK(BigInt(static_cast<long>(table(IVec{x, y, z}))) ==
                      kostant_partition(a3, Weight{{x, y, z}, Basis::SimpleRoot}));
    CHECK(table(IVec{-1, 0, 0}) == 0);
    // A2: P(a alpha1 + b alpha2) = min(a, b) + 1.
    RootSystem a2 = build_root_system(Family::A, 2);
    for (long a = 0; a <= 6; ++a)
        for (long b = 0; b <= 6; ++b)
            CHECK(kostant_partition(a2, Weight{{a, b}, Basis::SimpleRoot}) == std::min(a, b) + 1);
}

TEST_CASE("LR coefficients from the worked examples") {
    RootSystem b2 = build_root_system(Family::B, 2);
    CHECK(lr_klimyk(b2, IVec{5, 6}, IVec{3, 4}, IVec{5, 6}) == 10);
    CHECK(lr_klimyk(b2, IVec{4, 7}, IVec{5, 3}, IVec{2, 4}) == 5);
    CHECK(lr_klimyk(b2, IVec{1, 0}, IVec{1, 0}, IVec{1, 0}) == 0);
    CHECK(lr_steinberg(b2, IVec{5, 6}, IVec{3, 4}, IVec{6, 4}) == 10);
    CHECK(lr_steinberg(b2, IVec{5, 6}, IVec{3, 4}, IVec{0, 10}) == 3);
    CHECK(lr_steinberg(b2, IVec{0, 0}, IVec{3, 4}, IVec{3, 4}) == 1);
    CHECK(lr_klimyk(b2, IVec{5, 6}, IVec{3, 4}, IVec{2, 10}) == 8);
    // Saturation fails: C_{w1 w1}^{w1} = 0 but the doubled triple has multiplicity 1.
    CHECK(lr_klimyk(b2, IVec{2, 0}, IVec{2, 0}, IVec{2, 0}) == 1);
    CHECK(lr_steinberg(b2, IVec{2, 0}, IVec{2, 0}, IVec{2, 0}) == 1);
}

TEST_CASE("tensor product decompositions") {
    RootSystem b2 = build_root_system(Family::B, 2);
    auto d = tensor_decompose(b2, IVec{1, 0}, IVec{1, 0});
    std::map<IVec, std::int64_t> expected{{{0, 0}, 1}, {{0, 2}, 1}, {{2, 0}, 1}};
    CHECK(d == expected);
    CHECK(tensor_decompose(b2, IVec{3, 6}, IVec{4, 2}).at(IVec{1, 4}) == 3);
    CHECK(tensor_decompose(b2, IVec{0, 0}, IVec{2, 3}) == std::map<IVec, std::int64_t>{{{2, 3}, 1}});
    // 8 x 8 of su(3) = 1 + 8 + 8 + 10 + 10bar + 27.
    RootSystem a2 = build_root_system(Family::A, 2);
    std::map<IVec, std::int64_t> eight{{{0, 0}, 1}, {{1, 1}, 2}, {{3, 0}, 1}, {{0, 3}, 1}, {{2, 2}, 1}};
    CHECK(tensor_decompose(a2, IVec{1, 1}, IVec{1, 1}) == eight);
    // 7 x 7 of G2 = 1 + 7 + 14 + 27.
    RootSystem g2 = build_root_system(Family::G2, 2);
    IVec seven = weyl_dimension(g2, IVec{1, 0}) == 7 ? IVec{1, 0} : IVec{0, 1};
    IVec fourteen = seven == IVec{1, 0} ? IVec{0, 1} : IVec{1, 0};
    REQUIRE(weyl_dimension(g2, fourteen) == 14);
    IVec twice{seven[0] * 2, seven[1] * 2};
    std::map<IVec, std::int64_t> g2_expected{{{0, 0}, 1}, {seven, 1}, {fourteen, 1}, {twice, 1}};
    CHECK(tensor_decompose(g2, seven, seven) == g2_expected);
    // Dimension sum rule.
    std::vector<std::tuple<RootSystem, IVec, IVec>> pairs = {
        {b2, {2, 3}, {1, 4}}, {a2, {2, 1}, {3, 3}}, {g2, {1, 1}, {2, 0}},
        {build_root_system(Family::B, 3), {1, 0, 1}, {0, 1, 0}}, {build_root_system(Family::C, 3), {1, 1, 0}, {0, 0, 1}}};
    for (const auto& [rs, l, m] : pairs) {
        CAPTURE(rs.name());
        CHECK(weighted_dimension(rs, tensor_decompose(rs, l, m)) == weyl_dimension(rs, l) * weyl_dimension(rs, m));
    }
}

TEST_CASE("three-fold products") {
    RootSystem b2 = build_root_system(Family::B, 2);
    CHECK(lr_triple(b2, IVec{3, 6}, IVec{4, 2}, IVec{0, 0}, IVec{1, 4}) == lr_klimyk(b2, IVec{3, 6}, IVec{4, 2}, IVec{1, 4}));
    CHECK(lr_triple(b2, IVec{3, 6}, IVec{4, 2}, IVec{0, 1}, IVec{1, 3}) == 7);
    CHECK(lr_triple(b2, IVec{1, 0}, IVec{1, 0}, IVec{0, 1}, IVec{0, 0}) == 0);
}

TEST_CASE("Klimyk and Steinberg agree and are symmetric") {
    std::mt19937_64 rng(17);
    std::vector<RootSystem> systems = {build_root_system(Family::A, 2), build_root_system(Family::B, 2),
                                       build_root_system(Family::G2, 2), build_root_system(Family::A, 3),
                                       build_root_system(Family::B, 3), build_root_system(Family::C, 3)};
    for (const auto& rs : systems) {
        std::uniform_int_distribution<int> d(0, rs.rank >= 3 ? 2 : 4);
        for (int t = 0; t < 25; ++t) {
            IVec l, m, n;
            for (int i = 0; i < rs.rank; ++i) {
                l.push_back(d(rng));
                m.push_back(d(rng));
                n.push_back(d(rng));
            }
            CAPTURE(rs.name());
            std::int64_t k = lr_klimyk(rs, l, m, n);
            CHECK(k == lr_steinberg(rs, l, m, n));
            CHECK(k == lr_klimyk(rs, m, l, n));
            IVec zero(rs.rank, 0);
            CHECK(lr_klimyk(rs, l, zero, n) == (l == n ? 1 : 0));
        }
    }
}

TEST_CASE("size guard") {
    RootSystem b2 = build_root_system(Family::B, 2);
    auto saved = multiplicity_limits().max_dimension;
    multiplicity_limits().max_dimension = 100;
    CHECK_THROWS(freudenthal_weights(b2, IVec{9, 9}));
    multiplicity_limits().max_dimension = saved;
}
