#include "hornvol/covolume.hpp"

#include "hornvol/linalg.hpp"

#include <sstream>

namespace hornvol {

BigInt gram_delta_from_roots(const std::vector<IVec>& roots) {
    const std::size_t n = roots.size();
    if (n == 0) return 1;
    ZMat g(n, std::vector<BigInt>(n, 0));
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = a; b < n; ++b) {
            std::int64_t s = a == b ? 1 : 0;
            for (std::size_t i = 0; i < roots[a].size(); ++i) s += roots[a][i] * roots[b][i];
            g[a][b] = g[b][a] = BigInt(static_cast<long>(s));
        }
    return bareiss_determinant(std::move(g));
}

BigInt gram_delta(const RootSystem& rs) {
    std::vector<IVec> non_simple;
    for (const auto& r : rs.positive_roots_simple) {
        std::int64_t height = 0;
        for (auto c : r) height += c;
        if (height > 1) non_simple.push_back(r);
    }
    return gram_delta_from_roots(non_simple);
}

Rational formula_delta(const RootSystem& rs) {
    RMat cartan(rs.rank, RVec(rs.rank));
    for (int i = 0; i < rs.rank; ++i)
        for (int j = 0; j < rs.rank; ++j) cartan[i][j] = rs.cartan_matrix[i][j];
    Rational long_norm = 0;
    for (int i = 0; i < rs.rank; ++i) long_norm = std::max(long_norm, rs.simple_gram[i][i]);
    Rational ratio = 1;
    for (int i = 0; i < rs.rank; ++i) ratio *= long_norm / rs.simple_gram[i][i];
    return pow_int(Rational(rs.dual_coxeter_number), rs.rank) / determinant(cartan) * ratio;
}

std::optional<BigInt> table_delta(Family f, int r) {
    auto p = [](long base, long e) {
        BigInt out;
        mpz_pow_ui(out.get_mpz_t(), BigInt(base).get_mpz_t(), static_cast<unsigned long>(e));
        return out;
    };
    switch (f) {
    case Family::A: return p(r + 1, r - 1);
    case Family::B: return p(2 * r - 1, r);
    case Family::C: return r >= 2 ? std::optional<BigInt>(p(2, r - 2) * p(r + 1, r)) : std::nullopt;
    case Family::D: return r >= 2 ? std::optional<BigInt>(p(2, r - 2) * p(r - 1, r)) : std::nullopt;
    case Family::E6: return p(2, 12) * p(3, 5);
    case Family::E7: return p(2, 6) * p(3, 14);
    case Family::E8: return p(2, 8) * p(3, 8) * p(5, 8);
    case Family::F4: return p(2, 2) * p(3, 8);
    case Family::G2: return p(2, 4) * 3;
    }
    return std::nullopt;
}

std::string CovolumeReport::name() const {
    switch (family) {
    case Family::E6:
    case Family::E7:
    case Family::E8:
    case Family::F4:
    case Family::G2: return family_name(family);
    default: return family_name(family) + std::to_string(rank);
    }
}

CovolumeReport covolume_report(const RootSystem& rs) {
    CovolumeReport rep;
    rep.family = rs.family;
    rep.rank = rs.rank;
    rep.delta_gram = gram_delta(rs);
    rep.delta_formula = formula_delta(rs);
    rep.table_value = table_delta(rs.family, rs.rank);
    rep.agree = Rational(rep.delta_gram) == rep.delta_formula &&
                (!rep.table_value || *rep.table_value == rep.delta_gram);
    return rep;
}

std::string covolume_markdown(const std::vector<CovolumeReport>& reports) {
    std::ostringstream os;
    os << "| algebra | rank | Gram determinant | closed formula | tabulated | status |\n";
    os << "|---|---|---|---|---|---|\n";
    for (const auto& r : reports) {
        os << "| " << r.name() << " | " << r.rank << " | " << to_string(r.delta_gram) << " | "
           << to_string(r.delta_formula) << " | " << (r.table_value ? to_string(*r.table_value) : "-") << " | "
           << (r.agree ? "consistent with conjecture" : "MISMATCH") << " |\n";
    }
    return os.str();
}

}  // namespace hornvol
