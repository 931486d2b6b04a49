#include "hornvol/rootsys.hpp"

#include "hornvol/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <map>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace hornvol {

namespace {

RVec unit(int dim, int i, long scale = 1) {
    RVec v(dim, 0);
    v[i] = scale;
    return v;
}

RVec diff_units(int dim, int i, int j) {
    RVec v(dim, 0);
    v[i] = 1;
    v[j] = -1;
    return v;
}

RMat e8_simple_roots(int count) {
    RMat roots;
    RVec a1(8, make_rational(-1, 2));
    a1[0] = make_rational(1, 2);
    a1[7] = make_rational(1, 2);
    roots.push_back(a1);
    RVec a2(8, 0);
    a2[0] = 1;
    a2[1] = 1;
    roots.push_back(a2);
    for (int k = 3; k <= 8; ++k) roots.push_back(diff_units(8, k - 2, k - 3));
    roots.resize(count);
    return roots;
}

struct FamilyData {
    int ambient_dim;
    RMat simple;
    int h_dual;
    std::vector<int> exponents;
};

FamilyData family_data(Family f, int r) {
    FamilyData d;
    switch (f) {
    case Family::A:
        if (r < 1) throw std::invalid_argument("A_r requires r >= 1");
        d.ambient_dim = r + 1;
        for (int i = 0; i < r; ++i) d.simple.push_back(diff_units(r + 1, i, i + 1));
        d.h_dual = r + 1;
        for (int i = 1; i <= r; ++i) d.exponents.push_back(i);
        break;
    case Family::B:
    case Family::C:
        if (r < 2) throw std::invalid_argument("B_r and C_r require r >= 2");
        d.ambient_dim = r;
        for (int i = 0; i + 1 < r; ++i) d.simple.push_back(diff_units(r, i, i + 1));
        d.simple.push_back(unit(r, r - 1, f == Family::B ? 1 : 2));
        d.h_dual = f == Family::B ? 2 * r - 1 : r + 1;
        for (int i = 1; i <= r; ++i) d.exponents.push_back(2 * i - 1);
        break;
    case Family::D: {
        if (r < 3) throw std::invalid_argument("D_r requires r >= 3");
        d.ambient_dim = r;
        for (int i = 0; i + 1 < r; ++i) d.simple.push_back(diff_units(r, i, i + 1));
        RVec last(r, 0);
        last[r - 2] = 1;
        last[r - 1] = 1;
        d.simple.push_back(last);
        d.h_dual = 2 * r - 2;
        for (int i = 1; i <= r - 1; ++i) d.exponents.push_back(2 * i - 1);
        d.exponents.push_back(r - 1);
        std::sort(d.exponents.begin(), d.exponents.end());
        break;
    }
    case Family::E6:
    case Family::E7:
    case Family::E8: {
        int expected = f == Family::E6 ? 6 : (f == Family::E7 ? 7 : 8);
        if (r != expected) throw std::invalid_argument("exceptional algebra has fixed rank");
        d.ambient_dim = 8;
        d.simple = e8_simple_roots(r);
        if (f == Family::E6) {
            d.h_dual = 12;
            d.exponents = {1, 4, 5, 7, 8, 11};
        } else if (f == Family::E7) {
            d.h_dual = 18;
            d.exponents = {1, 5, 7, 9, 11, 13, 17};
        } else {
            d.h_dual = 30;
            d.exponents = {1, 7, 11, 13, 17, 19, 23, 29};
        }
        break;
    }
    case Family::F4: {
        if (r != 4) throw std::invalid_argument("F4 has rank 4");
        d.ambient_dim = 4;
        d.simple.push_back(diff_units(4, 1, 2));
        d.simple.push_back(diff_units(4, 2, 3));
        d.simple.push_back(unit(4, 3));
        RVec a4(4, make_rational(-1, 2));
        a4[0] = make_rational(1, 2);
        d.simple.push_back(a4);
        d.h_dual = 9;
        d.exponents = {1, 5, 7, 11};
        break;
    }
    case Family::G2: {
        if (r != 2) throw std::invalid_argument("G2 has rank 2");
        d.ambient_dim = 3;
        d.simple.push_back(RVec{1, -1, 0});
        d.simple.push_back(RVec{-2, 1, 1});
        d.h_dual = 4;
        d.exponents = {1, 5};
        break;
    }
    }
    return d;
}

// Positive roots in simple-root coordinates by the root-string algorithm.
std::vector<IVec> generate_positive_roots(const std::vector<std::vector<int>>& cartan) {
    const int r = static_cast<int>(cartan.size());
    std::vector<IVec> roots;
    std::map<IVec, bool> known;
    std::vector<IVec> layer;
    for (int i = 0; i < r; ++i) {
        IVec e(r, 0);
        e[i] = 1;
        roots.push_back(e);
        known[e] = true;
        layer.push_back(e);
    }
    while (!layer.empty()) {
        std::vector<IVec> next;
        for (const auto& beta : layer) {
            for (int i = 0; i < r; ++i) {
                // p: how far beta - k alpha_i stays a root (or zero is excluded).
                int p = 0;
                IVec down = beta;
                while (true) {
                    down[i] -= 1;
                    if (known.count(down)) ++p;
                    else break;
                }
                std::int64_t pairing = 0;  // <beta, alpha_i^vee>
                for (int j = 0; j < r; ++j) pairing += beta[j] * cartan[j][i];
                std::int64_t q = p - pairing;
                if (q > 0) {
                    IVec up = beta;
                    up[i] += 1;
                    if (!known.count(up)) {
                        known[up] = true;
                        roots.push_back(up);
                        next.push_back(up);
                    }
                }
            }
        }
        layer = std::move(next);
    }
    return roots;
}

}  // namespace

Weight dynkin(std::initializer_list<long> labels) {
    Weight w;
    for (long v : labels) w.coords.emplace_back(v);
    w.basis = Basis::Dynkin;
    return w;
}

Weight dynkin(const IVec& labels) {
    Weight w;
    for (auto v : labels) w.coords.emplace_back(static_cast<long>(v));
    w.basis = Basis::Dynkin;
    return w;
}

Weight orthonormal(RVec coords) { return Weight{std::move(coords), Basis::Orthonormal}; }

std::string family_name(Family f) {
    switch (f) {
    case Family::A: return "A";
    case Family::B: return "B";
    case Family::C: return "C";
    case Family::D: return "D";
    case Family::E6: return "E6";
    case Family::E7: return "E7";
    case Family::E8: return "E8";
    case Family::F4: return "F4";
    case Family::G2: return "G2";
    }
    return "?";
}

Family parse_family(const std::string& text) {
    static const std::map<std::string, Family> names = {
        {"A", Family::A},   {"B", Family::B},   {"C", Family::C},   {"D", Family::D},   {"E6", Family::E6},
        {"E7", Family::E7}, {"E8", Family::E8}, {"F4", Family::F4}, {"G2", Family::G2},
    };
    auto it = names.find(text);
    if (it == names.end()) throw std::invalid_argument("unknown family: " + text);
    return it->second;
}

std::string RootSystem::name() const {
    switch (family) {
    case Family::A:
    case Family::B:
    case Family::C:
    case Family::D: return family_name(family) + std::to_string(rank);
    default: return family_name(family);
    }
}

RootSystem build_root_system(const std::string& name) {
    if (name.empty()) throw std::invalid_argument("empty algebra name");
    if (name == "E6" || name == "E7" || name == "E8" || name == "F4" || name == "G2") {
        Family f = parse_family(name);
        return build_root_system(f, name[1] - '0');
    }
    Family f = parse_family(name.substr(0, 1));
    int rank = 0;
    try {
        std::size_t used = 0;
        rank = std::stoi(name.substr(1), &used);
        if (used != name.size() - 1) throw std::invalid_argument("trailing characters");
    } catch (const std::exception&) {
        throw std::invalid_argument("malformed algebra name: " + name);
    }
    return build_root_system(f, rank);
}

RootSystem build_root_system(Family family, int rank) {
    FamilyData data = family_data(family, rank);
    RootSystem rs;
    rs.family = family;
    rs.rank = rank;
    rs.ambient_dim = data.ambient_dim;
    rs.simple_roots = data.simple;
    rs.dual_coxeter_number = data.h_dual;
    rs.coxeter_exponents = data.exponents;

    const int r = rank;
    rs.simple_gram.assign(r, RVec(r, 0));
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j) rs.simple_gram[i][j] = dot(rs.simple_roots[i], rs.simple_roots[j]);

    rs.cartan_matrix.assign(r, std::vector<int>(r, 0));
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j) {
            Rational c = 2 * rs.simple_gram[i][j] / rs.simple_gram[j][j];
            rs.cartan_matrix[i][j] = static_cast<int>(to_int64(c));
        }

    rs.positive_roots_simple = generate_positive_roots(rs.cartan_matrix);
    std::sort(rs.positive_roots_simple.begin(), rs.positive_roots_simple.end(), [](const IVec& a, const IVec& b) {
        std::int64_t ha = 0, hb = 0;
        for (auto v : a) ha += v;
        for (auto v : b) hb += v;
        if (ha != hb) return ha < hb;
        return a > b;
    });
    for (const auto& s : rs.positive_roots_simple) {
        RVec v(rs.ambient_dim, 0);
        for (int i = 0; i < r; ++i)
            if (s[i] != 0)
                for (int k = 0; k < rs.ambient_dim; ++k) v[k] += static_cast<long>(s[i]) * rs.simple_roots[i][k];
        rs.positive_roots.push_back(v);
        IVec d(r, 0);
        for (int j = 0; j < r; ++j)
            for (int i = 0; i < r; ++i) d[j] += s[i] * rs.cartan_matrix[i][j];
        rs.positive_roots_dynkin.push_back(d);
    }
    if (rs.num_positive_roots() != expected_positive_roots(family, rank))
        throw std::logic_error("root generation produced the wrong number of positive roots");

    // Dynkin labels = C^T * simple coordinates, so simple = (C^T)^{-1} * Dynkin.
    RMat ct(r, RVec(r));
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j) ct[i][j] = rs.cartan_matrix[j][i];
    rs.dynkin_to_simple = inverse(ct);
    rs.dynkin_form = multiply(transpose(rs.dynkin_to_simple), multiply(rs.simple_gram, rs.dynkin_to_simple));

    rs.weyl_vector.basis = Basis::Dynkin;
    rs.weyl_vector.coords.assign(r, 1);
    return rs;
}

int expected_positive_roots(Family f, int r) {
    switch (f) {
    case Family::A: return r * (r + 1) / 2;
    case Family::B:
    case Family::C: return r * r;
    case Family::D: return r * (r - 1);
    case Family::E6: return 36;
    case Family::E7: return 63;
    case Family::E8: return 120;
    case Family::F4: return 24;
    case Family::G2: return 6;
    }
    return 0;
}

Weight to_basis(const RootSystem& rs, const Weight& w, Basis target) {
    if (w.basis == target) return w;
    const int r = rs.rank;
    // Route everything through simple-root coordinates.
    RVec simple;
    switch (w.basis) {
    case Basis::SimpleRoot: simple = w.coords; break;
    case Basis::Dynkin:
        if (static_cast<int>(w.coords.size()) != r) throw std::invalid_argument("weight has wrong number of labels");
        simple = multiply(rs.dynkin_to_simple, w.coords);
        break;
    case Basis::Orthonormal: {
        if (static_cast<int>(w.coords.size()) != rs.ambient_dim)
            throw std::invalid_argument("weight has wrong ambient dimension");
        RVec labels(r);
        for (int i = 0; i < r; ++i) labels[i] = 2 * dot(w.coords, rs.simple_roots[i]) / rs.simple_gram[i][i];
        simple = multiply(rs.dynkin_to_simple, labels);
        break;
    }
    }
    Weight out;
    out.basis = target;
    switch (target) {
    case Basis::SimpleRoot: out.coords = simple; break;
    case Basis::Dynkin:
        out.coords.assign(r, 0);
        for (int j = 0; j < r; ++j)
            for (int i = 0; i < r; ++i) out.coords[j] += simple[i] * rs.cartan_matrix[i][j];
        break;
    case Basis::Orthonormal:
        out.coords.assign(rs.ambient_dim, 0);
        for (int i = 0; i < r; ++i)
            for (int k = 0; k < rs.ambient_dim; ++k) out.coords[k] += simple[i] * rs.simple_roots[i][k];
        break;
    }
    return out;
}

IVec integer_dynkin(const RootSystem& rs, const Weight& w) {
    Weight d = to_basis(rs, w, Basis::Dynkin);
    IVec out;
    for (const auto& c : d.coords) {
        if (!is_integer(c)) throw std::domain_error("weight is not integral: label " + to_string(c));
        out.push_back(to_int64(c));
    }
    return out;
}

bool is_dominant_integral(const RootSystem& rs, const Weight& w) {
    Weight d = to_basis(rs, w, Basis::Dynkin);
    return std::all_of(d.coords.begin(), d.coords.end(), [](const Rational& c) { return is_integer(c) && c >= 0; });
}

Rational inner(const RootSystem& rs, const Weight& x, const Weight& y) {
    Weight a = to_basis(rs, x, Basis::Orthonormal);
    Weight b = to_basis(rs, y, Basis::Orthonormal);
    return dot(a.coords, b.coords);
}

void reflect_dynkin(const RootSystem& rs, int i, IVec& labels) {
    const std::int64_t li = labels[i];
    if (li == 0) return;
    const auto& row = rs.cartan_matrix[i];
    for (int j = 0; j < rs.rank; ++j) labels[j] -= li * row[j];
}

std::array<Rational, 2> B2WeylElement::apply(const std::array<Rational, 2>& x) const {
    std::array<Rational, 2> y = swap ? std::array<Rational, 2>{x[1], x[0]} : x;
    y[0] *= sign1;
    y[1] *= sign2;
    return y;
}

const std::array<B2WeylElement, 8>& b2_weyl_table() {
    static const std::array<B2WeylElement, 8> table = [] {
        std::array<B2WeylElement, 8> t{};
        int k = 0;
        for (bool sw : {false, true})
            for (int s1 : {1, -1})
                for (int s2 : {1, -1}) t[k++] = B2WeylElement{sw, s1, s2};
        return t;
    }();
    return table;
}

IVec WeylMatrix::apply(const IVec& x) const {
    const std::size_t r = x.size();
    IVec y(r, 0);
    for (std::size_t i = 0; i < r; ++i) {
        std::int64_t s = 0;
        for (std::size_t j = 0; j < r; ++j) s += m[i][j] * x[j];
        y[i] = s;
    }
    return y;
}

std::vector<WeylMatrix> weyl_group(const RootSystem& rs, std::size_t max_order) {
    const int r = rs.rank;
    WeylMatrix id;
    id.m.assign(r, std::vector<std::int64_t>(r, 0));
    for (int i = 0; i < r; ++i) id.m[i][i] = 1;
    std::vector<WeylMatrix> elements{id};
    std::map<IVec, std::size_t> seen;
    IVec rho(r, 1);
    seen[rho] = 0;
    std::deque<std::size_t> queue{0};
    while (!queue.empty()) {
        std::size_t idx = queue.front();
        queue.pop_front();
        for (int i = 0; i < r; ++i) {
            WeylMatrix next;
            next.m = elements[idx].m;
            // Left-multiply by the reflection s_i acting on Dynkin labels.
            for (int c = 0; c < r; ++c) {
                std::int64_t li = next.m[i][c];
                if (li == 0) continue;
                for (int j = 0; j < r; ++j) next.m[j][c] -= li * rs.cartan_matrix[i][j];
            }
            IVec image = next.apply(rho);
            if (seen.count(image)) continue;
            next.word = elements[idx].word;
            next.word.insert(next.word.begin(), i);
            next.sign = -elements[idx].sign;
            if (elements.size() >= max_order)
                throw std::length_error("Weyl group of " + rs.name() + " exceeds the enumeration limit");
            seen[image] = elements.size();
            elements.push_back(std::move(next));
            queue.push_back(elements.size() - 1);
        }
    }
    return elements;
}

Weight apply_weyl(const RootSystem& rs, const WeylElement& w, const Weight& x) {
    Weight d = to_basis(rs, x, Basis::Dynkin);
    for (auto it = w.word.rbegin(); it != w.word.rend(); ++it) {
        int i = *it;
        Rational li = d.coords[i];
        if (li == 0) continue;
        for (int j = 0; j < rs.rank; ++j) d.coords[j] -= li * rs.cartan_matrix[i][j];
    }
    return to_basis(rs, d, x.basis);
}

Weight apply_weyl(const B2WeylElement& w, const Weight& x) {
    if (x.basis != Basis::Orthonormal || x.coords.size() != 2)
        throw std::invalid_argument("B2 Weyl table acts on orthonormal 2-vectors");
    auto y = w.apply({x.coords[0], x.coords[1]});
    return orthonormal({y[0], y[1]});
}

namespace {

// <alpha, x> for a positive root given by its simple coordinates and x in Dynkin labels.
Rational root_pairing(const RootSystem& rs, const IVec& root_simple, const RVec& labels) {
    Rational s = 0;
    for (int i = 0; i < rs.rank; ++i)
        if (root_simple[i] != 0) s += static_cast<long>(root_simple[i]) * rs.half_norm(i) * labels[i];
    return s;
}

}  // namespace

BigInt weyl_dimension(const RootSystem& rs, const IVec& lambda) {
    if (static_cast<int>(lambda.size()) != rs.rank) throw std::invalid_argument("weight has wrong number of labels");
    for (auto v : lambda)
        if (v < 0) throw std::domain_error("weyl_dimension requires a dominant weight");
    RVec shifted(rs.rank), rho(rs.rank, 1);
    for (int i = 0; i < rs.rank; ++i) shifted[i] = static_cast<long>(lambda[i] + 1);
    Rational num = 1, den = 1;
    for (const auto& root : rs.positive_roots_simple) {
        num *= root_pairing(rs, root, shifted);
        den *= root_pairing(rs, root, rho);
    }
    Rational q = num / den;
    if (!is_integer(q)) throw std::logic_error("Weyl dimension is not an integer");
    return q.get_num();
}

BigInt weyl_dimension(const RootSystem& rs, const Weight& lambda) {
    Weight d = to_basis(rs, lambda, Basis::Dynkin);
    for (const auto& c : d.coords)
        if (!is_integer(c) || c < 0) throw std::domain_error("weyl_dimension requires a dominant integral weight");
    return weyl_dimension(rs, integer_dynkin(rs, d));
}

Rational delta_g(const RootSystem& rs, const Weight& x) {
    Weight o = to_basis(rs, x, Basis::Orthonormal);
    Rational p = 1;
    for (const auto& root : rs.positive_roots) p *= dot(root, o.coords);
    return p;
}

KappaG kappa_constants(const RootSystem& rs) {
    Rational longest = 0;
    for (const auto& root : rs.positive_roots) longest = std::max(longest, Rational(dot(root, root)));
    Rational scale = 2 / longest;  // rescales <.,.> so long roots have squared length 2
    KappaG out;
    Rational delta = delta_g(rs, rs.weyl_vector);
    out.delta_rho_normalized = delta * pow_int(scale, rs.num_positive_roots());
    out.prefactor = 1 / out.delta_rho_normalized;
    out.two_pi_exponent = rs.num_positive_roots();
    Rational k = 1;
    for (const auto& root : rs.positive_roots) k *= longest / dot(root, root);
    out.K = k.get_num();
    out.exponent_factorials = 1;
    for (int l : rs.coxeter_exponents) {
        BigInt f;
        mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(l));
        out.exponent_factorials *= f;
    }
    return out;
}

namespace {

// Gamma(1 + x) for x a nonnegative multiple of 1/2, as rational * sqrt(pi)^power.
std::pair<Rational, int> gamma_one_plus(const Rational& x) {
    Rational twice = 2 * x;
    if (!is_integer(twice) || x < 0) throw std::domain_error("gamma_one_plus needs a nonnegative half-integer");
    long m = to_int64(twice);
    if (m % 2 == 0) {
        BigInt f;
        mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(m / 2));
        return {Rational(f), 0};
    }
    // Gamma(k + 1/2) = (2k)! / (4^k k!) sqrt(pi) with k = (m + 1) / 2.
    long k = (m + 1) / 2;
    BigInt f2k, fk, four_k;
    mpz_fac_ui(f2k.get_mpz_t(), static_cast<unsigned long>(2 * k));
    mpz_fac_ui(fk.get_mpz_t(), static_cast<unsigned long>(k));
    mpz_ui_pow_ui(four_k.get_mpz_t(), 4, static_cast<unsigned long>(k));
    Rational g(f2k, four_k * fk);
    g.canonicalize();
    return {g, 1};
}

}  // namespace

ExactConstant kappa_theta(const Rational& theta, int n) {
    if (n < 2) throw std::domain_error("kappa_theta requires n >= 2");
    if (theta != make_rational(1, 2) && theta != 1 && theta != 2)
        throw std::domain_error("kappa_theta supports theta in {1/2, 1, 2}");
    ExactConstant out;
    out.two_pi_exponent = Rational(n * (n - 1)) * theta / 2;
    BigInt nf;
    mpz_fac_ui(nf.get_mpz_t(), static_cast<unsigned long>(n));
    Rational coeff(nf);
    int sqrt_pi = 0;
    auto base = gamma_one_plus(theta);
    for (int j = 1; j <= n; ++j) {
        auto g = gamma_one_plus(Rational(j) * theta);
        // Divide by Gamma(1 + j theta) / Gamma(1 + theta).
        coeff *= base.first / g.first;
        sqrt_pi += base.second - g.second;
    }
    out.coefficient = coeff;
    out.sqrt_pi_power = sqrt_pi;
    return out;
}

double ExactConstant::to_double() const {
    const double pi = std::numbers::pi;
    return coefficient.get_d() * std::pow(2 * pi, two_pi_exponent.get_d()) * std::pow(pi, sqrt_pi_power / 2.0);
}

std::string ExactConstant::to_string() const {
    std::ostringstream os;
    os << hornvol::to_string(coefficient);
    if (two_pi_exponent != 0) os << " * (2pi)^(" << hornvol::to_string(two_pi_exponent) << ")";
    if (sqrt_pi_power != 0) os << " * pi^(" << sqrt_pi_power << "/2)";
    return os.str();
}

bool is_compatible(const RootSystem& rs, const Weight& lambda, const Weight& mu, const Weight& nu) {
    Weight l = to_basis(rs, lambda, Basis::SimpleRoot);
    Weight m = to_basis(rs, mu, Basis::SimpleRoot);
    Weight n = to_basis(rs, nu, Basis::SimpleRoot);
    for (int i = 0; i < rs.rank; ++i)
        if (!is_integer(Rational(l.coords[i] + m.coords[i] - n.coords[i]))) return false;
    return true;
}

}  // namespace hornvol
