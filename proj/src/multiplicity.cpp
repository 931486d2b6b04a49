#include "hornvol/multiplicity.hpp"

#include "hornvol/linalg.hpp"

#include <algorithm>
#include <mutex>
#include <numeric>
#include <set>
#include <stdexcept>
#include <unordered_map>

namespace hornvol {

namespace {

struct IVecHash {
    std::size_t operator()(const IVec& v) const noexcept {
        std::size_t h = 1469598103934665603ull;
        for (auto x : v) {
            h ^= static_cast<std::size_t>(x) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
        }
        return h;
    }
};

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("integer overflow in multiplicity computation");
    return r;
}

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("integer overflow in multiplicity computation");
    return r;
}

// Integer data derived from a root system and reused by the hot loops.
struct IntegerForms {
    std::vector<std::vector<std::int64_t>> form;  // scaled Dynkin inner product
    std::vector<std::vector<std::int64_t>> to_simple;  // det(C) * (C^T)^{-1}
    std::int64_t det = 1;
    std::vector<std::int64_t> root_heights;
};

IntegerForms make_forms(const RootSystem& rs) {
    IntegerForms f;
    const int r = rs.rank;
    BigInt lcm = 1;
    for (const auto& row : rs.dynkin_form)
        for (const auto& q : row) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), q.get_den_mpz_t());
    f.form.assign(r, std::vector<std::int64_t>(r));
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j) f.form[i][j] = to_int64(Rational(rs.dynkin_form[i][j] * lcm));
    RMat c(r, RVec(r));
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j) c[i][j] = rs.cartan_matrix[i][j];
    Rational det = determinant(c);
    f.det = to_int64(det);
    f.to_simple.assign(r, std::vector<std::int64_t>(r));
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j) f.to_simple[i][j] = to_int64(Rational(rs.dynkin_to_simple[i][j] * det));
    for (const auto& root : rs.positive_roots_simple) f.root_heights.push_back(std::accumulate(root.begin(), root.end(), std::int64_t{0}));
    return f;
}

std::int64_t form_ip(const IntegerForms& f, const IVec& x, const IVec& y) {
    const std::size_t r = x.size();
    std::int64_t s = 0;
    for (std::size_t i = 0; i < r; ++i) {
        if (x[i] == 0) continue;
        std::int64_t row = 0;
        for (std::size_t j = 0; j < r; ++j) row += f.form[i][j] * y[j];
        s = checked_add(s, checked_mul(x[i], row));
    }
    return s;
}

std::optional<IVec> to_simple_int(const IntegerForms& f, const IVec& dynkin_labels) {
    const std::size_t r = dynkin_labels.size();
    IVec s(r, 0);
    for (std::size_t i = 0; i < r; ++i) {
        std::int64_t acc = 0;
        for (std::size_t j = 0; j < r; ++j) acc = checked_add(acc, checked_mul(f.to_simple[i][j], dynkin_labels[j]));
        if (acc % f.det != 0) return std::nullopt;
        s[i] = acc / f.det;
    }
    return s;
}

const IntegerForms& forms_for(const RootSystem& rs) {
    static std::mutex mutex;
    static std::map<std::string, std::unique_ptr<IntegerForms>> cache;
    std::lock_guard<std::mutex> lock(mutex);
    auto& slot = cache[rs.name()];
    if (!slot) slot = std::make_unique<IntegerForms>(make_forms(rs));
    return *slot;
}

const std::vector<WeylMatrix>& weyl_group_cached(const RootSystem& rs) {
    static std::mutex mutex;
    static std::map<std::string, std::unique_ptr<std::vector<WeylMatrix>>> cache;
    std::lock_guard<std::mutex> lock(mutex);
    auto& slot = cache[rs.name()];
    if (!slot) slot = std::make_unique<std::vector<WeylMatrix>>(weyl_group(rs));
    return *slot;
}

void to_dominant(const RootSystem& rs, IVec& x) {
    bool changed = true;
    while (changed) {
        changed = false;
        for (int i = 0; i < rs.rank; ++i)
            if (x[i] < 0) {
                reflect_dynkin(rs, i, x);
                changed = true;
            }
    }
}

void check_weight_support(const RootSystem& rs) {
    if (rs.family == Family::E7 || rs.family == Family::E8)
        throw std::domain_error("weight multiplicities are not supported for " + rs.name());
}

void check_dominant(const IVec& v, std::size_t rank) {
    if (v.size() != rank) throw std::invalid_argument("weight has wrong number of labels");
    for (auto x : v)
        if (x < 0) throw std::domain_error("weight is not dominant");
}

WeightMultiplicityTable build_table(const RootSystem& rs, const IVec& lambda) {
    check_weight_support(rs);
    check_dominant(lambda, rs.rank);
    BigInt dim = weyl_dimension(rs, lambda);
    if (dim > multiplicity_limits().max_dimension)
        throw std::length_error("representation dimension " + dim.get_str() + " exceeds the configured limit");

    const IntegerForms& f = forms_for(rs);
    const int r = rs.rank;
    IVec rho(r, 1);

    // Dominant weights with their depth below lambda.
    std::unordered_map<IVec, std::int64_t, IVecHash> height;
    std::vector<IVec> order{lambda};
    height[lambda] = 0;
    for (std::size_t k = 0; k < order.size(); ++k) {
        IVec mu = order[k];
        std::int64_t h = height[mu];
        for (std::size_t a = 0; a < rs.positive_roots_dynkin.size(); ++a) {
            IVec nu = mu;
            bool dominant = true;
            for (int i = 0; i < r; ++i) {
                nu[i] -= rs.positive_roots_dynkin[a][i];
                if (nu[i] < 0) dominant = false;
            }
            if (!dominant || height.count(nu)) continue;
            height[nu] = h + f.root_heights[a];
            order.push_back(nu);
        }
    }
    std::stable_sort(order.begin(), order.end(), [&](const IVec& a, const IVec& b) { return height[a] < height[b]; });

    IVec lr = lambda;
    for (int i = 0; i < r; ++i) lr[i] += 1;
    const std::int64_t norm_top = form_ip(f, lr, lr);

    std::unordered_map<IVec, std::int64_t, IVecHash> mult;
    mult[lambda] = 1;
    for (std::size_t k = 1; k < order.size(); ++k) {
        const IVec& mu = order[k];
        __int128 sum = 0;
        for (const auto& alpha : rs.positive_roots_dynkin) {
            IVec shifted = mu;
            while (true) {
                for (int i = 0; i < r; ++i) shifted[i] += alpha[i];
                IVec rep = shifted;
                to_dominant(rs, rep);
                auto it = mult.find(rep);
                if (it == mult.end()) break;
                sum += static_cast<__int128>(form_ip(f, shifted, alpha)) * it->second;
            }
        }
        IVec mr = mu;
        for (int i = 0; i < r; ++i) mr[i] += 1;
        std::int64_t denom = norm_top - form_ip(f, mr, mr);
        if (denom <= 0) throw std::logic_error("Freudenthal denominator is not positive");
        __int128 num = 2 * sum;
        if (num % denom != 0) throw std::logic_error("Freudenthal recursion produced a non-integer multiplicity");
        __int128 m = num / denom;
        if (m <= 0 || m > static_cast<__int128>(INT64_MAX)) throw std::logic_error("Freudenthal multiplicity out of range");
        mult[mu] = static_cast<std::int64_t>(m);
    }

    WeightMultiplicityTable table;
    table.highest_weight = lambda;
    for (const auto& mu : order) table.dominant[mu] = mult[mu];
    for (const auto& [mu, m] : table.dominant)
        for (auto& w : weyl_orbit(rs, mu)) table.entries.emplace_back(std::move(w), m);
    if (table.total() != dim) throw std::logic_error("weight multiplicities do not sum to the Weyl dimension");
    return table;
}

}  // namespace

MultiplicityLimits& multiplicity_limits() {
    static MultiplicityLimits limits;
    return limits;
}

BigInt WeightMultiplicityTable::total() const {
    BigInt s = 0;
    for (const auto& e : entries) s += static_cast<long>(e.second);
    return s;
}

std::vector<IVec> weyl_orbit(const RootSystem& rs, const IVec& dominant_weight) {
    std::set<IVec> seen{dominant_weight};
    std::vector<IVec> out{dominant_weight};
    for (std::size_t k = 0; k < out.size(); ++k) {
        for (int i = 0; i < rs.rank; ++i) {
            if (out[k][i] == 0) continue;
            IVec y = out[k];
            reflect_dynkin(rs, i, y);
            if (seen.insert(y).second) out.push_back(y);
        }
    }
    return out;
}

int reflect_to_dominant_strict(const RootSystem& rs, IVec& x) {
    int sign = 1;
    bool changed = true;
    while (changed) {
        changed = false;
        for (int i = 0; i < rs.rank; ++i) {
            if (x[i] == 0) return 0;
            if (x[i] < 0) {
                reflect_dynkin(rs, i, x);
                sign = -sign;
                changed = true;
            }
        }
    }
    return sign;
}

std::shared_ptr<const WeightMultiplicityTable> freudenthal_weights(const RootSystem& rs, const IVec& lambda) {
    static std::mutex mutex;
    static std::map<std::pair<std::string, IVec>, std::shared_ptr<const WeightMultiplicityTable>> cache;
    auto key = std::make_pair(rs.name(), lambda);
    {
        std::lock_guard<std::mutex> lock(mutex);
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;
    }
    auto table = std::make_shared<const WeightMultiplicityTable>(build_table(rs, lambda));
    std::lock_guard<std::mutex> lock(mutex);
    cache.emplace(key, table);
    return table;
}

WeightMultiplicityTable freudenthal_weights(const RootSystem& rs, const Weight& lambda) {
    return *freudenthal_weights(rs, integer_dynkin(rs, lambda));
}

std::map<IVec, std::int64_t> tensor_decompose(const RootSystem& rs, const IVec& lambda, const IVec& mu) {
    check_dominant(lambda, rs.rank);
    check_dominant(mu, rs.rank);
    // Iterate over the weights of the smaller factor.
    const bool swap = weyl_dimension(rs, mu) > weyl_dimension(rs, lambda);
    const IVec& base = swap ? mu : lambda;
    const IVec& other = swap ? lambda : mu;
    auto table = freudenthal_weights(rs, other);
    std::map<IVec, std::int64_t> out;
    const int r = rs.rank;
    for (const auto& [tau, m] : table->entries) {
        IVec x(r);
        for (int i = 0; i < r; ++i) x[i] = base[i] + tau[i] + 1;
        int sign = reflect_to_dominant_strict(rs, x);
        if (sign == 0) continue;
        for (int i = 0; i < r; ++i) x[i] -= 1;
        out[x] = checked_add(out[x], sign * m);
    }
    for (auto it = out.begin(); it != out.end();) {
        if (it->second < 0) throw std::logic_error("negative multiplicity in tensor decomposition");
        it = it->second == 0 ? out.erase(it) : std::next(it);
    }
    return out;
}

std::map<IVec, std::int64_t> tensor_decompose(const RootSystem& rs, const Weight& lambda, const Weight& mu) {
    return tensor_decompose(rs, integer_dynkin(rs, lambda), integer_dynkin(rs, mu));
}

std::int64_t lr_klimyk(const RootSystem& rs, const IVec& lambda, const IVec& mu, const IVec& nu) {
    check_dominant(lambda, rs.rank);
    check_dominant(mu, rs.rank);
    check_dominant(nu, rs.rank);
    if (!integral_simple_difference(rs, lambda, mu, nu)) return 0;
    const bool swap = weyl_dimension(rs, mu) > weyl_dimension(rs, lambda);
    const IVec& base = swap ? mu : lambda;
    const IVec& other = swap ? lambda : mu;
    auto table = freudenthal_weights(rs, other);
    const int r = rs.rank;
    std::int64_t total = 0;
    IVec x(r);
    for (const auto& [tau, m] : table->entries) {
        for (int i = 0; i < r; ++i) x[i] = base[i] + tau[i] + 1;
        int sign = reflect_to_dominant_strict(rs, x);
        if (sign == 0) continue;
        bool hit = true;
        for (int i = 0; i < r && hit; ++i) hit = x[i] == nu[i] + 1;
        if (hit) total = checked_add(total, sign * m);
    }
    if (total < 0) throw std::logic_error("negative Klimyk multiplicity");
    return total;
}

std::int64_t lr_klimyk(const RootSystem& rs, const Weight& lambda, const Weight& mu, const Weight& nu) {
    return lr_klimyk(rs, integer_dynkin(rs, lambda), integer_dynkin(rs, mu), integer_dynkin(rs, nu));
}

std::int64_t kostant_b2(std::int64_t a, std::int64_t b) {
    if (a < 0 || b < 0) return 0;
    std::int64_t total = 0;
    for (std::int64_t n4 = 0; n4 <= std::min(a, b / 2); ++n4) {
        std::int64_t free = std::min(a - n4, b - 2 * n4);
        if (free >= 0) total += free + 1;
    }
    return total;
}

KostantTable::KostantTable(const RootSystem& rs, const IVec& bound) : bound_(bound) {
    const std::size_t r = bound.size();
    if (static_cast<int>(r) != rs.rank) throw std::invalid_argument("Kostant table bound has wrong rank");
    std::size_t cells = 1;
    stride_.assign(r, 0);
    for (std::size_t i = r; i-- > 0;) {
        if (bound[i] < 0) {
            cells = 0;
            break;
        }
        stride_[i] = cells;
        std::size_t extent = static_cast<std::size_t>(bound[i]) + 1;
        if (cells > multiplicity_limits().max_kostant_cells / extent)
            throw std::length_error("Kostant partition table exceeds the configured size");
        cells *= extent;
    }
    values_.assign(cells, 0);
    if (cells == 0) return;
    values_[0] = 1;
    for (const auto& root : rs.positive_roots_simple) {
        bool fits = true;
        std::size_t offset = 0;
        for (std::size_t i = 0; i < r; ++i) {
            if (root[i] > bound[i]) fits = false;
            offset += static_cast<std::size_t>(root[i]) * stride_[i];
        }
        if (!fits) continue;
        // Coin-change recurrence in lexicographic order.
        IVec p(r, 0);
        for (std::size_t idx = 0; idx < cells; ++idx) {
            bool ge = true;
            for (std::size_t i = 0; i < r && ge; ++i) ge = p[i] >= root[i];
            if (ge) values_[idx] = checked_add(values_[idx], values_[idx - offset]);
            for (std::size_t i = r; i-- > 0;) {
                if (++p[i] <= bound[i]) break;
                p[i] = 0;
            }
        }
    }
}

std::int64_t KostantTable::operator()(const IVec& s) const {
    if (values_.empty()) return 0;
    std::size_t idx = 0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] < 0 || s[i] > bound_[i]) {
            if (s[i] < 0) return 0;
            throw std::out_of_range("Kostant table lookup outside the precomputed box");
        }
        idx += static_cast<std::size_t>(s[i]) * stride_[i];
    }
    return values_[idx];
}

BigInt kostant_partition(const RootSystem& rs, const Weight& sigma) {
    Weight s = to_basis(rs, sigma, Basis::SimpleRoot);
    IVec coords;
    for (const auto& c : s.coords) {
        if (!is_integer(c)) return 0;
        coords.push_back(to_int64(c));
    }
    for (auto c : coords)
        if (c < 0) return 0;
    if (rs.family == Family::B && rs.rank == 2) return BigInt(static_cast<long>(kostant_b2(coords[0], coords[1])));
    KostantTable table(rs, coords);
    return BigInt(static_cast<long>(table(coords)));
}

std::optional<IVec> integral_simple_difference(const RootSystem& rs, const IVec& lambda, const IVec& mu,
                                               const IVec& nu) {
    IVec d(rs.rank);
    for (int i = 0; i < rs.rank; ++i) d[i] = lambda[i] + mu[i] - nu[i];
    return to_simple_int(forms_for(rs), d);
}

std::int64_t lr_steinberg(const RootSystem& rs, const IVec& lambda, const IVec& mu, const IVec& nu) {
    check_dominant(lambda, rs.rank);
    check_dominant(mu, rs.rank);
    check_dominant(nu, rs.rank);
    auto sigma = integral_simple_difference(rs, lambda, mu, nu);
    if (!sigma) return 0;
    const int r = rs.rank;
    const IntegerForms& f = forms_for(rs);
    const auto& group = weyl_group_cached(rs);

    // Simple coordinates of w(x + rho) - (x + rho); always a nonpositive root-lattice vector.
    auto shifts = [&](const IVec& x) {
        IVec xr = x;
        for (auto& v : xr) v += 1;
        std::vector<IVec> out;
        out.reserve(group.size());
        for (const auto& w : group) {
            IVec img = w.apply(xr);
            for (int i = 0; i < r; ++i) img[i] -= xr[i];
            auto s = to_simple_int(f, img);
            if (!s) throw std::logic_error("Weyl shift left the root lattice");
            out.push_back(*s);
        }
        return out;
    };
    std::vector<IVec> dl = shifts(lambda);
    std::vector<IVec> dm = shifts(mu);

    const bool b2 = rs.family == Family::B && rs.rank == 2;
    std::optional<KostantTable> table;
    if (!b2) table.emplace(rs, *sigma);

    std::int64_t total = 0;
    IVec arg(r);
    for (std::size_t a = 0; a < group.size(); ++a) {
        for (std::size_t b = 0; b < group.size(); ++b) {
            bool negative = false;
            for (int i = 0; i < r; ++i) {
                arg[i] = (*sigma)[i] + dl[a][i] + dm[b][i];
                if (arg[i] < 0) negative = true;
            }
            if (negative) continue;
            std::int64_t p = b2 ? kostant_b2(arg[0], arg[1]) : (*table)(arg);
            if (p == 0) continue;
            int sign = group[a].sign * group[b].sign;
            total = checked_add(total, sign * p);
        }
    }
    if (total < 0) throw std::logic_error("negative Steinberg multiplicity");
    return total;
}

std::int64_t lr_steinberg(const RootSystem& rs, const Weight& lambda, const Weight& mu, const Weight& nu) {
    return lr_steinberg(rs, integer_dynkin(rs, lambda), integer_dynkin(rs, mu), integer_dynkin(rs, nu));
}

std::int64_t lr_triple(const RootSystem& rs, const IVec& lambda, const IVec& mu, const IVec& kappa, const IVec& nu) {
    auto first = tensor_decompose(rs, lambda, mu);
    std::int64_t total = 0;
    for (const auto& [tau, c] : first) {
        std::int64_t inner_c = lr_klimyk(rs, tau, kappa, nu);
        if (inner_c) total = checked_add(total, checked_mul(c, inner_c));
    }
    return total;
}

}  // namespace hornvol
