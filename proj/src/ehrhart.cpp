#include "hornvol/ehrhart.hpp"

#include "hornvol/linalg.hpp"
#include "hornvol/multiplicity.hpp"

#include <algorithm>
#include <iterator>
#include <sstream>
#include <stdexcept>

namespace hornvol {

namespace {

long residue(long s, int period) {
    long r = s % period;
    return r < 0 ? r + period : r;
}

}  // namespace

const RVec& QuasiPolynomial::class_of(long s) const { return coeffs.at(residue(s, period)); }

Rational QuasiPolynomial::evaluate(long s) const {
    const RVec& c = class_of(s);
    Rational v = 0;
    for (std::size_t k = c.size(); k-- > 0;) v = v * s + c[k];
    return v;
}

bool QuasiPolynomial::class_vanishes(int r) const {
    for (const auto& c : coeffs.at(r))
        if (c != 0) return false;
    return true;
}

std::string polynomial_to_string(const RVec& c, const std::string& var) {
    std::ostringstream os;
    bool first = true;
    for (std::size_t k = c.size(); k-- > 0;) {
        if (c[k] == 0) continue;
        Rational mag = abs_of(c[k]);
        if (first) os << (c[k] < 0 ? "-" : "");
        else os << (c[k] < 0 ? " - " : " + ");
        first = false;
        bool unit = mag == 1 && k > 0;
        if (!unit) os << hornvol::to_string(mag);
        if (k > 0) {
            if (!unit) os << "*";
            os << var;
            if (k > 1) os << "^" << k;
        }
    }
    return first ? "0" : os.str();
}

std::string QuasiPolynomial::to_string(const std::string& var) const {
    if (period == 1) return polynomial_to_string(coeffs[0], var);
    std::ostringstream os;
    for (int r = 0; r < period; ++r) {
        if (r) os << "; ";
        os << var << "=" << r << " mod " << period << ": " << polynomial_to_string(coeffs[r], var);
    }
    return os.str();
}

QuasiPolynomial fit_quasi_polynomial(const SampleMap& samples, int degree, int period) {
    if (degree < 0 || period < 1) throw std::invalid_argument("degree must be >= 0 and period >= 1");
    QuasiPolynomial q;
    q.period = period;
    q.degree = degree;
    q.coeffs.assign(period, RVec(degree + 1, 0));
    for (int r = 0; r < period; ++r) {
        std::vector<std::pair<long, BigInt>> cls;
        for (const auto& [s, v] : samples)
            if (residue(s, period) == r) cls.emplace_back(s, v);
        if (static_cast<int>(cls.size()) < degree + 1)
            throw std::invalid_argument("residue class " + std::to_string(r) + " has " + std::to_string(cls.size()) +
                                        " samples, need " + std::to_string(degree + 1));
        RMat a(degree + 1, RVec(degree + 1));
        RVec b(degree + 1);
        for (int i = 0; i <= degree; ++i) {
            Rational pw = 1;
            for (int k = 0; k <= degree; ++k) {
                a[i][k] = pw;
                pw *= cls[i].first;
            }
            b[i] = Rational(cls[i].second);
        }
        auto sol = solve_exact(a, b);
        if (!sol) throw std::logic_error("singular Vandermonde system");
        q.coeffs[r] = *sol;
        for (std::size_t i = degree + 1; i < cls.size(); ++i)
            if (q.evaluate(cls[i].first) != Rational(cls[i].second))
                throw std::runtime_error("samples are inconsistent with degree " + std::to_string(degree) +
                                         " and period " + std::to_string(period) + " at s = " +
                                         std::to_string(cls[i].first));
    }
    return q;
}

Rational leading_coefficient(const QuasiPolynomial& q) {
    bool found = false;
    Rational lead = 0;
    for (int r = 0; r < q.period; ++r) {
        if (q.class_vanishes(r)) continue;
        const Rational& c = q.coeffs[r][q.degree];
        if (!found) {
            lead = c;
            found = true;
        } else if (c != lead) {
            throw std::runtime_error("leading coefficient differs between residue classes");
        }
    }
    return lead;
}

ReciprocityReport reciprocity_check(const QuasiPolynomial& q, const RationalPolygon& p) {
    ReciprocityReport rep;
    rep.dim = p.dim;
    rep.value_at_minus_one = q.evaluate(-1);
    rep.signed_value = (p.dim % 2 == 0) ? rep.value_at_minus_one : Rational(-rep.value_at_minus_one);
    rep.interior = boundary_interior_counts(p).interior;
    rep.holds = p.dim >= 0 && rep.signed_value == Rational(rep.interior);
    return rep;
}

SampleMap stretched_samples(const RootSystem& rs, const IVec& lambda, const IVec& mu, const IVec& nu, long smax,
                            LrMethod method) {
    SampleMap out;
    for (long s = 0; s <= smax; ++s) {
        IVec l = lambda, m = mu, n = nu;
        for (auto& v : l) v *= s;
        for (auto& v : m) v *= s;
        for (auto& v : n) v *= s;
        std::int64_t c = method == LrMethod::Klimyk ? lr_klimyk(rs, l, m, n) : lr_steinberg(rs, l, m, n);
        out[s] = BigInt(static_cast<long>(c));
    }
    return out;
}

long default_smax(int degree, int period) { return static_cast<long>(period) * (degree + 1) + period - 1; }

StretchingFit fit_stretching(const RootSystem& rs, const IVec& lambda, const IVec& mu, const IVec& nu, int period,
                             long smax, int degree) {
    if (degree < 0) degree = rs.num_positive_roots() - rs.rank;
    if (smax < 0) smax = default_smax(degree, period);
    StretchingFit fit;
    fit.samples = stretched_samples(rs, lambda, mu, nu, smax);
    // An empty polytope has the zero Ehrhart function even though s = 0 still gives multiplicity 1.
    bool empty = std::all_of(std::next(fit.samples.begin()), fit.samples.end(),
                             [](const auto& kv) { return kv.second == 0; });
    if (empty && smax >= 1) {
        fit.poly.period = period;
        fit.poly.degree = degree;
        fit.poly.coeffs.assign(period, RVec(degree + 1, Rational(0)));
        return fit;
    }
    fit.poly = fit_quasi_polynomial(fit.samples, degree, period);
    return fit;
}

UnitStretchReport unit_stretch_sweep(const RootSystem& rs, int max_label, int max_s, std::size_t max_witnesses) {
    UnitStretchReport rep;
    const int r = rs.rank;
    const std::size_t total_labels = static_cast<std::size_t>(3 * r);
    IVec digits(total_labels, 0);
    while (true) {
        IVec l(digits.begin(), digits.begin() + r), m(digits.begin() + r, digits.begin() + 2 * r),
            n(digits.begin() + 2 * r, digits.end());
        if (lr_klimyk(rs, l, m, n) == 1) {
            ++rep.unit_triples;
            for (long s = 2; s <= max_s; ++s) {
                IVec ls = l, ms = m, ns = n;
                for (auto* v : {&ls, &ms, &ns})
                    for (auto& x : *v) x *= s;
                if (lr_klimyk(rs, ls, ms, ns) != 1) {
                    ++rep.counterexamples;
                    if (rep.witnesses.size() < max_witnesses) rep.witnesses.push_back({l, m, n});
                    break;
                }
            }
        }
        std::size_t k = 0;
        while (k < total_labels && digits[k] == max_label) digits[k++] = 0;
        if (k == total_labels) break;
        ++digits[k];
    }
    return rep;
}

}  // namespace hornvol
