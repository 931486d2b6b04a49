#include "hornvol/sampler.hpp"

#include <Eigen/Dense>
#include <boost/math/special_functions/gamma.hpp>

#include <algorithm>
#include <cmath>
#include <future>
#include <numbers>
#include <random>
#include <stdexcept>
#include <thread>

namespace hornvol {

std::uint64_t HornHistogram::total() const {
    std::uint64_t t = 0;
    for (auto c : counts) t += c;
    return t;
}

namespace {

using Mat5 = Eigen::Matrix<double, 5, 5>;

std::mt19937_64 chunk_rng(std::uint64_t seed, std::uint64_t chunk) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(chunk), static_cast<std::uint32_t>(chunk >> 32)};
    return std::mt19937_64(seq);
}

Mat5 haar_so5(std::mt19937_64& rng) {
    std::normal_distribution<double> normal;
    Mat5 g;
    for (int i = 0; i < 5; ++i)
        for (int j = 0; j < 5; ++j) g(i, j) = normal(rng);
    Eigen::HouseholderQR<Mat5> qr(g);
    Mat5 q = qr.householderQ();
    Mat5 r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int j = 0; j < 5; ++j)
        if (r(j, j) < 0) q.col(j) = -q.col(j);
    // In odd dimension -1 has determinant -1, so this lands in SO(5) without biasing the measure.
    if (q.determinant() < 0) q = -q;
    return q;
}

Mat5 block_skew(double x1, double x2) {
    Mat5 m = Mat5::Zero();
    m(0, 1) = x1;
    m(1, 0) = -x1;
    m(2, 3) = x2;
    m(3, 2) = -x2;
    return m;
}

unsigned thread_count(const SamplerOptions& o) {
    unsigned t = o.threads ? o.threads : std::thread::hardware_concurrency();
    return std::max(1u, t);
}

// Runs body(chunk_index, begin, end, partial) over chunks and merges the partial histograms in chunk order.
template <class Body>
void run_chunks(HornHistogram& h, std::uint64_t n, const SamplerOptions& opts, Body body) {
    const std::uint64_t chunks = (n + opts.chunk - 1) / opts.chunk;
    std::vector<HornHistogram> parts(chunks, h);
    unsigned threads = thread_count(opts);
    std::vector<std::future<void>> jobs;
    for (unsigned t = 0; t < threads; ++t)
        jobs.push_back(std::async(std::launch::async, [&, t] {
            for (std::uint64_t c = t; c < chunks; c += threads) {
                std::uint64_t begin = c * opts.chunk, end = std::min(n, begin + opts.chunk);
                body(c, end - begin, parts[c]);
            }
        }));
    for (auto& j : jobs) j.get();
    bool first = true;
    for (const auto& p : parts) {
        for (std::size_t i = 0; i < h.counts.size(); ++i) h.counts[i] += p.counts[i];
        h.outside_support += p.outside_support;
        h.sample_count += p.sample_count;
        if (p.sample_count == 0) continue;
        if (first) {
            h.min_x = p.min_x;
            h.max_x = p.max_x;
            h.min_y = p.min_y;
            h.max_y = p.max_y;
            first = false;
        } else {
            h.min_x = std::min(h.min_x, p.min_x);
            h.max_x = std::max(h.max_x, p.max_x);
            h.min_y = std::min(h.min_y, p.min_y);
            h.max_y = std::max(h.max_y, p.max_y);
        }
    }
}

void record(HornHistogram& h, double x, double y) {
    if (h.sample_count == 0) {
        h.min_x = h.max_x = x;
        h.min_y = h.max_y = y;
    } else {
        h.min_x = std::min(h.min_x, x);
        h.max_x = std::max(h.max_x, x);
        h.min_y = std::min(h.min_y, y);
        h.max_y = std::max(h.max_y, y);
    }
    ++h.sample_count;
    int ix = static_cast<int>(std::floor((x - h.x0) / (h.x1 - h.x0) * h.nx));
    ix = std::clamp(ix, 0, h.nx - 1);
    int iy = 0;
    if (h.dims == 2) {
        iy = static_cast<int>(std::floor((y - h.y0) / (h.y1 - h.y0) * h.ny));
        iy = std::clamp(iy, 0, h.ny - 1);
    }
    ++h.counts[static_cast<std::size_t>(iy) * h.nx + ix];
}

}  // namespace

std::pair<Point2, Point2> b2_bin_box(const Point2& alpha, const Point2& beta) {
    RationalPolygon p = horn_polygon_b2(alpha, beta);
    if (p.vertices.empty()) throw std::domain_error("empty Horn polygon");
    Point2 lo = p.vertices[0], hi = p.vertices[0];
    for (const auto& v : p.vertices)
        for (int k = 0; k < 2; ++k) {
            lo[k] = std::min(lo[k], v[k]);
            hi[k] = std::max(hi[k], v[k]);
        }
    return {lo, hi};
}

HornHistogram sample_b2_spectrum(const Point2& alpha, const Point2& beta, std::uint64_t n, std::uint64_t seed,
                                 const SamplerOptions& opts) {
    require_regular_ordered(alpha, "alpha");
    require_regular_ordered(beta, "beta");
    if (n < 1) throw std::invalid_argument("sample count must be at least 1");
    RationalPolygon poly = horn_polygon_b2(alpha, beta);
    auto [lo, hi] = b2_bin_box(alpha, beta);
    HornHistogram h;
    h.dims = 2;
    h.x0 = lo[0].get_d();
    h.x1 = hi[0].get_d();
    h.y0 = lo[1].get_d();
    h.y1 = hi[1].get_d();
    h.nx = h.ny = opts.bins;
    h.counts.assign(static_cast<std::size_t>(opts.bins) * opts.bins, 0);
    h.rng_seed = seed;

    struct Face {
        double a, b, c;
    };
    std::vector<Face> faces;
    for (const auto& hp : poly.halfplanes) faces.push_back({hp.a.get_d(), hp.b.get_d(), hp.c.get_d()});
    const Mat5 a = block_skew(alpha[0].get_d(), alpha[1].get_d());
    const Mat5 b = block_skew(beta[0].get_d(), beta[1].get_d());
    const double tol = opts.tolerance;

    HornHistogram result = h;
    run_chunks(result, n, opts, [&](std::uint64_t chunk, std::uint64_t count, HornHistogram& part) {
        std::mt19937_64 rng = chunk_rng(seed, chunk);
        Eigen::SelfAdjointEigenSolver<Mat5> eig;
        for (std::uint64_t s = 0; s < count; ++s) {
            Mat5 g1 = haar_so5(rng), g2 = haar_so5(rng);
            Mat5 m = g1 * a * g1.transpose() + g2 * b * g2.transpose();
            Mat5 sq = -(m * m);
            eig.compute(sq, Eigen::EigenvaluesOnly);
            auto e = eig.eigenvalues();  // ascending: 0, g2^2, g2^2, g1^2, g1^2
            double x = std::sqrt(std::max(0.0, (e(3) + e(4)) / 2));
            double y = std::sqrt(std::max(0.0, (e(1) + e(2)) / 2));
            for (const auto& f : faces)
                if (f.a * x + f.b * y < f.c - tol) {
                    ++part.outside_support;
                    break;
                }
            record(part, x, y);
        }
    });
    return result;
}

HornHistogram sample_so2_symmetric(double a, double b, std::uint64_t n, std::uint64_t seed,
                                   const SamplerOptions& opts) {
    if (!(a > 0 && b > 0)) throw std::domain_error("SO(2) sampler requires positive arguments");
    if (n < 1) throw std::invalid_argument("sample count must be at least 1");
    HornHistogram h;
    h.dims = 1;
    h.x0 = std::fabs(a - b);
    h.x1 = a + b;
    h.nx = opts.bins;
    h.ny = 1;
    h.counts.assign(opts.bins, 0);
    h.rng_seed = seed;
    const std::uint64_t chunks = (n + opts.chunk - 1) / opts.chunk;
    std::vector<std::vector<double>> values(chunks);
    HornHistogram result = h;
    const double tol = opts.tolerance;
    run_chunks(result, n, opts, [&](std::uint64_t chunk, std::uint64_t count, HornHistogram& part) {
        std::mt19937_64 rng = chunk_rng(seed, chunk);
        std::uniform_real_distribution<double> phi(0, 2 * std::numbers::pi);
        auto& out = values[chunk];
        out.reserve(count);
        for (std::uint64_t s = 0; s < count; ++s) {
            double g = std::sqrt(std::max(0.0, a * a + b * b + 2 * a * b * std::cos(2 * phi(rng))));
            if (g < h.x0 - tol || g > h.x1 + tol) ++part.outside_support;
            out.push_back(g);
            record(part, g, 0);
        }
    });
    std::vector<double> all;
    all.reserve(n);
    for (const auto& v : values) all.insert(all.end(), v.begin(), v.end());
    std::sort(all.begin(), all.end());
    double d = 0;
    const double total = static_cast<double>(all.size());
    for (std::size_t i = 0; i < all.size(); ++i) {
        double f = so2_cdf(a, b, all[i]);
        d = std::max({d, std::fabs((i + 1) / total - f), std::fabs(f - i / total)});
    }
    result.ks_distance = d;
    return result;
}

double haar_g11_squared_mean(std::uint64_t n, std::uint64_t seed) {
    std::mt19937_64 rng = chunk_rng(seed, 0);
    double sum = 0;
    for (std::uint64_t i = 0; i < n; ++i) {
        Mat5 g = haar_so5(rng);
        sum += g(0, 0) * g(0, 0);
    }
    return sum / static_cast<double>(n);
}

std::vector<Rational> b2_bin_masses(const PiecewiseQuadratic& pq, const HornHistogram& h, const Point2& lo,
                                    const Point2& hi) {
    std::vector<Rational> masses(static_cast<std::size_t>(h.nx) * h.ny, 0);
    for (int iy = 0; iy < h.ny; ++iy) {
        Rational y0 = lo[1] + (hi[1] - lo[1]) * iy / h.ny;
        Rational y1 = lo[1] + (hi[1] - lo[1]) * (iy + 1) / h.ny;
        for (int ix = 0; ix < h.nx; ++ix) {
            Rational x0 = lo[0] + (hi[0] - lo[0]) * ix / h.nx;
            Rational x1 = lo[0] + (hi[0] - lo[0]) * (ix + 1) / h.nx;
            masses[static_cast<std::size_t>(iy) * h.nx + ix] = pdf_mass_in_box(pq, x0, x1, y0, y1);
        }
    }
    return masses;
}

ChiSquareReport chi_square_against(const HornHistogram& h, const std::vector<double>& probs) {
    if (probs.size() != h.counts.size()) throw std::invalid_argument("bin count mismatch");
    ChiSquareReport rep;
    const double n = static_cast<double>(h.sample_count);
    double pooled_obs = 0, pooled_exp = 0;
    for (std::size_t i = 0; i < probs.size(); ++i) {
        double e = n * probs[i];
        double o = static_cast<double>(h.counts[i]);
        if (e < 5) {
            pooled_obs += o;
            pooled_exp += e;
            ++rep.bins_pooled;
            continue;
        }
        rep.statistic += (o - e) * (o - e) / e;
        ++rep.bins_used;
    }
    if (rep.bins_pooled > 0) {
        if (pooled_exp > 0) {
            rep.statistic += (pooled_obs - pooled_exp) * (pooled_obs - pooled_exp) / pooled_exp;
            ++rep.bins_used;
        } else if (pooled_obs > 0) {
            rep.statistic = std::numeric_limits<double>::infinity();
        }
    }
    rep.dof = std::max(1, rep.bins_used - 1);
    rep.p_value = std::isfinite(rep.statistic) ? boost::math::gamma_q(rep.dof / 2.0, rep.statistic / 2) : 0.0;
    return rep;
}

ChiSquareReport chi_square_b2(const HornHistogram& h, const PiecewiseQuadratic& pq) {
    auto [lo, hi] = b2_bin_box(pq.alpha, pq.beta);
    auto masses = b2_bin_masses(pq, h, lo, hi);
    std::vector<double> probs;
    for (const auto& m : masses) probs.push_back(m.get_d());
    return chi_square_against(h, probs);
}

ChiSquareReport chi_square_two_sample(const HornHistogram& a, const HornHistogram& b) {
    if (a.counts.size() != b.counts.size()) throw std::invalid_argument("bin count mismatch");
    ChiSquareReport rep;
    const double na = static_cast<double>(a.sample_count), nb = static_cast<double>(b.sample_count);
    const double ka = std::sqrt(nb / na), kb = std::sqrt(na / nb);
    double pa = 0, pb = 0;
    auto add = [&](double oa, double ob) {
        double d = ka * oa - kb * ob;
        rep.statistic += d * d / (oa + ob);
        ++rep.bins_used;
    };
    for (std::size_t i = 0; i < a.counts.size(); ++i) {
        double oa = static_cast<double>(a.counts[i]), ob = static_cast<double>(b.counts[i]);
        if (oa + ob < 10) {
            pa += oa;
            pb += ob;
            ++rep.bins_pooled;
            continue;
        }
        add(oa, ob);
    }
    if (pa + pb > 0) add(pa, pb);
    rep.dof = std::max(1, rep.bins_used - 1);
    rep.p_value = boost::math::gamma_q(rep.dof / 2.0, rep.statistic / 2);
    return rep;
}

}  // namespace hornvol
