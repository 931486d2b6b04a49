#pragma once

#include "hornvol/volume.hpp"

#include <cstdint>
#include <vector>

namespace hornvol {

// Histogram over a rectangle (two-dimensional) or an interval (ny == 1, y unused).
struct HornHistogram {
    int dims = 2;
    double x0 = 0, x1 = 1, y0 = 0, y1 = 1;
    int nx = 1, ny = 1;
    std::vector<std::uint64_t> counts;  // index iy * nx + ix
    std::uint64_t sample_count = 0;
    std::uint64_t rng_seed = 0;
    std::uint64_t outside_support = 0;  // samples violating the support beyond the tolerance
    double min_x = 0, max_x = 0, min_y = 0, max_y = 0;
    double ks_distance = -1;            // one-dimensional histograms only

    std::uint64_t count(int ix, int iy = 0) const { return counts[static_cast<std::size_t>(iy) * nx + ix]; }
    std::uint64_t total() const;
};

// Per-chunk seeds are derived from (seed, chunk index), so results do not depend on the thread count.
struct SamplerOptions {
    int bins = 40;
    unsigned threads = 0;  // 0: hardware concurrency
    double tolerance = 1e-9;
    std::uint64_t chunk = 20000;
};

// Spectra (gamma1 >= gamma2 >= 0) of g1 A g1^T + g2 B g2^T for Haar g1, g2 in SO(5), with A, B
// the block-diagonal skew matrices of alpha and beta. Bins cover the bounding box of the Horn polygon.
HornHistogram sample_b2_spectrum(const Point2& alpha, const Point2& beta, std::uint64_t n, std::uint64_t seed,
                                 const SamplerOptions& opts = {});

// gamma12 = sqrt(a^2 + b^2 + 2ab cos 2phi) for phi uniform; bins cover [|a-b|, a+b] and
// the Kolmogorov-Smirnov distance to the closed-form CDF is recorded.
HornHistogram sample_so2_symmetric(double a12, double b12, std::uint64_t n, std::uint64_t seed,
                                   const SamplerOptions& opts = {});

// Mean of (g_11)^2 over Haar samples of SO(5); tends to 1/5.
double haar_g11_squared_mean(std::uint64_t n, std::uint64_t seed);

struct ChiSquareReport {
    double statistic = 0;
    int dof = 0;
    double p_value = 0;
    int bins_used = 0;
    int bins_pooled = 0;  // bins with expected count below 5 merged into one
};

// Exact expected bin masses from the piecewise quadratic form of J.
std::vector<Rational> b2_bin_masses(const PiecewiseQuadratic& pq, const HornHistogram& h,
                                    const Point2& lower, const Point2& upper);
ChiSquareReport chi_square_against(const HornHistogram& h, const std::vector<double>& probabilities);
ChiSquareReport chi_square_b2(const HornHistogram& h, const PiecewiseQuadratic& pq);
// Homogeneity test of two histograms with identical binning.
ChiSquareReport chi_square_two_sample(const HornHistogram& a, const HornHistogram& b);

// Rational bounding box used for binning B2 samples.
std::pair<Point2, Point2> b2_bin_box(const Point2& alpha, const Point2& beta);

}  // namespace hornvol
