#pragma once

#include "hornvol/bzpolytope.hpp"
#include "hornvol/rootsys.hpp"

#include <array>
#include <map>

namespace hornvol {

// Quasi-polynomial with one coefficient vector per residue class of s modulo period.
// coeffs[c][k] multiplies s^k for s = c (mod period).
struct QuasiPolynomial {
    int period = 1;
    int degree = 0;
    std::vector<RVec> coeffs;

    Rational evaluate(long s) const;
    const RVec& class_of(long s) const;
    bool class_vanishes(int residue) const;
    std::string to_string(const std::string& var = "s") const;
};

std::string polynomial_to_string(const RVec& coeffs, const std::string& var = "s");

using SampleMap = std::map<long, BigInt>;

// Exact per-class Vandermonde solve on the first degree+1 samples of each class;
// every further sample must be reproduced exactly.
QuasiPolynomial fit_quasi_polynomial(const SampleMap& samples, int degree, int period);

// Leading coefficient shared by all residue classes that are not identically zero.
Rational leading_coefficient(const QuasiPolynomial& q);

struct ReciprocityReport {
    Rational value_at_minus_one;  // Q(-1)
    Rational signed_value;        // (-1)^dim Q(-1)
    std::int64_t interior = 0;
    int dim = 0;
    bool holds = false;
};
// (-1)^dim Q(-1) equals the number of relative interior lattice points of P.
ReciprocityReport reciprocity_check(const QuasiPolynomial& q, const RationalPolygon& p);

enum class LrMethod { Klimyk, Steinberg };

// C_{s lambda, s mu}^{s nu} for s = 0..smax.
SampleMap stretched_samples(const RootSystem& rs, const IVec& lambda, const IVec& mu, const IVec& nu, long smax,
                            LrMethod method = LrMethod::Steinberg);

// Sample range large enough to give every residue class degree + 2 samples.
long default_smax(int degree, int period);

struct StretchingFit {
    SampleMap samples;
    QuasiPolynomial poly;
};
StretchingFit fit_stretching(const RootSystem& rs, const IVec& lambda, const IVec& mu, const IVec& nu, int period,
                             long smax = -1, int degree = -1);

// Diagnostic for the question whether C = 1 forces C(s) = 1 for every stretch s.
// Reports witnesses; it does not assert either answer.
struct UnitStretchReport {
    std::size_t unit_triples = 0;     // triples with C = 1 and labels <= max_label
    std::size_t counterexamples = 0;  // of those, how many have C(s) != 1 for some 2 <= s <= max_s
    std::vector<std::array<IVec, 3>> witnesses;
};
UnitStretchReport unit_stretch_sweep(const RootSystem& rs, int max_label, int max_s, std::size_t max_witnesses = 5);

}  // namespace hornvol
