#pragma once

#include "hornvol/rootsys.hpp"

#include <map>
#include <memory>
#include <optional>

namespace hornvol {

struct MultiplicityLimits {
    // Largest representation dimension for which a weight table is built.
    BigInt max_dimension = 1000000;
    // Largest number of cells in a Kostant partition table.
    std::size_t max_kostant_cells = 50000000;
};

MultiplicityLimits& multiplicity_limits();

// Weight system of an irreducible representation. Weights are Dynkin labels.
struct WeightMultiplicityTable {
    IVec highest_weight;
    std::map<IVec, std::int64_t> dominant;  // dominant weights only
    std::vector<std::pair<IVec, std::int64_t>> entries;  // every weight, orbits expanded
    BigInt total() const;
};

// Cached per (algebra, highest weight); safe to call concurrently.
std::shared_ptr<const WeightMultiplicityTable> freudenthal_weights(const RootSystem& rs, const IVec& lambda);
WeightMultiplicityTable freudenthal_weights(const RootSystem& rs, const Weight& lambda);

// Weyl orbit of a dominant weight (Dynkin labels).
std::vector<IVec> weyl_orbit(const RootSystem& rs, const IVec& dominant_weight);

// Reflects x into the dominant chamber. Returns the sign of the Weyl element used,
// or 0 if x lies on a wall (some reflection fixes it).
int reflect_to_dominant_strict(const RootSystem& rs, IVec& x);

std::int64_t lr_klimyk(const RootSystem& rs, const IVec& lambda, const IVec& mu, const IVec& nu);
std::int64_t lr_klimyk(const RootSystem& rs, const Weight& lambda, const Weight& mu, const Weight& nu);

std::map<IVec, std::int64_t> tensor_decompose(const RootSystem& rs, const IVec& lambda, const IVec& mu);
std::map<IVec, std::int64_t> tensor_decompose(const RootSystem& rs, const Weight& lambda, const Weight& mu);

// Number of ways to write sigma as a nonnegative integer combination of positive roots.
// sigma given in any basis; zero when it is outside the root lattice.
BigInt kostant_partition(const RootSystem& rs, const Weight& sigma);

// Closed form for B2, sigma = a alpha_1 + b alpha_2.
std::int64_t kostant_b2(std::int64_t a, std::int64_t b);

// Dense table of partition counts for all sigma in the box [0, bound] (simple-root coordinates).
class KostantTable {
public:
    KostantTable(const RootSystem& rs, const IVec& bound);
    std::int64_t operator()(const IVec& sigma_simple) const;
    std::size_t cells() const { return values_.size(); }

private:
    IVec bound_;
    std::vector<std::size_t> stride_;
    std::vector<std::int64_t> values_;
};

std::int64_t lr_steinberg(const RootSystem& rs, const IVec& lambda, const IVec& mu, const IVec& nu);
std::int64_t lr_steinberg(const RootSystem& rs, const Weight& lambda, const Weight& mu, const Weight& nu);

// sum over tau of C_{lambda mu}^tau C_{tau kappa}^nu
std::int64_t lr_triple(const RootSystem& rs, const IVec& lambda, const IVec& mu, const IVec& kappa, const IVec& nu);

// Simple-root coordinates of lambda + mu - nu when integral.
std::optional<IVec> integral_simple_difference(const RootSystem& rs, const IVec& lambda, const IVec& mu,
                                               const IVec& nu);

}  // namespace hornvol
