#pragma once

#include "hornvol/rational.hpp"

#include <optional>

namespace hornvol {

using ZMat = std::vector<std::vector<BigInt>>;

// Exact determinant of an integer matrix by fraction-free (Bareiss) elimination.
BigInt bareiss_determinant(ZMat m);

Rational determinant(const RMat& m);

// Solves A x = b exactly for square nonsingular A; std::nullopt when singular.
std::optional<RVec> solve_exact(RMat a, RVec b);

RMat inverse(const RMat& a);

RMat transpose(const RMat& a);
RMat multiply(const RMat& a, const RMat& b);
RVec multiply(const RMat& a, const RVec& x);

Rational dot(const RVec& a, const RVec& b);

}  // namespace hornvol
