#pragma once

#include "hornvol/rational.hpp"

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace hornvol {

enum class Family { A, B, C, D, E6, E7, E8, F4, G2 };
enum class Basis { Dynkin, SimpleRoot, Orthonormal };

using IVec = std::vector<std::int64_t>;

struct Weight {
    RVec coords;
    Basis basis = Basis::Dynkin;
};

Weight dynkin(std::initializer_list<long> labels);
Weight dynkin(const IVec& labels);
Weight orthonormal(RVec coords);

// Root data in an explicit orthonormal realization. All lengths are those of
// the realization (for B_r the long roots have squared length 2, the short ones 1).
struct RootSystem {
    Family family = Family::A;
    int rank = 0;
    int ambient_dim = 0;
    RMat simple_roots;
    RMat positive_roots;
    std::vector<IVec> positive_roots_simple;  // simple-root coordinates
    std::vector<IVec> positive_roots_dynkin;
    std::vector<std::vector<int>> cartan_matrix;
    RMat simple_gram;      // <alpha_i, alpha_j>
    RMat dynkin_form;      // <x, y> = x^T F y for Dynkin-label vectors
    RMat dynkin_to_simple; // simple-root coordinates = M * Dynkin labels
    Weight weyl_vector;    // Dynkin labels (1, ..., 1)
    int dual_coxeter_number = 0;
    std::vector<int> coxeter_exponents;

    std::string name() const;
    int num_positive_roots() const { return static_cast<int>(positive_roots.size()); }
    // Half the squared length of simple root i; <alpha, omega_i> = c_i * half_norm(i)
    // for a positive root alpha with simple coordinate c_i.
    Rational half_norm(int i) const { return simple_gram[i][i] / 2; }
};

RootSystem build_root_system(Family family, int rank);
// Parses names such as "B2", "A3", "E6", "G2".
RootSystem build_root_system(const std::string& name);
std::string family_name(Family f);
Family parse_family(const std::string& text);

Weight to_basis(const RootSystem& rs, const Weight& w, Basis target);
IVec integer_dynkin(const RootSystem& rs, const Weight& w);
bool is_dominant_integral(const RootSystem& rs, const Weight& w);

// Inner product <x, y> in the orthonormal realization.
Rational inner(const RootSystem& rs, const Weight& x, const Weight& y);

// Reflection s_i on Dynkin labels, in place.
void reflect_dynkin(const RootSystem& rs, int i, IVec& labels);

// General Weyl group element as a word s_{w0} s_{w1} ... (rightmost applied first).
struct WeylElement {
    std::vector<int> word;
    int sign = 1;
};

// Explicit B2 element acting on orthonormal coordinates: optionally swap the
// two components, then multiply component k by sign_k.
struct B2WeylElement {
    bool swap = false;
    int sign1 = 1;
    int sign2 = 1;
    int epsilon() const { return (swap ? -1 : 1) * sign1 * sign2; }
    std::array<Rational, 2> apply(const std::array<Rational, 2>& x) const;
};

const std::array<B2WeylElement, 8>& b2_weyl_table();

// Integer Dynkin-basis matrix of a Weyl element with its sign, for fast orbit work.
struct WeylMatrix {
    std::vector<std::vector<std::int64_t>> m;
    std::vector<int> word;
    int sign = 1;
    IVec apply(const IVec& x) const;
};

// Enumerates W by breadth-first search over the orbit of rho. Throws when
// |W| would exceed max_order.
std::vector<WeylMatrix> weyl_group(const RootSystem& rs, std::size_t max_order = 100000);

Weight apply_weyl(const RootSystem& rs, const WeylElement& w, const Weight& x);
Weight apply_weyl(const B2WeylElement& w, const Weight& x);  // x must be orthonormal B2

BigInt weyl_dimension(const RootSystem& rs, const Weight& lambda);
BigInt weyl_dimension(const RootSystem& rs, const IVec& lambda);
Rational delta_g(const RootSystem& rs, const Weight& x);

// kappa_g = (2 pi)^{two_pi_exponent} / delta_rho_normalized where the
// normalization takes long roots of squared length 2.
struct KappaG {
    Rational prefactor;  // 1 / Delta(rho) in the normalized inner product
    int two_pi_exponent = 0;
    Rational delta_rho_normalized;
    BigInt K;                   // prod over positive roots of <theta,theta>/<alpha,alpha>
    BigInt exponent_factorials; // prod of l_i!
};
KappaG kappa_constants(const RootSystem& rs);

// Value coefficient * (2 pi)^{two_pi_exponent} * pi^{sqrt_pi_power / 2}.
struct ExactConstant {
    Rational coefficient;
    Rational two_pi_exponent;
    int sqrt_pi_power = 0;
    double to_double() const;
    std::string to_string() const;
};
ExactConstant kappa_theta(const Rational& theta, int n);

bool is_compatible(const RootSystem& rs, const Weight& lambda, const Weight& mu, const Weight& nu);

// Table-1 style data.
int expected_positive_roots(Family f, int rank);

}  // namespace hornvol
