#pragma once

#include "hornvol/bzpolytope.hpp"
#include "hornvol/ehrhart.hpp"
#include "hornvol/rootsys.hpp"

#include <cstdint>
#include <limits>

namespace hornvol {

// B2 volume function J(alpha, beta; gamma) with all three arguments in the
// orthonormal basis. Uses the Weyl-sum closed form with sign(0) = 0.
Rational j_b2(const Point2& alpha, const Point2& beta, const Point2& gamma);
// Same closed form summed over all three Weyl group factors (512 terms).
Rational j_b2_triple_sum(const Point2& alpha, const Point2& beta, const Point2& gamma);

// Orthonormal coordinates of a B2 weight given by (possibly rational) Dynkin labels.
Point2 b2_orthonormal(const Weight& w);
Point2 b2_orthonormal(const IVec& dynkin_labels);

// Throws std::domain_error unless x1 > x2 > 0.
void require_regular_ordered(const Point2& x, const char* what);

bool horn_contains_b2(const Point2& alpha, const Point2& beta, const Point2& gamma);
// Horn inequalities plus the chamber conditions gamma1 >= gamma2 >= 0.
RationalPolygon horn_polygon_b2(const Point2& alpha, const Point2& beta);

enum class LineKind { Gamma1, Gamma2, Sum, Diff };

// Line a*g1 + b*g2 = level; multiplicity counts coincident candidate expressions.
struct SingularLine {
    LineKind kind = LineKind::Gamma1;
    Rational level;
    int multiplicity = 1;
    bool meets_polygon = false;
    Rational a() const;
    Rational b() const;
    std::string describe() const;
};

std::vector<SingularLine> singular_lines_b2(const Point2& alpha, const Point2& beta, bool only_meeting = false);

// q0 + q1 x + q2 y + q3 x^2 + q4 x y + q5 y^2
struct Quadratic2 {
    std::array<Rational, 6> c{};
    Rational operator()(const Point2& p) const;
    Point2 gradient(const Point2& p) const;
    bool is_zero() const;
    Quadratic2 operator-(const Quadratic2& o) const;
    Quadratic2 operator+(const Quadratic2& o) const;
    std::string to_string() const;
};

// k (a x + b y - c)^2 / (2 (a^2 + b^2)), i.e. k times half the squared distance to the line.
Quadratic2 half_delta_squared(const Rational& a, const Rational& b, const Rational& c, const Rational& k = 1);

enum class WallKind { Inactive, QuadraticRamp, BoundaryLinear, Anomalous };
std::string to_string(WallKind k);

struct PiecewiseCell {
    std::vector<Point2> vertices;  // counter-clockwise
    Quadratic2 q;
};

struct Wall {
    int cell_plus = -1;   // cell on the side where a x + b y > c; -1 means outside the polygon
    int cell_minus = -1;  // cell on the other side
    Rational a, b, c;     // primitive integer normal
    Point2 from, to;
    WallKind kind = WallKind::Anomalous;
    Rational k;           // jump = k * half_delta_squared, for quadratic ramps
    bool chamber_wall = false;
    bool on_candidate_line = false;
    int candidate_multiplicity = 0;
    bool vanishes_linearly = false;  // chamber walls: Q = 0 on the wall with a nonzero normal slope
};

struct VertexLoop {
    Point2 vertex;
    std::size_t walls = 0;
    bool consistent = false;
};

struct FourProngVertex {
    char label;
    Point2 point;
    int lines_through = 0;  // distinct candidate lines through the point
    bool inside_polygon = false;
};

struct PiecewiseQuadratic {
    Point2 alpha, beta;
    bool swapped = false;
    RationalPolygon polygon;
    std::vector<SingularLine> lines;
    std::vector<PiecewiseCell> cells;
    std::vector<Wall> walls;
    std::vector<VertexLoop> loops;
    std::vector<FourProngVertex> four_prong;
    std::size_t fit_evaluations = 0;
    std::size_t random_checks = 0;

    // Index of a cell whose closure contains p, or -1.
    int locate(const Point2& p) const;
    Rational evaluate(const Point2& p) const;
    bool all_walls_classified() const;
    bool all_loops_consistent() const;
};

// Throws std::runtime_error if any cell fails to be a single quadratic.
PiecewiseQuadratic piecewise_analyze_b2(const Point2& alpha, const Point2& beta, std::uint64_t seed = 1);

struct C1Report {
    Rational step;
    Rational max_discrepancy;  // max Euclidean-norm gradient mismatch, rounded up to 1e-12
    double max_discrepancy_d = 0;
    std::size_t walls_checked = 0;
    bool ok = false;           // max discrepancy <= tolerance_factor * step
};
// Central finite differences on both sides of every wall at its midpoint.
C1Report c1_check_b2(const PiecewiseQuadratic& pq, const Rational& step, const Rational& tolerance_factor = 10);

struct TransectReport {
    std::size_t transects = 0;
    std::size_t samples = 0;
    std::size_t breaks = 0;
    std::size_t unexplained = 0;  // breaks not crossed by a candidate line or polygon edge
};
// Independent scan: exact values of J along random chords; third differences flag
// changes of polynomial determination, each of which must straddle a known line.
TransectReport transect_scan_b2(const Point2& alpha, const Point2& beta, std::size_t transects, std::size_t steps,
                                std::uint64_t seed);

Rational delta_b2(const Point2& x);
// (3/2) |Delta(gamma)| / (|Delta(alpha)| |Delta(beta)|) * J
Rational pdf_b2(const Point2& alpha, const Point2& beta, const Point2& gamma);
// Exact integral of pdf_b2 over the Horn polygon, cell by cell.
Rational pdf_normalization_b2(const PiecewiseQuadratic& pq);
// Exact integral of pdf_b2 over the rectangle [x0,x1] x [y0,y1] clipped to the polygon.
Rational pdf_mass_in_box(const PiecewiseQuadratic& pq, const Rational& x0, const Rational& x1, const Rational& y0,
                         const Rational& y1);

// Coefficient sets of the J-LR relations.
struct KappaData {
    std::vector<IVec> weights;
    RVec coefficients;
};
// Tabulated coefficient lists (B2 and B3).
KappaData kappa_data(const RootSystem& rs, bool hat);
// Dominant weights of the irrep of highest weight rho - xi (or rho - xi_hat).
std::vector<IVec> kappa_weights(const RootSystem& rs, bool hat);

// Sum over K of c_kappa C_{lambda mu kappa}^nu; equals J at the rho-shifted B2 arguments.
Rational j_lr_shifted(const IVec& lambda, const IVec& mu, const IVec& nu);
// Sum over K-hat of c_kappa C_{(lambda-rho)(mu-rho) kappa}^{nu-rho}; equals J(lambda, mu; nu).
Rational j_lr_unshifted(const IVec& lambda, const IVec& mu, const IVec& nu);

struct KissingerResult {
    StretchingFit fit;
    Rational coefficient;
};
// Leading coefficient of the stretching quasi-polynomial of (s rho, s rho, s (kappa + rho)).
KissingerResult c_kappa_via_kissinger(const RootSystem& rs, const IVec& kappa, int period, int degree,
                                      long smax = -1);

// SO(2) real-symmetric case. Returns +infinity exactly at the support endpoints.
double j_so2_symmetric(double a12, double b12, double g12);
double so2_density(double a12, double b12, double g12);
double so2_cdf(double a12, double b12, double g12);

}  // namespace hornvol
