#pragma once

#include "hornvol/rootsys.hpp"

#include <array>
#include <optional>

namespace hornvol {

using Point2 = std::array<Rational, 2>;

// a*x + b*y >= c (or > c when strict).
struct HalfPlane {
    Rational a, b, c;
    bool strict = false;
    bool contains(const Point2& p) const;
    bool on_boundary(const Point2& p) const { return a * p[0] + b * p[1] == c; }
};

// Affine form a*x + b*y + c that must take integer values at counted points.
struct IntegralForm {
    Rational a, b, c;
};

enum class IntegralityFilter {
    Raw,            // every point of Z^2 in the polygon
    AllParameters,  // additionally require every IntegralForm to be integral
};

struct RationalPolygon {
    std::vector<HalfPlane> halfplanes;
    std::vector<Point2> vertices;  // counter-clockwise, no redundant vertices
    int dim = -1;                  // -1 empty, 0 point, 1 segment, 2 full
    std::vector<IntegralForm> eliminated;
    bool bounded = true;
};

// Builds the vertex cycle and dimension from a half-plane system.
RationalPolygon make_polygon(std::vector<HalfPlane> halfplanes, std::vector<IntegralForm> eliminated = {});

// Berenstein-Zelevinsky polygon in the plane (x, y) = (t_0^(0), t_1^(1)). Weights
// are Dynkin labels and may be rational.
RationalPolygon bz_polygon_b2(const Weight& lambda, const Weight& mu, const Weight& nu);

std::int64_t lattice_point_count(const RationalPolygon& p,
                                 IntegralityFilter filter = IntegralityFilter::AllParameters);
Rational polygon_area(const RationalPolygon& p);

struct BoundaryInterior {
    std::int64_t boundary = 0;
    std::int64_t interior = 0;
};
// Relative boundary and relative interior counts (endpoints of a segment are its boundary).
BoundaryInterior boundary_interior_counts(const RationalPolygon& p,
                                          IntegralityFilter filter = IntegralityFilter::AllParameters);

// Length of a segment measured in primitive lattice steps along its direction.
Rational lattice_relative_length(const Point2& from, const Point2& to);
Rational relative_perimeter(const RationalPolygon& p);

struct PickReport {
    Rational p;
    Rational area;
    Rational perimeter;  // L
    std::int64_t count = 0;
    std::int64_t boundary = 0;
    std::int64_t interior = 0;
    bool perimeter_matches_boundary = false;  // L == b
    bool pick_holds = false;                  // only meaningful when p == 1
    bool holds = false;
};
PickReport pick_relation_check(const RationalPolygon& p);

enum class Degeneracy { Empty, Point, Segment, Full };
struct DegeneracyInfo {
    Degeneracy kind = Degeneracy::Empty;
    Rational relative_length;  // for segments
};
DegeneracyInfo degeneracy_info(const RationalPolygon& p);
std::string to_string(Degeneracy d);

}  // namespace hornvol
