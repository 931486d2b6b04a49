#include "hornvol/bzpolytope.hpp"

#include <algorithm>
#include <stdexcept>

namespace hornvol {

bool HalfPlane::contains(const Point2& p) const {
    Rational v = a * p[0] + b * p[1];
    return strict ? v > c : v >= c;
}

namespace {

Rational cross(const Point2& o, const Point2& a, const Point2& b) {
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
}

bool unbounded_system(const std::vector<HalfPlane>& hs) {
    if (hs.empty()) return true;
    // A nonzero recession direction exists iff some extreme ray of the cone
    // {d : n_i . d >= 0} is nonzero; its extreme rays are perpendicular to a normal.
    for (const auto& h : hs) {
        for (int s : {1, -1}) {
            Rational dx = -h.b * s, dy = h.a * s;
            bool ok = true;
            for (const auto& g : hs)
                if (g.a * dx + g.b * dy < 0) {
                    ok = false;
                    break;
                }
            if (ok) return true;
        }
    }
    return false;
}

bool closure_contains(const std::vector<HalfPlane>& hs, const Point2& p) {
    for (const auto& h : hs)
        if (h.a * p[0] + h.b * p[1] < h.c) return false;
    return true;
}

// Counter-clockwise convex hull of a point set (Andrew's monotone chain).
std::vector<Point2> convex_hull(std::vector<Point2> pts) {
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    if (pts.size() < 3) return pts;
    std::vector<Point2> hull(2 * pts.size());
    std::size_t k = 0;
    for (const auto& p : pts) {
        while (k >= 2 && cross(hull[k - 2], hull[k - 1], p) <= 0) --k;
        hull[k++] = p;
    }
    for (std::size_t i = pts.size() - 1, t = k + 1; i-- > 0;) {
        while (k >= t && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0) --k;
        hull[k++] = pts[i];
    }
    hull.resize(k - 1);
    return hull;
}

struct Interval {
    BigInt lo, hi;
    bool empty() const { return lo > hi; }
};

// Integer y with (x fixed) satisfying every half-plane; x must be an integer.
Interval y_range(const std::vector<HalfPlane>& hs, const BigInt& x, const BigInt& ylo, const BigInt& yhi) {
    Interval r{ylo, yhi};
    for (const auto& h : hs) {
        Rational rhs = h.c - h.a * Rational(x);
        if (h.b == 0) {
            bool ok = h.strict ? 0 > rhs : 0 >= rhs;
            if (!ok) return Interval{1, 0};
            continue;
        }
        Rational bound = rhs / h.b;
        if (h.b > 0) {
            BigInt lo = h.strict ? BigInt(floor_of(bound) + 1) : ceil_of(bound);
            if (lo > r.lo) r.lo = lo;
        } else {
            BigInt hi = h.strict ? BigInt(ceil_of(bound) - 1) : floor_of(bound);
            if (hi < r.hi) r.hi = hi;
        }
    }
    return r;
}

bool forms_integral(const std::vector<IntegralForm>& forms, const BigInt& x, const BigInt& y) {
    for (const auto& f : forms)
        if (!is_integer(Rational(f.a * Rational(x) + f.b * Rational(y) + f.c))) return false;
    return true;
}

template <class Visit>
void for_each_lattice_point(const RationalPolygon& p, IntegralityFilter filter, Visit visit) {
    if (!p.bounded) throw std::domain_error("lattice counting on an unbounded polygon");
    if (p.dim < 0) return;
    bool need_forms = filter == IntegralityFilter::AllParameters && !p.eliminated.empty();
    bool forms_constant = true;  // integer linear parts: integrality is point-independent
    for (const auto& f : p.eliminated)
        if (!is_integer(f.a) || !is_integer(f.b)) forms_constant = false;
    if (need_forms && forms_constant) {
        if (!forms_integral(p.eliminated, 0, 0)) return;
        need_forms = false;
    }
    Rational xmin = p.vertices[0][0], xmax = xmin, ymin = p.vertices[0][1], ymax = ymin;
    for (const auto& v : p.vertices) {
        xmin = std::min(xmin, v[0]);
        xmax = std::max(xmax, v[0]);
        ymin = std::min(ymin, v[1]);
        ymax = std::max(ymax, v[1]);
    }
    BigInt ylo = ceil_of(ymin), yhi = floor_of(ymax);
    for (BigInt x = ceil_of(xmin); x <= floor_of(xmax); ++x) {
        Interval r = y_range(p.halfplanes, x, ylo, yhi);
        for (BigInt y = r.lo; y <= r.hi; ++y) {
            if (need_forms && !forms_integral(p.eliminated, x, y)) continue;
            visit(x, y);
        }
    }
}

}  // namespace

RationalPolygon make_polygon(std::vector<HalfPlane> halfplanes, std::vector<IntegralForm> eliminated) {
    RationalPolygon poly;
    poly.halfplanes = std::move(halfplanes);
    poly.eliminated = std::move(eliminated);
    for (const auto& h : poly.halfplanes)
        if (h.a == 0 && h.b == 0) throw std::invalid_argument("degenerate half-plane with zero normal");
    poly.bounded = !unbounded_system(poly.halfplanes);
    if (!poly.bounded) {
        poly.dim = 2;
        return poly;
    }

    std::vector<Point2> candidates;
    const auto& hs = poly.halfplanes;
    for (std::size_t i = 0; i < hs.size(); ++i)
        for (std::size_t j = i + 1; j < hs.size(); ++j) {
            Rational det = hs[i].a * hs[j].b - hs[i].b * hs[j].a;
            if (det == 0) continue;
            Point2 p{(hs[i].c * hs[j].b - hs[i].b * hs[j].c) / det, (hs[i].a * hs[j].c - hs[i].c * hs[j].a) / det};
            if (closure_contains(hs, p)) candidates.push_back(p);
        }
    std::vector<Point2> hull = convex_hull(candidates);

    // Vertices are those of the closure; a lone point must also satisfy any strict constraint.
    if (hull.empty()) {
        poly.dim = -1;
    } else if (hull.size() == 1) {
        poly.dim = std::all_of(hs.begin(), hs.end(), [&](const HalfPlane& h) { return h.contains(hull[0]); }) ? 0 : -1;
    } else if (hull.size() == 2) {
        poly.dim = 1;
    } else {
        poly.dim = 2;
    }
    if (poly.dim >= 0) poly.vertices = hull;
    return poly;
}

RationalPolygon bz_polygon_b2(const Weight& lambda, const Weight& mu, const Weight& nu) {
    if (lambda.basis != Basis::Dynkin || mu.basis != Basis::Dynkin || nu.basis != Basis::Dynkin)
        throw std::invalid_argument("bz_polygon_b2 expects Dynkin labels");
    for (const auto* w : {&lambda, &mu, &nu})
        if (w->coords.size() != 2 || w->coords[0] < 0 || w->coords[1] < 0)
            throw std::domain_error("bz_polygon_b2 expects dominant B2 weights");
    const Rational &l1 = lambda.coords[0], &l2 = lambda.coords[1];
    const Rational &m1 = mu.coords[0], &m2 = mu.coords[1];
    const Rational &n1 = nu.coords[0], &n2 = nu.coords[1];
    // sigma = lambda + mu - nu = a alpha_1 + b alpha_2 (B2 Cartan inverse applied to Dynkin labels).
    Rational d1 = l1 + m1 - n1, d2 = l2 + m2 - n2;
    Rational a = d1 + d2 / 2;
    Rational b = d1 + d2;

    // Variables x = t_0^(0), y = t_1^(1); eliminated t_{-1}^(1) = a - y and t_0^(1) = b - x.
    std::vector<HalfPlane> hs = {
        {1, -2, b - 2 * a},         // 2 t_{-1}^(1) >= t_0^(1)
        {-1, -2, -b},               // t_0^(1) >= 2 t_1^(1)
        {0, 1, 0},                  // t_1^(1) >= 0
        {1, 0, 0},                  // t_0^(0) >= 0
        {0, -1, -l1},               // lambda_1 >= t_1^(1)
        {1, -1, b - a - l1},        // lambda_1 >= t_0^(1) - t_{-1}^(1)
        {1, 1, a - l1},             // lambda_1 >= t_{-1}^(1) - t_0^(0)
        {-1, 0, -l2},               // lambda_2 >= t_0^(0)
        {-1, -1, a - b - m1},       // mu_1 >= t_{-1}^(1) + 2 t_1^(1) - t_0^(1)
        {0, -1, -m1},               // mu_1 >= t_1^(1)
        {1, 0, 2 * b - 2 * a - m2}, // mu_2 >= t_0^(0) + 2 (t_0^(1) - t_{-1}^(1) - t_1^(1))
        {1, 2, b - m2},             // mu_2 >= t_0^(1) - 2 t_1^(1)
    };
    std::vector<IntegralForm> eliminated = {{0, -1, a}, {-1, 0, b}};
    return make_polygon(std::move(hs), std::move(eliminated));
}

std::int64_t lattice_point_count(const RationalPolygon& p, IntegralityFilter filter) {
    std::int64_t n = 0;
    for_each_lattice_point(p, filter, [&](const BigInt&, const BigInt&) { ++n; });
    return n;
}

Rational polygon_area(const RationalPolygon& p) {
    if (p.dim != 2 || !p.bounded) throw std::domain_error("polygon_area requires a bounded two-dimensional polygon");
    Rational twice = 0;
    const std::size_t n = p.vertices.size();
    for (std::size_t i = 0; i < n; ++i) {
        const auto& u = p.vertices[i];
        const auto& v = p.vertices[(i + 1) % n];
        twice += u[0] * v[1] - v[0] * u[1];
    }
    return abs_of(twice) / 2;
}

BoundaryInterior boundary_interior_counts(const RationalPolygon& p, IntegralityFilter filter) {
    BoundaryInterior out;
    if (p.dim < 0) return out;
    for_each_lattice_point(p, filter, [&](const BigInt& x, const BigInt& y) {
        Point2 q{Rational(x), Rational(y)};
        bool on_boundary = false;
        if (p.dim == 2) {
            for (const auto& h : p.halfplanes)
                if (h.on_boundary(q)) {
                    on_boundary = true;
                    break;
                }
        } else if (p.dim == 1) {
            on_boundary = q == p.vertices.front() || q == p.vertices.back();
        }
        if (on_boundary) ++out.boundary;
        else ++out.interior;
    });
    return out;
}

Rational lattice_relative_length(const Point2& from, const Point2& to) {
    Rational dx = to[0] - from[0], dy = to[1] - from[1];
    if (dx == 0 && dy == 0) return 0;
    // Primitive integer vector along (dx, dy).
    BigInt den;
    mpz_lcm(den.get_mpz_t(), dx.get_den_mpz_t(), dy.get_den_mpz_t());
    BigInt ix = BigInt(dx * Rational(den)), iy = BigInt(dy * Rational(den));
    BigInt g;
    mpz_gcd(g.get_mpz_t(), ix.get_mpz_t(), iy.get_mpz_t());
    Rational t = ix != 0 ? Rational(dx / Rational(ix / g)) : Rational(dy / Rational(iy / g));
    return abs_of(t);
}

Rational relative_perimeter(const RationalPolygon& p) {
    if (p.dim < 1) return 0;
    if (p.dim == 1) return lattice_relative_length(p.vertices.front(), p.vertices.back());
    Rational total = 0;
    const std::size_t n = p.vertices.size();
    for (std::size_t i = 0; i < n; ++i) total += lattice_relative_length(p.vertices[i], p.vertices[(i + 1) % n]);
    return total;
}

PickReport pick_relation_check(const RationalPolygon& p) {
    if (p.dim != 2) throw std::domain_error("pick_relation_check requires a two-dimensional polygon");
    PickReport r;
    r.area = polygon_area(p);
    r.perimeter = relative_perimeter(p);
    auto bi = boundary_interior_counts(p);
    r.boundary = bi.boundary;
    r.interior = bi.interior;
    r.count = bi.boundary + bi.interior;
    // 2C - 2V - L = 2(2p - 1)
    Rational lhs = 2 * Rational(r.count) - 2 * r.area - r.perimeter;
    r.p = (lhs / 2 + 1) / 2;
    r.perimeter_matches_boundary = r.perimeter == Rational(r.boundary);
    r.pick_holds = r.area == Rational(r.interior) + Rational(r.boundary) / 2 - 1;
    r.holds = r.perimeter_matches_boundary && (r.p != 1 || r.pick_holds);
    return r;
}

DegeneracyInfo degeneracy_info(const RationalPolygon& p) {
    DegeneracyInfo d;
    switch (p.dim) {
    case -1: d.kind = Degeneracy::Empty; break;
    case 0: d.kind = Degeneracy::Point; break;
    case 1:
        d.kind = Degeneracy::Segment;
        d.relative_length = lattice_relative_length(p.vertices.front(), p.vertices.back());
        break;
    default: d.kind = Degeneracy::Full; break;
    }
    return d;
}

std::string to_string(Degeneracy d) {
    switch (d) {
    case Degeneracy::Empty: return "empty";
    case Degeneracy::Point: return "point";
    case Degeneracy::Segment: return "segment";
    case Degeneracy::Full: return "full";
    }
    return "?";
}

}  // namespace hornvol
