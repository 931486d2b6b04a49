#include "hornvol/volume.hpp"

#include "hornvol/linalg.hpp"
#include "hornvol/multiplicity.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <random>
#include <sstream>
#include <stdexcept>
#include <tuple>

namespace hornvol {

// ---------------------------------------------------------------------------
// Closed form of J

namespace {

using i128 = __int128;

BigInt to_bigint(i128 v) {
    bool neg = v < 0;
    unsigned __int128 u = neg ? static_cast<unsigned __int128>(-(v + 1)) + 1 : static_cast<unsigned __int128>(v);
    BigInt hi(static_cast<unsigned long>(static_cast<std::uint64_t>(u >> 64)));
    BigInt lo(static_cast<unsigned long>(static_cast<std::uint64_t>(u)));
    BigInt r = (hi << 64) + lo;
    return neg ? BigInt(-r) : r;
}

int sgn128(i128 v) { return (v > 0) - (v < 0); }

i128 kernel_int(i128 s1, i128 s2) {
    int s = sgn128(s1 + s2);
    if (s == 0) return 0;
    i128 d = s1 - s2;
    i128 abs1 = s1 < 0 ? -s1 : s1, abs2 = s2 < 0 ? -s2 : s2, absd = d < 0 ? -d : d;
    i128 v = 4 * s1 * abs1 - 4 * s2 * abs2 - 2 * d * absd;
    return s > 0 ? v : -v;
}

Rational kernel_rational(const Rational& s1, const Rational& s2) {
    int s = sgn(Rational(s1 + s2));
    if (s == 0) return 0;
    Rational d = s1 - s2;
    Rational v = 4 * s1 * abs_of(s1) - 4 * s2 * abs_of(s2) - 2 * d * abs_of(d);
    return s > 0 ? v : Rational(-v);
}

// Integer images of a point under the eight B2 Weyl elements.
std::array<std::array<std::int64_t, 2>, 8> weyl_images(std::int64_t x1, std::int64_t x2) {
    std::array<std::array<std::int64_t, 2>, 8> out{};
    const auto& table = b2_weyl_table();
    for (int k = 0; k < 8; ++k) {
        const auto& w = table[k];
        std::int64_t a = w.swap ? x2 : x1, b = w.swap ? x1 : x2;
        out[k] = {a * w.sign1, b * w.sign2};
    }
    return out;
}

// Common denominator scaling; returns false if the scaled integers are too large.
bool scale_to_integers(const std::array<const Point2*, 3>& pts, BigInt& denom, std::array<std::int64_t, 6>& ints) {
    denom = 1;
    for (const auto* p : pts)
        for (const auto& q : *p) mpz_lcm(denom.get_mpz_t(), denom.get_mpz_t(), q.get_den_mpz_t());
    const BigInt limit = BigInt(1) << 40;
    int k = 0;
    for (const auto* p : pts)
        for (const auto& q : *p) {
            BigInt v = q.get_num() * (denom / q.get_den());
            if (abs(v) > limit) return false;
            ints[k++] = v.get_si();
        }
    return true;
}

}  // namespace

Rational j_b2(const Point2& alpha, const Point2& beta, const Point2& gamma) {
    BigInt denom;
    std::array<std::int64_t, 6> v{};
    const auto& table = b2_weyl_table();
    if (scale_to_integers({&alpha, &beta, &gamma}, denom, v)) {
        auto wa = weyl_images(v[0], v[1]);
        auto wb = weyl_images(v[2], v[3]);
        i128 sum = 0;
        for (int i = 0; i < 8; ++i)
            for (int j = 0; j < 8; ++j) {
                i128 s1 = static_cast<i128>(wa[i][0]) + wb[j][0] - v[4];
                i128 s2 = static_cast<i128>(wa[i][1]) + wb[j][1] - v[5];
                i128 f = kernel_int(s1, s2);
                sum += table[i].epsilon() * table[j].epsilon() * f;
            }
        Rational r(to_bigint(sum), BigInt(32 * denom * denom));
        r.canonicalize();
        return r;
    }
    Rational sum = 0;
    for (const auto& w : table)
        for (const auto& w2 : table) {
            auto a = w.apply(alpha);
            auto b = w2.apply(beta);
            sum += w.epsilon() * w2.epsilon() * kernel_rational(a[0] + b[0] - gamma[0], a[1] + b[1] - gamma[1]);
        }
    return sum / 32;
}

Rational j_b2_triple_sum(const Point2& alpha, const Point2& beta, const Point2& gamma) {
    Rational sum = 0;
    const auto& table = b2_weyl_table();
    for (const auto& w : table)
        for (const auto& w2 : table)
            for (const auto& w3 : table) {
                auto a = w.apply(alpha);
                auto b = w2.apply(beta);
                auto g = w3.apply(gamma);
                sum += w.epsilon() * w2.epsilon() * w3.epsilon() * kernel_rational(a[0] + b[0] - g[0], a[1] + b[1] - g[1]);
            }
    return sum / 256;
}

Point2 b2_orthonormal(const Weight& w) {
    if (w.basis == Basis::Orthonormal) return {w.coords.at(0), w.coords.at(1)};
    if (w.basis != Basis::Dynkin || w.coords.size() != 2) throw std::invalid_argument("expected B2 Dynkin labels");
    return {w.coords[0] + w.coords[1] / 2, w.coords[1] / 2};
}

Point2 b2_orthonormal(const IVec& d) {
    if (d.size() != 2) throw std::invalid_argument("expected two Dynkin labels");
    return {Rational(static_cast<long>(d[0])) + make_rational(static_cast<long>(d[1]), 2), make_rational(static_cast<long>(d[1]), 2)};
}

void require_regular_ordered(const Point2& x, const char* what) {
    if (!(x[0] > x[1] && x[1] > 0))
        throw std::domain_error(std::string(what) + " must satisfy x1 > x2 > 0 (got " + to_string(x[0]) + ", " +
                                to_string(x[1]) + ")");
}

// ---------------------------------------------------------------------------
// Horn polygon and candidate lines

RationalPolygon horn_polygon_b2(const Point2& alpha, const Point2& beta) {
    require_regular_ordered(alpha, "alpha");
    require_regular_ordered(beta, "beta");
    const Rational &a1 = alpha[0], &a2 = alpha[1], &b1 = beta[0], &b2 = beta[1];
    auto mx = [](std::initializer_list<Rational> l) { return std::max(l); };
    auto mn = [](std::initializer_list<Rational> l) { return std::min(l); };
    Rational d11 = abs_of(a1 - b1), d22 = abs_of(a2 - b2);
    std::vector<HalfPlane> hs = {
        {1, 0, mx({d11, d22})},
        {-1, 0, -(a1 + b1)},
        {0, 1, mx({Rational(0), Rational(a2 - b1), Rational(b2 - a1)})},
        {0, -1, -mn({Rational(a1 + b2), Rational(a2 + b1)})},
        {1, 1, d11 + d22},
        {-1, -1, -(a1 + a2 + b1 + b2)},
        {1, -1, mx({Rational(0), Rational(a1 - a2 - b1 - b2), Rational(b1 - b2 - a1 - a2)})},
        {-1, 1, -(a1 + b1 - d22)},
        {0, 1, 0},
        {1, -1, 0},
    };
    return make_polygon(std::move(hs));
}

bool horn_contains_b2(const Point2& alpha, const Point2& beta, const Point2& gamma) {
    RationalPolygon p = horn_polygon_b2(alpha, beta);
    if (p.dim < 0) return false;
    for (const auto& h : p.halfplanes)
        if (!h.contains(gamma)) return false;
    return true;
}

Rational SingularLine::a() const { return kind == LineKind::Gamma2 ? 0 : 1; }
Rational SingularLine::b() const {
    switch (kind) {
    case LineKind::Gamma1: return 0;
    case LineKind::Gamma2: return 1;
    case LineKind::Sum: return 1;
    case LineKind::Diff: return -1;
    }
    return 0;
}

std::string SingularLine::describe() const {
    static const char* names[] = {"g1", "g2", "g1+g2", "g1-g2"};
    return std::string(names[static_cast<int>(kind)]) + " = " + to_string(level);
}

std::vector<SingularLine> singular_lines_b2(const Point2& alpha, const Point2& beta, bool only_meeting) {
    require_regular_ordered(alpha, "alpha");
    require_regular_ordered(beta, "beta");
    const Rational &a1 = alpha[0], &a2 = alpha[1], &b1 = beta[0], &b2 = beta[1];
    auto ab = [](const Rational& x) { return abs_of(x); };
    std::vector<std::pair<LineKind, std::vector<Rational>>> raw = {
        {LineKind::Gamma1, {a1 + b2, a2 + b1, a2 + b2, ab(a1 - b2), ab(a2 - b1)}},
        {LineKind::Gamma2, {a2 + b2, ab(a1 - b2), ab(a2 - b1), ab(a2 - b2), ab(a1 - b1)}},
        {LineKind::Sum, {a1 + a2 + b1 - b2, ab(a1 + a2 - b1 + b2), a1 - a2 + b1 + b2, ab(-a1 + a2 + b1 + b2),
                         a1 - a2 + b1 - b2}},
        {LineKind::Diff, {ab(-a1 + a2 + b1 + b2), ab(a1 + a2 - b1 + b2), a1 - a2 + b1 - b2, ab(a1 - a2 - b1 + b2),
                          ab(a1 + a2 - b1 - b2)}},
    };
    RationalPolygon poly = horn_polygon_b2(alpha, beta);
    std::vector<SingularLine> out;
    for (auto& [kind, levels] : raw) {
        std::map<Rational, int> merged;
        for (const auto& l : levels) merged[l] += 1;
        for (const auto& [level, count] : merged) {
            SingularLine line{kind, level, count, false};
            if (poly.dim == 2) {
                bool pos = false, neg = false;
                for (const auto& v : poly.vertices) {
                    Rational s = line.a() * v[0] + line.b() * v[1] - level;
                    if (s > 0) pos = true;
                    if (s < 0) neg = true;
                }
                line.meets_polygon = pos && neg;
            }
            if (!only_meeting || line.meets_polygon) out.push_back(line);
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Quadratics

Rational Quadratic2::operator()(const Point2& p) const {
    const Rational &x = p[0], &y = p[1];
    return c[0] + c[1] * x + c[2] * y + c[3] * x * x + c[4] * x * y + c[5] * y * y;
}

Point2 Quadratic2::gradient(const Point2& p) const {
    return {c[1] + 2 * c[3] * p[0] + c[4] * p[1], c[2] + c[4] * p[0] + 2 * c[5] * p[1]};
}

bool Quadratic2::is_zero() const {
    return std::all_of(c.begin(), c.end(), [](const Rational& v) { return v == 0; });
}

Quadratic2 Quadratic2::operator-(const Quadratic2& o) const {
    Quadratic2 r;
    for (int i = 0; i < 6; ++i) r.c[i] = c[i] - o.c[i];
    return r;
}

Quadratic2 Quadratic2::operator+(const Quadratic2& o) const {
    Quadratic2 r;
    for (int i = 0; i < 6; ++i) r.c[i] = c[i] + o.c[i];
    return r;
}

std::string Quadratic2::to_string() const {
    static const char* mono[] = {"", "g1", "g2", "g1^2", "g1*g2", "g2^2"};
    std::ostringstream os;
    bool first = true;
    for (int i = 5; i >= 0; --i) {
        if (c[i] == 0) continue;
        Rational mag = abs_of(c[i]);
        os << (first ? (c[i] < 0 ? "-" : "") : (c[i] < 0 ? " - " : " + "));
        first = false;
        if (i == 0) os << hornvol::to_string(mag);
        else if (mag == 1) os << mono[i];
        else os << hornvol::to_string(mag) << "*" << mono[i];
    }
    return first ? "0" : os.str();
}

Quadratic2 half_delta_squared(const Rational& a, const Rational& b, const Rational& c, const Rational& k) {
    Rational s = k / (2 * (a * a + b * b));
    Quadratic2 q;
    q.c = {s * c * c, -2 * s * a * c, -2 * s * b * c, s * a * a, 2 * s * a * b, s * b * b};
    return q;
}

std::string to_string(WallKind k) {
    switch (k) {
    case WallKind::Inactive: return "inactive";
    case WallKind::QuadraticRamp: return "quadratic-ramp";
    case WallKind::BoundaryLinear: return "boundary-linear";
    case WallKind::Anomalous: return "anomalous";
    }
    return "?";
}

// ---------------------------------------------------------------------------
// Cell decomposition

namespace {

using Poly = std::vector<Point2>;

// Keeps the part of a convex polygon with a*x + b*y >= c (sign = +1) or <= c (sign = -1).
Poly clip(const Poly& poly, const Rational& a, const Rational& b, const Rational& c, int sign) {
    Poly out;
    const std::size_t n = poly.size();
    for (std::size_t i = 0; i < n; ++i) {
        const Point2& p = poly[i];
        const Point2& q = poly[(i + 1) % n];
        Rational fp = sign * (a * p[0] + b * p[1] - c);
        Rational fq = sign * (a * q[0] + b * q[1] - c);
        if (fp >= 0) out.push_back(p);
        if ((fp > 0 && fq < 0) || (fp < 0 && fq > 0)) {
            Rational t = fp / (fp - fq);
            out.push_back({p[0] + t * (q[0] - p[0]), p[1] + t * (q[1] - p[1])});
        }
    }
    Poly dedup;
    for (const auto& p : out)
        if (dedup.empty() || dedup.back() != p) dedup.push_back(p);
    while (dedup.size() > 1 && dedup.front() == dedup.back()) dedup.pop_back();
    return dedup;
}

Rational signed_area(const Poly& p) {
    Rational twice = 0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        const auto& u = p[i];
        const auto& v = p[(i + 1) % p.size()];
        twice += u[0] * v[1] - v[0] * u[1];
    }
    return twice / 2;
}

// Removes vertices lying on the segment between their neighbours.
Poly drop_collinear(const Poly& p) {
    Poly out;
    const std::size_t n = p.size();
    for (std::size_t i = 0; i < n; ++i) {
        const auto& prev = p[(i + n - 1) % n];
        const auto& cur = p[i];
        const auto& next = p[(i + 1) % n];
        Rational cr = (cur[0] - prev[0]) * (next[1] - prev[1]) - (cur[1] - prev[1]) * (next[0] - prev[0]);
        if (cr != 0) out.push_back(cur);
    }
    return out;
}

std::array<Rational, 6> monomials(const Point2& p) {
    return {Rational(1), p[0], p[1], Rational(p[0] * p[0]), Rational(p[0] * p[1]), Rational(p[1] * p[1])};
}

Point2 centroid_of_vertices(const Poly& p) {
    Point2 c{0, 0};
    for (const auto& v : p) {
        c[0] += v[0];
        c[1] += v[1];
    }
    c[0] /= static_cast<long>(p.size());
    c[1] /= static_cast<long>(p.size());
    return c;
}

struct LineKey {
    Rational a, b, c;
    bool operator<(const LineKey& o) const { return std::tie(a, b, c) < std::tie(o.a, o.b, o.c); }
    bool operator==(const LineKey& o) const { return a == o.a && b == o.b && c == o.c; }
};

// Primitive integer normal with a > 0, or a == 0 and b > 0.
LineKey key_through(const Point2& p, const Point2& q) {
    Rational nx = q[1] - p[1], ny = -(q[0] - p[0]);
    BigInt den;
    mpz_lcm(den.get_mpz_t(), nx.get_den_mpz_t(), ny.get_den_mpz_t());
    BigInt ix = BigInt(nx * Rational(den)), iy = BigInt(ny * Rational(den));
    BigInt g;
    mpz_gcd(g.get_mpz_t(), ix.get_mpz_t(), iy.get_mpz_t());
    ix /= g;
    iy /= g;
    if (ix < 0 || (ix == 0 && iy < 0)) {
        ix = -ix;
        iy = -iy;
    }
    LineKey k{Rational(ix), Rational(iy), 0};
    k.c = k.a * p[0] + k.b * p[1];
    return k;
}

Point2 point_on_line(const LineKey& k, const Rational& t) {
    Rational n2 = k.a * k.a + k.b * k.b;
    return {(k.a * k.c - k.b * t) / n2, (k.b * k.c + k.a * t) / n2};
}

Rational line_param(const LineKey& k, const Point2& p) { return -k.b * p[0] + k.a * p[1]; }

LineKey key_of(const SingularLine& l) { return LineKey{l.a(), l.b(), l.level}; }

Quadratic2 fit_cell(const Poly& cell, const Point2& alpha, const Point2& beta, std::mt19937_64& rng,
                    std::size_t& evaluations, std::size_t& random_checks) {
    const Point2 c = centroid_of_vertices(cell);
    std::vector<Point2> pts{c};
    Poly targets = cell;
    for (std::size_t i = 0; i < cell.size(); ++i) {
        const auto& u = cell[i];
        const auto& v = cell[(i + 1) % cell.size()];
        targets.push_back({(u[0] + v[0]) / 2, (u[1] + v[1]) / 2});
    }
    for (const auto& v : targets)
        for (long t : {1, 2, 3}) {
            Rational s = make_rational(t, 4);
            pts.push_back({c[0] + s * (v[0] - c[0]), c[1] + s * (v[1] - c[1])});
        }
    std::vector<Rational> values;
    for (const auto& p : pts) values.push_back(j_b2(alpha, beta, p));
    evaluations += pts.size();

    RMat normal(6, RVec(6, 0));
    RVec rhs(6, 0);
    for (std::size_t k = 0; k < pts.size(); ++k) {
        auto m = monomials(pts[k]);
        for (int i = 0; i < 6; ++i) {
            rhs[i] += m[i] * values[k];
            for (int j = 0; j < 6; ++j) normal[i][j] += m[i] * m[j];
        }
    }
    auto sol = solve_exact(normal, rhs);
    if (!sol) throw std::logic_error("quadratic fit points are not unisolvent");
    Quadratic2 q;
    for (int i = 0; i < 6; ++i) q.c[i] = (*sol)[i];
    for (std::size_t k = 0; k < pts.size(); ++k)
        if (q(pts[k]) != values[k])
            throw std::runtime_error("J is not a single quadratic on a cell: a singular line is missing");

    // Random interior points with small-denominator barycentric weights.
    std::uniform_int_distribution<int> weight(1, 9);
    for (int trial = 0; trial < 3; ++trial) {
        Point2 p{0, 0};
        long total = 0;
        for (const auto& v : cell) {
            int w = weight(rng);
            total += w;
            p[0] += w * v[0];
            p[1] += w * v[1];
        }
        p[0] /= total;
        p[1] /= total;
        if (q(p) != j_b2(alpha, beta, p))
            throw std::runtime_error("J disagrees with the fitted quadratic at a random interior point");
        ++random_checks;
    }
    return q;
}

bool is_chamber_key(const LineKey& k) {
    return (k.a == 0 && k.b == 1 && k.c == 0) || (k.a == 1 && k.b == -1 && k.c == 0);
}

}  // namespace

int PiecewiseQuadratic::locate(const Point2& p) const {
    for (std::size_t i = 0; i < cells.size(); ++i) {
        const auto& v = cells[i].vertices;
        bool inside = true;
        for (std::size_t k = 0; k < v.size() && inside; ++k) {
            const auto& a = v[k];
            const auto& b = v[(k + 1) % v.size()];
            Rational cr = (b[0] - a[0]) * (p[1] - a[1]) - (b[1] - a[1]) * (p[0] - a[0]);
            if (cr < 0) inside = false;
        }
        if (inside) return static_cast<int>(i);
    }
    return -1;
}

Rational PiecewiseQuadratic::evaluate(const Point2& p) const {
    int i = locate(p);
    return i < 0 ? Rational(0) : cells[i].q(p);
}

bool PiecewiseQuadratic::all_walls_classified() const {
    return std::none_of(walls.begin(), walls.end(), [](const Wall& w) { return w.kind == WallKind::Anomalous; });
}

bool PiecewiseQuadratic::all_loops_consistent() const {
    return std::all_of(loops.begin(), loops.end(), [](const VertexLoop& l) { return l.consistent; });
}

PiecewiseQuadratic piecewise_analyze_b2(const Point2& alpha_in, const Point2& beta_in, std::uint64_t seed) {
    require_regular_ordered(alpha_in, "alpha");
    require_regular_ordered(beta_in, "beta");
    PiecewiseQuadratic pq;
    pq.alpha = alpha_in;
    pq.beta = beta_in;
    // Normalize so that |beta1 - alpha2| >= |alpha1 - beta2|; J is symmetric in alpha, beta.
    if (abs_of(pq.beta[0] - pq.alpha[1]) < abs_of(pq.alpha[0] - pq.beta[1])) {
        std::swap(pq.alpha, pq.beta);
        pq.swapped = true;
    }
    const Point2 &alpha = pq.alpha, &beta = pq.beta;
    pq.polygon = horn_polygon_b2(alpha, beta);
    pq.lines = singular_lines_b2(alpha, beta, false);
    if (pq.polygon.dim != 2) return pq;

    std::vector<Poly> cells{pq.polygon.vertices};
    for (const auto& line : pq.lines) {
        if (!line.meets_polygon) continue;
        std::vector<Poly> next;
        for (const auto& cell : cells)
            for (int side : {1, -1}) {
                Poly part = drop_collinear(clip(cell, line.a(), line.b(), line.level, side));
                if (part.size() >= 3 && signed_area(part) != 0) next.push_back(part);
            }
        cells = std::move(next);
    }

    std::mt19937_64 rng(seed);
    for (const auto& cell : cells) {
        PiecewiseCell pc;
        pc.vertices = cell;
        pc.q = fit_cell(cell, alpha, beta, rng, pq.fit_evaluations, pq.random_checks);
        pq.cells.push_back(std::move(pc));
    }

    // Walls: cell edges grouped by supporting line.
    struct EdgeRef {
        int cell;
        int side;
        Rational lo, hi;
    };
    std::map<LineKey, std::vector<EdgeRef>> by_line;
    for (std::size_t i = 0; i < pq.cells.size(); ++i) {
        const auto& v = pq.cells[i].vertices;
        for (std::size_t k = 0; k < v.size(); ++k) {
            const auto& p = v[k];
            const auto& q = v[(k + 1) % v.size()];
            LineKey key = key_through(p, q);
            Rational inward_dot = key.a * (-(q[1] - p[1])) + key.b * (q[0] - p[0]);
            int side = inward_dot > 0 ? 1 : -1;
            Rational t0 = line_param(key, p), t1 = line_param(key, q);
            by_line[key].push_back({static_cast<int>(i), side, std::min(t0, t1), std::max(t0, t1)});
        }
    }
    std::map<LineKey, int> candidate_mult;
    for (const auto& l : pq.lines) candidate_mult[key_of(l)] += l.multiplicity;

    auto classify = [&](Wall& w, const LineKey& key) {
        w.chamber_wall = is_chamber_key(key);
        auto it = candidate_mult.find(key);
        w.on_candidate_line = it != candidate_mult.end();
        w.candidate_multiplicity = w.on_candidate_line ? it->second : 0;
        Quadratic2 qp = w.cell_plus >= 0 ? pq.cells[w.cell_plus].q : Quadratic2{};
        Quadratic2 qm = w.cell_minus >= 0 ? pq.cells[w.cell_minus].q : Quadratic2{};
        if (w.chamber_wall && (w.cell_plus < 0 || w.cell_minus < 0)) {
            const Quadratic2& inside = w.cell_plus >= 0 ? qp : qm;
            Point2 mid{(w.from[0] + w.to[0]) / 2, (w.from[1] + w.to[1]) / 2};
            bool vanishes = inside(w.from) == 0 && inside(w.to) == 0 && inside(mid) == 0;
            w.kind = vanishes ? WallKind::BoundaryLinear : WallKind::Anomalous;
            Point2 g = inside.gradient(mid);
            w.vanishes_linearly = vanishes && (key.a * g[0] + key.b * g[1]) != 0;
            return;
        }
        Quadratic2 d = qp - qm;
        if (d.is_zero()) {
            w.kind = WallKind::Inactive;
            w.k = 0;
            return;
        }
        Quadratic2 base = half_delta_squared(key.a, key.b, key.c);
        Rational k = 0;
        for (int i = 0; i < 6; ++i)
            if (base.c[i] != 0) {
                k = d.c[i] / base.c[i];
                break;
            }
        Quadratic2 model = half_delta_squared(key.a, key.b, key.c, k);
        bool matches = (d - model).is_zero() && is_integer(k) && k != 0;
        w.k = k;
        w.kind = matches ? WallKind::QuadraticRamp : WallKind::Anomalous;
    };

    for (const auto& [key, edges] : by_line) {
        for (const auto& e : edges) {
            bool partnered = false;
            for (const auto& f : edges) {
                if (f.side == e.side) continue;
                Rational lo = std::max(e.lo, f.lo), hi = std::min(e.hi, f.hi);
                if (hi <= lo) continue;
                partnered = true;
                if (e.side < 0) continue;  // each interior pair recorded once, from its plus edge
                Wall w;
                w.cell_plus = e.cell;
                w.cell_minus = f.cell;
                w.a = key.a;
                w.b = key.b;
                w.c = key.c;
                w.from = point_on_line(key, lo);
                w.to = point_on_line(key, hi);
                classify(w, key);
                pq.walls.push_back(w);
            }
            if (!partnered) {
                Wall w;
                w.cell_plus = e.side > 0 ? e.cell : -1;
                w.cell_minus = e.side > 0 ? -1 : e.cell;
                w.a = key.a;
                w.b = key.b;
                w.c = key.c;
                w.from = point_on_line(key, e.lo);
                w.to = point_on_line(key, e.hi);
                classify(w, key);
                pq.walls.push_back(w);
            }
        }
    }

    // Going once around each vertex, the modelled jumps must cancel.
    std::vector<Point2> vertices;
    for (const auto& c : pq.cells)
        for (const auto& v : c.vertices) vertices.push_back(v);
    std::sort(vertices.begin(), vertices.end());
    vertices.erase(std::unique(vertices.begin(), vertices.end()), vertices.end());
    for (const auto& v : vertices) {
        VertexLoop loop;
        loop.vertex = v;
        Quadratic2 total;
        bool modelled = true;
        for (const auto& w : pq.walls) {
            const Point2* other = nullptr;
            if (w.from == v) other = &w.to;
            else if (w.to == v) other = &w.from;
            if (!other) continue;
            ++loop.walls;
            if (w.kind == WallKind::BoundaryLinear || w.kind == WallKind::Anomalous) {
                modelled = false;
                continue;
            }
            Rational ux = (*other)[0] - v[0], uy = (*other)[1] - v[1];
            int sign = (w.a * (-uy) + w.b * ux) > 0 ? 1 : -1;
            total = total + half_delta_squared(w.a, w.b, w.c, w.k * sign);
        }
        if (!modelled || loop.walls < 3) continue;
        loop.consistent = total.is_zero();
        pq.loops.push_back(loop);
    }

    // The four vertices where four candidate lines can meet.
    const Rational &a1 = alpha[0], &a2 = alpha[1], &b1 = beta[0], &b2 = beta[1];
    std::vector<std::pair<char, Point2>> named = {
        {'I', {a1 + b2, abs_of(a2 - b1)}},
        {'J', {a2 + b1, abs_of(a1 - b2)}},
        {'K', {abs_of(b1 - a2), abs_of(a1 - b2)}},
        {'L', {a2 + b2, abs_of(a1 - b1)}},
    };
    for (const auto& [label, p] : named) {
        FourProngVertex f{label, p, 0, false};
        for (const auto& l : pq.lines)
            if (l.a() * p[0] + l.b() * p[1] == l.level) ++f.lines_through;
        f.inside_polygon = std::all_of(pq.polygon.halfplanes.begin(), pq.polygon.halfplanes.end(),
                                       [&](const HalfPlane& h) { return h.contains(p); });
        pq.four_prong.push_back(f);
    }
    return pq;
}

// ---------------------------------------------------------------------------
// Smoothness checks

C1Report c1_check_b2(const PiecewiseQuadratic& pq, const Rational& h, const Rational& tolerance_factor) {
    C1Report rep;
    rep.step = h;
    Rational worst = 0;  // squared
    auto grad = [&](const Point2& p) {
        Point2 ex1{p[0] + h, p[1]}, ex0{p[0] - h, p[1]}, ey1{p[0], p[1] + h}, ey0{p[0], p[1] - h};
        return Point2{(j_b2(pq.alpha, pq.beta, ex1) - j_b2(pq.alpha, pq.beta, ex0)) / (2 * h),
                      (j_b2(pq.alpha, pq.beta, ey1) - j_b2(pq.alpha, pq.beta, ey0)) / (2 * h)};
    };
    for (const auto& w : pq.walls) {
        Point2 mid{(w.from[0] + w.to[0]) / 2, (w.from[1] + w.to[1]) / 2};
        Rational scale = std::max(abs_of(w.a), abs_of(w.b));
        Point2 off{h * w.a / scale, h * w.b / scale};
        Point2 plus{mid[0] + off[0], mid[1] + off[1]};
        Point2 minus{mid[0] - off[0], mid[1] - off[1]};
        Point2 gp = grad(plus), gm = grad(minus);
        Rational dx = gp[0] - gm[0], dy = gp[1] - gm[1];
        Rational d2 = dx * dx + dy * dy;
        if (d2 > worst) worst = d2;
        ++rep.walls_checked;
    }
    rep.max_discrepancy_d = std::sqrt(worst.get_d());
    rep.max_discrepancy = Rational(std::ceil(rep.max_discrepancy_d * 1e12)) / Rational(1000000000000L);
    Rational tol = tolerance_factor * h;
    rep.ok = worst <= tol * tol;
    return rep;
}

TransectReport transect_scan_b2(const Point2& alpha, const Point2& beta, std::size_t transects, std::size_t steps,
                                std::uint64_t seed) {
    TransectReport rep;
    RationalPolygon poly = horn_polygon_b2(alpha, beta);
    if (poly.dim != 2 || steps < 4) return rep;
    std::vector<LineKey> known;
    for (const auto& l : singular_lines_b2(alpha, beta, false)) known.push_back(key_of(l));
    for (const auto& h : poly.halfplanes) known.push_back(LineKey{h.a, h.b, h.c});

    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> weight(0, 20);
    auto random_point = [&]() {
        Point2 p{0, 0};
        long total = 0;
        for (const auto& v : poly.vertices) {
            int w = weight(rng);
            total += w;
            p[0] += w * v[0];
            p[1] += w * v[1];
        }
        if (total == 0) return poly.vertices[0];
        p[0] /= total;
        p[1] /= total;
        return p;
    };
    // Chords are extended slightly past the polygon so the outer facets are crossed too.
    for (std::size_t t = 0; t < transects; ++t) {
        Point2 p = random_point(), q = random_point();
        if (p == q) continue;
        Point2 d{q[0] - p[0], q[1] - p[1]};
        Point2 start{p[0] - d[0], p[1] - d[1]};
        Point2 end{q[0] + d[0], q[1] + d[1]};
        std::vector<Point2> pts;
        std::vector<Rational> vals;
        for (std::size_t i = 0; i <= steps; ++i) {
            Rational s = make_rational(static_cast<long>(i), static_cast<long>(steps));
            Point2 g{start[0] + s * (end[0] - start[0]), start[1] + s * (end[1] - start[1])};
            pts.push_back(g);
            vals.push_back(j_b2(alpha, beta, g));
        }
        rep.samples += pts.size();
        ++rep.transects;
        for (std::size_t i = 0; i + 3 <= steps; ++i) {
            Rational third = vals[i + 3] - 3 * vals[i + 2] + 3 * vals[i + 1] - vals[i];
            if (third == 0) continue;
            ++rep.breaks;
            bool explained = false;
            for (const auto& k : known) {
                Rational f0 = k.a * pts[i][0] + k.b * pts[i][1] - k.c;
                Rational f3 = k.a * pts[i + 3][0] + k.b * pts[i + 3][1] - k.c;
                if (sgn(f0) * sgn(f3) <= 0) {
                    explained = true;
                    break;
                }
            }
            // Chamber walls are reached where a reflected image of gamma enters the picture.
            if (!explained) {
                for (const auto& g : {pts[i], pts[i + 3]})
                    if (g[1] <= 0 || g[0] <= g[1]) explained = true;
            }
            if (!explained) ++rep.unexplained;
        }
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Density and its exact integral

Rational delta_b2(const Point2& x) { return x[0] * x[1] * (x[0] * x[0] - x[1] * x[1]); }

Rational pdf_b2(const Point2& alpha, const Point2& beta, const Point2& gamma) {
    Rational j = j_b2(alpha, beta, gamma);
    if (j == 0) return 0;
    return make_rational(3, 2) * abs_of(delta_b2(gamma)) / (abs_of(delta_b2(alpha)) * abs_of(delta_b2(beta))) * j;
}

namespace {

// Dense bivariate polynomial, coefficient [i][j] of u^i w^j.
struct Poly2 {
    std::vector<RVec> c;
    explicit Poly2(int deg = 0) : c(deg + 1, RVec(deg + 1, 0)) {}
    int deg() const { return static_cast<int>(c.size()) - 1; }
};

Poly2 mul(const Poly2& a, const Poly2& b) {
    Poly2 r(a.deg() + b.deg());
    for (int i = 0; i <= a.deg(); ++i)
        for (int j = 0; j <= a.deg() - i; ++j) {
            if (a.c[i][j] == 0) continue;
            for (int k = 0; k <= b.deg(); ++k)
                for (int l = 0; l <= b.deg() - k; ++l)
                    if (b.c[k][l] != 0) r.c[i + k][j + l] += a.c[i][j] * b.c[k][l];
        }
    return r;
}

void add_scaled(Poly2& acc, const Poly2& p, const Rational& s) {
    for (int i = 0; i <= p.deg(); ++i)
        for (int j = 0; j <= p.deg() - i; ++j)
            if (p.c[i][j] != 0) acc.c[i][j] += s * p.c[i][j];
}

Poly2 affine(const Rational& c0, const Rational& cu, const Rational& cw) {
    Poly2 p(1);
    p.c[0][0] = c0;
    p.c[1][0] = cu;
    p.c[0][1] = cw;
    return p;
}

Rational factorial(int n) {
    BigInt f;
    mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(n));
    return Rational(f);
}

// Integral over the triangle (v0, v1, v2) of g1 g2 (g1^2 - g2^2) q(g).
Rational integrate_delta_times_quadratic(const Point2& v0, const Point2& v1, const Point2& v2, const Quadratic2& q) {
    Poly2 x = affine(v0[0], v1[0] - v0[0], v2[0] - v0[0]);
    Poly2 y = affine(v0[1], v1[1] - v0[1], v2[1] - v0[1]);
    Poly2 xx = mul(x, x), yy = mul(y, y), xy = mul(x, y);
    Poly2 diff(2);
    add_scaled(diff, xx, 1);
    add_scaled(diff, yy, -1);
    Poly2 delta = mul(xy, diff);
    Poly2 quad(2);
    quad.c[0][0] = q.c[0];
    add_scaled(quad, x, q.c[1]);
    add_scaled(quad, y, q.c[2]);
    add_scaled(quad, xx, q.c[3]);
    add_scaled(quad, xy, q.c[4]);
    add_scaled(quad, yy, q.c[5]);
    Poly2 f = mul(delta, quad);
    Rational jac = abs_of((v1[0] - v0[0]) * (v2[1] - v0[1]) - (v1[1] - v0[1]) * (v2[0] - v0[0]));
    Rational total = 0;
    for (int i = 0; i <= f.deg(); ++i)
        for (int j = 0; j <= f.deg() - i; ++j)
            if (f.c[i][j] != 0) total += f.c[i][j] * factorial(i) * factorial(j) / factorial(i + j + 2);
    return total * jac;
}

Rational integrate_over(const Poly& poly, const Quadratic2& q) {
    Rational total = 0;
    for (std::size_t i = 1; i + 1 < poly.size(); ++i) total += integrate_delta_times_quadratic(poly[0], poly[i], poly[i + 1], q);
    return total;
}

}  // namespace

Rational pdf_normalization_b2(const PiecewiseQuadratic& pq) {
    Rational total = 0;
    for (const auto& cell : pq.cells) total += integrate_over(cell.vertices, cell.q);
    return make_rational(3, 2) * total / (abs_of(delta_b2(pq.alpha)) * abs_of(delta_b2(pq.beta)));
}

Rational pdf_mass_in_box(const PiecewiseQuadratic& pq, const Rational& x0, const Rational& x1, const Rational& y0,
                         const Rational& y1) {
    Rational total = 0;
    for (const auto& cell : pq.cells) {
        Rational cx0 = cell.vertices[0][0], cx1 = cx0, cy0 = cell.vertices[0][1], cy1 = cy0;
        for (const auto& v : cell.vertices) {
            cx0 = std::min(cx0, v[0]);
            cx1 = std::max(cx1, v[0]);
            cy0 = std::min(cy0, v[1]);
            cy1 = std::max(cy1, v[1]);
        }
        if (cx1 <= x0 || cx0 >= x1 || cy1 <= y0 || cy0 >= y1) continue;
        Poly part = clip(cell.vertices, 1, 0, x0, 1);
        if (part.size() >= 3) part = clip(part, 1, 0, x1, -1);
        if (part.size() >= 3) part = clip(part, 0, 1, y0, 1);
        if (part.size() >= 3) part = clip(part, 0, 1, y1, -1);
        if (part.size() < 3) continue;
        total += integrate_over(part, cell.q);
    }
    return make_rational(3, 2) * total / (abs_of(delta_b2(pq.alpha)) * abs_of(delta_b2(pq.beta)));
}

// ---------------------------------------------------------------------------
// J-LR relations

KappaData kappa_data(const RootSystem& rs, bool hat) {
    KappaData d;
    if (rs.family == Family::B && rs.rank == 2) {
        if (hat) {
            d.weights = {{0, 1}};
            d.coefficients = {make_rational(1, 4)};
        } else {
            d.weights = {{0, 0}, {1, 0}};
            d.coefficients = {make_rational(3, 8), make_rational(1, 8)};
        }
        return d;
    }
    if (rs.family == Family::B && rs.rank == 3) {
        if (hat) {
            d.weights = {{0, 0, 1}, {1, 0, 1}, {0, 1, 1}};
            for (long v : {190, 26, 1}) d.coefficients.push_back(make_rational(v, 2880));
        } else {
            d.weights = {{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {2, 0, 0}, {0, 0, 2}, {1, 1, 0}, {1, 0, 2}};
            for (long v : {7230, 3995, 1651, 85, 479, 29, 1}) d.coefficients.push_back(make_rational(v, 92160));
        }
        return d;
    }
    throw std::domain_error("no coefficient list is available for " + rs.name());
}

std::vector<IVec> kappa_weights(const RootSystem& rs, bool hat) {
    RVec rho_simple = multiply(rs.dynkin_to_simple, rs.weyl_vector.coords);
    bool rho_in_q = std::all_of(rho_simple.begin(), rho_simple.end(), [](const Rational& q) { return is_integer(q); });
    Weight xi;
    xi.basis = Basis::SimpleRoot;
    for (const auto& r : rho_simple) {
        if (rho_in_q || hat) xi.coords.emplace_back(1);
        else xi.coords.push_back(is_integer(r) ? Rational(1) : make_rational(1, 2));
    }
    Weight top = to_basis(rs, xi, Basis::Dynkin);
    IVec labels;
    for (int i = 0; i < rs.rank; ++i) {
        Rational v = 1 - top.coords[i];
        if (!is_integer(v) || v < 0) throw std::logic_error("rho - xi is not dominant integral");
        labels.push_back(to_int64(v));
    }
    auto table = freudenthal_weights(rs, labels);
    std::vector<IVec> out;
    for (const auto& [w, m] : table->dominant) out.push_back(w);
    return out;
}

namespace {

const RootSystem& b2_system() {
    static const RootSystem rs = build_root_system(Family::B, 2);
    return rs;
}

}  // namespace

Rational j_lr_shifted(const IVec& lambda, const IVec& mu, const IVec& nu) {
    const RootSystem& rs = b2_system();
    if (!integral_simple_difference(rs, lambda, mu, nu)) throw std::domain_error("triple is not compatible");
    KappaData k = kappa_data(rs, false);
    Rational total = 0;
    for (std::size_t i = 0; i < k.weights.size(); ++i)
        total += k.coefficients[i] * Rational(static_cast<long>(lr_triple(rs, lambda, mu, k.weights[i], nu)));
    return total;
}

Rational j_lr_unshifted(const IVec& lambda, const IVec& mu, const IVec& nu) {
    const RootSystem& rs = b2_system();
    if (!integral_simple_difference(rs, lambda, mu, nu)) throw std::domain_error("triple is not compatible");
    IVec l = lambda, m = mu, n = nu;
    for (auto* v : {&l, &m, &n})
        for (auto& x : *v) {
            x -= 1;
            if (x < 0) throw std::domain_error("weights must dominate rho");
        }
    KappaData k = kappa_data(rs, true);
    Rational total = 0;
    for (std::size_t i = 0; i < k.weights.size(); ++i)
        total += k.coefficients[i] * Rational(static_cast<long>(lr_triple(rs, l, m, k.weights[i], n)));
    return total;
}

KissingerResult c_kappa_via_kissinger(const RootSystem& rs, const IVec& kappa, int period, int degree, long smax) {
    IVec rho(rs.rank, 1), shifted = kappa;
    for (auto& v : shifted) v += 1;
    KissingerResult r;
    r.fit = fit_stretching(rs, rho, rho, shifted, period, smax, degree);
    r.coefficient = leading_coefficient(r.fit.poly);
    return r;
}

// ---------------------------------------------------------------------------
// SO(2)

double so2_density(double a, double b, double g) {
    double lo = std::fabs(a - b), hi = a + b;
    if (g < lo || g > hi) return 0;
    if (g == lo || g == hi) return std::numeric_limits<double>::infinity();
    return 2 * g / (std::numbers::pi * std::sqrt((hi * hi - g * g) * (g * g - lo * lo)));
}

double j_so2_symmetric(double a, double b, double g) {
    if (a <= 0 || b <= 0) throw std::domain_error("j_so2_symmetric requires positive arguments");
    double lo = std::fabs(a - b), hi = a + b;
    if (g < lo || g > hi) return 0;
    if (g == lo || g == hi) return std::numeric_limits<double>::infinity();
    const double pi = std::numbers::pi;
    return 2 / (pi * pi) * std::sqrt(a * b * g / ((hi * hi - g * g) * (g * g - lo * lo)));
}

double so2_cdf(double a, double b, double g) {
    double lo = std::fabs(a - b), hi = a + b;
    if (g <= lo) return 0;
    if (g >= hi) return 1;
    double c = (g * g - a * a - b * b) / (2 * a * b);
    c = std::clamp(c, -1.0, 1.0);
    return 1 - std::acos(c) / std::numbers::pi;
}

}  // namespace hornvol
