#include "hornvol/cli.hpp"

#include "hornvol/covolume.hpp"
#include "hornvol/ehrhart.hpp"
#include "hornvol/multiplicity.hpp"
#include "hornvol/sampler.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iomanip>
#include <map>
#include <sstream>
#include <stdexcept>

namespace hornvol::cli {

using Json = nlohmann::ordered_json;

namespace {

std::vector<std::string> split_commas(const std::string& text) {
    std::vector<std::string> parts;
    std::string cur;
    std::istringstream is(text);
    while (std::getline(is, cur, ',')) parts.push_back(cur);
    if (!text.empty() && text.back() == ',') parts.emplace_back();
    return parts;
}

CommandResult guarded(const std::function<CommandResult()>& body) {
    try {
        return body();
    } catch (const std::invalid_argument& e) {
        return {2, std::string("error: ") + e.what() + "\n"};
    } catch (const std::domain_error& e) {
        return {2, std::string("error: ") + e.what() + "\n"};
    } catch (const std::exception& e) {
        return {1, std::string("error: ") + e.what() + "\n"};
    }
}

Json labels_json(const IVec& v) {
    Json j = Json::array();
    for (auto x : v) j.push_back(x);
    return j;
}

Json point_json(const Point2& p) { return Json::array({to_string(p[0]), to_string(p[1])}); }

IVec checked_labels(const RootSystem& rs, const std::string& text, const char* what) {
    IVec v = parse_labels(text);
    if (static_cast<int>(v.size()) != rs.rank)
        throw std::invalid_argument(std::string(what) + " needs " + std::to_string(rs.rank) + " Dynkin labels");
    for (auto x : v)
        if (x < 0) throw std::invalid_argument(std::string(what) + " must be dominant");
    return v;
}

bool is_b2(const RootSystem& rs) { return rs.family == Family::B && rs.rank == 2; }

Weight as_weight(const IVec& v) { return dynkin(v); }

Point2 parse_b2_argument(const std::string& text, const std::string& basis) {
    if (basis == "orthonormal") return parse_point(text);
    if (basis == "dynkin") {
        auto parts = split_commas(text);
        if (parts.size() != 2) throw std::invalid_argument("expected two Dynkin labels: " + text);
        Weight w{{parse_rational(parts[0]), parse_rational(parts[1])}, Basis::Dynkin};
        return b2_orthonormal(w);
    }
    throw std::invalid_argument("unknown basis: " + basis);
}

std::string join_lines(const std::vector<std::string>& lines) {
    std::string out;
    for (const auto& l : lines) out += l + "\n";
    return out;
}

}  // namespace

bool slow_tests_enabled() {
    const char* v = std::getenv("HORNVOL_SLOW_TESTS");
    return v && std::string(v) == "1";
}

IVec parse_labels(const std::string& text) {
    IVec out;
    for (const auto& part : split_commas(text)) {
        Rational q = parse_rational(part);
        if (!is_integer(q)) throw std::invalid_argument("Dynkin labels must be integers: " + text);
        out.push_back(to_int64(q));
    }
    if (out.empty()) throw std::invalid_argument("empty weight");
    return out;
}

Point2 parse_point(const std::string& text) {
    auto parts = split_commas(text);
    if (parts.size() != 2) throw std::invalid_argument("expected two comma-separated coordinates: " + text);
    return {parse_rational(parts[0]), parse_rational(parts[1])};
}

// ---------------------------------------------------------------------------

CommandResult cmd_lr(const LrOptions& o) {
    return guarded([&]() -> CommandResult {
        RootSystem rs = build_root_system(o.algebra);
        IVec l = checked_labels(rs, o.lambda, "lambda"), m = checked_labels(rs, o.mu, "mu"),
             n = checked_labels(rs, o.nu, "nu");
        std::vector<std::string> methods;
        if (o.method == "all") {
            methods = {"klimyk", "steinberg"};
            if (is_b2(rs)) methods.push_back("bz");
        } else if (o.method == "klimyk" || o.method == "steinberg" || o.method == "bz") {
            methods = {o.method};
        } else {
            throw std::invalid_argument("unknown method: " + o.method);
        }
        std::vector<std::pair<std::string, std::int64_t>> values;
        for (const auto& method : methods) {
            std::int64_t v = 0;
            if (method == "klimyk") v = lr_klimyk(rs, l, m, n);
            else if (method == "steinberg") v = lr_steinberg(rs, l, m, n);
            else {
                if (!is_b2(rs)) throw std::invalid_argument("method bz is only available for B2");
                v = lattice_point_count(bz_polygon_b2(as_weight(l), as_weight(m), as_weight(n)));
            }
            values.emplace_back(method, v);
        }
        bool agree = true;
        for (const auto& [name, v] : values) agree = agree && v == values.front().second;
        CommandResult r;
        r.exit_code = agree ? 0 : 1;
        if (o.format == "json") {
            Json j;
            j["schema_version"] = kSchemaVersion;
            j["command"] = "lr";
            j["algebra"] = rs.name();
            j["lambda"] = labels_json(l);
            j["mu"] = labels_json(m);
            j["nu"] = labels_json(n);
            Json vals = Json::object();
            for (const auto& [name, v] : values) vals[name] = v;
            j["values"] = vals;
            j["agree"] = agree;
            r.output = j.dump(2) + "\n";
        } else if (o.format == "text") {
            std::string line;
            for (std::size_t i = 0; i < values.size(); ++i) line += (i ? "," : "") + std::to_string(values[i].second);
            r.output = line + "\n";
        } else {
            throw std::invalid_argument("unknown format: " + o.format);
        }
        return r;
    });
}

// ---------------------------------------------------------------------------

CommandResult cmd_volume(const VolumeOptions& o) {
    return guarded([&]() -> CommandResult {
        RootSystem rs = build_root_system(o.algebra);
        IVec l = checked_labels(rs, o.lambda, "lambda"), m = checked_labels(rs, o.mu, "mu"),
             n = checked_labels(rs, o.nu, "nu");
        std::vector<std::string> routes;
        if (o.route == "all") routes = {"direct", "lr", "ehrhart", "polytope"};
        else if (o.route == "direct" || o.route == "lr" || o.route == "ehrhart" || o.route == "polytope")
            routes = {o.route};
        else throw std::invalid_argument("unknown route: " + o.route);
        const bool explicit_route = o.route != "all";
        const bool compatible = integral_simple_difference(rs, l, m, n).has_value();

        struct Entry {
            std::string route;
            std::optional<Rational> value;
            std::string note;
        };
        std::vector<Entry> entries;
        std::optional<DegeneracyInfo> degeneracy;
        for (const auto& route : routes) {
            Entry e{route, std::nullopt, ""};
            if ((route == "direct" || route == "polytope" || route == "lr") && !is_b2(rs)) {
                if (explicit_route) throw std::invalid_argument("route " + route + " is only available for B2");
                e.note = "only available for B2";
            } else if ((route == "lr" || route == "ehrhart") && !compatible) {
                if (explicit_route) throw std::domain_error("route " + route + " needs a compatible triple");
                e.note = "triple is not compatible";
            } else if (route == "direct") {
                e.value = j_b2(b2_orthonormal(l), b2_orthonormal(m), b2_orthonormal(n));
            } else if (route == "lr") {
                bool shiftable = true;
                for (const auto* v : {&l, &m, &n})
                    for (auto x : *v) shiftable = shiftable && x >= 1;
                if (!shiftable) {
                    if (explicit_route) throw std::domain_error("route lr needs every label to be at least 1");
                    e.note = "weights must dominate rho";
                } else {
                    e.value = j_lr_unshifted(l, m, n);
                }
            } else if (route == "ehrhart") {
                int period = (rs.family == Family::B || rs.family == Family::C || rs.family == Family::D) ? 2 : 1;
                StretchingFit fit = fit_stretching(rs, l, m, n, period);
                e.value = leading_coefficient(fit.poly);
            } else if (route == "polytope") {
                RationalPolygon p = bz_polygon_b2(as_weight(l), as_weight(m), as_weight(n));
                degeneracy = degeneracy_info(p);
                e.value = p.dim == 2 ? polygon_area(p) : Rational(0);
            }
            entries.push_back(e);
        }
        bool agree = true;
        std::optional<Rational> first;
        for (const auto& e : entries) {
            if (!e.value) continue;
            if (!first) first = e.value;
            else agree = agree && *first == *e.value;
        }
        CommandResult r;
        r.exit_code = agree ? 0 : 1;
        if (o.format == "json") {
            Json j;
            j["schema_version"] = kSchemaVersion;
            j["command"] = "volume";
            j["algebra"] = rs.name();
            j["lambda"] = labels_json(l);
            j["mu"] = labels_json(m);
            j["nu"] = labels_json(n);
            Json routes_json = Json::object();
            for (const auto& e : entries) routes_json[e.route] = e.value ? Json(to_string(*e.value)) : Json(nullptr);
            j["routes"] = routes_json;
            if (degeneracy) {
                j["degeneracy"] = {{"kind", to_string(degeneracy->kind)},
                                   {"relative_length", to_string(degeneracy->relative_length)}};
            }
            j["agree"] = agree;
            r.output = j.dump(2) + "\n";
        } else if (o.format == "text") {
            std::vector<std::string> lines;
            for (const auto& e : entries)
                lines.push_back(e.route + ": " + (e.value ? to_string(*e.value) : "n/a (" + e.note + ")"));
            if (degeneracy && degeneracy->kind != Degeneracy::Full) {
                std::string d = "degenerate: " + to_string(degeneracy->kind);
                if (degeneracy->kind == Degeneracy::Segment)
                    d += " of relative length " + to_string(degeneracy->relative_length);
                lines.push_back(d);
            }
            if (entries.size() > 1) lines.push_back(std::string("agree: ") + (agree ? "yes" : "no"));
            r.output = join_lines(lines);
        } else {
            throw std::invalid_argument("unknown format: " + o.format);
        }
        return r;
    });
}

// ---------------------------------------------------------------------------

namespace {

struct SvgFrame {
    Point2 lo, hi;
    double size = 560, margin = 30;
    double scale() const {
        double w = Rational(hi[0] - lo[0]).get_d(), h = Rational(hi[1] - lo[1]).get_d();
        return size / std::max(w, h);
    }
    double px(const Rational& x) const { return margin + Rational(x - lo[0]).get_d() * scale(); }
    double py(const Rational& y) const { return margin + size - Rational(y - lo[1]).get_d() * scale(); }
};

std::string fmt(double v) {
    std::ostringstream os;
    os << std::fixed << std::setprecision(2) << v;
    return os.str();
}

// Endpoints of the chord cut from the polygon by a x + b y = c.
std::optional<std::pair<Point2, Point2>> chord(const std::vector<Point2>& poly, const Rational& a, const Rational& b,
                                               const Rational& c) {
    std::vector<Point2> hits;
    for (std::size_t i = 0; i < poly.size(); ++i) {
        const auto& p = poly[i];
        const auto& q = poly[(i + 1) % poly.size()];
        Rational fp = a * p[0] + b * p[1] - c, fq = a * q[0] + b * q[1] - c;
        if (fp == 0) hits.push_back(p);
        if ((fp < 0 && fq > 0) || (fp > 0 && fq < 0)) {
            Rational t = fp / (fp - fq);
            hits.push_back({p[0] + t * (q[0] - p[0]), p[1] + t * (q[1] - p[1])});
        }
    }
    if (hits.size() < 2) return std::nullopt;
    std::sort(hits.begin(), hits.end());
    return std::make_pair(hits.front(), hits.back());
}

std::string grid_svg(const PiecewiseQuadratic& pq) {
    Point2 lo = pq.polygon.vertices[0], hi = lo;
    for (const auto& v : pq.polygon.vertices)
        for (int k = 0; k < 2; ++k) {
            lo[k] = std::min(lo[k], v[k]);
            hi[k] = std::max(hi[k], v[k]);
        }
    Rational pad = std::max(hi[0] - lo[0], hi[1] - lo[1]) / 20;
    lo = {lo[0] - pad, std::max(Rational(lo[1] - pad), Rational(-pad / 2))};
    hi = {hi[0] + pad, hi[1] + pad};
    SvgFrame f{lo, hi};
    const double total = f.size + 2 * f.margin;
    std::ostringstream os;
    os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << fmt(total) << "\" height=\""
       << fmt(total) << "\" viewBox=\"0 0 " << fmt(total) << " " << fmt(total) << "\">\n";
    os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    os << "<polygon points=\"";
    for (const auto& v : pq.polygon.vertices) os << fmt(f.px(v[0])) << "," << fmt(f.py(v[1])) << " ";
    os << "\" fill=\"#e8f0fb\" stroke=\"black\" stroke-width=\"1.5\"/>\n";

    // Chamber walls g2 = 0 and g1 = g2, dashed.
    os << "<line x1=\"" << fmt(f.px(lo[0])) << "\" y1=\"" << fmt(f.py(0)) << "\" x2=\"" << fmt(f.px(hi[0]))
       << "\" y2=\"" << fmt(f.py(0)) << "\" stroke=\"gray\" stroke-dasharray=\"6,4\"/>\n";
    Rational d0 = std::max(lo[0], lo[1]), d1 = std::min(hi[0], hi[1]);
    if (d0 < d1)
        os << "<line x1=\"" << fmt(f.px(d0)) << "\" y1=\"" << fmt(f.py(d0)) << "\" x2=\"" << fmt(f.px(d1))
           << "\" y2=\"" << fmt(f.py(d1)) << "\" stroke=\"gray\" stroke-dasharray=\"6,4\"/>\n";

    for (const auto& line : pq.lines) {
        if (!line.meets_polygon) continue;
        auto seg = chord(pq.polygon.vertices, line.a(), line.b(), line.level);
        if (!seg) continue;
        os << "<line x1=\"" << fmt(f.px(seg->first[0])) << "\" y1=\"" << fmt(f.py(seg->first[1])) << "\" x2=\""
           << fmt(f.px(seg->second[0])) << "\" y2=\"" << fmt(f.py(seg->second[1]))
           << "\" stroke=\"#c0392b\" stroke-width=\"1\"><title>" << line.describe() << "</title></line>\n";
    }
    for (const auto& v : pq.four_prong)
        if (v.inside_polygon)
            os << "<circle cx=\"" << fmt(f.px(v.point[0])) << "\" cy=\"" << fmt(f.py(v.point[1]))
               << "\" r=\"3\" fill=\"black\"><title>" << v.label << "</title></circle>\n";
    os << "</svg>\n";
    return os.str();
}

}  // namespace

CommandResult cmd_grid(const GridOptions& o) {
    return guarded([&]() -> CommandResult {
        if (o.resolution < 1) throw std::invalid_argument("resolution must be at least 1");
        Point2 alpha = parse_b2_argument(o.alpha, o.basis), beta = parse_b2_argument(o.beta, o.basis);
        PiecewiseQuadratic pq = piecewise_analyze_b2(alpha, beta);
        CommandResult r;
        r.exit_code = (pq.all_walls_classified() && pq.all_loops_consistent()) ? 0 : 1;
        if (o.format == "csv") {
            auto [lo, hi] = b2_bin_box(alpha, beta);
            std::ostringstream os;
            os << "gamma1,gamma2,J,pdf\r\n";
            for (int i = 0; i <= o.resolution; ++i)
                for (int k = 0; k <= o.resolution; ++k) {
                    Point2 g{lo[0] + (hi[0] - lo[0]) * i / o.resolution, lo[1] + (hi[1] - lo[1]) * k / o.resolution};
                    bool inside = horn_contains_b2(alpha, beta, g);
                    Rational j = inside ? j_b2(alpha, beta, g) : Rational(0);
                    Rational p = inside ? pdf_b2(alpha, beta, g) : Rational(0);
                    os << to_string(g[0]) << "," << to_string(g[1]) << "," << to_string(j) << "," << to_string(p)
                       << "\r\n";
                }
            r.output = os.str();
        } else if (o.format == "svg") {
            r.output = grid_svg(pq);
        } else if (o.format == "json") {
            Json j;
            j["schema_version"] = kSchemaVersion;
            j["command"] = "grid";
            j["alpha"] = point_json(pq.alpha);
            j["beta"] = point_json(pq.beta);
            j["swapped"] = pq.swapped;
            Json poly = Json::array();
            for (const auto& v : pq.polygon.vertices) poly.push_back(point_json(v));
            j["polygon"] = poly;
            Json lines = Json::array();
            for (const auto& l : pq.lines)
                lines.push_back({{"line", l.describe()}, {"multiplicity", l.multiplicity}, {"meets_polygon", l.meets_polygon}});
            j["singular_lines"] = lines;
            Json cells = Json::array();
            for (const auto& c : pq.cells) {
                Json verts = Json::array();
                for (const auto& v : c.vertices) verts.push_back(point_json(v));
                cells.push_back({{"vertices", verts}, {"J", c.q.to_string()}});
            }
            j["cells"] = cells;
            std::map<std::string, int> kinds;
            for (const auto& w : pq.walls) kinds[to_string(w.kind)]++;
            j["wall_kinds"] = kinds;
            j["pdf_normalization"] = to_string(pdf_normalization_b2(pq));
            j["all_walls_classified"] = pq.all_walls_classified();
            j["all_loops_consistent"] = pq.all_loops_consistent();
            r.output = j.dump(2) + "\n";
        } else {
            throw std::invalid_argument("unknown format: " + o.format);
        }
        return r;
    });
}

// ---------------------------------------------------------------------------

CommandResult cmd_ehrhart(const EhrhartOptions& o) {
    return guarded([&]() -> CommandResult {
        RootSystem rs = build_root_system(o.algebra);
        IVec l = checked_labels(rs, o.lambda, "lambda"), m = checked_labels(rs, o.mu, "mu"),
             n = checked_labels(rs, o.nu, "nu");
        if (!integral_simple_difference(rs, l, m, n)) throw std::domain_error("triple is not compatible");
        int period = o.period;
        if (period == 0)
            period = (rs.family == Family::B || rs.family == Family::C || rs.family == Family::D) ? 2 : 1;
        StretchingFit fit = fit_stretching(rs, l, m, n, period, o.smax, o.degree);
        std::optional<Rational> lead;
        try {
            lead = leading_coefficient(fit.poly);
        } catch (const std::runtime_error&) {
        }
        std::optional<ReciprocityReport> recip;
        if (is_b2(rs)) recip = reciprocity_check(fit.poly, bz_polygon_b2(as_weight(l), as_weight(m), as_weight(n)));
        CommandResult r;
        r.exit_code = lead ? 0 : 1;
        if (o.format == "json") {
            Json j;
            j["schema_version"] = kSchemaVersion;
            j["command"] = "ehrhart";
            j["algebra"] = rs.name();
            j["lambda"] = labels_json(l);
            j["mu"] = labels_json(m);
            j["nu"] = labels_json(n);
            j["period"] = fit.poly.period;
            j["degree"] = fit.poly.degree;
            Json samples = Json::object();
            for (const auto& [s, v] : fit.samples) samples[std::to_string(s)] = to_string(v);
            j["samples"] = samples;
            Json classes = Json::array();
            for (int c = 0; c < fit.poly.period; ++c) {
                Json coeffs = Json::array();
                for (const auto& q : fit.poly.coeffs[c]) coeffs.push_back(to_string(q));
                classes.push_back({{"residue", c}, {"coefficients", coeffs},
                                   {"polynomial", polynomial_to_string(fit.poly.coeffs[c])}});
            }
            j["classes"] = classes;
            j["leading_coefficient"] = lead ? Json(to_string(*lead)) : Json(nullptr);
            if (recip)
                j["reciprocity"] = {{"value_at_minus_one", to_string(recip->value_at_minus_one)},
                                    {"interior_points", recip->interior},
                                    {"holds", recip->holds}};
            r.output = j.dump(2) + "\n";
        } else if (o.format == "text") {
            r.output = fit.poly.to_string() + "\n";
        } else {
            throw std::invalid_argument("unknown format: " + o.format);
        }
        return r;
    });
}

// ---------------------------------------------------------------------------

CommandResult cmd_covolume(const CovolumeOptions& o) {
    return guarded([&]() -> CommandResult {
        std::vector<std::pair<Family, int>> todo;
        auto classical = [&](Family f, int min_rank) {
            for (int r = min_rank; r <= o.max_rank; ++r) todo.emplace_back(f, r);
        };
        auto exceptional = [&](Family f) {
            static const std::map<Family, int> ranks = {{Family::E6, 6}, {Family::E7, 7}, {Family::E8, 8},
                                                        {Family::F4, 4}, {Family::G2, 2}};
            todo.emplace_back(f, ranks.at(f));
        };
        if (o.family == "all") {
            classical(Family::A, 1);
            classical(Family::B, 2);
            classical(Family::C, 2);
            classical(Family::D, 3);
            for (Family f : {Family::G2, Family::F4, Family::E6}) exceptional(f);
            if (o.include_large) {
                exceptional(Family::E7);
                exceptional(Family::E8);
            }
        } else {
            Family f = parse_family(o.family);
            switch (f) {
            case Family::A: classical(f, 1); break;
            case Family::B:
            case Family::C: classical(f, 2); break;
            case Family::D: classical(f, 3); break;
            default: exceptional(f);
            }
        }
        std::vector<CovolumeReport> reports;
        for (const auto& [f, rank] : todo) reports.push_back(covolume_report(build_root_system(f, rank)));
        bool ok = std::all_of(reports.begin(), reports.end(), [](const CovolumeReport& r) { return r.agree; });
        CommandResult r;
        r.exit_code = ok ? 0 : 1;
        if (o.format == "md") {
            r.output = covolume_markdown(reports);
        } else if (o.format == "json") {
            Json j;
            j["schema_version"] = kSchemaVersion;
            j["command"] = "covolume";
            Json rows = Json::array();
            for (const auto& rep : reports)
                rows.push_back({{"algebra", rep.name()},
                                {"rank", rep.rank},
                                {"delta_gram", to_string(rep.delta_gram)},
                                {"delta_formula", to_string(rep.delta_formula)},
                                {"table_value", rep.table_value ? Json(to_string(*rep.table_value)) : Json(nullptr)},
                                {"agree", rep.agree}});
            j["reports"] = rows;
            j["status"] = "consistent with the conjectured fundamental domain";
            r.output = j.dump(2) + "\n";
        } else {
            throw std::invalid_argument("unknown format: " + o.format);
        }
        return r;
    });
}

// ---------------------------------------------------------------------------

CommandResult cmd_sample(const SampleOptions& o) {
    return guarded([&]() -> CommandResult {
        if (o.n < 1) throw std::invalid_argument("sample count must be at least 1");
        SamplerOptions so;
        so.bins = o.bins;
        so.threads = o.threads;
        Json j;
        j["schema_version"] = kSchemaVersion;
        j["command"] = "sample";
        j["group"] = o.group;
        j["n"] = o.n;
        j["seed"] = o.seed;
        j["bins"] = o.bins;
        HornHistogram h;
        bool pass = false;
        if (o.group == "b2") {
            Point2 alpha = parse_b2_argument(o.alpha, o.basis), beta = parse_b2_argument(o.beta, o.basis);
            h = sample_b2_spectrum(alpha, beta, static_cast<std::uint64_t>(o.n), o.seed, so);
            PiecewiseQuadratic pq = piecewise_analyze_b2(alpha, beta);
            ChiSquareReport chi = chi_square_b2(h, pq);
            j["alpha"] = point_json(alpha);
            j["beta"] = point_json(beta);
            j["outside_support"] = h.outside_support;
            j["chi_square"] = {{"statistic", chi.statistic},
                               {"dof", chi.dof},
                               {"p_value", chi.p_value},
                               {"bins_pooled", chi.bins_pooled}};
            j["exact_total_mass"] = to_string(pdf_normalization_b2(pq));
            pass = h.outside_support == 0 && chi.p_value > 1e-3;
        } else if (o.group == "so2") {
            double a = parse_rational(o.alpha).get_d(), b = parse_rational(o.beta).get_d();
            h = sample_so2_symmetric(a, b, static_cast<std::uint64_t>(o.n), o.seed, so);
            double critical = 1.95 / std::sqrt(static_cast<double>(o.n));
            j["alpha12"] = a;
            j["beta12"] = b;
            j["support"] = Json::array({std::fabs(a - b), a + b});
            j["observed_range"] = Json::array({h.min_x, h.max_x});
            j["outside_support"] = h.outside_support;
            j["ks_distance"] = h.ks_distance;
            j["ks_critical_0_001"] = critical;
            pass = h.outside_support == 0 && h.ks_distance < critical;
        } else {
            throw std::invalid_argument("unknown group: " + o.group);
        }
        j["pass"] = pass;
        if (!o.histogram_csv.empty()) {
            std::ofstream out(o.histogram_csv);
            if (!out) throw std::runtime_error("cannot write " + o.histogram_csv);
            out << Json{{"seed", o.seed}, {"n", o.n}, {"group", o.group}}.dump() << "\r\n";
            const double wx = (h.x1 - h.x0) / h.nx, wy = h.dims == 2 ? (h.y1 - h.y0) / h.ny : 1.0;
            const double norm = static_cast<double>(h.sample_count) * wx * wy;
            out << std::setprecision(10);
            if (h.dims == 2) {
                out << "gamma1_center,gamma2_center,count,density\r\n";
                for (int iy = 0; iy < h.ny; ++iy)
                    for (int ix = 0; ix < h.nx; ++ix)
                        out << h.x0 + (ix + 0.5) * wx << "," << h.y0 + (iy + 0.5) * wy << "," << h.count(ix, iy)
                            << "," << h.count(ix, iy) / norm << "\r\n";
            } else {
                out << "gamma_center,count,density\r\n";
                for (int ix = 0; ix < h.nx; ++ix)
                    out << h.x0 + (ix + 0.5) * wx << "," << h.count(ix) << "," << h.count(ix) / norm << "\r\n";
            }
            j["histogram_csv"] = o.histogram_csv;
        }
        return {pass ? 0 : 1, j.dump(2) + "\n"};
    });
}

}  // namespace hornvol::cli
