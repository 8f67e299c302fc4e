#include "cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>
#include <Eigen/LU>
#include <json.hpp>

#include "mixcurve/bifurcation.hpp"
#include "mixcurve/errors.hpp"
#include "mixcurve/homform.hpp"
#include "mixcurve/parse.hpp"

#ifndef MIXCURVE_VERSION
#define MIXCURVE_VERSION "0.0.0"
#endif

namespace mixcurve::cli {

using json = nlohmann::ordered_json;

namespace {

double parse_double(std::string_view text) {
    double value = 0.0;
    const char *first = text.data();
    const char *last = text.data() + text.size();
    if (first != last && *first == '+')
        ++first;
    const auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr != last || !std::isfinite(value))
        throw std::invalid_argument("bad number '" + std::string(text) + "'");
    return value;
}

std::vector<std::string_view> split(std::string_view text, char sep) {
    std::vector<std::string_view> parts;
    std::size_t start = 0;
    while (true) {
        const std::size_t pos = text.find(sep, start);
        parts.push_back(text.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
        if (pos == std::string_view::npos)
            break;
        start = pos + 1;
    }
    return parts;
}

json to_json(Complex z) { return json{{"re", z.real()}, {"im", z.imag()}}; }

json to_json(const Point2 &P) { return json::array({to_json(P(0)), to_json(P(1))}); }

json to_json(const Box &b) { return json{{"xmin", b.xmin}, {"xmax", b.xmax}, {"ymin", b.ymin}, {"ymax", b.ymax}}; }

json to_json(const RootRecord &r) {
    return json{{"location", to_json(r.location)},
                {"sm", r.sm},
                {"kind", std::string(to_string(r.kind))},
                {"wirtinger_a", to_json(r.wirtinger_a)},
                {"wirtinger_b", to_json(r.wirtinger_b)}};
}

json to_json(const UnresolvedRegion &u) {
    return json{{"bounds", to_json(u.bounds)}, {"cells", u.cells}, {"reason", u.reason}};
}

json to_json(const WindingResult &w) {
    return json{{"certified", true},
                {"min_modulus", w.min_modulus},
                {"max_step_phase", w.max_step_phase},
                {"samples_used", w.samples_used}};
}

json to_json(const DegreeResult &d) {
    return json{{"raw_integral", d.raw_integral},   {"residual", d.residual},
                {"refinement_depth", d.refinement_depth}, {"radius", d.radius},
                {"min_modulus", d.min_modulus}};
}

json to_json(const HomFactorization &h) {
    json factors = json::array();
    for (const FormFactor &ff : h.factors)
        factors.push_back(json{{"gamma", to_json(ff.gamma)}, {"multiplicity", ff.multiplicity}, {"epsilon", epsilon(ff.gamma)}});
    return json{{"c", to_json(h.c)}, {"p", h.p}, {"q", h.q}, {"degree", h.degree}, {"factors", factors}};
}

json to_json(const GlobalSumReport &r) {
    json rows = json::array();
    for (const PointContribution &c : r.contributions) {
        json row{{"point", c.at_infinity ? json("infinity") : to_json(c.point)}, {"method", c.method}};
        row["value"] = c.value ? json(*c.value) : json(nullptr);
        if (!c.error.empty())
            row["error"] = c.error;
        rows.push_back(row);
    }
    return json{{"contributions", rows},
                {"total", r.total},
                {"expected", r.expected},
                {"passed", r.passed},
                {"assumptions", r.assumptions}};
}

std::string coordinate_name(int coord, int nvars) {
    if (coord == 0)
        return "Z0";
    return nvars == 1 ? "Z1" : "Z" + std::to_string(coord);
}

std::string format_number(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

// Same coefficient conventions as print(), over projective coordinates.
std::string print_homogenization(const Homogenization &F) {
    if (F.terms.empty())
        return "0";
    std::vector<std::pair<std::array<int, 6>, Complex>> terms(F.terms.begin(), F.terms.end());
    std::stable_sort(terms.begin(), terms.end(), [](const auto &a, const auto &b) { return a.first > b.first; });
    std::string out;
    bool first = true;
    for (const auto &[e, c] : terms) {
        std::string mono;
        for (int coord = 0; coord <= F.nvars; ++coord) {
            const std::string name = coordinate_name(coord, F.nvars);
            for (int kind = 0; kind < 2; ++kind) {
                const int p = e[2 * coord + kind];
                if (p == 0)
                    continue;
                if (!mono.empty())
                    mono += "*";
                mono += kind == 0 ? name : "conj(" + name + ")";
                if (p > 1)
                    mono += "^" + std::to_string(p);
            }
        }
        std::string coef;
        bool negative = false;
        if (c.imag() == 0.0) {
            negative = c.real() < 0.0;
            const double a = std::abs(c.real());
            coef = (a == 1.0 && !mono.empty()) ? "" : format_number(a);
        } else if (c.real() == 0.0) {
            negative = c.imag() < 0.0;
            const double b = std::abs(c.imag());
            coef = b == 1.0 ? "i" : format_number(b) + "*i";
        } else {
            coef = "(" + format_number(c.real()) + (c.imag() < 0 ? " - " : " + ") + format_number(std::abs(c.imag())) +
                   "*i)";
        }
        std::string body = coef.empty() ? mono : (mono.empty() ? coef : coef + "*" + mono);
        if (first)
            out += negative ? "-" + body : body;
        else
            out += (negative ? " - " : " + ") + body;
        first = false;
    }
    return out;
}

json homogenization_json(const Homogenization &F) {
    json terms = json::array();
    for (const auto &[e, c] : F.terms)
        terms.push_back(json{{"exponents", std::vector<int>(e.begin(), e.begin() + 2 * (F.nvars + 1))},
                             {"coeff", to_json(c)}});
    return json{{"text", print_homogenization(F)},
                {"dplus", F.dplus},
                {"dminus", F.dminus},
                {"radial_degree", F.radial_degree()},
                {"polar_degree", F.polar_degree()},
                {"strongly_polar_homogeneous", is_strongly_polar_homogeneous(F)},
                {"terms", terms}};
}

struct RunConfig {
    std::string poly, f, g, direction;
    std::string at = "0";
    std::string center = "0";
    std::string box, points, out, method = "auto";
    double radius = 1.0;
    double t = 0.0;
    int samples = 360;
    int chart = 1;
    int dpolar_f = 0, dpolar_g = 0;
    std::optional<double> epsilon;
    std::optional<double> tol_scale;
};

struct Tolerances {
    SmOptions sm;
    RootFindOptions roots;
    WindingOptions winding;
};

Tolerances tolerances(const RunConfig &cfg) {
    double scale = 1.0;
    if (const char *env = std::getenv("MIXCURVE_TOL"); env && *env)
        scale = parse_double(env);
    if (cfg.tol_scale)
        scale = *cfg.tol_scale;
    if (!(scale > 0.0))
        throw std::invalid_argument("tolerance scale must be positive");
    Tolerances t;
    t.winding.zero_tolerance *= scale;
    t.sm.winding = t.winding;
    t.sm.root_tolerance *= scale;
    t.roots.sm = t.sm;
    t.roots.acceptance_residual *= scale;
    t.roots.kind_tolerance *= scale;
    return t;
}

MixedPoly parse_single(const std::string &text) { return parse(text, VariableFamily::single); }
MixedPoly parse_pair(const std::string &text) { return parse(text, VariableFamily::pair); }

struct Outcome {
    json result;
    json certification;
    int code = 0;
};

json failure_certification(const std::exception &e) {
    json c{{"certified", false}, {"message", e.what()}};
    if (auto *cf = dynamic_cast<const CertificationFailure *>(&e)) {
        c["error"] = "CertificationFailure";
        c["min_modulus"] = cf->min_modulus();
        c["max_step_phase"] = cf->max_step_phase();
        c["samples"] = cf->samples();
    } else if (auto *sz = dynamic_cast<const SphereHitsZero *>(&e)) {
        c["error"] = "SphereHitsZero";
        c["min_modulus"] = sz->min_modulus();
    } else if (auto *nc = dynamic_cast<const NoConvergence *>(&e)) {
        c["error"] = "NoConvergence";
        c["residual"] = nc->residual();
    } else if (auto *tf = dynamic_cast<const TransversalityFailure *>(&e)) {
        c["error"] = "TransversalityFailure";
        c["determinant"] = tf->determinant();
    } else if (dynamic_cast<const AdmissibilityViolation *>(&e)) {
        c["error"] = "AdmissibilityViolation";
    } else if (dynamic_cast<const NonIsolated *>(&e)) {
        c["error"] = "NonIsolated";
    } else if (dynamic_cast<const BoundaryRoot *>(&e)) {
        c["error"] = "BoundaryRoot";
    } else if (dynamic_cast<const RootFinderFailure *>(&e)) {
        c["error"] = "RootFinderFailure";
    } else {
        c["error"] = "InconclusiveError";
    }
    return c;
}

void require(bool condition, const std::string &message) {
    if (!condition)
        throw std::invalid_argument(message);
}

}  // namespace

Complex parse_complex(std::string_view text) {
    require(!text.empty(), "empty complex number");
    require(text.find(' ') == std::string_view::npos, "complex numbers take no spaces: '" + std::string(text) + "'");
    if (text.back() != 'i')
        return {parse_double(text), 0.0};
    const std::string_view body = text.substr(0, text.size() - 1);
    // Split before the last sign that is not a leading sign or an exponent sign.
    std::size_t split_at = std::string_view::npos;
    for (std::size_t k = body.size(); k-- > 1;) {
        if ((body[k] == '+' || body[k] == '-') && body[k - 1] != 'e' && body[k - 1] != 'E') {
            split_at = k;
            break;
        }
    }
    const std::string_view re_text = split_at == std::string_view::npos ? std::string_view() : body.substr(0, split_at);
    std::string_view im_text = split_at == std::string_view::npos ? body : body.substr(split_at);
    double im = 0.0;
    if (im_text.empty() || im_text == "+")
        im = 1.0;
    else if (im_text == "-")
        im = -1.0;
    else
        im = parse_double(im_text);
    return {re_text.empty() ? 0.0 : parse_double(re_text), im};
}

Point2 parse_point(std::string_view text) {
    const auto parts = split(text, ',');
    require(parts.size() == 2, "a point needs two coordinates 'z1,z2': '" + std::string(text) + "'");
    return Point2(parse_complex(parts[0]), parse_complex(parts[1]));
}

std::vector<Point2> parse_points(std::string_view text) {
    std::vector<Point2> out;
    if (text.empty())
        return out;
    for (std::string_view p : split(text, ';'))
        out.push_back(parse_point(p));
    return out;
}

Box parse_box(std::string_view text) {
    const auto parts = split(text, ',');
    require(parts.size() == 4, "a box needs 'xmin,xmax,ymin,ymax': '" + std::string(text) + "'");
    Box b{parse_double(parts[0]), parse_double(parts[1]), parse_double(parts[2]), parse_double(parts[3])};
    require(b.xmax > b.xmin && b.ymax > b.ymin, "box bounds must satisfy xmin < xmax and ymin < ymax");
    return b;
}

std::string format_trace_csv(const std::vector<TracePoint> &rows) {
    std::string out = "theta,re,im\n";
    for (const TracePoint &p : rows)
        out += format_number(p.theta) + "," + format_number(p.re) + "," + format_number(p.im) + "\n";
    return out;
}

void emit_trace_csv(const std::vector<TracePoint> &rows, const std::string &path) {
    if (rows.empty())
        throw std::invalid_argument("trace has no rows");
    std::ofstream file(path, std::ios::binary);
    if (!file)
        throw std::runtime_error("cannot open '" + path + "' for writing");
    file << format_trace_csv(rows);
    if (!file)
        throw std::runtime_error("failed writing '" + path + "'");
}

int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
    CLI::App app{"Signed multiplicities and intersection numbers of mixed polynomials", "mixcurve"};
    app.require_subcommand(1);
    app.set_version_flag("--version", MIXCURVE_VERSION);
    app.footer(std::string(grammar_help()));
    RunConfig cfg;

    std::map<CLI::App *, std::function<Outcome()>> actions;
    std::map<CLI::App *, std::function<json()>> inputs;

    auto add_tol = [&](CLI::App *sub) {
        sub->add_option("--tol-scale", cfg.tol_scale, "Multiplier on the default relative tolerances (overrides MIXCURVE_TOL)");
    };
    auto poly_opt = [&](CLI::App *sub, const char *what) { sub->add_option("--poly", cfg.poly, what)->required(); };

    // eval
    {
        auto *sub = app.add_subcommand("eval", "Evaluate a polynomial at a point");
        poly_opt(sub, "Polynomial in u or in z1, z2");
        sub->add_option("--at", cfg.at, "Point: a+bi, or z1,z2 for two variables")->required();
        inputs[sub] = [&] { return json{{"poly", cfg.poly}, {"at", cfg.at}}; };
        actions[sub] = [&] {
            const MixedPoly f = parse(cfg.poly);
            Complex v;
            double bound;
            if (f.nvars() == 1) {
                const Complex a = parse_complex(cfg.at);
                v = eval(f, a);
                bound = magnitude_bound(f, a);
            } else {
                const Point2 P = parse_point(cfg.at);
                v = eval(f, P);
                bound = magnitude_bound(f, P);
            }
            return Outcome{to_json(v), json{{"magnitude_bound", bound}}};
        };
    }
    // sm
    {
        auto *sub = app.add_subcommand("sm", "Multiplicity with sign of an isolated root");
        poly_opt(sub, "Polynomial in u");
        sub->add_option("--at", cfg.at, "Root a+bi")->required();
        add_tol(sub);
        inputs[sub] = [&] { return json{{"poly", cfg.poly}, {"at", cfg.at}}; };
        actions[sub] = [&] {
            const MixedPoly f = parse_single(cfg.poly);
            const Complex a = parse_complex(cfg.at);
            const int value = sm(f, a, tolerances(cfg).sm);
            return Outcome{value, json{{"certified", true}, {"root_residual", std::abs(eval(f, a))}}};
        };
    }
    // total-sm
    {
        auto *sub = app.add_subcommand("total-sm", "Total multiplicity with sign SM(f)");
        poly_opt(sub, "Polynomial in u");
        add_tol(sub);
        inputs[sub] = [&] { return json{{"poly", cfg.poly}}; };
        actions[sub] = [&] {
            const MixedPoly f = parse_single(cfg.poly);
            const Tolerances tol = tolerances(cfg);
            const double R = dominance_radius(f, tol.winding);
            const WindingResult w = winding_number(f, 0.0, R, tol.winding);
            json cert = to_json(w);
            cert["radius"] = R;
            return Outcome{w.degree, cert};
        };
    }
    // beta / rho
    for (const bool top : {true, false}) {
        auto *sub = app.add_subcommand(top ? "beta" : "rho",
                                       top ? "Invariant from the top graded form" : "Invariant from the lowest graded form");
        poly_opt(sub, "Polynomial in u");
        inputs[sub] = [&] { return json{{"poly", cfg.poly}}; };
        actions[sub] = [&, top] {
            const MixedPoly f = parse_single(cfg.poly);
            const MixedPoly form = graded_part(f, top ? max_degree(f) : min_degree(f));
            const HomFactorization h = factor_form(form);
            json cert{{"form", print(form)}, {"factorization", to_json(h)}};
            const int value = top ? beta(h) : rho(h);
            return Outcome{value, cert};
        };
    }
    // roots
    {
        auto *sub = app.add_subcommand("roots", "All isolated roots in a box, with sm and kind");
        poly_opt(sub, "Polynomial in u");
        sub->add_option("--box", cfg.box, "xmin,xmax,ymin,ymax")->required();
        add_tol(sub);
        inputs[sub] = [&] { return json{{"poly", cfg.poly}, {"box", cfg.box}}; };
        actions[sub] = [&] {
            const MixedPoly f = parse_single(cfg.poly);
            const RootFindResult r = find_roots(f, parse_box(cfg.box), tolerances(cfg).roots);
            json roots = json::array();
            for (const RootRecord &rec : r.roots)
                roots.push_back(to_json(rec));
            json unresolved = json::array();
            for (const UnresolvedRegion &u : r.unresolved)
                unresolved.push_back(to_json(u));
            json cert{{"certified", r.unresolved.empty()}, {"sm_sum", r.sm_sum()}, {"unresolved", unresolved}};
            return Outcome{roots, cert, r.unresolved.empty() ? 0 : 2};
        };
    }
    // winding
    {
        auto *sub = app.add_subcommand("winding", "Winding number of f on a circle");
        poly_opt(sub, "Polynomial in u");
        sub->add_option("--center", cfg.center, "Center a+bi");
        sub->add_option("--radius", cfg.radius, "Radius")->required()->check(CLI::PositiveNumber);
        add_tol(sub);
        inputs[sub] = [&] { return json{{"poly", cfg.poly}, {"center", cfg.center}, {"radius", cfg.radius}}; };
        actions[sub] = [&] {
            const MixedPoly f = parse_single(cfg.poly);
            const WindingResult w = winding_number(f, parse_complex(cfg.center), cfg.radius, tolerances(cfg).winding);
            return Outcome{w.degree, to_json(w)};
        };
    }
    // trace (CSV, handled separately below)
    auto *trace_cmd = app.add_subcommand("trace", "Sample f on a circle as CSV theta,re,im");
    poly_opt(trace_cmd, "Polynomial in u");
    trace_cmd->add_option("--radius", cfg.radius, "Radius")->required()->check(CLI::PositiveNumber);
    trace_cmd->add_option("--center", cfg.center, "Center a+bi");
    trace_cmd->add_option("--samples", cfg.samples, "Number of samples (>= 3)")->check(CLI::Range(3, 1 << 24));
    trace_cmd->add_option("--out", cfg.out, "Output CSV path (default: stdout)");
    // bifurcate
    {
        auto *sub = app.add_subcommand("bifurcate", "Roots of base + t*direction in a box against sm(base, 0)");
        poly_opt(sub, "Base polynomial f_0 in u");
        sub->add_option("--direction", cfg.direction, "Direction polynomial in u")->required();
        sub->add_option("--t", cfg.t, "Parameter value")->required();
        sub->add_option("--box", cfg.box, "xmin,xmax,ymin,ymax")->required();
        add_tol(sub);
        inputs[sub] = [&] {
            return json{{"poly", cfg.poly}, {"direction", cfg.direction}, {"t", cfg.t}, {"box", cfg.box}};
        };
        actions[sub] = [&] {
            const MixedPoly base = parse_single(cfg.poly);
            const MixedPoly dir = parse_single(cfg.direction);
            const BifurcationReport rep =
                bifurcate(linear_family(base, dir), cfg.t, parse_box(cfg.box), tolerances(cfg).roots);
            json roots = json::array();
            for (const RootRecord &rec : rep.roots)
                roots.push_back(to_json(rec));
            json unresolved = json::array();
            for (const UnresolvedRegion &u : rep.unresolved)
                unresolved.push_back(to_json(u));
            json result{{"t", rep.t},
                        {"family", print(base + Complex(cfg.t, 0.0) * dir)},
                        {"roots", roots},
                        {"sum_sm", rep.sum_sm},
                        {"reference_sm", rep.reference_sm},
                        {"balanced", rep.balanced()}};
            json cert{{"certified", rep.unresolved.empty()}, {"unresolved", unresolved}};
            return Outcome{result, cert, rep.unresolved.empty() ? 0 : 2};
        };
    }
    // itop
    {
        auto *sub = app.add_subcommand("itop", "Local intersection number of f = 0 and g = 0 at a point");
        sub->add_option("--f", cfg.f, "First polynomial in z1, z2")->required();
        sub->add_option("--g", cfg.g, "Second polynomial in z1, z2")->required();
        sub->add_option("--at", cfg.at, "Intersection point z1,z2")->required();
        sub->add_option("--method", cfg.method, "auto | transverse | degree")
            ->check(CLI::IsMember({"auto", "transverse", "degree"}));
        sub->add_option("--epsilon", cfg.epsilon, "Sphere radius for the degree method")->check(CLI::PositiveNumber);
        inputs[sub] = [&] {
            json in{{"f", cfg.f}, {"g", cfg.g}, {"at", cfg.at}, {"method", cfg.method}};
            if (cfg.epsilon)
                in["epsilon"] = *cfg.epsilon;
            return in;
        };
        actions[sub] = [&] {
            const MixedPoly f = parse_pair(cfg.f);
            const MixedPoly g = parse_pair(cfg.g);
            const Point2 P = parse_point(cfg.at);
            auto by_degree = [&] {
                const DegreeResult d = cfg.epsilon ? degree_s3(f, g, P, *cfg.epsilon) : degree_s3_auto(f, g, P);
                json cert = to_json(d);
                cert["certified"] = true;
                cert["method"] = "degree";
                return Outcome{d.degree, cert};
            };
            if (cfg.method == "degree")
                return by_degree();
            if (cfg.method == "transverse") {
                const int v = itop_transverse(f, g, P);
                return Outcome{v, json{{"certified", true}, {"method", "transverse"},
                                       {"determinant", gradient_frame(f, g, P).determinant()}}};
            }
            try {
                const int v = itop_transverse(f, g, P);
                return Outcome{v, json{{"certified", true}, {"method", "transverse"},
                                       {"determinant", gradient_frame(f, g, P).determinant()}}};
            } catch (const TransversalityFailure &) {
                return by_degree();
            }
        };
    }
    // itop-line
    {
        auto *sub = app.add_subcommand("itop-line", "Intersection number with the line z2 = 0 at (alpha, 0)");
        poly_opt(sub, "Polynomial in z1, z2");
        sub->add_option("--at", cfg.at, "alpha as a+bi")->required();
        add_tol(sub);
        inputs[sub] = [&] { return json{{"poly", cfg.poly}, {"at", cfg.at}}; };
        actions[sub] = [&] {
            const MixedPoly fhat = parse_pair(cfg.poly);
            const Complex a = parse_complex(cfg.at);
            const int v = itop_line(fhat, a, tolerances(cfg).sm);
            return Outcome{v, json{{"certified", true}, {"restriction", print(restrict_variable(fhat, 1, 0.0))}}};
        };
    }
    // global-check
    {
        auto *sub = app.add_subcommand(
            "global-check", "Sum of local intersection numbers against the product of polar degrees");
        sub->add_option("--f", cfg.f, "First polynomial in z1, z2");
        sub->add_option("--g", cfg.g, "Second polynomial in z1, z2");
        sub->add_option("--points", cfg.points, "Complete intersection list z1,z2;z1,z2;...");
        sub->add_option("--dpolar-f", cfg.dpolar_f, "Polar degree of f");
        sub->add_option("--dpolar-g", cfg.dpolar_g, "Polar degree of g");
        sub->add_option("--poly", cfg.poly, "Line case: one-variable polynomial on the projective line");
        sub->add_option("--box", cfg.box, "Line case: box holding every affine root");
        add_tol(sub);
        inputs[sub] = [&] {
            if (!cfg.poly.empty())
                return json{{"poly", cfg.poly}, {"box", cfg.box}};
            return json{{"f", cfg.f}, {"g", cfg.g}, {"points", cfg.points}, {"dpolar_f", cfg.dpolar_f},
                        {"dpolar_g", cfg.dpolar_g}};
        };
        actions[sub] = [&] {
            GlobalSumReport rep;
            if (!cfg.poly.empty()) {
                require(!cfg.box.empty(), "the line case needs --box");
                rep = line_slice_check(parse_single(cfg.poly), parse_box(cfg.box), tolerances(cfg).roots);
            } else {
                require(!cfg.f.empty() && !cfg.g.empty() && !cfg.points.empty(),
                        "global-check needs --f, --g and --points (or --poly and --box)");
                rep = global_sum_check(parse_pair(cfg.f), parse_pair(cfg.g), parse_points(cfg.points), cfg.dpolar_f,
                                       cfg.dpolar_g);
            }
            const bool all_computed = std::all_of(rep.contributions.begin(), rep.contributions.end(),
                                                  [](const PointContribution &c) { return c.error.empty(); });
            json cert{{"certified", all_computed}};
            return Outcome{to_json(rep), cert, all_computed ? 0 : 2};
        };
    }
    // homogenize / dehomogenize
    {
        auto *sub = app.add_subcommand("homogenize", "Mixed homogenization with radial and polar degree");
        poly_opt(sub, "Polynomial in u or z1, z2");
        inputs[sub] = [&] { return json{{"poly", cfg.poly}}; };
        actions[sub] = [&] { return Outcome{homogenization_json(homogenize(parse(cfg.poly))), json{{"exact", true}}}; };
    }
    {
        auto *sub = app.add_subcommand("dehomogenize", "Homogenize, then restrict to the chart Z_k = 1");
        poly_opt(sub, "Polynomial in u or z1, z2");
        sub->add_option("--chart", cfg.chart, "Chart index k (0 gives back the input)")->check(CLI::Range(0, 2));
        inputs[sub] = [&] { return json{{"poly", cfg.poly}, {"chart", cfg.chart}}; };
        actions[sub] = [&] {
            const Homogenization F = homogenize(parse(cfg.poly));
            const MixedPoly g = dehomogenize(F, cfg.chart);
            return Outcome{json{{"text", print(g)}, {"homogenization", print_homogenization(F)}}, json{{"exact", true}}};
        };
    }
    // classify
    {
        auto *sub = app.add_subcommand("classify", "Wirtinger values, kind and sm at a root");
        poly_opt(sub, "Polynomial in u");
        sub->add_option("--at", cfg.at, "Root a+bi")->required();
        add_tol(sub);
        inputs[sub] = [&] { return json{{"poly", cfg.poly}, {"at", cfg.at}}; };
        actions[sub] = [&] {
            const RootRecord r = classify(parse_single(cfg.poly), parse_complex(cfg.at), tolerances(cfg).sm);
            return Outcome{to_json(r), json{{"certified", true}}};
        };
    }

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(std::move(reversed));
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e, out, err);
        if (code != 0)
            err << grammar_help() << "\n";
        return code == 0 ? 0 : 1;
    }

    CLI::App *sub = app.get_subcommands().front();
    const std::string command = sub->get_name();

    if (sub == trace_cmd) {
        try {
            const auto rows = trace(parse_single(cfg.poly), cfg.radius, cfg.samples, parse_complex(cfg.center));
            if (cfg.out.empty())
                out << format_trace_csv(rows);
            else
                emit_trace_csv(rows, cfg.out);
            return 0;
        } catch (const ParseError &e) {
            err << "error: " << e.what() << "\n" << grammar_help() << "\n";
            return 1;
        } catch (const std::exception &e) {
            err << "error: " << e.what() << "\n";
            return 1;
        }
    }

    json doc;
    doc["command"] = command;
    doc["input"] = inputs.at(sub)();
    int code = 0;
    try {
        Outcome o = actions.at(sub)();
        doc["result"] = std::move(o.result);
        doc["certification"] = std::move(o.certification);
        code = o.code;
    } catch (const InconclusiveError &e) {
        doc["result"] = nullptr;
        doc["certification"] = failure_certification(e);
        err << "inconclusive: " << e.what() << "\n";
        code = 2;
    } catch (const ParseError &e) {
        err << "error: " << e.what() << "\n" << grammar_help() << "\n";
        return 1;
    } catch (const std::exception &e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
    doc["version"] = MIXCURVE_VERSION;
    out << doc.dump(2) << "\n";
    return code;
}

}  // namespace mixcurve::cli
