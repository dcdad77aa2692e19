// SPDX-License-Identifier: Apache-2.0
// Command-line front end over the orbitloc C API.
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "orbitloc/orbitloc.h"

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitDegenerate = 3;
constexpr int kExitFailed = 4;

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct RunFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct AlgebraDel {
    void operator()(ol_algebra* p) const { ol_algebra_destroy(p); }
};
struct OrbitDel {
    void operator()(ol_orbit* p) const { ol_orbit_destroy(p); }
};
struct GridDel {
    void operator()(ol_grid* p) const { ol_grid_destroy(p); }
};
struct ReportDel {
    void operator()(ol_report* p) const { ol_report_destroy(p); }
};
using AlgebraHandle = std::unique_ptr<ol_algebra, AlgebraDel>;
using OrbitHandle = std::unique_ptr<ol_orbit, OrbitDel>;
using GridHandle = std::unique_ptr<ol_grid, GridDel>;
using ReportHandle = std::unique_ptr<ol_report, ReportDel>;

// Invalid input surfaces as a config error, anything else as a run failure.
void check(ol_status s, const std::string& what) {
    if (s == OL_OK)
        return;
    const std::string msg = what + ": " + ol_last_error();
    if (s == OL_ERR_INVALID_ARGUMENT || s == OL_ERR_NOT_REGULAR || s == OL_ERR_UNSUPPORTED ||
        s == OL_ERR_INDETERMINATE)
        throw ConfigError(msg);
    throw RunFailure(msg);
}

std::string num(double v) {
    if (std::isnan(v))
        return "nan";
    if (std::isinf(v))
        return v > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

json num_json(double v) { return std::isfinite(v) ? json(v) : json(num(v)); }

template <class T>
T get_or(const json& obj, const char* key, T fallback) {
    if (!obj.is_object() || !obj.contains(key))
        return fallback;
    try {
        return obj.at(key).get<T>();
    } catch (const json::exception& e) {
        throw ConfigError(std::string("field '") + key + "': " + e.what());
    }
}

struct Config {
    json raw;
    fs::path path;

    std::string family = "su";
    int n = 2;
    std::vector<double> lambda;
    std::string mode;
    int s0 = -1;
    std::vector<std::string> user_labels;
    std::vector<double> user_values;

    std::vector<std::vector<double>> basis; // empty: standard Cartan basis
    std::vector<std::vector<double>> ranges; // [lo, hi, steps]
    std::vector<std::vector<double>> points; // explicit grid coordinates

    bool has_oracle = false;
    std::uint64_t seed = 1;
    std::uint64_t samples = 1000000;
    int oracle_points = 20;
    std::vector<double> eps{0.1, 0.05, 0.025};
    double refine = 1.0;
    std::vector<double> x0;
    std::vector<double> sign_x{1.0};

    std::optional<double> c;

    std::string out_path;
    std::string format;
    std::string plot_csv;

    std::vector<double> twist; // 8 values, empty for the default shear
    double geometry_l = 0.5;
    std::vector<double> schedule;
    std::uint64_t geometry_samples = 1000;
};

std::vector<double> flat_matrix(const json& m, const char* what) {
    std::vector<double> out;
    if (!m.is_array() || m.size() != 2)
        throw ConfigError(std::string(what) + " must be a 2x2 array");
    for (const auto& row : m) {
        if (!row.is_array() || row.size() != 2)
            throw ConfigError(std::string(what) + " must be a 2x2 array");
        for (const auto& v : row)
            out.push_back(v.get<double>());
    }
    return out;
}

Config load_config(const std::string& path) {
    Config cfg;
    cfg.path = path;
    std::ifstream in(path);
    if (!in)
        throw ConfigError("cannot read config '" + path + "'");
    try {
        cfg.raw = json::parse(in, nullptr, true, true);
    } catch (const json::parse_error& e) {
        throw ConfigError("config '" + path + "' is not valid JSON: " + e.what());
    }
    if (!cfg.raw.is_object())
        throw ConfigError("config root must be an object");
    const json& r = cfg.raw;
    try {
        const json alg = r.value("algebra", json::object());
        cfg.family = get_or<std::string>(alg, "family", "su");
        cfg.n = get_or<int>(alg, "n", 2);
        if (cfg.family != "su" && cfg.family != "sl" && cfg.family != "sl_real")
            throw ConfigError("algebra.family must be 'su' or 'sl'");
        if (cfg.n < 2 || cfg.n > 6)
            throw ConfigError("algebra.n must lie in [2, 6]");

        const json orbit = r.value("orbit", json::object());
        cfg.lambda = get_or<std::vector<double>>(orbit, "lambda", {});
        cfg.mode = get_or<std::string>(orbit, "mode", cfg.family == "su" ? "compact" : "maximally_split");
        cfg.s0 = get_or<int>(orbit, "s0", -1);
        if (orbit.contains("multiplicities")) {
            for (const auto& [label, v] : orbit.at("multiplicities").items()) {
                cfg.user_labels.push_back(label);
                cfg.user_values.push_back(v.get<double>());
            }
        }

        const json grid = r.value("grid", json::object());
        cfg.basis = get_or<std::vector<std::vector<double>>>(grid, "basis", {});
        cfg.ranges = get_or<std::vector<std::vector<double>>>(grid, "ranges", {});
        cfg.points = get_or<std::vector<std::vector<double>>>(grid, "points", {});

        if (r.contains("oracle")) {
            const json& o = r.at("oracle");
            cfg.has_oracle = true;
            if (!o.contains("seed"))
                throw ConfigError("oracle block needs a 'seed'");
            cfg.seed = o.at("seed").get<std::uint64_t>();
            cfg.samples = get_or<std::uint64_t>(o, "samples", cfg.samples);
            cfg.oracle_points = get_or<int>(o, "points", cfg.oracle_points);
            cfg.eps = get_or<std::vector<double>>(o, "eps", cfg.eps);
            cfg.refine = get_or<double>(o, "refine", cfg.refine);
            cfg.x0 = get_or<std::vector<double>>(o, "x0", {});
            cfg.sign_x = get_or<std::vector<double>>(o, "x", cfg.sign_x);
        }
        if (r.contains("calibration") && r.at("calibration").contains("c"))
            cfg.c = r.at("calibration").at("c").get<double>();

        const json out = r.value("output", json::object());
        cfg.out_path = get_or<std::string>(out, "path", "");
        cfg.format = get_or<std::string>(out, "format", "");
        cfg.plot_csv = get_or<std::string>(out, "plot_csv", "");

        const json geo = r.value("geometry", json::object());
        if (geo.contains("twist")) {
            const json& t = geo.at("twist");
            const auto re = flat_matrix(t.at("re"), "geometry.twist.re");
            const auto im = t.contains("im") ? flat_matrix(t.at("im"), "geometry.twist.im") : std::vector<double>(4, 0.0);
            cfg.twist = re;
            cfg.twist.insert(cfg.twist.end(), im.begin(), im.end());
        }
        cfg.geometry_l = get_or<double>(geo, "l", cfg.geometry_l);
        cfg.schedule = get_or<std::vector<double>>(geo, "schedule", {});
        cfg.geometry_samples = get_or<std::uint64_t>(geo, "samples", cfg.geometry_samples);
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config: ") + e.what());
    }
    if (cfg.samples == 0 || cfg.geometry_samples == 0)
        throw ConfigError("sample counts must be positive");
    for (const auto& rg : cfg.ranges)
        if (rg.size() != 3 || rg[2] < 1 || rg[2] != std::floor(rg[2]))
            throw ConfigError("grid.ranges entries are [lo, hi, steps] with integer steps >= 1");
    if (cfg.schedule.empty())
        for (int k = 0; k <= 20; ++k)
            cfg.schedule.push_back(std::ldexp(1.0, -k));
    return cfg;
}

json resolved(const Config& cfg) {
    json j;
    j["algebra"] = {{"family", cfg.family}, {"n", cfg.n}};
    json orbit = {{"lambda", cfg.lambda}, {"mode", cfg.mode}, {"s0", cfg.s0}};
    if (!cfg.user_labels.empty()) {
        json m = json::object();
        for (size_t k = 0; k < cfg.user_labels.size(); ++k)
            m[cfg.user_labels[k]] = cfg.user_values[k];
        orbit["multiplicities"] = m;
    }
    j["orbit"] = orbit;
    json grid = {{"ranges", cfg.ranges}};
    if (!cfg.basis.empty())
        grid["basis"] = cfg.basis;
    if (!cfg.points.empty())
        grid["points"] = cfg.points;
    j["grid"] = grid;
    if (cfg.has_oracle)
        j["oracle"] = {{"seed", cfg.seed},     {"samples", cfg.samples}, {"points", cfg.oracle_points},
                       {"eps", cfg.eps},       {"refine", cfg.refine},   {"x0", cfg.x0},
                       {"x", cfg.sign_x}};
    if (cfg.c)
        j["calibration"] = {{"c", *cfg.c}};
    json geo = {{"l", cfg.geometry_l}, {"schedule", cfg.schedule}, {"samples", cfg.geometry_samples}};
    if (!cfg.twist.empty())
        geo["twist"] = {{"re", {{cfg.twist[0], cfg.twist[1]}, {cfg.twist[2], cfg.twist[3]}}},
                        {"im", {{cfg.twist[4], cfg.twist[5]}, {cfg.twist[6], cfg.twist[7]}}}};
    j["geometry"] = geo;
    return j;
}

struct Session {
    AlgebraHandle algebra;
    OrbitHandle orbit;
    int dim = 0;
    int rank = 0;
};

Session open(const Config& cfg) {
    Session s;
    ol_algebra* a = nullptr;
    check(ol_algebra_create(cfg.family.c_str(), cfg.n, &a), "algebra");
    s.algebra.reset(a);
    s.dim = ol_algebra_dimension(a);
    s.rank = ol_algebra_rank(a);
    if (cfg.lambda.empty())
        throw ConfigError("orbit.lambda is required");
    std::vector<const char*> labels;
    for (const auto& l : cfg.user_labels)
        labels.push_back(l.c_str());
    ol_orbit* o = nullptr;
    check(ol_orbit_create(a, cfg.lambda.data(), cfg.lambda.size(), cfg.mode.c_str(), cfg.s0, labels.data(),
                          cfg.user_values.data(), labels.size(), &o),
          "orbit");
    s.orbit.reset(o);
    return s;
}

struct Grid {
    std::vector<std::vector<double>> coords; // per row, one value per grid direction
    std::vector<double> xs;                  // per row, dim algebra coordinates
};

Grid build_grid(const Config& cfg, const Session& s) {
    std::vector<std::vector<double>> basis = cfg.basis;
    if (basis.empty()) {
        std::vector<double> flat(static_cast<size_t>(s.rank * s.dim));
        check(ol_algebra_cartan_basis(s.algebra.get(), flat.data()), "cartan basis");
        for (int k = 0; k < s.rank; ++k)
            basis.emplace_back(flat.begin() + k * s.dim, flat.begin() + (k + 1) * s.dim);
    }
    for (const auto& b : basis)
        if (static_cast<int>(b.size()) != s.dim)
            throw ConfigError("grid.basis vectors need " + std::to_string(s.dim) + " coordinates");

    Grid g;
    if (!cfg.points.empty()) {
        g.coords = cfg.points;
    } else {
        if (cfg.ranges.size() != basis.size())
            throw ConfigError("grid.ranges needs one [lo, hi, steps] per basis direction (" +
                              std::to_string(basis.size()) + ")");
        g.coords.push_back({});
        for (const auto& rg : cfg.ranges) {
            const int steps = static_cast<int>(rg[2]);
            std::vector<std::vector<double>> next;
            for (const auto& prefix : g.coords)
                for (int i = 0; i < steps; ++i) {
                    auto row = prefix;
                    row.push_back(steps == 1 ? rg[0] : rg[0] + (rg[1] - rg[0]) * i / (steps - 1));
                    next.push_back(std::move(row));
                }
            g.coords = std::move(next);
        }
    }
    for (const auto& c : g.coords) {
        if (c.size() != basis.size())
            throw ConfigError("grid.points rows need one coordinate per basis direction");
        for (int d = 0; d < s.dim; ++d) {
            double v = 0;
            for (size_t k = 0; k < basis.size(); ++k)
                v += c[k] * basis[k][static_cast<size_t>(d)];
            g.xs.push_back(v);
        }
    }
    return g;
}

std::string resolve_format(const std::string& flag, const Config& cfg, const std::string& out) {
    std::string f = !flag.empty() ? flag : cfg.format;
    if (f.empty())
        f = fs::path(out).extension() == ".json" ? "json" : "csv";
    if (f != "csv" && f != "json")
        throw ConfigError("format must be csv or json");
    return f;
}

void emit(const std::string& path, const std::string& text) {
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw ConfigError("cannot write '" + path + "'");
    out << text;
}

struct Common {
    std::string config;
    std::string out;
    std::string format;
    std::optional<std::uint64_t> seed;
    std::string suite = "all";
};

std::string csv_prefix_header(size_t k) {
    std::string h;
    for (size_t i = 0; i < k; ++i)
        h += "x" + std::to_string(i + 1) + ",";
    return h + "re_f,im_f,degenerate,mode,s0,version";
}

int cmd_eval(const Common& opt) {
    const Config cfg = load_config(opt.config);
    const Session s = open(cfg);
    const Grid g = build_grid(cfg, s);
    const std::string out = opt.out.empty() ? cfg.out_path : opt.out;
    const std::string format = resolve_format(opt.format, cfg, out);

    ol_grid* raw = nullptr;
    check(ol_grid_evaluate(s.orbit.get(), g.xs.data(), g.coords.size(), &raw), "grid");
    const GridHandle grid(raw);
    const size_t k = g.coords.empty() ? 0 : g.coords[0].size();

    std::ostringstream os;
    std::ostringstream plot;
    json rows = json::array();
    size_t degenerate = 0;
    if (format == "csv")
        os << csv_prefix_header(k) << "\n";
    if (!cfg.plot_csv.empty())
        plot << "row,quantity,value\n";
    for (size_t r = 0; r < g.coords.size(); ++r) {
        ol_value v{};
        check(ol_grid_value(grid.get(), r, &v), "grid row");
        degenerate += v.degenerate ? 1 : 0;
        if (format == "csv") {
            for (double c : g.coords[r])
                os << num(c) << ",";
            os << num(v.re) << "," << num(v.im) << "," << v.degenerate << "," << cfg.mode << "," << cfg.s0 << ","
               << ol_version() << "\n";
        } else {
            json row = {{"x", g.coords[r]},
                        {"re_f", num_json(v.re)},
                        {"im_f", num_json(v.im)},
                        {"degenerate", v.degenerate != 0},
                        {"support_empty", v.support_empty != 0}};
            if (const std::string err = ol_grid_row_error(grid.get(), r); !err.empty())
                row["error"] = err;
            json terms = json::array();
            for (size_t t = 0; t < ol_grid_term_count(grid.get(), r); ++t) {
                ol_term term{};
                check(ol_grid_term(grid.get(), r, t, &term), "grid term");
                terms.push_back({{"w", term.label},
                                 {"exponent", {num_json(term.exponent_re), num_json(term.exponent_im)}},
                                 {"denominator", {num_json(term.denominator_re), num_json(term.denominator_im)}},
                                 {"multiplicity", term.multiplicity},
                                 {"value", {num_json(term.value_re), num_json(term.value_im)}}});
            }
            row["terms"] = terms;
            rows.push_back(row);
        }
        if (!cfg.plot_csv.empty())
            plot << r << ",re_f," << num(v.re) << "\n" << r << ",im_f," << num(v.im) << "\n";
    }
    if (format == "json") {
        json doc = {{"version", ol_version()}, {"command", "eval"}, {"config", resolved(cfg)}, {"rows", rows}};
        os << doc.dump(2) << "\n";
    }
    emit(out, os.str());
    if (!cfg.plot_csv.empty())
        emit(cfg.plot_csv, plot.str());
    if (!g.coords.empty() && degenerate == g.coords.size()) {
        std::cerr << "every grid point is degenerate\n";
        return kExitDegenerate;
    }
    return kExitOk;
}

int cmd_verify(const Common& opt) {
    const Config cfg = load_config(opt.config);
    ol_verify_options vo;
    ol_verify_options_init(&vo);
    vo.family = cfg.family.c_str();
    vo.n = cfg.n;
    if (!cfg.lambda.empty()) {
        vo.lambda = cfg.lambda.data();
        vo.lambda_len = cfg.lambda.size();
    }
    vo.s0 = cfg.s0;
    vo.seed = opt.seed.value_or(cfg.seed);
    if (cfg.has_oracle) {
        vo.samples = cfg.samples;
        vo.points = cfg.oracle_points;
        vo.eps = cfg.eps.data();
        vo.eps_len = cfg.eps.size();
    }
    if (!cfg.twist.empty())
        vo.twist = cfg.twist.data();

    ol_report* raw = nullptr;
    check(ol_verify(opt.suite.c_str(), &vo, &raw), "verify");
    const ReportHandle report(raw);

    const std::string out = opt.out.empty() ? cfg.out_path : opt.out;
    const std::string format = resolve_format(opt.format, cfg, out);
    std::ostringstream os;
    json checks = json::array();
    if (format == "csv")
        os << "check,measured,threshold,passed,detail\n";
    for (size_t i = 0; i < ol_report_size(report.get()); ++i) {
        ol_check c{};
        check(ol_report_check(report.get(), i, &c), "report");
        std::cout << (c.passed ? "PASS " : "FAIL ") << c.name << ": measured " << num(c.measured) << ", threshold "
                  << num(c.threshold) << (*c.detail ? std::string(" (") + c.detail + ")" : "") << "\n";
        if (format == "csv")
            os << '"' << c.name << "\"," << num(c.measured) << "," << num(c.threshold) << "," << c.passed << ",\""
               << c.detail << "\"\n";
        else
            checks.push_back({{"check", c.name},
                              {"measured", num_json(c.measured)},
                              {"threshold", num_json(c.threshold)},
                              {"passed", c.passed != 0},
                              {"detail", c.detail}});
    }
    const bool passed = ol_report_passed(report.get()) != 0;
    if (format == "json") {
        json cfgj = resolved(cfg);
        cfgj["suite"] = opt.suite;
        cfgj["seed"] = vo.seed;
        os << json{{"version", ol_version()}, {"command", "verify"}, {"config", cfgj}, {"passed", passed}, {"checks", checks}}
                  .dump(2)
           << "\n";
    }
    if (!out.empty())
        emit(out, os.str());
    return passed ? kExitOk : kExitFailed;
}

std::vector<double> default_x0(const Config& cfg) {
    if (!cfg.x0.empty())
        return cfg.x0;
    std::vector<double> c;
    double acc = 0;
    for (int k = 0; k + 1 < cfg.n; ++k)
        c.push_back(acc += 0.04 * (cfg.n - 1 - 2 * k) / (cfg.n - 1));
    return c;
}

std::vector<double> cartan_point(const Session& s, const std::vector<double>& coords, const char* what) {
    if (static_cast<int>(coords.size()) != s.rank)
        throw ConfigError(std::string(what) + " needs " + std::to_string(s.rank) + " Cartan coordinates");
    std::vector<double> flat(static_cast<size_t>(s.rank * s.dim));
    check(ol_algebra_cartan_basis(s.algebra.get(), flat.data()), "cartan basis");
    std::vector<double> x(static_cast<size_t>(s.dim), 0.0);
    for (int k = 0; k < s.rank; ++k)
        for (int d = 0; d < s.dim; ++d)
            x[static_cast<size_t>(d)] += coords[static_cast<size_t>(k)] * flat[static_cast<size_t>(k * s.dim + d)];
    return x;
}

int cmd_calibrate(const Common& opt) {
    const Config cfg = load_config(opt.config);
    if (!cfg.has_oracle)
        throw ConfigError("calibrate needs an 'oracle' block (seed, samples)");
    const Session s = open(cfg);
    const std::uint64_t seed = opt.seed.value_or(cfg.seed);

    json raw = cfg.raw;
    json cal = json::object();
    json prov = json::object();
    if (cfg.mode == "compact") {
        const auto x0c = default_x0(cfg);
        const auto x0 = cartan_point(s, x0c, "oracle.x0");
        ol_calibration c{};
        check(ol_calibrate_constant(s.orbit.get(), x0.data(), seed, cfg.samples, &c), "calibration");
        cal["c"] = c.c;
        cal["c_stderr"] = c.c_stderr;
        cal["s0"] = cfg.s0;
        prov = {{"method", "monte_carlo"},
                {"seed", seed},
                {"samples", cfg.samples},
                {"stderr", c.c_stderr},
                {"x0", x0c},
                {"reference", {c.reference_re, c.reference_im}},
                {"raw_mean", {c.raw.re, c.raw.im}},
                {"raw_stderr", c.raw.std_error}};
        std::cout << "c = " << num(c.c) << " +- " << num(c.c_stderr) << "\n";
    } else {
        const auto x = cartan_point(s, cfg.sign_x, "oracle.x");
        ol_sign_calibration sc{};
        check(ol_calibrate_sign(s.orbit.get(), x.data(), cfg.eps.data(), cfg.eps.size(), cfg.refine, &sc), "calibration");
        cal["s0"] = sc.s0;
        raw["orbit"]["s0"] = sc.s0;
        prov = {{"method", "damped_extrapolation"},
                {"seed", seed},
                {"eps", cfg.eps},
                {"refine", cfg.refine},
                {"x", cfg.sign_x},
                {"extrapolated", sc.extrapolated},
                {"formula_value_s0_plus", sc.formula_value}};
        std::cout << "s0 = " << sc.s0 << " (extrapolated " << num(sc.extrapolated) << ")\n";
    }
    cal["_provenance"] = prov;
    raw["calibration"] = cal;

    fs::path out = opt.out;
    if (out.empty())
        out = cfg.path.parent_path() / (cfg.path.stem().string() + ".calibrated.json");
    std::error_code ec;
    if (fs::exists(out) && fs::equivalent(out, cfg.path, ec))
        throw ConfigError("calibrate never overwrites its input config");
    emit(out.string(), raw.dump(2) + "\n");
    std::cout << "wrote " << out.string() << "\n";
    return kExitOk;
}

int cmd_oracle(const Common& opt) {
    const Config cfg = load_config(opt.config);
    if (!cfg.has_oracle)
        throw ConfigError("oracle needs an 'oracle' block (seed, samples)");
    const Session s = open(cfg);
    const Grid g = build_grid(cfg, s);
    const std::uint64_t seed = opt.seed.value_or(cfg.seed);
    const std::string out = opt.out.empty() ? cfg.out_path : opt.out;
    const std::string format = resolve_format(opt.format, cfg, out);
    const bool compact = cfg.mode == "compact";
    const size_t k = g.coords.empty() ? 0 : g.coords[0].size();

    double c = 0;
    if (compact) {
        if (cfg.c) {
            c = *cfg.c;
        } else {
            const auto x0 = cartan_point(s, default_x0(cfg), "oracle.x0");
            ol_calibration cal{};
            check(ol_calibrate_constant(s.orbit.get(), x0.data(), seed, cfg.samples, &cal), "calibration");
            c = cal.c;
        }
    }

    std::ostringstream os;
    json rows = json::array();
    if (format == "csv")
        os << csv_prefix_header(k) << (compact ? ",mc_re,mc_im,mc_stderr,z\n" : ",damped_extrapolated,relative_deviation\n");
    size_t misses = 0, used = 0;
    for (size_t r = 0; r < g.coords.size(); ++r) {
        const double* x = g.xs.data() + r * static_cast<size_t>(s.dim);
        ol_value v{};
        check(ol_evaluate(s.orbit.get(), x, &v), "evaluate");
        json row = {{"x", g.coords[r]}, {"re_f", num_json(v.re)}, {"im_f", num_json(v.im)}, {"degenerate", v.degenerate != 0}};
        std::string extra;
        if (v.degenerate) {
            extra = compact ? "nan,nan,nan,nan" : "nan,nan";
        } else if (compact) {
            ol_mc_estimate mc{};
            check(ol_mc_integral(s.orbit.get(), x, seed + 1 + r, cfg.samples, c, &mc), "monte carlo");
            const double z = std::hypot(mc.re - v.re, mc.im - v.im) / mc.std_error;
            ++used;
            misses += z > 3 ? 1 : 0;
            extra = num(mc.re) + "," + num(mc.im) + "," + num(mc.std_error) + "," + num(z);
            row["mc"] = {{"re", mc.re}, {"im", mc.im}, {"stderr", mc.std_error}, {"z", num_json(z)}};
        } else {
            std::vector<double> est(cfg.eps.size());
            check(ol_damped_integral(s.orbit.get(), x, cfg.eps.data(), cfg.eps.size(), cfg.refine, est.data()), "damped");
            // Neville extrapolation to eps = 0
            std::vector<double> p = est;
            for (size_t m = 1; m < p.size(); ++m)
                for (size_t i = p.size() - 1; i >= m; --i)
                    p[i] = (cfg.eps[i - m] * p[i] - cfg.eps[i] * p[i - 1]) / (cfg.eps[i - m] - cfg.eps[i]);
            const double ext = p.back();
            const double dev = std::abs(ext - v.re) / std::max(std::abs(v.re), 1e-300);
            ++used;
            misses += dev > 0.1 ? 1 : 0;
            extra = num(ext) + "," + num(dev);
            row["damped"] = {{"estimates", est}, {"extrapolated", ext}, {"relative_deviation", dev}};
        }
        if (format == "csv") {
            for (double cc : g.coords[r])
                os << num(cc) << ",";
            os << num(v.re) << "," << num(v.im) << "," << v.degenerate << "," << cfg.mode << "," << cfg.s0 << ","
               << ol_version() << "," << extra << "\n";
        }
        rows.push_back(row);
    }
    if (format == "json") {
        json cfgj = resolved(cfg);
        cfgj["seed"] = seed;
        if (compact)
            cfgj["c"] = c;
        os << json{{"version", ol_version()}, {"command", "oracle"}, {"config", cfgj}, {"misses", misses}, {"rows", rows}}
                  .dump(2)
           << "\n";
    }
    emit(out, os.str());
    const size_t allowed = compact ? used / 10 : 0;
    std::cerr << "oracle: " << misses << " of " << used << " points outside tolerance (allowed " << allowed << ")\n";
    return misses <= allowed ? kExitOk : kExitFailed;
}

int cmd_cycle_limit(const Common& opt) {
    const Config cfg = load_config(opt.config);
    const std::uint64_t seed = opt.seed.value_or(cfg.seed);
    std::vector<double> twist = cfg.twist;
    if (twist.empty())
        twist = {1, 0, 0, 1, 0, 0.5, 0, 0};
    std::vector<ol_scaling_row> rows(cfg.schedule.size());
    ol_scaling_summary sum{};
    check(ol_cycle_limit(twist.data(), cfg.geometry_l, cfg.schedule.data(), cfg.schedule.size(), cfg.geometry_samples,
                         seed, rows.data(), &sum),
          "cycle limit");
    const std::string out = opt.out.empty() ? cfg.out_path : opt.out;
    const std::string format = resolve_format(opt.format, cfg, out);
    std::ostringstream os;
    if (format == "csv") {
        os << "s,conormal_distance,imaginary_defect,version\n";
        for (const auto& r : rows)
            os << num(r.s) << "," << num(r.conormal_distance) << "," << num(r.imaginary_defect) << "," << ol_version() << "\n";
    } else {
        json jr = json::array();
        for (const auto& r : rows)
            jr.push_back({{"s", r.s}, {"conormal_distance", r.conormal_distance}, {"imaginary_defect", r.imaginary_defect}});
        json cfgj = resolved(cfg);
        cfgj["seed"] = seed;
        cfgj["geometry"]["twist"] = {{"re", {{twist[0], twist[1]}, {twist[2], twist[3]}}},
                                     {"im", {{twist[4], twist[5]}, {twist[6], twist[7]}}}};
        os << json{{"version", ol_version()},
                   {"command", "cycle-limit"},
                   {"config", cfgj},
                   {"summary",
                    {{"identity_residual", sum.identity_residual},
                     {"slope_conormal", num_json(sum.slope_distance)},
                     {"slope_imaginary", num_json(sum.slope_imaginary)},
                     {"monotone", sum.monotone != 0}}},
                   {"rows", jr}}
                  .dump(2)
           << "\n";
    }
    emit(out, os.str());
    std::cerr << "slope " << num(sum.slope_distance) << " / " << num(sum.slope_imaginary) << ", monotone "
              << sum.monotone << "\n";
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Fourier transforms of regular coadjoint orbits by fixed-point localization"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(ol_version()));
    Common opt;
    std::uint64_t seed = 0;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", opt.config, "run configuration (JSON)")->required();
        sub->add_option("--out", opt.out, "result file (default: output.path or stdout)");
        sub->add_option("--format", opt.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
        sub->add_option("--seed", seed, "override the oracle seed");
    };
    CLI::App* eval = app.add_subcommand("eval", "evaluate F on the configured grid");
    CLI::App* verify = app.add_subcommand("verify", "run a property suite");
    CLI::App* calibrate = app.add_subcommand("calibrate", "calibrate c or s0 into a sibling config");
    CLI::App* oracle = app.add_subcommand("oracle", "compare the grid with the numeric oracle");
    CLI::App* cycle = app.add_subcommand("cycle-limit", "scaling limit of the twisted moment map cycle");
    for (auto* sub : {eval, verify, calibrate, oracle, cycle})
        add_common(sub);
    verify->add_option("--suite", opt.suite, "algebra|fixedpoints|localize|geometry|oracle|all");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitConfig;
    }
    for (auto* sub : {eval, verify, calibrate, oracle, cycle})
        if (sub->count("--seed"))
            opt.seed = seed;

    try {
        if (*eval)
            return cmd_eval(opt);
        if (*verify)
            return cmd_verify(opt);
        if (*calibrate)
            return cmd_calibrate(opt);
        if (*oracle)
            return cmd_oracle(opt);
        return cmd_cycle_limit(opt);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const RunFailure& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitFailed;
    }
}
