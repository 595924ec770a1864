#include "tsfrac/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

#include "tsfrac/errors.hpp"
#include "tsfrac/format.hpp"
#include "tsfrac/mesh.hpp"

namespace tsfrac {

using json = nlohmann::ordered_json;

const char* to_string(Command c) noexcept {
    switch (c) {
    case Command::verify: return "verify";
    case Command::solve: return "solve";
    case Command::bounds: return "bounds";
    }
    return "unknown";
}

namespace {

const char* method_name(SolverSpec::Method m) {
    switch (m) {
    case SolverSpec::Method::automatic: return "auto";
    case SolverSpec::Method::minimize: return "minimize";
    case SolverSpec::Method::mountain_pass: return "mountain_pass";
    case SolverSpec::Method::multistart: return "multistart";
    }
    return "auto";
}

void check_keys(const json& obj, const std::string& prefix, std::initializer_list<const char*> allowed) {
    std::set<std::string> ok(allowed.begin(), allowed.end());
    for (const auto& item : obj.items())
        if (!ok.count(item.key())) throw SchemaError(prefix + item.key(), "unknown key");
}

double number(const json& j, const std::string& field) {
    if (!j.is_number()) throw SchemaError(field, "expected a number");
    const double v = j.get<double>();
    if (!std::isfinite(v)) throw SchemaError(field, "must be finite");
    return v;
}

std::uint64_t count(const json& j, const std::string& field) {
    if (j.is_number_unsigned()) return j.get<std::uint64_t>();
    if (j.is_number_integer()) throw SchemaError(field, "must be non-negative");
    throw SchemaError(field, "expected an integer");
}

std::string text(const json& j, const std::string& field) {
    if (!j.is_string()) throw SchemaError(field, "expected a string");
    return j.get<std::string>();
}

std::vector<double> number_array(const json& j, const std::string& field) {
    if (!j.is_array()) throw SchemaError(field, "expected an array of numbers");
    std::vector<double> out;
    for (std::size_t i = 0; i < j.size(); ++i) out.push_back(number(j[i], field + "[" + std::to_string(i) + "]"));
    return out;
}

FieldSpec field_spec(const json& j, const std::string& field) {
    FieldSpec f;
    if (j.is_number()) {
        f.constant = number(j, field);
        return f;
    }
    if (!j.is_object()) throw SchemaError(field, "expected a number or {nodes, values}");
    check_keys(j, field + ".", {"nodes", "values"});
    if (!j.contains("nodes")) throw SchemaError(field + ".nodes", "missing required key");
    if (!j.contains("values")) throw SchemaError(field + ".values", "missing required key");
    f.nodes = number_array(j["nodes"], field + ".nodes");
    f.values = number_array(j["values"], field + ".values");
    return f;
}

json emit_field(const FieldSpec& f) {
    if (!f.is_table()) return f.constant;
    return json{{"nodes", f.nodes}, {"values", f.values}};
}

void check_field(const FieldSpec& f, const std::string& field) {
    if (!f.is_table()) {
        if (!std::isfinite(f.constant) || f.constant < 0.0) throw SchemaError(field, "must be >= 0");
        return;
    }
    if (f.nodes.size() != f.values.size())
        throw SchemaError(field + ".values", "must have as many entries as nodes");
    for (std::size_t i = 0; i < f.nodes.size(); ++i) {
        if (!std::isfinite(f.nodes[i]) || (i > 0 && !(f.nodes[i] > f.nodes[i - 1])))
            throw SchemaError(field + ".nodes", "must be finite and strictly increasing");
        if (!std::isfinite(f.values[i]) || f.values[i] < 0.0) throw SchemaError(field + ".values", "must be >= 0");
    }
}

ScaleSpec scale_spec(const json& j) {
    ScaleSpec s;
    if (j.is_string()) {
        s.name = j.get<std::string>();
        if (s.name.empty()) throw SchemaError("scale", "empty scale name");
        return s;
    }
    if (!j.is_object()) throw SchemaError("scale", "expected a preset name or {segments: [[lo, hi], ...]}");
    check_keys(j, "scale.", {"segments"});
    if (!j.contains("segments")) throw SchemaError("scale.segments", "missing required key");
    const json& segs = j["segments"];
    if (!segs.is_array() || segs.empty()) throw SchemaError("scale.segments", "expected a nonempty array");
    for (std::size_t i = 0; i < segs.size(); ++i) {
        const std::string f = "scale.segments[" + std::to_string(i) + "]";
        const auto pair = number_array(segs[i], f);
        if (pair.size() != 2) throw SchemaError(f, "expected [lo, hi]");
        s.segments.push_back({pair[0], pair[1]});
    }
    return s;
}

NonlinearitySpec nonlinearity_spec(const json& j) {
    if (!j.is_object()) throw SchemaError("nonlinearity", "expected an object");
    if (!j.contains("type")) throw SchemaError("nonlinearity.type", "missing required key");
    NonlinearitySpec g;
    const std::string type = text(j["type"], "nonlinearity.type");
    if (type == "power") {
        check_keys(j, "nonlinearity.", {"type", "c", "mu"});
        g.type = NonlinearitySpec::Type::power;
        if (j.contains("c")) g.c = number(j["c"], "nonlinearity.c");
        if (j.contains("mu")) g.mu = number(j["mu"], "nonlinearity.mu");
    } else if (type == "weighted_power") {
        check_keys(j, "nonlinearity.", {"type", "r", "d"});
        g.type = NonlinearitySpec::Type::weighted_power;
        if (j.contains("r")) g.r = number(j["r"], "nonlinearity.r");
        if (j.contains("d")) g.d = field_spec(j["d"], "nonlinearity.d");
    } else {
        throw SchemaError("nonlinearity.type", "expected \"power\" or \"weighted_power\"");
    }
    return g;
}

SolverSpec solver_spec(const json& j) {
    if (!j.is_object()) throw SchemaError("solver", "expected an object");
    check_keys(j, "solver.", {"method", "tol_grad", "max_iter", "path_points", "seed", "starts"});
    SolverSpec s;
    if (j.contains("method")) {
        const std::string m = text(j["method"], "solver.method");
        if (m == "auto") s.method = SolverSpec::Method::automatic;
        else if (m == "minimize") s.method = SolverSpec::Method::minimize;
        else if (m == "mountain_pass") s.method = SolverSpec::Method::mountain_pass;
        else if (m == "multistart") s.method = SolverSpec::Method::multistart;
        else throw SchemaError("solver.method", "expected auto, minimize, mountain_pass or multistart");
    }
    if (j.contains("tol_grad")) s.tol_grad = number(j["tol_grad"], "solver.tol_grad");
    if (j.contains("max_iter")) s.max_iter = count(j["max_iter"], "solver.max_iter");
    if (j.contains("path_points")) s.path_points = count(j["path_points"], "solver.path_points");
    if (j.contains("seed")) s.seed = count(j["seed"], "solver.seed");
    if (j.contains("starts")) s.starts = count(j["starts"], "solver.starts");
    return s;
}

std::string trim_comment(std::string_view line) {
    const auto hash = line.find('#');
    return std::string(line.substr(0, hash));
}

} // namespace

std::vector<std::string> preset_names() { return {"unit-interval", "integer-4", "mixed"}; }

bool is_preset(std::string_view name) {
    const auto names = preset_names();
    return std::find(names.begin(), names.end(), name) != names.end();
}

TimeScale preset_scale(std::string_view name) {
    if (name == "unit-interval") return TimeScale::build({{0.0, 1.0}});
    if (name == "integer-4") return TimeScale::build({{0.0, 0.0}, {1.0, 1.0}, {2.0, 2.0}, {3.0, 3.0}});
    if (name == "mixed") return TimeScale::build({{0.0, 0.0}, {1.0, 2.0}, {3.0, 3.0}});
    throw SchemaError("scale", "unknown preset '" + std::string(name) + "'");
}

TimeScale parse_time_scale_text(std::string_view body) {
    std::vector<Segment> segments;
    std::size_t line_no = 0;
    std::size_t start = 0;
    while (start <= body.size()) {
        const auto end = std::min(body.find('\n', start), body.size());
        ++line_no;
        const std::string line = trim_comment(body.substr(start, end - start));
        start = end + 1;

        std::vector<double> values;
        std::istringstream words(line);
        std::string word;
        while (words >> word) {
            double v = 0.0;
            const auto [ptr, ec] = std::from_chars(word.data(), word.data() + word.size(), v);
            if (ec != std::errc{} || ptr != word.data() + word.size() || !std::isfinite(v))
                throw SchemaError("scale:line " + std::to_string(line_no), "not a number: '" + word + "'");
            values.push_back(v);
        }
        if (values.empty()) continue;
        if (values.size() > 2)
            throw SchemaError("scale:line " + std::to_string(line_no), "expected 'lo hi' or a single point");
        segments.push_back({values.front(), values.back()});
        if (end == body.size()) break;
    }
    try {
        return TimeScale::build(std::move(segments));
    } catch (const SchemaError&) {
        throw;
    } catch (const Error& e) {
        throw SchemaError("scale", e.what());
    }
}

TimeScale resolve_scale(const ScaleSpec& spec, const std::filesystem::path& base) {
    if (spec.name.empty()) {
        try {
            return TimeScale::build(spec.segments);
        } catch (const Error& e) {
            throw SchemaError("scale.segments", e.what());
        }
    }
    if (is_preset(spec.name)) return preset_scale(spec.name);
    const std::filesystem::path path = base.empty() ? std::filesystem::path(spec.name) : base / spec.name;
    std::ifstream in(path);
    if (!in) throw SchemaError("scale", "not a preset and cannot open file '" + path.string() + "'");
    std::ostringstream body;
    body << in.rdbuf();
    return parse_time_scale_text(body.str());
}

void validate(const RunSpec& s) {
    const bool solving = s.command == Command::solve;
    if (s.command != Command::verify && s.scale.name.empty() && s.scale.segments.empty())
        throw SchemaError("scale", "missing required key");
    if (s.scale.name.empty() && !s.scale.segments.empty()) {
        for (std::size_t i = 0; i < s.scale.segments.size(); ++i)
            if (!std::isfinite(s.scale.segments[i].lo) || !std::isfinite(s.scale.segments[i].hi))
                throw SchemaError("scale.segments[" + std::to_string(i) + "]", "must be finite");
        resolve_scale(s.scale);
    }
    if (!(s.h_max > 0.0) || !std::isfinite(s.h_max)) throw SchemaError("h_max", "must be positive");
    if (!(s.alpha > 0.0 && s.alpha <= 1.0)) throw SchemaError("alpha", "alpha out of (0,1]");
    if (!(s.p > 1.0) || !std::isfinite(s.p)) throw SchemaError("p", "p must exceed 1");
    if (!(s.beta > 0.0) || !std::isfinite(s.beta)) throw SchemaError("beta", "beta must be positive");
    if (!(s.rho > 0.0) || !std::isfinite(s.rho)) throw SchemaError("rho", "rho must be positive");
    if (solving && !(s.alpha * s.p > 1.0)) throw SchemaError("alpha", "alpha·p must exceed 1");
    check_field(s.lambda, "lambda");

    const auto& g = s.nonlinearity;
    const std::string p2 = format_double(s.p * s.p);
    if (g.type == NonlinearitySpec::Type::power) {
        if (!(g.c > 0.0) || !std::isfinite(g.c)) throw SchemaError("nonlinearity.c", "c must be positive");
        if (!std::isfinite(g.mu) || !(g.mu > 1.0)) throw SchemaError("nonlinearity.mu", "ar_exponent must exceed 1");
        if (solving && !(g.mu > s.p * s.p))
            throw SchemaError("nonlinearity.mu", "ar_exponent must exceed p² = " + p2);
    } else {
        if (!std::isfinite(g.r) || !(g.r > 1.0)) throw SchemaError("nonlinearity.r", "r must exceed 1");
        if (solving && !(g.r < s.p * s.p))
            throw SchemaError("nonlinearity.r", "r must be below p² = " + p2);
        check_field(g.d, "nonlinearity.d");
    }

    const auto& sv = s.solver;
    if (!(sv.tol_grad > 0.0) || !std::isfinite(sv.tol_grad)) throw SchemaError("solver.tol_grad", "must be positive");
    if (sv.max_iter < 1) throw SchemaError("solver.max_iter", "must be at least 1");
    if (sv.path_points < 3) throw SchemaError("solver.path_points", "must be at least 3");
    if (sv.starts < 1) throw SchemaError("solver.starts", "must be at least 1");
}

RunSpec parse_config(std::string_view body, Command command) {
    json doc;
    try {
        doc = json::parse(body.begin(), body.end());
    } catch (const json::parse_error& e) {
        throw SchemaError("<document>", std::string("invalid JSON: ") + e.what());
    }
    if (!doc.is_object()) throw SchemaError("<document>", "expected a JSON object");
    check_keys(doc, "", {"scale", "h_max", "alpha", "p", "beta", "rho", "lambda", "nonlinearity", "solver", "out",
                         "svg"});

    const auto require = [&](const char* key) {
        if (!doc.contains(key)) throw SchemaError(key, "missing required key");
    };
    if (command == Command::solve) {
        for (const char* key : {"scale", "alpha", "p", "nonlinearity"}) require(key);
    } else if (command == Command::bounds) {
        for (const char* key : {"scale", "alpha", "p"}) require(key);
    }

    RunSpec s;
    s.command = command;
    if (doc.contains("scale")) s.scale = scale_spec(doc["scale"]);
    if (doc.contains("h_max")) s.h_max = number(doc["h_max"], "h_max");
    if (doc.contains("alpha")) s.alpha = number(doc["alpha"], "alpha");
    if (doc.contains("p")) s.p = number(doc["p"], "p");
    if (doc.contains("beta")) s.beta = number(doc["beta"], "beta");
    if (doc.contains("rho")) s.rho = number(doc["rho"], "rho");
    if (doc.contains("lambda")) s.lambda = field_spec(doc["lambda"], "lambda");
    if (doc.contains("nonlinearity")) s.nonlinearity = nonlinearity_spec(doc["nonlinearity"]);
    if (doc.contains("solver")) s.solver = solver_spec(doc["solver"]);
    if (doc.contains("out")) s.out = text(doc["out"], "out");
    if (doc.contains("svg")) s.svg = text(doc["svg"], "svg");
    validate(s);
    return s;
}

std::string emit_config(const RunSpec& s) {
    json doc;
    if (!s.scale.name.empty()) {
        doc["scale"] = s.scale.name;
    } else {
        json segs = json::array();
        for (const auto& seg : s.scale.segments) segs.push_back({seg.lo, seg.hi});
        doc["scale"] = json{{"segments", segs}};
    }
    doc["h_max"] = s.h_max;
    doc["alpha"] = s.alpha;
    doc["p"] = s.p;
    doc["beta"] = s.beta;
    doc["rho"] = s.rho;
    doc["lambda"] = emit_field(s.lambda);
    if (s.nonlinearity.type == NonlinearitySpec::Type::power)
        doc["nonlinearity"] = json{{"type", "power"}, {"c", s.nonlinearity.c}, {"mu", s.nonlinearity.mu}};
    else
        doc["nonlinearity"] = json{{"type", "weighted_power"}, {"r", s.nonlinearity.r}, {"d", emit_field(s.nonlinearity.d)}};
    doc["solver"] = json{{"method", method_name(s.solver.method)}, {"tol_grad", s.solver.tol_grad},
                         {"max_iter", s.solver.max_iter},          {"path_points", s.solver.path_points},
                         {"seed", s.solver.seed},                  {"starts", s.solver.starts}};
    doc["out"] = s.out;
    doc["svg"] = s.svg;
    return doc.dump(2) + "\n";
}

GridFunction sample_field(const FieldSpec& f, const MeshPtr& mesh) {
    if (!f.is_table()) return GridFunction::constant(mesh, f.constant);
    return GridFunction::sample(mesh, [&](double t) {
        if (t <= f.nodes.front()) return f.values.front();
        if (t >= f.nodes.back()) return f.values.back();
        const auto it = std::upper_bound(f.nodes.begin(), f.nodes.end(), t);
        const std::size_t k = static_cast<std::size_t>(it - f.nodes.begin());
        const double theta = (t - f.nodes[k - 1]) / (f.nodes[k] - f.nodes[k - 1]);
        return (1.0 - theta) * f.values[k - 1] + theta * f.values[k];
    });
}

BvpProblem build_problem(const RunSpec& s, const std::filesystem::path& base) {
    MeshPtr mesh = build_mesh(resolve_scale(s.scale, base), s.h_max);
    GridFunction lambda = sample_field(s.lambda, mesh);
    Nonlinearity g = PowerNonlinearity{s.nonlinearity.c, s.nonlinearity.mu};
    if (s.nonlinearity.type == NonlinearitySpec::Type::weighted_power)
        g = WeightedPowerNonlinearity{sample_field(s.nonlinearity.d, mesh), s.nonlinearity.r};
    return BvpProblem{mesh, s.alpha, s.p, s.beta, s.rho, std::move(lambda), std::move(g)};
}

SolverConfig solver_config(const RunSpec& s) {
    SolverConfig cfg;
    cfg.tol_grad = s.solver.tol_grad;
    cfg.max_iter = s.solver.max_iter;
    cfg.path_points = s.solver.path_points;
    return cfg;
}

} // namespace tsfrac
