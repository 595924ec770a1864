#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "tsfrac/energy.hpp"
#include "tsfrac/solver.hpp"
#include "tsfrac/time_scale.hpp"

namespace tsfrac {

enum class Command { verify, solve, bounds };

const char* to_string(Command c) noexcept;

/// Where the time scale comes from. A preset or file name is kept verbatim
/// so that emit_config reproduces it; `segments` is used when `name` is empty.
struct ScaleSpec {
    std::string name;
    std::vector<Segment> segments;
    friend bool operator==(const ScaleSpec&, const ScaleSpec&) = default;
};

/// A constant, or a node table interpolated piecewise linearly (held
/// constant beyond the first and last node).
struct FieldSpec {
    double constant = 1.0;
    std::vector<double> nodes;
    std::vector<double> values;
    bool is_table() const noexcept { return !nodes.empty(); }
    friend bool operator==(const FieldSpec&, const FieldSpec&) = default;
};

struct NonlinearitySpec {
    enum class Type { power, weighted_power };
    Type type = Type::power;
    double c = 1.0;
    double mu = 6.0;
    double r = 1.5;
    FieldSpec d;
    friend bool operator==(const NonlinearitySpec&, const NonlinearitySpec&) = default;
};

inline constexpr std::uint64_t default_seed = 20240917;

struct SolverSpec {
    /// auto: minimize for weighted_power, mountain_pass for power.
    enum class Method { automatic, minimize, mountain_pass, multistart };
    Method method = Method::automatic;
    double tol_grad = 1e-6;
    std::uint64_t max_iter = 20000;
    std::uint64_t path_points = 21;
    std::uint64_t seed = default_seed;
    std::uint64_t starts = 20;
    friend bool operator==(const SolverSpec&, const SolverSpec&) = default;
};

struct RunSpec {
    Command command = Command::solve;
    ScaleSpec scale;
    double h_max = 1.0 / 128.0;
    double alpha = 0.8;
    double p = 2.0;
    double beta = 1.0;
    double rho = 1.0;
    FieldSpec lambda;
    NonlinearitySpec nonlinearity;
    SolverSpec solver;
    std::string out;
    std::string svg;
    friend bool operator==(const RunSpec&, const RunSpec&) = default;
};

/// Parses and validates a JSON config for `command`. SchemaError names the
/// offending key for unknown keys, missing required keys, wrong types and
/// out-of-range values. Required keys: solve needs scale, alpha, p and
/// nonlinearity; bounds needs scale, alpha and p; verify needs none.
RunSpec parse_config(std::string_view text, Command command);

/// Re-validates a spec built in code (same rules as parse_config).
void validate(const RunSpec& spec);

/// JSON text with every key present; parse_config(emit_config(s), s.command) == s.
std::string emit_config(const RunSpec& spec);

/// Names of the built-in scales.
std::vector<std::string> preset_names();
bool is_preset(std::string_view name);
TimeScale preset_scale(std::string_view name);

/// One "lo hi" pair per line (a single number is an isolated point); blank
/// lines and text after '#' are ignored. SchemaError on malformed lines.
TimeScale parse_time_scale_text(std::string_view text);

/// Resolves a scale spec. File names are read relative to `base`.
TimeScale resolve_scale(const ScaleSpec& spec, const std::filesystem::path& base = {});

GridFunction sample_field(const FieldSpec& field, const MeshPtr& mesh);

/// Mesh, λ and nonlinearity for a solve spec.
BvpProblem build_problem(const RunSpec& spec, const std::filesystem::path& base = {});
SolverConfig solver_config(const RunSpec& spec);

} // namespace tsfrac
