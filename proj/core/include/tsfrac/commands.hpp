#pragma once

#include <filesystem>
#include <ostream>
#include <string>

#include "tsfrac/config.hpp"

namespace tsfrac {

namespace exit_code {
inline constexpr int ok = 0;
inline constexpr int config_error = 1;
inline constexpr int numerical_failure = 2;
inline constexpr int verification_failure = 3;
} // namespace exit_code

/// Runs the property suite on the configured scale (or the presets when none
/// is given) and prints one line per property.
int run_verify(const RunSpec& spec, const std::string& only, std::ostream& out, std::ostream& err);

/// Solves, writes spec.out (CSV) and spec.svg when set, prints a summary.
/// Multistart writes `<stem>_<k>.csv` per retained solution and
/// `<stem>_index.csv`. Relative scale files resolve against `base`.
int run_solve(const RunSpec& spec, std::ostream& out, std::ostream& err, const std::filesystem::path& base = {});

/// Prints the embedding constants for the scale's [min, max] and the
/// Hölder modulus of a unit-seminorm function.
int run_bounds(const RunSpec& spec, std::ostream& out, std::ostream& err);

} // namespace tsfrac
