#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "tsfrac/time_scale.hpp"

namespace tsfrac {

struct PropertyResult {
    std::string name;
    std::string scale;
    std::string params;
    double measured = 0.0;
    double bound = 0.0;
    bool pass = false;
    /// The property documents a failure (e.g. a singular literal kernel);
    /// `pass` is true when the failure occurred as expected.
    bool expected_failure = false;
};

struct VerifyReport {
    std::vector<PropertyResult> results;
    bool pass() const noexcept;
};

struct VerifyOptions {
    /// Named scales to run on; empty means the three presets.
    std::vector<std::pair<std::string, TimeScale>> scales;
    /// Run only this property (empty: all).
    std::string only;
    double h_max = 1.0 / 128.0;
    std::uint64_t seed = 20240917;
    std::size_t draws = 100;
};

std::vector<std::string> property_names();

/// Runs the invariant suite. SchemaError("only", ...) for an unknown name.
VerifyReport run_properties(const VerifyOptions& options);

/// `name scale=S params=P measured=M bound=B PASS|FAIL|XFAIL`
std::string format_line(const PropertyResult& r);

} // namespace tsfrac
