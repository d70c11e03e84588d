#pragma once

#include <string>
#include <vector>

#include "lorenzn/integrate.hpp"
#include "lorenzn/types.hpp"

namespace lorenzn {

struct OutputSpec {
    enum class Kind { Csv, Svg };
    Kind kind = Kind::Csv;
    std::string path;
    std::string projection = "x,z";   // svg only
    std::string color_by = "none";    // "none" or "branch" (svg only)
};

/// A fully-resolved run description: what to integrate, from where, for how
/// long, and where the results go.
struct Scenario {
    SystemSpec system;
    Vec3 initial_state{};
    bool initial_state_set = false;  // false -> family default applies
    double t0 = 0.0;
    double t1 = 20.0;
    IntegratorConfig integrator{};
    std::vector<OutputSpec> outputs;

    void validate() const;
};

/// Parse a scenario JSON document (schema_version 1). Validation is strict:
/// unknown keys are rejected, defaults are applied for omitted optional
/// fields. Syntax errors report line and column; semantic errors name the
/// offending key and constraint.
Scenario parse_scenario(const std::string& text);

/// parse_scenario on the contents of a file.
Scenario load_scenario(const std::string& path);

}  // namespace lorenzn
