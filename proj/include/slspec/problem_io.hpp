// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <iosfwd>
#include <string>

#include "json.hpp"
#include "slspec/coefficients.hpp"

namespace slspec {

/// Problem file schema:
///   {"interval":[a,b], "alpha":0.0, "beta":0.0,
///    "pieces":[{"x0":..,"x1":..,"w":..,"q":{"const":..} | {"table":[[x,qx],...]}}]}
/// Numbers may be JSON numbers or decimal strings. Throws InvalidInput on schema errors.
[[nodiscard]] ProblemSpec problem_from_json(const nlohmann::json& j);
[[nodiscard]] nlohmann::json problem_to_json(const ProblemSpec& spec);

[[nodiscard]] ProblemSpec read_problem_file(const std::string& path);
void write_problem_file(const ProblemSpec& spec, const std::string& path);

}  // namespace slspec
