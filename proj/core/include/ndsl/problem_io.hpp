#pragma once

#include <string>
#include <string_view>

#include "ndsl/problem.hpp"

namespace ndsl {

/// Reads the problem file format:
///
///     {"interval":[0.0,2.0], "alpha":0.0, "beta":0.0,
///      "p":[{"to":2.0,"expr":"1"}],
///      "q":[{"to":2.0,"expr":"-9*pi^2/16"}],
///      "r":[{"to":1.0,"expr":"1"},{"to":2.0,"expr":"-1"}]}
///
/// alpha and beta default to 0. Throws ValidationError on schema problems and
/// ParseError on bad expressions.
SLProblem parse_problem(std::string_view json_text);
SLProblem load_problem(const std::string& path);

std::string problem_to_json(const SLProblem& prob);

}  // namespace ndsl
