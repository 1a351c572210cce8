#pragma once

#include <string>

#include "ndsl/problem_io.hpp"

inline ndsl::SLProblem fixture(const std::string& name) {
  return ndsl::load_problem(std::string(NDSL_FIXTURES) + "/" + name + ".json");
}

inline ndsl::SLProblem constant_problem(double a, double b, double p, double q, double r, double alpha = 0.0,
                                        double beta = 0.0) {
  using ndsl::PiecewiseCoefficient;
  return {a, b, PiecewiseCoefficient::constant(a, b, p), PiecewiseCoefficient::constant(a, b, q),
          PiecewiseCoefficient::constant(a, b, r), alpha, beta};
}
