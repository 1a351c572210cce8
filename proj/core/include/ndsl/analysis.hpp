#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ndsl/complex_spectrum.hpp"
#include "ndsl/controls.hpp"
#include "ndsl/problem.hpp"
#include "ndsl/records.hpp"

namespace ndsl {

enum class Definiteness { right_definite, left_definite, non_definite, degenerate_borderline };
const char* to_string(Definiteness d);

struct DefinitenessClass {
  Definiteness kind;
  std::vector<SignInterval> r_profile;
  std::optional<double> nu0;  // lowest eigenvalue with weight 1; absent for one-signed r
};

/// One-signed r short-circuits to right_definite; otherwise the sign of nu0 decides.
DefinitenessClass classify_definiteness(const SLProblem& prob, const Controls& controls = {});

struct BoundCheck {
  std::string id;
  std::string verdict;  // pass, fail, skipped, observation
  std::string details;
};

struct AuditInput {
  std::vector<EigenvalueRecord> real_records;
  std::vector<EigenvalueRecord> complex_records;
  // (eigenvalues below 0, eigenvalues above 0) for each nested real window, smallest first.
  std::vector<std::pair<int, int>> side_counts;
};

std::vector<BoundCheck> theorem_audit(const SLProblem& prob, const AuditInput& input, const Controls& controls = {});

struct IndexOptions {
  int width = 4;                // consecutive counts realized exactly twice before n_H is declared
  double initial_window = 100.0;
  int max_extensions = 10;
  ContourBox complex_box{-20.0, 20.0, -20.0, 20.0};
};

struct IndicesReport {
  int n_R = -1;
  int n_H = -1;
  double window_lo = 0.0, window_hi = 0.0;
  std::map<int, std::vector<double>> counts_table;
  int complete_below = 0;  // counts below this are fully inside the window
  int n0 = -1;
  std::optional<int> k51;  // negative eigenvalues of the shifted-weight problem
  std::string k51_note;
  std::vector<BoundCheck> bound_checks;
  bool validated = false;
  std::vector<std::string> warnings;
};

/// Haupt and Richardson indices from the oscillation counts of the real spectrum. The window
/// doubles until both indices are unchanged over two consecutive extensions. Throws
/// PreconditionError unless the problem is non-definite.
IndicesReport indices(const SLProblem& prob, const Controls& controls = {}, const IndexOptions& opts = {});

struct AsymptoticRow {
  int n;
  double lambda;  // extreme eigenvalue with n zeros on this side
  double ratio;   // |lambda| C^2 / (n^2 pi^2)
};

struct AsymptoticSide {
  double C = 0.0;
  std::vector<AsymptoticRow> rows;
  double jorgens = 0.0;   // N(lambda) pi / (sqrt|lambda| C) at the last row
  double counting = 0.0;  // eigenvalue count up to the last row, times pi / (sqrt|lambda| C)
};

struct AsymptoticTable {
  std::optional<AsymptoticSide> positive, negative;
};

/// Rows for every n in 1..n_max realized on each side with nonzero C. Throws PreconditionError when both
/// sides have C = 0.
AsymptoticTable asymptotic_check(const SLProblem& prob, int n_max, const Controls& controls = {});

/// Zeros in (a, b) of the solution at lambda, scaled: N(lambda) pi / (sqrt|lambda| C).
double jorgens_ratio(const SLProblem& prob, double lambda, const Controls& controls = {});

struct InterlacingVerdict {
  bool applicable = false;
  bool pass = false;
  std::vector<double> u_zeros, v_zeros;
  double min_abs_y = 0.0;
  std::string details;
};

/// Zeros of Re y and Im y strictly alternate and |y| stays positive inside (a, b). Applies only
/// to non-real eigenvalues of problems whose r changes sign exactly once.
InterlacingVerdict interlacing_check(const SLProblem& prob, const EigenvalueRecord& rec);

}  // namespace ndsl
