#include "ndsl/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "ndsl/csv.hpp"
#include "ndsl/errors.hpp"
#include "ndsl/real_spectrum.hpp"
#include "ndsl/shooting.hpp"

namespace ndsl {

const char* to_string(Definiteness d) {
  switch (d) {
    case Definiteness::right_definite: return "right_definite";
    case Definiteness::left_definite: return "left_definite";
    case Definiteness::non_definite: return "non_definite";
    case Definiteness::degenerate_borderline: return "degenerate_borderline";
  }
  return "?";
}

namespace {

bool takes_both_signs(const std::vector<SignInterval>& profile) {
  bool pos = false, neg = false;
  for (const auto& iv : profile) {
    pos = pos || iv.sign == Sign::Positive || iv.sign == Sign::Mixed;
    neg = neg || iv.sign == Sign::Negative || iv.sign == Sign::Mixed;
  }
  return pos && neg;
}

SLProblem negated_weight(const SLProblem& prob) {
  std::vector<Piece> pieces;
  for (const auto& pc : prob.r().pieces()) pieces.push_back({pc.to, -pc.expr});
  return prob.with_r(PiecewiseCoefficient(prob.r().start(), std::move(pieces)));
}

ShootOptions shoot_options(const Controls& c) { return {c.rk_tol, c.mesh_nodes}; }

int osc_count(const SLProblem& prob, double lambda, const Controls& c) {
  return prufer_oscillation(prob, lambda, shoot_options(c)).zero_count;
}

bool is_ghost(const EigenvalueRecord& r) {
  return r.cls == StateClass::nondegenerate_real_ghost || r.cls == StateClass::degenerate_real_ghost;
}

}  // namespace

DefinitenessClass classify_definiteness(const SLProblem& prob, const Controls& controls) {
  DefinitenessClass out{Definiteness::right_definite, sign_profile(prob.r()), std::nullopt};
  if (!takes_both_signs(out.r_profile)) return out;
  const double nu0 = lowest_eigenvalue(auxiliary_problem(prob, 0.0), controls);
  out.nu0 = nu0;
  if (nu0 > controls.tol_ghost) out.kind = Definiteness::left_definite;
  else if (nu0 < -controls.tol_ghost) out.kind = Definiteness::non_definite;
  else out.kind = Definiteness::degenerate_borderline;
  return out;
}

std::vector<BoundCheck> theorem_audit(const SLProblem& prob, const AuditInput& input, const Controls& controls) {
  std::vector<BoundCheck> out;
  int nonreal = 0;
  for (const auto& r : input.complex_records)
    if (!r.is_real()) nonreal += r.multiplicity;
  out.push_back({"evenness", nonreal % 2 == 0 ? "pass" : "fail", "non-real count " + std::to_string(nonreal)});

  auto shifted = [&](const SLProblem& p) -> std::optional<int> {
    try {
      return negative_count_shifted(p, controls).count;
    } catch (const PreconditionError&) {
      return std::nullopt;
    }
  };
  const std::optional<int> k = shifted(prob);
  if (k) {
    const int pairs = nonreal / 2;
    out.push_back({"pair_bound", pairs <= *k ? "pass" : "fail",
                   std::to_string(pairs) + " pairs, bound " + std::to_string(*k)});
  } else {
    out.push_back({"pair_bound", "skipped", "shifted-weight count unavailable"});
  }

  int ghosts_pos = 0, ghosts_neg = 0;
  for (const auto& r : input.real_records) {
    if (!is_ghost(r)) continue;
    if (r.lambda.real() > 0.0) ++ghosts_pos;
    else if (r.lambda.real() < 0.0) ++ghosts_neg;
  }
  if (k) {
    out.push_back({"ghost_bound_positive", ghosts_pos <= *k ? "pass" : "fail",
                   std::to_string(ghosts_pos) + " real ghosts with lambda > 0, bound " + std::to_string(*k)});
  } else {
    out.push_back({"ghost_bound_positive", "skipped", "shifted-weight count unavailable"});
  }
  const std::optional<int> kn = shifted(negated_weight(prob));
  if (kn) {
    out.push_back({"ghost_bound_negative", ghosts_neg <= *kn ? "pass" : "fail",
                   std::to_string(ghosts_neg) + " real ghosts with lambda < 0, bound " + std::to_string(*kn)});
  } else {
    out.push_back({"ghost_bound_negative", "skipped", "shifted-weight count for -r unavailable"});
  }

  if (takes_both_signs(sign_profile(prob.r()))) {
    std::vector<std::pair<int, int>> sides = input.side_counts;
    if (sides.empty()) {
      int neg = 0, pos = 0;
      for (const auto& r : input.real_records) {
        if (r.lambda.real() < 0.0) ++neg;
        else if (r.lambda.real() > 0.0) ++pos;
      }
      sides.emplace_back(neg, pos);
    }
    bool ok = sides.front().first > 0 && sides.front().second > 0;
    for (std::size_t i = 1; i < sides.size(); ++i)
      ok = ok && sides[i].first > sides[i - 1].first && sides[i].second > sides[i - 1].second;
    std::string d;
    for (const auto& [n, p] : sides) d += (d.empty() ? "" : ", ") + std::to_string(n) + "/" + std::to_string(p);
    out.push_back({"both_sides", ok ? "pass" : "fail", "negative/positive counts per window: " + d});
  } else {
    out.push_back({"both_sides", "skipped", "r does not take both signs"});
  }

  std::vector<const EigenvalueRecord*> real;
  for (const auto& r : input.real_records) real.push_back(&r);
  std::sort(real.begin(), real.end(), [](auto* a, auto* b) { return a->lambda.real() < b->lambda.real(); });
  std::string obs;
  const std::size_t m = std::min<std::size_t>(3, real.size() / 2);
  for (std::size_t i = 0; i < m; ++i) {
    for (const EigenvalueRecord* r : {real[i], real[real.size() - 1 - i]})
      obs += (obs.empty() ? "" : "; ") + format_real(r->lambda.real()) + ": lambda*krein " +
             (r->lambda.real() * r->krein > 0.0 ? ">" : "<=") + " 0";
  }
  out.push_back({"krein_sign_at_extremes", "observation", obs.empty() ? "no real records" : obs});
  return out;
}

IndicesReport indices(const SLProblem& prob, const Controls& controls, const IndexOptions& opts) {
  const DefinitenessClass cls = classify_definiteness(prob, controls);
  if (cls.kind != Definiteness::non_definite)
    throw PreconditionError(std::string("problem is ") + to_string(cls.kind) +
                            "; oscillation indices need a non-definite problem");
  IndicesReport rep;
  std::vector<std::pair<int, int>> history, sides;
  RealScan scan;
  double L = opts.initial_window;
  for (int ext = 0; ext <= opts.max_extensions; ++ext, L *= 2.0) {
    scan = locate_real_eigenvalues(prob, -L, L, controls);
    rep.counts_table.clear();
    int neg = 0, pos = 0;
    for (const auto& r : scan.roots) {
      rep.counts_table[osc_count(prob, r.lambda, controls)].push_back(r.lambda);
      if (r.lambda < 0.0) ++neg;
      else if (r.lambda > 0.0) ++pos;
    }
    sides.emplace_back(neg, pos);
    rep.window_lo = scan.lo;
    rep.window_hi = scan.hi;
    rep.complete_below = std::max(0, std::min(osc_count(prob, scan.lo, controls), osc_count(prob, scan.hi, controls)) - 1);
    rep.n_R = rep.counts_table.empty() ? -1 : rep.counts_table.begin()->first;
    rep.n_H = -1;
    if (rep.n_R >= 0) {
      for (int m = rep.n_R; m + opts.width <= rep.complete_below; ++m) {
        bool doubled = true;
        for (int n = m; n < rep.complete_below && doubled; ++n) {
          const auto it = rep.counts_table.find(n);
          doubled = it != rep.counts_table.end() && it->second.size() == 2;
        }
        if (doubled) {
          rep.n_H = m;
          break;
        }
      }
    }
    history.emplace_back(rep.n_R, rep.n_H);
    const std::size_t h = history.size();
    if (rep.n_H >= 0 && h >= 3 && history[h - 1] == history[h - 2] && history[h - 2] == history[h - 3]) {
      rep.validated = true;
      break;
    }
  }
  if (!rep.validated) rep.warnings.push_back("indices not stable within the window extension budget");
  rep.warnings.insert(rep.warnings.end(), scan.warnings.begin(), scan.warnings.end());

  std::vector<double> grid;
  for (int i = 0; i <= 200; ++i) grid.push_back(-opts.initial_window + opts.initial_window * i / 100.0);
  rep.n0 = haupt_n0(prob, grid, controls);
  try {
    rep.k51 = negative_count_shifted(prob, controls).count;
  } catch (const PreconditionError& e) {
    rep.k51_note = e.what();
  }

  AuditInput audit;
  for (const auto& r : scan.roots) audit.real_records.push_back(make_record(prob, cplx(r.lambda), r.multiplicity, controls));
  audit.complex_records = complex_spectrum(prob, opts.complex_box, controls).records;
  audit.side_counts = sides;
  rep.bound_checks = theorem_audit(prob, audit, controls);
  return rep;
}

namespace {

AsymptoticSide asymptotic_side(const SLProblem& prob, int n_max, double C, int sign, const Controls& controls) {
  AsymptoticSide side;
  side.C = C;
  const double q = sup_abs_q(prob);
  double L = std::pow((n_max + 2) * std::numbers::pi / C, 2) + 2.0 * q + 10.0;
  for (int attempt = 0; attempt < 12; ++attempt, L *= 2.0) {
    const RealScan scan = sign > 0 ? locate_real_eigenvalues(prob, 0.0, L, controls)
                                   : locate_real_eigenvalues(prob, -L, 0.0, controls);
    std::map<int, double> extreme;
    int total = 0;
    std::vector<double> on_side;
    for (const auto& r : scan.roots) {
      if (r.lambda * sign <= 0.0) continue;
      on_side.push_back(r.lambda);
      const int n = osc_count(prob, r.lambda, controls);
      auto [it, fresh] = extreme.emplace(n, r.lambda);
      if (!fresh && std::abs(r.lambda) > std::abs(it->second)) it->second = r.lambda;
    }
    if (!extreme.count(n_max) || !extreme.count(n_max + 1)) continue;
    for (const auto& [n, l] : extreme) {
      if (n < 1 || n > n_max) continue;
      side.rows.push_back({n, l, std::abs(l) * C * C / (n * n * std::numbers::pi * std::numbers::pi)});
    }
    const double last = side.rows.back().lambda;
    side.jorgens = jorgens_ratio(prob, last, controls);
    for (const auto& r : scan.roots)
      if (r.lambda * sign > 0.0 && std::abs(r.lambda) <= std::abs(last)) total += r.multiplicity;
    side.counting = total * std::numbers::pi / (std::sqrt(std::abs(last)) * C);
    return side;
  }
  throw NumericalError("asymptotic_check", "eigenvalues with up to " + std::to_string(n_max + 1) +
                                               " zeros not found on the " + (sign > 0 ? "positive" : "negative") +
                                               " side");
}

}  // namespace

double jorgens_ratio(const SLProblem& prob, double lambda, const Controls& controls) {
  if (lambda == 0.0) throw PreconditionError("Jorgens ratio needs lambda != 0");
  const double C = sqrt_weight_integral(prob, lambda > 0.0 ? Side::Positive : Side::Negative, controls.tol_quad);
  if (C <= 0.0) throw PreconditionError("no weight on the requested side");
  return osc_count(prob, lambda, controls) * std::numbers::pi / (std::sqrt(std::abs(lambda)) * C);
}

AsymptoticTable asymptotic_check(const SLProblem& prob, int n_max, const Controls& controls) {
  if (n_max < 1) throw PreconditionError("n_max must be at least 1");
  const double cp = sqrt_weight_integral(prob, Side::Positive, controls.tol_quad);
  const double cm = sqrt_weight_integral(prob, Side::Negative, controls.tol_quad);
  if (cp <= controls.tol_weight && cm <= controls.tol_weight)
    throw PreconditionError("integral of sqrt(|r|/p) vanishes on both sides");
  AsymptoticTable t;
  if (cp > controls.tol_weight) t.positive = asymptotic_side(prob, n_max, cp, +1, controls);
  if (cm > controls.tol_weight) t.negative = asymptotic_side(prob, n_max, cm, -1, controls);
  return t;
}

InterlacingVerdict interlacing_check(const SLProblem& prob, const EigenvalueRecord& rec) {
  InterlacingVerdict v;
  if (rec.is_real()) {
    v.details = "theorem not applicable: eigenvalue is real";
    return v;
  }
  const auto profile = sign_profile(prob.r());
  if (sign_changes(prob.r()) != 1 || profile.empty() || profile.front().sign == Sign::Zero) {
    v.details = "theorem not applicable: r must change sign exactly once and not vanish near a";
    return v;
  }
  v.applicable = true;
  const Eigenfunction& ef = rec.eigenfunction;
  const std::size_t n = ef.x.size();
  if (n < 3) {
    v.details = "eigenfunction not sampled";
    return v;
  }
  auto zeros = [&](auto part) {
    std::vector<double> z;
    for (std::size_t i = 1; i + 1 < n; ++i) {
      const double a = part(ef.u[i]);
      if (a == 0.0) {
        z.push_back(ef.x[i]);
        continue;
      }
      if (i + 2 >= n) break;
      const double b = part(ef.u[i + 1]);
      if (a * b < 0.0) z.push_back(ef.x[i] + (ef.x[i + 1] - ef.x[i]) * a / (a - b));
    }
    return z;
  };
  v.u_zeros = zeros([](cplx c) { return c.real(); });
  v.v_zeros = zeros([](cplx c) { return c.imag(); });

  std::vector<std::pair<double, int>> merged;
  for (double x : v.u_zeros) merged.emplace_back(x, 0);
  for (double x : v.v_zeros) merged.emplace_back(x, 1);
  std::sort(merged.begin(), merged.end());
  bool alternate = true;
  for (std::size_t i = 1; i < merged.size(); ++i)
    alternate = alternate && merged[i].second != merged[i - 1].second && merged[i].first > merged[i - 1].first;

  v.min_abs_y = INFINITY;
  for (std::size_t i = 1; i + 1 < n; ++i)
    if (ef.x[i] > prob.a() && ef.x[i] < prob.b()) v.min_abs_y = std::min(v.min_abs_y, std::abs(ef.u[i]));
  v.pass = alternate && v.min_abs_y > 0.0;
  v.details = std::to_string(v.u_zeros.size()) + " zeros of Re y, " + std::to_string(v.v_zeros.size()) +
              " zeros of Im y, " + (alternate ? "interlacing" : "not interlacing") + ", min |y| = " +
              format_real(v.min_abs_y);
  return v;
}

}  // namespace ndsl
