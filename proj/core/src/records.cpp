#include "ndsl/records.hpp"

#include <ostream>

#include "ndsl/csv.hpp"

namespace ndsl {

const char* to_string(StateClass c) {
  switch (c) {
    case StateClass::ground_state: return "ground_state";
    case StateClass::ordinary: return "ordinary";
    case StateClass::nondegenerate_real_ghost: return "nondegenerate_real_ghost";
    case StateClass::degenerate_real_ghost: return "degenerate_real_ghost";
    case StateClass::complex_ghost_nondegenerate: return "complex_ghost_nondegenerate";
    case StateClass::complex_ghost_degenerate: return "complex_ghost_degenerate";
  }
  return "?";
}

namespace {

bool strictly_positive_inside(const Eigenfunction& ef) {
  if (ef.u.size() < 3) return false;
  for (std::size_t j = 1; j + 1 < ef.u.size(); ++j)
    if (!(ef.u[j].real() > 0.0)) return false;
  return true;
}

}  // namespace

StateClass classify_record(EigenvalueRecord& rec) {
  if (!rec.is_real()) {
    rec.cls = rec.simple ? StateClass::complex_ghost_nondegenerate : StateClass::complex_ghost_degenerate;
  } else if (!rec.simple) {
    rec.cls = StateClass::degenerate_real_ghost;
  } else if (rec.lambda.real() == 0.0) {
    rec.warnings.emplace_back("lambda = 0: ghost sign test undefined, classified ordinary");
    rec.cls = StateClass::ordinary;
  } else if (rec.lambda.real() * rec.krein < 0.0) {
    rec.cls = StateClass::nondegenerate_real_ghost;
  } else if (strictly_positive_inside(rec.eigenfunction)) {
    rec.cls = StateClass::ground_state;
  } else {
    rec.cls = StateClass::ordinary;
  }
  return rec.cls;
}

EigenvalueRecord make_record(const SLProblem& prob, cplx lambda, int multiplicity, const Controls& controls) {
  const ShootOptions so{controls.rk_tol, controls.mesh_nodes};
  EigenvalueRecord rec;
  rec.lambda = lambda;
  rec.multiplicity = multiplicity;
  rec.simple = multiplicity == 1;
  rec.eigenfunction = eigenfunction(prob, lambda, so);
  if (rec.is_real()) {
    for (auto& u : rec.eigenfunction.u) u = u.real();
    for (auto& v : rec.eigenfunction.v) v = v.real();
    rec.osc_count = prufer_oscillation(prob, lambda.real(), so).zero_count;
  }
  const KreinNorms n = krein_norms(prob, rec.eigenfunction);
  rec.krein = n.krein;
  rec.bilinear = n.bilinear;
  rec.dF = *char_F(prob, lambda, true, so).df;
  classify_record(rec);
  return rec;
}

void write_spectrum_csv(std::ostream& os, const std::vector<EigenvalueRecord>& records) {
  os << "re_lambda,im_lambda,multiplicity,simple,osc_count,krein,re_bilinear,im_bilinear,class\n";
  for (const auto& r : records) {
    os << format_real(r.lambda.real()) << ',' << format_real(r.lambda.imag()) << ',' << r.multiplicity << ','
       << (r.simple ? "true" : "false") << ',' << (r.osc_count ? std::to_string(*r.osc_count) : std::string()) << ','
       << format_real(r.krein) << ',' << format_real(r.bilinear.real()) << ',' << format_real(r.bilinear.imag())
       << ',' << to_string(r.cls) << '\n';
  }
}

}  // namespace ndsl
