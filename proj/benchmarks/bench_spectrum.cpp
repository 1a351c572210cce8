#include <benchmark/benchmark.h>

#include <string>

#include "ndsl/complex_spectrum.hpp"
#include "ndsl/contour.hpp"
#include "ndsl/problem_io.hpp"
#include "ndsl/real_spectrum.hpp"
#include "ndsl/shooting.hpp"

namespace {

ndsl::SLProblem fixture(const char* name) {
  return ndsl::load_problem(std::string(NDSL_FIXTURES) + "/" + name + ".json");
}

const ndsl::SLProblem& smooth() {
  static const ndsl::SLProblem p = ndsl::parse_problem(
      R"js({"interval":[0,1],"p":[{"to":1,"expr":"1+x^2"}],"q":[{"to":1,"expr":"cos(4*x)"}],
           "r":[{"to":0.5,"expr":"1"},{"to":1,"expr":"-exp(x)"}]})js");
  return p;
}

void BM_CharF_PiecewiseConstant(benchmark::State& state) {
  const auto P = fixture("exampleB");
  for (auto _ : state) benchmark::DoNotOptimize(ndsl::char_F(P, ndsl::cplx(12.0, 3.0), true));
}
BENCHMARK(BM_CharF_PiecewiseConstant);

void BM_CharF_Smooth(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(ndsl::char_F(smooth(), ndsl::cplx(12.0, 3.0), true));
}
BENCHMARK(BM_CharF_Smooth);

void BM_Winding(benchmark::State& state) {
  const auto P = fixture("exampleA");
  const ndsl::WindingOptions opts = ndsl::winding_options(ndsl::Controls{});
  for (auto _ : state)
    benchmark::DoNotOptimize(ndsl::winding_number(P, ndsl::ContourBox{-20.0, 20.0, 1e-6, 20.0}, opts));
}
BENCHMARK(BM_Winding)->Unit(benchmark::kMillisecond);

void BM_RealScan(benchmark::State& state) {
  const auto P = fixture("exampleA");
  const double L = static_cast<double>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(ndsl::locate_real_eigenvalues(P, -L, L, ndsl::Controls{}));
}
BENCHMARK(BM_RealScan)->Arg(100)->Arg(1000)->Arg(10000)->Unit(benchmark::kMillisecond);

void BM_ComplexSpectrum(benchmark::State& state) {
  const auto P = fixture("exampleA");
  for (auto _ : state)
    benchmark::DoNotOptimize(ndsl::complex_spectrum(P, ndsl::ContourBox{-20.0, 20.0, -20.0, 20.0}));
}
BENCHMARK(BM_ComplexSpectrum)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
