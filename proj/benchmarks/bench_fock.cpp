#include <numbers>

#include <benchmark/benchmark.h>

#include "bosestat/fock.hpp"
#include "bosestat/lanczos.hpp"
#include "bosestat/lattice.hpp"
#include "bosestat/occupation.hpp"
#include "bosestat/rng.hpp"
#include "bosestat/sampling.hpp"
#include "bosestat/scattering.hpp"
#include "bosestat/spectral.hpp"
#include "bosestat/torus.hpp"

namespace {

using namespace bosestat;

constexpr double kTwoPi = 2.0 * std::numbers::pi;

qsim::TorusModel make_model(int n_particles) {
  return qsim::TorusModel(
      lattice::MomentumLattice::axis(1.2 * kTwoPi), n_particles,
      scattering::RadialPotential::soft_sphere(2.0, 0.5));
}

void BM_BuildHamiltonian(benchmark::State& state) {
  const auto model = make_model(int(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(qsim::build_hamiltonian(model));
  }
}
BENCHMARK(BM_BuildHamiltonian)->DenseRange(4, 12, 2);

void BM_GroundState(benchmark::State& state) {
  const auto op = qsim::build_hamiltonian(make_model(int(state.range(0))));
  for (auto _ : state) {
    benchmark::DoNotOptimize(qsim::ground_state(op));
  }
}
BENCHMARK(BM_GroundState)->DenseRange(4, 10, 2);

void BM_SecondQuantize(benchmark::State& state) {
  const auto basis = fock::OccupationBasis::fixed_total(3, int(state.range(0)));
  rng::Stream stream(41);
  fock::Matrix one_body(3, 3);
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j <= i; ++j) {
      const bogo::Complex z(stream.gaussian(), i == j ? 0.0 : stream.gaussian());
      one_body(i, j) = z;
      one_body(j, i) = std::conj(z);
    }
  }
  for (auto _ : state) {
    benchmark::DoNotOptimize(fock::second_quantize(basis, one_body));
  }
}
BENCHMARK(BM_SecondQuantize)->RangeMultiplier(2)->Range(8, 64);

void BM_DrawCounts(benchmark::State& state) {
  const auto model = make_model(int(state.range(0)));
  const auto op = qsim::build_hamiltonian(model);
  const auto gs = qsim::ground_state(op);
  const auto observable =
      bogo::SpectralObservable::multiplication_cosine(model.excited_modes());
  const qsim::MeasurementSampler sampler(op.basis, gs.state, observable);
  rng::Stream stream(51);
  for (auto _ : state) {
    benchmark::DoNotOptimize(sampler.draw_counts(stream));
  }
}
BENCHMARK(BM_DrawCounts)->DenseRange(4, 10, 2);

}  // namespace
