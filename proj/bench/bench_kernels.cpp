// Serial reference kernels against their OpenMP counterparts on qubit
// registers of growing size.

#include <vector>

#include <benchmark/benchmark.h>

#include "kwayneg/catalog.hpp"
#include "kwayneg/kernels.hpp"

using namespace kwayneg;
namespace k = kwayneg::kernels;

namespace {

SubsystemDims qubits(std::int64_t n) {
  return SubsystemDims(std::vector<std::size_t>(static_cast<std::size_t>(n), 2), std::size_t{1} << 20);
}

template <bool Parallel>
void transpose_kway(benchmark::State& state) {
  const auto dims = qubits(state.range(0));
  const auto rho = random_mixed(dims, 4, 1);
  const auto sel = k::TransposeSelector::k_way(0, dims.count(), 2);
  for (auto _ : state) {
    Matrix out = Parallel ? k::parallel::partial_transpose(rho.matrix(), dims, sel)
                          : k::serial::partial_transpose(rho.matrix(), dims, sel);
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(dims.total_dim() * dims.total_dim()));
}

template <bool Parallel>
void trace_half(benchmark::State& state) {
  const auto dims = qubits(state.range(0));
  const auto rho = random_mixed(dims, 4, 2);
  SubsystemSet keep;
  for (std::size_t m = 1; m <= dims.count() / 2; ++m) keep.insert(Subsystem{m});
  for (auto _ : state) {
    Matrix out = Parallel ? k::parallel::partial_trace(rho.matrix(), dims, keep)
                          : k::serial::partial_trace(rho.matrix(), dims, keep);
    benchmark::DoNotOptimize(out.data());
  }
}

template <bool Parallel>
void two_qubit_gate(benchmark::State& state) {
  const auto dims = qubits(state.range(0));
  const auto psi = random_pure(dims, 3);
  const Matrix u = random_unitary(4, 4);
  const std::vector<Subsystem> targets{Subsystem{1}, Subsystem{dims.count()}};
  for (auto _ : state) {
    Vector out = Parallel ? k::parallel::apply_gate(psi.amplitudes(), dims, targets, u)
                          : k::serial::apply_gate(psi.amplitudes(), dims, targets, u);
    benchmark::DoNotOptimize(out.data());
  }
}

}  // namespace

BENCHMARK(transpose_kway<false>)->Name("transpose_kway/serial")->DenseRange(6, 12, 2)->Unit(benchmark::kMillisecond);
BENCHMARK(transpose_kway<true>)->Name("transpose_kway/parallel")->DenseRange(6, 12, 2)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(trace_half<false>)->Name("trace_half/serial")->DenseRange(6, 12, 2)->Unit(benchmark::kMillisecond);
BENCHMARK(trace_half<true>)->Name("trace_half/parallel")->DenseRange(6, 12, 2)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(two_qubit_gate<false>)->Name("gate/serial")->DenseRange(10, 20, 5)->Unit(benchmark::kMicrosecond);
BENCHMARK(two_qubit_gate<true>)->Name("gate/parallel")->DenseRange(10, 20, 5)->Unit(benchmark::kMicrosecond)->UseRealTime();

BENCHMARK_MAIN();
