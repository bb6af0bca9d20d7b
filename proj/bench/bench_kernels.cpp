// Compares the OpenMP kernels against the serial reference, for the raw
// matrix kernels and for a full batch of forward/backward passes.
//
//   ./snn-bench [--quick]

#include <chrono>
#include <cstdio>
#include <cstring>
#include <functional>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "snnlab/kernels.hpp"
#include "snnlab/network.hpp"
#include "snnlab/rng.hpp"
#include "snnlab/training.hpp"

using namespace snnlab;

namespace {

double time_ms(const std::function<void()>& fn, int reps) {
  fn();  // warmup
  const auto t0 = std::chrono::steady_clock::now();
  for (int i = 0; i < reps; ++i) fn();
  const auto t1 = std::chrono::steady_clock::now();
  return std::chrono::duration<double, std::milli>(t1 - t0).count() / reps;
}

void report(const char* name, double serial_ms, double parallel_ms) {
  std::printf("%-28s %10.3f ms %10.3f ms %8.2fx\n", name, serial_ms, parallel_ms,
              serial_ms / parallel_ms);
}

NetworkDef make_net(std::size_t in, std::size_t hidden, std::size_t classes, std::size_t steps) {
  Rng rng(7);
  NetworkDef net;
  net.layer_sizes = {in, hidden, classes};
  net.weights.push_back(Matrix::random_gaussian(hidden, in, 0.2, rng));
  net.weights.push_back(Matrix::random_gaussian(classes, hidden, 0.3, rng));
  net.kinds = {NeuronKind::Lif, NeuronKind::Lif};
  net.dlif_a = {{}, {}};
  net.steps = steps;
  net.lif = {0.99, 1.0};
  net.readout = Matrix::random_gaussian(classes, classes, 0.5, rng);
  net.validate();
  return net;
}

}  // namespace

int main(int argc, char** argv) {
  const bool quick = argc > 1 && std::strcmp(argv[1], "--quick") == 0;
  const std::size_t n = quick ? 512 : 2048;
  const int reps = quick ? 3 : 10;

#ifdef _OPENMP
  std::printf("OpenMP enabled, max threads %d\n", omp_get_max_threads());
#else
  std::printf("OpenMP disabled; both columns run serial code\n");
#endif
  std::printf("%-28s %13s %13s %9s\n", "kernel", "serial", "parallel", "speedup");

  Rng rng(42);
  const Matrix w = Matrix::random_gaussian(n, n, 1.0, rng);
  std::vector<double> x(n), y(n);
  for (auto& v : x) v = rng.uniform(-1.0, 1.0);

  report("matvec", time_ms([&] { reference::matvec(w, x, y); }, reps),
         time_ms([&] { kernels::matvec(w, x, y); }, reps));
  report("matvec_transpose", time_ms([&] { reference::matvec_transpose(w, x, y); }, reps),
         time_ms([&] { kernels::matvec_transpose(w, x, y); }, reps));

  Matrix g(n, n);
  report("add_outer", time_ms([&] { reference::add_outer(g, x, x); }, reps),
         time_ms([&] { kernels::add_outer(g, x, x); }, reps));

  // Whole-batch forward+backward: the parallel version distributes samples
  // across threads, the serial baseline pins OpenMP to one thread.
  const NetworkDef net = make_net(196, 128, 10, 8);
  const std::size_t batch = quick ? 16 : 64;
  std::vector<std::vector<double>> batch_x(batch, std::vector<double>(196));
  for (auto& img : batch_x)
    for (auto& v : img) v = rng.uniform01();

  const auto run_batch = [&] {
    std::vector<GradientSet> grads(batch);
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
    for (std::size_t i = 0; i < batch; ++i) {
      const ForwardTrace t = forward(net, batch_x[i]);
      const std::vector<double> dlogits = softmax_cross_entropy_grad(t.logits, 0);
      grads[i] = backward(net, t, dlogits, 1.0);
    }
  };

#ifdef _OPENMP
  const int saved = omp_get_max_threads();
  omp_set_num_threads(1);
  const double serial_batch = time_ms(run_batch, reps);
  omp_set_num_threads(saved);
  const double parallel_batch = time_ms(run_batch, reps);
#else
  const double serial_batch = time_ms(run_batch, reps);
  const double parallel_batch = serial_batch;
#endif
  report("batch forward+backward", serial_batch, parallel_batch);
  return 0;
}
