#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <thread>
#include <vector>

#include "sqcd/types.hpp"

namespace sqcd {

/// Philox4x32-10 counter-based generator (Salmon et al., SC'11).
std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> counter,
                                        std::array<std::uint32_t, 2> key);

/// Stream of random numbers addressed by (seed, stream).  Each Monte Carlo
/// sample gets its own stream, so results do not depend on how samples are
/// distributed over threads.
class CounterRng {
 public:
  CounterRng(std::uint64_t seed, std::uint64_t stream);

  std::uint32_t next_u32();
  /// Uniform on the open interval (0, 1), 53 random bits.
  double uniform();
  /// Standard normal (Box–Muller).
  double normal();

 private:
  std::array<std::uint32_t, 2> key_;
  std::uint64_t stream_;
  std::uint64_t block_ = 0;
  std::array<std::uint32_t, 4> buffer_{};
  int used_ = 4;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

/// Uniformly distributed point on the unit sphere S^{n-1}.
RVector uniform_on_sphere(CounterRng& rng, int n);

/// Haar-distributed element of SU(n).
CMatrix haar_su(CounterRng& rng, int n);

struct MeanEstimate {
  double value = 0.0;
  double std_error = 0.0;
  std::size_t samples = 0;
};

namespace detail {

struct Moments {
  double n = 0.0;
  double mean = 0.0;
  double m2 = 0.0;

  void add(double x) {
    n += 1.0;
    const double delta = x - mean;
    mean += delta / n;
    m2 += delta * (x - mean);
  }
  void merge(const Moments& o) {
    if (o.n == 0.0) return;
    const double total = n + o.n;
    const double delta = o.mean - mean;
    mean += delta * (o.n / total);
    m2 += o.m2 + delta * delta * (n * o.n / total);
    n = total;
  }
};

}  // namespace detail

/// Sample mean and standard error of f(rng_i, i), i = 0..samples-1, where
/// rng_i is CounterRng(seed, i).  Samples are reduced in fixed blocks in index
/// order, so the result is bit-identical for every thread count.
template <class F>
MeanEstimate monte_carlo_mean(std::uint64_t seed, std::size_t samples, F&& f, int threads = 1) {
  constexpr std::size_t kBlock = 4096;
  const std::size_t nblocks = (samples + kBlock - 1) / kBlock;
  std::vector<detail::Moments> blocks(nblocks);
  auto run = [&](std::size_t first, std::size_t stride) {
    for (std::size_t b = first; b < nblocks; b += stride) {
      detail::Moments m;
      const std::size_t end = std::min(samples, (b + 1) * kBlock);
      for (std::size_t i = b * kBlock; i < end; ++i) {
        CounterRng rng(seed, i);
        m.add(f(rng, i));
      }
      blocks[b] = m;
    }
  };
  const auto nt = static_cast<std::size_t>(std::max(1, threads));
  if (nt == 1 || nblocks < 2) {
    run(0, 1);
  } else {
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < nt; ++t) pool.emplace_back(run, t, nt);
    for (auto& th : pool) th.join();
  }
  detail::Moments total;
  for (const auto& m : blocks) total.merge(m);
  MeanEstimate est;
  est.samples = samples;
  est.value = total.mean;
  est.std_error = total.n > 1.0 ? std::sqrt(total.m2 / (total.n - 1.0) / total.n) : 0.0;
  return est;
}

}  // namespace sqcd
