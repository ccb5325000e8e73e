#pragma once

#include <concepts>
#include <cstdint>
#include <random>

namespace confpoly {

// Deterministic uniform generator. A (seed, stream) pair always yields the
// same sequence on every platform; distinct streams are statistically
// independent for practical purposes. Parallel ensembles give worker k the
// stream `stream + k + 1`, so the base stream never collides with a worker
// stream and results are reproducible for a fixed worker count.
class RngState {
 public:
  explicit RngState(std::uint64_t seed, std::uint64_t stream = 0)
      : seed_(seed), stream_(stream), engine_(make_engine(seed, stream)) {}

  // Uniform on [0,1) with 53 random bits. Pinned to this exact construction;
  // std::uniform_real_distribution is implementation-defined and would break
  // cross-platform reproducibility.
  double uniform01() { return double(engine_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) {
    return lo + (hi - lo) * uniform01();
  }

  std::uint64_t next_u64() { return engine_(); }

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream() const { return stream_; }

  // Stream for parallel worker k. One level of splitting only; workers must
  // not split again.
  RngState worker(std::uint64_t k) const {
    return RngState(seed_, stream_ + k + 1);
  }

 private:
  static std::mt19937_64 make_engine(std::uint64_t seed, std::uint64_t stream) {
    std::seed_seq seq{
        std::uint32_t(seed), std::uint32_t(seed >> 32),
        std::uint32_t(stream), std::uint32_t(stream >> 32)};
    return std::mt19937_64(seq);
  }

  std::uint64_t seed_;
  std::uint64_t stream_;
  std::mt19937_64 engine_;
};

// Anything producing uniform variates on [0,1). Sampling routines are
// templated on this so tests can inject fixed streams.
template <class T>
concept UniformSource = requires(T t) {
  { t.uniform01() } -> std::convertible_to<double>;
};

}  // namespace confpoly
