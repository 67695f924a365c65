#ifndef SOLWALK_RNG_HPP_
#define SOLWALK_RNG_HPP_

#include <cstdint>
#include <exception>
#include <functional>
#include <random>
#include <thread>
#include <vector>

namespace solwalk {

// SplitMix64 finalizer. Used only to derive stream seeds, never as the
// sampling generator itself.
inline std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ull;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

// Deterministic per-sample seed: every (master, stream, substream) triple maps
// to a fixed seed independent of scheduling, so batches may fan out across any
// number of workers and still reproduce bit-for-bit.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream,
                                 std::uint64_t substream = 0) {
  std::uint64_t s = mix64(master ^ 0x6a09e667f3bcc909ull);
  s = mix64(s + 0x9e3779b97f4a7c15ull * (stream + 1));
  if (substream != 0) s = mix64(s + 0xc2b2ae3d27d4eb4full * substream);
  return s;
}

// mt19937_64 is fully specified by the standard, so draws are identical across
// platforms. All randomness is consumed as uint64; unit doubles use the usual
// 53-bit construction.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  double next_unit() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

 private:
  std::mt19937_64 engine_;
};

// Runs fn(i) for i in [0, n). Work is split into contiguous index blocks;
// results must be written to per-index slots by the callback, which keeps the
// output independent of the worker count. The lowest-block exception, if any,
// is rethrown after all workers join.
inline void parallel_for_indexed(long n, int workers,
                                 const std::function<void(long)>& fn) {
  if (n <= 0) return;
  if (workers <= 1 || n == 1) {
    for (long i = 0; i < n; ++i) fn(i);
    return;
  }
  int t = workers;
  if (static_cast<long>(t) > n) t = static_cast<int>(n);
  std::vector<std::thread> pool;
  pool.reserve(t);
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(t));
  long chunk = (n + t - 1) / t;
  for (int w = 0; w < t; ++w) {
    long lo = w * chunk;
    long hi = lo + chunk < n ? lo + chunk : n;
    if (lo >= hi) break;
    pool.emplace_back([lo, hi, w, &fn, &errors] {
      try {
        for (long i = lo; i < hi; ++i) fn(i);
      } catch (...) {
        errors[static_cast<std::size_t>(w)] = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

}  // namespace solwalk

#endif  // SOLWALK_RNG_HPP_
