#pragma once

// Deterministic sampling helpers shared by the trial estimator and the epoch
// simulator. The bounded draw is Lemire's multiply-shift with rejection, so
// results are reproducible across standard libraries for a given seed.

#include <cstdint>
#include <random>
#include <utility>
#include <vector>

namespace shardsec {

inline std::uint64_t splitmix64_round(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

// Independent stream seed for a worker index; used when trials or epochs are
// sharded across threads.
inline std::uint64_t derive_stream_seed(std::uint64_t base, std::uint64_t stream) {
  return splitmix64_round(base ^ (0xD1342543DE82EF95ULL * (stream + 1)));
}

class SampleRng {
 public:
  static constexpr const char* kGeneratorId = "mt19937_64";

  explicit SampleRng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  // Uniform in [0, bound), bound >= 1.
  std::uint64_t below(std::uint64_t bound) {
    unsigned __int128 m = static_cast<unsigned __int128>(next()) * bound;
    auto lo = static_cast<std::uint64_t>(m);
    if (lo < bound) {
      const std::uint64_t cutoff = (0 - bound) % bound;
      while (lo < cutoff) {
        m = static_cast<unsigned __int128>(next()) * bound;
        lo = static_cast<std::uint64_t>(m);
      }
    }
    return static_cast<std::uint64_t>(m >> 64);
  }

 private:
  std::mt19937_64 engine_;
};

// Uniform draws without replacement from {0, ..., population-1} by partial
// Fisher-Yates, reverting the swaps afterwards so each call costs O(count)
// instead of O(population).
class WithoutReplacementSampler {
 public:
  explicit WithoutReplacementSampler(std::int32_t population) : items_(population) {
    for (std::int32_t i = 0; i < population; ++i) items_[static_cast<std::size_t>(i)] = i;
  }

  std::int32_t population() const { return static_cast<std::int32_t>(items_.size()); }

  template <typename Visit>
  void draw(std::int32_t count, SampleRng& rng, Visit&& visit) {
    const auto population_size = static_cast<std::int32_t>(items_.size());
    picks_.clear();
    for (std::int32_t i = 0; i < count; ++i) {
      const auto j = i + static_cast<std::int32_t>(
                             rng.below(static_cast<std::uint64_t>(population_size - i)));
      visit(items_[static_cast<std::size_t>(j)]);
      std::swap(items_[static_cast<std::size_t>(i)], items_[static_cast<std::size_t>(j)]);
      picks_.push_back(j);
    }
    for (std::int32_t i = count - 1; i >= 0; --i) {
      std::swap(items_[static_cast<std::size_t>(i)],
                items_[static_cast<std::size_t>(picks_[static_cast<std::size_t>(i)])]);
    }
  }

 private:
  std::vector<std::int32_t> items_;
  std::vector<std::int32_t> picks_;
};

}  // namespace shardsec
