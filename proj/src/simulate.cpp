#include "shardsec/simulate.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <nlohmann/json.hpp>

#include "shardsec/sampling.hpp"

namespace shardsec {

std::string sim_mode_label(SimMode mode) {
  return mode == SimMode::fixed_sybil_count ? "fixed" : "sampled";
}

SimMode parse_sim_mode(const std::string& text) {
  if (text == "fixed") return SimMode::fixed_sybil_count;
  if (text == "sampled") return SimMode::sampled_sybil_count;
  throw ValidationError("unknown simulation mode", text);
}

void SimOutcome::merge(const SimOutcome& other) {
  epochs += other.epochs;
  pool_breaches += other.pool_breaches;
  takeover_failures += other.takeover_failures;
  joint_failures += other.joint_failures;
  if (committee_histogram.size() < other.committee_histogram.size()) {
    committee_histogram.resize(other.committee_histogram.size(), 0);
  }
  for (std::size_t i = 0; i < other.committee_histogram.size(); ++i) {
    committee_histogram[i] += other.committee_histogram[i];
  }
}

SimOutcome simulate_epochs(const NetworkParams& params, std::int64_t epochs,
                           std::int64_t threshold, std::uint64_t seed, SimMode mode) {
  if (epochs < 1) throw std::domain_error("epochs must be >= 1");
  if (threshold < 0) throw std::domain_error("threshold must be non-negative");

  const std::int64_t pool = params.id_pool();
  const std::int64_t marked = params.sybil_ids();
  const std::int64_t draws = params.selection_pool();
  const std::int64_t committees = params.committee_count();
  const std::int64_t size = params.committee_size();
  const std::int64_t capacity = params.committee_capacity();
  const std::int64_t fixed_sybils = params.sybil_selected();
  // In fixed mode markers go on committee slots only; in sampled mode the
  // whole selection pool receives them and leftover slots count toward no
  // committee.
  const std::int64_t committee_slots = committees * size;
  const std::int64_t assign_slots =
      mode == SimMode::fixed_sybil_count ? committee_slots : draws;

  SimOutcome out;
  out.epochs = epochs;
  out.seed = seed;
  out.generator = SampleRng::kGeneratorId;
  out.mode = mode;
  out.committee_histogram.assign(1, 0);

  SampleRng rng(seed);
  WithoutReplacementSampler pool_sampler(static_cast<std::int32_t>(pool));
  WithoutReplacementSampler slot_sampler(static_cast<std::int32_t>(assign_slots));
  std::vector<std::int32_t> counts(static_cast<std::size_t>(committees), 0);

  for (std::int64_t epoch = 0; epoch < epochs; ++epoch) {
    // stage 1: draw the selection pool; IDs below `marked` are Sybil
    std::int64_t drawn_sybils = 0;
    pool_sampler.draw(static_cast<std::int32_t>(draws), rng, [&](std::int32_t id) {
      if (id < marked) ++drawn_sybils;
    });
    const bool breached = drawn_sybils >= threshold;
    if (breached) ++out.pool_breaches;

    // stage 2: scatter Sybil markers over slots
    const std::int64_t markers =
        mode == SimMode::fixed_sybil_count ? fixed_sybils : drawn_sybils;
    std::fill(counts.begin(), counts.end(), 0);
    bool taken_over = false;
    if (markers > assign_slots) {
      taken_over = true;  // pigeonhole; cannot place that many markers
    } else {
      slot_sampler.draw(static_cast<std::int32_t>(markers), rng, [&](std::int32_t slot) {
        if (slot < committee_slots) {
          const auto committee = static_cast<std::size_t>(slot / size);
          if (++counts[committee] > capacity) taken_over = true;
        }
      });
    }
    if (taken_over) ++out.takeover_failures;
    if (breached && taken_over) ++out.joint_failures;

    for (std::int64_t c = 0; c < committees; ++c) {
      const auto s = static_cast<std::size_t>(counts[static_cast<std::size_t>(c)]);
      if (s >= out.committee_histogram.size()) out.committee_histogram.resize(s + 1, 0);
      ++out.committee_histogram[s];
    }
  }
  while (!out.committee_histogram.empty() && out.committee_histogram.back() == 0) {
    out.committee_histogram.pop_back();
  }
  return out;
}

SimOutcome simulate_epochs_parallel(const NetworkParams& params, std::int64_t epochs,
                                    std::int64_t threshold, std::uint64_t seed, SimMode mode,
                                    unsigned workers) {
  if (workers <= 1) return simulate_epochs(params, epochs, threshold, seed, mode);
  if (epochs < 1) throw std::domain_error("epochs must be >= 1");
  const auto worker_count = std::min<std::uint64_t>(workers, static_cast<std::uint64_t>(epochs));
  std::vector<SimOutcome> parts(worker_count);
  std::vector<std::thread> threads;
  threads.reserve(worker_count);
  const std::int64_t chunk = epochs / static_cast<std::int64_t>(worker_count);
  std::int64_t assigned = 0;
  for (std::uint64_t w = 0; w < worker_count; ++w) {
    const std::int64_t count = (w + 1 == worker_count) ? epochs - assigned : chunk;
    assigned += count;
    threads.emplace_back([&, w, count] {
      parts[w] =
          simulate_epochs(params, count, threshold, derive_stream_seed(seed, w), mode);
    });
  }
  for (auto& t : threads) t.join();
  SimOutcome merged;
  merged.mode = mode;
  merged.generator = SampleRng::kGeneratorId;
  for (const auto& part : parts) merged.merge(part);
  merged.seed = seed;
  return merged;
}

std::string outcome_json(const SimOutcome& outcome) {
  nlohmann::ordered_json j;
  j["epochs"] = outcome.epochs;
  j["pool_breaches"] = outcome.pool_breaches;
  j["takeover_failures"] = outcome.takeover_failures;
  j["joint_failures"] = outcome.joint_failures;
  j["committee_histogram"] = outcome.committee_histogram;
  j["seed"] = outcome.seed;
  j["generator"] = outcome.generator;
  j["mode"] = sim_mode_label(outcome.mode);
  return j.dump(2) + "\n";
}

std::string histogram_csv(const SimOutcome& outcome) {
  std::ostringstream out;
  out << "committee_sybil_count,frequency\n";
  for (std::size_t s = 0; s < outcome.committee_histogram.size(); ++s) {
    out << s << ',' << outcome.committee_histogram[s] << '\n';
  }
  return out.str();
}

}  // namespace shardsec
