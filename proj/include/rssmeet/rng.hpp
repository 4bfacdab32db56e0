#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>

namespace rssmeet {

using Rng = std::mt19937_64;

/// SplitMix64 finalizer. Used only to derive seeds, never as a generator.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Folds a sequence of words into one seed. Order matters.
constexpr std::uint64_t derive_seed(std::uint64_t base,
                                    std::initializer_list<std::uint64_t> words) {
  std::uint64_t h = mix64(base);
  for (auto w : words) h = mix64(h ^ mix64(w));
  return h;
}

// Stream tags keep placement, link and policy streams of one trial disjoint.
enum class StreamKind : std::uint64_t { Placement = 1, Link = 2, Policy = 3 };

/// Seed of one trial inside an experiment.
constexpr std::uint64_t trial_seed(std::uint64_t master, std::uint64_t config_index,
                                   std::uint64_t trial_index) {
  return derive_seed(master, {config_index, trial_index});
}

inline Rng placement_stream(std::uint64_t trial) {
  return Rng(derive_seed(trial, {static_cast<std::uint64_t>(StreamKind::Placement)}));
}

inline Rng link_stream(std::uint64_t trial, std::uint64_t tx, std::uint64_t rx) {
  return Rng(derive_seed(trial, {static_cast<std::uint64_t>(StreamKind::Link), tx, rx}));
}

inline Rng policy_stream(std::uint64_t trial, std::uint64_t player) {
  return Rng(derive_seed(trial, {static_cast<std::uint64_t>(StreamKind::Policy), player}));
}

}  // namespace rssmeet
