#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "evfusion/bba.hpp"
#include "evfusion/errors.hpp"
#include "evfusion/lattice.hpp"
#include "evfusion/random.hpp"
#include "evfusion/referee.hpp"

namespace evfusion {

/// Exhaustive tuple enumeration, optionally coarsening the output
/// accumulator whenever it grows past max_focals.
struct ExactEngine {
  std::optional<std::size_t> max_focals;
};

/// Monte Carlo realization with a pinned seed.
struct SampledEngine {
  std::uint64_t sample_count = 0;
  std::uint64_t seed = 0;
};

using EngineConfig = std::variant<ExactEngine, SampledEngine>;

/// Most focal tuples the exact engine will enumerate.
inline constexpr std::uint64_t kDefaultTupleCap = 10'000'000;

struct FusionDiagnostics {
  bool sampled = false;
  std::uint64_t tuples_enumerated = 0;  // exact engine
  std::uint64_t samples_drawn = 0;      // sampled engine
  std::uint64_t samples_rejected = 0;   // sampled engine
  bool relax_applied = false;
  /// Exact engine: total accepted mass accumulated before the 1/(1-z)
  /// rescale; together with the rejection rate it accounts for all the
  /// enumerated probability mass.
  double pre_normalization_mass = 0.0;

  const char* engine_name() const { return sampled ? "sampled" : "exact"; }
};

struct FusionResult {
  MassAssignment fused;
  double rejection_rate = 0.0;
  RefereeKind rule = RefereeKind::Dempster;
  EngineConfig engine;
  FusionDiagnostics diagnostics;
};

namespace detail {

inline void require_fusable(std::span<const MassAssignment> sources) {
  if (sources.empty())
    throw DomainError("fusion needs at least one source assignment");
  for (const MassAssignment& source : sources) {
    if (source.lattice() != sources.front().lattice())
      throw ContextMismatchError(
          "source assignments belong to different lattice contexts");
    if (!source.is_normalized())
      throw DomainError("fusion requires normalized source assignments");
  }
}

using FocalList = std::vector<std::pair<Proposition, double>>;

inline std::vector<FocalList> snapshot_focals(
    std::span<const MassAssignment> sources) {
  std::vector<FocalList> focals;
  focals.reserve(sources.size());
  for (const MassAssignment& source : sources)
    focals.emplace_back(source.entries().begin(), source.entries().end());
  return focals;
}

inline std::uint64_t tuple_space_size(const std::vector<FocalList>& focals,
                                      std::uint64_t cap) {
  std::uint64_t total = 1;
  for (const FocalList& list : focals) {
    if (list.empty() || total > cap / list.size())
      throw CapacityError("focal tuple space exceeds the cap of " +
                          std::to_string(cap) + " tuples");
    total *= list.size();
  }
  return total;
}

// Walks the tuple space with the first source outermost and focals in
// canonical order; calls visit(tuple, product-of-masses).
template <typename Visit>
void for_each_tuple(const std::vector<FocalList>& focals, Visit&& visit) {
  const std::size_t s = focals.size();
  std::vector<std::size_t> index(s, 0);
  std::vector<Proposition> tuple;
  tuple.reserve(s);
  for (const FocalList& list : focals) tuple.push_back(list.front().first);
  while (true) {
    double weight = 1.0;
    for (std::size_t i = 0; i < s; ++i) weight *= focals[i][index[i]].second;
    visit(std::span<const Proposition>(tuple), weight);
    std::size_t i = s;
    while (i-- > 0) {
      if (++index[i] < focals[i].size()) {
        tuple[i] = focals[i][index[i]].first;
        break;
      }
      index[i] = 0;
      tuple[i] = focals[i].front().first;
    }
    if (i == static_cast<std::size_t>(-1)) return;
  }
}

}  // namespace detail

/// Exact fusion: enumerates every focal tuple, lets the referee
/// arbitrate it, and accumulates the arbitrament weighted by the
/// tuple's joint mass. Arbitrament for the zero proposition accumulates
/// into the rejection rate z, never into the output, and the surviving
/// mass is rescaled by 1/(1-z). With max_focals set, the accumulator is
/// coarsened (never z) whenever it outgrows the cap.
inline FusionResult fuse_exact(std::span<const MassAssignment> sources,
                               RefereeKind rule,
                               std::optional<std::size_t> max_focals = {},
                               std::uint64_t tuple_cap = kDefaultTupleCap) {
  detail::require_fusable(sources);
  if (max_focals && *max_focals < 1)
    throw DomainError("max_focals must be at least 1");
  const auto focals = detail::snapshot_focals(sources);

  FusionDiagnostics diagnostics;
  diagnostics.tuples_enumerated = detail::tuple_space_size(focals, tuple_cap);

  MassAssignment::EntryMap accumulator;
  double rejected = 0.0;
  detail::for_each_tuple(
      focals, [&](std::span<const Proposition> tuple, double weight) {
        const Arbitrament arbitrament = evaluate(rule, tuple, sources);
        for (const auto& [prop, share] : arbitrament.support) {
          if (share <= 0.0) continue;
          if (prop.is_zero()) {
            rejected += weight * share;
            continue;
          }
          accumulator[prop] += weight * share;
          if (max_focals && accumulator.size() > *max_focals) {
            detail::relax_entries(accumulator, *max_focals);
            diagnostics.relax_applied = true;
          }
        }
      });

  if (accumulator.empty())
    throw TotalConflictError(
        "every focal tuple was rejected; the rejection rate is 1");
  for (const auto& [prop, mass] : accumulator)
    diagnostics.pre_normalization_mass += mass;

  const double scale = 1.0 - rejected;
  MassAssignment::EntryMap fused = std::move(accumulator);
  for (auto& [prop, mass] : fused) mass /= scale;
  return FusionResult{
      MassAssignment(sources.front().lattice(), std::move(fused)), rejected,
      rule, ExactEngine{max_focals}, diagnostics};
}

/// Monte Carlo fusion: draws focal tuples from the sources and a
/// proposition from each arbitrament, tallying rejections separately.
/// Per sample the variate order is fixed: one draw per source in index
/// order, then exactly one draw for the arbitrament, so results are a
/// deterministic function of (inputs, n, seed).
inline FusionResult fuse_sampled(std::span<const MassAssignment> sources,
                                 RefereeKind rule, std::uint64_t sample_count,
                                 std::uint64_t seed) {
  detail::require_fusable(sources);
  if (sample_count < 1) throw DomainError("sample count must be at least 1");

  RandomStream rng(seed);
  std::map<Proposition, std::uint64_t, PropositionLess> tally;
  std::uint64_t rejected = 0;
  std::vector<Proposition> tuple;
  tuple.reserve(sources.size());
  for (std::uint64_t draw = 0; draw < sample_count; ++draw) {
    tuple.clear();
    for (const MassAssignment& source : sources)
      tuple.push_back(sample_focal(source, rng));
    const Arbitrament arbitrament = evaluate(rule, tuple, sources);
    const double u = rng.next_unit();
    const Proposition* chosen = &arbitrament.support.back().first;
    double cumulative = 0.0;
    for (const auto& [prop, share] : arbitrament.support) {
      cumulative += share;
      if (u < cumulative) {
        chosen = &prop;
        break;
      }
    }
    if (chosen->is_zero())
      ++rejected;
    else
      ++tally[*chosen];
  }

  if (rejected == sample_count)
    throw TotalConflictError("all " + std::to_string(sample_count) +
                             " samples were rejected");
  const double accepted = static_cast<double>(sample_count - rejected);
  MassAssignment::EntryMap fused;
  for (const auto& [prop, count] : tally)
    fused.emplace(prop, static_cast<double>(count) / accepted);

  FusionDiagnostics diagnostics;
  diagnostics.sampled = true;
  diagnostics.samples_drawn = sample_count;
  diagnostics.samples_rejected = rejected;
  return FusionResult{
      MassAssignment(sources.front().lattice(), std::move(fused)),
      static_cast<double>(rejected) / static_cast<double>(sample_count), rule,
      SampledEngine{sample_count, seed}, diagnostics};
}

/// Runs the engine described by `config`.
inline FusionResult fuse(std::span<const MassAssignment> sources,
                         RefereeKind rule, const EngineConfig& config) {
  if (const auto* exact = std::get_if<ExactEngine>(&config))
    return fuse_exact(sources, rule, exact->max_focals);
  const auto& sampled = std::get<SampledEngine>(config);
  return fuse_sampled(sources, rule, sampled.sample_count, sampled.seed);
}

/// Conjunctive consensus, computed by direct tuple enumeration without
/// the referee machinery: the unnormalized product-intersection
/// combination restricted to non-zero propositions, plus the mass that
/// fell on the zero proposition (the conflict). Serves as an
/// independent check of Dempster fusion.
inline std::pair<MassAssignment, double> conjunctive_consensus(
    std::span<const MassAssignment> sources,
    std::uint64_t tuple_cap = kDefaultTupleCap) {
  detail::require_fusable(sources);
  const auto focals = detail::snapshot_focals(sources);
  detail::tuple_space_size(focals, tuple_cap);

  MassAssignment::EntryMap combined;
  double conflict = 0.0;
  detail::for_each_tuple(
      focals, [&](std::span<const Proposition> tuple, double weight) {
        BitVec meet = tuple.front().minterms();
        for (std::size_t i = 1; i < tuple.size(); ++i)
          meet = meet & tuple[i].minterms();
        if (meet.none()) {
          conflict += weight;
          return;
        }
        combined[sources.front().lattice().from_minterms_unchecked(
            std::move(meet))] += weight;
      });
  return {MassAssignment(sources.front().lattice(), std::move(combined)),
          conflict};
}

}  // namespace evfusion
