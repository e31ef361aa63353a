#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "evfusion/bba.hpp"
#include "evfusion/errors.hpp"
#include "evfusion/lattice.hpp"

namespace evfusion {

/// The combination rules available as referee functions.
enum class RefereeKind { Dempster, Disjunctive, DuboisPrade, PCR6, PCRSharp };

inline const char* to_string(RefereeKind kind) {
  switch (kind) {
    case RefereeKind::Dempster: return "dempster";
    case RefereeKind::Disjunctive: return "disjunctive";
    case RefereeKind::DuboisPrade: return "dubois_prade";
    case RefereeKind::PCR6: return "pcr6";
    case RefereeKind::PCRSharp: return "pcr_sharp";
  }
  return "?";
}

inline const std::vector<RefereeKind>& all_referee_kinds() {
  static const std::vector<RefereeKind> kinds = {
      RefereeKind::Dempster, RefereeKind::Disjunctive,
      RefereeKind::DuboisPrade, RefereeKind::PCR6, RefereeKind::PCRSharp};
  return kinds;
}

inline std::optional<RefereeKind> referee_kind_from_name(
    const std::string& name) {
  for (RefereeKind kind : all_referee_kinds())
    if (name == to_string(kind)) return kind;
  return std::nullopt;
}

/// Conditional arbitrament: a finite probability distribution over
/// propositions, produced by a referee for one tuple of source focals.
/// The support holds distinct propositions in canonical order with
/// non-negative weights summing to 1; weight on the zero proposition is
/// the rejection case.
struct Arbitrament {
  std::vector<std::pair<Proposition, double>> support;

  double weight_on_zero() const {
    for (const auto& [prop, weight] : support)
      if (prop.is_zero()) return weight;
    return 0.0;
  }

  double total_weight() const {
    double total = 0.0;
    for (const auto& [prop, weight] : support) total += weight;
    return total;
  }
};

namespace detail {

inline void require_tuple(std::span<const Proposition> focals) {
  if (focals.empty())
    throw DomainError("a referee needs at least one source proposition");
  for (std::size_t i = 1; i < focals.size(); ++i)
    require_same_context(focals[0], focals[i]);
}

inline Proposition conj_all(std::span<const Proposition> focals) {
  Proposition out = focals[0];
  for (std::size_t i = 1; i < focals.size(); ++i) out = conj(out, focals[i]);
  return out;
}

inline Proposition disj_all(std::span<const Proposition> focals) {
  Proposition out = focals[0];
  for (std::size_t i = 1; i < focals.size(); ++i) out = disj(out, focals[i]);
  return out;
}

inline Arbitrament point_mass(Proposition p) {
  Arbitrament arb;
  arb.support.emplace_back(std::move(p), 1.0);
  return arb;
}

// Orders a weight map into an Arbitrament, scaling by 1/total.
inline Arbitrament from_weights(
    const std::map<Proposition, double, PropositionLess>& weights,
    double total) {
  Arbitrament arb;
  arb.support.reserve(weights.size());
  for (const auto& [prop, weight] : weights)
    arb.support.emplace_back(prop, weight / total);
  return arb;
}

inline void require_sources(std::span<const Proposition> focals,
                            std::span<const MassAssignment> sources) {
  if (sources.size() != focals.size())
    throw DomainError("one context assignment per source proposition required");
  for (std::size_t i = 0; i < focals.size(); ++i)
    if (sources[i].lattice() != focals[i].lattice())
      throw ContextMismatchError(
          "context assignment and source proposition lattices differ");
}

}  // namespace detail

/// Dempster's rule: all arbitrament goes to the conjunction of the
/// sources' propositions; a zero conjunction is the rejection case.
/// The context assignments play no role.
inline Arbitrament referee_dempster(std::span<const Proposition> focals,
                                    std::span<const MassAssignment> /*sources*/
                                    = {}) {
  detail::require_tuple(focals);
  return detail::point_mass(detail::conj_all(focals));
}

/// Disjunctive rule: all arbitrament goes to the disjunction. Never
/// rejects, since focals are non-zero.
inline Arbitrament referee_disjunctive(std::span<const Proposition> focals,
                                       std::span<const MassAssignment>
                                       /*sources*/ = {}) {
  detail::require_tuple(focals);
  return detail::point_mass(detail::disj_all(focals));
}

/// Dubois & Prade's rule: the conjunction when it is non-zero,
/// otherwise the disjunction. Never rejects.
inline Arbitrament referee_dubois_prade(std::span<const Proposition> focals,
                                        std::span<const MassAssignment>
                                        /*sources*/ = {}) {
  detail::require_tuple(focals);
  Proposition meet = detail::conj_all(focals);
  if (!meet.is_zero()) return detail::point_mass(std::move(meet));
  return detail::point_mass(detail::disj_all(focals));
}

/// PCR6: the conjunction when non-zero; on conflict each source's own
/// proposition receives arbitrament proportional to the mass that
/// source put on it (sources proposing the same proposition pool their
/// shares). Never rejects.
inline Arbitrament referee_pcr6(std::span<const Proposition> focals,
                                std::span<const MassAssignment> sources) {
  detail::require_tuple(focals);
  detail::require_sources(focals, sources);
  Proposition meet = detail::conj_all(focals);
  if (!meet.is_zero()) return detail::point_mass(std::move(meet));
  std::map<Proposition, double, PropositionLess> weights;
  double total = 0.0;
  for (std::size_t i = 0; i < focals.size(); ++i) {
    const double m = sources[i].mass(focals[i]);
    weights[focals[i]] += m;
    total += m;
  }
  if (total <= 0.0)
    throw DomainError(
        "conflicting tuple whose propositions carry no mass in context");
  return detail::from_weights(weights, total);
}

/// Maximal coalitions: the inclusion-maximal subsets of sources whose
/// propositions have a non-zero conjunction, in canonical order
/// (ascending as bitmasks over source indices). Singletons are always
/// consistent, so the result is non-empty.
inline std::vector<std::vector<std::size_t>> maximal_coalitions(
    std::span<const Proposition> focals) {
  detail::require_tuple(focals);
  const std::size_t s = focals.size();
  for (const Proposition& p : focals)
    if (p.is_zero())
      throw DomainError("coalitions are defined for non-zero propositions");
  std::vector<std::uint64_t> consistent;
  for (std::uint64_t group = 1; group < (std::uint64_t{1} << s); ++group) {
    std::optional<Proposition> meet;
    for (std::size_t k = 0; k < s; ++k) {
      if (!(group & (std::uint64_t{1} << k))) continue;
      meet = meet ? conj(*meet, focals[k]) : focals[k];
    }
    if (!meet->is_zero()) consistent.push_back(group);
  }
  std::vector<std::vector<std::size_t>> out;
  for (std::uint64_t group : consistent) {
    bool maximal = true;
    for (std::uint64_t other : consistent) {
      if (other != group && (group & ~other) == 0) {
        maximal = false;
        break;
      }
    }
    if (!maximal) continue;
    std::vector<std::size_t> members;
    for (std::size_t k = 0; k < s; ++k)
      if (group & (std::uint64_t{1} << k)) members.push_back(k);
    out.push_back(std::move(members));
  }
  return out;
}

/// PCR#: the conjunction when non-zero; on conflict the maximal
/// consistent coalitions arbitrate, each one weighting its own
/// conjunction by the product of its members' context masses.
/// Coalitions sharing a conjunction pool their weights. Never rejects.
inline Arbitrament referee_pcr_sharp(std::span<const Proposition> focals,
                                     std::span<const MassAssignment> sources) {
  detail::require_tuple(focals);
  detail::require_sources(focals, sources);
  Proposition meet = detail::conj_all(focals);
  if (!meet.is_zero()) return detail::point_mass(std::move(meet));
  std::map<Proposition, double, PropositionLess> weights;
  double total = 0.0;
  for (const auto& coalition : maximal_coalitions(focals)) {
    double product = 1.0;
    std::optional<Proposition> group_meet;
    for (std::size_t k : coalition) {
      product *= sources[k].mass(focals[k]);
      group_meet = group_meet ? conj(*group_meet, focals[k]) : focals[k];
    }
    weights[*group_meet] += product;
    total += product;
  }
  if (total <= 0.0)
    throw DomainError(
        "every maximal coalition has zero weight in the given context");
  return detail::from_weights(weights, total);
}

/// Dispatches to the referee implementing `kind`.
inline Arbitrament evaluate(RefereeKind kind,
                            std::span<const Proposition> focals,
                            std::span<const MassAssignment> sources) {
  switch (kind) {
    case RefereeKind::Dempster: return referee_dempster(focals, sources);
    case RefereeKind::Disjunctive: return referee_disjunctive(focals, sources);
    case RefereeKind::DuboisPrade:
      return referee_dubois_prade(focals, sources);
    case RefereeKind::PCR6: return referee_pcr6(focals, sources);
    case RefereeKind::PCRSharp: return referee_pcr_sharp(focals, sources);
  }
  throw DomainError("unknown referee kind");
}

}  // namespace evfusion
