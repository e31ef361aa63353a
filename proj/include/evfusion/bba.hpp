#pragma once

#include <cmath>
#include <cstddef>
#include <map>
#include <string>
#include <utility>

#include "evfusion/errors.hpp"
#include "evfusion/lattice.hpp"
#include "evfusion/random.hpp"

namespace evfusion {

/// Tolerance on |total mass - 1| below which an assignment counts as
/// normalized.
inline constexpr double kNormalizationTolerance = 1e-9;

/// A basic belief assignment: non-negative mass on non-zero
/// propositions of one lattice context. Values are immutable; the
/// building operations below return new assignments. Focal iteration
/// order is the canonical key order, identical across runs.
class MassAssignment {
 public:
  using EntryMap = std::map<Proposition, double, PropositionLess>;

  explicit MassAssignment(Lattice lattice) : lattice_(std::move(lattice)) {}

  MassAssignment(Lattice lattice, EntryMap entries)
      : lattice_(std::move(lattice)), entries_(std::move(entries)) {
    for (const auto& [prop, mass] : entries_) {
      if (prop.lattice() != lattice_)
        throw ContextMismatchError(
            "focal proposition belongs to a different lattice context");
      if (prop.is_zero())
        throw ContradictionError("the zero proposition cannot carry mass");
      if (!(mass > 0.0))
        throw DomainError("focal masses must be strictly positive");
    }
  }

  const Lattice& lattice() const noexcept { return lattice_; }
  const EntryMap& entries() const noexcept { return entries_; }
  std::size_t focal_count() const noexcept { return entries_.size(); }
  bool empty() const noexcept { return entries_.empty(); }

  double mass(const Proposition& p) const {
    auto it = entries_.find(p);
    return it == entries_.end() ? 0.0 : it->second;
  }

  double total_mass() const noexcept {
    double total = 0.0;
    for (const auto& [prop, mass] : entries_) total += mass;
    return total;
  }

  bool is_normalized(double tolerance = kNormalizationTolerance) const {
    return std::abs(total_mass() - 1.0) <= tolerance;
  }

 private:
  Lattice lattice_;
  EntryMap entries_;
};

namespace detail {

// Relaxation policy: repeatedly merge the two lightest focals (ties by
// canonical key order, which is the map order) into their disjunction
// until at most `max_focals` remain. Total mass is preserved.
inline void relax_entries(MassAssignment::EntryMap& entries,
                          std::size_t max_focals) {
  while (entries.size() > max_focals && entries.size() >= 2) {
    auto lightest = entries.end();
    auto second = entries.end();
    for (auto it = entries.begin(); it != entries.end(); ++it) {
      if (lightest == entries.end() || it->second < lightest->second) {
        second = lightest;
        lightest = it;
      } else if (second == entries.end() || it->second < second->second) {
        second = it;
      }
    }
    const Proposition merged = disj(lightest->first, second->first);
    const double moved = lightest->second + second->second;
    entries.erase(lightest);
    entries.erase(second);
    entries[merged] += moved;
  }
}

}  // namespace detail

/// Returns `bba` with `w` more mass on `p`. Adding mass to the zero
/// proposition contradicts m(0) = 0 and is rejected; zero-weight adds
/// create no entry.
inline MassAssignment add_mass(const MassAssignment& bba, const Proposition& p,
                               double w) {
  if (p.lattice() != bba.lattice())
    throw ContextMismatchError(
        "proposition belongs to a different lattice context");
  if (w < 0.0) throw DomainError("mass increments must be non-negative");
  if (p.is_zero() && w > 0.0)
    throw ContradictionError("the zero proposition cannot carry mass");
  MassAssignment::EntryMap entries = bba.entries();
  if (w > 0.0) entries[p] += w;
  return MassAssignment(bba.lattice(), std::move(entries));
}

/// Scales the assignment so its total mass is 1.
inline MassAssignment normalize(const MassAssignment& bba) {
  const double total = bba.total_mass();
  if (total <= 0.0)
    throw DomainError("cannot normalize an assignment with no mass");
  MassAssignment::EntryMap entries = bba.entries();
  for (auto& [prop, mass] : entries) mass /= total;
  return MassAssignment(bba.lattice(), std::move(entries));
}

/// Coarsens a normalized assignment down to at most `max_focals` focal
/// elements by merging the lightest focals into their disjunction.
/// Every original focal keeps a surviving focal above it in the lattice
/// order, and the total mass is preserved.
inline MassAssignment relax(const MassAssignment& bba, std::size_t max_focals) {
  if (max_focals < 1) throw DomainError("max_focals must be at least 1");
  if (!bba.is_normalized())
    throw DomainError("relax requires a normalized assignment");
  MassAssignment::EntryMap entries = bba.entries();
  detail::relax_entries(entries, max_focals);
  return MassAssignment(bba.lattice(), std::move(entries));
}

/// Draws one focal element with probability equal to its mass,
/// consuming exactly one uniform variate. Selection walks the focals in
/// canonical order accumulating masses, so the draw is a deterministic
/// function of the variate.
inline Proposition sample_focal(const MassAssignment& bba, RandomStream& rng) {
  if (!bba.is_normalized())
    throw DomainError("sample_focal requires a normalized assignment");
  const double u = rng.next_unit();
  double cumulative = 0.0;
  const auto& entries = bba.entries();
  for (auto it = entries.begin(); it != entries.end(); ++it) {
    cumulative += it->second;
    if (u < cumulative) return it->first;
  }
  return entries.rbegin()->first;  // u landed in the rounding tail
}

}  // namespace evfusion
