#pragma once

// Shared helpers for the test suites: deterministic random frames,
// propositions, and assignments over every lattice kind.

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "evfusion/evfusion.hpp"

namespace evtest {

using namespace evfusion;

inline std::vector<std::string> atom_names(std::size_t n) {
  static const std::vector<std::string> pool = {"a", "b", "c", "d", "e", "f"};
  return {pool.begin(), pool.begin() + n};
}

inline Lattice small_lattice(LatticeKind kind, std::size_t n) {
  return make_lattice(kind, FrameSpec(atom_names(n)));
}

/// A uniformly random non-zero member of the lattice.
inline Proposition random_proposition(const Lattice& lattice,
                                      std::mt19937_64& rng) {
  const std::size_t m = lattice.minterm_count();
  while (true) {
    BitVec bits(m);
    if (lattice.is_hyper()) {
      const std::size_t seeds = 1 + rng() % 3;
      for (std::size_t k = 0; k < seeds; ++k) bits.set(rng() % m);
      bits = lattice.upward_closure(std::move(bits));
    } else {
      for (std::size_t i = 0; i < m; ++i)
        if (rng() & 1) bits.set(i);
    }
    if (bits.any()) return lattice.from_minterms(std::move(bits));
  }
}

/// A normalized assignment with up to `max_focals` distinct focals.
inline MassAssignment random_bba(const Lattice& lattice, std::mt19937_64& rng,
                                 std::size_t max_focals = 4) {
  const std::size_t wanted = 1 + rng() % max_focals;
  MassAssignment bba(lattice);
  for (std::size_t k = 0; k < wanted; ++k) {
    const double weight =
        0.05 + static_cast<double>(rng() % 1000) / 1000.0;
    bba = add_mass(bba, random_proposition(lattice, rng), weight);
  }
  return normalize(bba);
}

inline std::vector<MassAssignment> random_sources(const Lattice& lattice,
                                                  std::mt19937_64& rng,
                                                  std::size_t count,
                                                  std::size_t max_focals = 4) {
  std::vector<MassAssignment> sources;
  sources.reserve(count);
  for (std::size_t i = 0; i < count; ++i)
    sources.push_back(random_bba(lattice, rng, max_focals));
  return sources;
}

/// Independent upward-closed-set counter: filters every subset of the
/// minterm space. Only feasible for small frames; used to check the
/// lattice's own enumeration.
inline std::uint64_t count_up_sets_brute_force(const Lattice& lattice,
                                               bool include_empty) {
  const std::size_t m = lattice.minterm_count();
  std::uint64_t count = 0;
  for (std::uint64_t value = 0; value < (std::uint64_t{1} << m); ++value) {
    if (value == 0) {
      if (include_empty) ++count;
      continue;
    }
    bool up_closed = true;
    for (std::size_t i = 0; i < m && up_closed; ++i) {
      if (!(value & (std::uint64_t{1} << i))) continue;
      const std::uint64_t mask = lattice.minterm_mask(i);
      for (std::size_t b = 0; b < lattice.atom_count() && up_closed; ++b) {
        if (mask & (1u << b)) continue;
        const std::size_t super = lattice.minterm_index(mask | (1u << b));
        up_closed = (value & (std::uint64_t{1} << super)) != 0;
      }
    }
    if (up_closed) ++count;
  }
  return count;
}

}  // namespace evtest
