#pragma once

#include <algorithm>
#include <atomic>
#include <cassert>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "evfusion/bitvec.hpp"
#include "evfusion/errors.hpp"
#include "evfusion/frame.hpp"

namespace evfusion {

/// The five proposition structures a frame can generate.
enum class LatticeKind {
  Powerset,
  FreeBoolean,
  Superpowerset,
  OpenHyperpowerset,
  ClosedHyperpowerset,
};

inline const char* to_string(LatticeKind kind) {
  switch (kind) {
    case LatticeKind::Powerset: return "powerset";
    case LatticeKind::FreeBoolean: return "free_boolean";
    case LatticeKind::Superpowerset: return "superpowerset";
    case LatticeKind::OpenHyperpowerset: return "open_hyperpowerset";
    case LatticeKind::ClosedHyperpowerset: return "closed_hyperpowerset";
  }
  return "?";
}

inline const std::vector<LatticeKind>& all_lattice_kinds() {
  static const std::vector<LatticeKind> kinds = {
      LatticeKind::Powerset,
      LatticeKind::FreeBoolean,
      LatticeKind::Superpowerset,
      LatticeKind::OpenHyperpowerset,
      LatticeKind::ClosedHyperpowerset,
  };
  return kinds;
}

inline std::optional<LatticeKind> lattice_kind_from_name(const std::string& name) {
  for (LatticeKind kind : all_lattice_kinds())
    if (name == to_string(kind)) return kind;
  return std::nullopt;
}

/// Largest minterm space a context may declare (bits per proposition).
inline constexpr std::size_t kDefaultMintermCap = 1u << 16;

/// Largest element count enumerate_elements will produce by default.
inline constexpr std::size_t kDefaultEnumerationCap = 1u << 20;

class Proposition;

namespace detail {

struct LatticeState {
  FrameSpec frame;
  LatticeKind kind;
  std::size_t minterm_count;
  std::uint64_t id;
};

inline std::uint64_t next_lattice_id() {
  static std::atomic<std::uint64_t> counter{1};
  return counter.fetch_add(1);
}

}  // namespace detail

/// Shared, immutable lattice context. Copies are cheap handles to the
/// same context; propositions compare equal only within one context.
///
/// Every proposition is a set of minterms, where a minterm is a
/// non-trivial conjunction of atom literals identified by the subset
/// of atoms it asserts:
///   - Powerset: one minterm per atom (the atoms are exclusive).
///   - FreeBoolean: all 2^n atom subsets, including the empty one.
///   - Superpowerset: the 2^n - 1 non-empty subsets (the frame is
///     exhaustive, so the all-negative minterm is dropped).
///   - Open/ClosedHyperpowerset: the same 2^n - 1 subsets, but only
///     upward-closed minterm sets are members; the closed variant also
///     admits the empty set as a member, the open one does not.
class Lattice {
 public:
  LatticeKind kind() const noexcept { return state_->kind; }
  const FrameSpec& frame() const noexcept { return state_->frame; }
  std::size_t atom_count() const noexcept { return state_->frame.atom_count(); }
  std::size_t minterm_count() const noexcept { return state_->minterm_count; }
  std::uint64_t id() const noexcept { return state_->id; }

  bool is_complemented() const noexcept {
    return state_->kind == LatticeKind::Powerset ||
           state_->kind == LatticeKind::FreeBoolean ||
           state_->kind == LatticeKind::Superpowerset;
  }

  bool is_hyper() const noexcept {
    return state_->kind == LatticeKind::OpenHyperpowerset ||
           state_->kind == LatticeKind::ClosedHyperpowerset;
  }

  bool operator==(const Lattice& other) const noexcept {
    return state_->id == other.state_->id;
  }
  bool operator!=(const Lattice& other) const noexcept {
    return !(*this == other);
  }

  /// Atom subset asserted by the minterm at `index`.
  std::uint64_t minterm_mask(std::size_t index) const {
    switch (state_->kind) {
      case LatticeKind::Powerset:
        return std::uint64_t{1} << index;
      case LatticeKind::FreeBoolean:
        return index;
      default:
        return index + 1;
    }
  }

  /// Inverse of minterm_mask; the mask must denote a minterm of this kind.
  std::size_t minterm_index(std::uint64_t mask) const {
    switch (state_->kind) {
      case LatticeKind::Powerset:
        return static_cast<std::size_t>(__builtin_ctzll(mask));
      case LatticeKind::FreeBoolean:
        return mask;
      default:
        return mask - 1;
    }
  }

  Proposition zero() const;
  Proposition one() const;
  Proposition atom(std::size_t atom_index) const;

  /// Wraps a raw minterm set, validating membership in this lattice.
  Proposition from_minterms(BitVec bits) const;

  /// Wraps a raw minterm set without the membership check. Intended for
  /// results of operations that preserve membership (conj, disj,
  /// complement, enumeration); the width must still match.
  Proposition from_minterms_unchecked(BitVec bits) const;

  /// True when `bits` denotes a member (for hyper kinds: upward closed;
  /// the open variant additionally rejects the empty set).
  bool is_member(const BitVec& bits) const {
    if (bits.size() != state_->minterm_count) return false;
    if (!is_hyper()) return true;
    if (bits.none())
      return state_->kind == LatticeKind::ClosedHyperpowerset;
    return is_up_closed(bits);
  }

  /// Smallest upward-closed superset of `bits` (identity for non-hyper
  /// kinds, where every minterm set is a member).
  BitVec upward_closure(BitVec bits) const {
    if (!is_hyper()) return bits;
    const std::size_t n = atom_count();
    // Ascending index = ascending mask, so by the time a minterm is
    // visited every subset of it has already propagated upward one step.
    for (std::size_t index = 0; index < state_->minterm_count; ++index) {
      if (!bits.test(index)) continue;
      const std::uint64_t mask = minterm_mask(index);
      for (std::size_t b = 0; b < n; ++b) {
        if (mask & (std::uint64_t{1} << b)) continue;
        bits.set(minterm_index(mask | (std::uint64_t{1} << b)));
      }
    }
    return bits;
  }

 private:
  friend Lattice make_lattice(LatticeKind, FrameSpec, std::size_t);

  explicit Lattice(std::shared_ptr<const detail::LatticeState> state)
      : state_(std::move(state)) {}

  bool is_up_closed(const BitVec& bits) const {
    const std::size_t n = atom_count();
    for (std::size_t index = 0; index < bits.size(); ++index) {
      if (!bits.test(index)) continue;
      const std::uint64_t mask = minterm_mask(index);
      for (std::size_t b = 0; b < n; ++b) {
        if (mask & (std::uint64_t{1} << b)) continue;
        if (!bits.test(minterm_index(mask | (std::uint64_t{1} << b)))) return false;
      }
    }
    return true;
  }

  std::shared_ptr<const detail::LatticeState> state_;
};

/// An element of a lattice context: a set of minterms.
///
/// For open hyperpowersets the all-zero value is not a member; it only
/// arises as the result of a conjunction and denotes rejection.
class Proposition {
 public:
  const Lattice& lattice() const noexcept { return lattice_; }
  const BitVec& minterms() const noexcept { return bits_; }

  bool is_zero() const noexcept { return bits_.none(); }
  bool is_one() const noexcept { return bits_.all(); }

  bool operator==(const Proposition& other) const {
    return lattice_ == other.lattice_ && bits_ == other.bits_;
  }
  bool operator!=(const Proposition& other) const { return !(*this == other); }

 private:
  friend class Lattice;

  Proposition(Lattice lattice, BitVec bits)
      : lattice_(std::move(lattice)), bits_(std::move(bits)) {}

  Lattice lattice_;
  BitVec bits_;
};

inline Proposition Lattice::zero() const {
  return Proposition(*this, BitVec(state_->minterm_count));
}

inline Proposition Lattice::one() const {
  return Proposition(*this, BitVec::ones(state_->minterm_count));
}

inline Proposition Lattice::atom(std::size_t atom_index) const {
  if (atom_index >= atom_count())
    throw DomainError("atom index " + std::to_string(atom_index) +
                      " out of range for a frame of " +
                      std::to_string(atom_count()) + " atoms");
  BitVec bits(state_->minterm_count);
  if (state_->kind == LatticeKind::Powerset) {
    bits.set(atom_index);
  } else {
    for (std::size_t index = 0; index < state_->minterm_count; ++index)
      if (minterm_mask(index) & (std::uint64_t{1} << atom_index)) bits.set(index);
  }
  return Proposition(*this, std::move(bits));
}

inline Proposition Lattice::from_minterms(BitVec bits) const {
  if (bits.size() != state_->minterm_count)
    throw DomainError("minterm set width does not match the lattice");
  if (!is_member(bits))
    throw DomainError(is_hyper() && bits.none()
                          ? "the empty set is not a member of an open hyperpowerset"
                          : "minterm set is not upward closed");
  return Proposition(*this, std::move(bits));
}

inline Proposition Lattice::from_minterms_unchecked(BitVec bits) const {
  assert(bits.size() == state_->minterm_count);
  return Proposition(*this, std::move(bits));
}

/// Builds a lattice context over `frame`. The minterm space must fit in
/// `minterm_cap` bits (default 2^16, i.e. 16 atoms for the kinds whose
/// minterm space grows exponentially).
inline Lattice make_lattice(LatticeKind kind, FrameSpec frame,
                            std::size_t minterm_cap = kDefaultMintermCap) {
  const std::size_t n = frame.atom_count();
  std::size_t minterms = 0;
  if (kind == LatticeKind::Powerset) {
    if (n > 64)
      throw CapacityError("powerset frames support at most 64 atoms, got " +
                          std::to_string(n));
    minterms = n;
  } else {
    if (n >= 63 || (std::size_t{1} << n) > minterm_cap + 1)
      throw CapacityError("frame of " + std::to_string(n) +
                          " atoms exceeds the minterm cap of " +
                          std::to_string(minterm_cap) + " for lattice kind " +
                          to_string(kind));
    minterms = (std::size_t{1} << n) - (kind == LatticeKind::FreeBoolean ? 0 : 1);
  }
  if (minterms > minterm_cap)
    throw CapacityError("minterm space of " + std::to_string(minterms) +
                        " exceeds the cap of " + std::to_string(minterm_cap));
  auto state = std::make_shared<detail::LatticeState>(detail::LatticeState{
      std::move(frame), kind, minterms, detail::next_lattice_id()});
  return Lattice(std::move(state));
}

namespace detail {

inline void require_same_context(const Proposition& a, const Proposition& b) {
  if (a.lattice() != b.lattice())
    throw ContextMismatchError(
        "propositions belong to different lattice contexts");
}

}  // namespace detail

/// Meet: the conjunction a AND b. In an open hyperpowerset the result
/// may be the (non-member) zero value, which callers must treat as the
/// rejection case.
inline Proposition conj(const Proposition& a, const Proposition& b) {
  detail::require_same_context(a, b);
  return a.lattice().from_minterms_unchecked(a.minterms() & b.minterms());
}

/// Join: the disjunction a OR b.
inline Proposition disj(const Proposition& a, const Proposition& b) {
  detail::require_same_context(a, b);
  return a.lattice().from_minterms_unchecked(a.minterms() | b.minterms());
}

/// Boolean complement. Only the complemented kinds support it.
inline Proposition complement(const Proposition& a) {
  if (!a.lattice().is_complemented())
    throw UnsupportedOperationError(
        std::string("complement is not defined for ") +
        to_string(a.lattice().kind()));
  return a.lattice().from_minterms_unchecked(~a.minterms());
}

/// Lattice partial order: a <= b iff conj(a, b) == a.
inline bool leq(const Proposition& a, const Proposition& b) {
  detail::require_same_context(a, b);
  return a.minterms().is_subset_of(b.minterms());
}

/// Injective byte encoding of (context id, minterm set). Lexicographic
/// comparison of keys yields a total order in which the zero
/// proposition of a context comes first.
inline std::string canonical_key(const Proposition& a) {
  std::string key;
  key.reserve(8 + (a.minterms().size() + 7) / 8);
  const std::uint64_t id = a.lattice().id();
  for (int shift = 56; shift >= 0; shift -= 8)
    key.push_back(static_cast<char>((id >> shift) & 0xff));
  a.minterms().append_bytes(key);
  return key;
}

/// Strict weak order matching canonical_key comparison; usable as a map
/// comparator for deterministic focal iteration.
struct PropositionLess {
  bool operator()(const Proposition& a, const Proposition& b) const {
    if (a.lattice().id() != b.lattice().id())
      return a.lattice().id() < b.lattice().id();
    return a.minterms().compare(b.minterms()) < 0;
  }
};

namespace detail {

// Emits every upward-closed subset of the minterm space by assigning
// minterms in decreasing-popcount order: a minterm may only be included
// once all of its immediate supersets are.
inline void enumerate_up_sets(const Lattice& lattice,
                              const std::vector<std::size_t>& order,
                              std::size_t depth, BitVec& current,
                              std::vector<BitVec>& out, std::size_t cap) {
  if (depth == order.size()) {
    if (out.size() >= cap)
      throw CapacityError("enumeration exceeds the cap of " +
                          std::to_string(cap) + " elements");
    out.push_back(current);
    return;
  }
  const std::size_t index = order[depth];
  enumerate_up_sets(lattice, order, depth + 1, current, out, cap);
  const std::uint64_t mask = lattice.minterm_mask(index);
  bool closed = true;
  for (std::size_t b = 0; b < lattice.atom_count() && closed; ++b) {
    if (mask & (std::uint64_t{1} << b)) continue;
    closed = current.test(lattice.minterm_index(mask | (std::uint64_t{1} << b)));
  }
  if (closed) {
    current.set(index, true);
    enumerate_up_sets(lattice, order, depth + 1, current, out, cap);
    current.set(index, false);
  }
}

}  // namespace detail

/// All members of the lattice in canonical (ascending key) order.
inline std::vector<Proposition> enumerate_elements(
    const Lattice& lattice, std::size_t cap = kDefaultEnumerationCap) {
  std::vector<BitVec> sets;
  const std::size_t m = lattice.minterm_count();
  if (!lattice.is_hyper()) {
    if (m >= 63 || (std::uint64_t{1} << m) > cap)
      throw CapacityError("enumeration of 2^" + std::to_string(m) +
                          " elements exceeds the cap of " +
                          std::to_string(cap));
    const std::uint64_t total = std::uint64_t{1} << m;
    sets.reserve(total);
    for (std::uint64_t value = 0; value < total; ++value) {
      BitVec bits(m);
      for (std::size_t i = 0; i < m; ++i)
        if (value & (std::uint64_t{1} << i)) bits.set(i);
      sets.push_back(std::move(bits));
    }
  } else {
    std::vector<std::size_t> order(m);
    for (std::size_t i = 0; i < m; ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      const auto pa = __builtin_popcountll(lattice.minterm_mask(a));
      const auto pb = __builtin_popcountll(lattice.minterm_mask(b));
      if (pa != pb) return pa > pb;
      return lattice.minterm_mask(a) < lattice.minterm_mask(b);
    });
    BitVec current(m);
    // The recursion also emits the empty set, which the open kind drops,
    // so its budget is one wider.
    const bool open = lattice.kind() == LatticeKind::OpenHyperpowerset;
    detail::enumerate_up_sets(lattice, order, 0, current, sets,
                              open ? cap + 1 : cap);
    if (open)
      std::erase_if(sets, [](const BitVec& bits) { return bits.none(); });
    std::sort(sets.begin(), sets.end(),
              [](const BitVec& a, const BitVec& b) { return a.compare(b) < 0; });
  }
  std::vector<Proposition> out;
  out.reserve(sets.size());
  for (auto& bits : sets)
    out.push_back(lattice.from_minterms_unchecked(std::move(bits)));
  return out;
}

}  // namespace evfusion
