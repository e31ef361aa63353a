#pragma once

#include <cassert>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace evfusion {

/// Fixed-width bit vector used to store proposition minterm sets.
///
/// Widths up to 64 bits are stored inline; wider vectors spill to the
/// heap. Two vectors are ordered by their value as unsigned integers
/// (word 0 least significant), so the all-zero vector sorts first.
class BitVec {
 public:
  BitVec() = default;

  explicit BitVec(std::size_t bit_count) : bits_(bit_count) {
    if (word_count() > 1) heap_.assign(word_count(), 0);
  }

  static BitVec ones(std::size_t bit_count) {
    BitVec v(bit_count);
    for (std::size_t w = 0; w < v.word_count(); ++w) v.word(w) = ~0ULL;
    v.trim();
    return v;
  }

  std::size_t size() const noexcept { return bits_; }

  bool test(std::size_t i) const {
    assert(i < bits_);
    return (word(i >> 6) >> (i & 63)) & 1ULL;
  }

  void set(std::size_t i, bool value = true) {
    assert(i < bits_);
    if (value)
      word(i >> 6) |= 1ULL << (i & 63);
    else
      word(i >> 6) &= ~(1ULL << (i & 63));
  }

  bool none() const noexcept {
    for (std::size_t w = 0; w < word_count(); ++w)
      if (word(w) != 0) return false;
    return true;
  }

  bool any() const noexcept { return !none(); }

  bool all() const noexcept {
    if (bits_ == 0) return true;
    for (std::size_t w = 0; w + 1 < word_count(); ++w)
      if (word(w) != ~0ULL) return false;
    return word(word_count() - 1) == last_word_mask();
  }

  std::size_t count() const noexcept {
    std::size_t n = 0;
    for (std::size_t w = 0; w < word_count(); ++w)
      n += static_cast<std::size_t>(__builtin_popcountll(word(w)));
    return n;
  }

  BitVec operator&(const BitVec& other) const {
    assert(bits_ == other.bits_);
    BitVec out(bits_);
    for (std::size_t w = 0; w < word_count(); ++w)
      out.word(w) = word(w) & other.word(w);
    return out;
  }

  BitVec operator|(const BitVec& other) const {
    assert(bits_ == other.bits_);
    BitVec out(bits_);
    for (std::size_t w = 0; w < word_count(); ++w)
      out.word(w) = word(w) | other.word(w);
    return out;
  }

  BitVec operator~() const {
    BitVec out(bits_);
    for (std::size_t w = 0; w < word_count(); ++w) out.word(w) = ~word(w);
    out.trim();
    return out;
  }

  bool is_subset_of(const BitVec& other) const {
    assert(bits_ == other.bits_);
    for (std::size_t w = 0; w < word_count(); ++w)
      if (word(w) & ~other.word(w)) return false;
    return true;
  }

  /// Three-way comparison in unsigned-integer order.
  int compare(const BitVec& other) const {
    assert(bits_ == other.bits_);
    for (std::size_t w = word_count(); w-- > 0;) {
      if (word(w) != other.word(w)) return word(w) < other.word(w) ? -1 : 1;
    }
    return 0;
  }

  bool operator==(const BitVec& other) const {
    return bits_ == other.bits_ && compare(other) == 0;
  }
  bool operator!=(const BitVec& other) const { return !(*this == other); }

  /// Appends the big-endian byte image (most significant word first) so
  /// that lexicographic byte order matches compare().
  void append_bytes(std::string& out) const {
    for (std::size_t w = word_count(); w-- > 0;) {
      std::uint64_t v = word(w);
      for (int shift = 56; shift >= 0; shift -= 8)
        out.push_back(static_cast<char>((v >> shift) & 0xff));
    }
  }

 private:
  std::size_t word_count() const noexcept { return (bits_ + 63) >> 6; }

  std::uint64_t last_word_mask() const noexcept {
    const std::size_t rem = bits_ & 63;
    return rem == 0 ? ~0ULL : (~0ULL >> (64 - rem));
  }

  // Bits past size() must stay zero.
  void trim() {
    if (bits_ != 0) word(word_count() - 1) &= last_word_mask();
  }

  std::uint64_t& word(std::size_t w) {
    return word_count() <= 1 ? inline_word_ : heap_[w];
  }
  std::uint64_t word(std::size_t w) const {
    return word_count() <= 1 ? inline_word_ : heap_[w];
  }

  std::size_t bits_ = 0;
  std::uint64_t inline_word_ = 0;
  std::vector<std::uint64_t> heap_;
};

}  // namespace evfusion
