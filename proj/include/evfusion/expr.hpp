#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "evfusion/errors.hpp"
#include "evfusion/lattice.hpp"

namespace evfusion {

namespace detail {

// Recursive-descent evaluator for the proposition grammar:
//   expr   := term ('|' term)*
//   term   := factor ('&' factor)*
//   factor := '~' factor | atom-name | '0' | '1' | '(' expr ')'
// Whitespace is insignificant; atom names are case-sensitive.
class ExprParser {
 public:
  ExprParser(const Lattice& lattice, std::string_view text)
      : lattice_(lattice), text_(text) {}

  Proposition run() {
    Proposition value = parse_expr();
    skip_ws();
    if (pos_ != text_.size())
      throw ParseError("unexpected trailing input", pos_);
    return value;
  }

 private:
  Proposition parse_expr() {
    Proposition value = parse_term();
    while (peek() == '|') {
      ++pos_;
      value = disj(value, parse_term());
    }
    return value;
  }

  Proposition parse_term() {
    Proposition value = parse_factor();
    while (peek() == '&') {
      ++pos_;
      value = conj(value, parse_factor());
    }
    return value;
  }

  Proposition parse_factor() {
    skip_ws();
    if (pos_ == text_.size())
      throw ParseError("unexpected end of expression", pos_);
    const char c = text_[pos_];
    if (c == '~') {
      if (!lattice_.is_complemented())
        throw ParseError(std::string("'~' is not available in a ") +
                             to_string(lattice_.kind()) + " lattice",
                         pos_);
      ++pos_;
      return complement(parse_factor());
    }
    if (c == '(') {
      ++pos_;
      Proposition value = parse_expr();
      skip_ws();
      if (pos_ == text_.size() || text_[pos_] != ')')
        throw ParseError("expected ')'", pos_);
      ++pos_;
      return value;
    }
    if (c == '0') {
      if (lattice_.kind() == LatticeKind::OpenHyperpowerset)
        throw ParseError(
            "'0' is not a member of an open hyperpowerset lattice", pos_);
      ++pos_;
      return lattice_.zero();
    }
    if (c == '1') {
      ++pos_;
      return lattice_.one();
    }
    if (is_ident_head(c)) {
      const std::size_t start = pos_;
      while (pos_ < text_.size() && is_ident_tail(text_[pos_])) ++pos_;
      const std::string name(text_.substr(start, pos_ - start));
      const std::size_t index = lattice_.frame().index_of(name);
      if (index == lattice_.atom_count())
        throw ParseError("unknown atom '" + name + "'", start);
      return lattice_.atom(index);
    }
    throw ParseError(std::string("unexpected character '") + c + "'", pos_);
  }

  // Next significant character, or '\0' at end. Leaves pos_ on it.
  char peek() {
    skip_ws();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  void skip_ws() {
    while (pos_ < text_.size() &&
           (text_[pos_] == ' ' || text_[pos_] == '\t' || text_[pos_] == '\n' ||
            text_[pos_] == '\r'))
      ++pos_;
  }

  static bool is_ident_head(char c) {
    return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || c == '_';
  }
  static bool is_ident_tail(char c) {
    return is_ident_head(c) || (c >= '0' && c <= '9');
  }

  const Lattice& lattice_;
  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace detail

/// Evaluates a proposition expression in the given lattice context.
inline Proposition parse_expr(const Lattice& lattice, std::string_view text) {
  return detail::ExprParser(lattice, text).run();
}

/// Canonical disjunctive form of a proposition. The output parses back
/// to the same proposition: zero is "0", one is "1", anything else is
/// the '|'-join over the printed minterms (all set minterms for the
/// Boolean kinds, the minimal ones for the hyper kinds), each written
/// as an '&'-join of atom literals. Free Boolean and superpowerset
/// minterms spell out the negated literals too; powerset and
/// hyperpowerset minterms use positive literals only.
inline std::string render(const Proposition& p) {
  if (p.is_zero()) return "0";
  if (p.is_one()) return "1";
  const Lattice& lattice = p.lattice();
  const BitVec& bits = p.minterms();

  std::vector<std::size_t> printed;
  for (std::size_t i = 0; i < bits.size(); ++i)
    if (bits.test(i)) printed.push_back(i);
  if (lattice.is_hyper()) {
    std::vector<std::size_t> minimal;
    for (std::size_t i : printed) {
      const std::uint64_t mi = lattice.minterm_mask(i);
      bool keep = true;
      for (std::size_t j : printed) {
        const std::uint64_t mj = lattice.minterm_mask(j);
        if (mj != mi && (mj & ~mi) == 0) {
          keep = false;
          break;
        }
      }
      if (keep) minimal.push_back(i);
    }
    printed = std::move(minimal);
  }

  const bool negated_literals = lattice.kind() == LatticeKind::FreeBoolean ||
                                lattice.kind() == LatticeKind::Superpowerset;
  std::string out;
  for (std::size_t k = 0; k < printed.size(); ++k) {
    if (k != 0) out += '|';
    const std::uint64_t mask = lattice.minterm_mask(printed[k]);
    bool first = true;
    for (std::size_t b = 0; b < lattice.atom_count(); ++b) {
      const bool present = mask & (std::uint64_t{1} << b);
      if (!present && !negated_literals) continue;
      if (!first) out += '&';
      first = false;
      if (!present) out += '~';
      out += lattice.frame().atom_name(b);
    }
  }
  return out;
}

}  // namespace evfusion
