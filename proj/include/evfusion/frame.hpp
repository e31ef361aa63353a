#pragma once

#include <cstddef>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "evfusion/errors.hpp"

namespace evfusion {

inline bool is_identifier(const std::string& name) {
  if (name.empty()) return false;
  auto head = [](char c) {
    return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || c == '_';
  };
  auto tail = [&](char c) { return head(c) || (c >= '0' && c <= '9'); };
  if (!head(name[0])) return false;
  for (std::size_t i = 1; i < name.size(); ++i)
    if (!tail(name[i])) return false;
  return true;
}

/// The frame of discernment: an ordered list of named atomic hypotheses.
class FrameSpec {
 public:
  explicit FrameSpec(std::vector<std::string> atom_names)
      : atom_names_(std::move(atom_names)) {
    if (atom_names_.empty())
      throw DomainError("frame must declare at least one atom");
    std::unordered_set<std::string> seen;
    for (const auto& name : atom_names_) {
      if (!is_identifier(name))
        throw DomainError("atom name '" + name + "' is not an identifier");
      if (!seen.insert(name).second)
        throw DomainError("duplicate atom name '" + name + "'");
    }
  }

  std::size_t atom_count() const noexcept { return atom_names_.size(); }
  const std::vector<std::string>& atom_names() const noexcept {
    return atom_names_;
  }
  const std::string& atom_name(std::size_t i) const { return atom_names_.at(i); }

  /// Index of `name`, or atom_count() if the frame has no such atom.
  std::size_t index_of(const std::string& name) const {
    for (std::size_t i = 0; i < atom_names_.size(); ++i)
      if (atom_names_[i] == name) return i;
    return atom_names_.size();
  }

 private:
  std::vector<std::string> atom_names_;
};

}  // namespace evfusion
