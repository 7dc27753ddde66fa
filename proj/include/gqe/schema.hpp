#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gqe/errors.hpp"

namespace gqe {

/// Ordered list of attribute names, duplicate-free.
class Schema {
 public:
  Schema() = default;
  explicit Schema(std::vector<std::string> names) : names_(std::move(names)) {
    for (std::size_t i = 0; i < names_.size(); ++i)
      for (std::size_t j = i + 1; j < names_.size(); ++j)
        if (names_[i] == names_[j]) throw SchemaError("duplicate attribute '" + names_[i] + "'");
  }

  std::size_t size() const { return names_.size(); }
  bool empty() const { return names_.empty(); }
  const std::vector<std::string>& names() const { return names_; }
  const std::string& at(std::size_t i) const { return names_[i]; }

  bool contains(std::string_view name) const { return index_of(name).has_value(); }
  std::optional<std::size_t> index_of(std::string_view name) const {
    for (std::size_t i = 0; i < names_.size(); ++i)
      if (names_[i] == name) return i;
    return std::nullopt;
  }

  /// Append (the paper's schema concatenation); throws on duplicates.
  Schema append(const Schema& other) const {
    std::vector<std::string> out = names_;
    out.insert(out.end(), other.names_.begin(), other.names_.end());
    return Schema(std::move(out));
  }

  /// Removal by name, preserving remaining order. Absent names are ignored.
  Schema remove(std::string_view name) const {
    std::vector<std::string> out;
    for (const auto& n : names_)
      if (n != name) out.push_back(n);
    return Schema(std::move(out));
  }

  /// Attributes of `other` not present in this schema, in `other` order.
  Schema difference(const Schema& other) const;

  friend bool operator==(const Schema&, const Schema&) = default;

 private:
  std::vector<std::string> names_;
};

inline Schema Schema::difference(const Schema& other) const {
  std::vector<std::string> out;
  for (const auto& n : other.names_)
    if (!contains(n)) out.push_back(n);
  return Schema(std::move(out));
}

}  // namespace gqe
