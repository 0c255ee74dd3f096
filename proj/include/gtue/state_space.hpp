#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace gtue {

/// Finite, ordered set of state labels. The order is the indexing contract for
/// every table in the library.
class StateSpace {
 public:
  explicit StateSpace(std::vector<std::string> labels);
  /// States labelled "0", "1", ..., "n-1".
  static StateSpace numbered(std::size_t n);

  std::size_t size() const { return labels_.size(); }
  const std::vector<std::string>& labels() const { return labels_; }
  const std::string& label(std::size_t i) const { return labels_.at(i); }
  /// Index of `label`; throws InvalidArgument when unknown.
  std::size_t index_of(const std::string& label) const;

  friend bool operator==(const StateSpace&, const StateSpace&) = default;

 private:
  std::vector<std::string> labels_;
};

}  // namespace gtue
