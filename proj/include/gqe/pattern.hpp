#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gqe/value.hpp"

namespace gqe {

/// `(name? (:Label)*)`
struct NodePattern {
  std::optional<std::string> var;
  std::vector<std::string> labels;
};

/// Variable-length bounds; max empty means unbounded (`*` / `*m..`).
struct HopRange {
  std::size_t min = 1;
  std::optional<std::size_t> max = 1;
};

/// `-[name? (:T1|..|Tk)? (*range)?]->` and the other direction spellings.
struct RelPattern {
  Direction dir = Direction::Out;
  std::optional<std::string> var;
  std::vector<std::string> types;
  std::optional<HopRange> range;  // absent for a plain single hop
};

/// Alternating node/relationship chain; nodes.size() == rels.size() + 1.
struct PatternPart {
  std::vector<NodePattern> nodes;
  std::vector<RelPattern> rels;
};

}  // namespace gqe
