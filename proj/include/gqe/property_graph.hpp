#pragma once

#include <map>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "gqe/value.hpp"

namespace gqe {

/// In-memory property graph: a directed multigraph with label sets on
/// vertices, a single type per edge and key-value properties on both.
/// Immutable after construction; safe to share across concurrent queries.
class PropertyGraph {
 public:
  struct VertexData {
    std::set<std::string> labels;
    std::map<std::string, Value> properties;
    friend bool operator==(const VertexData&, const VertexData&) = default;
  };
  struct EdgeData {
    std::string source;
    std::string target;
    std::string type;
    std::map<std::string, Value> properties;
    friend bool operator==(const EdgeData&, const EdgeData&) = default;
  };

  /// (edge id, vertex id at the far end)
  using Adjacency = std::pair<std::string, std::string>;

  std::size_t vertex_count() const { return vertices_.size(); }
  std::size_t edge_count() const { return edges_.size(); }
  bool has_vertex(const std::string& id) const { return vertices_.count(id) != 0; }
  bool has_edge(const std::string& id) const { return edges_.count(id) != 0; }

  /// Vertex / edge ids in id order; the basis for deterministic iteration.
  const std::vector<std::string>& vertex_ids() const { return vertex_ids_; }
  const std::vector<std::string>& edge_ids() const { return edge_ids_; }

  const std::set<std::string>& labels(const std::string& vertex) const;
  const std::string& edge_type(const std::string& edge) const;
  /// (source, target) of an edge.
  std::pair<std::string, std::string> endpoints(const std::string& edge) const;

  /// Stored property value, or Null when unset. Throws on unknown ids.
  Value vertex_property(const std::string& vertex, const std::string& name) const;
  Value edge_property(const std::string& edge, const std::string& name) const;

  /// Incident edges of `vertex` in the given direction whose type is in
  /// `types` (empty set: any type), as (edge, far end) pairs. A bag: a
  /// self-loop appears once per direction it satisfies under Both.
  /// Deterministic order: outgoing entries before incoming, each sorted
  /// by edge id.
  std::vector<Adjacency> adjacency(const std::string& vertex, Direction dir,
                                   const std::vector<std::string>& types) const;

  /// Construction-time mutators, used by load_graph and test fixtures.
  void add_vertex(const std::string& id, std::set<std::string> labels,
                  std::map<std::string, Value> properties);
  void add_edge(const std::string& id, const std::string& source, const std::string& target,
                std::string type, std::map<std::string, Value> properties);

  friend bool operator==(const PropertyGraph& a, const PropertyGraph& b) {
    return a.vertices_ == b.vertices_ && a.edges_ == b.edges_;
  }

 private:
  std::map<std::string, VertexData> vertices_;
  std::map<std::string, EdgeData> edges_;
  std::vector<std::string> vertex_ids_;
  std::vector<std::string> edge_ids_;
  std::map<std::string, std::vector<Adjacency>> out_;
  std::map<std::string, std::vector<Adjacency>> in_;
};

/// Parses the Graph-JSON format. Throws GraphError on malformed input,
/// duplicate ids, edges referencing unknown vertices or missing types.
PropertyGraph load_graph(std::string_view text);

/// Property of a VertexRef / EdgeRef value; Null when unset.
/// Throws EvalError for non-element values or unknown ids.
Value get_property(const PropertyGraph& g, const Value& element, const std::string& name);

}  // namespace gqe
