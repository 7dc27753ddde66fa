#include "gqe/property_graph.hpp"

#include <algorithm>

#include <json.hpp>

#include "gqe/errors.hpp"

namespace gqe {

const std::set<std::string>& PropertyGraph::labels(const std::string& vertex) const {
  auto it = vertices_.find(vertex);
  if (it == vertices_.end()) throw EvalError("unknown vertex '" + vertex + "'");
  return it->second.labels;
}

const std::string& PropertyGraph::edge_type(const std::string& edge) const {
  auto it = edges_.find(edge);
  if (it == edges_.end()) throw EvalError("unknown edge '" + edge + "'");
  return it->second.type;
}

std::pair<std::string, std::string> PropertyGraph::endpoints(const std::string& edge) const {
  auto it = edges_.find(edge);
  if (it == edges_.end()) throw EvalError("unknown edge '" + edge + "'");
  return {it->second.source, it->second.target};
}

Value PropertyGraph::vertex_property(const std::string& vertex, const std::string& name) const {
  auto it = vertices_.find(vertex);
  if (it == vertices_.end()) throw EvalError("unknown vertex '" + vertex + "'");
  auto p = it->second.properties.find(name);
  return p == it->second.properties.end() ? Value::null() : p->second;
}

Value PropertyGraph::edge_property(const std::string& edge, const std::string& name) const {
  auto it = edges_.find(edge);
  if (it == edges_.end()) throw EvalError("unknown edge '" + edge + "'");
  auto p = it->second.properties.find(name);
  return p == it->second.properties.end() ? Value::null() : p->second;
}

std::vector<PropertyGraph::Adjacency> PropertyGraph::adjacency(
    const std::string& vertex, Direction dir, const std::vector<std::string>& types) const {
  if (!has_vertex(vertex)) throw EvalError("unknown vertex '" + vertex + "'");
  auto type_ok = [&](const std::string& eid) {
    if (types.empty()) return true;
    const std::string& t = edges_.at(eid).type;
    return std::find(types.begin(), types.end(), t) != types.end();
  };
  std::vector<Adjacency> result;
  auto take = [&](const std::map<std::string, std::vector<Adjacency>>& index) {
    auto it = index.find(vertex);
    if (it == index.end()) return;
    for (const auto& a : it->second)
      if (type_ok(a.first)) result.push_back(a);
  };
  if (dir == Direction::Out || dir == Direction::Both) take(out_);
  if (dir == Direction::In || dir == Direction::Both) take(in_);
  return result;
}

void PropertyGraph::add_vertex(const std::string& id, std::set<std::string> labels,
                               std::map<std::string, Value> properties) {
  if (vertices_.count(id)) throw GraphError("duplicate vertex id '" + id + "'");
  vertices_[id] = VertexData{std::move(labels), std::move(properties)};
  vertex_ids_.insert(std::lower_bound(vertex_ids_.begin(), vertex_ids_.end(), id), id);
}

void PropertyGraph::add_edge(const std::string& id, const std::string& source,
                             const std::string& target, std::string type,
                             std::map<std::string, Value> properties) {
  if (edges_.count(id)) throw GraphError("duplicate edge id '" + id + "'");
  if (!has_vertex(source)) throw GraphError("edge '" + id + "' references unknown vertex '" + source + "'");
  if (!has_vertex(target)) throw GraphError("edge '" + id + "' references unknown vertex '" + target + "'");
  edges_[id] = EdgeData{source, target, std::move(type), std::move(properties)};
  edge_ids_.insert(std::lower_bound(edge_ids_.begin(), edge_ids_.end(), id), id);
  auto& outs = out_[source];
  outs.insert(std::lower_bound(outs.begin(), outs.end(), Adjacency{id, target}), {id, target});
  auto& ins = in_[target];
  ins.insert(std::lower_bound(ins.begin(), ins.end(), Adjacency{id, source}), {id, source});
}

namespace {

using nlohmann::json;

Value json_to_value(const json& j) {
  switch (j.type()) {
    case json::value_t::null:
      return Value::null();
    case json::value_t::boolean:
      return Value(j.get<bool>());
    case json::value_t::number_integer:
    case json::value_t::number_unsigned:
      return Value(j.get<std::int64_t>());
    case json::value_t::number_float:
      return Value(j.get<double>());
    case json::value_t::string:
      return Value(j.get<std::string>());
    case json::value_t::array: {
      Value::List xs;
      for (const auto& e : j) xs.push_back(json_to_value(e));
      return Value(std::move(xs));
    }
    default:
      throw GraphError("unsupported property value of type " + std::string(j.type_name()));
  }
}

std::string parse_id(const json& j, const char* what) {
  // integer ids are accepted and canonicalized to their decimal text
  if (j.is_string()) return j.get<std::string>();
  if (j.is_number_integer() || j.is_number_unsigned())
    return std::to_string(j.get<std::int64_t>());
  throw GraphError(std::string(what) + " id must be a string or integer");
}

std::map<std::string, Value> parse_properties(const json& obj) {
  std::map<std::string, Value> props;
  if (!obj.contains("properties")) return props;
  const json& p = obj.at("properties");
  if (!p.is_object()) throw GraphError("\"properties\" must be an object");
  for (auto it = p.begin(); it != p.end(); ++it) props[it.key()] = json_to_value(it.value());
  return props;
}

}  // namespace

PropertyGraph load_graph(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw GraphError(e.what());  // carries line/column position
  }
  try {
    if (!doc.is_object()) throw GraphError("top level must be an object");
    PropertyGraph g;
    if (doc.contains("vertices")) {
      const json& vs = doc.at("vertices");
      if (!vs.is_array()) throw GraphError("\"vertices\" must be an array");
      for (const auto& v : vs) {
        if (!v.is_object() || !v.contains("id")) throw GraphError("vertex entry must have an \"id\"");
        std::set<std::string> labels;
        if (v.contains("labels")) {
          if (!v.at("labels").is_array()) throw GraphError("vertex \"labels\" must be an array");
          for (const auto& l : v.at("labels")) {
            if (!l.is_string()) throw GraphError("vertex label must be a string");
            labels.insert(l.get<std::string>());
          }
        }
        g.add_vertex(parse_id(v.at("id"), "vertex"), std::move(labels), parse_properties(v));
      }
    }
    if (doc.contains("edges")) {
      const json& es = doc.at("edges");
      if (!es.is_array()) throw GraphError("\"edges\" must be an array");
      for (const auto& e : es) {
        if (!e.is_object() || !e.contains("id")) throw GraphError("edge entry must have an \"id\"");
        std::string id = parse_id(e.at("id"), "edge");
        if (!e.contains("source") || !e.contains("target"))
          throw GraphError("edge '" + id + "' must have \"source\" and \"target\"");
        if (!e.contains("type")) throw GraphError("edge '" + id + "' must have exactly one \"type\"");
        if (!e.at("type").is_string()) throw GraphError("edge '" + id + "' type must be a string");
        g.add_edge(id, parse_id(e.at("source"), "vertex"), parse_id(e.at("target"), "vertex"),
                   e.at("type").get<std::string>(), parse_properties(e));
      }
    }
    return g;
  } catch (const json::exception& e) {
    throw GraphError(e.what());
  }
}

Value get_property(const PropertyGraph& g, const Value& element, const std::string& name) {
  if (element.is_vertex()) return g.vertex_property(element.as_vertex().id, name);
  if (element.is_edge()) return g.edge_property(element.as_edge().id, name);
  throw EvalError("property access on a non-element value");
}

}  // namespace gqe
