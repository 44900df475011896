#pragma once

#include <map>
#include <sstream>
#include <string>
#include <utility>

#include "propmet/bridge.hpp"
#include "propmet/stick.hpp"

namespace propmet {

namespace detail {

inline std::string dot_quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

}  // namespace detail

/// The stick graph restricted to the window, undirected, one node per point
/// tagged with its island id; weights are exact rationals.
inline std::string stick_graph_dot(const StickGraph& graph, const PointSet& window, const IslandPartition& part) {
  const Action& act = graph.action();
  std::ostringstream os;
  os << "graph sticks {\n";
  for (const auto& x : window) {
    const auto island = part.island_of.at(x);
    os << "  " << detail::dot_quote(act.format(x)) << " [island=" << island << ", label="
       << detail::dot_quote(act.format(x) + " / " + std::to_string(island)) << "];\n";
  }
  for (const auto& x : window) {
    for (const auto& e : graph.neighbors(x)) {
      if (!(x < e.to) || !contains(window, e.to)) continue;
      os << "  " << detail::dot_quote(act.format(x)) << " -- " << detail::dot_quote(act.format(e.to))
         << " [weight=" << detail::dot_quote(to_string(e.weight)) << "];\n";
    }
  }
  os << "}\n";
  return os.str();
}

/// Islands seen in the window as supernodes, joined by their lightest bridge.
inline std::string bridge_quotient_dot(const BridgeAtlas& atlas, const PointSet& window, const IslandPartition& part) {
  const Action& act = atlas.sticks().action();
  std::map<std::pair<std::size_t, std::size_t>, Rational> edges;
  for (const auto& x : window) {
    for (const auto& e : atlas.bridge_neighbors(x, atlas.weight_cap())) {
      auto it = part.island_of.find(e.to);
      if (it == part.island_of.end()) continue;
      const std::size_t a = part.island_of.at(x);
      const std::size_t b = it->second;
      if (a == b) continue;
      const auto key = std::minmax(a, b);
      auto [slot, fresh] = edges.emplace(key, e.weight);
      if (!fresh && e.weight < slot->second) slot->second = e.weight;
    }
  }
  std::ostringstream os;
  os << "graph islands {\n";
  for (std::size_t i = 0; i < part.count(); ++i) {
    os << "  i" << i << " [label=" << detail::dot_quote(act.format(part.names[i])) << "];\n";
  }
  for (const auto& [key, w] : edges) {
    os << "  i" << key.first << " -- i" << key.second << " [weight=" << detail::dot_quote(to_string(w)) << "];\n";
  }
  os << "}\n";
  return os.str();
}

}  // namespace propmet
