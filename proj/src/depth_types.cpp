#include "efd/depth_types.hpp"

#include <algorithm>

namespace efd {

int TypeOracle::add_graph(const ColoredGraph& g) {
  graphs_.push_back(g);
  return static_cast<int>(graphs_.size()) - 1;
}

int TypeOracle::intern(std::vector<std::int64_t> key) {
  auto [it, inserted] = interner_.try_emplace(std::move(key), static_cast<int>(interner_.size()));
  return it->second;
}

int TypeOracle::atomic(int graph, const std::vector<Vertex>& tuple) {
  const ColoredGraph& g = graphs_.at(graph);
  std::vector<std::int64_t> key{0, static_cast<std::int64_t>(tuple.size())};
  for (Vertex v : tuple) key.push_back(static_cast<std::int64_t>(g.colors(v)));
  for (std::size_t i = 0; i < tuple.size(); ++i)
    for (std::size_t j = 0; j < i; ++j) {
      key.push_back(tuple[i] == tuple[j]);
      key.push_back(g.adjacent(tuple[i], tuple[j]));
    }
  return intern(std::move(key));
}

int TypeOracle::tuple_class(int graph, const std::vector<Vertex>& tuple, int depth) {
  if (depth < 0) throw ArgumentError("depth must be nonnegative");
  const ColoredGraph& g = graphs_.at(graph);
  for (Vertex v : tuple)
    if (!g.valid(v)) throw ArgumentError("tuple vertex out of range");
  auto memo_key = std::make_tuple(graph, depth, tuple);
  if (auto it = memo_.find(memo_key); it != memo_.end()) return it->second;
  int result;
  if (depth == 0) {
    result = atomic(graph, tuple);
  } else {
    std::vector<std::int64_t> ext;
    std::vector<Vertex> longer = tuple;
    longer.push_back(0);
    for (Vertex v = 0; v < g.order(); ++v) {
      longer.back() = v;
      ext.push_back(tuple_class(graph, longer, depth - 1));
    }
    std::sort(ext.begin(), ext.end());
    ext.erase(std::unique(ext.begin(), ext.end()), ext.end());
    std::vector<std::int64_t> key{1, tuple_class(graph, tuple, depth - 1)};
    key.insert(key.end(), ext.begin(), ext.end());
    result = intern(std::move(key));
  }
  memo_.emplace(std::move(memo_key), result);
  return result;
}

DepthTypes depth_types(TypeOracle& oracle, int graph, int k, int arity) {
  if (arity < 0 || arity > k) throw ArgumentError("tuple arity must lie in [0, k]");
  DepthTypes out;
  out.sentence_code = oracle.sentence_code(graph, k);
  int n = oracle.order(graph);
  std::vector<Vertex> t(arity, 0);
  if (arity > 0 && n == 0) return out;
  while (true) {
    out.classes.emplace(t, oracle.tuple_class(graph, t, k));
    int i = arity - 1;
    while (i >= 0 && ++t[i] == n) t[i--] = 0;
    if (i < 0) break;
  }
  return out;
}

int oracle_distinguishing_depth(const ColoredGraph& left, const ColoredGraph& right,
                                const std::vector<std::pair<Vertex, Vertex>>& pins, int cap) {
  TypeOracle oracle;
  int a = oracle.add_graph(left), b = oracle.add_graph(right);
  std::vector<Vertex> ta, tb;
  for (auto [x, y] : pins) {
    ta.push_back(x);
    tb.push_back(y);
  }
  for (int k = 0; k <= cap; ++k)
    if (oracle.tuple_class(a, ta, k) != oracle.tuple_class(b, tb, k)) return k;
  return -1;
}

}  // namespace efd
