#include "sis/generators.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <set>
#include <sstream>

namespace sis {

namespace {

std::string str(std::size_t v) { return std::to_string(v); }

// k-regular circulant on `size` nodes starting at `offset`.
void add_circulant(std::vector<Edge>& edges, std::size_t offset, std::size_t size, std::size_t k) {
  if (k == 0) return;
  if (k >= size)
    throw GraphError("k-regular needs k < N (k=" + str(k) + ", N=" + str(size) + ")");
  if ((size * k) % 2 != 0)
    throw GraphError("k-regular needs N*k even (N=" + str(size) + ", k=" + str(k) + ")");
  auto node = [&](std::size_t i) { return static_cast<NodeId>(offset + i % size); };
  for (std::size_t i = 0; i < size; ++i) {
    for (std::size_t s = 1; s <= k / 2; ++s) edges.push_back({node(i), node(i + s)});
    if (k % 2 == 1 && i < size / 2) edges.push_back({node(i), node(i + size / 2)});
  }
}

void add_multipartite(std::vector<Edge>& edges, const std::vector<std::size_t>& parts) {
  std::size_t start_a = 0;
  for (std::size_t a = 0; a < parts.size(); ++a) {
    std::size_t start_b = start_a + parts[a];
    for (std::size_t b = a + 1; b < parts.size(); ++b) {
      for (std::size_t i = 0; i < parts[a]; ++i)
        for (std::size_t j = 0; j < parts[b]; ++j)
          edges.push_back({static_cast<NodeId>(start_a + i), static_cast<NodeId>(start_b + j)});
      start_b += parts[b];
    }
    start_a += parts[a];
  }
}

void check_parts(const std::vector<std::size_t>& parts) {
  if (parts.size() < 2) throw GraphError("complete multipartite needs at least 2 parts");
  for (std::size_t p : parts)
    if (p == 0) throw GraphError("complete multipartite parts must be non-empty");
}

Graph permuted(Graph g, std::uint64_t seed) {
  if (seed == 0) return g;
  std::vector<NodeId> perm(g.node_count());
  std::iota(perm.begin(), perm.end(), 0);
  std::mt19937_64 rng(seed);
  std::shuffle(perm.begin(), perm.end(), rng);
  return relabel(g, perm);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(s);
  while (std::getline(in, item, sep)) out.push_back(item);
  return out;
}

std::size_t to_size(const std::string& s) {
  std::size_t used = 0;
  unsigned long long v = 0;
  try {
    v = std::stoull(s, &used);
  } catch (const std::exception&) {
    throw GraphError("bad integer '" + s + "' in generator spec");
  }
  if (used != s.size() || s.empty() || s[0] == '-')
    throw GraphError("bad integer '" + s + "' in generator spec");
  return static_cast<std::size_t>(v);
}

std::vector<std::size_t> to_sizes(const std::string& s) {
  std::vector<std::size_t> out;
  for (const auto& part : split(s, ',')) out.push_back(to_size(part));
  return out;
}

}  // namespace

Graph generate_structured(const StructuredSpec& spec, std::uint64_t seed) {
  std::vector<Edge> edges;
  std::size_t n = 0;
  std::string name;

  if (const auto* kr = std::get_if<KRegular>(&spec)) {
    n = kr->n;
    if (n == 0) throw GraphError("k-regular needs N >= 1");
    if (kr->k == 0 && n > 1) throw GraphError("0-regular graph on N > 1 nodes is disconnected");
    if (kr->k == 1 && n > 2) throw GraphError("1-regular graph on N > 2 nodes is disconnected");
    add_circulant(edges, 0, n, kr->k);
    name = "kregular:" + str(n) + ":" + str(kr->k);
  } else if (const auto* cm = std::get_if<CompleteMultipartite>(&spec)) {
    check_parts(cm->parts);
    n = std::accumulate(cm->parts.begin(), cm->parts.end(), std::size_t{0});
    add_multipartite(edges, cm->parts);
    name = "multipartite";
  } else {
    const auto& mi = std::get<MultipartiteIslands>(spec);
    check_parts(mi.parts);
    n = std::accumulate(mi.parts.begin(), mi.parts.end(), std::size_t{0});
    add_multipartite(edges, mi.parts);
    std::size_t offset = 0;
    for (std::size_t p : mi.parts) {
      try {
        add_circulant(edges, offset, p, mi.k);
      } catch (const GraphError& e) {
        throw GraphError(std::string("island of size ") + str(p) + ": " + e.what());
      }
      offset += p;
    }
    name = "islands";
  }
  return permuted(Graph(n, std::move(edges), name), seed);
}

Graph make_complete(std::size_t n) {
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      edges.push_back({static_cast<NodeId>(i), static_cast<NodeId>(j)});
  return Graph(n, std::move(edges), "complete:" + str(n));
}

Graph make_path(std::size_t n) {
  std::vector<Edge> edges;
  for (std::size_t i = 0; i + 1 < n; ++i)
    edges.push_back({static_cast<NodeId>(i), static_cast<NodeId>(i + 1)});
  return Graph(n, std::move(edges), "path:" + str(n));
}

Graph make_cycle(std::size_t n) {
  if (n < 3) throw GraphError("cycle needs N >= 3");
  const Graph ring = generate_structured(KRegular{n, 2});
  return Graph(n, ring.edges(), "cycle:" + str(n));
}

Graph make_star(std::size_t leaves) {
  std::vector<Edge> edges;
  for (std::size_t i = 1; i <= leaves; ++i) edges.push_back({0, static_cast<NodeId>(i)});
  return Graph(leaves + 1, std::move(edges), "star:" + str(leaves));
}

Graph make_clique_with_tail(std::size_t clique, std::size_t tail) {
  if (clique == 0) throw GraphError("clique size must be positive");
  std::vector<Edge> edges = make_complete(clique).edges();
  for (std::size_t t = 0; t < tail; ++t)
    edges.push_back({static_cast<NodeId>(clique - 1 + t), static_cast<NodeId>(clique + t)});
  return Graph(clique + tail, std::move(edges), "clique_tail:" + str(clique) + ":" + str(tail));
}

Graph make_random_connected(std::size_t n, std::size_t edge_target, std::uint64_t seed) {
  if (n == 0) throw GraphError("random graph needs N >= 1");
  const std::size_t max_edges = n * (n - 1) / 2;
  if (edge_target + 1 < n || edge_target > max_edges)
    throw GraphError("random connected graph needs N-1 <= M <= N(N-1)/2");
  std::mt19937_64 rng(seed);
  std::set<std::pair<NodeId, NodeId>> present;
  auto add = [&](NodeId a, NodeId b) {
    if (a > b) std::swap(a, b);
    return present.insert({a, b}).second;
  };
  for (std::size_t i = 1; i < n; ++i) {
    std::uniform_int_distribution<std::size_t> pick(0, i - 1);
    add(static_cast<NodeId>(i), static_cast<NodeId>(pick(rng)));
  }
  std::uniform_int_distribution<std::size_t> any(0, n - 1);
  while (present.size() < edge_target) {
    const auto a = static_cast<NodeId>(any(rng));
    const auto b = static_cast<NodeId>(any(rng));
    if (a != b) add(a, b);
  }
  std::vector<Edge> edges;
  edges.reserve(present.size());
  for (const auto& [a, b] : present) edges.push_back({a, b});
  return Graph(n, std::move(edges),
               "random:" + str(n) + ":" + str(edge_target) + ":" + std::to_string(seed));
}

Graph generate_from_spec(const std::string& spec) {
  const auto fields = split(spec, ':');
  if (fields.empty()) throw GraphError("empty generator spec");
  const std::string& kind = fields[0];
  auto need = [&](std::size_t count) {
    if (fields.size() != count + 1)
      throw GraphError("generator '" + kind + "' expects " + str(count) + " argument(s)");
  };
  if (kind == "complete") {
    need(1);
    return make_complete(to_size(fields[1]));
  }
  if (kind == "path") {
    need(1);
    return make_path(to_size(fields[1]));
  }
  if (kind == "cycle") {
    need(1);
    return make_cycle(to_size(fields[1]));
  }
  if (kind == "star") {
    need(1);
    return make_star(to_size(fields[1]));
  }
  if (kind == "clique_tail") {
    need(2);
    return make_clique_with_tail(to_size(fields[1]), to_size(fields[2]));
  }
  if (kind == "kregular") {
    need(2);
    return generate_structured(KRegular{to_size(fields[1]), to_size(fields[2])});
  }
  if (kind == "multipartite") {
    need(1);
    return generate_structured(CompleteMultipartite{to_sizes(fields[1])});
  }
  if (kind == "islands") {
    need(2);
    return generate_structured(MultipartiteIslands{to_sizes(fields[1]), to_size(fields[2])});
  }
  if (kind == "random") {
    need(3);
    return make_random_connected(to_size(fields[1]), to_size(fields[2]), to_size(fields[3]));
  }
  throw GraphError("unknown generator '" + kind + "'");
}

}  // namespace sis
