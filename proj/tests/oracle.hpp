#ifndef SIS_TESTS_ORACLE_HPP
#define SIS_TESTS_ORACLE_HPP

// Naive reference implementations used only by the tests. They share no
// code with the library beyond Graph/Rational: plain edge scans, exact
// boost rationals for weights, string comparison for lexicographic ties.

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "sis/graph.hpp"
#include "sis/params.hpp"
#include "sis/rational.hpp"

namespace oracle {

using big = boost::multiprecision::cpp_rational;

inline big to_big(const sis::Rational& r) { return big(r.num()) / big(r.den()); }

inline big power(big base, std::int64_t e) {
  big out = 1;
  for (std::int64_t k = 0; k < e; ++k) out *= base;
  return out;
}

inline std::vector<std::uint8_t> bits_of(std::uint64_t s, std::size_t n) {
  std::vector<std::uint8_t> b(n);
  for (std::size_t i = 0; i < n; ++i) b[i] = (s >> i) & 1u;
  return b;
}

inline std::size_t edges_in(const sis::Graph& g, const std::vector<std::uint8_t>& b) {
  std::size_t c = 0;
  for (const auto& e : g.edges())
    if (b[e.u] && b[e.v]) ++c;
  return c;
}

inline std::size_t ones(const std::vector<std::uint8_t>& b) {
  std::size_t c = 0;
  for (auto v : b) c += v;
  return c;
}

inline std::string bit_string(const std::vector<std::uint8_t>& b) {
  std::string s;
  for (auto v : b) s += v ? '1' : '0';
  return s;
}

struct Argmax {
  std::vector<std::uint8_t> bits;
  big weight;
};

// Exhaustive exact argmax of r^n g^e; `fewest` picks the minimum-cardinality
// maximizers, otherwise maximum-cardinality; then the smallest bit string.
inline Argmax argmax(const sis::Graph& g, const sis::Rational& r, const sis::Rational& gamma,
                     bool fewest) {
  const std::size_t n = g.node_count();
  const big rb = to_big(r), gb = to_big(gamma);
  Argmax best;
  bool have = false;
  for (std::uint64_t s = 0; s < (std::uint64_t{1} << n); ++s) {
    auto b = bits_of(s, n);
    big w = power(rb, static_cast<std::int64_t>(ones(b))) *
            power(gb, static_cast<std::int64_t>(edges_in(g, b)));
    bool take = !have || w > best.weight;
    if (have && w == best.weight) {
      const auto c1 = ones(b), c0 = ones(best.bits);
      if (c1 != c0) take = fewest ? c1 < c0 : c1 > c0;
      else take = bit_string(b) < bit_string(best.bits);
    }
    if (take) {
      best = {b, w};
      have = true;
    }
  }
  return best;
}

struct Densest {
  sis::Rational density;
  std::vector<std::uint8_t> union_of_densest;
};

inline Densest densest(const sis::Graph& g) {
  const std::size_t n = g.node_count();
  Densest d{sis::Rational(0), std::vector<std::uint8_t>(n, 0)};
  for (std::uint64_t s = 1; s < (std::uint64_t{1} << n); ++s) {
    auto b = bits_of(s, n);
    const sis::Rational dens(static_cast<std::int64_t>(edges_in(g, b)),
                             static_cast<std::int64_t>(ones(b)));
    if (dens > d.density) {
      d.density = dens;
      d.union_of_densest = b;
    } else if (dens == d.density) {
      for (std::size_t i = 0; i < n; ++i) d.union_of_densest[i] |= b[i];
    }
  }
  return d;
}

// Random connected graph: random spanning tree plus extra random edges.
inline sis::Graph random_graph(std::mt19937_64& rng, std::size_t n, double extra_density) {
  std::vector<sis::Edge> edges;
  std::vector<std::vector<bool>> has(n, std::vector<bool>(n, false));
  auto add = [&](sis::NodeId a, sis::NodeId b) {
    if (a == b || has[a][b]) return;
    has[a][b] = has[b][a] = true;
    edges.push_back({std::min(a, b), std::max(a, b)});
  };
  for (sis::NodeId v = 1; v < n; ++v) add(v, static_cast<sis::NodeId>(rng() % v));
  std::bernoulli_distribution coin(extra_density);
  for (sis::NodeId a = 0; a < n; ++a)
    for (sis::NodeId b = a + 1; b < n; ++b)
      if (coin(rng)) add(a, b);
  return sis::Graph(n, edges);
}

// Regime II rationals: r in (0, 1], gamma in [1, 4].
inline sis::Rational random_ratio(std::mt19937_64& rng) {
  const std::int64_t den = 1 + static_cast<std::int64_t>(rng() % 12);
  const std::int64_t num = 1 + static_cast<std::int64_t>(rng() % den);
  return {num, den};
}

inline sis::Rational random_gamma(std::mt19937_64& rng) {
  const std::int64_t den = 1 + static_cast<std::int64_t>(rng() % 8);
  const std::int64_t num = den + static_cast<std::int64_t>(rng() % (3 * den + 1));
  return {num, den};
}

}  // namespace oracle

#endif
