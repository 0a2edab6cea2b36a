#include "ddstab/systems/coupling_graph.hpp"

#include <algorithm>
#include <cstdio>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>
#include <string>

#include "ddstab/errors.hpp"
#include "ddstab/format.hpp"
#include "ddstab/rng.hpp"

namespace ddstab::systems {

std::size_t CouplingGraph::undirected_edge_count() const {
  std::set<std::pair<Eigen::Index, Eigen::Index>> pairs;
  for (Eigen::Index i = 0; i < weights.outerSize(); ++i) {
    for (decltype(weights)::InnerIterator it(weights, i); it; ++it) {
      if (it.col() == i || it.value() == 0.0) continue;
      pairs.emplace(std::min(i, it.col()), std::max(i, it.col()));
    }
  }
  return pairs.size();
}

std::vector<std::size_t> CouplingGraph::degrees() const {
  std::vector<std::size_t> deg(static_cast<std::size_t>(n), 0);
  for (Eigen::Index i = 0; i < weights.outerSize(); ++i) {
    for (decltype(weights)::InnerIterator it(weights, i); it; ++it) {
      if (it.value() != 0.0) ++deg[static_cast<std::size_t>(i)];
    }
  }
  return deg;
}

double CouplingGraph::max_weight() const {
  double m = 0.0;
  for (Eigen::Index i = 0; i < weights.outerSize(); ++i) {
    for (decltype(weights)::InnerIterator it(weights, i); it; ++it) m = std::max(m, it.value());
  }
  return m;
}

bool CouplingGraph::is_symmetric() const {
  const Eigen::SparseMatrix<double, Eigen::RowMajor> t = weights.transpose();
  return (weights - t).norm() == 0.0;
}

CouplingGraph generate_scale_free(Eigen::Index n, int m, std::uint64_t seed,
                                  double coupling_scale) {
  if (m < 1 || n <= m) {
    throw ParameterError("scale-free graph needs n > m >= 1 (n=" + std::to_string(n) +
                         ", m=" + std::to_string(m) + ")");
  }
  if (!(coupling_scale >= 0.0)) throw ParameterError("coupling scale must be >= 0");

  auto eng = make_engine(seed, kGraphStream);
  std::vector<std::pair<Eigen::Index, Eigen::Index>> edges;
  // Each node appears once per incident edge end.
  std::vector<Eigen::Index> endpoints;
  const Eigen::Index core = m + 1;
  for (Eigen::Index i = 0; i < core; ++i) {
    for (Eigen::Index j = i + 1; j < core; ++j) {
      edges.emplace_back(i, j);
      endpoints.push_back(i);
      endpoints.push_back(j);
    }
  }
  std::vector<Eigen::Index> targets;
  for (Eigen::Index v = core; v < n; ++v) {
    targets.clear();
    while (static_cast<int>(targets.size()) < m) {
      const Eigen::Index u = endpoints[uniform_index(eng, endpoints.size())];
      if (std::find(targets.begin(), targets.end(), u) == targets.end()) targets.push_back(u);
    }
    for (Eigen::Index u : targets) {
      edges.emplace_back(u, v);
      endpoints.push_back(u);
      endpoints.push_back(v);
    }
  }

  std::vector<Eigen::Triplet<double>> trips;
  trips.reserve(2 * edges.size());
  for (auto [i, j] : edges) {
    trips.emplace_back(i, j, coupling_scale);
    trips.emplace_back(j, i, coupling_scale);
  }
  return graph_from_triplets(n, trips, seed);
}

CouplingGraph graph_from_triplets(Eigen::Index n,
                                  const std::vector<Eigen::Triplet<double>>& triplets,
                                  std::uint64_t seed) {
  if (n <= 0) throw ParameterError("graph needs n > 0");
  for (const auto& t : triplets) {
    if (t.row() < 0 || t.row() >= n || t.col() < 0 || t.col() >= n) {
      throw ParameterError("edge index out of range");
    }
    if (!(t.value() >= 0.0)) throw ParameterError("coupling weights must be nonnegative");
  }
  CouplingGraph g;
  g.n = n;
  g.seed = seed;
  g.weights.resize(n, n);
  g.weights.setFromTriplets(triplets.begin(), triplets.end());
  g.weights.makeCompressed();
  return g;
}

void write_edge_list(std::ostream& os, const CouplingGraph& graph) {
  os << "# n=" << graph.n << " seed=" << graph.seed << '\n';
  for (Eigen::Index i = 0; i < graph.weights.outerSize(); ++i) {
    for (decltype(graph.weights)::InnerIterator it(graph.weights, i); it; ++it) {
      os << i << ' ' << it.col() << ' ' << format_double(it.value()) << '\n';
    }
  }
}

CouplingGraph read_edge_list(std::istream& is) {
  std::string line;
  if (!std::getline(is, line)) throw ConfigError("edge list: empty input");
  long long n = 0;
  unsigned long long seed = 0;
  if (std::sscanf(line.c_str(), "# n=%lld seed=%llu", &n, &seed) != 2 || n <= 0) {
    throw ConfigError("edge list: malformed header '" + line + "'");
  }
  std::vector<Eigen::Triplet<double>> trips;
  std::size_t lineno = 1;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    long long i = 0, j = 0;
    double w = 0.0;
    if (!(ls >> i >> j >> w)) {
      throw ConfigError("edge list: malformed line " + std::to_string(lineno));
    }
    trips.emplace_back(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j), w);
  }
  return graph_from_triplets(static_cast<Eigen::Index>(n), trips, seed);
}

}  // namespace ddstab::systems
