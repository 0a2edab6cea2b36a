#pragma once

#include <cstdint>
#include <iosfwd>
#include <utility>
#include <vector>

#include <Eigen/SparseCore>

namespace ddstab::systems {

/// Nonnegative coupling weights c_{i,j} (row i receives from column j).
struct CouplingGraph {
  Eigen::Index n = 0;
  Eigen::SparseMatrix<double, Eigen::RowMajor> weights;
  std::uint64_t seed = 0;

  /// Number of nonzero off-diagonal pairs, counting i-j and j-i once.
  std::size_t undirected_edge_count() const;
  /// Row-wise count of nonzero entries.
  std::vector<std::size_t> degrees() const;
  double max_weight() const;
  bool is_symmetric() const;
};

/// Preferential attachment: a complete graph on m+1 seed nodes, then each
/// new node links to m distinct existing nodes with probability
/// proportional to their degree. Edge weights equal coupling_scale.
CouplingGraph generate_scale_free(Eigen::Index n, int m, std::uint64_t seed,
                                  double coupling_scale = 0.05);

/// Builds a graph from explicit (i, j, weight) triples.
CouplingGraph graph_from_triplets(Eigen::Index n,
                                  const std::vector<Eigen::Triplet<double>>& triplets,
                                  std::uint64_t seed = 0);

/// Edge-list text: header `# n=<n> seed=<seed>` then one `i j weight` line
/// per nonzero c_{i,j}, row-major, 0-based.
void write_edge_list(std::ostream& os, const CouplingGraph& graph);
CouplingGraph read_edge_list(std::istream& is);

}  // namespace ddstab::systems
