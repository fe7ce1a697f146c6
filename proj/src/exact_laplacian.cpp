#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "graphpse/errors.hpp"
#include "graphpse/spectral.hpp"

namespace graphpse {
namespace {

using boost::multiprecision::cpp_int;
using boost::multiprecision::cpp_rational;

struct Adjugate {
  std::vector<std::vector<cpp_int>> adj;  // adj(K)
  cpp_int det;
};

// K = n L + J is symmetric positive definite for a connected graph, so every
// leading principal minor is positive and fraction-free Gauss-Jordan needs no
// pivoting. Every division below is exact.
Adjugate shifted_laplacian_adjugate(const Graph& g) {
  const int n = g.num_nodes();
  const int width = 2 * n;
  std::vector<std::vector<cpp_int>> m(n, std::vector<cpp_int>(width));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) m[i][j] = 1;
    m[i][i] += cpp_int(n) * g.degree(i);
    for (int j : g.neighbors(i)) m[i][j] -= n;
    m[i][n + i] = 1;
  }
  cpp_int prev = 1;
  for (int k = 0; k < n; ++k) {
    const cpp_int pivot = m[k][k];
    for (int i = 0; i < n; ++i) {
      if (i == k) continue;
      const cpp_int factor = m[i][k];
      for (int j = 0; j < width; ++j) {
        if (j == k) continue;
        m[i][j] = (pivot * m[i][j] - factor * m[k][j]) / prev;
      }
      m[i][k] = 0;
    }
    prev = pivot;
  }
  Adjugate out;
  out.det = prev;
  out.adj.assign(n, std::vector<cpp_int>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) out.adj[i][j] = std::move(m[i][n + j]);
  return out;
}

void require_connected(const Graph& g) {
  if (!is_connected(g)) {
    throw Error(ErrorCode::kDisconnectedGraph, "potentials need a connected graph");
  }
}

}  // namespace

Eigen::MatrixXd exact_laplacian_pseudoinverse(const Graph& g) {
  require_connected(g);
  const int n = g.num_nodes();
  const auto [adj, det] = shifted_laplacian_adjugate(g);
  // L^+ = n adj(K)/det(K) - 1/n = (n^2 adj_ij - det) / (n det)
  const cpp_int nn = cpp_int(n) * n;
  const cpp_int denom = cpp_int(n) * det;
  Eigen::MatrixXd out(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      out(i, j) = cpp_rational(nn * adj[i][j] - det, denom).convert_to<double>();
  return out;
}

Eigen::MatrixXd electrostatic_potentials(const Graph& g) {
  require_connected(g);
  const int n = g.num_nodes();
  const auto [adj, det] = shifted_laplacian_adjugate(g);
  // Q_ij = L^+_ij - L^+_ii = n (adj_ij - adj_ii) / det
  Eigen::MatrixXd out(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      out(i, j) = i == j ? 0.0
                         : cpp_rational(cpp_int(n) * (adj[i][j] - adj[i][i]), det).convert_to<double>();
  return out;
}

}  // namespace graphpse
