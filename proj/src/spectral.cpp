#include "graphpse/spectral.hpp"

#include <cmath>

namespace graphpse {

EigenDecomposition<double> laplacian_eigen(const Graph& g) { return eigh(laplacian(g)); }

Eigen::MatrixXd lap_pe(const Graph& g, int m) {
  if (m < 1) throw Error(ErrorCode::kInvalidArgument, "LapPE width must be >= 1");
  const auto eig = laplacian_eigen(g);
  const auto idx = eig.nontrivial();
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(g.num_nodes(), m);
  for (int c = 0; c < m && c < static_cast<int>(idx.size()); ++c) {
    const Eigen::VectorXd u = eig.eigenvectors.col(idx[c]);
    out.col(c) = (u / u.norm()).cwiseAbs();
  }
  return out;
}

Eigen::VectorXd lap_eigenvalues(const Graph& g, int m) {
  if (m < 1) throw Error(ErrorCode::kInvalidArgument, "eigenvalue count must be >= 1");
  const auto eig = laplacian_eigen(g);
  const auto idx = eig.nontrivial();
  Eigen::VectorXd out = Eigen::VectorXd::Zero(m);
  for (int c = 0; c < m && c < static_cast<int>(idx.size()); ++c) {
    out(c) = std::abs(eig.eigenvalues(idx[c]));
  }
  return out;
}

Eigen::MatrixXd hk_diag_se(const Graph& g, std::span<const double> times) {
  if (times.empty()) throw Error(ErrorCode::kInvalidArgument, "no diffusion times");
  for (double t : times) {
    if (!(t > 0.0)) throw Error(ErrorCode::kNonPositiveTime, "diffusion time must be > 0");
  }
  const auto eig = laplacian_eigen(g);
  const auto idx = eig.nontrivial();
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(g.num_nodes(), static_cast<Eigen::Index>(times.size()));
  for (Eigen::Index i : idx) {
    const Eigen::VectorXd u = eig.eigenvectors.col(i);
    const Eigen::VectorXd sq = (u / u.norm()).array().square();
    for (std::size_t t = 0; t < times.size(); ++t) {
      out.col(static_cast<Eigen::Index>(t)) += std::exp(-times[t] * eig.eigenvalues(i)) * sq;
    }
  }
  return out;
}

}  // namespace graphpse
