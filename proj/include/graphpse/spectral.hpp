#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "graphpse/errors.hpp"
#include "graphpse/graph.hpp"

namespace graphpse {

inline constexpr int kJacobiMaxSweeps = 100;
inline constexpr double kJacobiOffDiagonalTolerance = 1e-12;
inline constexpr double kSymmetryTolerance = 1e-12;

/// Eigenpairs of a real symmetric matrix, eigenvalues ascending, eigenvectors
/// as orthonormal columns. Each eigenvector's first entry of non-negligible
/// magnitude is positive.
template <typename Scalar>
struct EigenDecomposition {
  Vector<Scalar> eigenvalues;
  Matrix<Scalar> eigenvectors;
  /// 1e-8 * max(1, |lambda_max|); eigenvalues at or below it count as trivial.
  Scalar zero_threshold = Scalar(0);

  Eigen::Index size() const { return eigenvalues.size(); }

  /// Indices of eigenvalues strictly above zero_threshold, ascending.
  std::vector<Eigen::Index> nontrivial() const {
    std::vector<Eigen::Index> idx;
    for (Eigen::Index i = 0; i < eigenvalues.size(); ++i) {
      if (eigenvalues(i) > zero_threshold) idx.push_back(i);
    }
    return idx;
  }
};

template <typename Derived>
void require_symmetric(const Eigen::MatrixBase<Derived>& m) {
  using Scalar = typename Derived::Scalar;
  if (m.rows() != m.cols()) throw Error(ErrorCode::kNotSymmetric, "matrix is not square");
  const Scalar scale = m.size() == 0 ? Scalar(0) : m.cwiseAbs().maxCoeff();
  const Scalar tol = Scalar(kSymmetryTolerance) * scale;
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = i + 1; j < m.cols(); ++j) {
      if (std::abs(m(i, j) - m(j, i)) > tol) {
        throw Error(ErrorCode::kNotSymmetric,
                    "asymmetry at (" + std::to_string(i) + "," + std::to_string(j) + ")");
      }
    }
  }
}

/// Cyclic Jacobi eigensolver. Sweeps rows in fixed order until the
/// off-diagonal Frobenius norm drops below 1e-12 * ||A||_F.
template <typename Derived>
EigenDecomposition<typename Derived::Scalar> eigh(const Eigen::MatrixBase<Derived>& input) {
  using Scalar = typename Derived::Scalar;
  require_symmetric(input);
  const Eigen::Index n = input.rows();

  // Work on the symmetrized copy so tiny input asymmetry cannot bias rotations.
  Matrix<Scalar> a = (input + input.transpose()) / Scalar(2);
  Matrix<Scalar> v = Matrix<Scalar>::Identity(n, n);

  const Scalar norm = a.norm();
  const Scalar target = Scalar(kJacobiOffDiagonalTolerance) * norm;
  auto off_diagonal = [&] {
    Scalar s = 0;
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index j = 0; j < n; ++j)
        if (i != j) s += a(i, j) * a(i, j);
    return std::sqrt(s);
  };

  int sweep = 0;
  for (; sweep <= kJacobiMaxSweeps; ++sweep) {
    if (off_diagonal() <= target) break;
    if (sweep == kJacobiMaxSweeps) {
      throw Error(ErrorCode::kNoConvergence, "Jacobi did not converge in " +
                                                 std::to_string(kJacobiMaxSweeps) + " sweeps");
    }
    for (Eigen::Index p = 0; p + 1 < n; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) {
        const Scalar apq = a(p, q);
        if (apq == Scalar(0)) continue;
        const Scalar theta = (a(q, q) - a(p, p)) / (Scalar(2) * apq);
        const Scalar t = (theta >= 0 ? Scalar(1) : Scalar(-1)) /
                         (std::abs(theta) + std::sqrt(theta * theta + Scalar(1)));
        const Scalar c = Scalar(1) / std::sqrt(t * t + Scalar(1));
        const Scalar s = t * c;
        // A <- J^T A J with J the (p,q) rotation.
        for (Eigen::Index k = 0; k < n; ++k) {
          const Scalar akp = a(k, p);
          const Scalar akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (Eigen::Index k = 0; k < n; ++k) {
          const Scalar apk = a(p, k);
          const Scalar aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
        a(p, q) = Scalar(0);
        a(q, p) = Scalar(0);
        for (Eigen::Index k = 0; k < n; ++k) {
          const Scalar vkp = v(k, p);
          const Scalar vkq = v(k, q);
          v(k, p) = c * vkp - s * vkq;
          v(k, q) = s * vkp + c * vkq;
        }
      }
    }
  }

  std::vector<Eigen::Index> order(n);
  std::iota(order.begin(), order.end(), Eigen::Index(0));
  std::stable_sort(order.begin(), order.end(),
                   [&](Eigen::Index i, Eigen::Index j) { return a(i, i) < a(j, j); });

  EigenDecomposition<Scalar> out;
  out.eigenvalues.resize(n);
  out.eigenvectors.resize(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    out.eigenvalues(k) = a(order[k], order[k]);
    out.eigenvectors.col(k) = v.col(order[k]);
  }
  // Sign convention: first entry with magnitude above 1e-12 is positive.
  for (Eigen::Index k = 0; k < n; ++k) {
    for (Eigen::Index i = 0; i < n; ++i) {
      const Scalar x = out.eigenvectors(i, k);
      if (std::abs(x) > Scalar(1e-12)) {
        if (x < 0) out.eigenvectors.col(k) *= Scalar(-1);
        break;
      }
    }
  }
  const Scalar top = n == 0 ? Scalar(0) : out.eigenvalues.cwiseAbs().maxCoeff();
  out.zero_threshold = Scalar(1e-8) * std::max(Scalar(1), top);
  return out;
}

EigenDecomposition<double> laplacian_eigen(const Graph& g);

/// |normalize(u_i)| for the first m non-trivial Laplacian eigenvectors,
/// zero-padded to m columns. Rows are nodes.
Eigen::MatrixXd lap_pe(const Graph& g, int m);

/// First m non-trivial Laplacian eigenvalues (absolute values), zero-padded.
Eigen::VectorXd lap_eigenvalues(const Graph& g, int m);

/// Moore-Penrose pseudoinverse of a symmetric PSD matrix via its spectrum.
template <typename Derived>
Matrix<typename Derived::Scalar> pseudoinverse(const Eigen::MatrixBase<Derived>& l) {
  using Scalar = typename Derived::Scalar;
  const auto eig = eigh(l);
  Matrix<Scalar> out = Matrix<Scalar>::Zero(l.rows(), l.cols());
  for (Eigen::Index i : eig.nontrivial()) {
    const auto u = eig.eigenvectors.col(i);
    out.noalias() += (u * u.transpose()) / eig.eigenvalues(i);
  }
  return out;
}

/// Heat-kernel diagonal: column t is sum over non-trivial eigenpairs of
/// exp(-times[t] * lambda_i) * normalize(u_i)^2.
Eigen::MatrixXd hk_diag_se(const Graph& g, std::span<const double> times);

/// Exact pseudoinverse of L for a connected graph, computed in rational
/// arithmetic from L^+ = (L + J/n)^{-1} - J/n and rounded once to double.
/// Entries depend only on the graph up to relabeling, bit for bit.
Eigen::MatrixXd exact_laplacian_pseudoinverse(const Graph& g);

/// Q_ij = L^+_ij - L^+_ii, exact then rounded, for a connected graph.
Eigen::MatrixXd electrostatic_potentials(const Graph& g);

}  // namespace graphpse
