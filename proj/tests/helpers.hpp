#pragma once

// Test-only oracles, kept independent of the library's computation paths:
// collective operators are assembled from explicit Kronecker products and
// rotations from dense matrix exponentials, so agreement with the
// matrix-free production code is a genuine cross-check.

#include <Eigen/Dense>
#include <complex>
#include <random>
#include <vector>

namespace testos {

using Eigen::MatrixXcd;
using Eigen::VectorXcd;
using cxd = std::complex<double>;

inline MatrixXcd kron(const MatrixXcd& a, const MatrixXcd& b) {
  MatrixXcd out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

inline MatrixXcd pauli(char axis) {
  MatrixXcd m(2, 2);
  const cxd i{0.0, 1.0};
  switch (axis) {
    case 'x': m << 0, 1, 1, 0; break;
    case 'y': m << 0, -i, i, 0; break;
    default: m << 1, 0, 0, -1; break;
  }
  return m;
}

// J_axis for n qubits by summing explicit kron chains. Qubit q occupies the
// q-th factor counting from the least-significant side, matching the
// library's bit convention.
inline MatrixXcd collective_kron(int n, char axis) {
  const Eigen::Index dim = Eigen::Index(1) << n;
  MatrixXcd total = MatrixXcd::Zero(dim, dim);
  for (int q = 0; q < n; ++q) {
    MatrixXcd term = MatrixXcd::Identity(1, 1);
    for (int k = n - 1; k >= 0; --k) {
      term = kron(term, k == q ? pauli(axis) : MatrixXcd::Identity(2, 2));
    }
    total += 0.5 * term;
  }
  return total;
}

inline double expectation(const MatrixXcd& op, const MatrixXcd& rho) {
  return std::real((op * rho).trace());
}

// exp(-i angle H) for Hermitian H via spectral decomposition.
inline MatrixXcd expi(const MatrixXcd& h, double angle) {
  Eigen::SelfAdjointEigenSolver<MatrixXcd> solver(h);
  VectorXcd phases(h.rows());
  const cxd i{0.0, 1.0};
  for (Eigen::Index k = 0; k < h.rows(); ++k) {
    phases(k) = std::exp(-i * angle * solver.eigenvalues()(k));
  }
  return solver.eigenvectors() * phases.asDiagonal() * solver.eigenvectors().adjoint();
}

// Random density matrix: a few Haar-ish pure states with random convex
// weights, from a test-local engine.
inline MatrixXcd random_density(int dim, unsigned seed, int rank = 3) {
  std::mt19937 engine(seed);
  std::normal_distribution<double> gauss;
  MatrixXcd rho = MatrixXcd::Zero(dim, dim);
  std::vector<double> weights(rank);
  double total = 0.0;
  for (double& w : weights) {
    w = -std::log(std::uniform_real_distribution<double>(1e-12, 1.0)(engine));
    total += w;
  }
  for (int r = 0; r < rank; ++r) {
    VectorXcd v(dim);
    for (int k = 0; k < dim; ++k) v(k) = cxd(gauss(engine), gauss(engine));
    v /= v.norm();
    rho += weights[r] / total * (v * v.adjoint());
  }
  return rho;
}

inline VectorXcd random_ladder(int n, unsigned seed) {
  std::mt19937 engine(seed);
  std::normal_distribution<double> gauss;
  VectorXcd v(n + 1);
  for (int k = 0; k <= n; ++k) v(k) = cxd(gauss(engine), gauss(engine));
  v /= v.norm();
  return v;
}

// Dicke ladder level embedded in the computational basis: amplitude
// 1/sqrt(C(n,r)) on every string with r set bits.
inline VectorXcd dicke_statevector(int n, int down_spins) {
  const Eigen::Index dim = Eigen::Index(1) << n;
  double count = 1.0;
  for (int i = 1; i <= down_spins; ++i) count *= double(n - down_spins + i) / double(i);
  VectorXcd v = VectorXcd::Zero(dim);
  for (Eigen::Index a = 0; a < dim; ++a) {
    if (__builtin_popcountll(a) == down_spins) v(a) = 1.0 / std::sqrt(count);
  }
  return v;
}

}  // namespace testos
