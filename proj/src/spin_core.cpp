#include "spincert/spin_core.hpp"

#include <bit>
#include <cmath>
#include <cstdint>
#include <utility>

namespace spincert {

using Eigen::Index;
using Eigen::MatrixXcd;
using Eigen::VectorXcd;
using cxd = std::complex<double>;

namespace {

constexpr cxd kI{0.0, 1.0};

int popcount(std::uint64_t a) { return std::popcount(a); }

double binomial(int n, int k) {
  double value = 1.0;
  for (int i = 1; i <= k; ++i) value *= double(n - k + i) / double(i);
  return value;
}

void check_dense_cap(int n_qubits, const Numerics& num) {
  if (n_qubits > num.dense_cap) {
    throw size_error("dense representation needs 2^" + std::to_string(n_qubits) +
                     " amplitudes, above the configured cap N=" + std::to_string(num.dense_cap));
  }
}

// J+ |J,M> = raise(J,M) |J,M+1>,  J- |J,M> = lower(J,M) |J,M-1>.
double ladder_raise(double j, double m) { return std::sqrt(j * (j + 1) - m * (m + 1)); }
double ladder_lower(double j, double m) { return std::sqrt(j * (j + 1) - m * (m - 1)); }

// out = J_axis * in on the maximal-spin ladder; `in` columns are ladder
// vectors (a plain vector is the one-column case).
MatrixXcd ladder_apply(Axis axis, int n, const MatrixXcd& in) {
  const double j = 0.5 * n;
  MatrixXcd out = MatrixXcd::Zero(in.rows(), in.cols());
  for (int r = 0; r <= n; ++r) {
    const double m = j - r;
    switch (axis) {
      case Axis::z:
        out.row(r) = m * in.row(r);
        break;
      case Axis::x:
        if (r > 0) out.row(r - 1) += 0.5 * ladder_raise(j, m) * in.row(r);
        if (r < n) out.row(r + 1) += 0.5 * ladder_lower(j, m) * in.row(r);
        break;
      case Axis::y:
        if (r > 0) out.row(r - 1) += -0.5 * kI * ladder_raise(j, m) * in.row(r);
        if (r < n) out.row(r + 1) += 0.5 * kI * ladder_lower(j, m) * in.row(r);
        break;
    }
  }
  return out;
}

// rho <- U_q rho U_q^dagger for a single-qubit gate u on qubit q.
void conjugate_single_qubit(MatrixXcd& rho, int q, const Eigen::Matrix2cd& u) {
  const Index dim = rho.rows();
  const Index mq = Index(1) << q;
  for (Index col = 0; col < dim; ++col) {
    for (Index a = 0; a < dim; ++a) {
      if (a & mq) continue;
      const cxd t0 = rho(a, col);
      const cxd t1 = rho(a | mq, col);
      rho(a, col) = u(0, 0) * t0 + u(0, 1) * t1;
      rho(a | mq, col) = u(1, 0) * t0 + u(1, 1) * t1;
    }
  }
  for (Index col = 0; col < dim; ++col) {
    if (col & mq) continue;
    for (Index row = 0; row < dim; ++row) {
      const cxd t0 = rho(row, col);
      const cxd t1 = rho(row, col | mq);
      rho(row, col) = t0 * std::conj(u(0, 0)) + t1 * std::conj(u(0, 1));
      rho(row, col | mq) = t0 * std::conj(u(1, 0)) + t1 * std::conj(u(1, 1));
    }
  }
}

Eigen::Matrix2cd single_qubit_rotation(Axis axis, double angle) {
  const double c = std::cos(0.5 * angle);
  const double s = std::sin(0.5 * angle);
  Eigen::Matrix2cd u;
  switch (axis) {
    case Axis::x:
      u << c, -kI * s, -kI * s, c;
      break;
    case Axis::y:
      u << c, -s, s, c;
      break;
    case Axis::z:
      u << c - kI * s, 0.0, 0.0, c + kI * s;
      break;
  }
  return u;
}

// exp(-i angle J_axis) on the ladder, via the spectral decomposition of the
// Hermitian generator.
MatrixXcd ladder_rotation(int n, Axis axis, double angle) {
  const Index dim = n + 1;
  MatrixXcd generator = MatrixXcd::Zero(dim, dim);
  generator = ladder_apply(axis, n, MatrixXcd::Identity(dim, dim));
  Eigen::SelfAdjointEigenSolver<MatrixXcd> solver(generator);
  VectorXcd phases(dim);
  for (Index i = 0; i < dim; ++i) {
    phases(i) = std::exp(-kI * angle * solver.eigenvalues()(i));
  }
  return solver.eigenvectors() * phases.asDiagonal() * solver.eigenvectors().adjoint();
}

void check_hermitian_unit_trace(const MatrixXcd& rho, const Numerics& num, bool force_spectral) {
  if (rho.rows() != rho.cols()) throw numerics_error("density matrix is not square");
  if (std::abs(rho.trace() - 1.0) > num.linalg_tol) {
    throw numerics_error("density matrix trace deviates from 1 by " +
                         std::to_string(std::abs(rho.trace() - 1.0)));
  }
  const double herm = (rho - rho.adjoint()).cwiseAbs().maxCoeff();
  if (herm > num.linalg_tol) {
    throw numerics_error("density matrix is not Hermitian (deviation " + std::to_string(herm) + ")");
  }
  if (force_spectral || rho.rows() <= num.spectral_check_dim) {
    Eigen::SelfAdjointEigenSolver<MatrixXcd> solver(rho, Eigen::EigenvaluesOnly);
    if (solver.eigenvalues().minCoeff() < -num.positivity_tol) {
      throw numerics_error("density matrix has eigenvalue " +
                           std::to_string(solver.eigenvalues().minCoeff()));
    }
  }
}

}  // namespace

const char* axis_name(Axis axis) {
  switch (axis) {
    case Axis::x: return "x";
    case Axis::y: return "y";
    case Axis::z: return "z";
  }
  return "?";
}

Axis axis_from_name(const std::string& name) {
  if (name == "x") return Axis::x;
  if (name == "y") return Axis::y;
  if (name == "z") return Axis::z;
  throw input_error("unknown axis '" + name + "' (expected x, y or z)");
}

const char* representation_name(Representation rep) {
  switch (rep) {
    case Representation::dense_density_matrix: return "dense_density_matrix";
    case Representation::symmetric_pure: return "symmetric_pure";
    case Representation::symmetric_mixed: return "symmetric_mixed";
  }
  return "?";
}

QubitEnsembleState QubitEnsembleState::symmetric_pure(VectorXcd ladder, const Numerics& num) {
  const int n = static_cast<int>(ladder.size()) - 1;
  if (n < 1) throw input_error("symmetric_pure needs at least 2 ladder amplitudes");
  if (std::abs(ladder.norm() - 1.0) > num.linalg_tol) {
    throw numerics_error("ladder vector norm deviates from 1 by " +
                         std::to_string(std::abs(ladder.norm() - 1.0)));
  }
  return QubitEnsembleState(n, Representation::symmetric_pure, std::move(ladder), MatrixXcd());
}

QubitEnsembleState QubitEnsembleState::symmetric_mixed(MatrixXcd rho, const Numerics& num) {
  const int n = static_cast<int>(rho.rows()) - 1;
  if (n < 1 || rho.rows() != rho.cols()) throw input_error("symmetric_mixed needs an (N+1)x(N+1) matrix");
  check_hermitian_unit_trace(rho, num, false);
  return QubitEnsembleState(n, Representation::symmetric_mixed, VectorXcd(), std::move(rho));
}

QubitEnsembleState QubitEnsembleState::dense(int n_qubits, MatrixXcd rho, const Numerics& num) {
  if (n_qubits < 1) throw input_error("n_qubits must be positive");
  check_dense_cap(n_qubits, num);
  if (rho.rows() != (Index(1) << n_qubits) || rho.rows() != rho.cols()) {
    throw input_error("dense density matrix must be 2^N x 2^N");
  }
  check_hermitian_unit_trace(rho, num, false);
  return QubitEnsembleState(n_qubits, Representation::dense_density_matrix, VectorXcd(),
                            std::move(rho));
}

QubitEnsembleState QubitEnsembleState::dense_pure(int n_qubits, const VectorXcd& statevector,
                                                  const Numerics& num) {
  if (n_qubits < 1) throw input_error("n_qubits must be positive");
  check_dense_cap(n_qubits, num);
  if (statevector.size() != (Index(1) << n_qubits)) {
    throw input_error("statevector must have 2^N amplitudes");
  }
  if (std::abs(statevector.norm() - 1.0) > num.linalg_tol) {
    throw numerics_error("statevector norm deviates from 1 by " +
                         std::to_string(std::abs(statevector.norm() - 1.0)));
  }
  MatrixXcd rho = statevector * statevector.adjoint();
  return QubitEnsembleState(n_qubits, Representation::dense_density_matrix, VectorXcd(),
                            std::move(rho));
}

const VectorXcd& QubitEnsembleState::ladder() const {
  if (rep_ != Representation::symmetric_pure) {
    throw input_error("ladder() is only available for symmetric_pure states");
  }
  return vec_;
}

const MatrixXcd& QubitEnsembleState::matrix() const {
  if (rep_ == Representation::symmetric_pure) {
    throw input_error("matrix() is not available for symmetric_pure states");
  }
  return mat_;
}

void QubitEnsembleState::validate(const Numerics& num, bool force_spectral) const {
  if (rep_ == Representation::symmetric_pure) {
    if (std::abs(vec_.norm() - 1.0) > num.linalg_tol) {
      throw numerics_error("ladder vector norm deviates from 1");
    }
    return;
  }
  check_hermitian_unit_trace(mat_, num, force_spectral);
}

void validate_moments(const MomentSet& m, const Numerics& num) {
  if (m.n_qubits < 1) throw numerics_error("MomentSet has no qubit count");
  const double slack = num.physics_tol;
  if (m.jx2 < -slack || m.jy2 < -slack || m.jz2 < -slack || m.jz4 < -slack) {
    throw numerics_error("negative even moment");
  }
  if (m.jz2 - m.jz_mean * m.jz_mean < -slack) throw numerics_error("negative Jz variance");
  if (m.jz4 - m.jz2 * m.jz2 < -slack) throw numerics_error("fourth-moment inequality violated");
  const double cap = 0.25 * m.n_qubits * (m.n_qubits + 2);
  if (m.jx2 + m.jy2 + m.jz2 > cap + num.margin_tol) {
    throw numerics_error("transverse-moment sum exceeds N(N+2)/4");
  }
}

Eigen::MatrixXcd collective_operator(int n_qubits, Axis axis, Representation rep,
                                     const Numerics& num) {
  if (n_qubits < 1) throw input_error("n_qubits must be positive");
  if (rep != Representation::dense_density_matrix) {
    const Index dim = n_qubits + 1;
    return ladder_apply(axis, n_qubits, MatrixXcd::Identity(dim, dim));
  }
  check_dense_cap(n_qubits, num);
  const Index dim = Index(1) << n_qubits;
  MatrixXcd op = MatrixXcd::Zero(dim, dim);
  for (Index a = 0; a < dim; ++a) {
    for (int q = 0; q < n_qubits; ++q) {
      const Index mq = Index(1) << q;
      switch (axis) {
        case Axis::x:
          op(a ^ mq, a) += 0.5;
          break;
        case Axis::y:
          op(a ^ mq, a) += 0.5 * kI * ((a & mq) ? -1.0 : 1.0);
          break;
        case Axis::z:
          op(a, a) += (a & mq) ? -0.5 : 0.5;
          break;
      }
    }
  }
  return op;
}

MomentSet compute_moments(const QubitEnsembleState& state) {
  const int n = state.n_qubits();
  MomentSet out;
  out.n_qubits = n;

  if (state.representation() == Representation::symmetric_pure) {
    const VectorXcd& psi = state.ladder();
    const double j = 0.5 * n;
    for (int r = 0; r <= n; ++r) {
      const double p = std::norm(psi(r));
      const double m = j - r;
      out.jz_mean += m * p;
      out.jz2 += m * m * p;
      out.jz4 += m * m * m * m * p;
    }
    out.jx2 = ladder_apply(Axis::x, n, psi).squaredNorm();
    out.jy2 = ladder_apply(Axis::y, n, psi).squaredNorm();
    return out;
  }

  if (state.representation() == Representation::symmetric_mixed) {
    const MatrixXcd& rho = state.matrix();
    const double j = 0.5 * n;
    for (int r = 0; r <= n; ++r) {
      const double p = std::real(rho(r, r));
      const double m = j - r;
      out.jz_mean += m * p;
      out.jz2 += m * m * p;
      out.jz4 += m * m * m * m * p;
    }
    out.jx2 = std::real(ladder_apply(Axis::x, n, ladder_apply(Axis::x, n, rho)).trace());
    out.jy2 = std::real(ladder_apply(Axis::y, n, ladder_apply(Axis::y, n, rho)).trace());
    return out;
  }

  // Dense: Jz is diagonal in the computational basis, and the transverse
  // second moments reduce to pair sums
  //   tr(sx_q sx_p rho) = sum_a Re rho(a^mq^mp, a)
  //   tr(sy_q sy_p rho) = sum_a -(-1)^{a_q+a_p} Re rho(a^mq^mp, a)
  // so no operator matrix is ever materialized.
  const MatrixXcd& rho = state.matrix();
  const Index dim = rho.rows();
  for (Index a = 0; a < dim; ++a) {
    const double m = 0.5 * (n - 2 * popcount(static_cast<std::uint64_t>(a)));
    const double p = std::real(rho(a, a));
    out.jz_mean += m * p;
    out.jz2 += m * m * p;
    out.jz4 += m * m * m * m * p;
  }
  double sum_xx = 0.0;
  double sum_yy = 0.0;
  for (int q = 0; q < n; ++q) {
    for (int p = q + 1; p < n; ++p) {
      const Index mask = (Index(1) << q) | (Index(1) << p);
      double xx = 0.0;
      double yy = 0.0;
      for (Index a = 0; a < dim; ++a) {
        const double re = std::real(rho(a ^ mask, a));
        xx += re;
        yy += (popcount(static_cast<std::uint64_t>(a) & static_cast<std::uint64_t>(mask)) & 1)
                  ? re
                  : -re;
      }
      sum_xx += 2.0 * xx;
      sum_yy += 2.0 * yy;
    }
  }
  out.jx2 = 0.25 * (n + sum_xx);
  out.jy2 = 0.25 * (n + sum_yy);
  return out;
}

QubitEnsembleState rotate_collective(const QubitEnsembleState& state, Axis axis, double angle) {
  const int n = state.n_qubits();
  switch (state.representation()) {
    case Representation::symmetric_pure: {
      VectorXcd psi = state.vec_;
      if (axis == Axis::z) {
        const double j = 0.5 * n;
        for (int r = 0; r <= n; ++r) psi(r) *= std::exp(-kI * angle * (j - r));
      } else {
        psi = ladder_rotation(n, axis, angle) * psi;
      }
      return QubitEnsembleState::trusted(n, state.rep_, std::move(psi), MatrixXcd());
    }
    case Representation::symmetric_mixed: {
      MatrixXcd rho;
      if (axis == Axis::z) {
        // Conjugation phase depends only on the level difference.
        rho = state.mat_;
        for (int r = 0; r <= n; ++r) {
          for (int s = 0; s <= n; ++s) rho(r, s) *= std::exp(-kI * angle * double(s - r));
        }
      } else {
        const MatrixXcd u = ladder_rotation(n, axis, angle);
        rho = u * state.mat_ * u.adjoint();
      }
      return QubitEnsembleState::trusted(n, state.rep_, VectorXcd(), std::move(rho));
    }
    case Representation::dense_density_matrix: {
      // exp(-i angle J_axis) factorizes into commuting single-qubit
      // rotations, so the conjugation is N sparse passes, never a full
      // matrix exponential.
      MatrixXcd rho = state.mat_;
      const Eigen::Matrix2cd u = single_qubit_rotation(axis, angle);
      for (int q = 0; q < n; ++q) conjugate_single_qubit(rho, q, u);
      return QubitEnsembleState::trusted(n, state.rep_, VectorXcd(), std::move(rho));
    }
  }
  throw input_error("unknown representation");
}

QubitEnsembleState convert_representation(const QubitEnsembleState& state, Representation target,
                                          const Numerics& num) {
  const int n = state.n_qubits();
  const Representation source = state.representation();
  if (source == target) {
    return state;
  }

  if (source == Representation::symmetric_pure && target == Representation::symmetric_mixed) {
    MatrixXcd rho = state.vec_ * state.vec_.adjoint();
    return QubitEnsembleState::trusted(n, target, VectorXcd(), std::move(rho));
  }

  if (source == Representation::symmetric_mixed && target == Representation::symmetric_pure) {
    Eigen::SelfAdjointEigenSolver<MatrixXcd> solver(state.mat_);
    const Index top = state.mat_.rows() - 1;  // eigenvalues sorted ascending
    if (solver.eigenvalues()(top) < 1.0 - num.physics_tol) {
      throw conversion_error("symmetric_mixed state is not pure (largest eigenvalue " +
                             std::to_string(solver.eigenvalues()(top)) + ")");
    }
    VectorXcd psi = solver.eigenvectors().col(top);
    psi /= psi.norm();
    return QubitEnsembleState::trusted(n, target, std::move(psi), MatrixXcd());
  }

  if (source == Representation::symmetric_pure && target == Representation::dense_density_matrix) {
    check_dense_cap(n, num);
    // Ladder level r embeds as the normalized sum of all strings with r
    // down-spins.
    const Index dim = Index(1) << n;
    VectorXcd v(dim);
    std::vector<double> scale(n + 1);
    for (int r = 0; r <= n; ++r) scale[r] = 1.0 / std::sqrt(binomial(n, r));
    for (Index a = 0; a < dim; ++a) {
      const int r = popcount(static_cast<std::uint64_t>(a));
      v(a) = state.vec_(r) * scale[r];
    }
    MatrixXcd rho = v * v.adjoint();
    return QubitEnsembleState::trusted(n, target, VectorXcd(), std::move(rho));
  }

  if (source == Representation::symmetric_mixed && target == Representation::dense_density_matrix) {
    check_dense_cap(n, num);
    const Index dim = Index(1) << n;
    std::vector<double> scale(n + 1);
    for (int r = 0; r <= n; ++r) scale[r] = 1.0 / std::sqrt(binomial(n, r));
    MatrixXcd rho(dim, dim);
    for (Index a = 0; a < dim; ++a) {
      const int ra = popcount(static_cast<std::uint64_t>(a));
      for (Index b = 0; b < dim; ++b) {
        const int rb = popcount(static_cast<std::uint64_t>(b));
        rho(a, b) = state.mat_(ra, rb) * scale[ra] * scale[rb];
      }
    }
    return QubitEnsembleState::trusted(n, target, VectorXcd(), std::move(rho));
  }

  if (source == Representation::dense_density_matrix) {
    // Project onto the maximal-spin ladder and measure what is left behind.
    const Index dim = state.mat_.rows();
    std::vector<double> scale(n + 1);
    for (int r = 0; r <= n; ++r) scale[r] = 1.0 / std::sqrt(binomial(n, r));
    MatrixXcd sym = MatrixXcd::Zero(n + 1, n + 1);
    for (Index a = 0; a < dim; ++a) {
      const int ra = popcount(static_cast<std::uint64_t>(a));
      for (Index b = 0; b < dim; ++b) {
        const int rb = popcount(static_cast<std::uint64_t>(b));
        sym(ra, rb) += state.mat_(a, b) * scale[ra] * scale[rb];
      }
    }
    const double leakage = 1.0 - std::real(sym.trace());
    if (leakage > num.physics_tol) {
      throw conversion_error("state leaks " + std::to_string(leakage) +
                             " outside the maximal-spin sector");
    }
    sym /= sym.trace();
    QubitEnsembleState mixed =
        QubitEnsembleState::trusted(n, Representation::symmetric_mixed, VectorXcd(), std::move(sym));
    if (target == Representation::symmetric_mixed) return mixed;
    return convert_representation(mixed, target, num);
  }

  throw conversion_error("unsupported representation conversion");
}

}  // namespace spincert
