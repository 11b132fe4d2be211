#pragma once

#include <Eigen/Dense>
#include <complex>
#include <string>

#include "spincert/numerics.hpp"

namespace spincert {

enum class Axis { x, y, z };

const char* axis_name(Axis axis);
Axis axis_from_name(const std::string& name);

// How an N-qubit state is stored.
//
//   dense_density_matrix : 2^N x 2^N Hermitian, unit trace.
//   symmetric_pure       : length N+1 amplitude vector on the maximal-spin
//                          ladder |J=N/2, Jz=N/2-r>, r = 0..N.
//   symmetric_mixed      : (N+1) x (N+1) Hermitian, unit trace, same ladder.
//
// Symmetric forms are valid only for states supported on the maximal-spin
// sector; they make ladder states tractable far beyond the dense cap.
enum class Representation { dense_density_matrix, symmetric_pure, symmetric_mixed };

const char* representation_name(Representation rep);

// Immutable N-qubit state. Construct through the factories, which validate
// trace/norm, hermiticity and (for small dimensions) positivity.
//
// Basis conventions, used everywhere in this library:
//   * computational bit q of a dense index is qubit q (qubit 0 = LSB),
//   * bit value 0 is spin up (sigma_z = +1), bit value 1 is spin down,
//   * ladder index r counts down-spins, so Jz eigenvalue is N/2 - r.
class QubitEnsembleState {
 public:
  static QubitEnsembleState symmetric_pure(Eigen::VectorXcd ladder,
                                           const Numerics& num = default_numerics());
  static QubitEnsembleState symmetric_mixed(Eigen::MatrixXcd rho,
                                            const Numerics& num = default_numerics());
  static QubitEnsembleState dense(int n_qubits, Eigen::MatrixXcd rho,
                                  const Numerics& num = default_numerics());
  // Convenience: dense density matrix |psi><psi| from a 2^N statevector.
  static QubitEnsembleState dense_pure(int n_qubits, const Eigen::VectorXcd& statevector,
                                       const Numerics& num = default_numerics());

  int n_qubits() const { return n_qubits_; }
  Representation representation() const { return rep_; }

  // symmetric_pure only.
  const Eigen::VectorXcd& ladder() const;
  // dense_density_matrix or symmetric_mixed only.
  const Eigen::MatrixXcd& matrix() const;

  // Re-checks the representation invariants; throws numerics_error on
  // failure. Spectral positivity is checked when the dimension is at most
  // num.spectral_check_dim or when force_spectral is set.
  void validate(const Numerics& num = default_numerics(), bool force_spectral = false) const;

 private:
  QubitEnsembleState(int n, Representation rep, Eigen::VectorXcd vec, Eigen::MatrixXcd mat)
      : n_qubits_(n), rep_(rep), vec_(std::move(vec)), mat_(std::move(mat)) {}

  // Internal transforms (rotation, channels, conversion) preserve the
  // invariants by construction and skip re-validation.
  static QubitEnsembleState trusted(int n, Representation rep, Eigen::VectorXcd vec,
                                    Eigen::MatrixXcd mat) {
    return QubitEnsembleState(n, rep, std::move(vec), std::move(mat));
  }

  friend QubitEnsembleState rotate_collective(const QubitEnsembleState&, Axis, double);
  friend QubitEnsembleState convert_representation(const QubitEnsembleState&, Representation,
                                                   const Numerics&);
  friend struct StateAccess;

  int n_qubits_;
  Representation rep_;
  Eigen::VectorXcd vec_;
  Eigen::MatrixXcd mat_;
};

// Collective-spin moments of one state, hbar = 1 spin units.
struct MomentSet {
  double jx2 = 0.0;      // <Jx^2>
  double jy2 = 0.0;      // <Jy^2>
  double jz_mean = 0.0;  // <Jz>
  double jz2 = 0.0;      // <Jz^2>
  double jz4 = 0.0;      // <Jz^4>
  int n_qubits = 0;

  double jz_variance() const { return jz2 - jz_mean * jz_mean; }
  // Variance of the observable Jz^2 itself.
  double jz2_variance() const { return jz4 - jz2 * jz2; }
};

// Checks the MomentSet invariants (non-negativity, variance and
// fourth-moment inequalities, transverse-sum cap). Throws numerics_error.
void validate_moments(const MomentSet& moments, const Numerics& num = default_numerics());

// Matrix of J_axis = sum_i sigma_i^axis / 2 in the requested representation.
// Dense matrices are limited by num.dense_cap.
Eigen::MatrixXcd collective_operator(int n_qubits, Axis axis, Representation rep,
                                     const Numerics& num = default_numerics());

// All five moments, exact to floating-point roundoff, computed in the
// state's own representation (matrix-free Pauli sums for dense states).
MomentSet compute_moments(const QubitEnsembleState& state);

// exp(-i angle J_axis) state exp(+i angle J_axis), same representation.
QubitEnsembleState rotate_collective(const QubitEnsembleState& state, Axis axis, double angle);

// Conversion between representations. Symmetric -> dense always works
// (ladder levels embed as symmetrized basis sums); dense -> symmetric
// requires the support to lie in the maximal-spin sector and reports the
// measured leakage otherwise.
QubitEnsembleState convert_representation(const QubitEnsembleState& state, Representation target,
                                          const Numerics& num = default_numerics());

}  // namespace spincert
