#pragma once

#include "spincert/spin_core.hpp"

namespace spincert {

// Internal factory for transforms that preserve the state invariants by
// construction (channels, embeddings). Not part of the public surface.
struct StateAccess {
  static QubitEnsembleState make(int n_qubits, Representation rep, Eigen::VectorXcd vec,
                                 Eigen::MatrixXcd mat) {
    return QubitEnsembleState::trusted(n_qubits, rep, std::move(vec), std::move(mat));
  }
};

}  // namespace spincert
