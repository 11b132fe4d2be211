#pragma once

#include <complex>
#include <cstdint>
#include <utility>
#include <vector>

#include "spincert/rng.hpp"
#include "spincert/spin_core.hpp"

namespace spincert {

// Dicke ladder state |N/2, jz_twice/2>. jz_twice must have the same parity
// as N and |jz_twice| <= N.
QubitEnsembleState make_dicke(int n_qubits, int jz_twice);

// One (theta, phi) Bloch pair per qubit; the qubit state is
// cos(theta/2)|0> + e^{i phi} sin(theta/2)|1>.
struct BlochAngles {
  double theta = 0.0;
  double phi = 0.0;
};

QubitEnsembleState make_product(const std::vector<BlochAngles>& angles,
                                const Numerics& num = default_numerics());

// Normalized amplitude combination of symmetric_pure states on the same
// ladder. Throws if the components cancel to numerical zero.
QubitEnsembleState make_superposition(
    const std::vector<std::pair<std::complex<double>, QubitEnsembleState>>& terms,
    const Numerics& num = default_numerics());

// Convex mixture. Weights must be non-negative and sum to one. Symmetric
// components mix on the ladder; anything dense promotes the whole mixture
// to a dense matrix.
QubitEnsembleState make_mixture(const std::vector<std::pair<double, QubitEnsembleState>>& parts,
                                const Numerics& num = default_numerics());

// One term of a block-product mixture: an ordered division of the N qubits
// into contiguous blocks plus a pure state per block.
struct BiseparableComponent {
  std::vector<int> block_sizes;                  // composition of N, each in [1, cap]
  std::vector<Eigen::VectorXcd> block_states;    // dim 2^{block_sizes[i]}, unit norm
};

struct BiseparableSpec {
  int n_qubits = 0;
  std::vector<double> weights;  // Dirichlet(1,...,1) draws: >= 0, sum 1
  std::vector<BiseparableComponent> components;
};

// Uniform over compositions of n with parts in [1, cap], via the standard
// count-and-descend construction.
std::vector<int> sample_block_layout(int n, int cap, Rng& rng);

// Haar-uniform pure state of the given dimension.
Eigen::VectorXcd haar_random_pure(int dim, Rng& rng);

BiseparableSpec sample_biseparable_spec(int n_qubits, int block_cap, int n_components, Rng& rng);

// Dense density matrix sum_mu p_mu |psi_mu><psi_mu| with each |psi_mu> a
// product over its blocks.
QubitEnsembleState build_biseparable(const BiseparableSpec& spec,
                                     const Numerics& num = default_numerics());

// Seeded convenience wrapper: sample a spec, then build it.
QubitEnsembleState make_biseparable_random(int n_qubits, int block_cap, int n_components,
                                           std::uint64_t seed,
                                           const Numerics& num = default_numerics());

}  // namespace spincert
