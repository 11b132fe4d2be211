#pragma once

#include "spincert/spin_core.hpp"

namespace spincert {

// Independent per-qubit error rates. dephasing_rate is the probability that
// a qubit fully decoheres (its off-diagonal elements shrink by 1-p); a
// phase-flip channel with flip probability q is the same map at p = 2q.
struct NoiseModel {
  double dephasing_rate = 0.0;
  double bitflip_rate = 0.0;

  bool is_ideal() const { return dephasing_rate == 0.0 && bitflip_rate == 0.0; }
};

void validate_noise(const NoiseModel& model);

// Applies, per qubit, the dephasing channel
//   rho -> (1-p) rho + p (P0 rho P0 + P1 rho P1)
// followed by the bit-flip channel
//   rho -> (1-pb) rho + pb X rho X.
// Output is dense (i.i.d. noise leaves the maximal-spin sector); symmetric
// inputs are converted first, so the dense cap applies. Rates of zero
// return the input unchanged.
QubitEnsembleState apply_noise(const QubitEnsembleState& state, const NoiseModel& model,
                               const Numerics& num = default_numerics());

// Binomial-sum model of xi for a dephased |N/2, 0> state: with probability
// C(N,i) p^i (1-p)^{N-i}, i qubits decohere, contributing i/2 to the
// transverse moments while the coherent rest contributes
// (N-i)(N-i+2)/4 - i/4. Closed form: N(1-p)^2 + 1 - p^2.
double xi_dephasing_estimate(int n_qubits, double p);

// Variant linear in (1-p): N(1-p) + 1 - p^2. Kept alongside the sum model
// because the two disagree for p > 0 (the sum is quadratic in 1-p); the
// comparison reports track both against exact simulation.
double xi_dephasing_estimate_linear(int n_qubits, double p);

// Large-N bit-flip model: xi ~ 1/[4 p (1-p)] - 1, valid when
// N p (1-p) >> 1/4. Throws for p in {0,1}; use exact simulation there.
double xi_bitflip_estimate(int n_qubits, double p_b);

}  // namespace spincert
