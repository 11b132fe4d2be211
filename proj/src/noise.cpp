#include "spincert/noise.hpp"

#include <bit>
#include <cmath>
#include <cstdint>
#include <vector>

#include "spincert/detail/state_access.hpp"

namespace spincert {

using Eigen::Index;
using Eigen::MatrixXcd;
using Eigen::VectorXcd;

void validate_noise(const NoiseModel& model) {
  if (model.dephasing_rate < 0.0 || model.dephasing_rate > 1.0 || model.bitflip_rate < 0.0 ||
      model.bitflip_rate > 1.0) {
    throw input_error("noise rates must lie in [0, 1]");
  }
}

QubitEnsembleState apply_noise(const QubitEnsembleState& state, const NoiseModel& model,
                               const Numerics& num) {
  validate_noise(model);
  if (model.is_ideal()) return state;

  const int n = state.n_qubits();
  MatrixXcd rho =
      convert_representation(state, Representation::dense_density_matrix, num).matrix();
  const Index dim = rho.rows();

  if (model.dephasing_rate > 0.0) {
    // Per-qubit dephasing composes into a factor (1-p)^d on each matrix
    // element, d the Hamming distance between its basis strings.
    std::vector<double> damp(n + 1, 1.0);
    for (int d = 1; d <= n; ++d) damp[d] = damp[d - 1] * (1.0 - model.dephasing_rate);
    for (Index b = 0; b < dim; ++b) {
      for (Index a = 0; a < dim; ++a) {
        rho(a, b) *= damp[std::popcount(static_cast<std::uint64_t>(a ^ b))];
      }
    }
  }

  if (model.bitflip_rate > 0.0) {
    const double keep = 1.0 - model.bitflip_rate;
    const double flip = model.bitflip_rate;
    for (int q = 0; q < n; ++q) {
      const Index mq = Index(1) << q;
      for (Index b = 0; b < dim; ++b) {
        for (Index a = 0; a < dim; ++a) {
          if (a & mq) continue;  // each orbit {(a,b), (a^mq, b^mq)} once
          const auto t0 = rho(a, b);
          const auto t1 = rho(a ^ mq, b ^ mq);
          rho(a, b) = keep * t0 + flip * t1;
          rho(a ^ mq, b ^ mq) = keep * t1 + flip * t0;
        }
      }
    }
  }

  return StateAccess::make(n, Representation::dense_density_matrix, VectorXcd(), std::move(rho));
}

double xi_dephasing_estimate(int n_qubits, double p) {
  if (n_qubits < 1) throw input_error("n_qubits must be positive");
  if (p < 0.0 || p > 1.0) throw input_error("dephasing rate must lie in [0, 1]");
  const double q = 1.0 - p;
  return n_qubits * q * q + 1.0 - p * p;
}

double xi_dephasing_estimate_linear(int n_qubits, double p) {
  if (n_qubits < 1) throw input_error("n_qubits must be positive");
  if (p < 0.0 || p > 1.0) throw input_error("dephasing rate must lie in [0, 1]");
  return n_qubits * (1.0 - p) + 1.0 - p * p;
}

double xi_bitflip_estimate(int n_qubits, double p_b) {
  if (n_qubits < 1) throw input_error("n_qubits must be positive");
  if (p_b <= 0.0 || p_b >= 1.0) {
    throw input_error("bit-flip estimate needs p_b strictly inside (0, 1); "
                      "use exact simulation at the endpoints");
  }
  return 1.0 / (4.0 * p_b * (1.0 - p_b)) - 1.0;
}

}  // namespace spincert
