#include "spincert/states.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <numeric>

#include "spincert/detail/state_access.hpp"

namespace spincert {

using Eigen::Index;
using Eigen::MatrixXcd;
using Eigen::VectorXcd;
using cxd = std::complex<double>;

QubitEnsembleState make_dicke(int n_qubits, int jz_twice) {
  if (n_qubits < 1) throw input_error("n_qubits must be positive");
  if (std::abs(jz_twice) > n_qubits) {
    throw input_error("|jz_twice| must not exceed n_qubits");
  }
  if ((n_qubits - jz_twice) % 2 != 0) {
    throw input_error("jz_twice must have the same parity as n_qubits");
  }
  const int level = (n_qubits - jz_twice) / 2;  // number of down-spins
  VectorXcd ladder = VectorXcd::Zero(n_qubits + 1);
  ladder(level) = 1.0;
  return QubitEnsembleState::symmetric_pure(std::move(ladder));
}

QubitEnsembleState make_product(const std::vector<BlochAngles>& angles, const Numerics& num) {
  const int n = static_cast<int>(angles.size());
  if (n < 1) throw input_error("make_product needs at least one qubit");
  if (n > num.dense_cap) {
    throw size_error("product state of " + std::to_string(n) + " qubits exceeds dense cap " +
                     std::to_string(num.dense_cap));
  }
  std::vector<std::array<cxd, 2>> amp(n);
  for (int q = 0; q < n; ++q) {
    amp[q][0] = std::cos(0.5 * angles[q].theta);
    amp[q][1] = std::exp(cxd(0.0, angles[q].phi)) * std::sin(0.5 * angles[q].theta);
  }
  const Index dim = Index(1) << n;
  VectorXcd v(dim);
  for (Index a = 0; a < dim; ++a) {
    cxd value = 1.0;
    for (int q = 0; q < n; ++q) value *= amp[q][(a >> q) & 1];
    v(a) = value;
  }
  return QubitEnsembleState::dense_pure(n, v, num);
}

QubitEnsembleState make_superposition(
    const std::vector<std::pair<cxd, QubitEnsembleState>>& terms, const Numerics& num) {
  if (terms.empty()) throw input_error("superposition needs at least one component");
  const int n = terms.front().second.n_qubits();
  VectorXcd sum = VectorXcd::Zero(n + 1);
  for (const auto& [amplitude, component] : terms) {
    if (component.representation() != Representation::symmetric_pure) {
      throw input_error("superposition components must be symmetric_pure states");
    }
    if (component.n_qubits() != n) {
      throw input_error("superposition components must share one qubit count");
    }
    sum += amplitude * component.ladder();
  }
  const double norm = sum.norm();
  if (norm < num.physics_tol) throw input_error("superposition components cancel");
  sum /= norm;
  return StateAccess::make(n, Representation::symmetric_pure, std::move(sum), MatrixXcd());
}

QubitEnsembleState make_mixture(const std::vector<std::pair<double, QubitEnsembleState>>& parts,
                                const Numerics& num) {
  if (parts.empty()) throw input_error("mixture needs at least one component");
  double total = 0.0;
  for (const auto& [weight, component] : parts) {
    if (weight < 0.0) throw input_error("mixture weights must be non-negative");
    total += weight;
    if (component.n_qubits() != parts.front().second.n_qubits()) {
      throw input_error("mixture components must share one qubit count");
    }
  }
  if (std::abs(total - 1.0) > num.linalg_tol) {
    throw input_error("mixture weights must sum to 1 (got " + std::to_string(total) + ")");
  }
  const int n = parts.front().second.n_qubits();
  const bool all_symmetric =
      std::all_of(parts.begin(), parts.end(), [](const auto& part) {
        return part.second.representation() != Representation::dense_density_matrix;
      });
  if (all_symmetric) {
    MatrixXcd rho = MatrixXcd::Zero(n + 1, n + 1);
    for (const auto& [weight, component] : parts) {
      if (component.representation() == Representation::symmetric_pure) {
        rho += weight * (component.ladder() * component.ladder().adjoint());
      } else {
        rho += weight * component.matrix();
      }
    }
    return StateAccess::make(n, Representation::symmetric_mixed, VectorXcd(), std::move(rho));
  }
  const Index dim = Index(1) << n;
  MatrixXcd rho = MatrixXcd::Zero(dim, dim);
  for (const auto& [weight, component] : parts) {
    rho += weight *
           convert_representation(component, Representation::dense_density_matrix, num).matrix();
  }
  return StateAccess::make(n, Representation::dense_density_matrix, VectorXcd(), std::move(rho));
}

std::vector<int> sample_block_layout(int n, int cap, Rng& rng) {
  if (n < 1 || cap < 1) throw input_error("layout needs n >= 1 and cap >= 1");
  if (n > 62) throw size_error("composition counting overflows past n = 62");
  // counts[k] = number of compositions of k with parts in [1, cap].
  std::vector<std::uint64_t> counts(n + 1, 0);
  counts[0] = 1;
  for (int k = 1; k <= n; ++k) {
    for (int part = 1; part <= std::min(k, cap); ++part) counts[k] += counts[k - part];
  }
  std::vector<int> layout;
  int remaining = n;
  while (remaining > 0) {
    const std::uint64_t pick = rng.uniform_int(counts[remaining]);
    std::uint64_t cumulative = 0;
    for (int part = 1; part <= std::min(remaining, cap); ++part) {
      cumulative += counts[remaining - part];
      if (pick < cumulative) {
        layout.push_back(part);
        remaining -= part;
        break;
      }
    }
  }
  return layout;
}

Eigen::VectorXcd haar_random_pure(int dim, Rng& rng) {
  VectorXcd v(dim);
  for (int i = 0; i < dim; ++i) v(i) = rng.complex_normal();
  v /= v.norm();
  return v;
}

BiseparableSpec sample_biseparable_spec(int n_qubits, int block_cap, int n_components, Rng& rng) {
  if (block_cap < 1 || block_cap > n_qubits) {
    throw input_error("block_cap must lie in [1, n_qubits]");
  }
  if (n_components < 1) throw input_error("n_components must be positive");
  BiseparableSpec spec;
  spec.n_qubits = n_qubits;
  spec.weights.resize(n_components);
  double total = 0.0;
  for (double& w : spec.weights) {
    // Dirichlet(1,...,1) via normalized exponentials.
    double u = rng.uniform();
    while (u <= 0.0) u = rng.uniform();
    w = -std::log(u);
    total += w;
  }
  for (double& w : spec.weights) w /= total;
  spec.components.resize(n_components);
  for (auto& component : spec.components) {
    component.block_sizes = sample_block_layout(n_qubits, block_cap, rng);
    component.block_states.reserve(component.block_sizes.size());
    for (int size : component.block_sizes) {
      component.block_states.push_back(haar_random_pure(1 << size, rng));
    }
  }
  return spec;
}

QubitEnsembleState build_biseparable(const BiseparableSpec& spec, const Numerics& num) {
  const int n = spec.n_qubits;
  if (n < 1) throw input_error("spec has no qubits");
  if (n > num.dense_cap) {
    throw size_error("biseparable state of " + std::to_string(n) + " qubits exceeds dense cap " +
                     std::to_string(num.dense_cap));
  }
  const Index dim = Index(1) << n;
  MatrixXcd rho = MatrixXcd::Zero(dim, dim);
  for (std::size_t c = 0; c < spec.components.size(); ++c) {
    const BiseparableComponent& component = spec.components[c];
    const int total = std::accumulate(component.block_sizes.begin(), component.block_sizes.end(), 0);
    if (total != n) throw input_error("component block sizes must sum to n_qubits");
    VectorXcd v(dim);
    for (Index a = 0; a < dim; ++a) {
      cxd value = 1.0;
      int offset = 0;
      for (std::size_t b = 0; b < component.block_sizes.size(); ++b) {
        const int size = component.block_sizes[b];
        const Index sub = (a >> offset) & ((Index(1) << size) - 1);
        value *= component.block_states[b](sub);
        offset += size;
      }
      v(a) = value;
    }
    rho += spec.weights[c] * (v * v.adjoint());
  }
  return StateAccess::make(n, Representation::dense_density_matrix, VectorXcd(), std::move(rho));
}

QubitEnsembleState make_biseparable_random(int n_qubits, int block_cap, int n_components,
                                           std::uint64_t seed, const Numerics& num) {
  Rng rng(derive_stream(seed, 0));
  return build_biseparable(sample_biseparable_spec(n_qubits, block_cap, n_components, rng), num);
}

}  // namespace spincert
