#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "spincert/noise.hpp"
#include "spincert/states.hpp"

namespace spincert {

// One sampled (or optimized) point of a bound-violation search.
struct ViolationSample {
  std::uint64_t trial = 0;
  double margin = 0.0;  // xi - f(bound_m, chi)
  double xi = 0.0;
  double chi = 0.0;
  std::vector<std::vector<int>> layouts;  // block sizes per component
  std::vector<double> weights;
  bool reference = false;  // sanity-mode Dicke reference, not a sampled state
  bool optimized = false;
};

struct ViolationReport {
  int n_qubits = 0;
  int block_cap = 0;
  int bound_m = 0;  // bound index checked: block_cap + 1, or block_cap when sanity
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
  bool optimize = false;
  bool sanity_mode = false;  // block_cap == n_qubits: positive margins expected
  double max_margin = 0.0;
  double max_xi = 0.0;
  ViolationSample worst;
  bool violation = false;  // max_margin > margin_tol outside sanity mode
};

// Samples `trials` seeded block-product mixtures with blocks of at most
// block_cap qubits, computes xi - f(block_cap+1, chi) for each, and keeps
// the maximum margin (ties resolved toward the lower trial index). With
// optimize set, hill-climbs the block states of the best sample
// (derivative-free coordinate perturbation, shrinking step). A positive
// margin beyond tolerance is a bound violation.
//
// block_cap == n_qubits flips the search into sanity mode: blocks are
// unconstrained, the margin is taken against f(block_cap, chi), trial 0 is
// the ideal |N/2, .> Dicke reference, and positive margins confirm the
// detector fires rather than flag a violation.
ViolationReport bound_violation_search(int n_qubits, int block_cap, std::uint64_t trials,
                                       std::uint64_t seed, bool optimize,
                                       const Numerics& num = default_numerics());

// Exact noisy-Dicke pipeline value of xi next to the analytic models.
struct EstimateComparisonRow {
  int n_qubits = 0;
  double dephasing_rate = 0.0;
  double bitflip_rate = 0.0;
  double xi_exact = 0.0;
  double jz_variance_exact = 0.0;
  double xi_dephasing_sum = 0.0;     // NaN when a bit-flip rate is active
  double xi_dephasing_linear = 0.0;  // NaN when a bit-flip rate is active
  double xi_bitflip = 0.0;           // NaN unless pure bit-flip with p_b in (0,1)
  double abs_deviation = 0.0;        // exact vs the applicable model (NaN if none)
  double rel_deviation = 0.0;
  std::string note;
};

// Applies each noise model to the Dicke |N/2, 0> state (n_qubits must be
// even) and tabulates exact xi against the analytic estimates.
std::vector<EstimateComparisonRow> estimate_vs_exact(int n_qubits,
                                                     const std::vector<NoiseModel>& grid,
                                                     const Numerics& num = default_numerics());

// Exhaustive maximum of sum m_i (m_i + 2) / 4 - chi / k over all integer
// partitions of N with parts <= m-1. Enumeration over partitions (not
// compositions): the objective is symmetric under part reordering.
struct PartitionMax {
  double value = 0.0;
  std::vector<int> parts;  // an argmax partition, non-increasing
};

PartitionMax partition_bruteforce(int n_qubits, int m, double chi_value,
                                  const Numerics& num = default_numerics());

}  // namespace spincert
