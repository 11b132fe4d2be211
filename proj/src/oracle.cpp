#include "spincert/oracle.hpp"

#include <cmath>
#include <limits>

#include "spincert/criteria.hpp"
#include "spincert/parallel.hpp"

namespace spincert {

namespace {

struct TrialOutcome {
  double margin = -std::numeric_limits<double>::infinity();
  double xi_value = 0.0;
  double chi_value = 0.0;
  BiseparableSpec spec;
  bool reference = false;
};

ViolationSample to_sample(const TrialOutcome& outcome, std::uint64_t trial, bool optimized) {
  ViolationSample sample;
  sample.trial = trial;
  sample.margin = outcome.margin;
  sample.xi = outcome.xi_value;
  sample.chi = outcome.chi_value;
  sample.reference = outcome.reference;
  sample.optimized = optimized;
  for (const auto& component : outcome.spec.components) {
    sample.layouts.push_back(component.block_sizes);
  }
  sample.weights = outcome.spec.weights;
  return sample;
}

double margin_of(const MomentSet& moments, int bound_m, const Numerics& num, double* xi_out,
                 double* chi_out) {
  const double xi_value = xi(moments);
  const double chi_value = chi(moments, num);
  if (xi_out) *xi_out = xi_value;
  if (chi_out) *chi_out = chi_value;
  return xi_value - partition_bound(moments.n_qubits, bound_m, chi_value, num);
}

}  // namespace

ViolationReport bound_violation_search(int n_qubits, int block_cap, std::uint64_t trials,
                                       std::uint64_t seed, bool optimize, const Numerics& num) {
  if (block_cap < 1 || block_cap > n_qubits) {
    throw input_error("block_cap must lie in [1, n_qubits]");
  }
  if (trials < 1) throw input_error("trials must be positive");

  ViolationReport report;
  report.n_qubits = n_qubits;
  report.block_cap = block_cap;
  report.trials = trials;
  report.seed = seed;
  report.optimize = optimize;
  report.sanity_mode = (block_cap == n_qubits);
  report.bound_m = report.sanity_mode ? block_cap : block_cap + 1;

  std::vector<TrialOutcome> outcomes(trials);
  parallel_for(trials, [&](std::size_t t) {
    TrialOutcome& outcome = outcomes[t];
    if (report.sanity_mode && t == 0) {
      // Reference point: the detector must fire on the ideal Dicke state.
      const QubitEnsembleState dicke = make_dicke(n_qubits, n_qubits % 2);
      outcome.margin = margin_of(compute_moments(dicke), report.bound_m, num, &outcome.xi_value,
                                 &outcome.chi_value);
      outcome.reference = true;
      return;
    }
    Rng rng = Rng::stream(seed, t);
    const int n_components = 1 + static_cast<int>(rng.uniform_int(4));
    outcome.spec = sample_biseparable_spec(n_qubits, block_cap, n_components, rng);
    const MomentSet moments = compute_moments(build_biseparable(outcome.spec, num));
    outcome.margin =
        margin_of(moments, report.bound_m, num, &outcome.xi_value, &outcome.chi_value);
  });

  // Deterministic merge: max margin, ties toward the lower trial index.
  std::size_t best = 0;
  report.max_xi = -std::numeric_limits<double>::infinity();
  for (std::size_t t = 0; t < outcomes.size(); ++t) {
    if (outcomes[t].margin > outcomes[best].margin) best = t;
    if (outcomes[t].xi_value > report.max_xi) report.max_xi = outcomes[t].xi_value;
  }
  report.max_margin = outcomes[best].margin;
  report.worst = to_sample(outcomes[best], best, false);

  if (optimize) {
    // Hill-climb the block states of the best sampled construction.
    std::size_t start = best;
    if (outcomes[start].reference) {
      start = 1;
      for (std::size_t t = 1; t < outcomes.size(); ++t) {
        if (outcomes[t].margin > outcomes[start].margin) start = t;
      }
    }
    if (!outcomes[start].reference) {
      BiseparableSpec current = outcomes[start].spec;
      double current_margin = outcomes[start].margin;
      Rng rng = Rng::stream(seed, 0x0617'0000'0000'0000ULL + trials);
      double step = 0.4;
      int rejected = 0;
      for (int iter = 0; iter < 200; ++iter) {
        BiseparableSpec proposal = current;
        auto& component = proposal.components[rng.uniform_int(proposal.components.size())];
        auto& block = component.block_states[rng.uniform_int(component.block_states.size())];
        for (Eigen::Index i = 0; i < block.size(); ++i) block(i) += step * rng.complex_normal();
        block /= block.norm();
        const MomentSet moments = compute_moments(build_biseparable(proposal, num));
        double xi_value = 0.0, chi_value = 0.0;
        const double margin = margin_of(moments, report.bound_m, num, &xi_value, &chi_value);
        if (margin > current_margin) {
          current = std::move(proposal);
          current_margin = margin;
          rejected = 0;
          if (xi_value > report.max_xi) report.max_xi = xi_value;
          if (margin > report.max_margin) {
            report.max_margin = margin;
            TrialOutcome improved;
            improved.margin = margin;
            improved.xi_value = xi_value;
            improved.chi_value = chi_value;
            improved.spec = current;
            report.worst = to_sample(improved, start, true);
          }
        } else if (++rejected % 25 == 0) {
          step *= 0.5;
        }
      }
    }
  }

  report.violation = !report.sanity_mode && report.max_margin > num.margin_tol;
  return report;
}

std::vector<EstimateComparisonRow> estimate_vs_exact(int n_qubits,
                                                     const std::vector<NoiseModel>& grid,
                                                     const Numerics& num) {
  if (n_qubits < 2 || n_qubits % 2 != 0) {
    throw input_error("estimate_vs_exact compares on the |N/2, 0> state; n_qubits must be even");
  }
  const QubitEnsembleState dicke = make_dicke(n_qubits, 0);
  std::vector<EstimateComparisonRow> rows(grid.size());
  parallel_for(grid.size(), [&](std::size_t i) {
    const NoiseModel& model = grid[i];
    validate_noise(model);
    EstimateComparisonRow& row = rows[i];
    row.n_qubits = n_qubits;
    row.dephasing_rate = model.dephasing_rate;
    row.bitflip_rate = model.bitflip_rate;

    const MomentSet moments = compute_moments(apply_noise(dicke, model, num));
    row.xi_exact = xi(moments);
    row.jz_variance_exact = moments.jz_variance();

    const double nan = std::numeric_limits<double>::quiet_NaN();
    const bool pure_dephasing = model.bitflip_rate == 0.0;
    const bool pure_bitflip =
        model.dephasing_rate == 0.0 && model.bitflip_rate > 0.0 && model.bitflip_rate < 1.0;
    row.xi_dephasing_sum =
        pure_dephasing ? xi_dephasing_estimate(n_qubits, model.dephasing_rate) : nan;
    row.xi_dephasing_linear =
        pure_dephasing ? xi_dephasing_estimate_linear(n_qubits, model.dephasing_rate) : nan;
    row.xi_bitflip = pure_bitflip ? xi_bitflip_estimate(n_qubits, model.bitflip_rate) : nan;

    double applicable = nan;
    if (pure_dephasing) {
      applicable = row.xi_dephasing_sum;
    } else if (pure_bitflip) {
      applicable = row.xi_bitflip;
      row.note = "large-N model: valid when N p (1-p) >> 1/4";
    }
    row.abs_deviation = std::abs(row.xi_exact - applicable);
    row.rel_deviation =
        row.abs_deviation / std::max(std::abs(row.xi_exact), std::numeric_limits<double>::min());
    if (pure_dephasing && model.dephasing_rate > 0.0) {
      row.note = "binomial-sum model sits p^2 below the exact channel";
      if (model.dephasing_rate == 1.0) {
        row.note += "; fully dephased: exact xi = 1, sum model gives 0";
      }
    }
  });
  return rows;
}

namespace {

void enumerate_partitions(int remaining, int max_part, std::vector<int>& stack, double chi_value,
                          PartitionMax& best) {
  if (remaining == 0) {
    long long weighted = 0;
    for (int part : stack) weighted += static_cast<long long>(part) * (part + 2);
    const double value =
        static_cast<double>(weighted) * 0.25 - chi_value / static_cast<double>(stack.size());
    if (value > best.value || best.parts.empty()) {
      best.value = value;
      best.parts = stack;
    }
    return;
  }
  for (int part = std::min(remaining, max_part); part >= 1; --part) {
    stack.push_back(part);
    enumerate_partitions(remaining - part, part, stack, chi_value, best);
    stack.pop_back();
  }
}

}  // namespace

PartitionMax partition_bruteforce(int n_qubits, int m, double chi_value, const Numerics&) {
  if (n_qubits < 1) throw input_error("n_qubits must be positive");
  if (n_qubits > 14) {
    throw size_error("partition enumeration is limited to n_qubits <= 14");
  }
  if (m < 2 || m > n_qubits + 1) throw input_error("bound index m must lie in [2, N+1]");
  PartitionMax best;
  best.value = -std::numeric_limits<double>::infinity();
  std::vector<int> stack;
  enumerate_partitions(n_qubits, m - 1, stack, chi_value, best);
  return best;
}

}  // namespace spincert
