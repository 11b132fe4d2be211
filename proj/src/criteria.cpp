#include "spincert/criteria.hpp"

#include <cmath>
#include <limits>

namespace spincert {

double xi(const MomentSet& m) {
  // Denominator >= N/4 > 0 always.
  return (m.jx2 + m.jy2) / (m.n_qubits * (0.25 + m.jz_variance())) - 1.0;
}

std::optional<double> alpha(const MomentSet& m, const Numerics& num) {
  const double denominator = m.jz2_variance();
  if (denominator < num.degenerate_tol) return std::nullopt;
  const double mean4 = std::pow(m.jz_mean, 4);
  const double numerator = m.jz4 - mean4;
  if (numerator < -num.positivity_tol) {
    throw numerics_error("<Jz^4> - <Jz>^4 is negative beyond tolerance: " +
                         std::to_string(numerator));
  }
  return std::sqrt(std::max(numerator, 0.0) / denominator);
}

double chi(const MomentSet& m, const Numerics& num) {
  const auto a = alpha(m, num);
  if (!a) return m.jz2;  // the correction carries the vanishing factor
  const double correction = m.jz2_variance() * (1.0 + 2.0 * *a) / (0.25 + m.jz_variance());
  return m.jz2 - correction;
}

namespace {

// Maximum of sum m_i^2 over divisions of n into exactly k parts in
// [1, cap]. Convexity puts the maximum on the extremal division: as many
// parts at cap as possible, the remainder concentrated in one part, the
// rest at 1.
long long max_sum_of_squares(int n, int k, int cap) {
  if (cap == 1) return n;  // all parts 1, k == n
  const int extra = n - k;
  const int full = extra / (cap - 1);
  if (full >= k) return static_cast<long long>(k) * cap * cap;  // n == k*cap
  const int middle = 1 + (extra - full * (cap - 1));
  return static_cast<long long>(full) * cap * cap + static_cast<long long>(middle) * middle +
         (k - full - 1);
}

}  // namespace

double partition_bound(int n_qubits, int m, double chi_value, const Numerics&) {
  if (n_qubits < 1) throw input_error("n_qubits must be positive");
  if (m < 2 || m > n_qubits + 1) {
    throw input_error("bound index m must lie in [2, N+1]");
  }
  const int cap = m - 1;
  const int k_min = (n_qubits + cap - 1) / cap;
  double best = -std::numeric_limits<double>::infinity();
  for (int k = k_min; k <= n_qubits; ++k) {
    const long long s2 = max_sum_of_squares(n_qubits, k, cap);
    const double inner = (static_cast<double>(s2) + 2.0 * n_qubits) * 0.25 - chi_value / k;
    if (inner > best) best = inner;
  }
  return 4.0 / n_qubits * best - 1.0;
}

double simple_bound(int n_qubits, int m0, double jz_variance, SimpleBoundKind kind) {
  if (n_qubits < 1) throw input_error("n_qubits must be positive");
  if (m0 < 1 || m0 > n_qubits) throw input_error("m0 must lie in [1, N]");
  const double prefactor = 1.0 + 4.0 * jz_variance;
  switch (kind) {
    case SimpleBoundKind::single_axis:
      return prefactor * m0 * n_qubits / 4.0;
    case SimpleBoundKind::transverse_sum:
      return prefactor * n_qubits * (m0 + 2) / 4.0;
  }
  throw input_error("unknown bound kind");
}

CriteriaResult certify_depth(const MomentSet& moments, const Numerics& num) {
  CriteriaResult result;
  result.inputs = moments;
  result.xi = xi(moments);
  result.alpha = alpha(moments, num);
  result.chi = chi(moments, num);

  const int n = moments.n_qubits;
  result.bound_table.reserve(n >= 2 ? n - 1 : 0);
  for (int m = 2; m <= n; ++m) {
    result.bound_table.push_back(partition_bound(n, m, result.chi, num));
  }

  result.depth_criterion2 = 1;
  for (int m = n; m >= 2; --m) {
    if (result.xi > result.bound(m)) {
      result.depth_criterion2 = m;
      break;  // table is non-decreasing in m
    }
  }
  result.depth_criterion1 = 1;
  for (int m = n; m >= 2; --m) {
    if (result.xi > static_cast<double>(m)) {
      result.depth_criterion1 = m;
      break;
    }
  }
  result.certified_depth = result.depth_criterion2;
  return result;
}

}  // namespace spincert
