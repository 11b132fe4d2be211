#pragma once

#include <optional>
#include <vector>

#include "spincert/spin_core.hpp"

namespace spincert {

// Normalized transverse-moment excess:
//   xi = (<Jx^2> + <Jy^2>) / (N (1/4 + Var Jz)) - 1.
// xi > m certifies genuine m-qubit entanglement (the weaker criterion);
// xi > partition_bound(N, m, chi) is the sharper one.
double xi(const MomentSet& moments);

// alpha = sqrt[(<Jz^4> - <Jz>^4) / (<Jz^4> - <Jz^2>^2)], or nullopt when
// the denominator vanishes (sharp-Jz states). The chi correction carries
// the same vanishing factor, so the degenerate case is well defined
// downstream.
std::optional<double> alpha(const MomentSet& moments, const Numerics& num = default_numerics());

// chi = <Jz^2> - (1/4 + Var Jz)^{-1} (<Jz^4> - <Jz^2>^2)(1 + 2 alpha),
// with the correction term zero when alpha is degenerate.
double chi(const MomentSet& moments, const Numerics& num = default_numerics());

// f(m, chi) = (4/N) max over divisions {m_i} of N with parts <= m-1 of
//   [sum_i m_i (m_i + 2) / 4 - chi / k] - 1,
// where k is the number of parts. For each part count k the inner maximum
// of sum m_i^2 sits at the extremal division (as many parts at cap as
// possible, remainder concentrated, rest 1); the outer maximum over k is
// taken explicitly, which also covers negative chi.
double partition_bound(int n_qubits, int m, double chi_value,
                       const Numerics& num = default_numerics());

enum class SimpleBoundKind {
  single_axis,     // cap on <Jx^2> alone: (1 + 4 Var Jz) m0 N / 4
  transverse_sum,  // cap on <Jx^2>+<Jy^2>: (1 + 4 Var Jz) N (m0 + 2) / 4
};

double simple_bound(int n_qubits, int m0, double jz_variance, SimpleBoundKind kind);

struct CriteriaResult {
  MomentSet inputs;
  double xi = 0.0;
  double chi = 0.0;
  std::optional<double> alpha;      // nullopt marks the degenerate case
  std::vector<double> bound_table;  // f(m, chi) for m = 2..N, index m-2
  int depth_criterion1 = 1;         // largest m <= N with xi > m
  int depth_criterion2 = 1;         // largest m <= N with xi > f(m, chi)
  int certified_depth = 1;          // == depth_criterion2

  double bound(int m) const { return bound_table.at(m - 2); }
};

// Full evaluation: xi, alpha, chi, the bound table for m = 2..N, and the
// certified depth under both criteria. The table is non-decreasing in m,
// so the depth search walks down from N with early exit.
CriteriaResult certify_depth(const MomentSet& moments, const Numerics& num = default_numerics());

}  // namespace spincert
