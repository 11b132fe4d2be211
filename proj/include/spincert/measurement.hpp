#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "spincert/spin_core.hpp"

namespace spincert {

// Finite-shot tallies of collective-spin measurements. Outcomes are J_axis
// eigenvalues on the {-N/2, ..., N/2} grid (integer spacing, half-integer
// values for odd N).
struct MeasurementRecordSet {
  struct Entry {
    Axis axis = Axis::z;
    double outcome = 0.0;
    std::uint64_t count = 0;
  };
  std::vector<Entry> entries;
  int n_qubits = 0;
  std::string metadata;  // free-form provenance text, emitted as CSV comments
};

// Exact eigenvalue distribution of J_axis in the state. Measuring x or y
// rotates the state so the requested axis lands on z, then reads the
// Jz-level populations.
struct OutcomeDistribution {
  std::vector<double> outcomes;       // N/2 - r for r = 0..N
  std::vector<double> probabilities;  // clipped to >= 0, renormalized
};

OutcomeDistribution outcome_distribution(const QubitEnsembleState& state, Axis axis);

// `shots` independent draws from the exact distribution, deterministic per
// (state, axis, shots, seed); the axis gets its own derived RNG stream so
// per-axis sampling can run concurrently.
MeasurementRecordSet sample_shots(const QubitEnsembleState& state, Axis axis, std::uint64_t shots,
                                  std::uint64_t seed);

// All three axes with the stated shots per axis, merged into one record set.
MeasurementRecordSet sample_all_axes(const QubitEnsembleState& state, std::uint64_t shots_per_axis,
                                     std::uint64_t seed);

// Plug-in moment estimates with delta-method standard errors on the
// empirical moments; xi and chi errors are propagated to first order.
struct EstimatedMoments {
  MomentSet moments;
  double se_jx2 = 0.0;
  double se_jy2 = 0.0;
  double se_jz_mean = 0.0;
  double se_jz2 = 0.0;
  double se_jz4 = 0.0;
  double xi = 0.0;
  double se_xi = 0.0;
  double chi = 0.0;
  double se_chi = 0.0;
  std::uint64_t shots_x = 0;
  std::uint64_t shots_y = 0;
  std::uint64_t shots_z = 0;
};

EstimatedMoments estimate_moments(const MeasurementRecordSet& records,
                                  const Numerics& num = default_numerics());

// Multinomial bootstrap cross-check of the delta-method errors.
struct BootstrapErrors {
  double se_xi = 0.0;
  double se_chi = 0.0;
  int resamples = 0;
};

BootstrapErrors bootstrap_errors(const MeasurementRecordSet& records, int resamples,
                                 std::uint64_t seed, const Numerics& num = default_numerics());

// CSV wire format (UTF-8, LF): `#` comment lines carry metadata including
// `# n_qubits=<N>`, then the header `axis,outcome,count`, then one row per
// tally with the outcome printed as a decimal half-integer.
std::string to_csv(const MeasurementRecordSet& records);
void write_csv(const MeasurementRecordSet& records, const std::string& path);

// expected_n_qubits = 0 requires the file to declare its own qubit count;
// a nonzero value must match any declaration.
MeasurementRecordSet parse_csv(std::istream& in, int expected_n_qubits = 0);
MeasurementRecordSet ingest_csv(const std::string& path, int expected_n_qubits = 0);

}  // namespace spincert
