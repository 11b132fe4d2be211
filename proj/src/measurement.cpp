#include "spincert/measurement.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include "spincert/criteria.hpp"
#include "spincert/rng.hpp"

namespace spincert {

using Eigen::Index;

namespace {

constexpr std::uint64_t kAxisStream[3] = {1, 2, 3};

int axis_slot(Axis axis) { return axis == Axis::x ? 0 : (axis == Axis::y ? 1 : 2); }

// Measuring J_axis == rotating the state so that axis lands on +Jz, then
// reading the Jz-level populations.
QubitEnsembleState aligned_to_z(const QubitEnsembleState& state, Axis axis) {
  switch (axis) {
    case Axis::z: return state;
    case Axis::x: return rotate_collective(state, Axis::y, -M_PI / 2.0);
    case Axis::y: return rotate_collective(state, Axis::x, M_PI / 2.0);
  }
  throw input_error("unknown axis");
}

std::vector<double> jz_level_populations(const QubitEnsembleState& state) {
  const int n = state.n_qubits();
  std::vector<double> population(n + 1, 0.0);
  switch (state.representation()) {
    case Representation::symmetric_pure: {
      const auto& psi = state.ladder();
      for (int r = 0; r <= n; ++r) population[r] = std::norm(psi(r));
      break;
    }
    case Representation::symmetric_mixed: {
      const auto& rho = state.matrix();
      for (int r = 0; r <= n; ++r) population[r] = std::real(rho(r, r));
      break;
    }
    case Representation::dense_density_matrix: {
      const auto& rho = state.matrix();
      for (Index a = 0; a < rho.rows(); ++a) {
        population[std::popcount(static_cast<std::uint64_t>(a))] += std::real(rho(a, a));
      }
      break;
    }
  }
  return population;
}

// line > 0 marks file ingestion (validation_error); 0 marks in-memory data.
void check_outcome_grid(double outcome, int n, long line) {
  const double shifted = outcome + 0.5 * n;  // ladder index, must be integral
  const double rounded = std::round(shifted);
  if (std::abs(shifted - rounded) > 1e-9 || rounded < -0.5 || rounded > n + 0.5) {
    const std::string message = "outcome " + std::to_string(outcome) +
                                " is not a J_z eigenvalue for n_qubits=" + std::to_string(n);
    if (line > 0) throw validation_error(message, line);
    throw input_error(message);
  }
}

std::string format_outcome(double outcome) {
  char buffer[32];
  if (outcome == std::round(outcome)) {
    std::snprintf(buffer, sizeof(buffer), "%lld", static_cast<long long>(std::llround(outcome)));
  } else {
    std::snprintf(buffer, sizeof(buffer), "%.1f", outcome);
  }
  return buffer;
}

struct AxisTally {
  std::vector<double> outcomes;
  std::vector<double> weights;  // normalized frequencies
  std::uint64_t total = 0;

  // mean of outcome^power under the empirical distribution
  double moment(int power) const {
    double value = 0.0;
    for (std::size_t i = 0; i < outcomes.size(); ++i) {
      value += weights[i] * std::pow(outcomes[i], power);
    }
    return value;
  }
};

std::array<AxisTally, 3> tally_by_axis(const MeasurementRecordSet& records, const Numerics&) {
  if (records.n_qubits < 1) throw input_error("record set has no qubit count");
  std::array<std::map<double, std::uint64_t>, 3> maps;
  for (const auto& entry : records.entries) {
    check_outcome_grid(entry.outcome, records.n_qubits, 0);
    maps[axis_slot(entry.axis)][entry.outcome] += entry.count;
  }
  std::array<AxisTally, 3> tallies;
  for (int s = 0; s < 3; ++s) {
    for (const auto& [outcome, count] : maps[s]) {
      tallies[s].outcomes.push_back(outcome);
      tallies[s].weights.push_back(static_cast<double>(count));
      tallies[s].total += count;
    }
    for (double& w : tallies[s].weights) {
      if (tallies[s].total > 0) w /= static_cast<double>(tallies[s].total);
    }
  }
  return tallies;
}

struct PointEstimates {
  MomentSet moments;
  double xi = 0.0;
  double chi = 0.0;
};

PointEstimates point_estimates(const std::array<AxisTally, 3>& tallies, int n_qubits,
                               const Numerics& num) {
  PointEstimates est;
  est.moments.n_qubits = n_qubits;
  est.moments.jx2 = tallies[0].moment(2);
  est.moments.jy2 = tallies[1].moment(2);
  est.moments.jz_mean = tallies[2].moment(1);
  est.moments.jz2 = tallies[2].moment(2);
  est.moments.jz4 = tallies[2].moment(4);
  est.xi = xi(est.moments);
  est.chi = chi(est.moments, num);
  return est;
}

}  // namespace

OutcomeDistribution outcome_distribution(const QubitEnsembleState& state, Axis axis) {
  const int n = state.n_qubits();
  const QubitEnsembleState aligned = aligned_to_z(state, axis);
  std::vector<double> population = jz_level_populations(aligned);
  double total = 0.0;
  for (double& p : population) {
    if (p < 0.0) p = 0.0;  // clip eigensolver / roundoff dust
    total += p;
  }
  OutcomeDistribution dist;
  dist.outcomes.resize(n + 1);
  dist.probabilities.resize(n + 1);
  for (int r = 0; r <= n; ++r) {
    dist.outcomes[r] = 0.5 * n - r;
    dist.probabilities[r] = population[r] / total;
  }
  return dist;
}

MeasurementRecordSet sample_shots(const QubitEnsembleState& state, Axis axis, std::uint64_t shots,
                                  std::uint64_t seed) {
  if (shots < 1) throw input_error("shots must be positive");
  const OutcomeDistribution dist = outcome_distribution(state, axis);
  std::vector<double> cdf(dist.probabilities.size());
  double running = 0.0;
  for (std::size_t i = 0; i < cdf.size(); ++i) {
    running += dist.probabilities[i];
    cdf[i] = running;
  }
  cdf.back() = 1.0;

  Rng rng = Rng::stream(seed, kAxisStream[axis_slot(axis)]);
  std::vector<std::uint64_t> counts(dist.outcomes.size(), 0);
  for (std::uint64_t s = 0; s < shots; ++s) {
    const double u = rng.uniform();
    const auto it = std::lower_bound(cdf.begin(), cdf.end(), u);
    ++counts[static_cast<std::size_t>(it - cdf.begin())];
  }

  MeasurementRecordSet records;
  records.n_qubits = state.n_qubits();
  std::ostringstream meta;
  meta << "axis=" << axis_name(axis) << " shots=" << shots << " seed=" << seed
       << " generator=" << kGeneratorId;
  records.metadata = meta.str();
  for (std::size_t i = 0; i < counts.size(); ++i) {
    if (counts[i] == 0) continue;
    records.entries.push_back({axis, dist.outcomes[i], counts[i]});
  }
  return records;
}

MeasurementRecordSet sample_all_axes(const QubitEnsembleState& state, std::uint64_t shots_per_axis,
                                     std::uint64_t seed) {
  MeasurementRecordSet merged;
  merged.n_qubits = state.n_qubits();
  std::ostringstream meta;
  meta << "shots_per_axis=" << shots_per_axis << " seed=" << seed
       << " generator=" << kGeneratorId;
  merged.metadata = meta.str();
  for (Axis axis : {Axis::x, Axis::y, Axis::z}) {
    MeasurementRecordSet part = sample_shots(state, axis, shots_per_axis, seed);
    merged.entries.insert(merged.entries.end(), part.entries.begin(), part.entries.end());
  }
  return merged;
}

EstimatedMoments estimate_moments(const MeasurementRecordSet& records, const Numerics& num) {
  const auto tallies = tally_by_axis(records, num);
  for (int s = 0; s < 3; ++s) {
    if (tallies[s].total == 0) {
      const char* names[3] = {"x", "y", "z"};
      throw input_error(std::string("no measurement records for axis ") + names[s]);
    }
  }
  const auto est = point_estimates(tallies, records.n_qubits, num);

  EstimatedMoments out;
  out.moments = est.moments;
  out.xi = est.xi;
  out.chi = est.chi;
  out.shots_x = tallies[0].total;
  out.shots_y = tallies[1].total;
  out.shots_z = tallies[2].total;

  const double sx = static_cast<double>(tallies[0].total);
  const double sy = static_cast<double>(tallies[1].total);
  const double sz = static_cast<double>(tallies[2].total);

  // Plug-in variance of an empirical mean of o^k: (m_{2k} - m_k^2) / S.
  const double var_jx2 = std::max(tallies[0].moment(4) - std::pow(out.moments.jx2, 2), 0.0) / sx;
  const double var_jy2 = std::max(tallies[1].moment(4) - std::pow(out.moments.jy2, 2), 0.0) / sy;
  std::array<double, 9> mz{};
  for (int k = 0; k <= 8; ++k) mz[k] = tallies[2].moment(k);
  const double var_m1 = std::max(mz[2] - mz[1] * mz[1], 0.0) / sz;
  const double var_m2 = std::max(mz[4] - mz[2] * mz[2], 0.0) / sz;
  const double var_m4 = std::max(mz[8] - mz[4] * mz[4], 0.0) / sz;
  const double cov_m1_m2 = (mz[3] - mz[1] * mz[2]) / sz;
  const double cov_m1_m4 = (mz[5] - mz[1] * mz[4]) / sz;
  const double cov_m2_m4 = (mz[6] - mz[2] * mz[4]) / sz;

  out.se_jx2 = std::sqrt(var_jx2);
  out.se_jy2 = std::sqrt(var_jy2);
  out.se_jz_mean = std::sqrt(var_m1);
  out.se_jz2 = std::sqrt(var_m2);
  out.se_jz4 = std::sqrt(var_m4);

  // Var Jz estimate and its delta-method variance.
  const double v = out.moments.jz_variance();
  const double dv_dm1 = -2.0 * mz[1];
  const double var_v = std::max(
      dv_dm1 * dv_dm1 * var_m1 + var_m2 + 2.0 * dv_dm1 * cov_m1_m2, 0.0);

  const double transverse = out.moments.jx2 + out.moments.jy2;
  const double denom = records.n_qubits * (0.25 + v);
  const double dxi_dv = -transverse / (records.n_qubits * std::pow(0.25 + v, 2));
  out.se_xi =
      std::sqrt((var_jx2 + var_jy2) / (denom * denom) + dxi_dv * dxi_dv * var_v);

  // chi depends on the z moments (m1, m2, m4); propagate with a central
  // finite-difference gradient against their empirical covariance.
  if (out.moments.jz2_variance() < num.degenerate_tol) {
    out.se_chi = out.se_jz2;  // degenerate branch: chi == jz2
  } else {
    auto chi_of = [&](double m1, double m2, double m4) {
      MomentSet ms = out.moments;
      ms.jz_mean = m1;
      ms.jz2 = m2;
      ms.jz4 = m4;
      return chi(ms, num);
    };
    const std::array<double, 3> center{mz[1], mz[2], mz[4]};
    std::array<double, 3> grad{};
    for (int i = 0; i < 3; ++i) {
      const double h = 1e-6 * std::max(std::abs(center[i]), 1.0);
      std::array<double, 3> hi = center, lo = center;
      hi[i] += h;
      lo[i] -= h;
      grad[i] = (chi_of(hi[0], hi[1], hi[2]) - chi_of(lo[0], lo[1], lo[2])) / (2.0 * h);
    }
    const double cov[3][3] = {{var_m1, cov_m1_m2, cov_m1_m4},
                              {cov_m1_m2, var_m2, cov_m2_m4},
                              {cov_m1_m4, cov_m2_m4, var_m4}};
    double quad = 0.0;
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) quad += grad[i] * cov[i][j] * grad[j];
    }
    out.se_chi = std::sqrt(std::max(quad, 0.0));
  }
  return out;
}

BootstrapErrors bootstrap_errors(const MeasurementRecordSet& records, int resamples,
                                 std::uint64_t seed, const Numerics& num) {
  if (resamples < 2) throw input_error("bootstrap needs at least 2 resamples");
  const auto base = tally_by_axis(records, num);
  for (int s = 0; s < 3; ++s) {
    if (base[s].total == 0) throw input_error("bootstrap needs records on all three axes");
  }
  std::vector<double> xis(resamples), chis(resamples);
  for (int r = 0; r < resamples; ++r) {
    std::array<AxisTally, 3> resampled;
    for (int s = 0; s < 3; ++s) {
      std::vector<double> cdf(base[s].weights.size());
      double running = 0.0;
      for (std::size_t i = 0; i < cdf.size(); ++i) {
        running += base[s].weights[i];
        cdf[i] = running;
      }
      cdf.back() = 1.0;
      Rng rng = Rng::stream(seed, 0x1000 + 3 * static_cast<std::uint64_t>(r) + s);
      std::vector<std::uint64_t> counts(cdf.size(), 0);
      for (std::uint64_t shot = 0; shot < base[s].total; ++shot) {
        const double u = rng.uniform();
        ++counts[static_cast<std::size_t>(
            std::lower_bound(cdf.begin(), cdf.end(), u) - cdf.begin())];
      }
      resampled[s].outcomes = base[s].outcomes;
      resampled[s].total = base[s].total;
      resampled[s].weights.resize(counts.size());
      for (std::size_t i = 0; i < counts.size(); ++i) {
        resampled[s].weights[i] = static_cast<double>(counts[i]) / static_cast<double>(base[s].total);
      }
    }
    const auto est = point_estimates(resampled, records.n_qubits, num);
    xis[r] = est.xi;
    chis[r] = est.chi;
  }
  auto stddev = [](const std::vector<double>& values) {
    double mean = 0.0;
    for (double v : values) mean += v;
    mean /= static_cast<double>(values.size());
    double var = 0.0;
    for (double v : values) var += (v - mean) * (v - mean);
    return std::sqrt(var / static_cast<double>(values.size()));
  };
  return {stddev(xis), stddev(chis), resamples};
}

std::string to_csv(const MeasurementRecordSet& records) {
  std::ostringstream out;
  out << "# n_qubits=" << records.n_qubits << "\n";
  if (!records.metadata.empty()) {
    std::istringstream lines(records.metadata);
    std::string line;
    while (std::getline(lines, line)) out << "# " << line << "\n";
  }
  out << "axis,outcome,count\n";
  for (const auto& entry : records.entries) {
    out << axis_name(entry.axis) << "," << format_outcome(entry.outcome) << "," << entry.count
        << "\n";
  }
  return out.str();
}

void write_csv(const MeasurementRecordSet& records, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw input_error("cannot open '" + path + "' for writing");
  out << to_csv(records);
}

MeasurementRecordSet parse_csv(std::istream& in, int expected_n_qubits) {
  MeasurementRecordSet records;
  std::string metadata;
  int declared_n = 0;
  long declaration_line = 0;
  bool header_seen = false;
  struct PendingRow {
    Axis axis;
    double outcome;
    std::uint64_t count;
    long line;
  };
  std::vector<PendingRow> rows;

  std::string line;
  long line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line[0] == '#') {
      std::string body = line.substr(1);
      if (!body.empty() && body.front() == ' ') body.erase(body.begin());
      if (body.rfind("n_qubits=", 0) == 0) {
        // Structural declaration, not free-form metadata.
        try {
          declared_n = std::stoi(body.substr(9));
          declaration_line = line_number;
        } catch (const std::exception&) {
          throw parse_error("unreadable n_qubits declaration", line_number);
        }
        continue;
      }
      if (!metadata.empty()) metadata += "\n";
      metadata += body;
      continue;
    }
    if (!header_seen) {
      if (line != "axis,outcome,count") {
        throw parse_error("expected header 'axis,outcome,count', got '" + line + "'", line_number);
      }
      header_seen = true;
      continue;
    }
    const auto first = line.find(',');
    const auto second = line.find(',', first == std::string::npos ? first : first + 1);
    if (first == std::string::npos || second == std::string::npos ||
        line.find(',', second + 1) != std::string::npos) {
      throw parse_error("expected 3 comma-separated fields", line_number);
    }
    const std::string axis_field = line.substr(0, first);
    const std::string outcome_field = line.substr(first + 1, second - first - 1);
    const std::string count_field = line.substr(second + 1);
    Axis axis;
    try {
      axis = axis_from_name(axis_field);
    } catch (const input_error& e) {
      throw parse_error(e.what(), line_number);
    }
    double outcome = 0.0;
    std::size_t used = 0;
    try {
      outcome = std::stod(outcome_field, &used);
    } catch (const std::exception&) {
      throw parse_error("unreadable outcome '" + outcome_field + "'", line_number);
    }
    if (used != outcome_field.size()) {
      throw parse_error("trailing characters in outcome '" + outcome_field + "'", line_number);
    }
    if (count_field.empty() ||
        count_field.find_first_not_of("0123456789") != std::string::npos) {
      throw parse_error("count must be a non-negative integer, got '" + count_field + "'",
                        line_number);
    }
    rows.push_back({axis, outcome, std::stoull(count_field), line_number});
  }
  if (!header_seen) throw parse_error("missing header 'axis,outcome,count'", line_number + 1);

  if (declared_n > 0 && expected_n_qubits > 0 && declared_n != expected_n_qubits) {
    throw validation_error("file declares n_qubits=" + std::to_string(declared_n) +
                               " but " + std::to_string(expected_n_qubits) + " was requested",
                           declaration_line);
  }
  const int n = declared_n > 0 ? declared_n : expected_n_qubits;
  if (n < 1) {
    throw parse_error("no '# n_qubits=<N>' declaration and no qubit count supplied", line_number + 1);
  }
  records.n_qubits = n;
  records.metadata = metadata;
  for (const auto& row : rows) {
    check_outcome_grid(row.outcome, n, row.line);
    records.entries.push_back({row.axis, row.outcome, row.count});
  }
  return records;
}

MeasurementRecordSet ingest_csv(const std::string& path, int expected_n_qubits) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw input_error("cannot open '" + path + "' for reading");
  return parse_csv(in, expected_n_qubits);
}

}  // namespace spincert
