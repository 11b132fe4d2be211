#include "spincert/app/commands.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "spincert/app/report.hpp"
#include "spincert/oracle.hpp"
#include "spincert/parallel.hpp"

namespace spincert::app {

using nlohmann::ordered_json;

namespace {

std::string format_double(double value) {
  if (std::isnan(value)) return "";
  char buffer[40];
  std::snprintf(buffer, sizeof(buffer), "%.12g", value);
  return buffer;
}

ordered_json estimate_errors_to_json(const EstimatedMoments& est) {
  ordered_json j;
  j["jx2"] = est.se_jx2;
  j["jy2"] = est.se_jy2;
  j["jz_mean"] = est.se_jz_mean;
  j["jz2"] = est.se_jz2;
  j["jz4"] = est.se_jz4;
  j["xi"] = est.se_xi;
  j["chi"] = est.se_chi;
  return j;
}

ordered_json violation_report_to_json(const ViolationReport& report) {
  ordered_json j;
  j["n_qubits"] = report.n_qubits;
  j["block_cap"] = report.block_cap;
  j["bound_m"] = report.bound_m;
  j["trials"] = report.trials;
  j["seed"] = report.seed;
  j["optimize"] = report.optimize;
  j["sanity_mode"] = report.sanity_mode;
  j["max_margin"] = report.max_margin;
  j["max_xi"] = report.max_xi;
  j["violation"] = report.violation;
  ordered_json worst;
  worst["trial"] = report.worst.trial;
  worst["margin"] = report.worst.margin;
  worst["xi"] = report.worst.xi;
  worst["chi"] = report.worst.chi;
  worst["reference"] = report.worst.reference;
  worst["optimized"] = report.worst.optimized;
  worst["layouts"] = report.worst.layouts;
  worst["weights"] = report.worst.weights;
  j["worst"] = std::move(worst);
  return j;
}

}  // namespace

CommandResult cmd_certify(const RunConfig& config) {
  const Numerics num = numerics_for(config);
  QubitEnsembleState state = build_state(config.state, config.seed, num);
  if (!config.noise.is_ideal()) {
    state = apply_noise(state, config.noise, num);
  }

  ordered_json report;
  report["report"] = "certificate";
  report["tool"] = tool_info();
  report["config"] = config_to_json(config);
  report["n_qubits"] = state.n_qubits();
  report["representation"] = representation_name(state.representation());

  CriteriaResult criteria;
  if (config.shots == 0) {
    const MomentSet moments = compute_moments(state);
    validate_moments(moments, num);
    criteria = certify_depth(moments, num);
    report["moments_kind"] = "exact";
    report["moments"] = moments_to_json(moments);
  } else {
    const MeasurementRecordSet records = sample_all_axes(state, config.shots, config.seed);
    const EstimatedMoments est = estimate_moments(records, num);
    criteria = certify_depth(est.moments, num);
    report["moments_kind"] = "estimated";
    report["moments"] = moments_to_json(est.moments);
    report["std_errors"] = estimate_errors_to_json(est);
    if (config.bootstrap) {
      const BootstrapErrors boot = bootstrap_errors(records, 1000, config.seed, num);
      ordered_json b;
      b["resamples"] = boot.resamples;
      b["xi"] = boot.se_xi;
      b["chi"] = boot.se_chi;
      report["bootstrap_errors"] = std::move(b);
    }
    report["note"] =
        "depth certified on point estimates; standard errors are reported, not folded in";
  }
  report["criteria"] = criteria_to_json(criteria);

  CommandResult result;
  result.report = std::move(report);
  result.rendered = render_report(result.report, config.format);
  return result;
}

CommandResult cmd_certify_data(const RunConfig& config, const std::string& csv_path,
                               int n_qubits_hint) {
  const Numerics num = numerics_for(config);
  const MeasurementRecordSet records = ingest_csv(csv_path, n_qubits_hint);
  const EstimatedMoments est = estimate_moments(records, num);
  const CriteriaResult criteria = certify_depth(est.moments, num);

  ordered_json report;
  report["report"] = "certificate";
  report["tool"] = tool_info();
  report["config"] = config_to_json(config);
  report["data"] = {{"path", csv_path},
                    {"metadata", records.n_qubits > 0 ? records.metadata : ""},
                    {"shots", {{"x", est.shots_x}, {"y", est.shots_y}, {"z", est.shots_z}}}};
  report["n_qubits"] = records.n_qubits;
  report["moments_kind"] = "estimated";
  report["moments"] = moments_to_json(est.moments);
  report["std_errors"] = estimate_errors_to_json(est);
  if (config.bootstrap) {
    const BootstrapErrors boot = bootstrap_errors(records, 1000, config.seed, num);
    ordered_json b;
    b["resamples"] = boot.resamples;
    b["xi"] = boot.se_xi;
    b["chi"] = boot.se_chi;
    report["bootstrap_errors"] = std::move(b);
  }
  report["note"] =
      "depth certified on point estimates; standard errors are reported, not folded in";
  report["criteria"] = criteria_to_json(criteria);

  CommandResult result;
  result.report = std::move(report);
  result.rendered = render_report(result.report, config.format);
  return result;
}

CommandResult cmd_sweep(const RunConfig& config) {
  if (!config.sweep) throw config_error("sweep command needs a 'sweep' config block");
  const SweepSpec& sweep = *config.sweep;
  const Numerics num = numerics_for(config);

  struct Point {
    int n_qubits;
    double dephasing;
    double bitflip;
    std::uint64_t shots;
  };
  std::vector<Point> points;
  for (int n : sweep.n_qubits) {
    for (double p : sweep.dephasing) {
      for (double pb : sweep.bitflip) {
        for (std::uint64_t s : sweep.shots) points.push_back({n, p, pb, s});
      }
    }
  }

  // Noisy points need the dense engine; fail up front, naming offenders.
  std::string offenders;
  for (const Point& point : points) {
    const bool needs_dense = point.dephasing > 0.0 || point.bitflip > 0.0;
    if (needs_dense && point.n_qubits > num.dense_cap) {
      offenders += (offenders.empty() ? "" : ", ") + std::string("(n=") +
                   std::to_string(point.n_qubits) + ", p=" + format_double(point.dephasing) +
                   ", pb=" + format_double(point.bitflip) + ")";
    }
  }
  if (!offenders.empty()) {
    throw size_error("sweep points need dense states above the cap " +
                     std::to_string(num.dense_cap) + ": " + offenders);
  }

  struct Row {
    Point point;
    double xi_exact;
    double xi_estimate;
    double chi_value;
    int depth;
  };
  std::vector<Row> rows(points.size());
  parallel_for(points.size(), [&](std::size_t i) {
    const Point& point = points[i];
    // Mixed-parity N grids bump jz_twice to the nearest valid level.
    const bool parity_ok = (point.n_qubits - sweep.jz_twice) % 2 == 0;
    const int jz_twice = sweep.jz_twice + (parity_ok ? 0 : 1);
    QubitEnsembleState state = make_dicke(point.n_qubits, jz_twice);
    NoiseModel model{point.dephasing, point.bitflip};
    if (!model.is_ideal()) state = apply_noise(state, model, num);

    const MomentSet exact = compute_moments(state);
    const CriteriaResult exact_criteria = certify_depth(exact, num);
    Row& row = rows[i];
    row.point = point;
    row.xi_exact = exact_criteria.xi;
    row.chi_value = exact_criteria.chi;
    row.depth = exact_criteria.certified_depth;

    if (point.shots > 0) {
      const MeasurementRecordSet records =
          sample_all_axes(state, point.shots, derive_stream(config.seed, i));
      const EstimatedMoments est = estimate_moments(records, num);
      const CriteriaResult sampled = certify_depth(est.moments, num);
      row.xi_estimate = est.xi;
      row.chi_value = est.chi;
      row.depth = sampled.certified_depth;
    } else if (point.bitflip == 0.0) {
      row.xi_estimate = xi_dephasing_estimate(point.n_qubits, point.dephasing);
    } else if (point.dephasing == 0.0 && point.bitflip > 0.0 && point.bitflip < 1.0) {
      row.xi_estimate = xi_bitflip_estimate(point.n_qubits, point.bitflip);
    } else {
      row.xi_estimate = std::numeric_limits<double>::quiet_NaN();
    }
  });

  CommandResult result;
  if (config.format == OutputFormat::csv) {
    std::ostringstream out;
    out << "n_qubits,dephasing_rate,bitflip_rate,shots,xi_exact,xi_estimate,chi,depth\n";
    for (const Row& row : rows) {
      out << row.point.n_qubits << "," << format_double(row.point.dephasing) << ","
          << format_double(row.point.bitflip) << "," << row.point.shots << ","
          << format_double(row.xi_exact) << "," << format_double(row.xi_estimate) << ","
          << format_double(row.chi_value) << "," << row.depth << "\n";
    }
    result.rendered = out.str();
  }
  ordered_json report;
  report["report"] = "sweep";
  report["tool"] = tool_info();
  report["config"] = config_to_json(config);
  ordered_json jrows = ordered_json::array();
  for (const Row& row : rows) {
    ordered_json r;
    r["n_qubits"] = row.point.n_qubits;
    r["dephasing_rate"] = row.point.dephasing;
    r["bitflip_rate"] = row.point.bitflip;
    r["shots"] = row.point.shots;
    r["xi_exact"] = row.xi_exact;
    if (std::isnan(row.xi_estimate)) {
      r["xi_estimate"] = nullptr;
    } else {
      r["xi_estimate"] = row.xi_estimate;
    }
    r["chi"] = row.chi_value;
    r["depth"] = row.depth;
    jrows.push_back(std::move(r));
  }
  report["rows"] = std::move(jrows);
  result.report = std::move(report);
  if (config.format == OutputFormat::json) {
    result.rendered = render_report(result.report, OutputFormat::json);
  }
  return result;
}

CommandResult cmd_oracle(const RunConfig& config) {
  if (!config.oracle) throw config_error("oracle command needs an 'oracle' config block");
  const OracleSpec& oracle = *config.oracle;
  const Numerics num = numerics_for(config);

  CommandResult result;
  ordered_json report;
  report["report"] = "";
  report["tool"] = tool_info();
  report["config"] = config_to_json(config);

  if (oracle.mode == "violation") {
    const ViolationReport search = bound_violation_search(
        oracle.n_qubits, oracle.block_cap, oracle.trials, config.seed, oracle.optimize, num);
    report["report"] = "bound_violation_search";
    report.update(violation_report_to_json(search));
    if (search.violation) result.exit_code = exit_violation;
  } else if (oracle.mode == "partition-check") {
    double max_abs_diff = 0.0;
    long cases = 0;
    for (int n = 2; n <= std::min(oracle.max_n, 14); ++n) {
      const double chis[5] = {-2.0, 0.0, 0.5, 1.0, n * n / 8.0};
      for (int m = 2; m <= n + 1; ++m) {
        for (double chi_value : chis) {
          const double optimized = partition_bound(n, m, chi_value, num);
          const double brute =
              4.0 / n * partition_bruteforce(n, m, chi_value, num).value - 1.0;
          max_abs_diff = std::max(max_abs_diff, std::abs(optimized - brute));
          ++cases;
        }
      }
    }
    report["report"] = "partition_check";
    report["max_n"] = std::min(oracle.max_n, 14);
    report["cases"] = cases;
    report["max_abs_diff"] = max_abs_diff;
    report["agreement"] = max_abs_diff <= num.linalg_tol;
    if (max_abs_diff > num.linalg_tol) result.exit_code = exit_violation;
  } else {
    std::vector<NoiseModel> grid;
    const std::vector<double>& deph = oracle.dephasing.empty()
                                          ? std::vector<double>{0.0}
                                          : oracle.dephasing;
    const std::vector<double>& flip =
        oracle.bitflip.empty() ? std::vector<double>{0.0} : oracle.bitflip;
    for (double p : deph) {
      for (double pb : flip) grid.push_back({p, pb});
    }
    const auto rows = estimate_vs_exact(oracle.n_qubits, grid, num);
    report["report"] = "estimate_vs_exact";
    report["n_qubits"] = oracle.n_qubits;
    ordered_json jrows = ordered_json::array();
    for (const auto& row : rows) {
      ordered_json r;
      r["dephasing_rate"] = row.dephasing_rate;
      r["bitflip_rate"] = row.bitflip_rate;
      r["xi_exact"] = row.xi_exact;
      r["jz_variance_exact"] = row.jz_variance_exact;
      r["xi_dephasing_sum"] =
          std::isnan(row.xi_dephasing_sum) ? ordered_json() : ordered_json(row.xi_dephasing_sum);
      r["xi_dephasing_linear"] = std::isnan(row.xi_dephasing_linear)
                                     ? ordered_json()
                                     : ordered_json(row.xi_dephasing_linear);
      r["xi_bitflip"] =
          std::isnan(row.xi_bitflip) ? ordered_json() : ordered_json(row.xi_bitflip);
      r["abs_deviation"] =
          std::isnan(row.abs_deviation) ? ordered_json() : ordered_json(row.abs_deviation);
      r["rel_deviation"] =
          std::isnan(row.rel_deviation) ? ordered_json() : ordered_json(row.rel_deviation);
      r["note"] = row.note;
      jrows.push_back(std::move(r));
    }
    report["rows"] = std::move(jrows);
  }

  result.report = std::move(report);
  if (config.format == OutputFormat::csv && result.report.contains("rows")) {
    std::ostringstream out;
    out << "dephasing_rate,bitflip_rate,xi_exact,jz_variance_exact,xi_dephasing_sum,"
           "xi_dephasing_linear,xi_bitflip,abs_deviation,rel_deviation,note\n";
    for (const auto& r : result.report["rows"]) {
      auto cell = [&](const char* key) {
        const auto& v = r.at(key);
        return v.is_null() ? std::string() : format_double(v.get<double>());
      };
      out << cell("dephasing_rate") << "," << cell("bitflip_rate") << "," << cell("xi_exact")
          << "," << cell("jz_variance_exact") << "," << cell("xi_dephasing_sum") << ","
          << cell("xi_dephasing_linear") << "," << cell("xi_bitflip") << ","
          << cell("abs_deviation") << "," << cell("rel_deviation") << ","
          << r.at("note").get<std::string>() << "\n";
    }
    result.rendered = out.str();
  } else {
    result.rendered = render_report(result.report, config.format);
  }
  return result;
}

void write_result(const CommandResult& result, const std::string& output) {
  if (output == "-" || output.empty()) {
    std::cout << result.rendered;
    return;
  }
  std::ofstream out(output, std::ios::binary);
  if (!out) throw input_error("cannot open '" + output + "' for writing");
  out << result.rendered;
}

}  // namespace spincert::app
