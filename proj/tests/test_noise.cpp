#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "spincert/criteria.hpp"
#include "spincert/noise.hpp"
#include "spincert/states.hpp"

#include "helpers.hpp"

using namespace spincert;
using Eigen::MatrixXcd;

namespace {

bool close(double a, double b, double tol) { return std::abs(a - b) <= tol; }

// The binomial-sum model, term by term; the production code carries only
// its closed form.
double binomial_sum_reference(int n, double p) {
  double total = 0.0;
  for (int i = 0; i <= n; ++i) {
    double coeff = 1.0;
    for (int k = 1; k <= i; ++k) coeff *= double(n - i + k) / double(k);
    coeff *= std::pow(p, i) * std::pow(1.0 - p, n - i);
    const double decohered = 0.5 * i;
    const double coherent = 0.25 * (n - i) * (n - i + 2) - 0.25 * i;
    total += coeff * (decohered + coherent);
  }
  return 4.0 / n * total - 1.0;
}

}  // namespace

TEST_CASE("zero rates are the identity map") {
  const QubitEnsembleState dicke = make_dicke(4, 0);
  const QubitEnsembleState out = apply_noise(dicke, NoiseModel{});
  CHECK(out.representation() == Representation::symmetric_pure);
  CHECK((out.ladder() - dicke.ladder()).norm() == 0.0);
}

TEST_CASE("full dephasing strips the excess down to xi = 1") {
  const QubitEnsembleState noisy = apply_noise(make_dicke(4, 0), NoiseModel{1.0, 0.0});
  const MomentSet m = compute_moments(noisy);
  CHECK(close(m.jx2 + m.jy2, 2.0, 1e-12));
  CHECK(close(m.jz_variance(), 0.0, 1e-12));
  CHECK(close(xi(m), 1.0, 1e-12));
}

TEST_CASE("bit-flip variance on the half-filled Dicke state") {
  const MomentSet m = compute_moments(apply_noise(make_dicke(8, 0), NoiseModel{0.0, 0.05}));
  CHECK(close(m.jz_variance(), 0.38, 1e-10));
  for (int n : {2, 6}) {
    for (double pb : {0.01, 0.2}) {
      const MomentSet moments =
          compute_moments(apply_noise(make_dicke(n, 0), NoiseModel{0.0, pb}));
      CHECK(close(moments.jz_variance(), n * pb * (1.0 - pb), 1e-10));
    }
  }
}

TEST_CASE("channels preserve trace and positivity on random states") {
  for (unsigned seed : {1u, 2u}) {
    const QubitEnsembleState state =
        QubitEnsembleState::dense(4, testos::random_density(16, seed, 4));
    for (double p : {0.0, 0.3, 1.0}) {
      for (double pb : {0.0, 0.15, 0.5, 1.0}) {
        const QubitEnsembleState out = apply_noise(state, NoiseModel{p, pb});
        CHECK(close(std::real(out.matrix().trace()), 1.0, 1e-12));
        out.validate(default_numerics(), true);
      }
    }
  }
}

TEST_CASE("dephasing leaves every Jz moment in place") {
  const QubitEnsembleState state =
      QubitEnsembleState::dense(4, testos::random_density(16, 11u, 4));
  const MomentSet before = compute_moments(state);
  const MomentSet after = compute_moments(apply_noise(state, NoiseModel{0.7, 0.0}));
  CHECK(close(before.jz_mean, after.jz_mean, 1e-12));
  CHECK(close(before.jz2, after.jz2, 1e-12));
  CHECK(close(before.jz4, after.jz4, 1e-12));
}

TEST_CASE("xi is monotone non-increasing in the dephasing rate") {
  const QubitEnsembleState dicke = make_dicke(6, 0);
  double previous = std::numeric_limits<double>::infinity();
  for (int step = 0; step <= 10; ++step) {
    const double p = 0.1 * step;
    const double value = xi(compute_moments(apply_noise(dicke, NoiseModel{p, 0.0})));
    CHECK(value <= previous + 1e-12);
    previous = value;
  }
}

TEST_CASE("dephasing and bit-flip commute") {
  const QubitEnsembleState dicke = make_dicke(4, 0);
  const QubitEnsembleState forward = apply_noise(dicke, NoiseModel{0.3, 0.2});
  const QubitEnsembleState reversed =
      apply_noise(apply_noise(dicke, NoiseModel{0.0, 0.2}), NoiseModel{0.3, 0.0});
  CHECK((forward.matrix() - reversed.matrix()).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("dephasing estimate evaluates the binomial sum") {
  CHECK(close(xi_dephasing_estimate(6, 0.0), 7.0, 1e-12));
  CHECK(close(xi_dephasing_estimate(6, 1.0), 0.0, 1e-12));
  CHECK(close(xi_dephasing_estimate(10, 0.1), 9.09, 1e-12));
  CHECK(close(xi_dephasing_estimate_linear(10, 0.1), 9.99, 1e-12));
  for (int n : {2, 5, 10, 37}) {
    for (double p : {0.0, 0.05, 0.35, 0.8, 1.0}) {
      CHECK(close(xi_dephasing_estimate(n, p), binomial_sum_reference(n, p), 1e-9));
    }
  }
  CHECK_THROWS_AS(xi_dephasing_estimate(4, 1.5), input_error);
}

TEST_CASE("exact dephased xi sits p^2 above the sum model") {
  const QubitEnsembleState dicke = make_dicke(6, 0);
  for (double p : {0.1, 0.3, 0.6, 1.0}) {
    const double exact = xi(compute_moments(apply_noise(dicke, NoiseModel{p, 0.0})));
    CHECK(close(exact, 1.0 + 6.0 * (1.0 - p) * (1.0 - p), 1e-9));
    CHECK(close(exact - xi_dephasing_estimate(6, p), p * p, 1e-9));
  }
}

TEST_CASE("bit-flip estimate") {
  CHECK(close(xi_bitflip_estimate(1000, 0.01), 1.0 / 0.0396 - 1.0, 1e-9));
  CHECK(close(xi_bitflip_estimate(1000, 0.5), 0.0, 1e-12));
  CHECK_THROWS_AS(xi_bitflip_estimate(1000, 0.0), input_error);
  CHECK_THROWS_AS(xi_bitflip_estimate(1000, 1.0), input_error);
}
