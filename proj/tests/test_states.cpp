#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "spincert/criteria.hpp"
#include "spincert/states.hpp"

#include "helpers.hpp"

using namespace spincert;
using Eigen::MatrixXcd;
using Eigen::VectorXcd;

namespace {
bool close(double a, double b, double tol) { return std::abs(a - b) <= tol; }
}

TEST_CASE("Dicke constructor") {
  SUBCASE("half-filled level") {
    const MomentSet m = compute_moments(make_dicke(4, 0));
    CHECK(close(m.jz2, 0.0, 1e-12));
    CHECK(close(m.jx2 + m.jy2, 6.0, 1e-10));
  }
  SUBCASE("one excitation below half filling, against the dense oracle") {
    const QubitEnsembleState state = make_dicke(4, -2);
    const MomentSet m = compute_moments(state);
    CHECK(close(m.jz_mean, -1.0, 1e-12));
    CHECK(close(m.jx2 + m.jy2, 5.0, 1e-10));

    const MatrixXcd rho = convert_representation(state, Representation::dense_density_matrix)
                              .matrix();
    const MatrixXcd jx = testos::collective_kron(4, 'x');
    const MatrixXcd jy = testos::collective_kron(4, 'y');
    CHECK(close(testos::expectation(jx * jx + jy * jy, rho), 5.0, 1e-10));
  }
  SUBCASE("single qubit up") {
    const MomentSet m = compute_moments(make_dicke(1, 1));
    CHECK(close(m.jz_mean, 0.5, 1e-12));
  }
  SUBCASE("exact eigenstate of Jz and J^2") {
    for (int n : {3, 6}) {
      for (int jz = -n; jz <= n; jz += 2) {
        const MomentSet m = compute_moments(make_dicke(n, jz));
        CHECK(close(m.jz_variance(), 0.0, 1e-12));
        // Variance of J^2 vanishes on the maximal-spin ladder: check via
        // the dense oracle for a representative level.
        if (jz == -n + 2 && n <= 6) {
          const MatrixXcd rho =
              convert_representation(make_dicke(n, jz), Representation::dense_density_matrix)
                  .matrix();
          MatrixXcd j2 = MatrixXcd::Zero(rho.rows(), rho.cols());
          for (char axis : {'x', 'y', 'z'}) {
            const MatrixXcd j = testos::collective_kron(n, axis);
            j2 += j * j;
          }
          const double mean = testos::expectation(j2, rho);
          const double second = testos::expectation(j2 * j2, rho);
          CHECK(close(second - mean * mean, 0.0, 1e-10));
          CHECK(close(mean, 0.25 * n * (n + 2), 1e-10));
        }
      }
    }
  }
  SUBCASE("parity and range errors") {
    CHECK_THROWS_AS(make_dicke(4, 1), input_error);
    CHECK_THROWS_AS(make_dicke(4, 6), input_error);
    CHECK_THROWS_AS(make_dicke(0, 0), input_error);
  }
}

TEST_CASE("product constructor") {
  SUBCASE("all up") {
    const MomentSet m = compute_moments(make_product(std::vector<BlochAngles>(4)));
    CHECK(close(m.jz_mean, 2.0, 1e-12));
  }
  SUBCASE("transverse pair") {
    // Both qubits along +x: an eigenstate of Jx with eigenvalue 1, and a
    // separable state, so the excess xi comes out at 0.
    const std::vector<BlochAngles> angles = {{M_PI / 2.0, 0.0}, {M_PI / 2.0, 0.0}};
    const QubitEnsembleState state = make_product(angles);
    const MomentSet m = compute_moments(state);
    CHECK(close(m.jx2, 1.0, 1e-12));
    CHECK(close(m.jy2, 0.5, 1e-12));
    CHECK(close(m.jz2, 0.5, 1e-12));
    CHECK(close(xi(m), 0.0, 1e-12));

    const MatrixXcd jx = testos::collective_kron(2, 'x');
    CHECK(close(testos::expectation(jx * jx, state.matrix()), 1.0, 1e-12));
  }
  SUBCASE("single qubit down") {
    const MomentSet m = compute_moments(make_product({{M_PI, 0.0}}));
    CHECK(close(m.jz_mean, -0.5, 1e-12));
  }
  SUBCASE("cap applies") {
    Numerics small;
    small.dense_cap = 3;
    CHECK_THROWS_AS(make_product(std::vector<BlochAngles>(4), small), size_error);
  }
}

TEST_CASE("superposition and mixture constructors") {
  SUBCASE("equal Dicke superposition normalizes") {
    const QubitEnsembleState state = make_superposition(
        {{1.0, make_dicke(4, 0)}, {1.0, make_dicke(4, 2)}});
    CHECK(close(state.ladder().norm(), 1.0, 1e-12));
    CHECK(close(std::norm(state.ladder()(1)), 0.5, 1e-12));
    CHECK(close(std::norm(state.ladder()(2)), 0.5, 1e-12));
  }
  SUBCASE("cancelling components fail") {
    CHECK_THROWS_AS(
        make_superposition({{1.0, make_dicke(4, 0)}, {-1.0, make_dicke(4, 0)}}),
        input_error);
  }
  SUBCASE("level mixture keeps the ladder representation") {
    const QubitEnsembleState state =
        make_mixture({{0.5, make_dicke(4, 2)}, {0.5, make_dicke(4, -2)}});
    CHECK(state.representation() == Representation::symmetric_mixed);
    const MomentSet m = compute_moments(state);
    CHECK(close(m.jz_mean, 0.0, 1e-12));
    CHECK(close(m.jz2, 1.0, 1e-12));
    CHECK(close(m.jz4, 1.0, 1e-12));
  }
  SUBCASE("weight validation") {
    CHECK_THROWS_AS(make_mixture({{0.4, make_dicke(2, 0)}, {0.4, make_dicke(2, 2)}}),
                    input_error);
    CHECK_THROWS_AS(make_mixture({{-0.5, make_dicke(2, 0)}, {1.5, make_dicke(2, 2)}}),
                    input_error);
  }
}

TEST_CASE("block layout sampling") {
  Rng rng(42);
  SUBCASE("every composition is reachable") {
    std::set<std::vector<int>> seen;
    for (int i = 0; i < 2000; ++i) {
      const auto layout = sample_block_layout(4, 2, rng);
      int total = 0;
      for (int part : layout) {
        CHECK(part >= 1);
        CHECK(part <= 2);
        total += part;
      }
      CHECK(total == 4);
      seen.insert(layout);
    }
    CHECK(seen.size() == 5);  // 1111, 112, 121, 211, 22
  }
  SUBCASE("cap one forces singletons") {
    const auto layout = sample_block_layout(5, 1, rng);
    CHECK(layout == std::vector<int>(5, 1));
  }
}

TEST_CASE("biseparable sampler") {
  SUBCASE("deterministic under a fixed seed") {
    const QubitEnsembleState a = make_biseparable_random(4, 2, 3, 99);
    const QubitEnsembleState b = make_biseparable_random(4, 2, 3, 99);
    const QubitEnsembleState c = make_biseparable_random(4, 2, 3, 100);
    CHECK((a.matrix() - b.matrix()).cwiseAbs().maxCoeff() == 0.0);
    CHECK((a.matrix() - c.matrix()).cwiseAbs().maxCoeff() > 1e-3);
  }
  SUBCASE("single component with cap one is a pure product state") {
    const QubitEnsembleState state = make_biseparable_random(4, 1, 1, 5);
    const double purity = std::real((state.matrix() * state.matrix()).trace());
    CHECK(close(purity, 1.0, 1e-10));
    const MomentSet m = compute_moments(state);
    CHECK(xi(m) <= 2.0 + 1e-9);  // separable cap on the excess
  }
  SUBCASE("single unconstrained block is an arbitrary pure state") {
    const QubitEnsembleState state = make_biseparable_random(4, 4, 1, 5);
    const double purity = std::real((state.matrix() * state.matrix()).trace());
    CHECK(close(purity, 1.0, 1e-10));
    state.validate(default_numerics(), true);
  }
  SUBCASE("mixtures stay valid density matrices") {
    const QubitEnsembleState state = make_biseparable_random(6, 2, 8, 17);
    state.validate(default_numerics(), true);
    CHECK(close(std::real(state.matrix().trace()), 1.0, 1e-12));
  }
}
