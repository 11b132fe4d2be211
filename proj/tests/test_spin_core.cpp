#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "spincert/spin_core.hpp"
#include "spincert/states.hpp"

#include "helpers.hpp"

using namespace spincert;
using Eigen::MatrixXcd;
using Eigen::VectorXcd;

namespace {

bool close(double a, double b, double tol) { return std::abs(a - b) <= tol; }

QubitEnsembleState singlet() {
  VectorXcd v = VectorXcd::Zero(4);
  v(1) = 1.0 / std::sqrt(2.0);
  v(2) = -1.0 / std::sqrt(2.0);
  return QubitEnsembleState::dense_pure(2, v);
}

}  // namespace

TEST_CASE("collective operator matches the single-qubit and ladder forms") {
  const MatrixXcd jz1 = collective_operator(1, Axis::z, Representation::dense_density_matrix);
  CHECK(close(std::real(jz1(0, 0)), 0.5, 1e-15));
  CHECK(close(std::real(jz1(1, 1)), -0.5, 1e-15));
  CHECK(close(std::abs(jz1(0, 1)), 0.0, 1e-15));

  const MatrixXcd jz2 = collective_operator(2, Axis::z, Representation::symmetric_pure);
  CHECK(jz2.rows() == 3);
  CHECK(close(std::real(jz2(0, 0)), 1.0, 1e-15));
  CHECK(close(std::real(jz2(1, 1)), 0.0, 1e-15));
  CHECK(close(std::real(jz2(2, 2)), -1.0, 1e-15));

  // <Jx^2> in the middle level of the N=4 ladder.
  const MatrixXcd jx = collective_operator(4, Axis::x, Representation::symmetric_pure);
  VectorXcd middle = VectorXcd::Zero(5);
  middle(2) = 1.0;
  const double jx2 = std::real((middle.adjoint() * jx * jx * middle)(0, 0));
  CHECK(close(jx2, 3.0, 1e-12));
}

TEST_CASE("dense collective operators agree with explicit kron sums") {
  for (Axis axis : {Axis::x, Axis::y, Axis::z}) {
    const MatrixXcd lib = collective_operator(3, axis, Representation::dense_density_matrix);
    const MatrixXcd oracle = testos::collective_kron(3, *axis_name(axis));
    CHECK((lib - oracle).cwiseAbs().maxCoeff() < 1e-14);
  }
}

TEST_CASE("commutator [Jx, Jy] = i Jz in both representations") {
  for (Representation rep :
       {Representation::dense_density_matrix, Representation::symmetric_pure}) {
    const int n = rep == Representation::dense_density_matrix ? 3 : 7;
    const MatrixXcd jx = collective_operator(n, Axis::x, rep);
    const MatrixXcd jy = collective_operator(n, Axis::y, rep);
    const MatrixXcd jz = collective_operator(n, Axis::z, rep);
    const MatrixXcd commutator = jx * jy - jy * jx;
    const MatrixXcd expected = std::complex<double>(0.0, 1.0) * jz;
    CHECK((commutator - expected).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("moments of the reference states") {
  SUBCASE("half-filled Dicke state") {
    const MomentSet m = compute_moments(make_dicke(4, 0));
    CHECK(close(m.jx2, 3.0, 1e-10));
    CHECK(close(m.jy2, 3.0, 1e-10));
    CHECK(close(m.jz_mean, 0.0, 1e-12));
    CHECK(close(m.jz2, 0.0, 1e-12));
    CHECK(close(m.jz4, 0.0, 1e-12));
    validate_moments(m);
  }
  SUBCASE("all spins up") {
    const MomentSet m = compute_moments(make_product(std::vector<BlochAngles>(4)));
    CHECK(close(m.jz_mean, 2.0, 1e-12));
    CHECK(close(m.jz2, 4.0, 1e-12));
    CHECK(close(m.jz4, 16.0, 1e-12));
    CHECK(close(m.jx2, 1.0, 1e-12));
    CHECK(close(m.jy2, 1.0, 1e-12));
  }
  SUBCASE("two-qubit singlet carries no collective spin") {
    const MomentSet m = compute_moments(singlet());
    CHECK(close(m.jx2, 0.0, 1e-12));
    CHECK(close(m.jy2, 0.0, 1e-12));
    CHECK(close(m.jz_mean, 0.0, 1e-12));
    CHECK(close(m.jz2, 0.0, 1e-12));
    CHECK(close(m.jz4, 0.0, 1e-12));
  }
}

TEST_CASE("dense matrix-free moments agree with explicit operator traces") {
  const int n = 3;
  const MatrixXcd rho = testos::random_density(1 << n, 20260810u);
  const QubitEnsembleState state = QubitEnsembleState::dense(n, rho);
  const MomentSet m = compute_moments(state);
  const MatrixXcd jx = testos::collective_kron(n, 'x');
  const MatrixXcd jy = testos::collective_kron(n, 'y');
  const MatrixXcd jz = testos::collective_kron(n, 'z');
  CHECK(close(m.jx2, testos::expectation(jx * jx, rho), 1e-12));
  CHECK(close(m.jy2, testos::expectation(jy * jy, rho), 1e-12));
  CHECK(close(m.jz_mean, testos::expectation(jz, rho), 1e-12));
  CHECK(close(m.jz2, testos::expectation(jz * jz, rho), 1e-12));
  CHECK(close(m.jz4, testos::expectation(jz * jz * jz * jz, rho), 1e-12));
}

TEST_CASE("rotations") {
  SUBCASE("angle zero is the identity") {
    const QubitEnsembleState state = make_dicke(5, 1);
    const QubitEnsembleState rotated = rotate_collective(state, Axis::x, 0.0);
    CHECK((rotated.ladder() - state.ladder()).norm() < 1e-14);
  }
  SUBCASE("pi about x flips all spins") {
    const QubitEnsembleState up = make_product(std::vector<BlochAngles>(2));
    const QubitEnsembleState flipped = rotate_collective(up, Axis::x, M_PI);
    CHECK(close(std::real(flipped.matrix()(3, 3)), 1.0, 1e-12));
    CHECK(close(compute_moments(flipped).jz_mean, -1.0, 1e-12));
  }
  SUBCASE("pi/2 about y maps Jx^2 onto Jz^2, against the dense exponential oracle") {
    // Library path, symmetric representation.
    const QubitEnsembleState dicke = make_dicke(4, 0);
    const MomentSet sym = compute_moments(rotate_collective(dicke, Axis::y, M_PI / 2.0));
    CHECK(close(sym.jz2, 3.0, 1e-10));

    // Library path, dense representation.
    const QubitEnsembleState dense =
        convert_representation(dicke, Representation::dense_density_matrix);
    const MomentSet dns = compute_moments(rotate_collective(dense, Axis::y, M_PI / 2.0));
    CHECK(close(dns.jz2, 3.0, 1e-10));

    // Independent oracle: conjugate with a dense matrix exponential.
    const MatrixXcd jy = testos::collective_kron(4, 'y');
    const MatrixXcd jz = testos::collective_kron(4, 'z');
    const MatrixXcd u = testos::expi(jy, M_PI / 2.0);
    const MatrixXcd rotated = u * dense.matrix() * u.adjoint();
    CHECK(close(testos::expectation(jz * jz, rotated), 3.0, 1e-10));
    CHECK((rotated - rotate_collective(dense, Axis::y, M_PI / 2.0).matrix())
              .cwiseAbs()
              .maxCoeff() < 1e-12);
  }
  SUBCASE("2 pi rotation leaves every moment unchanged") {
    const QubitEnsembleState state =
        QubitEnsembleState::dense(2, testos::random_density(4, 7u));
    for (Axis axis : {Axis::x, Axis::y, Axis::z}) {
      const QubitEnsembleState rotated = rotate_collective(state, axis, 2.0 * M_PI);
      const MomentSet before = compute_moments(state);
      const MomentSet after = compute_moments(rotated);
      CHECK(close(before.jx2, after.jx2, 1e-10));
      CHECK(close(before.jy2, after.jy2, 1e-10));
      CHECK(close(before.jz_mean, after.jz_mean, 1e-10));
      CHECK(close(before.jz2, after.jz2, 1e-10));
      CHECK(close(before.jz4, after.jz4, 1e-10));
      CHECK(close(std::abs(rotated.matrix().trace() - 1.0), 0.0, 1e-12));
      CHECK((rotated.matrix() - rotated.matrix().adjoint()).cwiseAbs().maxCoeff() < 1e-12);
    }
  }
}

TEST_CASE("symmetric states satisfy <J^2> = N(N+2)/4") {
  for (int n : {2, 5, 11, 40}) {
    const VectorXcd psi = testos::random_ladder(n, 100u + n);
    const MomentSet m = compute_moments(QubitEnsembleState::symmetric_pure(psi));
    CHECK(close(m.jx2 + m.jy2 + m.jz2, 0.25 * n * (n + 2), 1e-10));
  }
}

TEST_CASE("representation conversion") {
  SUBCASE("triplet level embeds as the symmetrized pair state") {
    const QubitEnsembleState triplet = make_dicke(2, 0);
    const QubitEnsembleState dense =
        convert_representation(triplet, Representation::dense_density_matrix);
    VectorXcd expected = VectorXcd::Zero(4);
    expected(1) = expected(2) = 1.0 / std::sqrt(2.0);
    const MatrixXcd outer = expected * expected.adjoint();
    CHECK((dense.matrix() - outer).cwiseAbs().maxCoeff() < 1e-14);
  }
  SUBCASE("the singlet has no maximal-spin support") {
    CHECK_THROWS_AS(convert_representation(singlet(), Representation::symmetric_mixed),
                    conversion_error);
    CHECK_THROWS_AS(convert_representation(singlet(), Representation::symmetric_pure),
                    conversion_error);
  }
  SUBCASE("moments agree across representations") {
    const VectorXcd psi = testos::random_ladder(4, 31u);
    const QubitEnsembleState sym = QubitEnsembleState::symmetric_pure(psi);
    const QubitEnsembleState dense =
        convert_representation(sym, Representation::dense_density_matrix);
    const QubitEnsembleState mixed =
        convert_representation(sym, Representation::symmetric_mixed);
    const MomentSet a = compute_moments(sym);
    const MomentSet b = compute_moments(dense);
    const MomentSet c = compute_moments(mixed);
    for (const auto* pair : {&b, &c}) {
      CHECK(close(a.jx2, pair->jx2, 1e-10));
      CHECK(close(a.jy2, pair->jy2, 1e-10));
      CHECK(close(a.jz_mean, pair->jz_mean, 1e-10));
      CHECK(close(a.jz2, pair->jz2, 1e-10));
      CHECK(close(a.jz4, pair->jz4, 1e-10));
    }
  }
  SUBCASE("dense round trip recovers the ladder state") {
    const QubitEnsembleState dicke = make_dicke(4, 0);
    const QubitEnsembleState dense =
        convert_representation(dicke, Representation::dense_density_matrix);
    const QubitEnsembleState back =
        convert_representation(dense, Representation::symmetric_pure);
    CHECK(close(std::abs(back.ladder()(2)), 1.0, 1e-10));
  }
}

TEST_CASE("input validation") {
  CHECK_THROWS_AS(axis_from_name("q"), input_error);
  CHECK_THROWS_AS(collective_operator(13, Axis::x, Representation::dense_density_matrix),
                  size_error);
  CHECK_THROWS_AS(QubitEnsembleState::dense(2, MatrixXcd::Identity(4, 4)), numerics_error);
  MatrixXcd lopsided = MatrixXcd::Zero(4, 4);
  lopsided(0, 0) = 1.0;
  lopsided(0, 1) = 0.5;
  CHECK_THROWS_AS(QubitEnsembleState::dense(2, lopsided), numerics_error);

  MomentSet bad;
  bad.n_qubits = 4;
  bad.jx2 = -1.0;
  CHECK_THROWS_AS(validate_moments(bad), numerics_error);
  MomentSet overfull;
  overfull.n_qubits = 2;
  overfull.jx2 = overfull.jy2 = overfull.jz2 = 2.0;
  overfull.jz4 = 4.1;
  CHECK_THROWS_AS(validate_moments(overfull), numerics_error);
}
