#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include <ibpdn/analysis.hpp>
#include <ibpdn/random.hpp>
#include <ibpdn/sensing.hpp>
#include <ibpdn/serialize.hpp>
#include <ibpdn/signals.hpp>

using namespace ibpdn;

namespace {

Matrix random_matrix(Index m, Index n, Rng& rng) {
  Matrix a(m, n);
  for (Index j = 0; j < n; ++j)
    for (Index i = 0; i < m; ++i) a(i, j) = rng.normal();
  return a;
}

}  // namespace

TEST_CASE("support_count") {
  CHECK(support_count(14, 4) == 1001);
  CHECK(support_count(5, 0) == 1);
  CHECK(support_count(5, 5) == 1);
  CHECK(support_count(100, 50) == kMaxEnumeratedSupports + 1);  // saturates
}

TEST_CASE("identity matrix has zero radius at every order") {
  const Matrix eye = Matrix::Identity(6, 6);
  for (Index q = 1; q <= 6; ++q) {
    const RipEstimate est = rip_radius(eye, q, RipMethod::ExactEnumeration);
    CHECK(est.radius == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(!est.saturated);
    CHECK(!est.is_lower_bound);
  }
}

TEST_CASE("1x2 all-ones row: order 1 is exact, order 2 saturates") {
  // the two-column Gram [[1,1],[1,1]] has eigenvalues {0, 2}
  Matrix phi(1, 2);
  phi << 1, 1;
  const RipEstimate one = rip_radius(phi, 1, RipMethod::ExactEnumeration);
  CHECK(one.radius == doctest::Approx(0.0).epsilon(1e-12));
  const RipEstimate two = rip_radius(phi, 2, RipMethod::ExactEnumeration);
  CHECK(two.radius == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(two.saturated);
}

TEST_CASE("monte carlo estimate never exceeds the exact radius") {
  Rng rng(2);
  for (int trial = 0; trial < 5; ++trial) {
    const Matrix phi = random_matrix(8, 12, rng) / std::sqrt(8.0);
    for (Index q : {2, 3}) {
      const RipEstimate exact = rip_radius(phi, q, RipMethod::ExactEnumeration);
      const RipEstimate mc = rip_radius(phi, q, RipMethod::MonteCarlo, 17, 50);
      CHECK(mc.radius <= exact.radius + 1e-14);
      CHECK(mc.is_lower_bound);
      CHECK(mc.samples == 50);
    }
  }
}

TEST_CASE("exact radius is nondecreasing in the order") {
  Rng rng(5);
  const Matrix phi = random_matrix(6, 9, rng) / std::sqrt(6.0);
  double prev = 0.0;
  for (Index q = 1; q <= 5; ++q) {
    const double r = rip_radius(phi, q, RipMethod::ExactEnumeration).radius;
    CHECK(r >= prev - 1e-14);
    prev = r;
  }
}

TEST_CASE("rip_radius guards") {
  const Matrix eye = Matrix::Identity(4, 4);
  CHECK_THROWS_AS(rip_radius(eye, 0, RipMethod::ExactEnumeration), std::invalid_argument);
  CHECK_THROWS_AS(rip_radius(eye, 5, RipMethod::ExactEnumeration), std::invalid_argument);
  Rng rng(1);
  const Matrix wide = random_matrix(4, 60, rng);
  CHECK_THROWS_AS(rip_radius(wide, 30, RipMethod::ExactEnumeration), std::invalid_argument);
}

TEST_CASE("mu_sk") {
  CHECK(mu_sk(0.2, 0.02) == doctest::Approx(0.20099751242241780).epsilon(1e-14));
  CHECK(mu_sk(0.0, 0.0) == 0.0);
  CHECK(mu_sk(0.3, 0.3) == doctest::Approx(0.3 * std::sqrt(2.0)).epsilon(1e-14));
  CHECK_THROWS_AS(mu_sk(1.0, 0.5), std::invalid_argument);
}

TEST_CASE("stability constants at the benchmark radii") {
  // frozen from direct extended-precision evaluation of the formulas
  const BoundReport r = stability_constants(0.2, 0.02);
  REQUIRE(r.condition_ok);
  CHECK(*r.c_const == doctest::Approx(7.3151289867954098).epsilon(1e-13));
  CHECK(*r.d_const == doctest::Approx(3.3422148761703419).epsilon(1e-13));
  CHECK(*r.c_const < 7.32);
  CHECK(*r.d_const < 3.35);

  const BoundReport r2 = stability_constants(0.2, 0.2);
  REQUIRE(r2.condition_ok);
  CHECK(*r2.c_const == doctest::Approx(8.4728197121775652).epsilon(1e-13));
  CHECK(*r2.d_const == doctest::Approx(4.1876726427121086).epsilon(1e-13));

  const BoundReport r0 = stability_constants(0.0, 0.0);
  REQUIRE(r0.condition_ok);
  CHECK(*r0.c_const == doctest::Approx(4.0).epsilon(1e-14));
  CHECK(*r0.d_const == doctest::Approx(2.0).epsilon(1e-14));
}

TEST_CASE("equal radii reduce the condition to d < sqrt(2) - 1") {
  const double threshold = std::sqrt(2.0) - 1.0;
  for (int i = 1; i <= 50; ++i) {
    const double d = i / 100.0;
    const BoundReport r = stability_constants(d, d);
    CHECK(r.condition_ok == (d < threshold));
    if (r.condition_ok) {
      CHECK(*r.c_const > 0.0);
      CHECK(*r.d_const >= 2.0);
    } else {
      CHECK(!r.c_const);
      CHECK(!r.d_const);
    }
  }
}

TEST_CASE("cancel-then-recover constants") {
  const CtrConstants c = ctr_constants(0.2);
  CHECK(c.delta_prime == doctest::Approx(0.25).epsilon(1e-15));
  REQUIRE(c.d_tilde);
  CHECK(*c.d_tilde == doctest::Approx(5.5672232497824487).epsilon(1e-13));

  const CtrConstants zero = ctr_constants(0.0);
  CHECK(zero.delta_prime == 0.0);
  REQUIRE(zero.d_tilde);
  CHECK(*zero.d_tilde == doctest::Approx(2.0).epsilon(1e-15));

  CHECK(!ctr_constants(0.3).d_tilde);  // above (sqrt(2)-1)/sqrt(2)
  CHECK(ctr_constants(0.29).d_tilde);  // just below
}

TEST_CASE("the two published forms of d_tilde agree on the valid region") {
  const double root2 = std::sqrt(2.0);
  for (double d = 0.0; d < 0.2928; d += 0.01) {
    const CtrConstants c = ctr_constants(d);
    REQUIRE(c.d_tilde);
    const double direct = 2.0 * (1.0 + (root2 - 2.0) * d) / (1.0 - (root2 + 2.0) * d);
    CHECK(*c.d_tilde == doctest::Approx(direct).epsilon(1e-12));
  }
}

TEST_CASE("denoise constant stays below the cancel-then-recover constant") {
  for (double ds2k = 0.05; ds2k < 0.26; ds2k += 0.05) {
    const CtrConstants ctr = ctr_constants(ds2k);
    REQUIRE(ctr.d_tilde);
    for (double d2k = 0.0; d2k <= ds2k + 1e-12; d2k += 0.05) {
      const BoundReport r = stability_constants(ds2k, std::min(d2k, ds2k));
      REQUIRE(r.condition_ok);
      CHECK(*r.d_const < *ctr.d_tilde);
    }
  }
}

TEST_CASE("constants grow with the larger radius") {
  double prev_c = 0.0, prev_d = 0.0;
  for (double ds2k = 0.05; ds2k < 0.45; ds2k += 0.05) {
    const BoundReport r = stability_constants(ds2k, 0.02);
    REQUIRE(r.condition_ok);
    CHECK(*r.c_const > prev_c);
    CHECK(*r.d_const > prev_d);
    prev_c = *r.c_const;
    prev_d = *r.d_const;
  }
}

TEST_CASE("verify_bound on clean cases") {
  const BoundReport report = stability_constants(0.2, 0.02);
  Rng rng(6);
  const Vector x = rng.normal_vector(8);
  const SupportSet t({0, 3}, 8);

  // x_star == x always passes
  const BoundCheck same = verify_bound(x, x, 0.1, t, 2, report);
  CHECK(same.pass);
  CHECK(same.lhs == 0.0);

  // exactly k-sparse residual with no noise: rhs is zero, pass needs equality
  Vector sparse = Vector::Zero(8);
  sparse[0] = 3.0;
  sparse[5] = -1.5;  // one innovation entry
  const BoundCheck tight = verify_bound(sparse, sparse, 0.0, SupportSet({0}, 8), 1, report);
  CHECK(tight.rhs == 0.0);
  CHECK(tight.pass);

  BoundReport bad = stability_constants(0.45, 0.45);
  CHECK(!bad.condition_ok);
  CHECK_THROWS_AS(verify_bound(x, x, 0.0, t, 2, bad), std::invalid_argument);
}

TEST_CASE("bound report serializes with the documented field names") {
  const Json j = to_json(with_ctr_constants(stability_constants(0.2, 0.02)));
  CHECK(j.contains("delta_2k"));
  CHECK(j.contains("delta_s2k"));
  CHECK(j.contains("mu"));
  CHECK(j.contains("condition_ok"));
  CHECK(j.contains("C"));
  CHECK(j.contains("D"));
  CHECK(j.contains("delta_prime"));
  CHECK(j.contains("D_tilde"));
  CHECK(j["condition_ok"].get<bool>());
  CHECK(j["delta_2k"].get<double>() == 0.02);

  const Json no_consts = to_json(stability_constants(0.45, 0.45));
  CHECK(!no_consts.contains("C"));
  CHECK(!no_consts.contains("D"));
  CHECK(!no_consts["condition_ok"].get<bool>());
}
