#include <cmath>
#include <limits>

#include <doctest.h>

#include "maser/errors.hpp"
#include "maser/params.hpp"
#include "test_helpers.hpp"

using maser::BathOccupations;
using maser::MaserParams;
using testutil::base_params;

TEST_SUITE("params") {

TEST_CASE("defaults and derived frequencies") {
  const MaserParams prm = base_params(0.05);
  CHECK(prm.omega1 == 1.0);
  CHECK(prm.omega2 == 3.0);
  CHECK(prm.omega3() == 3.05);
  // Resonant midpoint of the 1<->2 and 1<->3 gaps.
  CHECK(prm.drive_frequency() == doctest::Approx(2.025).epsilon(1e-15));
  CHECK(base_params(0.0).drive_frequency() == 2.0);
}

TEST_CASE("resonance detection") {
  MaserParams prm = base_params(0.05);
  CHECK(prm.drive_is_resonant());
  prm.omega_drive = 2.025;
  CHECK(prm.drive_is_resonant());
  prm.omega_drive = 2.1;
  CHECK_FALSE(prm.drive_is_resonant());
}

TEST_CASE("validation rejects out-of-domain parameters") {
  CHECK_NOTHROW(base_params().validate());

  MaserParams prm = base_params();
  prm.omega2 = 0.5;  // must exceed omega1
  CHECK_THROWS_AS(prm.validate(), maser::PreconditionViolated);

  prm = base_params();
  prm.delta = -0.1;
  CHECK_THROWS_AS(prm.validate(), maser::PreconditionViolated);

  prm = base_params();
  prm.p = 1.5;
  CHECK_THROWS_AS(prm.validate(), maser::PreconditionViolated);

  prm = base_params();
  prm.gamma_h = 0.0;
  CHECK_THROWS_AS(prm.validate(), maser::PreconditionViolated);

  prm = base_params();
  prm.n_c = -0.1;
  CHECK_THROWS_AS(prm.validate(), maser::PreconditionViolated);

  prm = base_params();
  prm.lambda_drive = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(prm.validate(), maser::PreconditionViolated);

  prm = base_params();
  prm.omega_drive = -2.0;
  CHECK_THROWS_AS(prm.validate(), maser::PreconditionViolated);
}

TEST_CASE("bath occupations and temperatures") {
  const MaserParams prm = base_params(0.05);
  const BathOccupations occ = maser::derive_bath_occupations(prm);
  // T_c = omega1 / ln(1 + 1/n_c) = 1 / ln(11).
  CHECK(occ.T_c == doctest::Approx(0.417032391424246).epsilon(1e-14));
  // T_h = omega2 / ln(1 + 1/n_h2) = 3 / ln(3).
  CHECK(occ.T_h == doctest::Approx(2.730717679880512).epsilon(1e-14));
  // Occupation of the second hot transition at omega3 = 3.05.
  CHECK(occ.n_h3 == doctest::Approx(0.486514642804200).epsilon(1e-14));
}

TEST_CASE("bath occupations at zero splitting collapse to n_h2") {
  const BathOccupations occ = maser::derive_bath_occupations(base_params(0.0));
  CHECK(occ.n_h3 == doctest::Approx(0.5).epsilon(1e-14));
}

TEST_CASE("zero occupation maps to zero temperature") {
  MaserParams prm = base_params();
  prm.n_h2 = 0.0;
  BathOccupations occ = maser::derive_bath_occupations(prm);
  CHECK(occ.T_h == 0.0);
  CHECK(occ.n_h3 == 0.0);

  prm = base_params();
  prm.n_c = 0.0;
  occ = maser::derive_bath_occupations(prm);
  CHECK(occ.T_c == 0.0);
}

}  // TEST_SUITE
