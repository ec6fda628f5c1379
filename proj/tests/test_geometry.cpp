// SPDX-License-Identifier: Apache-2.0
#include <cmath>
#include <numbers>

#include "doctest.h"
#include "mmnoma/geometry.hpp"

using namespace mmnoma;

namespace {
ArrayConfig array_for_wavelength(int n, double lambda, double spacing = 0.0) {
  return ArrayConfig::make(n, kSpeedOfLight / lambda, spacing);
}
}  // namespace

TEST_CASE("rayleigh_distance hand values") {
  CHECK(rayleigh_distance(array_for_wavelength(1, 0.5), 20.0) == 0.0);
  // 2*((4-1)*2)^2 / 0.5
  CHECK(rayleigh_distance(array_for_wavelength(4, 0.5), 2.0) ==
        doctest::Approx(144.0).epsilon(1e-15));
  CHECK_THROWS(rayleigh_distance(array_for_wavelength(4, 0.5), 0.0));
  CHECK_THROWS(rayleigh_distance(array_for_wavelength(4, 0.5), -3.0));
}

TEST_CASE("rayleigh_distance strictly increasing in d") {
  RandomStream rng(11);
  for (int t = 0; t < 200; ++t) {
    const int n = 2 + static_cast<int>(rng.next_u64() % 64);
    const double lambda = rng.uniform(1e-3, 1.0);
    const double d1 = rng.uniform(0.1, 100.0);
    const double d2 = d1 * rng.uniform(1.0001, 3.0);
    const auto arr = array_for_wavelength(n, lambda);
    CHECK(rayleigh_distance(arr, d1) < rayleigh_distance(arr, d2));
  }
}

TEST_CASE("classify_user boundary and threshold equivalence") {
  const auto arr = ArrayConfig::make(128, 28e9);
  UserProfile u;
  u.distance = 20.0;
  CHECK(classify_user(u, arr, 20.0) == FieldClass::Near);
  u.distance = 25.0;
  CHECK(classify_user(u, arr, 20.0) == FieldClass::Far);
  u.distance = 5.0;
  CHECK(classify_user(u, arr, 20.0) == FieldClass::Near);

  RandomStream rng(12);
  for (int t = 0; t < 1000; ++t) {
    u.distance = rng.uniform(0.01, 60.0);
    const bool direct = rayleigh_distance(arr, u.distance) >
                        rayleigh_distance(arr, 20.0);
    const bool threshold = u.distance > 20.0;
    CHECK((classify_user(u, arr, 20.0) == FieldClass::Far) == direct);
    CHECK(direct == threshold);
  }
}

TEST_CASE("near_field_channel single element") {
  const auto arr = ArrayConfig::make(1, 28e9);
  UserProfile u;
  u.position = {10.0, 0.0};
  u.distance = 10.0;
  const auto ch = near_field_channel(u, arr);
  REQUIRE(ch.coeffs.size() == 1);
  const double eta = kSpeedOfLight / (4.0 * std::numbers::pi * 28e9 * 10.0);
  CHECK(std::abs(ch.coeffs[0]) == doctest::Approx(eta).epsilon(1e-12));
  CHECK(ch.gain == doctest::Approx(eta).epsilon(1e-12));
}

TEST_CASE("near_field_channel modulus is eta for every element") {
  const auto arr = ArrayConfig::make(4, 28e9);
  UserProfile u;
  u.position = {10.0, 0.0};
  u.distance = 10.0;
  const auto ch = near_field_channel(u, arr);
  const double eta = kSpeedOfLight / (4.0 * std::numbers::pi * 28e9 * 10.0);
  for (int m = 0; m < 4; ++m)
    CHECK(std::abs(ch.coeffs[m]) == doctest::Approx(eta).epsilon(1e-12));
}

TEST_CASE("near_field_channel inter-element phase, user on axis") {
  // spacing 0.1*lambda keeps the -2*pi*delta/lambda difference away from the
  // branch cut of arg()
  const double fc = 28e9;
  const double lambda = kSpeedOfLight / fc;
  const double delta = 0.1 * lambda;
  const auto arr = ArrayConfig::make(2, fc, delta);
  UserProfile u;
  u.position = {-5.0, 0.0};
  u.distance = 5.0;
  const auto ch = near_field_channel(u, arr);
  // element 1 is delta farther from the user than element 0
  const double diff = std::arg(ch.coeffs[1] * std::conj(ch.coeffs[0]));
  CHECK(diff == doctest::Approx(-2.0 * std::numbers::pi * delta / lambda)
                    .epsilon(1e-9));
}

TEST_CASE("near_field_channel rejects a user collocated with an element") {
  const auto arr = ArrayConfig::make(2, 28e9);
  UserProfile u;
  u.position = arr.element_position(0);
  u.distance = u.position.norm();
  CHECK_THROWS(near_field_channel(u, arr));
}

TEST_CASE("far_field_channel statistics and path gain") {
  const auto arr = ArrayConfig::make(1, 28e9);
  UserProfile u;
  u.position = {100.0, 0.0};
  u.distance = 100.0;
  u.field_class = FieldClass::Far;

  RandomStream rng(13);
  const int draws = 100000;
  double sum_p = 0.0, sum_re2 = 0.0, sum_im2 = 0.0;
  for (int t = 0; t < draws; ++t) {
    const auto ch = far_field_channel(u, arr, 2.0, rng);
    sum_p += std::norm(ch.coeffs[0]);
    sum_re2 += ch.coeffs[0].real() * ch.coeffs[0].real();
    sum_im2 += ch.coeffs[0].imag() * ch.coeffs[0].imag();
  }
  CHECK(sum_p / draws == doctest::Approx(1.0).epsilon(0.02));
  CHECK(sum_re2 / draws == doctest::Approx(0.5).epsilon(0.04));
  CHECK(sum_im2 / draws == doctest::Approx(0.5).epsilon(0.04));

  RandomStream r2(14);
  CHECK(far_field_channel(u, arr, 2.0, r2).gain ==
        doctest::Approx(1e-4).epsilon(1e-12));
}

TEST_CASE("far_field_channel is deterministic per seed") {
  const auto arr = ArrayConfig::make(8, 28e9);
  UserProfile u;
  u.position = {50.0, 10.0};
  u.distance = u.position.norm();
  u.field_class = FieldClass::Far;
  RandomStream a(99), b(99);
  const auto ca = far_field_channel(u, arr, 2.7, a);
  const auto cb = far_field_channel(u, arr, 2.7, b);
  for (int m = 0; m < 8; ++m) CHECK(ca.coeffs[m] == cb.coeffs[m]);
}

TEST_CASE("drop_users constraints and determinism") {
  const auto arr = ArrayConfig::make(128, 28e9);
  RandomStream bad(1);
  CHECK_THROWS(drop_users(0, 100.0, 1.0, arr, 20.0, bad));

  RandomStream a(7), b(7);
  const auto ua = drop_users(10, 100.0, 1.0, arr, 20.0, a);
  const auto ub = drop_users(10, 100.0, 1.0, arr, 20.0, b);
  REQUIRE(ua.size() == 10);
  for (size_t i = 0; i < ua.size(); ++i) {
    CHECK(ua[i].distance >= 1.0);
    CHECK(ua[i].distance <= 100.0);
    CHECK(ua[i].distance ==
          doctest::Approx(ua[i].position.norm()).epsilon(1e-12));
    CHECK(ua[i].traffic_weight > 0.0);
    CHECK(ua[i].traffic_weight <= 1.0);
    CHECK((ua[i].position - ub[i].position).norm() == 0.0);
    CHECK(ua[i].mobility_speed == ub[i].mobility_speed);
    CHECK(ua[i].field_class ==
          classify_user(ua[i], arr, 20.0));
  }
}
