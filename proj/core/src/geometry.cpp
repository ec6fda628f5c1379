// SPDX-License-Identifier: Apache-2.0
#include "mmnoma/geometry.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace mmnoma {

ArrayConfig ArrayConfig::make(int n_antennas, double carrier_freq,
                              double element_spacing,
                              Eigen::Vector2d bs_position) {
  ArrayConfig cfg;
  cfg.n_antennas = n_antennas;
  cfg.carrier_freq = carrier_freq;
  cfg.wavelength = kSpeedOfLight / carrier_freq;
  cfg.element_spacing =
      element_spacing > 0.0 ? element_spacing : cfg.wavelength / 2.0;
  cfg.bs_position = std::move(bs_position);
  cfg.validate();
  return cfg;
}

void ArrayConfig::validate() const {
  if (n_antennas < 1) throw std::invalid_argument("n_antennas must be >= 1");
  if (element_spacing <= 0.0)
    throw std::invalid_argument("element_spacing must be > 0");
  if (carrier_freq <= 0.0)
    throw std::invalid_argument("carrier_freq must be > 0");
  const double expected = kSpeedOfLight / carrier_freq;
  if (std::abs(wavelength - expected) > 1e-12 * expected)
    throw std::invalid_argument("wavelength inconsistent with carrier_freq");
}

Eigen::Vector2d ArrayConfig::element_position(int m) const {
  const double offset = (m - (n_antennas - 1) / 2.0) * element_spacing;
  return bs_position + Eigen::Vector2d(offset, 0.0);
}

double rayleigh_distance(const ArrayConfig& array, double d) {
  if (d <= 0.0) throw std::domain_error("rayleigh_distance: d must be > 0");
  if (array.wavelength <= 0.0)
    throw std::domain_error("rayleigh_distance: wavelength must be > 0");
  const double a = (array.n_antennas - 1) * d;
  return 2.0 * a * a / array.wavelength;
}

FieldClass classify_user(const UserProfile& user, const ArrayConfig& array,
                         double d0) {
  if (d0 <= 0.0) throw std::domain_error("classify_user: d0 must be > 0");
  // Boundary ties classify as Near: far users are strictly beyond d0.
  return rayleigh_distance(array, user.distance) >
                 rayleigh_distance(array, d0)
             ? FieldClass::Far
             : FieldClass::Near;
}

ChannelVector near_field_channel(const UserProfile& user,
                                 const ArrayConfig& array) {
  if (user.distance <= 0.0)
    throw std::domain_error("near_field_channel: distance must be > 0");
  const int n = array.n_antennas;
  const double eta =
      kSpeedOfLight / (4.0 * std::numbers::pi * array.carrier_freq *
                       user.distance);
  ChannelVector ch;
  ch.coeffs.resize(n);
  ch.gain = eta;
  ch.owner = user.id;
  for (int m = 0; m < n; ++m) {
    const double dm = (user.position - array.element_position(m)).norm();
    if (dm < 1e-12)
      throw std::domain_error(
          "near_field_channel: user collocated with array element");
    const double phase = -2.0 * std::numbers::pi / array.wavelength * dm;
    ch.coeffs[m] = std::polar(eta, phase);
  }
  return ch;
}

ChannelVector far_field_channel(const UserProfile& user,
                                const ArrayConfig& array,
                                double path_loss_exp, RandomStream& rng) {
  if (user.distance <= 0.0)
    throw std::domain_error("far_field_channel: distance must be > 0");
  ChannelVector ch;
  ch.coeffs.resize(array.n_antennas);
  for (int m = 0; m < array.n_antennas; ++m)
    ch.coeffs[m] = rng.complex_gaussian();
  ch.gain = std::pow(user.distance, -path_loss_exp);
  ch.owner = user.id;
  return ch;
}

std::vector<UserProfile> drop_users(int count, double cell_radius,
                                    double min_distance,
                                    const ArrayConfig& array, double d0,
                                    RandomStream& rng) {
  if (count < 1) throw std::domain_error("drop_users: count must be >= 1");
  if (min_distance <= 0.0 || min_distance >= cell_radius)
    throw std::domain_error("drop_users: need 0 < min_distance < cell_radius");

  std::vector<UserProfile> users;
  users.reserve(count);
  const double r0sq = min_distance * min_distance;
  const double r1sq = cell_radius * cell_radius;
  for (int i = 0; i < count; ++i) {
    UserProfile u;
    u.id = i;
    const double r = std::sqrt(rng.uniform() * (r1sq - r0sq) + r0sq);
    const double theta = rng.uniform(0.0, 2.0 * std::numbers::pi);
    u.position =
        array.bs_position + r * Eigen::Vector2d(std::cos(theta), std::sin(theta));
    u.distance = (u.position - array.bs_position).norm();
    u.mobility_speed = rng.uniform() < 0.3 ? 0.0 : rng.uniform(0.5, 15.0);
    u.traffic_weight = 1.0 - 0.9 * rng.uniform();  // (0.1, 1]
    u.field_class = classify_user(u, array, d0);
    users.push_back(std::move(u));
  }
  return users;
}

}  // namespace mmnoma
