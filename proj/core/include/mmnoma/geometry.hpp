// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Dense>
#include <vector>

#include "mmnoma/rng.hpp"

namespace mmnoma {

inline constexpr double kSpeedOfLight = 299'792'458.0;  // m/s

enum class FieldClass { Near, Far };

// Uniform linear array at the base station, elements along the x axis,
// centered on bs_position.
struct ArrayConfig {
  int n_antennas = 1;
  double element_spacing = 0.0;  // meters; defaults to lambda/2 in make()
  double carrier_freq = 28e9;    // Hz
  double wavelength = 0.0;       // meters, = c / carrier_freq
  Eigen::Vector2d bs_position = Eigen::Vector2d::Zero();

  static ArrayConfig make(int n_antennas, double carrier_freq,
                          double element_spacing = 0.0,
                          Eigen::Vector2d bs_position = Eigen::Vector2d::Zero());

  void validate() const;

  // Position of element m, m in [0, n_antennas).
  Eigen::Vector2d element_position(int m) const;
};

struct UserProfile {
  int id = 0;
  Eigen::Vector2d position = Eigen::Vector2d::Zero();
  double distance = 0.0;        // to bs_position
  double mobility_speed = 0.0;  // m/s, 0 = static
  double traffic_weight = 1.0;  // in (0, 1]
  FieldClass field_class = FieldClass::Near;
};

// Complex channel between one user and the BS array.
// Near field: coeffs are eta-scaled unit-modulus phase terms, gain = eta.
// Far field: coeffs are raw CN(0,1) fading taps, gain = 1/d^s (applied
// downstream wherever the path loss enters a power expression).
struct ChannelVector {
  Eigen::VectorXcd coeffs;
  double gain = 1.0;
  int owner = -1;
};

double rayleigh_distance(const ArrayConfig& array, double d);

FieldClass classify_user(const UserProfile& user, const ArrayConfig& array,
                         double d0);

ChannelVector near_field_channel(const UserProfile& user,
                                 const ArrayConfig& array);

ChannelVector far_field_channel(const UserProfile& user,
                                const ArrayConfig& array,
                                double path_loss_exp, RandomStream& rng);

// Drops users uniformly over the annulus [min_distance, cell_radius] around
// the BS, fills mobility/traffic draws and the near/far classification.
std::vector<UserProfile> drop_users(int count, double cell_radius,
                                    double min_distance,
                                    const ArrayConfig& array, double d0,
                                    RandomStream& rng);

}  // namespace mmnoma
