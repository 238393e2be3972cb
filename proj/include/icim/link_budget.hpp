#pragma once

#include "icim/scheduling.hpp"

namespace icim {

/// Received powers are expressed in units of the receiver noise power, so a
/// user at distance r transmitting p watts arrives with SNR gain * p * r^-beta.
struct LinkBudget {
  double gain = 1.0;  // C / sigma^2 in 1/W
  double p_max_w = 1.0;
  double p0_w = 0.0;
  bool power_control = false;

  /// P_max C / sigma^2.
  double kbar() const { return p_max_w * gain; }
  PowerControl power() const { return {p_max_w, p0_w}; }
  double transmit_power(double r, double beta) const;
  double received(double r, double beta) const;
  void validate() const;

  /// C given as a loss in dB, noise as a PSD in dBm/Hz over a bandwidth,
  /// P_0 in dBm.
  static LinkBudget from_db(double pathloss_db, double noise_psd_dbm_hz, double bandwidth_hz, double p_max_w,
                            double p0_dbm, bool power_control);
};

double dbm_to_watt(double dbm);
double db_to_linear(double db);

}  // namespace icim
