#include "icim/link_budget.hpp"

#include <cmath>

#include "icim/error.hpp"

namespace icim {

double dbm_to_watt(double dbm) { return std::pow(10.0, dbm / 10.0) * 1e-3; }
double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

double LinkBudget::transmit_power(double r, double beta) const {
  return power_control ? power().transmit_power(r, beta) : p_max_w;
}

double LinkBudget::received(double r, double beta) const {
  return gain * transmit_power(r, beta) * std::pow(r, -beta);
}

void LinkBudget::validate() const {
  if (!(gain > 0.0) || !std::isfinite(gain)) throw DomainError("link gain must be positive");
  if (!(p_max_w > 0.0)) throw DomainError("P_max must be positive");
  if (power_control && !(p0_w > 0.0)) throw DomainError("power control needs a positive P_0");
}

LinkBudget LinkBudget::from_db(double pathloss_db, double noise_psd_dbm_hz, double bandwidth_hz, double p_max_w,
                               double p0_dbm, bool power_control) {
  if (!(bandwidth_hz > 0.0)) throw DomainError("bandwidth must be positive");
  const double noise_w = dbm_to_watt(noise_psd_dbm_hz) * bandwidth_hz;
  LinkBudget b;
  b.gain = db_to_linear(-pathloss_db) / noise_w;
  b.p_max_w = p_max_w;
  b.p0_w = dbm_to_watt(p0_dbm);
  b.power_control = power_control;
  b.validate();
  return b;
}

}  // namespace icim
