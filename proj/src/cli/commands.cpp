#include "icim/cli/commands.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <optional>

#include <json.hpp>

#include "icim/error.hpp"
#include "icim/interference.hpp"
#include "icim/metrics.hpp"
#include "icim/montecarlo.hpp"

#ifndef ICIM_VERSION
#define ICIM_VERSION "0.0.0"
#endif

namespace icim::cli {

const char* const kToolVersion = ICIM_VERSION;

std::string to_string(Mode mode) {
  switch (mode) {
    case Mode::analytic: return "analytic";
    case Mode::montecarlo: return "montecarlo";
    case Mode::compare: return "analytic+montecarlo";
  }
  return "unknown";
}

std::vector<std::string> command_names() {
  return {"pmf", "interferer-pmf", "ici-cdf", "mgf", "outage", "capacity", "fairness", "power-savings"};
}

namespace {

const std::string kPower = "sigma^2";  // powers are in units of the receiver noise

bool analytic(Mode m) { return m != Mode::montecarlo; }
bool simulated(Mode m) { return m != Mode::analytic; }

// Pieces of the configuration shared by the commands.
struct Setup {
  const RunConfig& cfg;
  RingPartition partition;
  CellLayout layout;
  LinkBudget budget;
  Scheduler scheduler;
  FadingModel signal;
  double bin_width;

  explicit Setup(const RunConfig& c)
      : cfg(c),
        partition(c.partition()),
        layout(c.layout()),
        budget(c.budget()),
        scheduler(c.scheduler()),
        signal(c.signal_fading()),
        bin_width(c.number("bin_width_m")) {}

  LocationPmf pmf() const { return cfg.location_pmf(); }
  InterfererDistancePmf distances() const { return cfg.interferer_distances(); }
  CumulativeIci ici() const { return cfg.ici(); }
  SignalPowerModel x0() const { return cfg.signal(); }
};

double accuracy_estimate(const std::function<double()>& f, bool& failed) {
  try {
    return f();
  } catch (const AccuracyError& e) {
    failed = true;
    return e.estimate();
  }
}

std::vector<double> repeat(double v, size_t n) { return std::vector<double>(n, v); }

CommandResult pmf_command(const RunConfig& cfg, const Setup& s, Mode mode) {
  const auto& p = s.partition;
  OutputTable t(std::vector<Column>{{"ring", "-"}, {"radius", "m"}, {"users", "-"}});
  for (int k = 1; k <= p.ring_count(); ++k) t.add_row({double(k), p.outer(k), double(p.users[k - 1])});
  std::vector<double> analytic_probs;
  if (analytic(mode)) {
    analytic_probs = s.pmf().probs;
    t.add_column({"probability", "-"}, analytic_probs);
  }
  if (simulated(mode)) {
    const auto mc = simulate_scheduling(cfg.trial_config());
    t.add_column({"probability_mc", "-"}, mc.rings.masses);
    if (mode == Mode::compare) {
      const auto d = compare_distributions(mc.rings, analytic_probs);
      t.add_column({"tv", "-"}, repeat(d.total_variation, t.rows().size()));
      t.add_column({"sup_distance", "-"}, repeat(d.sup_distance, t.rows().size()));
    }
  }
  return {t, 0};
}

CommandResult interferer_pmf_command(const RunConfig& cfg, const Setup& s, Mode mode) {
  OutputTable t(std::vector<Column>{{"distance", "m"}});
  const double lower = s.layout.intersite - s.layout.radius;
  const int bins = static_cast<int>(std::ceil(2.0 * s.layout.radius / s.bin_width - 1e-12));
  for (int m = 0; m < bins; ++m) t.add_row({lower + (m + 0.5) * s.bin_width});
  std::vector<double> probs;
  if (analytic(mode)) {
    probs = s.distances().probs;
    t.add_column({"probability", "-"}, probs);
  }
  if (simulated(mode)) {
    const auto mc = simulate_scheduling(cfg.trial_config());
    t.add_column({"probability_mc", "-"}, mc.distances.masses);
    if (mode == Mode::compare) {
      const auto d = compare_distributions(mc.distances, probs);
      t.add_column({"tv", "-"}, repeat(d.total_variation, t.rows().size()));
      t.add_column({"sup_distance", "-"}, repeat(d.sup_distance, t.rows().size()));
    }
  }
  return {t, 0};
}

// Geometric grid from mean / 30 to 10 mean.
std::vector<double> power_grid(double mean, int n) {
  std::vector<double> x;
  for (int i = 0; i < n; ++i) x.push_back(mean * std::pow(10.0, -1.5 + 2.5 * i / (n - 1)));
  return x;
}

CommandResult ici_cdf_command(const RunConfig& cfg, const Setup& s, Mode mode) {
  const int n = static_cast<int>(cfg.integer("cdf_points"));
  std::optional<CumulativeIci> ici;
  std::optional<IciSample> mc;
  if (analytic(mode)) ici = s.ici();
  if (simulated(mode)) mc = simulate_ici(cfg.trial_config());
  const double mean = ici ? ici->mean() : mc->mean_interference();
  if (!(mean > 0.0)) throw ConfigError("the interference is identically zero (no interferers)");
  const auto grid = power_grid(mean, n);
  OutputTable t(std::vector<Column>{{"interference", kPower}});
  for (double x : grid) t.add_row({x});
  CommandResult r;
  std::vector<double> analytic_cdf;
  if (ici) {
    std::vector<double> flags;
    for (double x : grid) {
      bool failed = false;
      analytic_cdf.push_back(accuracy_estimate([&] { return ici->cdf(x).probability; }, failed));
      flags.push_back(failed ? 1.0 : 0.0);
      if (failed) r.exit_code = 3;
    }
    t.add_column({"cdf", "-"}, analytic_cdf);
    t.add_column({"flag", "-"}, flags);
  }
  if (mc) {
    const auto emp = mc->distribution();
    std::vector<double> e;
    for (double x : grid) e.push_back(emp.cdf(x));
    t.add_column({"cdf_mc", "-"}, e);
    if (ici) {
      double sup = 0.0;
      for (size_t i = 0; i < e.size(); ++i) sup = std::max(sup, std::abs(e[i] - analytic_cdf[i]));
      t.add_column({"sup_distance", "-"}, repeat(sup, grid.size()));
    }
  }
  r.table = std::move(t);
  return r;
}

CommandResult mgf_command(const RunConfig& cfg, const Setup& s, Mode mode) {
  const int n = static_cast<int>(cfg.integer("mgf_points"));
  std::optional<CumulativeIci> ici;
  std::optional<IciSample> mc;
  if (analytic(mode)) ici = s.ici();
  if (simulated(mode)) mc = simulate_ici(cfg.trial_config());
  const double mean = ici ? ici->mean() : mc->mean_interference();
  if (!(mean > 0.0)) throw ConfigError("the interference is identically zero (no interferers)");
  // From t = -5 / E[Y] up to half the convergence limit (or 0.5 / E[Y]).
  double hi = 0.5 / mean;
  if (ici) hi = std::min(hi, 0.5 * ici->convergence_limit());
  std::vector<double> ts;
  for (int i = 0; i < n; ++i) ts.push_back(-5.0 / mean + (hi + 5.0 / mean) * i / (n - 1));
  OutputTable t(std::vector<Column>{{"t", "1/" + kPower}});
  for (double v : ts) t.add_row({v});
  std::vector<double> my;
  if (ici) {
    for (double v : ts) my.push_back(ici->mgf(v));
    t.add_column({"mgf", "-"}, my);
    if (ici->direction() == Direction::uplink) {
      std::vector<double> closed, quad;
      for (double v : ts) {
        closed.push_back(ici->single().mgf(v));
        quad.push_back(ici->single().mgf_quadrature(v));
      }
      t.add_column({"single_cell_mgf", "-"}, closed);
      t.add_column({"single_cell_mgf_quadrature", "-"}, quad);
    }
  }
  if (mc) {
    std::vector<double> e;
    for (double v : ts) e.push_back(mc->mgf(v));
    t.add_column({"mgf_mc", "-"}, e);
    if (ici) {
      std::vector<double> rel;
      for (size_t i = 0; i < e.size(); ++i) rel.push_back(std::abs(e[i] / my[i] - 1.0));
      t.add_column({"relative_difference", "-"}, rel);
    }
  }
  return {t, 0};
}

CommandResult outage_command(const RunConfig& cfg, const Setup& s, Mode mode) {
  const auto qs = cfg.numbers("thresholds");
  OutputTable t(std::vector<Column>{{"threshold", "-"}});
  for (double q : qs) t.add_row({q});
  CommandResult r;
  std::vector<double> analytic_out;
  if (analytic(mode)) {
    const auto x0 = s.x0();
    const auto ici = s.ici();
    std::vector<double> flags(qs.size(), 0.0);
    try {
      for (const auto& res : outage_curve(x0, ici, qs)) analytic_out.push_back(res.probability);
    } catch (const AccuracyError&) {
      // Redo point by point so only the failing thresholds are flagged.
      analytic_out.clear();
      for (size_t i = 0; i < qs.size(); ++i) {
        bool failed = false;
        analytic_out.push_back(
            accuracy_estimate([&] { return outage_probability(x0, ici, qs[i]).probability; }, failed));
        if (failed) {
          flags[i] = 1.0;
          r.exit_code = 3;
        }
      }
    }
    t.add_column({"outage", "-"}, analytic_out);
    t.add_column({"flag", "-"}, flags);
  }
  if (simulated(mode)) {
    const auto mc = simulate_ici(cfg.trial_config());
    std::vector<double> e;
    for (double q : qs) e.push_back(mc.outage(q));
    t.add_column({"outage_mc", "-"}, e);
    if (mode == Mode::compare) {
      double sup = 0.0;
      for (size_t i = 0; i < e.size(); ++i) sup = std::max(sup, std::abs(e[i] - analytic_out[i]));
      t.add_column({"max_abs_difference", "-"}, repeat(sup, qs.size()));
    }
  }
  r.table = std::move(t);
  return r;
}

CommandResult capacity_command(const RunConfig& cfg, const Setup& s, Mode mode) {
  const double noise = cfg.number("capacity_noise");
  OutputTable t(std::vector<Column>{{"users", "-"}});
  t.add_row({double(s.partition.user_count())});
  double value = 0.0;
  if (analytic(mode)) {
    CapacityConfig cc;
    cc.method = cfg.get("capacity_method") == "laguerre" ? CapacityMethod::laguerre : CapacityMethod::adaptive;
    cc.laguerre_order = static_cast<int>(cfg.integer("laguerre_order"));
    const auto res = ergodic_capacity(s.x0(), s.ici(), noise, cc);
    value = res.value;
    t.add_column({"capacity", "bit/s/Hz"}, {res.value});
    t.add_column({"error", "bit/s/Hz"}, {res.error});
  }
  if (simulated(mode)) {
    const double c = simulate_ici(cfg.trial_config()).capacity(noise);
    t.add_column({"capacity_mc", "bit/s/Hz"}, {c});
    if (mode == Mode::compare) t.add_column({"relative_difference", "-"}, {std::abs(value / c - 1.0)});
  }
  return {t, 0};
}

std::vector<double> simulated_slot_average(const RunConfig& cfg, int slots) {
  auto tc = cfg.trial_config();
  std::vector<double> avg(tc.partition.ring_count(), 0.0);
  const bool slotted = is_slotted(tc.scheduler.kind);
  if (!slotted) slots = 1;
  for (int w = 1; w <= slots; ++w) {
    if (slotted) tc.scheduler.slot = w;
    const auto m = simulate_scheduling(tc).rings.masses;
    for (size_t k = 0; k < avg.size(); ++k) avg[k] += m[k] / slots;
  }
  return avg;
}

CommandResult fairness_command(const RunConfig& cfg, const Setup& s, Mode mode) {
  const int slots = static_cast<int>(cfg.integer("slots"));
  OutputTable t(std::vector<Column>{{"users", "-"}});
  t.add_row({double(s.partition.user_count())});
  double value = 0.0;
  if (analytic(mode)) {
    value = scheme_fairness(s.scheduler, s.partition, s.signal, slots);
    t.add_column({"fairness", "-"}, {value});
  }
  if (simulated(mode)) {
    LocationPmf pmf{s.scheduler.kind, s.scheduler.slot, simulated_slot_average(cfg, slots), 0.0};
    const double f = average_fairness(pmf, s.partition);
    t.add_column({"fairness_mc", "-"}, {f});
    if (mode == Mode::compare) t.add_column({"abs_difference", "-"}, {std::abs(f - value)});
  }
  return {t, 0};
}

CommandResult power_savings_command(const RunConfig& cfg, const Setup& s, Mode mode) {
  if (!s.budget.power_control)
    throw ConfigError("power-savings needs power control (power_control = true or scheduler greedy-pc)");
  OutputTable t(std::vector<Column>{{"threshold_distance", "m"}});
  const auto power = s.budget.power();
  t.add_row({power.threshold(s.partition.beta)});
  double value = 0.0;
  if (analytic(mode)) {
    value = average_power_savings(s.pmf(), s.partition, power);
    t.add_column({"power_savings", "W"}, {value});
  }
  if (simulated(mode)) {
    const double p = simulate_scheduling(cfg.trial_config()).mean_power_saved;
    t.add_column({"power_savings_mc", "W"}, {p});
    if (mode == Mode::compare) t.add_column({"relative_difference", "-"}, {std::abs(value / p - 1.0)});
  }
  return {t, 0};
}

}  // namespace

CommandResult run_command(const std::string& command, const RunConfig& cfg, Mode mode) {
  using Runner = CommandResult (*)(const RunConfig&, const Setup&, Mode);
  static const std::map<std::string, Runner> runners = {
      {"pmf", pmf_command},         {"interferer-pmf", interferer_pmf_command},
      {"ici-cdf", ici_cdf_command}, {"mgf", mgf_command},
      {"outage", outage_command},   {"capacity", capacity_command},
      {"fairness", fairness_command}, {"power-savings", power_savings_command},
  };
  const auto it = runners.find(command);
  if (it == runners.end()) throw ConfigError("unknown command '" + command + "'");
  cfg.validate();
  const Setup setup(cfg);
  auto r = it->second(cfg, setup, mode);
  auto& md = r.table.metadata;
  md["command"] = command;
  md["method"] = to_string(mode);
  md["fingerprint"] = cfg.fingerprint();
  md["tool_version"] = kToolVersion;
  md["scheduler"] = to_string(setup.scheduler.kind);
  md["ring_count"] = std::to_string(setup.partition.ring_count());
  md["user_count"] = std::to_string(setup.partition.user_count());
  md["p_max_w"] = format_number(setup.budget.p_max_w);
  md["link_gain"] = format_number(setup.budget.gain);
  md["status"] = r.exit_code == 0 ? "ok" : "partial";
  if (simulated(mode)) md["rng"] = Philox4x32::name();
  r.table.config = cfg.values();
  return r;
}

int exit_code_for(const std::exception& e) {
  if (dynamic_cast<const ConfigError*>(&e) || dynamic_cast<const DomainError*>(&e)) return 2;
  if (dynamic_cast<const AccuracyError*>(&e) || dynamic_cast<const DivergenceError*>(&e)) return 3;
  if (dynamic_cast<const ComplexityError*>(&e)) return 4;
  return 1;
}

std::string error_object(const std::exception& e) {
  const int code = exit_code_for(e);
  const char* type = code == 2 ? "config" : code == 3 ? "accuracy" : code == 4 ? "complexity" : "internal";
  nlohmann::ordered_json j;
  j["error"] = {{"type", type}, {"exit_code", code}, {"message", e.what()}};
  if (const auto* a = dynamic_cast<const AccuracyError*>(&e)) {
    j["error"]["estimate"] = a->estimate();
    j["error"]["error_bound"] = a->error_bound();
  }
  return j.dump();
}

std::string partial_object(const OutputTable& t) {
  int flagged = 0;
  const bool has_flag = std::any_of(t.columns().begin(), t.columns().end(),
                                    [](const Column& c) { return c.name == "flag"; });
  if (has_flag)
    for (int i = 0; i < static_cast<int>(t.rows().size()); ++i) flagged += t.at(i, "flag") != 0.0;
  nlohmann::ordered_json j;
  j["error"] = {{"type", "accuracy"},
                {"exit_code", 3},
                {"message", "rows with flag = 1 missed the accuracy target"},
                {"flagged_rows", flagged}};
  return j.dump();
}

}  // namespace icim::cli
