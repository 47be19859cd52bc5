#include "mulab/dynamics.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "mulab/csv.hpp"
#include "mulab/cli.hpp"

namespace mulab::dynamics {

MapKind::MapKind(MapFamily family, double param) : family_(family), param_(param) {
  if (!(param > 0.0))
    throw std::invalid_argument("map parameter must be > 0, got " +
                                csv::format_double(param));
}

std::string MapKind::name() const {
  switch (family_) {
    case MapFamily::Logistic: return "logistic";
    case MapFamily::Incursive: return "incursive";
    case MapFamily::DoubleContingency: return "double-contingency";
    case MapFamily::Interaction: return "interaction";
    case MapFamily::SelfOrganization: return "self-organization";
    case MapFamily::Organization: return "organization";
  }
  return "?";
}

MapKind MapKind::from_name(const std::string& name, double param) {
  if (name == "logistic") return logistic(param);
  if (name == "incursive") return incursive(param);
  if (name == "double-contingency") return double_contingency(param);
  if (name == "interaction") return interaction(param);
  if (name == "self-organization") return self_organization(param);
  if (name == "organization") return organization(param);
  throw std::invalid_argument("unknown map: " + name);
}

RootPolicy RootPolicy::random_sign(double p_plus) {
  if (!(p_plus >= 0.0 && p_plus <= 1.0))
    throw std::invalid_argument("p_plus must lie in [0,1]");
  return {Kind::RandomSign, p_plus};
}

std::string to_string(VanishCause cause) {
  switch (cause) {
    case VanishCause::NegativeRadicand: return "negative_radicand";
    case VanishCause::NegativeDenominator: return "negative_denominator";
    case VanishCause::NoRealRoot: return "no_real_root";
  }
  return "?";
}

double step_logistic(double x_prev, double a) { return a * x_prev * (1.0 - x_prev); }

double step_incursive(double x_prev, double a) {
  const double den = 1.0 + a * x_prev;
  if (den == 0.0)
    throw DegenerateDenominator("1 + a*x_prev == 0 at x_prev = " +
                                csv::format_double(x_prev));
  return a * x_prev / den;
}

StepOutcome step_double_contingency(double x_t, double a, Sign choice) {
  const double disc = 1.0 - 4.0 * x_t / a;
  if (disc < 0.0) return StepOutcome::vanished(VanishCause::NoRealRoot);
  // Larger root directly, smaller via Vieta (root product = x_t/a); the naive
  // (1 - sqrt(disc))/2 cancels badly for x_t near zero.
  const double big = 0.5 * (1.0 + std::sqrt(disc));
  if (choice == Sign::Plus) return StepOutcome::next(big);
  return StepOutcome::next(x_t / a / big);
}

StepOutcome step_interaction(double x_t, double b, Sign choice) {
  const double rad = x_t / b;
  if (rad < 0.0) return StepOutcome::vanished(VanishCause::NegativeRadicand);
  const double root = std::sqrt(rad);
  return StepOutcome::next(choice == Sign::Plus ? 1.0 + root : 1.0 - root);
}

double step_self_organization(double x_t, double c) {
  if (x_t < 0.0)
    throw NegativeState("self-organization state went negative: " +
                        csv::format_double(x_t));
  return 1.0 - std::cbrt(x_t / c);
}

StepOutcome step_organization(double x_t, double d, Sign choice) {
  if (x_t < 0.0) return StepOutcome::vanished(VanishCause::NegativeRadicand);
  // x_t = 1 divides by zero; treated as the limit of the x_t > 1 case.
  if (x_t >= 1.0) return StepOutcome::vanished(VanishCause::NegativeDenominator);
  const double root = std::sqrt(x_t / (d * (1.0 - x_t)));
  return StepOutcome::next(choice == Sign::Plus ? 1.0 + root : 1.0 - root);
}

namespace {

Sign draw_sign(SplitMix64& rng, const RootPolicy& policy) {
  switch (policy.kind) {
    case RootPolicy::Kind::AlwaysPlus: return Sign::Plus;
    case RootPolicy::Kind::AlwaysMinus: return Sign::Minus;
    case RootPolicy::Kind::RandomSign: break;
  }
  return rng.uniform01() < policy.p_plus ? Sign::Plus : Sign::Minus;
}

// One transition of the configured map; total function, stepper faults map to
// the nearest vanish cause (negative self-organization state: the cube-root
// radicand x/c is negative; incursive zero denominator).
StepOutcome next_state(const MapKind& map, double x, SplitMix64& rng,
                       const RootPolicy& policy) {
  switch (map.family()) {
    case MapFamily::Logistic:
      return StepOutcome::next(step_logistic(x, map.param()));
    case MapFamily::Incursive:
      if (1.0 + map.param() * x == 0.0)
        return StepOutcome::vanished(VanishCause::NegativeDenominator);
      return StepOutcome::next(step_incursive(x, map.param()));
    case MapFamily::DoubleContingency:
      return step_double_contingency(x, map.param(), draw_sign(rng, policy));
    case MapFamily::Interaction:
      return step_interaction(x, map.param(), draw_sign(rng, policy));
    case MapFamily::SelfOrganization:
      if (x < 0.0) return StepOutcome::vanished(VanishCause::NegativeRadicand);
      return StepOutcome::next(step_self_organization(x, map.param()));
    case MapFamily::Organization:
      return step_organization(x, map.param(), draw_sign(rng, policy));
  }
  return StepOutcome::vanished(VanishCause::NoRealRoot);  // unreachable
}

void validate(const SimConfig& config) {
  if (config.steps < 1) throw std::invalid_argument("steps must be >= 1");
  if (config.root_policy.kind == RootPolicy::Kind::RandomSign &&
      !(config.root_policy.p_plus >= 0.0 && config.root_policy.p_plus <= 1.0))
    throw std::invalid_argument("p_plus must lie in [0,1]");
}

}  // namespace

Trajectory simulate(const SimConfig& config) {
  validate(config);
  Trajectory out;
  out.states.reserve(static_cast<std::size_t>(
      std::min<std::uint64_t>(config.steps + 1, 1u << 20)));
  out.states.push_back(config.x0);
  SplitMix64 rng(config.seed);
  double x = config.x0;
  for (std::uint64_t t = 0; t < config.steps; ++t) {
    const StepOutcome step = next_state(config.map, x, rng, config.root_policy);
    if (!step.ok()) {
      out.vanish = Vanish{t, step.cause()};
      return out;
    }
    x = step.value();
    out.states.push_back(x);
  }
  return out;
}

std::optional<Vanish> simulate_lifetime(const SimConfig& config) {
  validate(config);
  SplitMix64 rng(config.seed);
  double x = config.x0;
  for (std::uint64_t t = 0; t < config.steps; ++t) {
    const StepOutcome step = next_state(config.map, x, rng, config.root_policy);
    if (!step.ok()) return Vanish{t, step.cause()};
    x = step.value();
  }
  return std::nullopt;
}

namespace {

std::vector<SurvivalStats> sweep_impl(const MapKind& map_family,
                                      std::span<const double> grid,
                                      int runs_per_point, std::uint64_t base_seed,
                                      std::uint64_t steps_cap, double x0,
                                      const RootPolicy& policy, bool parallel) {
  if (grid.empty()) throw std::invalid_argument("parameter grid is empty");
  if (runs_per_point < 1) throw std::invalid_argument("runs_per_point must be >= 1");

  std::vector<SurvivalStats> out;
  out.reserve(grid.size());
  for (double value : grid) {
    const MapKind map = map_family.with_param(value);
    std::vector<std::optional<Vanish>> slots(static_cast<std::size_t>(runs_per_point));
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 16) if (parallel)
#endif
    for (int run = 0; run < runs_per_point; ++run) {
      SimConfig cfg{map, x0, steps_cap, base_seed + static_cast<std::uint64_t>(run),
                    policy};
      slots[static_cast<std::size_t>(run)] = simulate_lifetime(cfg);
    }
    (void)parallel;

    SurvivalStats stats;
    stats.parameter_value = value;
    stats.n_runs = runs_per_point;
    stats.run_outcomes.reserve(slots.size());
    double lifetime_sum = 0.0;
    for (const auto& slot : slots) {
      if (slot) {
        stats.termination_steps.push_back(slot->at_step);
        stats.run_outcomes.push_back(slot->at_step);
        lifetime_sum += static_cast<double>(slot->at_step);
      } else {
        stats.run_outcomes.push_back(std::nullopt);
      }
    }
    const auto terminated = stats.termination_steps.size();
    stats.fraction_terminated =
        static_cast<double>(terminated) / static_cast<double>(runs_per_point);
    stats.mean_lifetime = terminated == 0
                              ? std::numeric_limits<double>::quiet_NaN()
                              : lifetime_sum / static_cast<double>(terminated);
    out.push_back(std::move(stats));
  }
  return out;
}

}  // namespace

std::vector<SurvivalStats> sweep(const MapKind& map_family,
                                 std::span<const double> parameter_grid,
                                 int runs_per_point, std::uint64_t base_seed,
                                 std::uint64_t steps_cap, double x0,
                                 const RootPolicy& policy) {
  return sweep_impl(map_family, parameter_grid, runs_per_point, base_seed, steps_cap,
                    x0, policy, true);
}

std::vector<SurvivalStats> sweep_serial(const MapKind& map_family,
                                        std::span<const double> parameter_grid,
                                        int runs_per_point, std::uint64_t base_seed,
                                        std::uint64_t steps_cap, double x0,
                                        const RootPolicy& policy) {
  return sweep_impl(map_family, parameter_grid, runs_per_point, base_seed, steps_cap,
                    x0, policy, false);
}

namespace {

std::string policy_string(const RootPolicy& policy) {
  switch (policy.kind) {
    case RootPolicy::Kind::AlwaysPlus: return "plus";
    case RootPolicy::Kind::AlwaysMinus: return "minus";
    case RootPolicy::Kind::RandomSign: break;
  }
  return "random";
}

void provenance_comment(std::ostringstream& os, const MapKind& map,
                        const RootPolicy& policy) {
  os << "# mulab " << cli::kVersion << "\n";
  os << "# map=" << map.name() << " param=" << csv::format_double(map.param())
     << " policy=" << policy_string(policy)
     << " p_plus=" << csv::format_double(policy.p_plus);
}

}  // namespace

std::string trajectory_csv(const Trajectory& trajectory, const SimConfig& config) {
  std::ostringstream os;
  provenance_comment(os, config.map, config.root_policy);
  os << " x0=" << csv::format_double(config.x0) << " steps=" << config.steps
     << " seed=" << config.seed << "\n";
  os << "t,x,event\n";
  for (std::size_t t = 0; t < trajectory.states.size(); ++t) {
    os << t << ',' << csv::format_double(trajectory.states[t]) << ',';
    if (trajectory.vanish && trajectory.vanish->at_step == t)
      os << "vanished:" << to_string(trajectory.vanish->cause);
    os << '\n';
  }
  return os.str();
}

std::string sweep_csv(const std::vector<SurvivalStats>& stats,
                      const MapKind& map_family, int runs_per_point,
                      std::uint64_t base_seed, std::uint64_t steps_cap, double x0,
                      const RootPolicy& policy) {
  std::ostringstream os;
  provenance_comment(os, map_family, policy);
  os << " x0=" << csv::format_double(x0) << " runs=" << runs_per_point
     << " base_seed=" << base_seed << " cap=" << steps_cap << "\n";
  os << "param,run,termination_step\n";
  for (const auto& point : stats) {
    for (std::size_t run = 0; run < point.run_outcomes.size(); ++run) {
      os << csv::format_double(point.parameter_value) << ',' << run << ',';
      if (point.run_outcomes[run]) os << *point.run_outcomes[run];
      os << '\n';
    }
  }
  return os.str();
}

std::string sweep_summary_json(const std::vector<SurvivalStats>& stats,
                               const MapKind& map_family, int runs_per_point,
                               std::uint64_t base_seed, std::uint64_t steps_cap,
                               double x0, const RootPolicy& policy) {
  nlohmann::json j;
  j["provenance"] = {{"tool", "mulab"},
                     {"version", cli::kVersion},
                     {"map", map_family.name()},
                     {"policy", policy_string(policy)},
                     {"p_plus", policy.p_plus},
                     {"x0", x0},
                     {"runs_per_point", runs_per_point},
                     {"base_seed", base_seed},
                     {"steps_cap", steps_cap},
                     {"seed_scheme", "base_seed + run_index"}};
  nlohmann::json points = nlohmann::json::array();
  for (const auto& point : stats) {
    nlohmann::json p;
    p["parameter_value"] = point.parameter_value;
    p["n_runs"] = point.n_runs;
    p["fraction_terminated"] = point.fraction_terminated;
    if (std::isnan(point.mean_lifetime))
      p["mean_lifetime"] = nullptr;
    else
      p["mean_lifetime"] = point.mean_lifetime;
    p["termination_steps"] = point.termination_steps;
    points.push_back(std::move(p));
  }
  j["points"] = std::move(points);
  return j.dump(2);
}

}  // namespace mulab::dynamics
