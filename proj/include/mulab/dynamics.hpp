#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mulab/errors.hpp"
#include "mulab/rng.hpp"

namespace mulab::dynamics {

// 1 + a*x_prev == 0 in the incursive update.
class DegenerateDenominator : public Error {
 public:
  explicit DegenerateDenominator(const std::string& msg)
      : Error("degenerate_denominator", msg) {}
};

// Negative state fed to the self-organization update.
class NegativeState : public Error {
 public:
  explicit NegativeState(const std::string& msg)
      : Error("negative_state", msg) {}
};

enum class MapFamily {
  Logistic,          // x' = a x (1 - x)
  Incursive,         // x = a x_prev (1 - x), solved: x' = a x / (1 + a x)
  DoubleContingency, // x = a x'(1 - x'), solved forward: x' = (1 +- sqrt(1 - 4x/a)) / 2
  Interaction,       // x = b (1 - x')^2, solved: x' = 1 +- sqrt(x / b)
  SelfOrganization,  // x = c (1 - x')^3, real root: x' = 1 - cbrt(x / c)
  Organization,      // x = d (1 - x')^2 (1 - x), solved: x' = 1 +- sqrt(x / (d (1 - x)))
};

// A map family together with its (strictly positive) parameter.
class MapKind {
 public:
  static MapKind logistic(double a) { return {MapFamily::Logistic, a}; }
  static MapKind incursive(double a) { return {MapFamily::Incursive, a}; }
  static MapKind double_contingency(double a) { return {MapFamily::DoubleContingency, a}; }
  static MapKind interaction(double b) { return {MapFamily::Interaction, b}; }
  static MapKind self_organization(double c) { return {MapFamily::SelfOrganization, c}; }
  static MapKind organization(double d) { return {MapFamily::Organization, d}; }

  MapFamily family() const noexcept { return family_; }
  double param() const noexcept { return param_; }

  // Same family, different parameter (sweep grids).
  MapKind with_param(double p) const { return {family_, p}; }

  std::string name() const;                            // "interaction", ...
  static MapKind from_name(const std::string& name, double param);

  // Whether each step consumes a +-/sign choice.
  bool needs_sign() const noexcept {
    return family_ == MapFamily::DoubleContingency ||
           family_ == MapFamily::Interaction ||
           family_ == MapFamily::Organization;
  }

 private:
  MapKind(MapFamily family, double param);
  MapFamily family_;
  double param_;
};

enum class Sign { Plus, Minus };

struct RootPolicy {
  enum class Kind { RandomSign, AlwaysPlus, AlwaysMinus };

  Kind kind = Kind::RandomSign;
  double p_plus = 0.5;  // probability of the plus branch under RandomSign

  static RootPolicy random_sign(double p_plus = 0.5);
  static RootPolicy always_plus() { return {Kind::AlwaysPlus, 1.0}; }
  static RootPolicy always_minus() { return {Kind::AlwaysMinus, 0.0}; }
};

struct SimConfig {
  MapKind map;
  double x0 = 0.0;
  std::uint64_t steps = 1;  // >= 1
  std::uint64_t seed = 0;
  RootPolicy root_policy{};
};

enum class VanishCause { NegativeRadicand, NegativeDenominator, NoRealRoot };

std::string to_string(VanishCause cause);  // "negative_radicand", ...

struct Vanish {
  std::uint64_t at_step = 0;  // index of the last recorded state
  VanishCause cause = VanishCause::NegativeRadicand;
};

struct Trajectory {
  std::vector<double> states;  // states[0] == x0; if vanished at k, size == k + 1
  std::optional<Vanish> vanish;

  bool completed() const noexcept { return !vanish.has_value(); }
};

// Either the next state or the cause that ends the trajectory.
class StepOutcome {
 public:
  static StepOutcome next(double x) { return StepOutcome(x, std::nullopt); }
  static StepOutcome vanished(VanishCause c) { return StepOutcome(0.0, c); }

  bool ok() const noexcept { return !cause_.has_value(); }
  double value() const noexcept { return value_; }
  VanishCause cause() const noexcept { return *cause_; }

 private:
  StepOutcome(double v, std::optional<VanishCause> c) : value_(v), cause_(c) {}
  double value_;
  std::optional<VanishCause> cause_;
};

// Single-step maps. Pure; parameter validity is the caller's contract
// (MapKind enforces it at construction).
double step_logistic(double x_prev, double a);

// Throws DegenerateDenominator when 1 + a*x_prev == 0.
double step_incursive(double x_prev, double a);

StepOutcome step_double_contingency(double x_t, double a, Sign choice);
StepOutcome step_interaction(double x_t, double b, Sign choice);

// Throws NegativeState when x_t < 0; complex roots of the cubic are never iterated.
double step_self_organization(double x_t, double c);

StepOutcome step_organization(double x_t, double d, Sign choice);

// Iterates the configured map from x0 for at most `steps` steps, drawing the
// +- branch from SplitMix64(seed) per RootPolicy at every step that requires a
// sign (the RNG advances only on such steps). Stops early with Vanished on
// NegativeRadicand / NegativeDenominator / NoRealRoot. Pure function of the
// config, bit-for-bit.
Trajectory simulate(const SimConfig& config);

// Same dynamics without recording states; cheap enough for caps of 1e6+.
std::optional<Vanish> simulate_lifetime(const SimConfig& config);

struct SurvivalStats {
  double parameter_value = 0.0;
  int n_runs = 0;
  std::vector<std::uint64_t> termination_steps;  // vanished runs, in run order
  double fraction_terminated = 0.0;
  double mean_lifetime = 0.0;  // NaN when nothing terminated

  // Run-indexed outcomes (empty = survived to the cap); termination_steps is
  // this with the gaps removed. Needed for the per-run CSV export.
  std::vector<std::optional<std::uint64_t>> run_outcomes;
};

// Runs `runs_per_point` trajectories per grid value with derived seeds
// seed(run j) = base_seed + j (same scheme at every grid point). The OpenMP
// path and the serial reference produce identical output: runs write into
// per-index slots and aggregation is a fixed-order pass over those slots.
std::vector<SurvivalStats> sweep(const MapKind& map_family,
                                 std::span<const double> parameter_grid,
                                 int runs_per_point, std::uint64_t base_seed,
                                 std::uint64_t steps_cap, double x0,
                                 const RootPolicy& policy);

// Serial reference implementation, kept for bitwise-equality tests and the
// benchmark target.
std::vector<SurvivalStats> sweep_serial(const MapKind& map_family,
                                        std::span<const double> parameter_grid,
                                        int runs_per_point, std::uint64_t base_seed,
                                        std::uint64_t steps_cap, double x0,
                                        const RootPolicy& policy);

// CSV with header t,x,event; event is "" or "vanished:<cause>" on the last
// row. A provenance comment block (version, full config) precedes the header.
std::string trajectory_csv(const Trajectory& trajectory, const SimConfig& config);

// CSV param,run,termination_step (empty step for survivors), same provenance
// comment block.
std::string sweep_csv(const std::vector<SurvivalStats>& stats,
                      const MapKind& map_family, int runs_per_point,
                      std::uint64_t base_seed, std::uint64_t steps_cap,
                      double x0, const RootPolicy& policy);

// JSON summary of SurvivalStats plus provenance.
std::string sweep_summary_json(const std::vector<SurvivalStats>& stats,
                               const MapKind& map_family, int runs_per_point,
                               std::uint64_t base_seed, std::uint64_t steps_cap,
                               double x0, const RootPolicy& policy);

}  // namespace mulab::dynamics
