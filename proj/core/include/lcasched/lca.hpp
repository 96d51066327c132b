#pragma once

// League Championship Algorithm: a population optimizer over box-bounded
// continuous domains. Teams hold formations (candidate vectors), play a
// single round-robin league each season, and rebuild their formation after
// every week from the outcome of their own match and of their next
// opponent's match. Minimization throughout.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "lcasched/rng.hpp"

namespace lcasched::lca {

struct LcaParams {
  int league_size = 6;           // L, even and >= 4
  int seasons = 660;             // S
  double change_prob = 0.5;      // p_c, in (0, 1)
  double retreat_coeff = 1.0;    // psi1
  double approach_coeff = 1.0;   // psi2
  std::uint64_t seed = 0;
  std::optional<std::uint64_t> max_evaluations;

  /// Throws InvalidParameter when any invariant is violated.
  void validate() const;

  /// Evaluations a full run performs when no budget cuts it short.
  std::uint64_t full_run_evaluations() const;
};

class BoxDomain {
 public:
  BoxDomain(std::vector<double> lower, std::vector<double> upper);

  /// [lo, hi]^n.
  static BoxDomain cube(std::size_t dimension, double lo, double hi);

  std::size_t dimension() const noexcept { return lower_.size(); }
  std::span<const double> lower() const noexcept { return lower_; }
  std::span<const double> upper() const noexcept { return upper_; }

  double clamp(std::size_t d, double value) const;
  bool contains(std::span<const double> x) const;

 private:
  std::vector<double> lower_;
  std::vector<double> upper_;
};

struct Team {
  std::vector<double> formation;
  double fitness = 0.0;
  std::vector<double> best_formation;
  double best_fitness = 0.0;
};

/// Unordered pairing, stored with first < second.
using Match = std::pair<int, int>;

/// Single round-robin fixture list: L-1 weeks of L/2 matches each.
class LeagueSchedule {
 public:
  explicit LeagueSchedule(std::vector<std::vector<Match>> weeks);

  int league_size() const noexcept { return league_size_; }
  std::size_t week_count() const noexcept { return weeks_.size(); }
  std::span<const Match> week(std::size_t w) const { return weeks_.at(w); }
  const std::vector<std::vector<Match>>& weeks() const noexcept { return weeks_; }

  /// Opponent of `team` in week `w`.
  int opponent(std::size_t w, int team) const {
    return opponents_[w * static_cast<std::size_t>(league_size_) + static_cast<std::size_t>(team)];
  }

 private:
  std::vector<std::vector<Match>> weeks_;
  std::vector<int> opponents_;
  int league_size_ = 0;
};

/// Circle-method fixtures. Deterministic; throws InvalidParameter unless L is even and >= 2.
LeagueSchedule generate_league_schedule(int league_size);

/// Probability that a team of fitness f_i beats one of fitness f_j, given the
/// ideal value f_ideal <= min(f_i, f_j):
///
///   p_i = (f_j - f_ideal) / (f_i + f_j - 2 f_ideal)
///
/// Returns 0.5 when both teams sit exactly at the ideal.
double win_probability(double f_i, double f_j, double f_ideal);

struct MatchResult {
  int opponent = -1;
  bool won = false;
};

struct WeekOutcome {
  std::size_t week_index = 0;
  std::vector<MatchResult> results;  // indexed by team

  bool won(int team) const { return results.at(static_cast<std::size_t>(team)).won; }
  int opponent(int team) const { return results.at(static_cast<std::size_t>(team)).opponent; }
};

/// Plays every fixture of one week. For match {i, j} one uniform draw u
/// decides it: i wins iff u < win_probability(f_i, f_j, f_ideal).
WeekOutcome play_week(std::span<const Match> fixtures, std::span<const double> fitness,
                      double f_ideal, Rng& rng, std::size_t week_index = 0);

/// Truncated-geometric number of changed components for uniform draw r in (0, 1):
///   q = max(1, ceil(ln(1 - r (1 - (1 - p_c)^n)) / ln(1 - p_c))), capped at n.
int change_count_at(double r, int n, double change_prob);
int change_count(Rng& rng, int n, double change_prob);

/// Sorted indices of q distinct components drawn uniformly from [0, n).
std::vector<std::size_t> select_changed_indices(Rng& rng, int n, int q);
std::vector<bool> select_change_mask(Rng& rng, int n, int q);

/// Random quantities consumed by one SWOT update: the changed components and
/// one (r1, r2) pair per changed component, aligned with `changed`.
struct SwotDraws {
  std::vector<std::size_t> changed;
  std::vector<double> r1;
  std::vector<double> r2;
};

SwotDraws draw_swot(Rng& rng, int n, double change_prob);

/// New formation for team i. `opponent_prev` (x_l) is whoever i just played;
/// `rival_prev` (x_k) is whoever i's next opponent just played. For each changed
/// component d:
///
///   tau_k = psi2 (x_k - x_i)  if k won,  else psi1 (x_i - x_k)
///   tau_l = psi1 (x_i - x_l)  if i won,  else psi2 (x_l - x_i)
///   x'_d  = clamp(B_d + r1 tau_k + r2 tau_l)
///
/// Untouched components copy B exactly.
std::vector<double> apply_swot(const Team& team, std::span<const double> opponent_prev,
                               std::span<const double> rival_prev, bool i_won, bool k_won,
                               double retreat_coeff, double approach_coeff,
                               const SwotDraws& draws, const BoxDomain& domain);

std::vector<double> swot_update(const Team& team, std::span<const double> opponent_prev,
                                std::span<const double> rival_prev, bool i_won, bool k_won,
                                const LcaParams& params, const BoxDomain& domain, Rng& rng);

/// Deterministic, side-effect free; lower is better.
using Objective = std::function<double(std::span<const double>)>;

struct LeagueState {
  std::vector<Team> teams;
  double ideal_fitness = 0.0;
  std::uint64_t evaluations_used = 0;
  /// history[0] is the ideal after initialization; history[t] after week t.
  std::vector<double> history;
};

struct OptimizeResult {
  std::vector<double> best;
  double best_fitness = 0.0;
  std::vector<double> history;
  std::uint64_t evaluations = 0;
};

OptimizeResult optimize(const Objective& objective, const BoxDomain& domain,
                        const LcaParams& params);

}  // namespace lcasched::lca
