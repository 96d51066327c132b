#include "lcasched/lca.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "lcasched/error.hpp"

namespace lcasched::lca {

void LcaParams::validate() const {
  if (league_size < 4 || league_size % 2 != 0) {
    throw InvalidParameter("league size must be an even integer >= 4, got " +
                           std::to_string(league_size));
  }
  if (seasons < 1) throw InvalidParameter("seasons must be positive");
  if (!(change_prob > 0.0 && change_prob < 1.0)) {
    throw InvalidParameter("change probability must lie in (0, 1)");
  }
  if (!(retreat_coeff >= 0.0) || !(approach_coeff >= 0.0) || !std::isfinite(retreat_coeff) ||
      !std::isfinite(approach_coeff)) {
    throw InvalidParameter("retreat and approach coefficients must be finite and >= 0");
  }
  if (retreat_coeff == 0.0 && approach_coeff == 0.0) {
    throw InvalidParameter("retreat and approach coefficients cannot both be zero");
  }
  if (max_evaluations && *max_evaluations == 0) {
    throw InvalidParameter("evaluation budget must be positive");
  }
}

std::uint64_t LcaParams::full_run_evaluations() const {
  const auto l = static_cast<std::uint64_t>(league_size);
  return l + static_cast<std::uint64_t>(seasons) * (l - 1) * l;
}

BoxDomain::BoxDomain(std::vector<double> lower, std::vector<double> upper)
    : lower_(std::move(lower)), upper_(std::move(upper)) {
  if (lower_.empty()) throw InvalidParameter("domain dimension must be positive");
  if (lower_.size() != upper_.size()) {
    throw InvalidParameter("domain bounds differ in length");
  }
  for (std::size_t d = 0; d < lower_.size(); ++d) {
    if (!std::isfinite(lower_[d]) || !std::isfinite(upper_[d]) || !(lower_[d] < upper_[d])) {
      throw InvalidParameter("domain requires finite lower < upper in dimension " +
                             std::to_string(d));
    }
  }
}

BoxDomain BoxDomain::cube(std::size_t dimension, double lo, double hi) {
  return {std::vector<double>(dimension, lo), std::vector<double>(dimension, hi)};
}

double BoxDomain::clamp(std::size_t d, double value) const {
  return std::clamp(value, lower_[d], upper_[d]);
}

bool BoxDomain::contains(std::span<const double> x) const {
  if (x.size() != dimension()) return false;
  for (std::size_t d = 0; d < x.size(); ++d) {
    if (!(x[d] >= lower_[d] && x[d] <= upper_[d])) return false;
  }
  return true;
}

LeagueSchedule::LeagueSchedule(std::vector<std::vector<Match>> weeks) : weeks_(std::move(weeks)) {
  league_size_ = weeks_.empty() ? 0 : static_cast<int>(weeks_.front().size() * 2);
  opponents_.assign(weeks_.size() * static_cast<std::size_t>(league_size_), -1);
  for (std::size_t w = 0; w < weeks_.size(); ++w) {
    if (weeks_[w].size() * 2 != static_cast<std::size_t>(league_size_)) {
      throw InvalidInput("every week must hold L/2 matches");
    }
    for (auto [a, b] : weeks_[w]) {
      if (a < 0 || b < 0 || a >= league_size_ || b >= league_size_ || a == b) {
        throw InvalidInput("match references an invalid team");
      }
      const std::size_t base = w * static_cast<std::size_t>(league_size_);
      if (opponents_[base + a] != -1 || opponents_[base + b] != -1) {
        throw InvalidInput("team scheduled twice in week " + std::to_string(w));
      }
      opponents_[base + a] = b;
      opponents_[base + b] = a;
    }
  }
}

LeagueSchedule generate_league_schedule(int league_size) {
  if (league_size < 2 || league_size % 2 != 0) {
    throw InvalidParameter("league size must be even and >= 2, got " +
                           std::to_string(league_size));
  }
  // Team L-1 stays fixed while 0..L-2 rotate one slot per week.
  const int rotating = league_size - 1;
  std::vector<std::vector<Match>> weeks(static_cast<std::size_t>(rotating));
  for (int w = 0; w < rotating; ++w) {
    auto& week = weeks[static_cast<std::size_t>(w)];
    week.reserve(static_cast<std::size_t>(league_size / 2));
    week.emplace_back(w, league_size - 1);
    for (int k = 1; k < league_size / 2; ++k) {
      const int a = (w + k) % rotating;
      const int b = (w - k + rotating) % rotating;
      week.emplace_back(std::min(a, b), std::max(a, b));
    }
  }
  return LeagueSchedule(std::move(weeks));
}

double win_probability(double f_i, double f_j, double f_ideal) {
  if (f_ideal > std::min(f_i, f_j)) {
    throw InvalidParameter("ideal fitness exceeds a team's fitness");
  }
  const double denom = (f_i - f_ideal) + (f_j - f_ideal);
  if (denom == 0.0) return 0.5;
  return (f_j - f_ideal) / denom;
}

WeekOutcome play_week(std::span<const Match> fixtures, std::span<const double> fitness,
                      double f_ideal, Rng& rng, std::size_t week_index) {
  WeekOutcome outcome;
  outcome.week_index = week_index;
  outcome.results.resize(fitness.size());
  for (auto [i, j] : fixtures) {
    const auto ui = static_cast<std::size_t>(i);
    const auto uj = static_cast<std::size_t>(j);
    const double p = win_probability(fitness[ui], fitness[uj], f_ideal);
    const bool i_wins = rng.uniform01() < p;
    outcome.results[ui] = {j, i_wins};
    outcome.results[uj] = {i, !i_wins};
  }
  return outcome;
}

int change_count_at(double r, int n, double change_prob) {
  if (n < 1) throw InvalidParameter("dimension must be >= 1");
  if (!(change_prob > 0.0 && change_prob < 1.0)) {
    throw InvalidParameter("change probability must lie in (0, 1)");
  }
  if (!(r > 0.0 && r < 1.0)) throw InvalidParameter("r must lie in (0, 1)");
  const double keep = 1.0 - change_prob;
  const double tail = 1.0 - std::pow(keep, n);
  const double q = std::ceil(std::log1p(-r * tail) / std::log(keep));
  if (!(q >= 1.0)) return 1;
  return q >= static_cast<double>(n) ? n : static_cast<int>(q);
}

int change_count(Rng& rng, int n, double change_prob) {
  return change_count_at(rng.uniform_open(), n, change_prob);
}

std::vector<std::size_t> select_changed_indices(Rng& rng, int n, int q) {
  if (n < 1 || q < 1 || q > n) {
    throw InvalidParameter("change count must lie in [1, n]");
  }
  // Floyd's sampling: q draws regardless of n.
  std::vector<std::size_t> picked;
  picked.reserve(static_cast<std::size_t>(q));
  for (auto j = static_cast<std::size_t>(n - q); j < static_cast<std::size_t>(n); ++j) {
    const auto t = static_cast<std::size_t>(rng.below(j + 1));
    const auto pos = std::lower_bound(picked.begin(), picked.end(), t);
    if (pos != picked.end() && *pos == t) {
      picked.insert(std::lower_bound(picked.begin(), picked.end(), j), j);
    } else {
      picked.insert(pos, t);
    }
  }
  return picked;
}

std::vector<bool> select_change_mask(Rng& rng, int n, int q) {
  std::vector<bool> mask(static_cast<std::size_t>(std::max(n, 0)), false);
  for (auto d : select_changed_indices(rng, n, q)) mask[d] = true;
  return mask;
}

SwotDraws draw_swot(Rng& rng, int n, double change_prob) {
  SwotDraws draws;
  draws.changed = select_changed_indices(rng, n, change_count(rng, n, change_prob));
  draws.r1.reserve(draws.changed.size());
  draws.r2.reserve(draws.changed.size());
  for (std::size_t k = 0; k < draws.changed.size(); ++k) {
    draws.r1.push_back(rng.uniform01());
    draws.r2.push_back(rng.uniform01());
  }
  return draws;
}

std::vector<double> apply_swot(const Team& team, std::span<const double> opponent_prev,
                               std::span<const double> rival_prev, bool i_won, bool k_won,
                               double retreat_coeff, double approach_coeff,
                               const SwotDraws& draws, const BoxDomain& domain) {
  const std::size_t n = domain.dimension();
  if (team.formation.size() != n || team.best_formation.size() != n ||
      opponent_prev.size() != n || rival_prev.size() != n) {
    throw InvalidParameter("formation dimension does not match the domain");
  }
  if (draws.r1.size() != draws.changed.size() || draws.r2.size() != draws.changed.size()) {
    throw InvalidParameter("SWOT draws are misaligned");
  }
  std::vector<double> next = team.best_formation;
  const auto& x = team.formation;
  for (std::size_t k = 0; k < draws.changed.size(); ++k) {
    const std::size_t d = draws.changed[k];
    if (d >= n) throw InvalidParameter("changed component out of range");
    const double tau_k = k_won ? approach_coeff * (rival_prev[d] - x[d])
                               : retreat_coeff * (x[d] - rival_prev[d]);
    const double tau_l = i_won ? retreat_coeff * (x[d] - opponent_prev[d])
                               : approach_coeff * (opponent_prev[d] - x[d]);
    next[d] = domain.clamp(d, team.best_formation[d] + draws.r1[k] * tau_k + draws.r2[k] * tau_l);
  }
  return next;
}

std::vector<double> swot_update(const Team& team, std::span<const double> opponent_prev,
                                std::span<const double> rival_prev, bool i_won, bool k_won,
                                const LcaParams& params, const BoxDomain& domain, Rng& rng) {
  const auto draws = draw_swot(rng, static_cast<int>(domain.dimension()), params.change_prob);
  return apply_swot(team, opponent_prev, rival_prev, i_won, k_won, params.retreat_coeff,
                    params.approach_coeff, draws, domain);
}

namespace {

class League {
 public:
  League(const Objective& objective, const BoxDomain& domain, const LcaParams& params)
      : objective_(objective),
        domain_(domain),
        params_(params),
        budget_(params.max_evaluations.value_or(std::numeric_limits<std::uint64_t>::max())),
        rng_(params.seed),
        schedule_(generate_league_schedule(params.league_size)) {}

  LeagueState run() {
    initialize();
    const std::size_t weeks_per_season = schedule_.week_count();
    const std::uint64_t total_weeks =
        static_cast<std::uint64_t>(params_.seasons) * weeks_per_season;
    for (std::uint64_t t = 0; t < total_weeks && state_.evaluations_used < budget_; ++t) {
      play_and_update(static_cast<std::size_t>(t % weeks_per_season),
                      static_cast<std::size_t>((t + 1) % weeks_per_season), t);
    }
    return std::move(state_);
  }

 private:
  double evaluate(std::span<const double> x) {
    ++state_.evaluations_used;
    const double f = objective_(x);
    if (std::isnan(f)) throw InvalidInput("objective returned NaN");
    if (f < state_.ideal_fitness) state_.ideal_fitness = f;
    return f;
  }

  void initialize() {
    const auto l = static_cast<std::size_t>(params_.league_size);
    state_.ideal_fitness = std::numeric_limits<double>::infinity();
    state_.teams.resize(l);
    for (auto& team : state_.teams) {
      team.formation.resize(domain_.dimension());
      for (std::size_t d = 0; d < domain_.dimension(); ++d) {
        team.formation[d] = rng_.uniform(domain_.lower()[d], domain_.upper()[d]);
      }
    }
    for (auto& team : state_.teams) {
      team.fitness = evaluate(team.formation);
      team.best_formation = team.formation;
      team.best_fitness = team.fitness;
    }
    state_.history.push_back(state_.ideal_fitness);
  }

  void play_and_update(std::size_t week, std::size_t next_week, std::uint64_t t) {
    auto& teams = state_.teams;
    std::vector<double> fitness(teams.size());
    for (std::size_t i = 0; i < teams.size(); ++i) fitness[i] = teams[i].fitness;
    const WeekOutcome outcome =
        play_week(schedule_.week(week), fitness, state_.ideal_fitness, rng_, t);

    // Every team plans against the formations that played this week.
    std::vector<std::vector<double>> planned;
    planned.reserve(teams.size());
    for (std::size_t i = 0; i < teams.size(); ++i) {
      const int self = static_cast<int>(i);
      const int next_opponent = schedule_.opponent(next_week, self);
      const int l = outcome.opponent(self);
      const int k = outcome.opponent(next_opponent);
      planned.push_back(swot_update(teams[i], teams[static_cast<std::size_t>(l)].formation,
                                    teams[static_cast<std::size_t>(k)].formation,
                                    outcome.won(self), outcome.won(k), params_, domain_, rng_));
    }
    for (std::size_t i = 0; i < teams.size() && state_.evaluations_used < budget_; ++i) {
      auto& team = teams[i];
      team.formation = std::move(planned[i]);
      team.fitness = evaluate(team.formation);
      if (team.fitness < team.best_fitness) {
        team.best_fitness = team.fitness;
        team.best_formation = team.formation;
      }
    }
    state_.history.push_back(state_.ideal_fitness);
  }

  const Objective& objective_;
  const BoxDomain& domain_;
  const LcaParams& params_;
  std::uint64_t budget_;
  Rng rng_;
  LeagueSchedule schedule_;
  LeagueState state_;
};

}  // namespace

OptimizeResult optimize(const Objective& objective, const BoxDomain& domain,
                        const LcaParams& params) {
  params.validate();
  if (params.max_evaluations && *params.max_evaluations < static_cast<std::uint64_t>(params.league_size)) {
    throw InvalidParameter("evaluation budget is smaller than the league size");
  }
  if (!objective) throw InvalidParameter("objective is empty");

  LeagueState state = League(objective, domain, params).run();

  OptimizeResult result;
  const auto best = std::min_element(
      state.teams.begin(), state.teams.end(),
      [](const Team& a, const Team& b) { return a.best_fitness < b.best_fitness; });
  result.best = best->best_formation;
  result.best_fitness = best->best_fitness;
  result.history = std::move(state.history);
  result.evaluations = state.evaluations_used;
  return result;
}

}  // namespace lcasched::lca
