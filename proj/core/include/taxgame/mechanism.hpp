#pragma once

#include <cstddef>
#include <vector>

// Taxation mechanism over payoff vectors: per-player income tax with
// exemptions, redistribution of the collected tax scaled by a budget
// factor, and the flat rate that aligns every player's post-tax payoff
// with social welfare.

namespace taxgame {

// Per-player tax exemptions e_i (payoff units) and tax rates r_i in [0,1].
struct TaxingRule {
  std::vector<double> exemptions;
  std::vector<double> rates;

  std::size_t num_players() const { return rates.size(); }

  // Same rate and exemption for everyone.
  static TaxingRule flat(std::size_t n_players, double rate, double exemption = 0.0);

  // Throws std::invalid_argument if sizes mismatch, N < 2, a rate is
  // outside [0,1], or any entry is non-finite.
  void validate() const;
};

// Budget factor beta > 0: fraction of collected tax that flows back to
// the players. beta = 1 is strict budget balance, beta < 1 leaves net
// revenue with the platform, beta > 1 is a subsidy.
struct BudgetPlan {
  double beta = 1.0;

  void validate() const;
};

using PayoffVector = std::vector<double>;

// Full accounting of one taxation pass at a fixed strategy profile.
struct TaxBreakdown {
  std::vector<double> taxes;            // t_i, negative = subsidy
  std::vector<double> redistributed;    // income received from others' taxes
  std::vector<double> taxed_payoffs;    // payoff - tax + redistributed
  double platform_net = 0.0;            // (1 - beta) * sum of taxes
};

// t_i = (u_i - e_i) * r_i. Negative taxable income yields a negative tax.
std::vector<double> income_tax(const PayoffVector& payoffs, const TaxingRule& rule);

// Each player receives beta/(N-1) times the sum of the other players' taxes.
std::vector<double> redistribute(const std::vector<double>& taxes, const BudgetPlan& plan);

// The tax/redistribute/settle pipeline in one call.
TaxBreakdown taxed_payoffs(const PayoffVector& payoffs, const TaxingRule& rule,
                           const BudgetPlan& plan);

// Closed form for a flat rate rho:
//   (1 - rho) * u_i + rho * a * sum_{j != i} u_j + rho * b_i
// with a = beta/(N-1) and b_i = e_i - a * sum_{j != i} e_j. Algebraically
// equal to the pipeline above; kept as a separate route so tests can
// compare the two.
std::vector<double> flat_rate_closed_form(const PayoffVector& payoffs, double rate,
                                          const std::vector<double>& exemptions,
                                          const BudgetPlan& plan);

// The unique flat rate (N-1)/(N-1+beta) that makes every game's taxed
// equilibrium socially efficient, for any exemptions.
double efficient_flat_rate(std::size_t n_players, const BudgetPlan& plan);

// Equal exemptions; under the efficient flat rate and beta = 1 every
// player ends up with an equal share of the realized welfare.
std::vector<double> maxmin_exemptions(std::size_t n_players, double omega);

// a = beta/(N-1), the redistribution share each player takes of any
// other player's tax.
double redistribution_share(std::size_t n_players, const BudgetPlan& plan);

// c = beta/(N-1+beta). Under the efficient flat rate the taxed payoff is
// c * W(s) - c * sum_j e_j + e_i at every profile s.
double welfare_coefficient(std::size_t n_players, const BudgetPlan& plan);

// b_i = e_i - a * sum_{j != i} e_j, the per-player constant of the flat
// rate closed form.
std::vector<double> exemption_offsets(const std::vector<double>& exemptions,
                                      const BudgetPlan& plan);

}  // namespace taxgame
