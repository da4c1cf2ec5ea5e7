#include "taxgame/mechanism.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace taxgame {

namespace {

void require_finite(const std::vector<double>& v, const char* what) {
  for (double x : v) {
    if (!std::isfinite(x)) {
      throw std::invalid_argument(std::string(what) + " must be finite");
    }
  }
}

void require_matching(std::size_t n_payoffs, std::size_t n_rule) {
  if (n_payoffs != n_rule) {
    throw std::invalid_argument("payoff vector has " + std::to_string(n_payoffs) +
                                " entries but taxing rule covers " + std::to_string(n_rule) +
                                " players");
  }
}

}  // namespace

TaxingRule TaxingRule::flat(std::size_t n_players, double rate, double exemption) {
  return TaxingRule{std::vector<double>(n_players, exemption),
                    std::vector<double>(n_players, rate)};
}

void TaxingRule::validate() const {
  if (exemptions.size() != rates.size()) {
    throw std::invalid_argument("taxing rule: exemptions and rates must have equal length");
  }
  if (rates.size() < 2) {
    throw std::invalid_argument("taxing rule: at least 2 players required");
  }
  require_finite(exemptions, "taxing rule exemptions");
  require_finite(rates, "taxing rule rates");
  for (double r : rates) {
    if (r < 0.0 || r > 1.0) {
      throw std::invalid_argument("taxing rule: rates must lie in [0,1]");
    }
  }
}

void BudgetPlan::validate() const {
  if (!std::isfinite(beta) || beta <= 0.0) {
    throw std::invalid_argument("budget factor beta must be positive and finite");
  }
}

std::vector<double> income_tax(const PayoffVector& payoffs, const TaxingRule& rule) {
  rule.validate();
  require_matching(payoffs.size(), rule.num_players());
  std::vector<double> taxes(payoffs.size());
  for (std::size_t i = 0; i < payoffs.size(); ++i) {
    taxes[i] = (payoffs[i] - rule.exemptions[i]) * rule.rates[i];
  }
  return taxes;
}

std::vector<double> redistribute(const std::vector<double>& taxes, const BudgetPlan& plan) {
  plan.validate();
  const std::size_t n = taxes.size();
  if (n < 2) {
    throw std::invalid_argument("redistribution requires at least 2 players");
  }
  double total = 0.0;
  for (double t : taxes) total += t;
  const double share = plan.beta / static_cast<double>(n - 1);
  std::vector<double> income(n);
  for (std::size_t i = 0; i < n; ++i) {
    income[i] = share * (total - taxes[i]);
  }
  return income;
}

TaxBreakdown taxed_payoffs(const PayoffVector& payoffs, const TaxingRule& rule,
                           const BudgetPlan& plan) {
  TaxBreakdown out;
  out.taxes = income_tax(payoffs, rule);
  out.redistributed = redistribute(out.taxes, plan);
  out.taxed_payoffs.resize(payoffs.size());
  double total_tax = 0.0;
  for (std::size_t i = 0; i < payoffs.size(); ++i) {
    out.taxed_payoffs[i] = payoffs[i] - out.taxes[i] + out.redistributed[i];
    total_tax += out.taxes[i];
  }
  out.platform_net = (1.0 - plan.beta) * total_tax;
  return out;
}

std::vector<double> flat_rate_closed_form(const PayoffVector& payoffs, double rate,
                                          const std::vector<double>& exemptions,
                                          const BudgetPlan& plan) {
  plan.validate();
  require_matching(payoffs.size(), exemptions.size());
  const std::size_t n = payoffs.size();
  if (n < 2) {
    throw std::invalid_argument("flat rate closed form requires at least 2 players");
  }
  const double a = redistribution_share(n, plan);
  const std::vector<double> b = exemption_offsets(exemptions, plan);
  double payoff_total = 0.0;
  for (double u : payoffs) payoff_total += u;
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double others = payoff_total - payoffs[i];
    out[i] = (1.0 - rate) * payoffs[i] + rate * a * others + rate * b[i];
  }
  return out;
}

double efficient_flat_rate(std::size_t n_players, const BudgetPlan& plan) {
  plan.validate();
  if (n_players < 2) {
    throw std::invalid_argument("efficient flat rate requires at least 2 players");
  }
  const double m = static_cast<double>(n_players - 1);
  return m / (m + plan.beta);
}

std::vector<double> maxmin_exemptions(std::size_t n_players, double omega) {
  if (n_players < 2) {
    throw std::invalid_argument("maxmin exemptions require at least 2 players");
  }
  return std::vector<double>(n_players, omega);
}

double redistribution_share(std::size_t n_players, const BudgetPlan& plan) {
  plan.validate();
  if (n_players < 2) {
    throw std::invalid_argument("redistribution share requires at least 2 players");
  }
  return plan.beta / static_cast<double>(n_players - 1);
}

double welfare_coefficient(std::size_t n_players, const BudgetPlan& plan) {
  plan.validate();
  if (n_players < 2) {
    throw std::invalid_argument("welfare coefficient requires at least 2 players");
  }
  return plan.beta / (static_cast<double>(n_players - 1) + plan.beta);
}

std::vector<double> exemption_offsets(const std::vector<double>& exemptions,
                                      const BudgetPlan& plan) {
  const std::size_t n = exemptions.size();
  const double a = redistribution_share(n, plan);
  double total = 0.0;
  for (double e : exemptions) total += e;
  std::vector<double> b(n);
  for (std::size_t i = 0; i < n; ++i) {
    b[i] = exemptions[i] - a * (total - exemptions[i]);
  }
  return b;
}

}  // namespace taxgame
