#include "chembalance/balance/plan.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <unordered_set>

#include "chembalance/error.hpp"

namespace chembalance::balance {

namespace {

struct Gap {
  int rank;
  double amount;
};

std::vector<Gap> sorted_gaps(std::span<const double> loads, double mean, int sign) {
  std::vector<Gap> gaps;
  for (std::size_t r = 0; r < loads.size(); ++r) {
    const double d = sign * (loads[r] - mean);
    if (d > 0.0) gaps.push_back({static_cast<int>(r), d});
  }
  std::stable_sort(gaps.begin(), gaps.end(), [](const Gap& a, const Gap& b) {
    if (a.amount != b.amount) return a.amount > b.amount;
    return a.rank < b.rank;
  });
  return gaps;
}

}  // namespace

std::vector<TransferBudget> plan_budgets(std::span<const double> loads, double theta) {
  std::vector<TransferBudget> out;
  if (loads.size() < 2) return out;
  for (double l : loads) {
    if (!(l >= 0.0) || !std::isfinite(l)) {
      throw Error("plan_budgets: loads must be finite and non-negative");
    }
  }
  const double mean =
      std::accumulate(loads.begin(), loads.end(), 0.0) / static_cast<double>(loads.size());
  if (mean <= 0.0) return out;

  const auto surplus = sorted_gaps(loads, mean, +1);
  const auto deficit = sorted_gaps(loads, mean, -1);
  std::size_t i = 0;
  std::size_t j = 0;
  double rem_s = surplus.empty() ? 0.0 : surplus[0].amount;
  double rem_d = deficit.empty() ? 0.0 : deficit[0].amount;
  while (i < surplus.size() && j < deficit.size()) {
    const double amount = std::min(rem_s, rem_d);
    if (amount > theta * mean) {
      out.push_back({surplus[i].rank, deficit[j].rank, amount});
    }
    const bool sender_done = rem_s <= rem_d;
    const bool receiver_done = rem_d <= rem_s;
    rem_s -= amount;
    rem_d -= amount;
    if (sender_done && ++i < surplus.size()) rem_s = surplus[i].amount;
    if (receiver_done && ++j < deficit.size()) rem_d = deficit[j].amount;
  }
  return out;
}

std::vector<std::vector<CellId>> select_problems(int rank,
                                                 std::span<const TransferBudget> budgets,
                                                 std::span<const CostEntry> local_costs) {
  std::vector<CostEntry> order(local_costs.begin(), local_costs.end());
  std::stable_sort(order.begin(), order.end(), [](const CostEntry& a, const CostEntry& b) {
    if (a.cost != b.cost) return a.cost > b.cost;
    return a.cell_id < b.cell_id;
  });
  std::vector<bool> taken(order.size(), false);

  std::vector<std::vector<CellId>> out;
  for (const auto& b : budgets) {
    if (b.from_rank != rank) continue;
    std::vector<CellId> cells;
    double remaining = b.amount;
    for (std::size_t k = 0; k < order.size() && remaining > 0.0; ++k) {
      if (taken[k] || order[k].cost <= 0.0 || order[k].cost > remaining) continue;
      taken[k] = true;
      remaining -= order[k].cost;
      cells.push_back(order[k].cell_id);
    }
    out.push_back(std::move(cells));
  }
  return out;
}

BalancePlan compute_plan(std::span<const double> loads,
                         std::span<const std::vector<CostEntry>> costs, double theta) {
  if (costs.size() != loads.size()) {
    throw Error("compute_plan: one cost list per worker is required");
  }
  const auto budgets = plan_budgets(loads, theta);
  std::vector<std::size_t> cursor(loads.size(), 0);
  std::vector<std::vector<std::vector<CellId>>> selected(loads.size());
  for (std::size_t r = 0; r < loads.size(); ++r) {
    selected[r] = select_problems(static_cast<int>(r), budgets, costs[r]);
  }

  BalancePlan plan;
  for (const auto& b : budgets) {
    auto& cells = selected[b.from_rank][cursor[b.from_rank]++];
    if (cells.empty()) continue;
    Transfer t{b.from_rank, b.to_rank, std::move(cells), 0.0};
    std::unordered_set<CellId> ids(t.cell_ids.begin(), t.cell_ids.end());
    for (const auto& c : costs[b.from_rank]) {
      if (ids.contains(c.cell_id)) t.total_cost += c.cost;
    }
    plan.transfers.push_back(std::move(t));
  }
  return plan;
}

LoadVector apply_plan(std::span<const double> loads, const BalancePlan& plan) {
  LoadVector out(loads.begin(), loads.end());
  for (const auto& t : plan.transfers) {
    out.at(t.from_rank) -= t.total_cost;
    out.at(t.to_rank) += t.total_cost;
  }
  return out;
}

double imbalance_ratio(std::span<const double> busy_times) {
  if (busy_times.empty()) throw Error("imbalance_ratio: no workers");
  double sum = 0.0;
  double peak = 0.0;
  for (double t : busy_times) {
    if (t < 0.0) throw Error("imbalance_ratio: negative busy time");
    sum += t;
    peak = std::max(peak, t);
  }
  if (sum == 0.0) return 1.0;
  return peak / (sum / static_cast<double>(busy_times.size()));
}

}  // namespace chembalance::balance
