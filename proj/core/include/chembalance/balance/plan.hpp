#pragma once

#include <span>
#include <vector>

#include "chembalance/balance/problem.hpp"

namespace chembalance::balance {

/// Per-worker total estimated cost, indexed by rank.
using LoadVector = std::vector<double>;

constexpr double default_churn_threshold = 0.02;

/// Cost budget moving from one rank to another, derived from loads alone.
struct TransferBudget {
  int from_rank = 0;
  int to_rank = 0;
  double amount = 0.0;

  friend bool operator==(const TransferBudget&, const TransferBudget&) = default;
};

struct CostEntry {
  CellId cell_id = 0;
  double cost = 0.0;
};

struct Transfer {
  int from_rank = 0;
  int to_rank = 0;
  std::vector<CellId> cell_ids;
  double total_cost = 0.0;

  friend bool operator==(const Transfer&, const Transfer&) = default;
};

struct BalancePlan {
  std::vector<Transfer> transfers;

  bool empty() const noexcept { return transfers.empty(); }
  friend bool operator==(const BalancePlan&, const BalancePlan&) = default;
};

/// Greedy surplus/deficit pairing. Budgets at or below theta * mean are dropped.
std::vector<TransferBudget> plan_budgets(std::span<const double> loads,
                                         double theta = default_churn_threshold);

/// Sender-side selection: highest cost first, each problem taken while it fits
/// the remaining budget. Returns one cell list per budget of `rank`, in order.
std::vector<std::vector<CellId>> select_problems(
    int rank, std::span<const TransferBudget> budgets,
    std::span<const CostEntry> local_costs);

/// Full plan from loads and every worker's cost list. Transfers that end up
/// with no selected cells are omitted.
BalancePlan compute_plan(std::span<const double> loads,
                         std::span<const std::vector<CostEntry>> costs,
                         double theta = default_churn_threshold);

/// Loads after moving the planned costs.
LoadVector apply_plan(std::span<const double> loads, const BalancePlan& plan);

/// max / mean; 1 when every time is zero.
double imbalance_ratio(std::span<const double> busy_times);

}  // namespace chembalance::balance
