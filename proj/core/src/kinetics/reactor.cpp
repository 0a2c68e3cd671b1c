#include "chembalance/kinetics/reactor.hpp"

#include <cmath>

#include "chembalance/constants.hpp"

namespace chembalance::kinetics {

namespace {

constexpr double R = constants::gas_constant;
constexpr double K = constants::kmol_m3_per_mol_cm3;

inline double ipow(double x, int n) noexcept {
  double r = 1.0;
  for (int i = 0; i < n; ++i) r *= x;
  return r;
}

inline double ipow_signed(double x, int n) noexcept {
  return n >= 0 ? ipow(x, n) : 1.0 / ipow(x, -n);
}

// Product of c^nu over terms, and its derivative with respect to the
// concentration of term `skip` (computed without dividing by c).
inline double mass_action(const std::vector<StoichTerm>& terms,
                          const std::vector<double>& c) noexcept {
  double p = 1.0;
  for (const auto& t : terms) p *= ipow(c[t.species], t.coefficient);
  return p;
}

inline double mass_action_derivative(const std::vector<StoichTerm>& terms,
                                     const std::vector<double>& c,
                                     std::size_t which) noexcept {
  double p = 1.0;
  for (std::size_t k = 0; k < terms.size(); ++k) {
    const auto& t = terms[k];
    if (k == which) {
      p *= t.coefficient * ipow(c[t.species], t.coefficient - 1);
    } else {
      p *= ipow(c[t.species], t.coefficient);
    }
  }
  return p;
}

}  // namespace

ConstantPressureReactor::ConstantPressureReactor(const Mechanism& mech,
                                                 double pressure)
    : mech_(&mech), pressure_(pressure) {
  const std::size_t n = mech.n_species();
  const std::size_t nr = mech.n_reactions();
  y_.resize(n);
  conc_.resize(n);
  thermo_.resize(n);
  kf_.resize(nr);
  kr_.resize(nr);
  dlnkf_dt_.resize(nr);
  dlnkr_dt_.resize(nr);
  q_.resize(nr);
  wdot_.resize(n);
  dq_dc_.resize(nr * n);
  dq_dt_c_.resize(nr);
  dwdot_dt_.resize(n);
  dwdot_dy_.resize(n * n);
}

void ConstantPressureReactor::evaluate_mixture(std::span<const double> state) {
  const std::size_t n = mech_->n_species();
  const auto& w = mech_->molecular_weights();
  temperature_ = state[0];
  double sum = 0.0;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    y_[i] = state[i + 1];
    sum += y_[i];
  }
  y_[n - 1] = 1.0 - sum;

  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += y_[i] / w[i];
  inv_mean_weight_ = s;
  density_ = pressure_ / (R * temperature_ * s);
  total_conc_ = pressure_ / (R * temperature_) / K;
  for (std::size_t i = 0; i < n; ++i)
    conc_[i] = total_conc_ * std::max(y_[i], 0.0) / (w[i] * s);

  reduced_thermo_all(*mech_, temperature_, thermo_);
}

void ConstantPressureReactor::evaluate_progress(bool with_derivatives) {
  const std::size_t n = mech_->n_species();
  const auto& reactions = mech_->reactions();
  const double T = temperature_;
  const double c_ref = constants::one_atm / (R * T) / K;

  std::fill(wdot_.begin(), wdot_.end(), 0.0);
  for (std::size_t r = 0; r < reactions.size(); ++r) {
    const auto& rx = reactions[r];
    const double kf = rx.pre_exponential * std::pow(T, rx.temperature_exponent) *
                      std::exp(-rx.activation_temperature / T);
    const double dlnkf = (rx.temperature_exponent + rx.activation_temperature / T) / T;
    double kr = 0.0;
    double dlnkr = 0.0;
    if (rx.reversible) {
      double dg = 0.0;  // sum nu (h/RT - s/R) = -ln Kp
      double dh = 0.0;  // sum nu h/RT
      for (const auto& t : rx.products) {
        dg += t.coefficient * (thermo_[t.species].h_over_rt - thermo_[t.species].s_over_r);
        dh += t.coefficient * thermo_[t.species].h_over_rt;
      }
      for (const auto& t : rx.reactants) {
        dg -= t.coefficient * (thermo_[t.species].h_over_rt - thermo_[t.species].s_over_r);
        dh -= t.coefficient * thermo_[t.species].h_over_rt;
      }
      const int dnu = rx.delta_nu();
      const double kc = std::exp(-dg) * ipow_signed(c_ref, dnu);
      kr = kf / kc;
      dlnkr = dlnkf - (dh - dnu) / T;
    }
    kf_[r] = kf;
    kr_[r] = kr;
    dlnkf_dt_[r] = dlnkf;
    dlnkr_dt_[r] = dlnkr;

    const double fwd = mass_action(rx.reactants, conc_);
    const double rev = rx.reversible ? mass_action(rx.products, conc_) : 0.0;
    double m = 1.0;
    if (rx.has_third_body()) {
      m = 0.0;
      for (std::size_t k = 0; k < n; ++k) m += rx.third_body_efficiencies[k] * conc_[k];
    }
    const double net = kf * fwd - kr * rev;
    q_[r] = m * net;

    if (with_derivatives) {
      dq_dt_c_[r] = m * (kf * dlnkf * fwd - kr * dlnkr * rev);
      double* row = dq_dc_.data() + r * n;
      std::fill(row, row + n, 0.0);
      for (std::size_t k = 0; k < rx.reactants.size(); ++k)
        row[rx.reactants[k].species] +=
            m * kf * mass_action_derivative(rx.reactants, conc_, k);
      if (rx.reversible) {
        for (std::size_t k = 0; k < rx.products.size(); ++k)
          row[rx.products[k].species] -=
              m * kr * mass_action_derivative(rx.products, conc_, k);
      }
      if (rx.has_third_body()) {
        for (std::size_t k = 0; k < n; ++k) row[k] += rx.third_body_efficiencies[k] * net;
      }
    }

    for (const auto& t : rx.products) wdot_[t.species] += t.coefficient * q_[r];
    for (const auto& t : rx.reactants) wdot_[t.species] -= t.coefficient * q_[r];
  }
}

void ConstantPressureReactor::production_rates(std::span<const double> state,
                                               std::span<double> wdot) {
  evaluate_mixture(state);
  evaluate_progress(false);
  std::copy(wdot_.begin(), wdot_.end(), wdot.begin());
}

void ConstantPressureReactor::rhs(std::span<const double> state,
                                  std::span<double> dstate) {
  evaluate_mixture(state);
  evaluate_progress(false);
  const std::size_t n = mech_->n_species();
  const auto& w = mech_->molecular_weights();
  const double T = temperature_;

  double cp_mass = 0.0;
  double heat = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    cp_mass += y_[i] * thermo_[i].cp_over_r * R / w[i];
    heat += thermo_[i].h_over_rt * R * T * wdot_[i];
  }
  heat *= K;
  dstate[0] = -heat / (density_ * cp_mass);
  for (std::size_t i = 0; i + 1 < n; ++i)
    dstate[i + 1] = K * wdot_[i] * w[i] / density_;
}

void ConstantPressureReactor::jacobian(std::span<const double> state,
                                       DenseMatrix& jac) {
  evaluate_mixture(state);
  evaluate_progress(true);
  const std::size_t n = mech_->n_species();
  const std::size_t nr = mech_->n_reactions();
  const auto& w = mech_->molecular_weights();
  const auto& reactions = mech_->reactions();
  const double T = temperature_;
  const double rho = density_;
  const double s = inv_mean_weight_;
  if (jac.size() != n) jac.resize(n);

  std::fill(dwdot_dt_.begin(), dwdot_dt_.end(), 0.0);
  std::fill(dwdot_dy_.begin(), dwdot_dy_.end(), 0.0);

  // c_k = Pc Y_k^+ / (W_k S): dc_k/dT = -c_k/T,
  // dc_k/dY_j = delta_kj [Y_j >= 0] Pc/(W_j S) - c_k/(W_j S).
  std::vector<double>& dq_dy = scratch_;
  dq_dy.resize(n);
  for (std::size_t r = 0; r < nr; ++r) {
    const double* row = dq_dc_.data() + r * n;
    double g = 0.0;
    for (std::size_t k = 0; k < n; ++k) g += row[k] * conc_[k];
    const double dq_dt = dq_dt_c_[r] - g / T;
    for (std::size_t j = 0; j < n; ++j) {
      const double direct = y_[j] >= 0.0 ? row[j] * total_conc_ : 0.0;
      dq_dy[j] = (direct - g) / (w[j] * s);
    }
    const auto& rx = reactions[r];
    auto scatter = [&](std::size_t i, double nu) {
      dwdot_dt_[i] += nu * dq_dt;
      double* out = dwdot_dy_.data() + i * n;
      for (std::size_t j = 0; j < n; ++j) out[j] += nu * dq_dy[j];
    };
    for (const auto& t : rx.products) scatter(t.species, t.coefficient);
    for (const auto& t : rx.reactants) scatter(t.species, -t.coefficient);
  }

  double cp_mass = 0.0;
  double dcp_mass_dt = 0.0;
  double heat = 0.0;
  double dheat_dt = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double cp_i = thermo_[i].cp_over_r * R;
    const double h_i = thermo_[i].h_over_rt * R * T;
    cp_mass += y_[i] * cp_i / w[i];
    dcp_mass_dt += y_[i] * thermo_[i].dcp_over_r_dt * R / w[i];
    heat += h_i * wdot_[i];
    dheat_dt += cp_i * wdot_[i] + h_i * dwdot_dt_[i];
  }
  heat *= K;
  dheat_dt *= K;
  const double d = rho * cp_mass;
  const double dd_dt = -d / T + rho * dcp_mass_dt;

  // Temperature row, full-Y columns first, then fold in the implied species.
  std::vector<double>& t_row = scratch2_;
  t_row.resize(n);
  for (std::size_t j = 0; j < n; ++j) {
    double dheat = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      dheat += thermo_[i].h_over_rt * R * T * dwdot_dy_[i * n + j];
    dheat *= K;
    const double dd = -d / (w[j] * s) + rho * thermo_[j].cp_over_r * R / w[j];
    t_row[j] = -dheat / d + heat * dd / (d * d);
  }
  jac(0, 0) = -dheat_dt / d + heat * dd_dt / (d * d);
  for (std::size_t j = 0; j + 1 < n; ++j) jac(0, j + 1) = t_row[j] - t_row[n - 1];

  for (std::size_t i = 0; i + 1 < n; ++i) {
    const double scale = K * w[i] / rho;
    jac(i + 1, 0) = scale * (dwdot_dt_[i] + wdot_[i] / T);
    const double* dy = dwdot_dy_.data() + i * n;
    const double last = dy[n - 1] + wdot_[i] / (w[n - 1] * s);
    for (std::size_t j = 0; j + 1 < n; ++j) {
      const double full = dy[j] + wdot_[i] / (w[j] * s);
      jac(i + 1, j + 1) = scale * (full - last);
    }
  }
}

std::vector<double> rhs(const Mechanism& mech, const CompositionVector& phi,
                        double p) {
  ConstantPressureReactor reactor(mech, p);
  const auto state = phi.to_state();
  std::vector<double> out(state.size());
  reactor.rhs(state, out);
  return out;
}

DenseMatrix analytical_jacobian(const Mechanism& mech,
                                const CompositionVector& phi, double p) {
  ConstantPressureReactor reactor(mech, p);
  DenseMatrix jac(mech.state_size());
  reactor.jacobian(phi.to_state(), jac);
  return jac;
}

DenseMatrix fd_jacobian(const Mechanism& mech, const CompositionVector& phi,
                        double p, double eta, double floor,
                        std::size_t* rhs_counter) {
  ConstantPressureReactor reactor(mech, p);
  const auto state = phi.to_state();
  return fd_jacobian(
      [&](std::span<const double> y, std::span<double> f) {
        if (rhs_counter) ++*rhs_counter;
        reactor.rhs(y, f);
      },
      std::span<const double>(state), eta, floor);
}

}  // namespace chembalance::kinetics
