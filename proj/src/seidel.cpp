#include "qhofer/seidel.hpp"

#include <omp.h>

#include <algorithm>

namespace qhofer {

namespace {

constexpr std::size_t kF = 2;

void require_open_unit(const Rational& a_squared) {
  if (a_squared <= 0 || a_squared >= 1) throw std::invalid_argument("a^2 must lie in (0, 1), got " + to_string(a_squared));
}

}  // namespace

OmegaFunctional blowup_omega(const Rational& a_squared) {
  require_open_unit(a_squared);
  return OmegaFunctional{{a_squared, 1 - a_squared}};
}

Rational seidel_delta(const Rational& a_squared) {
  require_open_unit(a_squared);
  Rational monotone = 1 - 3 * a_squared;
  if (monotone == 0)
    throw MonotoneError("a^2 = 1/3 gives a monotone form: delta = (1-a^2)^2/(12(1+a^2)(1-3a^2)) is singular");
  Rational one_minus = 1 - a_squared;
  return Rational(one_minus * one_minus / (12 * (1 + a_squared) * monotone));
}

SphereClass q_exponent() { return SphereClass({Rational(1, 2), Rational(1, 4)}); }

SphereClass monotone_direction() { return SphereClass({Rational(-2), Rational(1)}); }

QHElement q_element(const ManifoldModel& blowup) { return QHElement::term(blowup, kF, q_exponent()); }

SeidelElement psi(long k, const Rational& a_squared) {
  Rational delta = seidel_delta(a_squared);
  ManifoldModel model = model_blowup_cp2(a_squared);
  QHElement alpha = QHElement::term(model, kF, q_exponent() + delta * monotone_direction());
  return {k, a_squared, delta, power(model, alpha, k)};
}

Rational ell_plus_lower_bound(long k, const Rational& a_squared) {
  SeidelElement s = psi(k, a_squared);
  return valuation(s.value, blowup_omega(a_squared)).value();
}

Rational two_sided_bound(long k, const Rational& a_squared) {
  ManifoldModel model = model_blowup_cp2(a_squared);
  QHElement q = q_element(model);
  const OmegaFunctional& omega = model.omega();
  return valuation(power(model, q, k), omega).value() + valuation(power(model, q, -k), omega).value();
}

QPowerTable::QPowerTable(long k_max) : model_(model_blowup_cp2(Rational(1, 2))) {
  if (k_max < 0) throw std::invalid_argument("k_max must be nonnegative");
  const auto n = static_cast<std::size_t>(k_max) + 1;
  positive_.resize(n);
  negative_.resize(n);
  const QHElement q = q_element(model_);
  const QHElement q_inverse = invert_exact(model_, q);
  // The two chains are independent.
#pragma omp parallel sections
  {
#pragma omp section
    {
      positive_[0] = QHElement::unit(model_);
      for (std::size_t k = 1; k < n; ++k) positive_[k] = quantum_product(model_, positive_[k - 1], q);
    }
#pragma omp section
    {
      negative_[0] = QHElement::unit(model_);
      for (std::size_t k = 1; k < n; ++k) negative_[k] = quantum_product(model_, negative_[k - 1], q_inverse);
    }
  }
}

const QHElement& QPowerTable::operator[](long k) const {
  if (k > k_max() || -k > k_max()) throw std::out_of_range("power table holds |k| <= " + std::to_string(k_max()));
  return k >= 0 ? positive_[static_cast<std::size_t>(k)] : negative_[static_cast<std::size_t>(-k)];
}

namespace {

BoundRow bound_row(const QPowerTable& table, long k, const Rational& a_squared, const OmegaFunctional& omega) {
  BoundRow row;
  row.k = k;
  row.a_squared = a_squared;
  row.v_pos = valuation(table[k], omega).value();
  row.v_neg = valuation(table[-k], omega).value();
  row.bound = row.v_pos + row.v_neg;
  row.omega_f = 1 - a_squared;
  return row;
}

void check_sweep_range(const QPowerTable& table, long k_lo, long k_hi) {
  if (k_lo < 0 || k_hi < k_lo || k_hi > table.k_max()) throw std::invalid_argument("sweep range outside the power table");
}

}  // namespace

QkSweep qk_sweep_serial(const QPowerTable& table, long k_lo, long k_hi, const std::vector<Rational>& a_squared) {
  check_sweep_range(table, k_lo, k_hi);
  QkSweep out;
  for (const auto& a2 : a_squared) {
    OmegaFunctional omega = blowup_omega(a2);
    for (long k = k_lo; k <= k_hi; ++k) {
      out.rows.push_back(bound_row(table, k, a2, omega));
      out.all_hold = out.all_hold && out.rows.back().holds();
    }
  }
  return out;
}

QkSweep qk_sweep(const QPowerTable& table, long k_lo, long k_hi, const std::vector<Rational>& a_squared) {
  check_sweep_range(table, k_lo, k_hi);
  const long per_a2 = k_hi - k_lo + 1;
  const long cells = per_a2 * static_cast<long>(a_squared.size());
  std::vector<OmegaFunctional> omegas;
  for (const auto& a2 : a_squared) omegas.push_back(blowup_omega(a2));
  QkSweep out;
  out.rows.resize(static_cast<std::size_t>(cells));
  bool all_hold = true;
#pragma omp parallel for schedule(static) reduction(&& : all_hold)
  for (long c = 0; c < cells; ++c) {
    const auto a = static_cast<std::size_t>(c / per_a2);
    BoundRow row = bound_row(table, k_lo + c % per_a2, a_squared[a], omegas[a]);
    all_hold = all_hold && row.holds();
    out.rows[static_cast<std::size_t>(c)] = std::move(row);
  }
  out.all_hold = all_hold;
  return out;
}

PeriodicSlope periodic_slope(const std::vector<Rational>& values, long lo, long hi) {
  if (lo < 0 || hi <= lo || hi >= static_cast<long>(values.size())) throw std::invalid_argument("slope window out of range");
  auto v = [&](long k) -> const Rational& { return values[static_cast<std::size_t>(k)]; };
  auto diff = [&](long k) { return Rational(v(k + 1) - v(k)); };
  const long count = hi - lo;
  for (long period = 1; period <= count / 2; ++period) {
    bool ok = true;
    for (long k = lo; ok && k + period < hi; ++k) ok = diff(k) == diff(k + period);
    if (ok) return {true, period, Rational((v(lo + period) - v(lo)) / period)};
  }
  return {false, 0, Rational((v(hi) - v(lo)) / count)};
}

GrowthTable growth_table(long k_max, const Rational& a_squared) {
  return growth_table(QPowerTable(k_max), k_max, a_squared, k_max / 2, k_max);
}

GrowthTable growth_table(const QPowerTable& table, long k_max, const Rational& a_squared, long window_lo,
                         long window_hi) {
  if (k_max < 1) throw std::invalid_argument("k_max must be at least 1");
  if (k_max > table.k_max()) throw std::invalid_argument("k_max exceeds the power table");
  OmegaFunctional omega = blowup_omega(a_squared);
  std::optional<Rational> psi_shift;  // omega(delta (F - 2E)) per unit k
  if (3 * a_squared != 1) psi_shift = seidel_delta(a_squared) * omega(monotone_direction());

  GrowthTable out;
  out.a_squared = a_squared;
  std::vector<Rational> v_neg(static_cast<std::size_t>(k_max) + 1);
  v_neg[0] = 0;
  for (long k = 1; k <= k_max; ++k) {
    GrowthRow row;
    row.k = k;
    row.v_pos = valuation(table[k], omega).value();
    row.v_neg = valuation(table[-k], omega).value();
    row.omega_f = 1 - a_squared;
    if (psi_shift) row.psi_per_k = Rational((row.v_pos + k * *psi_shift) / k);
    v_neg[static_cast<std::size_t>(k)] = row.v_neg;
    out.rows.push_back(std::move(row));
  }

  GrowthSummary& s = out.summary;
  s.window_lo = std::max<long>(1, window_lo);
  s.window_hi = window_hi;
  s.neg_slope = periodic_slope(v_neg, s.window_lo, s.window_hi);
  s.predicted_slope = 3 * a_squared < 1 ? Rational(omega(SphereClass({Rational(-1, 2), Rational(1, 4)})) / 3) : Rational(0);
  s.slope_matches = s.neg_slope.periodic && s.neg_slope.slope == s.predicted_slope;

  s.max_v_neg = out.rows.front().v_neg;
  s.argmax_v_neg = 1;
  for (const auto& row : out.rows)
    if (row.v_neg > s.max_v_neg) {
      s.max_v_neg = row.v_neg;
      s.argmax_v_neg = row.k;
    }

  Rational one_minus = 1 - a_squared;
  s.asymptotic_bound = one_minus * one_minus / (12 * (1 + a_squared));
  if (psi_shift) {
    for (const auto& row : out.rows)
      if (!s.min_psi_per_k || *row.psi_per_k < *s.min_psi_per_k) {
        s.min_psi_per_k = row.psi_per_k;
        s.argmin_psi_per_k = row.k;
      }
    s.psi_bound_holds = *s.min_psi_per_k >= s.asymptotic_bound;
  }
  return out;
}

RTildeEstimate r_tilde_estimate(const Rational& a_squared, long k_max) {
  return r_tilde_estimate(QPowerTable(k_max), a_squared, k_max);
}

RTildeEstimate r_tilde_estimate(const QPowerTable& table, const Rational& a_squared, long k_max) {
  if (k_max < 2) throw std::invalid_argument("k_max must be at least 2");
  QkSweep sweep = qk_sweep(table, 1, k_max, {a_squared});
  RTildeEstimate out;
  out.omega_f = 1 - a_squared;
  out.bound = sweep.rows.front().bound;
  for (const auto& row : sweep.rows) {
    if (row.bound < out.bound) {
      out.bound = row.bound;
      out.attained_at.clear();
    }
    if (row.bound == out.bound) out.attained_at.push_back(row.k);
  }
  return out;
}

}  // namespace qhofer
