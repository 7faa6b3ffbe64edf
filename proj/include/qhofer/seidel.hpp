#pragma once

// Seidel elements of the circle actions alpha, 2*alpha on the one-point
// blow-up of CP^2 and the valuation lower bounds they give for one-sided
// Hofer lengths. All valuations are exact rationals in units of pi.

#include "qhofer/model.hpp"
#include "qhofer/quantum.hpp"

#include <optional>
#include <stdexcept>
#include <vector>

namespace qhofer {

/// Raised when 3a^2 = 1 (monotone form), where delta has a pole.
class MonotoneError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

OmegaFunctional blowup_omega(const Rational& a_squared);

/// delta = (1-a^2)^2 / (12 (1+a^2)(1-3a^2)). Throws MonotoneError at 3a^2 = 1.
Rational seidel_delta(const Rational& a_squared);

/// E/2 + F/4.
SphereClass q_exponent();
/// F - 2E.
SphereClass monotone_direction();
/// Q = F (x) e^{E/2 + F/4}, the omega-independent part of Psi(alpha).
QHElement q_element(const ManifoldModel& blowup);

struct SeidelElement {
  long loop_multiple = 0;
  Rational a_squared;
  Rational delta;
  QHElement value;
};

/// Psi(k alpha) = Psi(alpha)^k with Psi(alpha) = F (x) e^{E/2 + F/4 + delta(F-2E)}
/// (the + sign; valuations do not depend on it).
SeidelElement psi(long k, const Rational& a_squared);

/// v(Psi(k alpha)), a lower bound for l^+(k alpha).
Rational ell_plus_lower_bound(long k, const Rational& a_squared);

/// v(Q^k) + v(Q^{-k}); delta-free, valid also at 3a^2 = 1.
Rational two_sided_bound(long k, const Rational& a_squared);

/// Q^k and Q^{-k} for k = 0..k_max, built by successive multiplication.
/// Independent of a^2; valuations take any omega.
class QPowerTable {
 public:
  explicit QPowerTable(long k_max);
  long k_max() const noexcept { return static_cast<long>(positive_.size()) - 1; }
  const ManifoldModel& model() const noexcept { return model_; }
  /// Q^k for |k| <= k_max.
  const QHElement& operator[](long k) const;

 private:
  ManifoldModel model_;
  std::vector<QHElement> positive_;
  std::vector<QHElement> negative_;
};

struct BoundRow {
  long k = 0;
  Rational a_squared;
  Rational v_pos;    ///< v(Q^k)
  Rational v_neg;    ///< v(Q^{-k})
  Rational bound;    ///< v_pos + v_neg
  Rational omega_f;  ///< 1 - a^2
  bool holds() const { return bound >= omega_f; }
};

struct QkSweep {
  std::vector<BoundRow> rows;  ///< a^2-major, then k ascending
  bool all_hold = true;
};

/// Checks v(Q^k) + v(Q^{-k}) >= omega(F) over k_lo..k_hi and every a^2.
QkSweep qk_sweep_serial(const QPowerTable& table, long k_lo, long k_hi, const std::vector<Rational>& a_squared);
/// Same cells split across OpenMP threads; identical output order.
QkSweep qk_sweep(const QPowerTable& table, long k_lo, long k_hi, const std::vector<Rational>& a_squared);

/// Smallest period of the first differences of values[lo..hi] and the
/// per-period slope. `values[k]` is indexed by k.
struct PeriodicSlope {
  bool periodic = false;
  long period = 0;
  Rational slope;  ///< per-period slope, or the mean slope when not periodic
};
PeriodicSlope periodic_slope(const std::vector<Rational>& values, long lo, long hi);

struct GrowthRow {
  long k = 0;
  Rational v_pos;
  Rational v_neg;
  std::optional<Rational> psi_per_k;  ///< v(Psi(k alpha))/k, absent at 3a^2 = 1
  Rational omega_f;
};

struct GrowthSummary {
  long window_lo = 0;
  long window_hi = 0;
  PeriodicSlope neg_slope;   ///< of v(Q^{-k}) over the window
  Rational predicted_slope;  ///< omega(F/4 - E/2)/3 if 3a^2 < 1, else 0
  bool slope_matches = false;
  Rational max_v_neg;
  long argmax_v_neg = 0;
  std::optional<Rational> min_psi_per_k;
  long argmin_psi_per_k = 0;
  Rational asymptotic_bound;  ///< (1-a^2)^2 / (12 (1+a^2))
  bool psi_bound_holds = true;
  bool all_hold() const { return slope_matches && psi_bound_holds; }
};

struct GrowthTable {
  Rational a_squared;
  std::vector<GrowthRow> rows;  ///< k = 1..k_max
  GrowthSummary summary;
};

/// Summary window defaults to [k_max/2, k_max].
GrowthTable growth_table(long k_max, const Rational& a_squared);
GrowthTable growth_table(const QPowerTable& table, long k_max, const Rational& a_squared, long window_lo,
                         long window_hi);

struct RTildeEstimate {
  Rational bound;                ///< min over k of two_sided_bound(k)
  std::vector<long> attained_at;  ///< ascending
  Rational omega_f;
};

RTildeEstimate r_tilde_estimate(const Rational& a_squared, long k_max);
RTildeEstimate r_tilde_estimate(const QPowerTable& table, const Rational& a_squared, long k_max);

}  // namespace qhofer
