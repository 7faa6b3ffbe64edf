#pragma once

// Small quantum homology QH_*(M) = H_*(M) (x) Lambda over a ManifoldModel.

#include "qhofer/model.hpp"
#include "qhofer/novikov.hpp"

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace qhofer {

/// sum_i a_i (x) lambda_i, stored as one Novikov coefficient per basis class.
class QHElement {
 public:
  QHElement() = default;
  explicit QHElement(std::size_t basis_size) : components_(basis_size) {}

  static QHElement unit(const ManifoldModel& model);
  static QHElement basis(const ManifoldModel& model, std::size_t index);
  /// coefficient * a_index (x) e^exponent
  static QHElement term(const ManifoldModel& model, std::size_t index, const SphereClass& exponent,
                        const Rational& coefficient = 1);

  std::size_t basis_size() const noexcept { return components_.size(); }
  const NovikovElement& component(std::size_t i) const { return components_.at(i); }
  const std::vector<NovikovElement>& components() const noexcept { return components_; }
  void add(std::size_t i, const NovikovElement& lambda) { components_.at(i) += lambda; }
  void add_term(std::size_t i, const SphereClass& exponent, const Rational& coefficient) {
    components_.at(i).add_term(exponent, coefficient);
  }

  bool is_zero() const;
  std::size_t num_terms() const;

  QHElement& operator+=(const QHElement& other);
  QHElement& operator-=(const QHElement& other);
  friend QHElement operator+(QHElement a, const QHElement& b) { return a += b; }
  friend QHElement operator-(QHElement a, const QHElement& b) { return a -= b; }
  QHElement operator-() const;
  friend QHElement operator*(const Rational& s, const QHElement& x);
  /// Lambda-module action.
  friend QHElement operator*(const NovikovElement& lambda, const QHElement& x);
  QHElement shifted(const SphereClass& shift) const;
  /// Keeps terms with omega(B) >= threshold.
  QHElement truncated(const OmegaFunctional& omega, const Rational& threshold) const;

  friend bool operator==(const QHElement& a, const QHElement& b) { return a.components_ == b.components_; }

 private:
  void require_same_size(const QHElement& other) const;
  std::vector<NovikovElement> components_;
};

class InversionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

ExtRational valuation(const QHElement& x, const OmegaFunctional& omega);

/// deg(a (x) e^B) = deg(a) + 2 c_1(B); nullopt for zero or non-homogeneous x.
std::optional<Rational> degree(const ManifoldModel& model, const QHElement& x);

QHElement quantum_product(const ManifoldModel& model, const QHElement& x, const QHElement& y);
/// Same product, terms of x split across OpenMP threads. Must agree exactly
/// with quantum_product.
QHElement quantum_product_parallel(const ManifoldModel& model, const QHElement& x, const QHElement& y);
/// B = 0 stratum of the quantum product.
QHElement classical_product(const ManifoldModel& model, const QHElement& x, const QHElement& y);

struct InverseResult {
  QHElement value;
  /// x * value - 1; every term has omega-valuation below the floor.
  QHElement residual;
  bool exact = false;
};

/// Inverse in the completed ring, truncated so that the residual x*z - 1 is
/// supported strictly below `floor`. Exact (empty residual) whenever a
/// finite inverse exists.
InverseResult invert(const ManifoldModel& model, const QHElement& x, const Rational& floor);
/// Throws InversionError when x has no finite inverse.
QHElement invert_exact(const ManifoldModel& model, const QHElement& x);

/// x^k; k < 0 requires a finite inverse.
QHElement power(const ManifoldModel& model, const QHElement& x, long k);

/// min omega(B) over quantum GW entries; +inf if none.
ExtRational hbar(const ManifoldModel& model);
/// Positive generator of omega(integer lattice); +inf if omega vanishes.
ExtRational rationality_index(const ManifoldModel& model);

/// Triples (i, j, k) of basis classes where (a_i*a_j)*a_k != a_i*(a_j*a_k).
std::vector<std::string> check_associativity_on_basis(const ManifoldModel& model);

/// "q * a" or "q * a * e^{...}" terms joined by " + ", ordered by basis index
/// then exponent; "0" for the zero element.
std::string to_string(const ManifoldModel& model, const QHElement& x);
QHElement parse_qh(const ManifoldModel& model, std::string_view text);

}  // namespace qhofer
