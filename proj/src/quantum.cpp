#include "qhofer/quantum.hpp"

#include <omp.h>

#include <algorithm>
#include <tuple>

namespace qhofer {

QHElement QHElement::unit(const ManifoldModel& model) { return basis(model, model.unit_index()); }

QHElement QHElement::basis(const ManifoldModel& model, std::size_t index) {
  return term(model, index, SphereClass(model.rank()));
}

QHElement QHElement::term(const ManifoldModel& model, std::size_t index, const SphereClass& exponent,
                          const Rational& coefficient) {
  QHElement x(model.size());
  x.add_term(index, exponent, coefficient);
  return x;
}

bool QHElement::is_zero() const {
  return std::all_of(components_.begin(), components_.end(), [](const NovikovElement& c) { return c.is_zero(); });
}

std::size_t QHElement::num_terms() const {
  std::size_t n = 0;
  for (const auto& c : components_) n += c.size();
  return n;
}

void QHElement::require_same_size(const QHElement& other) const {
  if (components_.size() != other.components_.size())
    throw std::invalid_argument("quantum homology elements over different bases");
}

QHElement& QHElement::operator+=(const QHElement& other) {
  require_same_size(other);
  for (std::size_t i = 0; i < components_.size(); ++i) components_[i] += other.components_[i];
  return *this;
}

QHElement& QHElement::operator-=(const QHElement& other) {
  require_same_size(other);
  for (std::size_t i = 0; i < components_.size(); ++i) components_[i] -= other.components_[i];
  return *this;
}

QHElement QHElement::operator-() const {
  QHElement r(*this);
  for (auto& c : r.components_) c = -c;
  return r;
}

QHElement operator*(const Rational& s, const QHElement& x) {
  QHElement r(x);
  for (auto& c : r.components_) c *= s;
  return r;
}

QHElement operator*(const NovikovElement& lambda, const QHElement& x) {
  QHElement r(x.basis_size());
  for (std::size_t i = 0; i < x.basis_size(); ++i) r.components_[i] = lambda * x.components_[i];
  return r;
}

QHElement QHElement::shifted(const SphereClass& shift) const {
  QHElement r(basis_size());
  for (std::size_t i = 0; i < basis_size(); ++i) r.components_[i] = components_[i].shifted(shift);
  return r;
}

QHElement QHElement::truncated(const OmegaFunctional& omega, const Rational& threshold) const {
  QHElement r(basis_size());
  for (std::size_t i = 0; i < basis_size(); ++i) r.components_[i] = components_[i].truncated(omega, threshold);
  return r;
}

ExtRational valuation(const QHElement& x, const OmegaFunctional& omega) {
  ExtRational v = ExtRational::neg_infinity();
  for (const auto& c : x.components()) v = max(v, valuation(c, omega));
  return v;
}

std::optional<Rational> degree(const ManifoldModel& model, const QHElement& x) {
  std::optional<Rational> deg;
  for (std::size_t i = 0; i < x.basis_size(); ++i) {
    for (const auto& [b, q] : x.component(i).terms()) {
      Rational d = model.basis()[i].degree + 2 * model.c1()(b);
      if (deg && *deg != d) return std::nullopt;
      deg = d;
    }
  }
  return deg;
}

namespace {

void require_model_size(const ManifoldModel& model, const QHElement& x) {
  if (x.basis_size() != model.size()) throw std::invalid_argument("element does not belong to model " + model.name());
}

void accumulate_basis_product(const ManifoldModel& model, std::size_t i, std::size_t j,
                              const NovikovElement& coefficient, bool classical_only, QHElement& out) {
  for (const auto& t : model.basis_product(i, j)) {
    if (classical_only && t.quantum) continue;
    NovikovElement term = coefficient.shifted(t.exponent);
    term *= t.coefficient;
    out.add(t.index, term);
  }
}

QHElement product_impl(const ManifoldModel& model, const QHElement& x, const QHElement& y, bool classical_only) {
  require_model_size(model, x);
  require_model_size(model, y);
  QHElement out(model.size());
  for (std::size_t i = 0; i < model.size(); ++i) {
    if (x.component(i).is_zero()) continue;
    for (std::size_t j = 0; j < model.size(); ++j) {
      if (y.component(j).is_zero()) continue;
      accumulate_basis_product(model, i, j, x.component(i) * y.component(j), classical_only, out);
    }
  }
  return out;
}

}  // namespace

QHElement quantum_product(const ManifoldModel& model, const QHElement& x, const QHElement& y) {
  return product_impl(model, x, y, false);
}

QHElement classical_product(const ManifoldModel& model, const QHElement& x, const QHElement& y) {
  return product_impl(model, x, y, true);
}

QHElement quantum_product_parallel(const ManifoldModel& model, const QHElement& x, const QHElement& y) {
  require_model_size(model, x);
  require_model_size(model, y);
  std::vector<std::tuple<std::size_t, const SphereClass*, const Rational*>> left;
  for (std::size_t i = 0; i < x.basis_size(); ++i)
    for (const auto& [b, q] : x.component(i).terms()) left.emplace_back(i, &b, &q);

  QHElement out(model.size());
  const auto count = static_cast<long>(left.size());
#pragma omp parallel
  {
    QHElement local(model.size());
#pragma omp for schedule(dynamic, 4)
    for (long t = 0; t < count; ++t) {
      const auto& [i, b, q] = left[static_cast<std::size_t>(t)];
      NovikovElement mono = NovikovElement::monomial(*b, *q);
      for (std::size_t j = 0; j < model.size(); ++j) {
        if (y.component(j).is_zero()) continue;
        accumulate_basis_product(model, i, j, mono * y.component(j), false, local);
      }
    }
#pragma omp critical(qhofer_product_merge)
    out += local;
  }
  return out;
}

namespace {

using NovikovMatrix = std::vector<std::vector<NovikovElement>>;

NovikovMatrix multiply(const NovikovMatrix& a, const NovikovMatrix& b) {
  const std::size_t n = a.size();
  NovikovMatrix c(n, std::vector<NovikovElement>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      if (a[i][k].is_zero()) continue;
      for (std::size_t j = 0; j < n; ++j)
        if (!b[k][j].is_zero()) c[i][j] += a[i][k] * b[k][j];
    }
  return c;
}

/// Faddeev-LeVerrier over Lambda: returns (det A, adj A). Only divisions by
/// integers are needed, so this works in any Q-algebra.
std::pair<NovikovElement, NovikovMatrix> determinant_and_adjugate(const NovikovMatrix& a, std::size_t rank) {
  const std::size_t n = a.size();
  const NovikovElement one = NovikovElement::one(rank);
  NovikovMatrix m(n, std::vector<NovikovElement>(n));
  NovikovMatrix am(n, std::vector<NovikovElement>(n));  // A * M_{k-1}
  NovikovElement c = one;                                // c_{n-k+1}
  for (std::size_t k = 1; k <= n; ++k) {
    m = am;
    for (std::size_t i = 0; i < n; ++i) m[i][i] += c;
    am = multiply(a, m);
    NovikovElement trace;
    for (std::size_t i = 0; i < n; ++i) trace += am[i][i];
    c = Rational(-1, static_cast<long>(k)) * trace;
  }
  NovikovElement det = n % 2 == 0 ? c : -c;
  if (n % 2 == 0)
    for (auto& row : m)
      for (auto& e : row) e = -e;
  return {det, m};
}

}  // namespace

InverseResult invert(const ManifoldModel& model, const QHElement& x, const Rational& floor) {
  require_model_size(model, x);
  if (x.is_zero()) throw InversionError("the zero element is not invertible");
  const std::size_t n = model.size();
  const OmegaFunctional& omega = model.omega();

  // Matrix of multiplication by x, column j = x * a_j.
  NovikovMatrix mult(n, std::vector<NovikovElement>(n));
  for (std::size_t j = 0; j < n; ++j) {
    QHElement col = quantum_product(model, x, QHElement::basis(model, j));
    for (std::size_t i = 0; i < n; ++i) mult[i][j] = col.component(i);
  }
  auto [det, adj] = determinant_and_adjugate(mult, model.rank());
  if (det.is_zero()) throw InversionError("element is a zero divisor (multiplication map is singular)");

  NovikovElement lead = leading_part(det, omega);
  if (lead.size() != 1)
    throw InversionError("leading part of the determinant is not a monomial; element is not invertible in the graded piece");
  const auto& [lead_class, lead_coeff] = *lead.terms().begin();
  NovikovElement lead_inverse = NovikovElement::monomial(-lead_class, 1 / lead_coeff);

  const std::size_t u = model.unit_index();
  QHElement w(n);
  for (std::size_t i = 0; i < n; ++i) w.add(i, lead_inverse * adj[i][u]);

  // det^{-1} = lead^{-1} (1 - r)^{-1}, every term of r has omega < 0.
  NovikovElement r = NovikovElement::one(model.rank()) - lead_inverse * det;
  QHElement z;
  if (r.is_zero()) {
    z = std::move(w);
  } else {
    const Rational target = floor - valuation(x, omega).value();
    const Rational series_floor = target - valuation(w, omega).value();
    NovikovElement series = NovikovElement::one(model.rank());
    NovikovElement power = series;
    constexpr int max_strata = 100000;
    int strata = 0;
    while (true) {
      power = (power * r).truncated(omega, series_floor);
      if (power.is_zero()) break;
      series += power;
      if (++strata > max_strata) throw InversionError("no convergence after the maximal number of strata; raise the floor");
    }
    z = (series * w).truncated(omega, target);
  }
  QHElement residual = quantum_product(model, x, z) - QHElement::unit(model);
  bool exact = residual.is_zero();
  return {std::move(z), std::move(residual), exact};
}

QHElement invert_exact(const ManifoldModel& model, const QHElement& x) {
  InverseResult r = invert(model, x, 0);
  if (!r.exact) throw InversionError("element has no finite inverse; use invert with a floor");
  return r.value;
}

QHElement power(const ManifoldModel& model, const QHElement& x, long k) {
  require_model_size(model, x);
  QHElement base = k < 0 ? invert_exact(model, x) : x;
  unsigned long e = k < 0 ? static_cast<unsigned long>(-(k + 1)) + 1 : static_cast<unsigned long>(k);
  QHElement result = QHElement::unit(model);
  while (e > 0) {
    if (e & 1) result = quantum_product(model, result, base);
    e >>= 1;
    if (e > 0) base = quantum_product(model, base, base);
  }
  return result;
}

ExtRational hbar(const ManifoldModel& model) {
  ExtRational best = ExtRational::pos_infinity();
  for (const auto& e : model.gw_entries())
    if (!e.sphere_class.is_zero()) best = min(best, ExtRational(model.omega()(e.sphere_class)));
  return best;
}

ExtRational rationality_index(const ManifoldModel& model) {
  Rational g = 0;
  for (const auto& v : model.omega().values) g = rational_gcd(g, v);
  if (g == 0) return ExtRational::pos_infinity();
  return ExtRational(g);
}

std::vector<std::string> check_associativity_on_basis(const ManifoldModel& model) {
  std::vector<std::string> failures;
  const std::size_t n = model.size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) {
        QHElement a = QHElement::basis(model, i), b = QHElement::basis(model, j), c = QHElement::basis(model, k);
        if (quantum_product(model, quantum_product(model, a, b), c) != quantum_product(model, a, quantum_product(model, b, c)))
          failures.push_back("(" + model.basis()[i].name + "*" + model.basis()[j].name + ")*" + model.basis()[k].name +
                             " != " + model.basis()[i].name + "*(" + model.basis()[j].name + "*" +
                             model.basis()[k].name + ")");
      }
  return failures;
}

std::string to_string(const ManifoldModel& model, const QHElement& x) {
  require_model_size(model, x);
  std::string out;
  for (std::size_t i = 0; i < x.basis_size(); ++i) {
    for (const auto& [b, q] : x.component(i).terms()) {
      if (!out.empty()) out += " + ";
      out += to_string(q) + " * " + model.basis()[i].name;
      if (!b.is_zero()) out += " * " + format_exponent(b, model.generators());
    }
  }
  return out.empty() ? "0" : out;
}

QHElement parse_qh(const ManifoldModel& model, std::string_view text) {
  QHElement x(model.size());
  auto find_basis = [&](const std::string& name) -> std::optional<std::size_t> {
    for (std::size_t i = 0; i < model.size(); ++i)
      if (model.basis()[i].name == name) return i;
    return std::nullopt;
  };
  for (const auto& t : parse_terms(text, model.generators())) {
    if (t.name) {
      auto idx = find_basis(*t.name);
      if (!idx) throw ParseError("unknown basis class \"" + *t.name + "\"", t.name_position);
      x.add_term(*idx, t.exponent, t.coefficient);
      continue;
    }
    // Numeric-only term: a trailing literal naming a basis class ("1") is
    // that class, otherwise the term is a multiple of the unit.
    if (t.last_numeric) {
      auto idx = find_basis(*t.last_numeric);
      Rational literal = parse_rational(*t.last_numeric);
      if (idx && literal != 0) {
        x.add_term(*idx, t.exponent, t.coefficient / literal);
        continue;
      }
    }
    x.add_term(model.unit_index(), t.exponent, t.coefficient);
  }
  return x;
}

}  // namespace qhofer
