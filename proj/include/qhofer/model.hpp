#pragma once

#include "qhofer/novikov.hpp"
#include "qhofer/rational.hpp"

#include <json.hpp>

#include <array>
#include <cstddef>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace qhofer {

class ModelError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct BasisClass {
  std::string name;
  int degree = 0;
};

/// n_M(a_i, a_j, a_k; B). B = 0 entries are the classical triple intersections.
struct GwEntry {
  std::array<std::size_t, 3> insertions{};
  SphereClass sphere_class;
  Rational value;
};

/// One term of a_i * a_j = sum coefficient * a_index (x) e^exponent.
struct ProductTerm {
  std::size_t index = 0;
  SphereClass exponent;
  Rational coefficient;
  bool quantum = false;  ///< comes from an entry with B != 0
};

using RationalMatrix = std::vector<std::vector<Rational>>;

/// Closed manifold of dimension 2n described by its homology basis, Poincare
/// pairing and 3-point GW structure constants. Immutable after construction.
class ManifoldModel {
 public:
  struct Data {
    std::string name;
    int dim = 0;
    std::vector<BasisClass> basis;
    std::vector<std::string> generators;
    RationalMatrix pairing;
    std::vector<GwEntry> gw;
    OmegaFunctional omega;
    ChernFunctional c1;
  };

  /// Symmetrizes the GW table over permutations of the insertions.
  /// Throws ModelError on shape mismatches, conflicting entries or a
  /// degenerate pairing; semantic axioms are checked by validate().
  explicit ManifoldModel(Data data);

  const std::string& name() const noexcept { return data_.name; }
  int dim() const noexcept { return data_.dim; }
  std::size_t size() const noexcept { return data_.basis.size(); }
  std::size_t rank() const noexcept { return data_.generators.size(); }
  const std::vector<BasisClass>& basis() const noexcept { return data_.basis; }
  const std::vector<std::string>& generators() const noexcept { return data_.generators; }
  const RationalMatrix& pairing() const noexcept { return data_.pairing; }
  const RationalMatrix& inverse_pairing() const noexcept { return inverse_pairing_; }
  const OmegaFunctional& omega() const noexcept { return data_.omega; }
  const ChernFunctional& c1() const noexcept { return data_.c1; }

  /// Entries with sorted insertions, one per unordered triple and class.
  std::vector<GwEntry> gw_entries() const;
  /// n(a_i, a_j, a_k; B); zero when absent.
  Rational gw(std::size_t i, std::size_t j, std::size_t k, const SphereClass& b) const;

  /// Index of the fundamental class [M] (the unique class of degree 2n).
  std::size_t unit_index() const;
  std::size_t index_of(const std::string& basis_name) const;
  std::size_t generator_index(const std::string& generator_name) const;

  const std::vector<ProductTerm>& basis_product(std::size_t i, std::size_t j) const {
    return products_.at(i * size() + j);
  }

  /// Axiom violations (empty when the model is consistent): grading of the
  /// pairing and GW table, fundamental-class axiom, positivity of omega on
  /// quantum classes.
  std::vector<std::string> validate() const;

 private:
  using Triple = std::array<std::size_t, 3>;
  Data data_;
  RationalMatrix inverse_pairing_;
  std::map<Triple, std::map<SphereClass, Rational>> table_;
  std::vector<std::vector<ProductTerm>> products_;
  std::size_t unit_index_ = 0;
  bool has_unit_ = false;
};

/// One-point blow-up of CP^2 with omega_a(E) = a^2, omega_a(F) = 1 - a^2
/// (units of pi). Basis p, E, F, 1.
ManifoldModel model_blowup_cp2(const Rational& a_squared);

/// CP^n with basis x^k (degree 2(n-k)), generator L, c_1(L) = n + 1.
ManifoldModel model_cpn(int n, const Rational& omega_line);

nlohmann::json to_json(const ManifoldModel& model);
ManifoldModel model_from_json(const nlohmann::json& j);

/// Exact Gaussian elimination; throws ModelError when singular.
RationalMatrix invert_matrix(const RationalMatrix& m);

}  // namespace qhofer
