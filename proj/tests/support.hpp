#pragma once

// Random generators for property tests. Small coefficients and exponents
// keep exact products cheap while still exercising cancellation.

#include "qhofer/model.hpp"
#include "qhofer/novikov.hpp"
#include "qhofer/quantum.hpp"

#include <array>
#include <random>
#include <vector>

namespace qhofer::testing {

inline Rational random_rational(std::mt19937_64& rng, int max_num = 3) {
  std::uniform_int_distribution<int> num(-max_num, max_num), den_pick(0, 2);
  static constexpr int dens[] = {1, 2, 4};
  Rational q(num(rng), dens[den_pick(rng)]);
  q.canonicalize();
  return q;
}

inline Rational random_nonzero_rational(std::mt19937_64& rng) {
  Rational q;
  do q = random_rational(rng); while (q == 0);
  return q;
}

inline SphereClass random_class(std::mt19937_64& rng, std::size_t rank) {
  std::vector<Rational> coords;
  for (std::size_t i = 0; i < rank; ++i) coords.push_back(random_rational(rng, 2));
  return SphereClass(std::move(coords));
}

inline NovikovElement random_novikov(std::mt19937_64& rng, std::size_t rank, int max_terms = 4) {
  std::uniform_int_distribution<int> count(1, max_terms);
  NovikovElement x;
  for (int t = count(rng); t > 0; --t) x.add_term(random_class(rng, rank), random_nonzero_rational(rng));
  return x;
}

inline QHElement random_qh(const ManifoldModel& model, std::mt19937_64& rng, int max_terms = 3) {
  std::uniform_int_distribution<int> count(1, max_terms);
  std::uniform_int_distribution<std::size_t> index(0, model.size() - 1);
  QHElement x(model.size());
  for (int t = count(rng); t > 0; --t) x.add_term(index(rng), random_class(rng, model.rank()), random_nonzero_rational(rng));
  return x;
}

inline QHElement random_nonzero_qh(const ManifoldModel& model, std::mt19937_64& rng, int max_terms = 3) {
  QHElement x;
  do x = random_qh(model, rng, max_terms); while (x.is_zero());
  return x;
}

/// Every assignment of n(A1,A2,A3;E) = +-1 (order EEE, EEF, EFF, FFF) whose
/// model reproduces the blow-up relations for E*E, E*F and F*F.
inline std::vector<std::array<int, 4>> sign_table_solutions() {
  const auto base = to_json(model_blowup_cp2(Rational(1, 4)));
  const std::array<std::array<const char*, 3>, 4> triples{{{"E", "E", "E"}, {"E", "E", "F"}, {"E", "F", "F"}, {"F", "F", "F"}}};
  std::vector<std::array<int, 4>> solutions;
  for (int mask = 0; mask < 16; ++mask) {
    std::array<int, 4> signs{};
    auto j = base;
    for (std::size_t s = 0; s < 4; ++s) {
      signs[s] = (mask >> s) & 1 ? 1 : -1;
      for (auto& e : j["gw"])
        if (e["class"] == nlohmann::json::array({"1", "0"}) &&
            e["insertions"] == nlohmann::json::array({triples[s][0], triples[s][1], triples[s][2]}))
          e["value"] = std::to_string(signs[s]);
    }
    ManifoldModel m = model_from_json(j);
    auto t = [&](const char* cls, int e, int f, int q = 1) {
      return QHElement::term(m, m.index_of(cls), SphereClass({Rational(e), Rational(f)}), q);
    };
    auto E = QHElement::basis(m, m.index_of("E")), F = QHElement::basis(m, m.index_of("F"));
    if (quantum_product(m, E, E) == t("p", 0, 0, -1) + t("E", -1, 0) + t("1", 0, -1) &&
        quantum_product(m, E, F) == t("p", 0, 0) - t("E", -1, 0) && quantum_product(m, F, F) == t("E", -1, 0))
      solutions.push_back(signs);
  }
  return solutions;
}

}  // namespace qhofer::testing
