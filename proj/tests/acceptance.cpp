// Acceptance suite. Prints one PASS/FAIL line per criterion and exits
// nonzero if any criterion fails.

#include "support.hpp"

#include "qhofer/hofer.hpp"
#include "qhofer/model.hpp"
#include "qhofer/quantum.hpp"
#include "qhofer/seidel.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>

using namespace qhofer;
using qhofer::testing::random_nonzero_qh;
using qhofer::testing::random_qh;

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

struct Outcome {
  bool pass = true;
  std::ostringstream detail;
  void require(bool ok, const std::string& what) {
    if (!ok) {
      if (pass) detail << "failed: ";
      else detail << "; ";
      detail << what;
      pass = false;
    }
  }
};

int failures = 0;

void criterion(int id, const std::string& title, const std::function<void(Outcome&)>& body) {
  Outcome o;
  try {
    body(o);
  } catch (const std::exception& e) {
    o.require(false, std::string("exception: ") + e.what());
  }
  if (!o.pass) ++failures;
  std::cout << (o.pass ? "PASS" : "FAIL") << "  [" << id << "] " << title;
  std::string d = o.detail.str();
  if (!d.empty()) std::cout << " -- " << d;
  std::cout << std::endl;
}

std::vector<Rational> tenths() {
  std::vector<Rational> out;
  for (int i = 1; i <= 9; ++i) {
    Rational q(i, 10);
    q.canonicalize();
    out.push_back(q);
  }
  return out;
}

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return buf;
}

QHElement t(const ManifoldModel& m, const char* cls, Rational e, Rational f, Rational q = 1) {
  return QHElement::term(m, m.index_of(cls), SphereClass({e, f}), q);
}

}  // namespace

int main() {
  const ManifoldModel blowup = model_blowup_cp2(Rational(1, 4));
  const Rational h(1, 2), q1(1, 4), q3(3, 4);

  criterion(1, "golden product table, six identities exact, < 1 ms each", [&](Outcome& o) {
    auto b = [&](const char* c) { return QHElement::basis(blowup, blowup.index_of(c)); };
    struct Case {
      const char *name, *x, *y;
      QHElement expected;
    };
    const std::vector<Case> cases{
        {"p*p", "p", "p", t(blowup, "E", -1, -1) + t(blowup, "F", -1, -1)},
        {"E*p", "E", "p", t(blowup, "F", 0, -1)},
        {"p*F", "p", "F", t(blowup, "1", -1, -1)},
        {"E*E", "E", "E", t(blowup, "p", 0, 0, -1) + t(blowup, "E", -1, 0) + t(blowup, "1", 0, -1)},
        {"E*F", "E", "F", t(blowup, "p", 0, 0) - t(blowup, "E", -1, 0)},
        {"F*F", "F", "F", t(blowup, "E", -1, 0)},
    };
    double worst = 0;
    for (const auto& c : cases) {
      QHElement x = b(c.x), y = b(c.y);
      quantum_product(blowup, x, y);  // warm-up
      auto start = Clock::now();
      QHElement r = quantum_product(blowup, x, y);
      double ms = ms_since(start);
      worst = std::max(worst, ms);
      o.require(r == c.expected, std::string(c.name) + " = " + to_string(blowup, r));
      o.require(ms < 1.0, std::string(c.name) + " took " + fmt(ms) + " ms");
    }
    o.detail << "slowest " << fmt(worst) << " ms";
  });

  criterion(2, "golden power lists Q^1..Q^5 and Q^-1..Q^-4, < 10 ms", [&](Outcome& o) {
    const QHElement Q = t(blowup, "F", h, q1), one = QHElement::unit(blowup);
    const std::vector<std::pair<long, QHElement>> expected{
        {1, Q},
        {2, t(blowup, "E", 0, h)},
        {3, t(blowup, "p", h, q3) - t(blowup, "E", -h, q3)},
        {4, -t(blowup, "p", 0, 1) + t(blowup, "E", -1, 1) + one},
        {5, t(blowup, "p", -h, Rational(5, 4)) - t(blowup, "E", Rational(-3, 2), Rational(5, 4)) + t(blowup, "F", h, q1) -
                t(blowup, "1", -h, q1)},
        {-1, t(blowup, "p", h, q3)},
        {-2, t(blowup, "E", 0, h) + t(blowup, "F", 0, h)},
        {-3, t(blowup, "F", h, q1) + t(blowup, "1", -h, q1)},
        {-4, t(blowup, "p", 0, 1) + one},
    };
    auto start = Clock::now();
    std::vector<QHElement> got;
    for (const auto& [k, e] : expected) got.push_back(power(blowup, Q, k));
    double ms = ms_since(start);
    for (std::size_t i = 0; i < expected.size(); ++i)
      o.require(got[i] == expected[i].second, "Q^" + std::to_string(expected[i].first) + " = " + to_string(blowup, got[i]));
    o.require(ms < 10.0, "took " + fmt(ms) + " ms");
    o.detail << fmt(ms) << " ms";
  });

  auto table_start = Clock::now();
  const QPowerTable table(200);
  const double table_ms = ms_since(table_start);

  criterion(3, "v(Q^k) + v(Q^-k) >= omega(F) for k in [2,200], a^2 in {1/10..9/10}, < 30 s", [&](Outcome& o) {
    auto start = Clock::now();
    QkSweep sweep = qk_sweep(table, 2, 200, tenths());
    double ms = ms_since(start) + table_ms;
    o.require(sweep.rows.size() == 199 * 9, "row count " + std::to_string(sweep.rows.size()));
    for (const auto& r : sweep.rows)
      if (!r.holds())
        o.require(false, "k=" + std::to_string(r.k) + " a^2=" + to_string(r.a_squared) + ": " + to_string(r.bound) + " < " +
                             to_string(r.omega_f));
    o.require(sweep.all_hold, "sweep flag");
    o.require(ms < 30000.0, "took " + fmt(ms) + " ms");
    o.detail << sweep.rows.size() << " cells, " << fmt(ms) << " ms including Q^{+-200}";
  });

  criterion(4, "min_k<=50 two-sided bound = omega(F) exactly and L(2 alpha)/pi = 1 - a^2 within 1e-12", [&](Outcome& o) {
    double worst = 0;
    for (const auto& a2 : tenths()) {
      RTildeEstimate r = r_tilde_estimate(table, a2, 50);
      o.require(r.bound == 1 - a2, "a^2=" + to_string(a2) + " lower bound " + to_string(r.bound));
      double err = std::abs(lengths_blowup_loop(2, a2).total() / std::numbers::pi - to_double(1 - a2));
      worst = std::max(worst, err);
      o.require(err < 1e-12, "a^2=" + to_string(a2) + " upper bound off by " + fmt(err));
    }
    o.detail << "max |L/pi - (1-a^2)| = " << fmt(worst);
  });

  criterion(5, "psi(1)^2 = E (x) e^{2 delta (F-2E) + F/2}; psi(k) psi(-k) = 1 for k <= 5", [&](Outcome& o) {
    for (const auto& a2 : tenths()) {
      ManifoldModel m = model_blowup_cp2(a2);
      Rational d = seidel_delta(a2);
      QHElement p1 = psi(1, a2).value;
      o.require(quantum_product(m, p1, p1) == t(m, "E", -4 * d, 2 * d + h), "square at a^2=" + to_string(a2));
      for (long k = 1; k <= 5; ++k)
        o.require(quantum_product(m, psi(k, a2).value, psi(-k, a2).value) == QHElement::unit(m),
                  "inverse pair k=" + std::to_string(k) + " a^2=" + to_string(a2));
    }
  });

  criterion(6, "radial mean of s = 2(1-a^6)/(3(1-a^4)) and zero mean of pi(c-s), within 1e-10 at 1e4 points", [&](Outcome& o) {
    double worst = 0;
    for (const auto& a2 : tenths()) {
      double a = to_double(a2), c = 2 * (1 - a * a * a) / (3 * (1 - a * a));
      double err = std::abs(radial_mean(RadialHamiltonian{RadialHamiltonian::Affine{0, 1}, a2}, 10000) - c);
      double zero = std::abs(radial_mean(RadialHamiltonian::blowup_rotation(a2, c), 10000));
      worst = std::max({worst, err, zero});
      o.require(err < 1e-10, "mean at a^2=" + to_string(a2) + " off by " + fmt(err));
      o.require(zero < 1e-10, "zero mean at a^2=" + to_string(a2) + ": " + fmt(zero));
    }
    o.detail << "max error " << fmt(worst);
  });

  criterion(7, "exact property suites: ring axioms, grading, hbar inequality, sign table", [&](Outcome& o) {
    std::mt19937_64 rng(20240611);
    const std::vector<ManifoldModel> models{blowup, model_cpn(2, 1)};
    int triples = 0, pairs = 0;
    for (const auto& m : models) {
      for (int i = 0; i < 500; ++i, ++triples) {
        QHElement x = random_qh(m, rng), y = random_qh(m, rng), z = random_qh(m, rng);
        QHElement xy = quantum_product(m, x, y);
        if (quantum_product(m, xy, z) != quantum_product(m, x, quantum_product(m, y, z)))
          o.require(false, m.name() + " associativity");
        if (xy != quantum_product(m, y, x)) o.require(false, m.name() + " commutativity");
      }
      for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = 0; j < m.size(); ++j) {
          QHElement p = quantum_product(m, QHElement::basis(m, i), QHElement::basis(m, j));
          if (p.is_zero()) continue;
          auto deg = degree(m, p);
          if (!deg || *deg != m.basis()[i].degree + m.basis()[j].degree - m.dim())
            o.require(false, m.name() + " grading of " + m.basis()[i].name + "*" + m.basis()[j].name);
        }
      const ExtRational hb = hbar(m);
      for (int i = 0; i < 500; ++i, ++pairs) {
        QHElement x = random_nonzero_qh(m, rng), y = random_nonzero_qh(m, rng);
        QHElement corr = quantum_product(m, x, y) - classical_product(m, x, y);
        if (!(valuation(corr, m.omega()) <= valuation(x, m.omega()) + valuation(y, m.omega()) - hb))
          o.require(false, m.name() + " hbar inequality");
      }
    }
    auto solutions = qhofer::testing::sign_table_solutions();
    o.require(solutions.size() == 1, std::to_string(solutions.size()) + " sign solutions");
    if (solutions.size() == 1) o.require(solutions[0] == std::array<int, 4>{-1, 1, -1, 1}, "signs differ from (-1)^#E");
    o.detail << triples << " triples, " << pairs << " pairs over " << models.size() << " models";
  });

  criterion(8, "growth: slope 1/30 at a^2=1/5; bounded at 1/2, 3/4; psi/k >= (1-a^2)^2/(12(1+a^2)) at 1/4", [&](Outcome& o) {
    GrowthTable low = growth_table(table, 60, Rational(1, 5), 40, 60);
    const Rational predicted = blowup_omega(Rational(1, 5))(SphereClass({Rational(-1, 2), Rational(1, 4)})) / 3;
    o.require(predicted == Rational(1, 30), "predicted slope " + to_string(predicted));
    o.require(low.summary.neg_slope.periodic, "no period found in [40, 60]");
    o.require(low.summary.neg_slope.slope == predicted, "slope " + to_string(low.summary.neg_slope.slope));
    for (const Rational a2 : {Rational(1, 2), Rational(3, 4)}) {
      GrowthTable g = growth_table(table, 200, a2, 100, 200);
      o.require(g.summary.argmax_v_neg < 20, "a^2=" + to_string(a2) + " max of v(Q^-k) at k=" +
                                                 std::to_string(g.summary.argmax_v_neg));
      o.require(g.summary.neg_slope.slope == 0, "a^2=" + to_string(a2) + " slope " + to_string(g.summary.neg_slope.slope));
    }
    GrowthTable q = growth_table(table, 100, Rational(1, 4), 50, 100);
    o.require(q.summary.asymptotic_bound == Rational(3, 80), "bound " + to_string(q.summary.asymptotic_bound));
    o.require(q.summary.min_psi_per_k && *q.summary.min_psi_per_k >= Rational(3, 80), "min psi/k below 3/80");
    o.detail << "period " << low.summary.neg_slope.period << ", min psi/k at 1/4 = "
             << (q.summary.min_psi_per_k ? to_string(*q.summary.min_psi_per_k) : "-");
  });

  criterion(9, "CP^n: x^(n+1) = 1 (x) e^{-L} for n = 1..4", [&](Outcome& o) {
    for (int n = 1; n <= 4; ++n) {
      ManifoldModel m = model_cpn(n, 1);
      QHElement r = power(m, QHElement::basis(m, m.index_of("x")), n + 1);
      o.require(r == QHElement::term(m, m.unit_index(), SphereClass({Rational(-1)})),
                "n=" + std::to_string(n) + ": " + to_string(m, r));
    }
  });

  std::cout << (failures == 0 ? "all criteria pass" : std::to_string(failures) + " criteria failed") << std::endl;
  return failures == 0 ? 0 : 1;
}
