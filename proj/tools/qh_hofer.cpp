// Command-line front end for the quantum-homology and Hofer-length kernels.
// Exit codes: 0 when every checked inequality holds, 2 when one fails or a
// model does not validate, 1 on usage, parse or I/O errors.

#include "qhofer/hofer.hpp"
#include "qhofer/model.hpp"
#include "qhofer/parallel.hpp"
#include "qhofer/quantum.hpp"
#include "qhofer/seidel.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>

namespace {

using namespace qhofer;
using nlohmann::json;

constexpr int kFailed = 2;

struct Options {
  std::string model = "blowup";
  int n = 2;
  std::string a2 = "1/2";
  long k = 1;
  long kmax = 50;
  std::string floor = "-4";
  std::string format = "text";
  std::string out;
  std::size_t window = 2;
  std::vector<std::string> exprs;
  std::string csv;
};

class CheckFailed : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string approx(const Rational& q) {
  std::ostringstream s;
  s << std::setprecision(10) << to_double(q);
  return s.str();
}

std::string fixed(double x) {
  std::ostringstream s;
  s << std::fixed << std::setprecision(10) << x;
  return s.str();
}

ManifoldModel load_model(const Options& o) {
  if (o.model == "blowup") return model_blowup_cp2(parse_rational(o.a2));
  if (o.model == "cpn") return model_cpn(o.n, 1);
  std::ifstream in(o.model);
  if (!in) throw std::runtime_error("--model must be blowup, cpn or a readable JSON file: " + o.model);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ModelError(o.model + ": " + e.what());
  }
  return model_from_json(j);
}

QHElement parse_expr(const ManifoldModel& m, const std::string& text) {
  try {
    return parse_qh(m, text);
  } catch (const ParseError& e) {
    throw std::runtime_error("cannot parse \"" + text + "\": " + e.what());
  }
}

void emit_element(std::ostream& out, const Options& o, const ManifoldModel& m, const QHElement& x) {
  if (o.format == "json")
    out << json{{"model", m.name()}, {"value", to_string(m, x)}, {"valuation", to_string(valuation(x, m.omega()))}}.dump(2)
        << "\n";
  else
    out << to_string(m, x) << "\n";
}

int cmd_product(std::ostream& out, const Options& o) {
  ManifoldModel m = load_model(o);
  emit_element(out, o, m, quantum_product(m, parse_expr(m, o.exprs.at(0)), parse_expr(m, o.exprs.at(1))));
  return 0;
}

int cmd_power(std::ostream& out, const Options& o) {
  ManifoldModel m = load_model(o);
  emit_element(out, o, m, power(m, parse_expr(m, o.exprs.at(0)), o.k));
  return 0;
}

int cmd_invert(std::ostream& out, const Options& o) {
  ManifoldModel m = load_model(o);
  const Rational floor = parse_rational(o.floor);
  InverseResult r = invert(m, parse_expr(m, o.exprs.at(0)), floor);
  if (o.format == "json") {
    out << json{{"model", m.name()},
                {"value", to_string(m, r.value)},
                {"exact", r.exact},
                {"floor", to_string(floor)},
                {"residual", to_string(m, r.residual)},
                {"residual_valuation", to_string(valuation(r.residual, m.omega()))}}
               .dump(2)
        << "\n";
    return 0;
  }
  out << to_string(m, r.value) << "\n";
  if (!r.exact)
    out << "# truncated: residual x*z - 1 has valuation " << to_string(valuation(r.residual, m.omega())) << " < "
        << to_string(floor) << "\n";
  return 0;
}

int cmd_psi(std::ostream& out, const Options& o) {
  const Rational a2 = parse_rational(o.a2);
  SeidelElement s = psi(o.k, a2);
  ManifoldModel m = model_blowup_cp2(a2);
  if (o.format == "json") {
    out << json{{"k", s.loop_multiple},
                {"a2", to_string(a2)},
                {"delta", to_string(s.delta)},
                {"value", to_string(m, s.value)},
                {"valuation", to_string(valuation(s.value, m.omega()))}}
               .dump(2)
        << "\n";
  } else {
    out << to_string(m, s.value) << "\n";
  }
  return 0;
}

void emit_bound_rows(std::ostream& out, const std::string& format, const std::vector<BoundRow>& rows,
                     const std::vector<std::optional<Rational>>& extra, const std::string& extra_name) {
  const bool with_extra = !extra.empty();
  if (format == "csv") {
    out << "k,vQk,vQnegk,bound,omegaF";
    if (with_extra) out << "," << extra_name;
    out << ",vQk_approx,vQnegk_approx,bound_approx,omegaF_approx";
    if (with_extra) out << "," << extra_name << "_approx";
    out << "\n";
    for (std::size_t i = 0; i < rows.size(); ++i) {
      const auto& r = rows[i];
      std::string e = with_extra && extra[i] ? to_string(*extra[i]) : "", ea = with_extra && extra[i] ? approx(*extra[i]) : "";
      out << r.k << "," << to_string(r.v_pos) << "," << to_string(r.v_neg) << "," << to_string(r.bound) << ","
          << to_string(r.omega_f);
      if (with_extra) out << "," << e;
      out << "," << approx(r.v_pos) << "," << approx(r.v_neg) << "," << approx(r.bound) << "," << approx(r.omega_f);
      if (with_extra) out << "," << ea;
      out << "\n";
    }
    return;
  }
  out << std::left << std::setw(6) << "k" << std::setw(18) << "v(Q^k) (×π)" << std::setw(18) << "v(Q^-k) (×π)"
      << std::setw(18) << "bound (×π)" << std::setw(18) << "omega(F) (×π)";
  if (with_extra) out << extra_name << " (×π)";
  out << "\n";
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& r = rows[i];
    out << std::setw(6) << r.k << std::setw(16) << to_string(r.v_pos) << std::setw(16) << to_string(r.v_neg)
        << std::setw(16) << to_string(r.bound) << std::setw(16) << to_string(r.omega_f);
    if (with_extra) out << (extra[i] ? to_string(*extra[i]) : "-");
    out << "\n";
  }
}

json bound_row_json(const BoundRow& r) {
  return {{"k", r.k},           {"vQk", to_string(r.v_pos)},     {"vQnegk", to_string(r.v_neg)},
          {"bound", to_string(r.bound)}, {"omegaF", to_string(r.omega_f)}, {"holds", r.holds()}};
}

int cmd_bounds(std::ostream& out, const Options& o) {
  const Rational a2 = parse_rational(o.a2);
  if (o.kmax < 2) throw std::invalid_argument("--kmax must be at least 2");
  QPowerTable table(o.kmax);
  QkSweep sweep = qk_sweep(table, 2, o.kmax, {a2});
  if (o.format == "json") {
    json rows = json::array();
    for (const auto& r : sweep.rows) rows.push_back(bound_row_json(r));
    out << json{{"a2", to_string(a2)}, {"all_hold", sweep.all_hold}, {"rows", rows}}.dump(2) << "\n";
  } else {
    emit_bound_rows(out, o.format, sweep.rows, {}, "");
  }
  for (const auto& r : sweep.rows)
    if (!r.holds())
      throw CheckFailed("inequality v(Q^k) + v(Q^-k) >= omega(F) fails at k=" + std::to_string(r.k) + ": " +
                        to_string(r.bound) + " < " + to_string(r.omega_f));
  return 0;
}

int cmd_growth(std::ostream& out, const Options& o) {
  const Rational a2 = parse_rational(o.a2);
  if (o.kmax < 2) throw std::invalid_argument("--kmax must be at least 2");
  GrowthTable g = growth_table(o.kmax, a2);
  const GrowthSummary& s = g.summary;
  std::vector<BoundRow> rows;
  std::vector<std::optional<Rational>> psi_col;
  for (const auto& r : g.rows) {
    rows.push_back(BoundRow{r.k, a2, r.v_pos, r.v_neg, r.v_pos + r.v_neg, r.omega_f});
    psi_col.push_back(r.psi_per_k);
  }
  if (o.format == "json") {
    json jr = json::array();
    for (std::size_t i = 0; i < rows.size(); ++i) {
      json row = bound_row_json(rows[i]);
      row["psi_per_k"] = psi_col[i] ? json(to_string(*psi_col[i])) : json(nullptr);
      jr.push_back(row);
    }
    json summary{{"window", {s.window_lo, s.window_hi}},
                 {"neg_periodic", s.neg_slope.periodic},
                 {"neg_period", s.neg_slope.period},
                 {"neg_slope", to_string(s.neg_slope.slope)},
                 {"predicted_slope", to_string(s.predicted_slope)},
                 {"slope_matches", s.slope_matches},
                 {"max_vQnegk", to_string(s.max_v_neg)},
                 {"argmax_vQnegk", s.argmax_v_neg},
                 {"min_psi_per_k", s.min_psi_per_k ? json(to_string(*s.min_psi_per_k)) : json(nullptr)},
                 {"argmin_psi_per_k", s.argmin_psi_per_k},
                 {"asymptotic_bound", to_string(s.asymptotic_bound)},
                 {"psi_bound_holds", s.psi_bound_holds}};
    out << json{{"a2", to_string(a2)}, {"rows", jr}, {"summary", summary}}.dump(2) << "\n";
  } else {
    emit_bound_rows(out, o.format, rows, psi_col, "psi_per_k");
    if (o.format == "text") {
      out << "\nslope of v(Q^-k) over k in [" << s.window_lo << ", " << s.window_hi << "]: " << to_string(s.neg_slope.slope)
          << " (×π)";
      if (s.neg_slope.periodic) out << ", period " << s.neg_slope.period;
      out << "\npredicted slope: " << to_string(s.predicted_slope) << " (×π)"
          << (s.slope_matches ? " [match]" : " [MISMATCH]") << "\n";
      out << "max v(Q^-k): " << to_string(s.max_v_neg) << " (×π) at k=" << s.argmax_v_neg << "\n";
      if (s.min_psi_per_k)
        out << "min v(Psi(k alpha))/k: " << to_string(*s.min_psi_per_k) << " (×π) at k=" << s.argmin_psi_per_k
            << ", asymptotic bound " << to_string(s.asymptotic_bound) << (s.psi_bound_holds ? " [holds]" : " [FAILS]")
            << "\n";
    }
  }
  if (!s.slope_matches)
    throw CheckFailed("growth slope of v(Q^-k) is " + to_string(s.neg_slope.slope) + ", expected " +
                      to_string(s.predicted_slope));
  if (!s.psi_bound_holds)
    throw CheckFailed("inequality v(Psi(k alpha))/k >= (1-a^2)^2/(12(1+a^2)) fails at k=" +
                      std::to_string(s.argmin_psi_per_k));
  return 0;
}

int cmd_rtilde(std::ostream& out, const Options& o) {
  const Rational a2 = parse_rational(o.a2);
  RTildeEstimate r = r_tilde_estimate(a2, o.kmax);
  Lengths upper = lengths_blowup_loop(2, a2);
  const double upper_pi = upper.total() / std::numbers::pi;
  const bool lower_ok = r.bound == r.omega_f;
  const bool match = std::abs(upper_pi - to_double(r.bound)) < 1e-12;
  if (o.format == "json") {
    json ks = json::array();
    for (long k : r.attained_at) ks.push_back(k);
    out << json{{"a2", to_string(a2)},
                {"kmax", o.kmax},
                {"lower_bound", to_string(r.bound)},
                {"omegaF", to_string(r.omega_f)},
                {"attained_at", ks},
                {"upper_bound", upper_pi},
                {"certified", lower_ok && match}}
               .dump(2)
        << "\n";
  } else {
    out << "lower bound min_k v(Q^k) + v(Q^-k), k <= " << o.kmax << ": " << to_string(r.bound) << " π ≈ "
        << fixed(to_double(r.bound) * std::numbers::pi) << "\n";
    out << "attained at k=" << r.attained_at.front();
    if (r.attained_at.size() > 1) {
      out << " (also k=";
      for (std::size_t i = 1; i < r.attained_at.size(); ++i) out << (i > 1 ? ", " : "") << r.attained_at[i];
      out << ")";
    }
    out << "\nomega(F) = " << to_string(r.omega_f) << " π\n";
    out << "upper bound L(2 alpha loop) = " << fixed(upper_pi) << " π\n";
    out << "certificate: " << (lower_ok && match ? "lower bound meets upper bound" : "NOT certified") << "\n";
  }
  if (!lower_ok) throw CheckFailed("lower bound " + to_string(r.bound) + " differs from omega(F) = " + to_string(r.omega_f));
  if (!match) throw CheckFailed("upper bound " + fixed(upper_pi) + " differs from " + to_string(r.bound) + " beyond 1e-12");
  return 0;
}

std::string lengths_text(const Lengths& l) {
  using std::numbers::pi;
  std::ostringstream s;
  s << "L+ = " << fixed(l.plus) << " (" << fixed(l.plus / pi) << " ×π)\n"
    << "L- = " << fixed(l.minus) << " (" << fixed(l.minus / pi) << " ×π)\n"
    << "L  = " << fixed(l.total()) << " (" << fixed(l.total() / pi) << " ×π)\n";
  return s.str();
}

int cmd_lengths(std::ostream& out, const Options& o) {
  if (o.k != 1 && o.k != 2) throw std::invalid_argument("--k must be 1 or 2");
  Lengths l = lengths_blowup_loop(static_cast<int>(o.k), parse_rational(o.a2));
  if (o.format == "json") out << to_json(l).dump(2) << "\n";
  else out << lengths_text(l);
  return 0;
}

int cmd_geocheck(std::ostream& out, const Options& o) {
  SampledPath path = load_path_csv(o.csv);
  ExtremumReport report = fixed_extremum_check(path, o.window);
  Lengths l = path_lengths(path);
  json j = to_json(report);
  j["lengths"] = to_json(l);
  j["file"] = o.csv;
  if (o.format == "text") out << lengths_text(l);
  out << j.dump(2) << "\n";
  if (!report.geodesic_criterion())
    throw CheckFailed(std::string("fixed-extremum criterion fails:") + (report.has_fixed_max_each_moment ? "" : " no fixed max") +
                      (report.has_fixed_min_each_moment ? "" : " no fixed min"));
  return 0;
}

int cmd_model_export(std::ostream& out, const Options& o) {
  out << to_json(load_model(o)).dump(2) << "\n";
  return 0;
}

int cmd_model_validate(std::ostream& out, const Options& o) {
  ManifoldModel m = load_model(o);
  std::vector<std::string> issues = m.validate();
  for (auto& s : check_associativity_on_basis(m)) issues.push_back("associativity fails on " + s);
  if (o.format == "json") {
    out << json{{"model", m.name()}, {"valid", issues.empty()}, {"issues", issues}}.dump(2) << "\n";
  } else {
    out << m.name() << ": " << (issues.empty() ? "valid" : "INVALID") << "\n";
    for (const auto& s : issues) out << "  " << s << "\n";
  }
  if (!issues.empty()) throw CheckFailed(std::to_string(issues.size()) + " model axiom(s) violated");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  configure_threads_from_env();
  Options o;
  CLI::App app{"Exact quantum homology, Seidel-element bounds and Hofer lengths"};
  app.require_subcommand(1);

  auto common = [&](CLI::App* c) {
    c->add_option("--format", o.format, "text, json or csv")->check(CLI::IsMember({"text", "json", "csv"}));
    c->add_option("--out", o.out, "write output to this file");
  };
  auto model_opts = [&](CLI::App* c) {
    c->add_option("--model", o.model, "blowup, cpn, or a model JSON file");
    c->add_option("--n", o.n, "complex dimension for --model cpn")->check(CLI::PositiveNumber);
    c->add_option("--a2", o.a2, "a^2 in (0, 1) as p/q for --model blowup");
  };

  struct Entry {
    CLI::App* app;
    int (*run)(std::ostream&, const Options&);
  };
  std::vector<Entry> commands;

  auto* product = app.add_subcommand("product", "quantum product of two elements");
  model_opts(product);
  common(product);
  product->add_option("exprs", o.exprs, "two element expressions (use -- before a leading '-')")->expected(2)->required();
  commands.push_back({product, cmd_product});

  auto* pw = app.add_subcommand("power", "x^k; negative k needs a finite inverse");
  model_opts(pw);
  common(pw);
  pw->add_option("--k", o.k, "exponent");
  pw->add_option("expr", o.exprs, "element expression")->expected(1)->required();
  commands.push_back({pw, cmd_power});

  auto* inv = app.add_subcommand("invert", "inverse, truncated below --floor when infinite");
  model_opts(inv);
  common(inv);
  inv->add_option("--floor", o.floor, "keep terms with omega-valuation above this rational");
  inv->add_option("expr", o.exprs, "element expression")->expected(1)->required();
  commands.push_back({inv, cmd_invert});

  auto* ps = app.add_subcommand("psi", "Seidel element of the k-fold blow-up loop");
  ps->add_option("--k", o.k, "loop multiple");
  ps->add_option("--a2", o.a2, "a^2 in (0, 1)");
  common(ps);
  commands.push_back({ps, cmd_psi});

  auto* bd = app.add_subcommand("bounds", "check v(Q^k) + v(Q^-k) >= omega(F) for 2 <= k <= kmax");
  bd->add_option("--a2", o.a2, "a^2 in (0, 1)");
  bd->add_option("--kmax", o.kmax, "largest k");
  common(bd);
  commands.push_back({bd, cmd_bounds});

  auto* gr = app.add_subcommand("growth", "growth of v(Q^-k) and v(Psi(k alpha))/k");
  gr->add_option("--a2", o.a2, "a^2 in (0, 1)");
  gr->add_option("--kmax", o.kmax, "largest k");
  common(gr);
  commands.push_back({gr, cmd_growth});

  auto* rt = app.add_subcommand("rtilde", "certify min_k v(Q^k) + v(Q^-k) against the 2 alpha loop length");
  rt->add_option("--a2", o.a2, "a^2 in (0, 1)");
  rt->add_option("--kmax", o.kmax, "largest k");
  common(rt);
  commands.push_back({rt, cmd_rtilde});

  auto* ln = app.add_subcommand("lengths", "one-sided Hofer lengths of the blow-up loops");
  ln->add_option("--a2", o.a2, "a^2 in (0, 1)");
  ln->add_option("--k", o.k, "1 (alpha) or 2 (2 alpha)");
  common(ln);
  commands.push_back({ln, cmd_lengths});

  auto* geo = app.add_subcommand("geocheck", "fixed-extremum criterion on a sampled path CSV");
  geo->add_option("csv", o.csv, "rows = time slices, columns = sample points")->required();
  geo->add_option("--window", o.window, "time slices per moment")->check(CLI::PositiveNumber);
  common(geo);
  commands.push_back({geo, cmd_geocheck});

  auto* ex = app.add_subcommand("model-export", "write a model as JSON");
  model_opts(ex);
  common(ex);
  commands.push_back({ex, cmd_model_export});

  auto* va = app.add_subcommand("model-validate", "check model axioms and associativity");
  model_opts(va);
  common(va);
  commands.push_back({va, cmd_model_validate});

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  std::ofstream file;
  if (!o.out.empty()) {
    file.open(o.out);
    if (!file) {
      std::cerr << "error: cannot write " << o.out << "\n";
      return 1;
    }
  }
  std::ostream& out = o.out.empty() ? std::cout : file;

  for (const auto& c : commands) {
    if (!c.app->parsed()) continue;
    try {
      return c.run(out, o);
    } catch (const CheckFailed& e) {
      out.flush();
      std::cerr << "check failed: " << e.what() << "\n";
      return kFailed;
    } catch (const std::exception& e) {
      std::cerr << "error: " << e.what() << "\n";
      return 1;
    }
  }
  return 1;
}
