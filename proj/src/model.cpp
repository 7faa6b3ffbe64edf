#include "qhofer/model.hpp"

#include <algorithm>

namespace qhofer {

RationalMatrix invert_matrix(const RationalMatrix& m) {
  const std::size_t n = m.size();
  RationalMatrix a = m;
  RationalMatrix inv(n, std::vector<Rational>(n, Rational(0)));
  for (std::size_t i = 0; i < n; ++i) {
    if (a[i].size() != n) throw ModelError("matrix is not square");
    inv[i][i] = 1;
  }
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && a[pivot][col] == 0) ++pivot;
    if (pivot == n) throw ModelError("matrix is singular");
    std::swap(a[pivot], a[col]);
    std::swap(inv[pivot], inv[col]);
    Rational scale = 1 / a[col][col];
    for (std::size_t k = 0; k < n; ++k) {
      a[col][k] *= scale;
      inv[col][k] *= scale;
    }
    for (std::size_t row = 0; row < n; ++row) {
      if (row == col || a[row][col] == 0) continue;
      Rational f = a[row][col];
      for (std::size_t k = 0; k < n; ++k) {
        a[row][k] -= f * a[col][k];
        inv[row][k] -= f * inv[col][k];
      }
    }
  }
  return inv;
}

ManifoldModel::ManifoldModel(Data data) : data_(std::move(data)) {
  const std::size_t n = data_.basis.size();
  if (n == 0) throw ModelError("model has an empty basis");
  if (data_.pairing.size() != n) throw ModelError("pairing matrix size does not match basis");
  for (const auto& row : data_.pairing)
    if (row.size() != n) throw ModelError("pairing matrix is not square");
  if (data_.omega.values.size() != rank()) throw ModelError("omega has wrong length");
  if (data_.c1.values.size() != rank()) throw ModelError("c1 has wrong length");
  try {
    inverse_pairing_ = invert_matrix(data_.pairing);
  } catch (const ModelError&) {
    throw ModelError("pairing is degenerate");
  }

  for (std::size_t i = 0; i < n; ++i) {
    if (data_.basis[i].degree != data_.dim) continue;
    if (has_unit_) throw ModelError("more than one class of top degree");
    unit_index_ = i;
    has_unit_ = true;
  }

  for (const auto& e : data_.gw) {
    if (e.sphere_class.rank() != rank()) throw ModelError("GW entry class has wrong rank");
    for (auto idx : e.insertions)
      if (idx >= n) throw ModelError("GW entry insertion out of range");
    if (e.value == 0) continue;
    Triple key = e.insertions;
    std::sort(key.begin(), key.end());
    auto [it, inserted] = table_[key].try_emplace(e.sphere_class, e.value);
    if (!inserted && it->second != e.value)
      throw ModelError("conflicting GW entries for one unordered triple");
  }

  // a_i * a_j = sum_{B,k} n(a_i,a_j,a_k;B) dual(a_k) e^{-B},
  // dual(a_k) = sum_m inverse_pairing[k][m] a_m.
  products_.assign(n * n, {});
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      std::map<std::pair<std::size_t, SphereClass>, Rational> acc;
      for (std::size_t k = 0; k < n; ++k) {
        Triple key{i, j, k};
        std::sort(key.begin(), key.end());
        auto it = table_.find(key);
        if (it == table_.end()) continue;
        for (const auto& [b, value] : it->second)
          for (std::size_t m = 0; m < n; ++m)
            if (inverse_pairing_[k][m] != 0) acc[{m, -b}] += value * inverse_pairing_[k][m];
      }
      auto& out = products_[i * n + j];
      for (auto& [key, coeff] : acc)
        if (coeff != 0) out.push_back({key.first, key.second, coeff, !key.second.is_zero()});
    }
  }
}

std::vector<GwEntry> ManifoldModel::gw_entries() const {
  std::vector<GwEntry> out;
  for (const auto& [key, row] : table_)
    for (const auto& [b, value] : row) out.push_back({key, b, value});
  return out;
}

Rational ManifoldModel::gw(std::size_t i, std::size_t j, std::size_t k, const SphereClass& b) const {
  Triple key{i, j, k};
  std::sort(key.begin(), key.end());
  auto it = table_.find(key);
  if (it == table_.end()) return 0;
  auto jt = it->second.find(b);
  return jt == it->second.end() ? Rational(0) : jt->second;
}

std::size_t ManifoldModel::unit_index() const {
  if (!has_unit_) throw ModelError("model has no class of top degree");
  return unit_index_;
}

std::size_t ManifoldModel::index_of(const std::string& basis_name) const {
  for (std::size_t i = 0; i < size(); ++i)
    if (data_.basis[i].name == basis_name) return i;
  throw ModelError("unknown basis class \"" + basis_name + "\"");
}

std::size_t ManifoldModel::generator_index(const std::string& generator_name) const {
  for (std::size_t i = 0; i < rank(); ++i)
    if (data_.generators[i] == generator_name) return i;
  throw ModelError("unknown generator \"" + generator_name + "\"");
}

std::vector<std::string> ManifoldModel::validate() const {
  std::vector<std::string> issues;
  const std::size_t n = size();
  const int dim = data_.dim;
  auto cls = [&](std::size_t i) { return data_.basis[i].name; };

  if (dim <= 0 || dim % 2 != 0) issues.push_back("dimension must be a positive even integer");
  for (std::size_t i = 0; i < n; ++i) {
    int d = data_.basis[i].degree;
    if (d < 0 || d > dim || d % 2 != 0) issues.push_back("class " + cls(i) + " has degree outside the even range [0, dim]");
    for (std::size_t j = i + 1; j < n; ++j)
      if (data_.basis[i].name == data_.basis[j].name) issues.push_back("duplicate basis name " + cls(i));
  }
  if (!has_unit_) issues.push_back("no fundamental class (class of degree dim)");

  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const Rational& v = data_.pairing[i][j];
      if (v != data_.pairing[j][i] && i < j) issues.push_back("pairing not symmetric at (" + cls(i) + ", " + cls(j) + ")");
      if (v != 0 && data_.basis[i].degree + data_.basis[j].degree != dim)
        issues.push_back("pairing " + cls(i) + "." + cls(j) + " nonzero but degrees do not add to dim");
    }
  }

  for (const auto& [key, row] : table_) {
    std::string triple = "(" + cls(key[0]) + ", " + cls(key[1]) + ", " + cls(key[2]) + ")";
    for (const auto& [b, value] : row) {
      Rational codim_sum = 0;
      for (auto idx : key) codim_sum += dim - data_.basis[idx].degree;
      if (codim_sum != dim + 2 * data_.c1(b))
        issues.push_back("GW entry " + triple + " violates the dimension constraint");
      if (b.is_zero()) continue;
      if (data_.omega(b) <= 0) issues.push_back("GW entry " + triple + " has omega(B) <= 0 for B != 0");
      if (has_unit_ && std::find(key.begin(), key.end(), unit_index_) != key.end())
        issues.push_back("GW entry " + triple + " with B != 0 has a fundamental-class insertion");
    }
  }

  if (has_unit_) {
    SphereClass zero(rank());
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t c = 0; c < n; ++c)
        if (gw(unit_index_, a, c, zero) != data_.pairing[a][c])
          issues.push_back("fundamental-class axiom fails: n([M], " + cls(a) + ", " + cls(c) + "; 0) != pairing");
  }
  return issues;
}

ManifoldModel model_blowup_cp2(const Rational& a_squared) {
  if (a_squared <= 0 || a_squared >= 1) throw std::invalid_argument("a^2 must lie in (0, 1), got " + to_string(a_squared));
  enum : std::size_t { p = 0, E = 1, F = 2, M = 3 };
  ManifoldModel::Data d;
  d.name = "blowup_cp2";
  d.dim = 4;
  d.basis = {{"p", 0}, {"E", 2}, {"F", 2}, {"1", 4}};
  d.generators = {"E", "F"};
  d.pairing = RationalMatrix(4, std::vector<Rational>(4, Rational(0)));
  d.pairing[p][M] = d.pairing[M][p] = 1;
  d.pairing[E][E] = -1;
  d.pairing[E][F] = d.pairing[F][E] = 1;

  SphereClass zero(2);
  const SphereClass e_class = SphereClass::generator(2, 0);
  const SphereClass f_class = SphereClass::generator(2, 1);
  for (std::size_t a = 0; a < 4; ++a)
    for (std::size_t c = a; c < 4; ++c)
      if (d.pairing[a][c] != 0) d.gw.push_back({{M, a, c}, zero, d.pairing[a][c]});
  d.gw.push_back({{p, p, F}, e_class + f_class, 1});
  d.gw.push_back({{p, E, E}, f_class, 1});
  // n(A1, A2, A3; E) = (-1)^{number of E insertions}
  d.gw.push_back({{E, E, E}, e_class, -1});
  d.gw.push_back({{E, E, F}, e_class, 1});
  d.gw.push_back({{E, F, F}, e_class, -1});
  d.gw.push_back({{F, F, F}, e_class, 1});

  d.omega.values = {a_squared, 1 - a_squared};
  d.c1.values = {1, 2};
  return ManifoldModel(std::move(d));
}

ManifoldModel model_cpn(int n, const Rational& omega_line) {
  if (n < 1) throw std::invalid_argument("CP^n requires n >= 1, got " + std::to_string(n));
  if (omega_line <= 0) throw std::invalid_argument("omega(L) must be positive");
  const auto size = static_cast<std::size_t>(n) + 1;
  ManifoldModel::Data d;
  d.name = "cp" + std::to_string(n);
  d.dim = 2 * n;
  d.generators = {"L"};
  for (int k = 0; k <= n; ++k) {
    std::string name = k == 0 ? "1" : k == 1 ? "x" : "x^" + std::to_string(k);
    d.basis.push_back({name, 2 * (n - k)});
  }
  d.pairing = RationalMatrix(size, std::vector<Rational>(size, Rational(0)));
  for (int i = 0; i <= n; ++i) d.pairing[i][n - i] = 1;
  for (int dd = 0; dd <= 1; ++dd) {
    SphereClass b = SphereClass::generator(1, 0, dd);
    for (int i = 0; i <= n; ++i)
      for (int j = i; j <= n; ++j) {
        int k = n + dd * (n + 1) - i - j;
        if (k < j || k > n) continue;
        d.gw.push_back({{std::size_t(i), std::size_t(j), std::size_t(k)}, b, 1});
      }
  }
  d.omega.values = {omega_line};
  d.c1.values = {n + 1};
  return ManifoldModel(std::move(d));
}

nlohmann::json to_json(const ManifoldModel& model) {
  using nlohmann::json;
  json j;
  j["name"] = model.name();
  j["dim"] = model.dim();
  j["generators"] = model.generators();
  json basis = json::array();
  for (const auto& b : model.basis()) basis.push_back({{"name", b.name}, {"degree", b.degree}});
  j["basis"] = basis;
  json pairing = json::array();
  for (const auto& row : model.pairing()) {
    json r = json::array();
    for (const auto& v : row) r.push_back(to_string(v));
    pairing.push_back(r);
  }
  j["pairing"] = pairing;
  json gw = json::array();
  for (const auto& e : model.gw_entries()) {
    json ins = json::array();
    for (auto idx : e.insertions) ins.push_back(model.basis()[idx].name);
    json cls = json::array();
    for (const auto& c : e.sphere_class.coords()) cls.push_back(to_string(c));
    gw.push_back({{"insertions", ins}, {"class", cls}, {"value", to_string(e.value)}});
  }
  j["gw"] = gw;
  json omega = json::array();
  for (const auto& v : model.omega().values) omega.push_back(to_string(v));
  j["omega"] = omega;
  j["c1"] = model.c1().values;
  return j;
}

namespace {

Rational rational_field(const nlohmann::json& v, const std::string& where) {
  if (v.is_string()) return parse_rational(v.get<std::string>());
  if (v.is_number_integer()) return Rational(v.get<long>());
  throw ModelError(where + ": expected a rational string");
}

}  // namespace

ManifoldModel model_from_json(const nlohmann::json& j) {
  try {
    ManifoldModel::Data d;
    d.name = j.at("name").get<std::string>();
    d.dim = j.at("dim").get<int>();
    d.generators = j.at("generators").get<std::vector<std::string>>();
    for (const auto& b : j.at("basis")) d.basis.push_back({b.at("name").get<std::string>(), b.at("degree").get<int>()});
    for (const auto& row : j.at("pairing")) {
      std::vector<Rational> r;
      for (const auto& v : row) r.push_back(rational_field(v, "pairing"));
      d.pairing.push_back(std::move(r));
    }
    auto index_of = [&](const std::string& name) {
      for (std::size_t i = 0; i < d.basis.size(); ++i)
        if (d.basis[i].name == name) return i;
      throw ModelError("GW entry names unknown basis class \"" + name + "\"");
    };
    for (const auto& e : j.at("gw")) {
      GwEntry entry;
      const auto& ins = e.at("insertions");
      if (ins.size() != 3) throw ModelError("GW entry must have exactly 3 insertions");
      for (std::size_t t = 0; t < 3; ++t)
        entry.insertions[t] = ins[t].is_string() ? index_of(ins[t].get<std::string>()) : ins[t].get<std::size_t>();
      std::vector<Rational> coords;
      for (const auto& c : e.at("class")) coords.push_back(rational_field(c, "GW class"));
      entry.sphere_class = SphereClass(std::move(coords));
      entry.value = rational_field(e.at("value"), "GW value");
      d.gw.push_back(std::move(entry));
    }
    for (const auto& v : j.at("omega")) d.omega.values.push_back(rational_field(v, "omega"));
    d.c1.values = j.at("c1").get<std::vector<long>>();
    return ManifoldModel(std::move(d));
  } catch (const nlohmann::json::exception& e) {
    throw ModelError(std::string("malformed model file: ") + e.what());
  } catch (const ParseError& e) {
    throw ModelError(std::string("malformed rational in model file: ") + e.what());
  }
}

}  // namespace qhofer
