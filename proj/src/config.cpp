#include "isl/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

namespace isl {

using json = nlohmann::json;

namespace {

// Reads keys of one JSON object and rejects the ones nobody asked for.
class Reader {
 public:
  Reader(const json& j, std::string where) : j_(j), where_(std::move(where)) {
    if (!j_.is_object()) fail(ErrorKind::config, where_ + " must be an object");
  }
  ~Reader() noexcept(false) {
    if (std::uncaught_exceptions() > 0) return;
    for (auto it = j_.begin(); it != j_.end(); ++it)
      if (!seen_.count(it.key())) fail(ErrorKind::config, "unknown key '" + path(it.key()) + "'");
  }

  const json* get(const std::string& key) {
    seen_.insert(key);
    auto it = j_.find(key);
    return it == j_.end() ? nullptr : &*it;
  }

  template <class T>
  void read(const std::string& key, T& out) {
    if (const json* v = get(key)) {
      try {
        out = v->get<T>();
      } catch (const json::exception&) {
        fail(ErrorKind::config, "ill-typed value for '" + path(key) + "'");
      }
    }
  }

  std::string path(const std::string& key) const { return where_.empty() ? key : where_ + "." + key; }

 private:
  const json& j_;
  std::string where_;
  std::set<std::string> seen_;
};

cd parse_complex(const json& v, const std::string& where) {
  if (v.is_number()) return cd(v.get<double>(), 0.0);
  if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number()) return cd(v[0].get<double>(), v[1].get<double>());
  fail(ErrorKind::config, where + ": coefficients are numbers or [re, im] pairs");
}

void read_model(const json& j, ModelSpec& m) {
  Reader r(j, "model");
  r.read("id", m.id);
  r.read("N", m.N);
  r.read("k", m.k);
  r.read("potential", m.potential);
  r.read("perturb", m.perturb);
  r.read("grid_path", m.grid_path);
  r.read("f", m.p1d.f);
  r.read("g", m.p1d.g);
  r.read("a", m.p1d.a);
  if (const json* f0 = r.get("f0")) {
    if (!f0->is_array()) fail(ErrorKind::config, "model.f0 must be a list of coefficient lists");
    m.f0.clear();
    for (const auto& comp : *f0) {
      if (!comp.is_array()) fail(ErrorKind::config, "model.f0 entries must be coefficient lists");
      std::vector<cd> c;
      for (const auto& v : comp) c.push_back(parse_complex(v, "model.f0"));
      m.f0.push_back(c);
    }
  }
}

Chart read_chart(const json& j, Chart c) {
  Reader r(j, "chart");
  r.read("x_min", c.x_min);
  r.read("x_max", c.x_max);
  r.read("y_min", c.y_min);
  r.read("y_max", c.y_max);
  r.read("nx", c.nx);
  r.read("ny", c.ny);
  if (c.nx < 8 || c.ny < 8 || !(c.x_max > c.x_min) || !(c.y_max > c.y_min))
    fail(ErrorKind::config, "chart needs nx, ny >= 8 and x_max > x_min, y_max > y_min");
  return c;
}

void set_path(json& root, const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos || eq == 0) fail(ErrorKind::usage, "--set expects key=value, got '" + assignment + "'");
  const std::string key = assignment.substr(0, eq), text = assignment.substr(eq + 1);
  json value;
  try {
    value = json::parse(text);
  } catch (const json::exception&) {
    value = text;
  }
  json* node = &root;
  std::stringstream ss(key);
  std::string part;
  std::vector<std::string> parts;
  while (std::getline(ss, part, '.')) parts.push_back(part);
  for (size_t k = 0; k < parts.size(); ++k) {
    if (node->is_null()) *node = json::object();
    if (!node->is_object()) fail(ErrorKind::config, "--set path '" + key + "' crosses a non-table value");
    if (k + 1 == parts.size()) (*node)[parts[k]] = value;
    else node = &(*node)[parts[k]];
  }
}

}  // namespace

cd parse_beta(const std::string& s) {
  if (s == "1") return 1.0;
  if (s == "i") return kI;
  if (s == "-i") return -kI;
  try {
    size_t pos = 0;
    const double v = std::stod(s, &pos);
    if (pos == s.size()) return v;
  } catch (const std::exception&) {
  }
  fail(ErrorKind::config, "beta must be \"1\", \"i\", \"-i\" or a real number, got '" + s + "'");
}

Config parse_config(const std::string& text, const std::vector<std::string>& overrides) {
  json root;
  try {
    root = text.empty() ? json::object() : json::parse(text);
  } catch (const json::exception& e) {
    fail(ErrorKind::config, std::string("config is not valid JSON: ") + e.what());
  }
  for (const auto& o : overrides) set_path(root, o);

  Config c;
  Reader r(root, "");
  if (const json* m = r.get("model")) read_model(*m, c.model);
  if (const json* ch = r.get("chart")) c.chart = read_chart(*ch, default_chart(c.model.id));
  if (const json* l = r.get("lambda")) {
    if (l->is_number()) c.lambda = {l->get<double>()};
    else if (l->is_array() && !l->empty() && std::all_of(l->begin(), l->end(), [](const json& v) { return v.is_number(); }))
      c.lambda = l->get<std::vector<double>>();
    else fail(ErrorKind::config, "lambda must be a number or a non-empty list of numbers");
  }
  r.read("formula", c.formula);
  if (const json* b = r.get("beta")) {
    if (b->is_number()) c.beta = std::to_string(b->get<double>());
    else if (b->is_string()) c.beta = b->get<std::string>();
    else fail(ErrorKind::config, "beta must be a string or a number");
    parse_beta(c.beta);
  }
  if (const json* s = r.get("S")) {
    if (!s->is_array()) fail(ErrorKind::config, "S must be a list of terms");
    for (const auto& t : *s) {
      Reader tr(t, "S[]");
      PolyTerm p;
      tr.read("basis", p.basis);
      tr.read("px", p.px);
      tr.read("py", p.py);
      tr.read("coeff", p.coeff);
      c.S.push_back(p);
    }
  }
  if (const json* rs = r.get("R")) {
    Reader rr(*rs, "R");
    rr.read("id", c.R.id);
    rr.read("f", c.R.f);
    rr.read("g", c.R.g);
  }
  r.read("wavefunction", c.wavefunction);
  if (const json* t = r.get("tolerances")) {
    Reader tr(*t, "tolerances");
    tr.read("zcc", c.tol.zcc);
    tr.read("immersion", c.tol.immersion);
    tr.read("closed", c.tol.closed);
    tr.read("path", c.tol.path);
    tr.read("recover", c.tol.recover);
  }
  if (const json* o = r.get("output")) {
    Reader orr(*o, "output");
    orr.read("dir", c.output.dir);
    orr.read("prefix", c.output.prefix);
    orr.read("obj_axes", c.output.obj_axes);
    orr.read("obj", c.output.obj);
    orr.read("csv", c.output.csv);
    orr.read("json", c.output.json);
    if (c.output.obj_axes.size() != 3) fail(ErrorKind::config, "output.obj_axes needs three basis indices");
  }
  if (const json* q = r.get("quadrature")) {
    Reader qr(*q, "quadrature");
    qr.read("nr", c.quadrature.nr);
    qr.read("nphi", c.quadrature.nphi);
  }
  if (const json* b = r.get("basepoint")) {
    Reader br(*b, "basepoint");
    int i = -1, j = -1;
    br.read("i", i);
    br.read("j", j);
    if (i >= 0) c.i0 = i;
    if (j >= 0) c.j0 = j;
  }
  static const std::set<std::string> formulas = {"st", "cd", "fg", "modfg", "weierstrass"};
  if (!formulas.count(c.formula))
    fail(ErrorKind::config, "formula must be one of st, cd, fg, modfg, weierstrass; got '" + c.formula + "'");
  if (c.wavefunction != "closed_form" && c.wavefunction != "integrated")
    fail(ErrorKind::config, "wavefunction must be closed_form or integrated");
  return c;
}

Config load_config(const std::optional<std::string>& path, const std::vector<std::string>& overrides) {
  std::string text;
  if (path) {
    std::ifstream in(*path);
    if (!in) fail(ErrorKind::usage, "cannot open config file '" + *path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    text = ss.str();
  }
  return parse_config(text, overrides);
}

std::string default_config_json() {
  nlohmann::ordered_json j = {{"model", {{"id", "cp2-veronese"}, {"k", 0}, {"potential", "integrable"}, {"perturb", 0.0}}},
            {"chart", {{"x_min", -1.0}, {"x_max", 1.0}, {"y_min", -1.0}, {"y_max", 1.0}, {"nx", 64}, {"ny", 64}}},
            {"lambda", {0.5}},
            {"formula", "weierstrass"},
            {"beta", "1"},
            {"S", json::array()},
            {"R", {{"id", "conformal"}, {"f", {1.0}}, {"g", json::array()}}},
            {"wavefunction", "closed_form"},
            {"tolerances", {{"zcc", 1e-8}, {"immersion", 1e-5}, {"closed", 1e-6}, {"path", 1e-7}, {"recover", 1e-7}}},
            {"output", {{"dir", "."}, {"prefix", "surface"}, {"obj_axes", {8, 4, 5}}}},
            {"quadrature", {{"nr", 128}, {"nphi", 128}}}};
  return j.dump(2);
}

}  // namespace isl
