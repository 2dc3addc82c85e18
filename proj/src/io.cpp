#include "forge/io.hpp"

#include <filesystem>
#include <fstream>
#include <numeric>
#include <sstream>

#include "json.hpp"

namespace forge {

using json = nlohmann::json;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

bool is_file(const std::string& path) {
  std::error_code ec;
  return std::filesystem::is_regular_file(path, ec);
}

namespace {

json parse_doc(const std::string& text, const std::string& source) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    size_t byte = e.byte ? e.byte - 1 : 0;
    size_t line = 1, col = 1;
    for (size_t i = 0; i < byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    std::string msg = e.what();
    auto p = msg.find("syntax error");
    throw InputError(source + ":" + std::to_string(line) + ":" + std::to_string(col) + ": parse error: " +
                     (p == std::string::npos ? msg : msg.substr(p)));
  }
}

[[noreturn]] void bad(const std::string& source, const std::string& path, const std::string& why) {
  throw InputError(source + ": " + path + ": " + why);
}

const json& field_of(const json& j, const char* key, const std::string& source, const std::string& path) {
  if (!j.is_object() || !j.contains(key)) bad(source, path, std::string("missing \"") + key + "\"");
  return j.at(key);
}

void expect_kind(const json& j, const std::string& kind, const std::string& source) {
  if (!j.is_object()) bad(source, "$", "expected an object");
  if (j.contains("kind") && j.at("kind") != kind)
    bad(source, "$.kind", "expected \"" + kind + "\", found " + j.at("kind").dump());
}

Scalar scalar_of(const json& j, int field, const std::string& source, const std::string& path) {
  try {
    if (j.is_number_integer()) return Scalar(j.get<long>());
    if (j.is_string()) return Scalar::parse(j.get<std::string>(), field);
  } catch (const InputError& e) {
    bad(source, path, e.what());
  } catch (const std::exception& e) {
    bad(source, path, std::string("bad scalar: ") + e.what());
  }
  bad(source, path, "expected a scalar string");
}

Index index_of(const json& j, Index bound, const std::string& source, const std::string& path) {
  if (!j.is_number_integer()) bad(source, path, "expected an integer index");
  long v = j.get<long>();
  if (v < 0 || static_cast<Index>(v) >= bound)
    bad(source, path, "index " + std::to_string(v) + " out of range [0," + std::to_string(bound) + ")");
  return static_cast<Index>(v);
}

Vec vec_of(const json& j, Index dim, int field, const std::string& source, const std::string& path) {
  if (!j.is_array()) bad(source, path, "expected a list of [index, scalar] pairs");
  Acc acc(dim);
  for (size_t i = 0; i < j.size(); ++i) {
    std::string p = path + "[" + std::to_string(i) + "]";
    const json& e = j[i];
    if (!e.is_array() || e.size() != 2) bad(source, p, "expected [index, scalar]");
    acc.add(index_of(e[0], dim, source, p + "[0]"), scalar_of(e[1], field, source, p + "[1]"));
  }
  return acc.take();
}

// one top-level key per line, one array element per line
std::string format_doc(const json& j) {
  std::string out = "{\n";
  size_t k = 0;
  for (const auto& [key, val] : j.items()) {
    out += "  " + json(key).dump() + ": ";
    if (val.is_array() && !val.empty()) {
      out += "[\n";
      for (size_t i = 0; i < val.size(); ++i) out += "    " + val[i].dump() + (i + 1 < val.size() ? ",\n" : "\n");
      out += "  ]";
    } else if (val.is_object()) {
      out += "{\n";
      size_t m = 0;
      for (const auto& [k2, v2] : val.items())
        out += "    " + json(k2).dump() + ": " + v2.dump() + (++m < val.size() ? ",\n" : "\n");
      out += "  }";
    } else {
      out += val.dump();
    }
    out += ++k < j.size() ? ",\n" : "\n";
  }
  return out + "}";
}

json vec_json(const Vec& v) {
  json a = json::array();
  for (const auto& [i, c] : v.e) a.push_back(json::array({i, c.str()}));
  return a;
}

std::vector<std::string> labels_of(const json& j, Index dim, const std::string& source) {
  std::vector<std::string> labels;
  if (!j.contains("labels")) {
    for (Index i = 0; i < dim; ++i) labels.push_back("b" + std::to_string(i));
    return labels;
  }
  const json& l = j.at("labels");
  if (!l.is_array() || l.size() != dim)
    bad(source, "$.labels", "expected " + std::to_string(dim) + " labels");
  for (const auto& x : l) labels.push_back(x.get<std::string>());
  return labels;
}

int field_from(const json& j, int field, const std::string& source) {
  if (!j.contains("field")) return field > 0 ? field : 1;
  const json& f = j.at("field");
  if (!f.is_number_integer() || f.get<int>() < 1) bad(source, "$.field", "expected a positive integer");
  return f.get<int>();
}

void collect_order(int& n, const Scalar& s) {
  if (s.order() == 1) return;
  if (n != 1 && n != s.order()) throw InputError("mixed cyclotomic orders cannot be exported");
  n = s.order();
}

}  // namespace

std::string hopf_to_json(const Hopf& h) {
  int n = 1;
  auto scan = [&](const Vec& v) {
    for (const auto& [i, c] : v.e) collect_order(n, c);
  };
  for (const auto& v : h.alg.table) scan(v);
  for (const auto& v : h.cop.cols) scan(v);
  for (const auto& v : h.eps.cols) scan(v);
  for (const auto& v : h.S.cols) scan(v);
  json j;
  j["kind"] = "hopf";
  j["name"] = h.name;
  j["field"] = n;
  j["dim"] = h.dim();
  j["labels"] = h.alg.labels;
  j["unit"] = vec_json(h.alg.one);
  json mul = json::array();
  for (Index a = 0; a < h.dim(); ++a)
    for (Index b = 0; b < h.dim(); ++b)
      if (!h.alg.mul_basis(a, b).is_zero()) mul.push_back(json::array({a, b, vec_json(h.alg.mul_basis(a, b))}));
  j["mul"] = mul;
  json cop = json::array(), eps = json::array(), S = json::array();
  for (Index a = 0; a < h.dim(); ++a) {
    cop.push_back(vec_json(h.cop.col(a)));
    eps.push_back(h.eps.col(a).at(0).str());
    S.push_back(vec_json(h.S.col(a)));
  }
  j["coproduct"] = cop;
  j["counit"] = eps;
  j["antipode"] = S;
  return format_doc(j);
}

Hopf hopf_from_json(const std::string& text, const std::string& source, int field) {
  json j = parse_doc(text, source);
  expect_kind(j, "hopf", source);
  int n = field_from(j, field, source);
  const json& dj = field_of(j, "dim", source, "$");
  if (!dj.is_number_integer() || dj.get<long>() < 1) bad(source, "$.dim", "expected a positive integer");
  Index d = dj.get<Index>();
  std::string name = j.value("name", source);
  auto labels = labels_of(j, d, source);
  Vec one = vec_of(field_of(j, "unit", source, "$"), d, n, source, "$.unit");
  std::vector<Vec> table(d * d, Vec(d));
  const json& mul = field_of(j, "mul", source, "$");
  if (!mul.is_array()) bad(source, "$.mul", "expected a list of [i, j, vec]");
  for (size_t k = 0; k < mul.size(); ++k) {
    std::string p = "$.mul[" + std::to_string(k) + "]";
    const json& e = mul[k];
    if (!e.is_array() || e.size() != 3) bad(source, p, "expected [i, j, vec]");
    Index a = index_of(e[0], d, source, p + "[0]"), b = index_of(e[1], d, source, p + "[1]");
    table[a * d + b] = vec_of(e[2], d, n, source, p + "[2]");
  }
  auto columns = [&](const char* key, Index cod) {
    const json& c = field_of(j, key, source, "$");
    std::string p = std::string("$.") + key;
    if (!c.is_array() || c.size() != d)
      bad(source, p, "expected " + std::to_string(d) + " columns, found " + std::to_string(c.is_array() ? c.size() : 0));
    LinearMap m(d, cod);
    for (Index a = 0; a < d; ++a) m.cols[a] = vec_of(c[a], cod, n, source, p + "[" + std::to_string(a) + "]");
    return m;
  };
  LinearMap cop = columns("coproduct", d * d);
  const json& ej = field_of(j, "counit", source, "$");
  if (!ej.is_array() || ej.size() != d) bad(source, "$.counit", "expected " + std::to_string(d) + " scalars");
  LinearMap eps(d, 1);
  for (Index a = 0; a < d; ++a)
    eps.cols[a] = Vec::unit(1, 0, scalar_of(ej[a], n, source, "$.counit[" + std::to_string(a) + "]"));
  for (auto& c : eps.cols)
    if (c.e.size() == 1 && c.e[0].second.is_zero()) c = Vec(1);
  LinearMap S = columns("antipode", d);
  return make_hopf(name, Algebra::from_table(labels, table, one), cop, eps, S);
}

Hopf group_from_json(const std::string& text, const std::string& source) {
  json j = parse_doc(text, source);
  expect_kind(j, "group", source);
  const json& t = field_of(j, "table", source, "$");
  if (!t.is_array()) bad(source, "$.table", "expected a square list of lists");
  std::vector<std::vector<int>> table;
  for (size_t r = 0; r < t.size(); ++r) {
    if (!t[r].is_array()) bad(source, "$.table[" + std::to_string(r) + "]", "expected a row");
    std::vector<int> row;
    for (const auto& x : t[r]) {
      if (!x.is_number_integer()) bad(source, "$.table[" + std::to_string(r) + "]", "expected integers");
      row.push_back(x.get<int>());
    }
    table.push_back(row);
  }
  std::vector<std::string> labels;
  if (j.contains("labels")) labels = labels_of(j, table.size(), source);
  try {
    return group_algebra(table, labels, j.value("name", source));
  } catch (const InputError& e) {
    throw InputError(source + ": " + e.what());
  }
}

Vec rmatrix_from_json(const std::string& text, const std::string& source, const Hopf& h, int field) {
  json j = parse_doc(text, source);
  expect_kind(j, "rmatrix", source);
  int n = field_from(j, field, source);
  return vec_of(field_of(j, "R", source, "$"), h.dim() * h.dim(), n, source, "$.R");
}

namespace {

LieAlgebra lie_of(const json& j, const std::string& source) {
  const json& lj = field_of(j, "labels", source, "$");
  if (!lj.is_array()) bad(source, "$.labels", "expected a list of labels");
  std::vector<std::string> labels;
  for (const auto& x : lj) labels.push_back(x.get<std::string>());
  Index n = labels.size();
  std::map<std::pair<Index, Index>, std::vector<Scalar>> br;
  if (j.contains("brackets")) {
    const json& b = j.at("brackets");
    for (size_t k = 0; k < b.size(); ++k) {
      std::string p = "$.brackets[" + std::to_string(k) + "]";
      if (!b[k].is_array() || b[k].size() != 3 || !b[k][2].is_array() || b[k][2].size() != n)
        bad(source, p, "expected [i, j, [coordinates]]");
      Index a = index_of(b[k][0], n, source, p + "[0]"), c = index_of(b[k][1], n, source, p + "[1]");
      std::vector<Scalar> v;
      for (size_t m = 0; m < n; ++m) v.push_back(scalar_of(b[k][2][m], 1, source, p + "[2]"));
      br[{a, c}] = v;
    }
  }
  return LieAlgebra::from_brackets(j.value("name", source), labels, br);
}

}  // namespace

LieBialgebra lie_bialgebra_from_json(const std::string& text, const std::string& source) {
  json j = parse_doc(text, source);
  expect_kind(j, "lie_bialgebra", source);
  LieAlgebra h = lie_of(j, source);
  Index q = h.dim();
  std::vector<std::map<std::pair<Index, Index>, Scalar>> w(q);
  if (j.contains("cobracket")) {
    const json& c = j.at("cobracket");
    if (!c.is_array() || c.size() != q) bad(source, "$.cobracket", "expected one list per basis element");
    for (Index k = 0; k < q; ++k)
      for (size_t m = 0; m < c[k].size(); ++m) {
        std::string p = "$.cobracket[" + std::to_string(k) + "][" + std::to_string(m) + "]";
        const json& e = c[k][m];
        if (!e.is_array() || e.size() != 3) bad(source, p, "expected [a, b, w]");
        w[k][{index_of(e[0], q, source, p), index_of(e[1], q, source, p)}] += scalar_of(e[2], 1, source, p);
      }
  }
  return LieBialgebra::from_wedge(std::move(h), w);
}

std::string lie_bialgebra_to_json(const LieBialgebra& b) {
  json j;
  j["kind"] = "lie_bialgebra";
  j["name"] = b.h.name;
  j["labels"] = b.h.labels;
  Index q = b.dim();
  json br = json::array();
  for (Index a = 0; a < q; ++a)
    for (Index c = a + 1; c < q; ++c) {
      const auto& v = b.h.br(a, c);
      bool nz = false;
      json coords = json::array();
      for (const auto& x : v) {
        nz = nz || !x.is_zero();
        coords.push_back(x.str());
      }
      if (nz) br.push_back(json::array({a, c, coords}));
    }
  j["brackets"] = br;
  json cb = json::array();
  for (Index k = 0; k < q; ++k) {
    json terms = json::array();
    for (Index a = 0; a < q; ++a)
      for (Index c = a + 1; c < q; ++c)
        if (!b.nu[k][a * q + c].is_zero()) terms.push_back(json::array({a, c, (b.nu[k][a * q + c] * Scalar(2)).str()}));
    cb.push_back(terms);
  }
  j["cobracket"] = cb;
  return format_doc(j);
}

namespace {

RationalBase function_base_of(const json& j, const std::string& source) {
  expect_kind(j, "function_base", source);
  const json& v = field_of(j, "vars", source, "$");
  if (!v.is_number_integer() || v.get<int>() < 1) bad(source, "$.vars", "expected a positive integer");
  RationalBase b;
  b.nvars = v.get<int>();
  b.name = j.value("name", source);
  const json& d = field_of(j, "derivations", source, "$");
  if (!d.is_array()) bad(source, "$.derivations", "expected a list of coefficient lists");
  for (size_t k = 0; k < d.size(); ++k) {
    std::string p = "$.derivations[" + std::to_string(k) + "]";
    if (!d[k].is_array() || d[k].size() != static_cast<size_t>(b.nvars))
      bad(source, p, "expected one expression per variable");
    std::vector<RatFunc> row;
    for (const auto& e : d[k]) {
      if (!e.is_string()) bad(source, p, "expected expression strings");
      try {
        row.push_back(parse_ratfunc(e.get<std::string>(), b.nvars));
      } catch (const InputError& err) {
        bad(source, p, err.what());
      }
    }
    b.der.push_back(row);
  }
  return b;
}

}  // namespace

RationalBase function_base_from_json(const std::string& text, const std::string& source) {
  return function_base_of(parse_doc(text, source), source);
}

namespace {

LieBialgebra lie_bialgebra_ref(const json& j, const std::string& source, const std::string& path) {
  if (j.is_string()) return resolve_lie_bialgebra(j.get<std::string>());
  if (j.is_object()) return lie_bialgebra_from_json(j.dump(), source + " " + path);
  bad(source, path, "expected a name or a lie_bialgebra document");
}

CdybeInstance cdybe_of(const json& j, const std::string& source) {
  expect_kind(j, "cdybe", source);
  CdybeInstance out;
  out.name = j.value("name", source);
  LieAlgebra g = lie_bialgebra_ref(field_of(j, "g", source, "$"), source, "$.g").h;
  LieBialgebra hb = lie_bialgebra_ref(field_of(j, "h", source, "$"), source, "$.h");
  const json& ij = field_of(j, "incl", source, "$");
  if (!ij.is_array() || ij.size() != hb.dim()) bad(source, "$.incl", "expected one image per basis element of h");
  std::vector<std::vector<Scalar>> incl;
  for (size_t i = 0; i < ij.size(); ++i) {
    std::vector<Scalar> v;
    for (const auto& x : ij[i]) v.push_back(scalar_of(x, 1, source, "$.incl"));
    incl.push_back(v);
  }
  out.setup = make_classical_setup(std::move(g), std::move(hb), std::move(incl));
  const json& bj = field_of(j, "base", source, "$");
  if (bj.is_string())
    out.base = resolve_function_base(bj.get<std::string>());
  else
    out.base = function_base_of(bj, source);
  const json& rj = field_of(j, "r", source, "$");
  if (!rj.is_object()) bad(source, "$.r", "expected {\"a^b\": expression}");
  const auto& labels = out.setup.g.labels;
  for (const auto& [key, val] : rj.items()) {
    auto hat = key.find('^');
    if (hat == std::string::npos) bad(source, "$.r." + key, "key must be a^b");
    auto find = [&](const std::string& l) {
      for (Index i = 0; i < labels.size(); ++i)
        if (labels[i] == l) return i;
      bad(source, "$.r." + key, "unknown label '" + l + "'");
    };
    Index a = find(key.substr(0, hat)), b = find(key.substr(hat + 1));
    if (a == b) bad(source, "$.r." + key, "repeated label");
    RatFunc c;
    try {
      c = parse_ratfunc(val.get<std::string>(), out.base.nvars);
    } catch (const InputError& e) {
      bad(source, "$.r." + key, e.what());
    }
    std::uint64_t A = std::uint64_t(1) << a, B = std::uint64_t(1) << b;
    MV<RationalBase>::add_to(out.base, out.r, A | B, c.scaled(Scalar(wedge_sign(A, B))));
  }
  return out;
}

}  // namespace

CdybeInstance cdybe_from_json(const std::string& text, const std::string& source) {
  return cdybe_of(parse_doc(text, source), source);
}

namespace {

struct Emitter {
  int n = 1;
  json vec(const Vec& v) {
    for (const auto& [i, c] : v.e) collect_order(n, c);
    return vec_json(v);
  }
  json map(const LinearMap& m) {
    json a = json::array();
    for (const auto& c : m.cols) a.push_back(vec(c));
    return a;
  }
  json algebra(const Algebra& a) {
    json j;
    j["dim"] = a.dim;
    j["labels"] = a.labels;
    j["unit"] = vec(a.one);
    json mul = json::array();
    for (Index x = 0; x < a.dim; ++x)
      for (Index y = 0; y < a.dim; ++y)
        if (!a.mul_basis(x, y).is_zero()) mul.push_back(json::array({x, y, vec(a.mul_basis(x, y))}));
    j["mul"] = mul;
    return j;
  }
};

Algebra algebra_of(const json& j, int n, const std::string& source, const std::string& path) {
  const json& dj = field_of(j, "dim", source, path);
  if (!dj.is_number_integer() || dj.get<long>() < 1) bad(source, path + ".dim", "expected a positive integer");
  Index d = dj.get<Index>();
  std::vector<std::string> labels;
  const json& lj = field_of(j, "labels", source, path);
  if (!lj.is_array() || lj.size() != d) bad(source, path + ".labels", "expected " + std::to_string(d) + " labels");
  for (const auto& x : lj) labels.push_back(x.get<std::string>());
  Vec one = vec_of(field_of(j, "unit", source, path), d, n, source, path + ".unit");
  std::vector<Vec> table(d * d, Vec(d));
  const json& mul = field_of(j, "mul", source, path);
  if (!mul.is_array()) bad(source, path + ".mul", "expected a list of [i, j, vec]");
  for (size_t k = 0; k < mul.size(); ++k) {
    std::string p = path + ".mul[" + std::to_string(k) + "]";
    const json& e = mul[k];
    if (!e.is_array() || e.size() != 3) bad(source, p, "expected [i, j, vec]");
    Index a = index_of(e[0], d, source, p + "[0]"), b = index_of(e[1], d, source, p + "[1]");
    table[a * d + b] = vec_of(e[2], d, n, source, p + "[2]");
  }
  return Algebra::from_table(labels, table, one);
}

LinearMap map_of(const json& j, Index dom, Index cod, int n, const std::string& source, const std::string& path) {
  if (!j.is_array() || j.size() != dom)
    bad(source, path, "expected " + std::to_string(dom) + " columns, found " + std::to_string(j.is_array() ? j.size() : 0));
  LinearMap m(dom, cod);
  for (Index a = 0; a < dom; ++a) m.cols[a] = vec_of(j[a], cod, n, source, path + "[" + std::to_string(a) + "]");
  return m;
}

}  // namespace

std::string bialgebroid_to_json(const Bialgebroid& b) {
  Emitter e;
  json j;
  j["kind"] = "bialgebroid";
  j["name"] = b.name;
  j["B"] = e.algebra(b.B);
  j["L"] = e.algebra(b.L);
  j["s"] = e.map(b.s);
  j["t"] = e.map(b.t);
  j["cop"] = e.map(b.cop);
  j["eps"] = e.map(b.eps);
  j["field"] = e.n;
  return format_doc(j);
}

Bialgebroid bialgebroid_from_json(const std::string& text, const std::string& source, int field) {
  json j = parse_doc(text, source);
  expect_kind(j, "bialgebroid", source);
  int n = field_from(j, field, source);
  Algebra B = algebra_of(field_of(j, "B", source, "$"), n, source, "$.B");
  Algebra L = algebra_of(field_of(j, "L", source, "$"), n, source, "$.L");
  Index d = B.dim, m = L.dim;
  LinearMap s = map_of(field_of(j, "s", source, "$"), m, d, n, source, "$.s");
  LinearMap t = map_of(field_of(j, "t", source, "$"), m, d, n, source, "$.t");
  LinearMap cop = map_of(field_of(j, "cop", source, "$"), d, d * d, n, source, "$.cop");
  LinearMap eps = map_of(field_of(j, "eps", source, "$"), d, m, n, source, "$.eps");
  return make_bialgebroid(j.value("name", source), std::move(B), std::move(L), std::move(s), std::move(t),
                          std::move(cop), std::move(eps));
}

CocycleInstance cocycle_from_json(const std::string& text, const std::string& source, int field) {
  json j = parse_doc(text, source);
  expect_kind(j, "dynamical_cocycle", source);
  int n = field_from(j, field, source);
  const json& hj = field_of(j, "hopf", source, "$");
  const json& bj = field_of(j, "base", source, "$");
  if (!hj.is_string()) bad(source, "$.hopf", "expected a hopf name");
  if (!bj.is_string()) bad(source, "$.base", "expected a base name");
  CocycleInstance ci;
  ci.base = resolve_base(bj.get<std::string>(), n);
  HopfPtr H = ci.base->H;
  HopfPtr named = resolve_hopf(hj.get<std::string>(), n);
  if (named->name != H->name || named->dim() != H->dim())
    bad(source, "$.base", "base algebra is over " + H->name + ", not " + named->name);
  Vec R = vec_of(field_of(j, "R", source, "$"), H->dim() * H->dim(), n, source, "$.R");
  ci.qt = verify_qt(H, R);
  auto minus = std::make_shared<BaseAlgebra>(coaction_from_R(ci.qt, ci.base->L, ci.base->act, -1, ci.base->name + "-"));
  Index m = minus->dim();
  Vec F = vec_of(field_of(j, "F", source, "$"), H->dim() * H->dim() * m, n, source, "$.F");
  ci.dc = DynamicalCocycle{H, LinearMap::identity(H->dim()), minus, F, {}};
  return ci;
}

std::string cocycle_to_json(const std::string& hopf, const std::string& base, const Vec& R, const Vec& F) {
  Emitter e;
  json j;
  j["kind"] = "dynamical_cocycle";
  j["hopf"] = hopf;
  j["base"] = base;
  j["R"] = e.vec(R);
  j["F"] = e.vec(F);
  j["field"] = e.n;
  return format_doc(j);
}

std::vector<CatalogEntry> catalog() {
  return {
      {"group:Z2", "hopf", "group algebra of Z2"},
      {"group:Z3", "hopf", "group algebra of Z3"},
      {"group:S3", "hopf", "group algebra of S3"},
      {"sweedler", "hopf", "Sweedler 4-dimensional Hopf algebra with its triangular R family"},
      {"taft:n", "hopf", "Taft algebra of dimension n^2 over Q(z_n) (verified as taft:3)"},
      {"sl2", "lie", "sl2 with basis e, f, h and zero cobracket"},
      {"borel-sl2", "lie_bialgebra", "Borel of sl2 with nu(E) = E^H"},
      {"base:adjZ2", "base", "kZ2 with adjoint action and coproduct coaction"},
      {"base:adjZ3", "base", "kZ3 with adjoint action and coproduct coaction"},
      {"base:funZ2", "base", "functions on Z2 with trivial action and coaction"},
      {"fnbase:rational:1", "function_base", "Q(l) with the Cartan acting by 0 and eta by d/dl"},
      {"sl2-cartan", "cdybe", "r = -2/l e^f over Q(l) for sl2 and its Cartan"},
  };
}

namespace {

std::string strip(const std::string& s, const std::string& prefix) {
  return s.rfind(prefix, 0) == 0 ? s.substr(prefix.size()) : s;
}

bool wrapped(const std::string& s, const std::string& head, std::string& inner) {
  if (s.rfind(head + "(", 0) != 0 || s.back() != ')') return false;
  inner = s.substr(head.size() + 1, s.size() - head.size() - 2);
  return true;
}

}  // namespace

HopfPtr resolve_hopf(const std::string& name, int field) {
  std::string inner;
  if (wrapped(name, "double", inner)) return drinfeld_double(resolve_hopf(inner, field)).D;
  if (wrapped(name, "dual", inner)) return std::make_shared<Hopf>(dual_hopf(*resolve_hopf(inner, field)));
  std::string g = strip(name, "group:");
  if (g == "Z2") return std::make_shared<Hopf>(group_algebra(cyclic_table(2), {"1", "g"}, "Z2"));
  if (g == "Z3") return std::make_shared<Hopf>(group_algebra(cyclic_table(3), {"1", "g", "g2"}, "Z3"));
  if (g == "S3") return std::make_shared<Hopf>(group_algebra(s3_table(), {}, "S3"));
  if (name == "sweedler") return std::make_shared<Hopf>(sweedler());
  if (name.rfind("taft:", 0) == 0) {
    int n = 0;
    try {
      n = std::stoi(name.substr(5));
    } catch (...) {
      throw InputError("bad taft order in '" + name + "'");
    }
    return std::make_shared<Hopf>(taft(n, field > 0 ? field : n));
  }
  if (is_file(name)) {
    std::string text = read_file(name);
    json j = parse_doc(text, name);
    std::string kind = j.is_object() ? j.value("kind", "hopf") : "hopf";
    if (kind == "group") return std::make_shared<Hopf>(group_from_json(text, name));
    return std::make_shared<Hopf>(hopf_from_json(text, name, field));
  }
  throw InputError("unknown Hopf algebra '" + name + "'");
}

BasePtr resolve_base(const std::string& name, int field) {
  std::string s = strip(name, "base:"), inner;
  if (s.rfind("adj", 0) == 0) return std::make_shared<BaseAlgebra>(regular_base(resolve_hopf(s.substr(3), field)));
  if (wrapped(name, "base", inner)) return std::make_shared<BaseAlgebra>(regular_base(resolve_hopf(inner, field)));
  if (s == "funZ2") {
    HopfPtr z = resolve_hopf("Z2", field);
    return std::make_shared<BaseAlgebra>(trivial_base(z, dual_hopf(*z).alg, trivial_module(*z, 2), "funZ2"));
  }
  throw InputError("unknown base algebra '" + name + "'");
}

LieBialgebra resolve_lie_bialgebra(const std::string& name) {
  if (name == "sl2") return LieBialgebra::zero(sl2_lie());
  if (name == "borel-sl2") return borel_sl2_bialgebra();
  if (name == "cartan-sl2") return LieBialgebra::zero(abelian_lie({"H"}));
  if (is_file(name)) return lie_bialgebra_from_json(read_file(name), name);
  throw InputError("unknown Lie (bi)algebra '" + name + "'");
}

RationalBase resolve_function_base(const std::string& name) {
  if (name == "fnbase:rational:1") return rational_cartan_base();
  if (is_file(name)) return function_base_from_json(read_file(name), name);
  throw InputError("unknown function base '" + name + "'");
}

CdybeInstance resolve_cdybe(const std::string& name) {
  if (name == "sl2-cartan" || name == "sl2-cartan-perturbed") {
    CdybeInstance c;
    c.name = name;
    c.setup = sl2_cartan_setup();
    c.base = rational_cartan_base();
    c.r = MV<RationalBase>::basis(c.base, 0b011, parse_ratfunc(name == "sl2-cartan" ? "-2/l" : "-2/l + 1", 1));
    return c;
  }
  if (is_file(name)) return cdybe_from_json(read_file(name), name);
  throw InputError("unknown cdybe instance '" + name + "'");
}

std::vector<std::pair<std::string, Vec>> catalog_r_matrices(const std::string& name, int field) {
  std::vector<std::pair<std::string, Vec>> out;
  std::string inner;
  if (wrapped(name, "double", inner)) {
    Double dd = drinfeld_double(resolve_hopf(inner, field));
    out.push_back({"Theta", dd.Theta});
    return out;
  }
  if (name == "sweedler") {
    for (Scalar a : {Scalar(0), Scalar(1), Scalar(-2, 3)}) out.push_back({"alpha=" + a.str(), sweedler_r(a)});
    return out;
  }
  std::string g = strip(name, "group:");
  if (g == "Z2" || g == "Z3" || g == "S3") {
    HopfPtr h = resolve_hopf(name, field);
    out.push_back({"trivial", h->one2()});
  }
  return out;
}

}  // namespace forge
