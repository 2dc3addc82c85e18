#include "forge/linalg.hpp"

#include <algorithm>
#include <stdexcept>

namespace forge {

void check_dim(Index a, Index b, const char* what) {
  if (a != b)
    throw std::invalid_argument(std::string("dimension mismatch in ") + what + ": " + std::to_string(a) +
                                " vs " + std::to_string(b));
}

Vec Vec::unit(Index d, Index i, const Scalar& c) {
  Vec v(d);
  if (i >= d) throw std::out_of_range("unit vector index");
  if (!c.is_zero()) v.e.emplace_back(i, c);
  return v;
}

Vec Vec::from_dense(const std::vector<Scalar>& x) {
  Vec v(x.size());
  for (Index i = 0; i < x.size(); ++i)
    if (!x[i].is_zero()) v.e.emplace_back(i, x[i]);
  return v;
}

Scalar Vec::at(Index i) const {
  auto it = std::lower_bound(e.begin(), e.end(), i, [](const auto& p, Index k) { return p.first < k; });
  if (it != e.end() && it->first == i) return it->second;
  return Scalar();
}

std::vector<Scalar> Vec::dense() const {
  std::vector<Scalar> x(dim);
  for (auto& [i, c] : e) x[i] = c;
  return x;
}

Vec Vec::operator-() const {
  Vec r = *this;
  for (auto& p : r.e) p.second = -p.second;
  return r;
}

static void merge_into(Vec& a, const Vec& b, bool sub) {
  check_dim(a.dim, b.dim, "vector addition");
  if (b.e.empty()) return;
  std::vector<std::pair<Index, Scalar>> out;
  out.reserve(a.e.size() + b.e.size());
  size_t i = 0, j = 0;
  while (i < a.e.size() || j < b.e.size()) {
    if (j == b.e.size() || (i < a.e.size() && a.e[i].first < b.e[j].first)) {
      out.push_back(std::move(a.e[i++]));
    } else if (i == a.e.size() || b.e[j].first < a.e[i].first) {
      out.emplace_back(b.e[j].first, sub ? -b.e[j].second : b.e[j].second);
      ++j;
    } else {
      Scalar s = std::move(a.e[i].second);
      if (sub)
        s -= b.e[j].second;
      else
        s += b.e[j].second;
      if (!s.is_zero()) out.emplace_back(a.e[i].first, std::move(s));
      ++i;
      ++j;
    }
  }
  a.e = std::move(out);
}

Vec& Vec::operator+=(const Vec& o) {
  merge_into(*this, o, false);
  return *this;
}
Vec& Vec::operator-=(const Vec& o) {
  merge_into(*this, o, true);
  return *this;
}

Vec operator*(const Scalar& c, const Vec& v) {
  Vec r(v.dim);
  if (c.is_zero()) return r;
  r.e.reserve(v.e.size());
  for (auto& [i, x] : v.e) r.e.emplace_back(i, c * x);
  return r;
}

std::string Vec::str() const {
  std::string s = "{";
  bool first = true;
  for (auto& [i, c] : e) {
    if (!first) s += ", ";
    first = false;
    s += std::to_string(i) + ":" + c.str();
  }
  return s + "}";
}

void Acc::add(Index i, const Scalar& c) {
  if (c.is_zero()) return;
  auto it = m_.find(i);
  if (it == m_.end())
    m_.emplace(i, c);
  else
    it->second += c;
}

void Acc::add_mul(Index i, const Scalar& a, const Scalar& b) {
  if (a.is_zero() || b.is_zero()) return;
  auto it = m_.find(i);
  if (it == m_.end())
    m_.emplace(i, a * b);
  else
    it->second.add_mul(a, b);
}

void Acc::add(const Vec& v, const Scalar& c) {
  check_dim(dim_, v.dim, "accumulate");
  if (c.is_one()) {
    for (auto& [i, x] : v.e) add(i, x);
  } else {
    for (auto& [i, x] : v.e) add_mul(i, c, x);
  }
}

Vec Acc::take() {
  Vec v(dim_);
  v.e.reserve(m_.size());
  for (auto& [i, c] : m_)
    if (!c.is_zero()) v.e.emplace_back(i, std::move(c));
  m_.clear();
  std::sort(v.e.begin(), v.e.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  return v;
}

// ---- Subspace ----

Vec Subspace::reduce(const Vec& v) const {
  check_dim(ambient_, v.dim, "reduce");
  bool hit = false;
  for (auto& [i, c] : v.e)
    if (pivot_row_.count(i)) {
      hit = true;
      break;
    }
  if (!hit) return v;
  Acc acc(ambient_);
  acc.add(v);
  for (auto& [i, c] : v.e) {
    auto it = pivot_row_.find(i);
    if (it == pivot_row_.end()) continue;
    acc.add(rows_[it->second], -c);
  }
  return acc.take();
}

Vec reduce(const Subspace& s, const Vec& v) { return s.reduce(v); }

bool Subspace::operator==(const Subspace& o) const {
  return ambient_ == o.ambient_ && pivots_ == o.pivots_ && rows_ == o.rows_;
}

bool Subspace::contains(const Subspace& o) const {
  for (auto& r : o.rows_)
    if (!contains(r)) return false;
  return true;
}

Vec SpanBuilder::reduce(const Vec& v) const {
  check_dim(ambient_, v.dim, "span");
  std::map<Index, Scalar> acc;
  for (auto& [i, c] : v.e) acc.emplace(i, c);
  auto it = acc.begin();
  while (it != acc.end()) {
    auto r = rows_.find(it->first);
    if (r == rows_.end()) {
      ++it;
      continue;
    }
    Scalar c = it->second;
    for (auto& [j, x] : r->second.e) {
      auto jt = acc.find(j);
      if (jt == acc.end()) {
        acc.emplace(j, -(c * x));
      } else {
        jt->second -= c * x;
      }
    }
    // entry at pivot is now zero; drop zeros at or after current key lazily
    auto next = std::next(it);
    acc.erase(it);
    it = next;
    while (it != acc.end() && it->second.is_zero()) it = acc.erase(it);
  }
  Vec out(ambient_);
  for (auto& [i, c] : acc)
    if (!c.is_zero()) out.e.emplace_back(i, std::move(c));
  return out;
}

bool SpanBuilder::add(const Vec& v) {
  Vec r = reduce(v);
  if (r.is_zero()) return false;
  Scalar inv = r.e.front().second.inverse();
  Index p = r.e.front().first;
  if (!inv.is_one()) r = inv * r;
  rows_.emplace(p, std::move(r));
  return true;
}

Subspace SpanBuilder::finish() const {
  Subspace s(ambient_);
  std::vector<std::pair<Index, Vec>> done;  // descending pivots
  std::unordered_map<Index, const Vec*> reduced;
  done.reserve(rows_.size());
  for (auto it = rows_.rbegin(); it != rows_.rend(); ++it) {
    const Vec& row = it->second;
    Vec r = row;
    bool hit = false;
    for (auto& [j, c] : row.e)
      if (j != it->first && reduced.count(j)) {
        hit = true;
        break;
      }
    if (hit) {
      Acc acc(ambient_);
      acc.add(row);
      for (auto& [j, c] : row.e) {
        if (j == it->first) continue;
        auto q = reduced.find(j);
        if (q != reduced.end()) acc.add(*q->second, -c);
      }
      r = acc.take();
    }
    done.emplace_back(it->first, std::move(r));
    reduced[it->first] = &done.back().second;
  }
  s.rows_.reserve(done.size());
  for (auto it = done.rbegin(); it != done.rend(); ++it) {
    s.pivot_row_[it->first] = s.rows_.size();
    s.pivots_.push_back(it->first);
    s.rows_.push_back(std::move(it->second));
  }
  return s;
}

Subspace span(Index ambient, const std::vector<Vec>& vs) {
  SpanBuilder b(ambient);
  for (auto& v : vs) b.add(v);
  return b.finish();
}

Subspace sum(const Subspace& a, const Subspace& b) {
  check_dim(a.ambient(), b.ambient(), "subspace sum");
  std::vector<Vec> all = a.basis();
  all.insert(all.end(), b.basis().begin(), b.basis().end());
  return span(a.ambient(), all);
}

Subspace intersect(const Subspace& a, const Subspace& b) {
  check_dim(a.ambient(), b.ambient(), "subspace intersection");
  LinearMap m(a.rank(), a.ambient());
  for (Index i = 0; i < a.rank(); ++i) m.cols[i] = b.reduce(a.basis()[i]);
  Subspace k = kernel(m);
  std::vector<Vec> out;
  for (auto& kv : k.basis()) {
    Acc acc(a.ambient());
    for (auto& [i, c] : kv.e) acc.add(a.basis()[i], c);
    out.push_back(acc.take());
  }
  return span(a.ambient(), out);
}

// ---- LinearMap ----

LinearMap LinearMap::identity(Index d) {
  LinearMap m(d, d);
  for (Index i = 0; i < d; ++i) m.cols[i] = Vec::unit(d, i);
  return m;
}

LinearMap LinearMap::from_cols(Index cod, std::vector<Vec> cols) {
  LinearMap m;
  m.dom = cols.size();
  m.cod = cod;
  for (auto& c : cols) check_dim(cod, c.dim, "linear map column");
  m.cols = std::move(cols);
  return m;
}

Vec LinearMap::apply(const Vec& v) const {
  check_dim(dom, v.dim, "apply");
  if (v.e.size() == 1) {
    const auto& [i, c] = v.e.front();
    return c.is_one() ? cols[i] : c * cols[i];
  }
  Acc acc(cod);
  for (auto& [i, c] : v.e) acc.add(cols[i], c);
  return acc.take();
}

LinearMap LinearMap::compose(const LinearMap& inner) const {
  check_dim(dom, inner.cod, "compose");
  LinearMap m(inner.dom, cod);
  for (Index j = 0; j < inner.dom; ++j) m.cols[j] = apply(inner.cols[j]);
  return m;
}

std::vector<Vec> LinearMap::rows() const {
  std::vector<Vec> r(cod, Vec(dom));
  for (Index j = 0; j < dom; ++j)
    for (auto& [i, c] : cols[j].e) r[i].e.emplace_back(j, c);
  return r;
}

LinearMap LinearMap::transpose() const {
  LinearMap t;
  t.dom = cod;
  t.cod = dom;
  t.cols = rows();
  return t;
}

LinearMap LinearMap::operator-(const LinearMap& o) const {
  check_dim(dom, o.dom, "map difference");
  check_dim(cod, o.cod, "map difference");
  LinearMap m = *this;
  for (Index j = 0; j < dom; ++j) m.cols[j] -= o.cols[j];
  return m;
}

LinearMap LinearMap::operator+(const LinearMap& o) const {
  check_dim(dom, o.dom, "map sum");
  check_dim(cod, o.cod, "map sum");
  LinearMap m = *this;
  for (Index j = 0; j < dom; ++j) m.cols[j] += o.cols[j];
  return m;
}

Subspace image(const LinearMap& m) { return span(m.cod, m.cols); }

Subspace kernel(const LinearMap& m) {
  Subspace r = span(m.dom, m.rows());
  std::vector<Vec> out;
  std::unordered_map<Index, std::size_t> pr;
  for (std::size_t k = 0; k < r.pivots().size(); ++k) pr[r.pivots()[k]] = k;
  // column-wise entries of RREF rows at free columns
  std::unordered_map<Index, std::vector<std::pair<Index, Scalar>>> at_free;
  for (std::size_t k = 0; k < r.rank(); ++k)
    for (auto& [j, c] : r.basis()[k].e)
      if (j != r.pivots()[k]) at_free[j].emplace_back(r.pivots()[k], c);
  for (Index f = 0; f < m.dom; ++f) {
    if (pr.count(f)) continue;
    Vec v(m.dom);
    std::vector<std::pair<Index, Scalar>> ent;
    ent.emplace_back(f, Scalar(1));
    auto it = at_free.find(f);
    if (it != at_free.end())
      for (auto& [p, c] : it->second) ent.emplace_back(p, -c);
    std::sort(ent.begin(), ent.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    v.e = std::move(ent);
    out.push_back(std::move(v));
  }
  return span(m.dom, out);
}

std::optional<Vec> solve(const LinearMap& m, const Vec& b) {
  check_dim(m.cod, b.dim, "solve");
  std::vector<Vec> rows = m.rows();
  for (auto& r : rows) r.dim = m.dom + 1;
  for (auto& [i, c] : b.e) rows[i].e.emplace_back(m.dom, c);
  Subspace s = span(m.dom + 1, rows);
  Vec x(m.dom);
  for (std::size_t k = 0; k < s.rank(); ++k) {
    Index p = s.pivots()[k];
    if (p == m.dom) return std::nullopt;
    Scalar val = s.basis()[k].at(m.dom);
    if (!val.is_zero()) x.e.emplace_back(p, val);
  }
  return x;
}

std::optional<LinearMap> inverse(const LinearMap& m) {
  if (m.dom != m.cod) return std::nullopt;
  LinearMap inv(m.dom, m.dom);
  // row-reduce [A | I] once
  Index n = m.dom;
  std::vector<Vec> rows = m.rows();
  for (Index i = 0; i < n; ++i) {
    rows[i].dim = 2 * n;
    rows[i].e.emplace_back(n + i, Scalar(1));
  }
  Subspace s = span(2 * n, rows);
  if (s.rank() != n) return std::nullopt;
  for (std::size_t k = 0; k < n; ++k)
    if (s.pivots()[k] != k) return std::nullopt;
  // row k of RREF gives row k of the inverse in the right block
  for (Index k = 0; k < n; ++k)
    for (auto& [j, c] : s.basis()[k].e)
      if (j >= n) inv.cols[j - n].e.emplace_back(k, c);
  return inv;
}

std::size_t dense_rank(const std::vector<std::vector<Scalar>>& rows0) {
  auto rows = rows0;
  if (rows.empty()) return 0;
  std::size_t ncol = rows[0].size(), rank = 0;
  for (std::size_t c = 0; c < ncol && rank < rows.size(); ++c) {
    std::size_t p = rows.size();
    for (std::size_t r = rank; r < rows.size(); ++r)
      if (!rows[r][c].is_zero()) {
        p = r;
        break;
      }
    if (p == rows.size()) continue;
    std::swap(rows[p], rows[rank]);
    Scalar inv = rows[rank][c].inverse();
    for (std::size_t k = c; k < ncol; ++k) rows[rank][k] *= inv;
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r == rank || rows[r][c].is_zero()) continue;
      Scalar f = rows[r][c];
      for (std::size_t k = c; k < ncol; ++k) rows[r][k] -= f * rows[rank][k];
    }
    ++rank;
  }
  return rank;
}

// ---- Quotient ----

Quotient::Quotient(Subspace s) : sub_(std::move(s)) {
  for (Index i = 0; i < sub_.ambient(); ++i)
    if (!sub_.is_pivot(i)) {
      coord_[i] = free_.size();
      free_.push_back(i);
    }
}

Vec Quotient::project(const Vec& v) const {
  Vec r = sub_.reduce(v);
  Vec q(dim());
  q.e.reserve(r.e.size());
  for (auto& [i, c] : r.e) q.e.emplace_back(coord_.at(i), std::move(c));
  return q;
}

Vec Quotient::lift(const Vec& q) const {
  check_dim(dim(), q.dim, "quotient lift");
  Vec v(ambient());
  for (auto& [i, c] : q.e) v.e.emplace_back(free_[i], c);
  return v;
}

LinearMap Quotient::projection() const {
  LinearMap m(ambient(), dim());
  for (Index i = 0; i < ambient(); ++i) m.cols[i] = project(Vec::unit(ambient(), i));
  return m;
}

}  // namespace forge
