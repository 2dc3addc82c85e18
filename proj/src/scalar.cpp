#include "forge/scalar.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <memory>
#include <mutex>
#include <sstream>
#include <stdexcept>

namespace forge {

int euler_phi(int n) {
  int r = n;
  int m = n;
  for (int p = 2; p * p <= m; ++p) {
    if (m % p == 0) {
      while (m % p == 0) m /= p;
      r -= r / p;
    }
  }
  if (m > 1) r -= r / m;
  return r;
}

namespace {

std::vector<long> poly_div_exact(std::vector<long> num, const std::vector<long>& den) {
  // both ascending, den monic
  int dn = int(num.size()) - 1, dd = int(den.size()) - 1;
  std::vector<long> q(std::max(dn - dd + 1, 1), 0);
  for (int i = dn - dd; i >= 0; --i) {
    long c = num[i + dd];
    q[i] = c;
    for (int j = 0; j <= dd; ++j) num[i + j] -= c * den[j];
  }
  return q;
}

std::vector<long> compute_cyclotomic(int n) {
  std::vector<long> p(n + 1, 0);
  p[0] = -1;
  p[n] = 1;
  for (int d = 1; d < n; ++d)
    if (n % d == 0) p = poly_div_exact(p, cyclotomic_poly(d));
  return p;
}

}  // namespace

const std::vector<long>& cyclotomic_poly(int n) {
  static std::mutex mu;
  static std::map<int, std::unique_ptr<std::vector<long>>> table;
  {
    std::lock_guard<std::mutex> g(mu);
    auto it = table.find(n);
    if (it != table.end()) return *it->second;
  }
  auto p = std::make_unique<std::vector<long>>(compute_cyclotomic(n));
  std::lock_guard<std::mutex> g(mu);
  auto& slot = table[n];
  if (!slot) slot = std::move(p);
  return *slot;
}

Scalar::Scalar(long p, long q) : c0_(p, q) {
  if (q == 0) throw std::domain_error("zero denominator");
  c0_.canonicalize();
}

static int common_order(int a, int b) {
  if (a == 1) return b;
  if (b == 1 || a == b) return a;
  throw std::invalid_argument("scalars from different cyclotomic fields (z" + std::to_string(a) +
                              ", z" + std::to_string(b) + ")");
}

// reduce a dense coefficient vector (any length) modulo Phi_n
static std::vector<mpq_class> reduce_mod_phi(int n, std::vector<mpq_class> c) {
  const auto& phi = cyclotomic_poly(n);
  int deg = int(phi.size()) - 1;
  // first fold with z^n = 1
  if (int(c.size()) > n) {
    for (size_t i = n; i < c.size(); ++i) c[i % n] += c[i];
    c.resize(n);
  }
  for (int i = int(c.size()) - 1; i >= deg; --i) {
    if (c[i] == 0) continue;
    mpq_class t = c[i];
    for (int j = 0; j <= deg; ++j)
      if (phi[j] != 0) c[i - deg + j] -= t * phi[j];
  }
  if (int(c.size()) > deg) c.resize(deg);
  return c;
}

Scalar Scalar::zeta(int n, long k) {
  if (n < 1) throw std::invalid_argument("field order must be positive");
  k %= n;
  if (k < 0) k += n;
  std::vector<mpq_class> c(k + 1);
  c[k] = 1;
  return from_coeffs(n, reduce_mod_phi(n, c));
}

mpq_class Scalar::coeff(int k) const {
  if (k == 0) return c0_;
  for (auto& [e, v] : hi_)
    if (e == k) return v;
  return 0;
}

std::vector<mpq_class> Scalar::coeffs() const {
  std::vector<mpq_class> c(euler_phi(n_));
  c[0] = c0_;
  for (auto& [e, v] : hi_) c[e] = v;
  return c;
}

Scalar Scalar::from_coeffs(int n, const std::vector<mpq_class>& c) {
  Scalar s;
  s.n_ = n;
  if (!c.empty()) s.c0_ = c[0];
  for (size_t i = 1; i < c.size(); ++i)
    if (c[i] != 0) s.hi_.emplace_back(int(i), c[i]);
  s.normalize();
  return s;
}

void Scalar::normalize() {
  if (hi_.empty()) n_ = 1;
}

Scalar Scalar::operator-() const {
  Scalar r = *this;
  r.c0_ = -r.c0_;
  for (auto& p : r.hi_) p.second = -p.second;
  return r;
}

Scalar& Scalar::operator+=(const Scalar& o) {
  if (o.hi_.empty() && hi_.empty()) {
    c0_ += o.c0_;
    return *this;
  }
  int n = common_order(n_, o.n_);
  c0_ += o.c0_;
  if (!o.hi_.empty()) {
    std::vector<std::pair<int, mpq_class>> out;
    out.reserve(hi_.size() + o.hi_.size());
    size_t i = 0, j = 0;
    while (i < hi_.size() || j < o.hi_.size()) {
      if (j == o.hi_.size() || (i < hi_.size() && hi_[i].first < o.hi_[j].first)) {
        out.push_back(std::move(hi_[i++]));
      } else if (i == hi_.size() || o.hi_[j].first < hi_[i].first) {
        out.push_back(o.hi_[j++]);
      } else {
        mpq_class v = hi_[i].second + o.hi_[j].second;
        if (v != 0) out.emplace_back(hi_[i].first, std::move(v));
        ++i;
        ++j;
      }
    }
    hi_ = std::move(out);
  }
  n_ = n;
  normalize();
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) {
  if (o.hi_.empty() && hi_.empty()) {
    c0_ -= o.c0_;
    return *this;
  }
  return *this += -o;
}

Scalar operator*(const Scalar& a, const Scalar& b) {
  if (a.hi_.empty() && b.hi_.empty()) return Scalar(mpq_class(a.c0_ * b.c0_));
  if (b.hi_.empty()) {
    if (b.c0_ == 0) return Scalar();
    Scalar r = a;
    r.c0_ *= b.c0_;
    for (auto& p : r.hi_) p.second *= b.c0_;
    return r;
  }
  if (a.hi_.empty()) return b * a;
  int n = common_order(a.n_, b.n_);
  int deg = euler_phi(n);
  std::vector<mpq_class> c(2 * deg - 1);
  auto ca = a.coeffs(), cb = b.coeffs();
  for (int i = 0; i < deg; ++i) {
    if (ca[i] == 0) continue;
    for (int j = 0; j < deg; ++j)
      if (cb[j] != 0) c[i + j] += ca[i] * cb[j];
  }
  return Scalar::from_coeffs(n, reduce_mod_phi(n, std::move(c)));
}

Scalar& Scalar::operator*=(const Scalar& o) { return *this = *this * o; }

void Scalar::add_mul(const Scalar& b, const Scalar& c) {
  if (hi_.empty() && b.hi_.empty() && c.hi_.empty()) {
    mpq_class t = b.c0_ * c.c0_;
    c0_ += t;
    return;
  }
  *this += b * c;
}

bool Scalar::operator==(const Scalar& o) const {
  if (hi_.size() != o.hi_.size() || c0_ != o.c0_) return false;
  if (hi_.empty()) return true;
  if (n_ != o.n_) return false;
  for (size_t i = 0; i < hi_.size(); ++i)
    if (hi_[i].first != o.hi_[i].first || hi_[i].second != o.hi_[i].second) return false;
  return true;
}

Scalar Scalar::inverse() const {
  if (is_zero()) throw std::domain_error("division by zero scalar");
  if (hi_.empty()) return Scalar(mpq_class(1 / c0_));
  // solve (multiplication-by-this) x = 1 over Q
  int n = n_;
  int deg = euler_phi(n);
  std::vector<std::vector<mpq_class>> m(deg, std::vector<mpq_class>(deg + 1));
  for (int j = 0; j < deg; ++j) {
    Scalar col = *this * Scalar::zeta(n, j);
    auto cc = col.coeffs();
    cc.resize(deg);
    for (int i = 0; i < deg; ++i) m[i][j] = cc[i];
  }
  m[0][deg] = 1;
  for (int col = 0, row = 0; col < deg; ++col) {
    int p = -1;
    for (int r = row; r < deg; ++r)
      if (m[r][col] != 0) {
        p = r;
        break;
      }
    if (p < 0) throw std::domain_error("singular cyclotomic element");
    std::swap(m[p], m[row]);
    mpq_class inv = 1 / m[row][col];
    for (int k = col; k <= deg; ++k) m[row][k] *= inv;
    for (int r = 0; r < deg; ++r) {
      if (r == row || m[r][col] == 0) continue;
      mpq_class f = m[r][col];
      for (int k = col; k <= deg; ++k) m[r][k] -= f * m[row][k];
    }
    ++row;
  }
  std::vector<mpq_class> x(deg);
  for (int i = 0; i < deg; ++i) x[i] = m[i][deg];
  return from_coeffs(n, x);
}

Scalar& Scalar::operator/=(const Scalar& o) {
  if (o.hi_.empty()) {
    if (o.c0_ == 0) throw std::domain_error("division by zero scalar");
    c0_ /= o.c0_;
    for (auto& p : hi_) p.second /= o.c0_;
    return *this;
  }
  return *this = *this * o.inverse();
}

static std::string q_str(const mpq_class& q) { return q.get_str(); }

std::string Scalar::str() const {
  if (hi_.empty()) return q_str(c0_);
  std::string out;
  auto emit = [&](const mpq_class& c, int k) {
    bool neg = c < 0;
    mpq_class a = neg ? mpq_class(-c) : c;
    if (out.empty()) {
      if (neg) out += "-";
    } else {
      out += neg ? "-" : "+";
    }
    if (k == 0) {
      out += q_str(a);
    } else {
      if (a != 1) out += q_str(a) + "*";
      out += "z^" + std::to_string(k);
    }
  };
  if (c0_ != 0) emit(c0_, 0);
  for (auto& [e, v] : hi_) emit(v, e);
  return out;
}

Scalar Scalar::parse(const std::string& text0, int n) {
  // normalize unicode minus to '-' and drop whitespace
  std::string t;
  for (size_t i = 0; i < text0.size(); ++i) {
    unsigned char ch = text0[i];
    if (ch == 0xE2 && i + 2 < text0.size() && (unsigned char)text0[i + 1] == 0x88 &&
        (unsigned char)text0[i + 2] == 0x92) {
      t += '-';
      i += 2;
    } else if (!std::isspace(ch)) {
      t += char(ch);
    }
  }
  if (t.empty()) throw std::invalid_argument("empty scalar");
  auto bad = [&](const std::string& why) {
    return std::invalid_argument("bad scalar '" + text0 + "': " + why);
  };
  Scalar acc;
  size_t i = 0;
  bool first = true;
  while (i < t.size()) {
    bool neg = false;
    if (t[i] == '+' || t[i] == '-') {
      neg = t[i] == '-';
      ++i;
    } else if (!first) {
      throw bad("expected sign");
    }
    first = false;
    size_t j = i;
    while (j < t.size() && t[j] != '+' && t[j] != '-') ++j;
    std::string term = t.substr(i, j - i);
    i = j;
    if (term.empty()) throw bad("empty term");
    mpq_class c = 1;
    long k = 0;
    auto zpos = term.find('z');
    std::string cpart = term, zpart;
    if (zpos != std::string::npos) {
      cpart = term.substr(0, zpos);
      zpart = term.substr(zpos);
      if (!cpart.empty()) {
        if (cpart.back() != '*') throw bad("expected '*' before z");
        cpart.pop_back();
      }
      if (zpart == "z") {
        k = 1;
      } else if (zpart.size() > 2 && zpart[1] == '^') {
        std::string ks = zpart.substr(2);
        if (ks.find_first_not_of("0123456789") != std::string::npos) throw bad("bad exponent");
        k = std::stol(ks);
      } else {
        throw bad("bad power of z");
      }
    }
    if (!cpart.empty()) {
      if (cpart.find_first_not_of("0123456789/") != std::string::npos) throw bad("bad coefficient");
      if (cpart.front() == '/' || cpart.back() == '/') throw bad("bad fraction");
      if (std::count(cpart.begin(), cpart.end(), '/') > 1) throw bad("bad fraction");
      c.set_str(cpart, 10);
      if (c.get_den() == 0) throw bad("zero denominator");
      c.canonicalize();
    }
    if (neg) c = -c;
    if (zpos == std::string::npos) {
      acc += Scalar(c);
    } else {
      if (n < 1) throw bad("no field order");
      acc += Scalar(c) * Scalar::zeta(n, k);
    }
  }
  return acc;
}

}  // namespace forge
