#include "qsatake/qarith.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace qsatake {

// ---------------------------------------------------------------- ZPoly

ZPoly::ZPoly(const Int& constant) {
  if (constant != 0) c_.push_back(constant);
}

ZPoly::ZPoly(long constant) : ZPoly(Int(constant)) {}

ZPoly ZPoly::monomial(const Int& coeff, int deg) {
  ZPoly p;
  if (coeff != 0) {
    p.c_.assign(static_cast<size_t>(deg) + 1, Int(0));
    p.c_[static_cast<size_t>(deg)] = coeff;
  }
  return p;
}

void ZPoly::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

Int ZPoly::coeff(int i) const {
  if (i < 0 || i >= static_cast<int>(c_.size())) return Int(0);
  return c_[static_cast<size_t>(i)];
}

const Int& ZPoly::leading() const {
  if (c_.empty()) throw std::logic_error("leading coefficient of zero");
  return c_.back();
}

ZPoly ZPoly::operator+(const ZPoly& o) const {
  ZPoly r;
  r.c_.resize(std::max(c_.size(), o.c_.size()), Int(0));
  for (size_t i = 0; i < c_.size(); ++i) r.c_[i] += c_[i];
  for (size_t i = 0; i < o.c_.size(); ++i) r.c_[i] += o.c_[i];
  r.trim();
  return r;
}

ZPoly ZPoly::operator-(const ZPoly& o) const { return *this + (-o); }

ZPoly ZPoly::operator-() const {
  ZPoly r = *this;
  for (auto& v : r.c_) v = -v;
  return r;
}

ZPoly ZPoly::operator*(const ZPoly& o) const {
  if (is_zero() || o.is_zero()) return ZPoly();
  ZPoly r;
  r.c_.assign(c_.size() + o.c_.size() - 1, Int(0));
  for (size_t i = 0; i < c_.size(); ++i)
    for (size_t j = 0; j < o.c_.size(); ++j) r.c_[i + j] += c_[i] * o.c_[j];
  r.trim();
  return r;
}

Int ZPoly::content() const {
  Int g(0);
  for (const auto& v : c_) {
    Int a = abs(v);
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), a.get_mpz_t());
  }
  if (g != 0 && leading() < 0) g = -g;
  return g;
}

ZPoly ZPoly::primitive_part() const {
  if (is_zero()) return ZPoly();
  Int g = content();
  ZPoly r = *this;
  for (auto& v : r.c_) v /= g;
  return r;
}

std::optional<ZPoly> ZPoly::divide_exact(const ZPoly& o) const {
  if (o.is_zero()) return std::nullopt;
  if (is_zero()) return ZPoly();
  if (degree() < o.degree()) return std::nullopt;
  std::vector<Int> rem = c_;
  std::vector<Int> quot(static_cast<size_t>(degree() - o.degree()) + 1, Int(0));
  for (int d = degree(); d >= o.degree(); --d) {
    Int& top = rem[static_cast<size_t>(d)];
    if (top == 0) continue;
    if (!mpz_divisible_p(top.get_mpz_t(), o.leading().get_mpz_t()))
      return std::nullopt;
    Int qc = top / o.leading();
    quot[static_cast<size_t>(d - o.degree())] = qc;
    for (int j = 0; j <= o.degree(); ++j)
      rem[static_cast<size_t>(d - o.degree() + j)] -=
          qc * o.c_[static_cast<size_t>(j)];
  }
  for (const auto& v : rem)
    if (v != 0) return std::nullopt;
  ZPoly q;
  q.c_ = std::move(quot);
  q.trim();
  return q;
}

namespace {
// Remainder of lc(b)^(deg a - deg b + 1) * a under division by b.
ZPoly pseudo_rem(ZPoly a, const ZPoly& b) {
  int e = a.degree() - b.degree() + 1;
  ZPoly lc(b.leading());
  ZPoly r = a;
  while (!r.is_zero() && r.degree() >= b.degree() && e > 0) {
    ZPoly shift = ZPoly::monomial(r.leading(), r.degree() - b.degree());
    r = r * lc - shift * b;
    --e;
  }
  // Account for unused powers of the leading coefficient.
  for (; e > 0; --e) r = r * lc;
  return r;
}
}  // namespace

ZPoly ZPoly::gcd(ZPoly a, ZPoly b) {
  if (a.is_zero() && b.is_zero()) return ZPoly();
  if (a.is_zero()) std::swap(a, b);
  if (b.is_zero()) {
    ZPoly r = a;
    if (r.leading() < 0) r = -r;
    return r;
  }
  // Monomial shortcut: gcd(c*q^k, p) = gcd(c, content p) * q^min(k, val p).
  auto monomial_exp = [](const ZPoly& p) {
    int idx = -1;
    for (int i = 0; i <= p.degree(); ++i)
      if (p.coeff(i) != 0) {
        if (idx >= 0) return -1;
        idx = i;
      }
    return idx;
  };
  auto valuation = [](const ZPoly& p) {
    for (int i = 0; i <= p.degree(); ++i)
      if (p.coeff(i) != 0) return i;
    return 0;
  };
  int ma = monomial_exp(a), mb = monomial_exp(b);
  if (ma >= 0 || mb >= 0) {
    Int ca = abs(a.content()), cb = abs(b.content());
    Int g;
    mpz_gcd(g.get_mpz_t(), ca.get_mpz_t(), cb.get_mpz_t());
    int k = std::min(ma >= 0 ? ma : valuation(a), mb >= 0 ? mb : valuation(b));
    return ZPoly::monomial(g, k);
  }
  Int ca = abs(a.content()), cb = abs(b.content());
  Int g;
  mpz_gcd(g.get_mpz_t(), ca.get_mpz_t(), cb.get_mpz_t());
  a = a.primitive_part();
  b = b.primitive_part();
  if (a.degree() < b.degree()) std::swap(a, b);
  while (!b.is_zero()) {
    ZPoly r = pseudo_rem(a, b);
    a = b;
    b = r.is_zero() ? ZPoly() : r.primitive_part();
  }
  if (a.leading() < 0) a = -a;
  return ZPoly(g) * a;
}

std::string ZPoly::to_string() const {
  if (is_zero()) return "0";
  std::ostringstream out;
  bool first = true;
  for (int i = degree(); i >= 0; --i) {
    Int v = coeff(i);
    if (v == 0) continue;
    if (first) {
      if (v < 0) out << "-";
    } else {
      out << (v < 0 ? " - " : " + ");
    }
    Int a = abs(v);
    if (a != 1 || i == 0) out << a.get_str();
    if (i >= 1) {
      if (a != 1) out << "*";
      out << "q";
      if (i > 1) out << "^" << i;
    }
    first = false;
  }
  return out.str();
}

// ------------------------------------------------------------- QLaurent

QLaurent::QLaurent(long constant) {
  if (constant != 0) c_[0] = Rat(constant);
}

QLaurent::QLaurent(const Rat& constant) {
  if (constant != 0) c_[0] = constant;
}

QLaurent QLaurent::q_power(int k, const Rat& coeff) {
  QLaurent p;
  if (coeff != 0) p.c_[k] = coeff;
  return p;
}

Rat QLaurent::coeff(int k) const {
  auto it = c_.find(k);
  return it == c_.end() ? Rat(0) : it->second;
}

int QLaurent::min_exp() const {
  if (is_zero()) throw std::logic_error("min_exp of zero");
  return c_.begin()->first;
}

int QLaurent::max_exp() const {
  if (is_zero()) throw std::logic_error("max_exp of zero");
  return c_.rbegin()->first;
}

void QLaurent::insert(int k, const Rat& v) {
  if (v == 0) return;
  auto [it, fresh] = c_.try_emplace(k, v);
  if (!fresh) {
    it->second += v;
    if (it->second == 0) c_.erase(it);
  }
}

QLaurent QLaurent::operator+(const QLaurent& o) const {
  QLaurent r = *this;
  for (const auto& [k, v] : o.c_) r.insert(k, v);
  return r;
}

QLaurent QLaurent::operator-(const QLaurent& o) const { return *this + (-o); }

QLaurent QLaurent::operator-() const {
  QLaurent r = *this;
  for (auto& [k, v] : r.c_) v = -v;
  return r;
}

QLaurent QLaurent::operator*(const QLaurent& o) const {
  QLaurent r;
  for (const auto& [k1, v1] : c_)
    for (const auto& [k2, v2] : o.c_) r.insert(k1 + k2, v1 * v2);
  return r;
}

QLaurent& QLaurent::operator+=(const QLaurent& o) {
  for (const auto& [k, v] : o.c_) insert(k, v);
  return *this;
}

QLaurent& QLaurent::operator*=(const QLaurent& o) {
  *this = *this * o;
  return *this;
}

QLaurent QLaurent::bar() const {
  QLaurent r;
  for (const auto& [k, v] : c_) r.c_[-k] = v;
  return r;
}

std::string QLaurent::to_string() const {
  if (is_zero()) return "0";
  std::ostringstream out;
  bool first = true;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
    int k = it->first;
    Rat v = it->second;
    if (first) {
      if (v < 0) out << "-";
    } else {
      out << (v < 0 ? " - " : " + ");
    }
    Rat a = abs(v);
    if (a != 1 || k == 0) out << a.get_str();
    if (k != 0) {
      if (a != 1) out << "*";
      out << "q";
      if (k != 1) out << "^" << k;
    }
    first = false;
  }
  return out.str();
}

namespace {

struct LaurentParser {
  const std::string& s;
  size_t i = 0;

  explicit LaurentParser(const std::string& text) : s(text) {}

  void skip_ws() {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
  }

  bool eat(char c) {
    skip_ws();
    if (i < s.size() && s[i] == c) {
      ++i;
      return true;
    }
    return false;
  }

  std::optional<Int> integer() {
    skip_ws();
    size_t start = i;
    if (i < s.size() && (s[i] == '-' || s[i] == '+')) ++i;
    size_t digits = i;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
    if (i == digits) {
      i = start;
      return std::nullopt;
    }
    return Int(s.substr(start, i - start));
  }

  std::optional<QLaurent> factor() {
    skip_ws();
    if (i < s.size() && s[i] == 'q') {
      ++i;
      int k = 1;
      if (eat('^')) {
        auto e = integer();
        if (!e) return std::nullopt;
        if (!e->fits_sint_p()) return std::nullopt;
        k = static_cast<int>(e->get_si());
      }
      return QLaurent::q_power(k);
    }
    auto n = integer();
    if (!n) return std::nullopt;
    return QLaurent(Rat(*n));
  }

  std::optional<QLaurent> term() {
    auto f = factor();
    if (!f) return std::nullopt;
    while (eat('*')) {
      auto g = factor();
      if (!g) return std::nullopt;
      *f = *f * *g;
    }
    return f;
  }

  std::optional<QLaurent> expr() {
    skip_ws();
    bool neg = false;
    if (eat('-'))
      neg = true;
    else
      eat('+');
    auto t = term();
    if (!t) return std::nullopt;
    QLaurent acc = neg ? -*t : *t;
    for (;;) {
      skip_ws();
      if (i >= s.size()) break;
      if (eat('+')) {
        auto u = term();
        if (!u) return std::nullopt;
        acc = acc + *u;
      } else if (eat('-')) {
        auto u = term();
        if (!u) return std::nullopt;
        acc = acc - *u;
      } else {
        return std::nullopt;
      }
    }
    return acc;
  }
};

}  // namespace

std::optional<QLaurent> QLaurent::parse(const std::string& text) {
  LaurentParser p(text);
  auto r = p.expr();
  if (!r) return std::nullopt;
  p.skip_ws();
  if (p.i != text.size()) return std::nullopt;
  return r;
}

// ------------------------------------------------------------ QRational

QRational::QRational() : num_(), den_(ZPoly(1)) {}

QRational::QRational(long constant) : num_(ZPoly(constant)), den_(ZPoly(1)) {}

QRational::QRational(const Rat& constant)
    : num_(ZPoly(constant.get_num())), den_(ZPoly(constant.get_den())) {
  reduce();
}

QRational::QRational(const QLaurent& p) : den_(ZPoly(1)) {
  if (p.is_zero()) return;
  int shift = std::min(0, p.min_exp());
  // Clear denominators: common integer denominator times q^{-shift}.
  Int common(1);
  for (const auto& [k, v] : p.terms()) {
    Int d = v.get_den();
    mpz_lcm(common.get_mpz_t(), common.get_mpz_t(), d.get_mpz_t());
  }
  ZPoly n;
  for (const auto& [k, v] : p.terms()) {
    Rat scaled = v * Rat(common);
    n = n + ZPoly::monomial(scaled.get_num(), k - shift);
  }
  num_ = n;
  den_ = ZPoly::monomial(common, -shift);
  reduce();
}

QRational::QRational(ZPoly num, ZPoly den)
    : num_(std::move(num)), den_(std::move(den)) {
  if (den_.is_zero()) throw UsageError("zero denominator");
  reduce();
}

void QRational::reduce() {
  if (num_.is_zero()) {
    den_ = ZPoly(1);
    return;
  }
  if (den_.degree() == 0) {
    // Constant denominator: only the integer content needs attention.
    if (den_.leading() < 0) {
      num_ = -num_;
      den_ = -den_;
    }
    if (den_ == ZPoly(1)) return;
    Int cn = abs(num_.content());
    Int g;
    mpz_gcd(g.get_mpz_t(), cn.get_mpz_t(), den_.leading().get_mpz_t());
    if (g != 1) {
      num_ = *num_.divide_exact(ZPoly(g));
      den_ = *den_.divide_exact(ZPoly(g));
    }
    return;
  }
  ZPoly g = ZPoly::gcd(num_, den_);
  num_ = *num_.divide_exact(g);
  den_ = *den_.divide_exact(g);
  if (den_.leading() < 0) {
    num_ = -num_;
    den_ = -den_;
  }
}

QRational QRational::operator+(const QRational& o) const {
  if (num_.is_zero()) return o;
  if (o.num_.is_zero()) return *this;
  if (den_ == o.den_) return QRational(num_ + o.num_, den_);
  return QRational(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
}

QRational QRational::operator-(const QRational& o) const {
  return *this + (-o);
}

QRational QRational::operator-() const {
  QRational r = *this;
  r.num_ = -r.num_;
  return r;
}

QRational QRational::operator*(const QRational& o) const {
  if (num_.is_zero() || o.num_.is_zero()) return QRational();
  // Canonical forms make num == den mean the value one.
  if (num_ == den_) return o;
  if (o.num_ == o.den_) return *this;
  return QRational(num_ * o.num_, den_ * o.den_);
}

QRational QRational::operator/(const QRational& o) const {
  return *this * o.inverse();
}

QRational& QRational::operator+=(const QRational& o) {
  *this = *this + o;
  return *this;
}

QRational& QRational::operator*=(const QRational& o) {
  *this = *this * o;
  return *this;
}

QRational QRational::inverse() const {
  if (is_zero()) throw UsageError("division by zero");
  return QRational(den_, num_);
}

bool QRational::is_laurent() const {
  int nonzero = 0;
  for (int i = 0; i <= den_.degree(); ++i)
    if (den_.coeff(i) != 0) ++nonzero;
  return nonzero == 1;
}

std::optional<QLaurent> QRational::to_laurent() const {
  if (is_zero()) return QLaurent();
  if (!is_laurent()) return std::nullopt;
  int k = den_.degree();
  Rat d(den_.leading());
  QLaurent r;
  for (int i = 0; i <= num_.degree(); ++i) {
    if (num_.coeff(i) == 0) continue;
    r += QLaurent::q_power(i - k, Rat(num_.coeff(i)) / d);
  }
  return r;
}

std::string QRational::to_string() const {
  if (auto l = to_laurent()) return l->to_string();
  return "(" + num_.to_string() + ")/(" + den_.to_string() + ")";
}

QLaurent quantum_int(int n) {
  if (n < 0) throw UsageError("quantum_int: negative argument");
  QLaurent r;
  for (int i = 0; i < n; ++i) r += QLaurent::q_power(n - 1 - 2 * i);
  return r;
}

QRational qr_normalize(ZPoly num, ZPoly den) {
  return QRational(std::move(num), std::move(den));
}

// ----------------------------------------------------------- CycloNumber

const ZPoly& CycloNumber::cyclotomic(int k) {
  static std::map<int, ZPoly> cache;
  auto it = cache.find(k);
  if (it != cache.end()) return it->second;
  if (k < 1) throw UsageError("cyclotomic order must be positive");
  // q^k - 1 divided by the product of Phi_d over proper divisors d of k.
  ZPoly num = ZPoly::monomial(Int(1), k) - ZPoly(1);
  for (int d = 1; d < k; ++d) {
    if (k % d != 0) continue;
    num = *num.divide_exact(cyclotomic(d));
  }
  return cache.emplace(k, num).first->second;
}

CycloNumber::CycloNumber(int order) : order_(order) {
  if (order < 1) throw UsageError("cyclotomic order must be positive");
  res_.assign(static_cast<size_t>(cyclotomic(order).degree()), Rat(0));
}

void CycloNumber::reduce(std::vector<Rat> raw) {
  const ZPoly& phi = cyclotomic(order_);
  int d = phi.degree();
  // Phi_k is monic, so long division stays exact over Q.
  for (int i = static_cast<int>(raw.size()) - 1; i >= d; --i) {
    Rat top = raw[static_cast<size_t>(i)];
    if (top == 0) continue;
    raw[static_cast<size_t>(i)] = 0;
    for (int j = 0; j < d; ++j)
      raw[static_cast<size_t>(i - d + j)] -= top * Rat(phi.coeff(j));
  }
  res_.assign(static_cast<size_t>(d), Rat(0));
  for (int i = 0; i < d && i < static_cast<int>(raw.size()); ++i)
    res_[static_cast<size_t>(i)] = raw[static_cast<size_t>(i)];
}

CycloNumber CycloNumber::from_rat(int order, const Rat& v) {
  CycloNumber r(order);
  if (!r.res_.empty()) {
    r.res_[0] = v;
  } else if (v != 0) {
    throw std::logic_error("cyclotomic field with empty residue");
  }
  return r;
}

CycloNumber CycloNumber::q_power(int order, int k) {
  CycloNumber r(order);
  int e = ((k % order) + order) % order;  // q^order = 1 in the quotient
  std::vector<Rat> raw(static_cast<size_t>(e) + 1, Rat(0));
  raw[static_cast<size_t>(e)] = 1;
  r.reduce(std::move(raw));
  return r;
}

bool CycloNumber::is_zero() const {
  for (const auto& v : res_)
    if (v != 0) return false;
  return true;
}

bool CycloNumber::is_one() const {
  if (res_.empty()) return false;
  if (res_[0] != 1) return false;
  for (size_t i = 1; i < res_.size(); ++i)
    if (res_[i] != 0) return false;
  return true;
}

CycloNumber CycloNumber::operator+(const CycloNumber& o) const {
  if (order_ != o.order_) throw std::logic_error("mixed cyclotomic orders");
  CycloNumber r = *this;
  for (size_t i = 0; i < res_.size(); ++i) r.res_[i] += o.res_[i];
  return r;
}

CycloNumber CycloNumber::operator-(const CycloNumber& o) const {
  if (order_ != o.order_) throw std::logic_error("mixed cyclotomic orders");
  CycloNumber r = *this;
  for (size_t i = 0; i < res_.size(); ++i) r.res_[i] -= o.res_[i];
  return r;
}

CycloNumber CycloNumber::operator*(const CycloNumber& o) const {
  if (order_ != o.order_) throw std::logic_error("mixed cyclotomic orders");
  CycloNumber r(order_);
  if (res_.empty()) return r;
  std::vector<Rat> raw(2 * res_.size(), Rat(0));
  for (size_t i = 0; i < res_.size(); ++i) {
    if (res_[i] == 0) continue;
    for (size_t j = 0; j < o.res_.size(); ++j)
      raw[i + j] += res_[i] * o.res_[j];
  }
  r.reduce(std::move(raw));
  return r;
}

std::string CycloNumber::to_string() const {
  std::ostringstream out;
  out << "[";
  for (size_t i = 0; i < res_.size(); ++i) {
    if (i) out << ", ";
    out << res_[i].get_str();
  }
  out << "] mod Phi_" << order_;
  return out.str();
}

CycloNumber specialize_cyclotomic(const QLaurent& p, int k) {
  if (k < 1) throw UsageError("specialize_cyclotomic: order must be >= 1");
  CycloNumber acc(k);
  for (const auto& [e, v] : p.terms())
    acc = acc + CycloNumber::q_power(k, e) * CycloNumber::from_rat(k, v);
  return acc;
}

}  // namespace qsatake
