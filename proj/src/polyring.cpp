#include "qsatake/polyring.hpp"

#include "qsatake/linalg.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace qsatake {

std::optional<P> primary_from_char(char c) {
  switch (c) {
    case 'r': return P::r;
    case 'b': return P::b;
    case 'y': return P::y;
    default: return std::nullopt;
  }
}

P rotate_primary(P s) {
  switch (s) {
    case P::b: return P::r;
    case P::r: return P::y;
    case P::y: return P::b;
  }
  return s;
}

// ---------------------------------------------------------------- Subset

int Subset::size() const {
  unsigned b = bits_;
  int n = 0;
  while (b) {
    n += static_cast<int>(b & 1u);
    b >>= 1;
  }
  return n;
}

P Subset::as_primary() const {
  if (size() != 1) throw std::logic_error("as_primary on non-singleton");
  for (P s : {P::r, P::b, P::y})
    if (contains(s)) return s;
  throw std::logic_error("unreachable");
}

std::vector<P> Subset::members() const {
  std::vector<P> out;
  for (P s : {P::b, P::r, P::y})
    if (contains(s)) out.push_back(s);
  return out;
}

std::string Subset::name() const {
  if (is_empty()) return "0";
  if (size() == 1) return std::string(1, primary_char(as_primary()));
  Subset p = Subset::pair(P::r, P::b), g = Subset::pair(P::b, P::y),
         o = Subset::pair(P::r, P::y);
  if (*this == p) return "p";
  if (*this == g) return "g";
  if (*this == o) return "o";
  return "S";  // full set; not a valid label, printable for diagnostics
}

std::optional<Subset> Subset::from_char(char c) {
  switch (c) {
    case '0': return Subset::empty();
    case 'b': return Subset::of(P::b);
    case 'r': return Subset::of(P::r);
    case 'y': return Subset::of(P::y);
    case 'p': return Subset::pair(P::r, P::b);
    case 'g': return Subset::pair(P::b, P::y);
    case 'o': return Subset::pair(P::r, P::y);
    default: return std::nullopt;
  }
}

std::optional<Subset> Subset::from_name(const std::string& n) {
  if (n.size() != 1) return std::nullopt;
  return from_char(n[0]);
}

int ell(Subset I) {
  switch (I.size()) {
    case 0: return 0;
    case 1: return 1;
    case 2: return 3;
    default: throw std::logic_error("length of the full set is undefined");
  }
}

Subset rotate_subset(Subset I) {
  Subset out = Subset::empty();
  for (P s : I.members()) out = out.unite(Subset::of(rotate_primary(s)));
  return out;
}

// ------------------------------------------------------------------ Poly

Poly::Poly(long constant) {
  if (constant != 0) c_[{0, 0, 0}] = QRational(constant);
}

Poly::Poly(const QRational& constant) {
  if (!constant.is_zero()) c_[{0, 0, 0}] = constant;
}

Poly Poly::alpha(P s) {
  Exp e{0, 0, 0};
  e[static_cast<size_t>(s)] = 1;
  return monomial(e, QRational(1));
}

Poly Poly::monomial(const Exp& e, const QRational& coeff) {
  Poly p;
  if (!coeff.is_zero()) p.c_[e] = coeff;
  return p;
}

QRational Poly::coeff(const Exp& e) const {
  auto it = c_.find(e);
  return it == c_.end() ? QRational(0) : it->second;
}

void Poly::insert(const Exp& e, const QRational& v) {
  if (v.is_zero()) return;
  auto [it, fresh] = c_.try_emplace(e, v);
  if (!fresh) {
    it->second += v;
    if (it->second.is_zero()) c_.erase(it);
  }
}

Poly Poly::operator+(const Poly& o) const {
  Poly r = *this;
  for (const auto& [e, v] : o.c_) r.insert(e, v);
  return r;
}

Poly Poly::operator-(const Poly& o) const { return *this + (-o); }

Poly Poly::operator-() const {
  Poly r = *this;
  for (auto& [e, v] : r.c_) v = -v;
  return r;
}

Poly Poly::operator*(const Poly& o) const {
  Poly r;
  for (const auto& [e1, v1] : c_)
    for (const auto& [e2, v2] : o.c_) {
      Exp e{e1[0] + e2[0], e1[1] + e2[1], e1[2] + e2[2]};
      r.insert(e, v1 * v2);
    }
  return r;
}

Poly Poly::operator*(const QRational& s) const {
  Poly r;
  if (s.is_zero()) return r;
  for (const auto& [e, v] : c_) r.insert(e, v * s);
  return r;
}

Poly& Poly::operator+=(const Poly& o) {
  for (const auto& [e, v] : o.c_) insert(e, v);
  return *this;
}

Poly& Poly::operator*=(const Poly& o) {
  *this = *this * o;
  return *this;
}

int Poly::degree() const {
  int d = -1;
  for (const auto& [e, v] : c_) d = std::max(d, 2 * (e[0] + e[1] + e[2]));
  return d;
}

bool Poly::is_homogeneous() const {
  int d = -2;
  for (const auto& [e, v] : c_) {
    int m = 2 * (e[0] + e[1] + e[2]);
    if (d == -2) d = m;
    if (m != d) return false;
  }
  return true;
}

Poly Poly::homogeneous_component(int d) const {
  Poly r;
  for (const auto& [e, v] : c_)
    if (2 * (e[0] + e[1] + e[2]) == d) r.insert(e, v);
  return r;
}

bool Poly::uses_only(int var_count) const {
  for (const auto& [e, v] : c_)
    for (int i = var_count; i < 3; ++i)
      if (e[static_cast<size_t>(i)] != 0) return false;
  return true;
}

Poly Poly::shift_down(P s) const {
  size_t i = static_cast<size_t>(s);
  Poly r;
  for (const auto& [e, v] : c_) {
    if (e[i] == 0)
      throw UsageError("shift_down: monomial without the variable");
    Exp f = e;
    --f[i];
    r.insert(f, v);
  }
  return r;
}

namespace {
const char* var_name(size_t i) {
  static const char* names[3] = {"a_r", "a_b", "a_y"};
  return names[i];
}

bool coeff_needs_parens(const std::string& s) {
  return s.find(" + ") != std::string::npos ||
         s.find(" - ") != std::string::npos;
}
}  // namespace

std::string Poly::to_string() const {
  if (is_zero()) return "0";
  std::ostringstream out;
  bool first = true;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
    const Exp& e = it->first;
    std::string cs = it->second.to_string();
    bool neg = cs.size() > 1 && cs[0] == '-' && !coeff_needs_parens(cs);
    if (neg) cs = cs.substr(1);
    if (first) {
      if (neg) out << "-";
    } else {
      out << (neg ? " - " : " + ");
    }
    first = false;
    bool has_var = e[0] || e[1] || e[2];
    bool unit = (cs == "1");
    if (!has_var || !unit) {
      if (coeff_needs_parens(cs))
        out << "(" << cs << ")";
      else
        out << cs;
      if (has_var) out << "*";
    }
    bool started = false;
    for (size_t i = 0; i < 3; ++i) {
      if (e[i] == 0) continue;
      if (started) out << "*";
      out << var_name(i);
      if (e[i] > 1) out << "^" << e[i];
      started = true;
    }
  }
  return out.str();
}

namespace {

struct PolyParser {
  const std::string& s;
  size_t i = 0;

  explicit PolyParser(const std::string& text) : s(text) {}

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

  std::optional<long> small_int() {
    skip_ws();
    size_t start = i;
    if (i < s.size() && (s[i] == '-' || s[i] == '+')) ++i;
    size_t digits = i;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
    if (i == digits) {
      i = start;
      return std::nullopt;
    }
    try {
      return std::stol(s.substr(start, i - start));
    } catch (...) {
      return std::nullopt;
    }
  }

  std::optional<Poly> factor() {
    skip_ws();
    if (eat('(')) {
      auto e = expr();
      if (!e) return std::nullopt;
      if (!eat(')')) return std::nullopt;
      return e;
    }
    if (i + 1 < s.size() && s[i] == 'a' && s[i + 1] == '_') {
      if (i + 2 >= s.size()) return std::nullopt;
      auto p = primary_from_char(s[i + 2]);
      if (!p) return std::nullopt;
      i += 3;
      long e = 1;
      if (eat('^')) {
        auto v = small_int();
        if (!v || *v < 0) return std::nullopt;
        e = *v;
      }
      Poly base = Poly::alpha(*p);
      Poly out = 1;
      for (long k = 0; k < e; ++k) out *= base;
      return out;
    }
    if (i < s.size() && s[i] == 'q') {
      ++i;
      long k = 1;
      if (eat('^')) {
        auto v = small_int();
        if (!v) return std::nullopt;
        k = *v;
      }
      return Poly(QRational(QLaurent::q_power(static_cast<int>(k))));
    }
    auto n = small_int();
    if (!n) return std::nullopt;
    if (eat('/')) {
      auto d = small_int();
      if (!d || *d <= 0) return std::nullopt;
      return Poly(QRational(Rat(*n, *d)));
    }
    return Poly(*n);
  }

  std::optional<Poly> term() {
    auto f = factor();
    if (!f) return std::nullopt;
    while (eat('*')) {
      auto g = factor();
      if (!g) return std::nullopt;
      *f *= *g;
    }
    return f;
  }

  std::optional<Poly> expr() {
    skip_ws();
    bool neg = false;
    if (eat('-'))
      neg = true;
    else
      eat('+');
    auto t = term();
    if (!t) return std::nullopt;
    Poly acc = neg ? -*t : *t;
    for (;;) {
      skip_ws();
      if (i >= s.size()) break;
      if (eat('+')) {
        auto u = term();
        if (!u) return std::nullopt;
        acc += *u;
      } else if (eat('-')) {
        auto u = term();
        if (!u) return std::nullopt;
        acc += -*u;
      } else if (s[i] == ')') {
        break;  // closed by an enclosing factor
      } else {
        return std::nullopt;
      }
    }
    return acc;
  }
};

}  // namespace

std::optional<Poly> Poly::parse(const std::string& text) {
  PolyParser p(text);
  auto r = p.expr();
  if (!r) return std::nullopt;
  p.skip_ws();
  if (p.i != text.size()) return std::nullopt;
  return r;
}

// ----------------------------------------------------------- Realization

Realization::Realization(int rank) : rank_(rank) {
  if (rank != 1 && rank != 2) throw UsageError("rank must be 1 or 2");
  primaries_ = rank == 1 ? std::vector<P>{P::b, P::r}
                         : std::vector<P>{P::b, P::r, P::y};
  QLaurent two(2);
  auto set = [&](P s, P t, const QLaurent& v) {
    cartan_[static_cast<int>(s)][static_cast<int>(t)] = v;
  };
  for (P s : primaries_) set(s, s, two);
  if (rank == 1) {
    QLaurent m2 = -quantum_int(2);
    set(P::b, P::r, m2);
    set(P::r, P::b, m2);
  } else {
    QLaurent m1(-1);
    set(P::b, P::r, m1);
    set(P::r, P::b, m1);
    set(P::b, P::y, -QLaurent::q_power(-1));
    set(P::y, P::b, -QLaurent::q_power(1));
    set(P::r, P::y, -QLaurent::q_power(1));
    set(P::y, P::r, -QLaurent::q_power(-1));
  }
  for (P s : primaries_)
    for (P t : primaries_) {
      Poly img = Poly::alpha(t) -
                 Poly::alpha(s) * QRational(cartan(s, t));
      reflect_image_[static_cast<int>(s)][static_cast<int>(t)] = img;
    }
  // Proper subsets, smallest first.
  subsets_.push_back(Subset::empty());
  for (P s : primaries_) subsets_.push_back(Subset::of(s));
  if (rank == 2) {
    doubletons_ = {Subset::pair(P::r, P::b), Subset::pair(P::b, P::y),
                   Subset::pair(P::r, P::y)};
    for (Subset d : doubletons_) subsets_.push_back(d);
  }
}

const Realization& Realization::get(int rank) {
  static const Realization r1(1);
  static const Realization r2(2);
  if (rank == 1) return r1;
  if (rank == 2) return r2;
  throw UsageError("rank must be 1 or 2");
}

bool Realization::valid_subset(Subset I) const {
  for (P s : I.members())
    if (std::find(primaries_.begin(), primaries_.end(), s) ==
        primaries_.end())
      return false;
  return I.size() <= rank_;  // proper subset of the primary set
}

QLaurent Realization::cartan(P s, P t) const {
  return cartan_[static_cast<int>(s)][static_cast<int>(t)];
}

Poly Realization::reflect(P s, const Poly& f) const {
  if (f.is_zero() || f.degree() == 0) return f;
  auto& memo = reflect_memo_[static_cast<int>(s)];
  std::string key = f.to_string();
  if (auto hit = memo.find(key); hit != memo.end()) return hit->second;
  // Substitute each variable by its image; expand powers directly.
  Poly out;
  for (const auto& [e, v] : f.terms()) {
    Poly term(v);
    for (size_t i = 0; i < 3; ++i) {
      for (int k = 0; k < e[i]; ++k)
        term *= reflect_image_[static_cast<int>(s)][i];
    }
    out += term;
  }
  memo.emplace(std::move(key), out);
  return out;
}

Poly Realization::act_word(const std::vector<P>& w, const Poly& f) const {
  Poly out = f;
  for (auto it = w.rbegin(); it != w.rend(); ++it) out = reflect(*it, out);
  return out;
}

Poly Realization::demazure(P s, const Poly& f) const {
  if (f.is_zero() || f.degree() == 0) return Poly();
  auto& memo = demazure_memo_[static_cast<int>(s)];
  std::string key = f.to_string();
  if (auto hit = memo.find(key); hit != memo.end()) return hit->second;
  Poly diff = f - reflect(s, f);
  Poly out = diff.is_zero() ? Poly() : diff.shift_down(s);
  memo.emplace(std::move(key), out);
  return out;
}

bool Realization::is_invariant(Subset I, const Poly& f) const {
  if (!valid_subset(I)) throw UsageError("subset invalid for realization");
  for (P s : I.members())
    if (reflect(s, f) != f) return false;
  return true;
}

std::vector<Exp> monomials_of_degree(int var_count, int d) {
  if (d % 2 != 0 || d < 0) throw UsageError("degree must be even and >= 0");
  int total = d / 2;
  std::vector<Exp> out;
  if (var_count == 2) {
    for (int e0 = 0; e0 <= total; ++e0)
      out.push_back(Exp{e0, total - e0, 0});
  } else {
    for (int e0 = 0; e0 <= total; ++e0)
      for (int e1 = 0; e1 + e0 <= total; ++e1)
        out.push_back(Exp{e0, e1, total - e0 - e1});
  }
  std::sort(out.begin(), out.end());
  return out;
}

const std::vector<Poly>& Realization::graded_basis(Subset I, int d) const {
  auto key = std::make_pair(I.bits(), d);
  auto it = basis_cache_.find(key);
  if (it != basis_cache_.end()) return it->second;
  if (!valid_subset(I)) throw UsageError("subset invalid for realization");
  std::vector<Exp> mons = monomials_of_degree(var_count(), d);
  size_t cols = mons.size();
  std::map<Exp, size_t> index;
  for (size_t j = 0; j < cols; ++j) index[mons[j]] = j;

  std::vector<Poly> result;
  if (I.is_empty()) {
    for (const auto& m : mons) result.push_back(Poly::monomial(m, QRational(1)));
  } else {
    // Joint kernel of reflect(s) - id over the degree-d monomial space.
    QMat rows;
    for (P s : I.members()) {
      // One block of rows per reflection: row = output monomial, column =
      // input monomial.
      std::vector<QVec> block(cols, QVec(cols, QRational(0)));
      for (size_t j = 0; j < cols; ++j) {
        Poly diff =
            reflect(s, Poly::monomial(mons[j], QRational(1))) -
            Poly::monomial(mons[j], QRational(1));
        for (const auto& [e, v] : diff.terms()) block[index.at(e)][j] = v;
      }
      for (auto& row : block) rows.push_back(std::move(row));
    }
    QMat ker = kernel_basis(std::move(rows), cols);
    for (const auto& v : ker) {
      Poly p;
      for (size_t j = 0; j < cols; ++j)
        p += Poly::monomial(mons[j], v[j]);
      result.push_back(p);
    }
  }
  return basis_cache_.emplace(key, std::move(result)).first->second;
}

}  // namespace qsatake
