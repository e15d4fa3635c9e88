#pragma once

// Exact arithmetic in the deformation parameter q: integer-coefficient
// polynomials, Laurent polynomials, the rational function field, quantum
// integers, and specialization at exact roots of unity. No floating point.

#include <gmpxx.h>

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace qsatake {

using Int = mpz_class;
using Rat = mpq_class;

// Dense polynomial in q over Z, exponents >= 0. Invariant: no trailing zero
// coefficients (zero polynomial = empty vector).
class ZPoly {
 public:
  ZPoly() = default;
  explicit ZPoly(const Int& constant);
  explicit ZPoly(long constant);
  static ZPoly monomial(const Int& coeff, int deg);

  bool is_zero() const { return c_.empty(); }
  int degree() const { return static_cast<int>(c_.size()) - 1; }  // -1 if zero
  Int coeff(int i) const;
  const Int& leading() const;

  ZPoly operator+(const ZPoly& o) const;
  ZPoly operator-(const ZPoly& o) const;
  ZPoly operator-() const;
  ZPoly operator*(const ZPoly& o) const;
  bool operator==(const ZPoly& o) const { return c_ == o.c_; }

  // gcd of all coefficients, sign matching the leading coefficient; 0 for 0.
  Int content() const;
  ZPoly primitive_part() const;

  // Quotient when o divides *this exactly in Z[q]; nullopt otherwise.
  std::optional<ZPoly> divide_exact(const ZPoly& o) const;

  // Full gcd in Z[q] including integer content; positive leading coefficient.
  static ZPoly gcd(ZPoly a, ZPoly b);

  std::string to_string() const;

 private:
  void trim();
  std::vector<Int> c_;
};

// Laurent polynomial in q with exact rational coefficients.
class QLaurent {
 public:
  QLaurent() = default;
  QLaurent(long constant);  // NOLINT: implicit by design
  explicit QLaurent(const Rat& constant);
  static QLaurent q_power(int k, const Rat& coeff = Rat(1));

  bool is_zero() const { return c_.empty(); }
  Rat coeff(int k) const;
  const std::map<int, Rat>& terms() const { return c_; }
  int min_exp() const;  // requires nonzero
  int max_exp() const;

  QLaurent operator+(const QLaurent& o) const;
  QLaurent operator-(const QLaurent& o) const;
  QLaurent operator-() const;
  QLaurent operator*(const QLaurent& o) const;
  QLaurent& operator+=(const QLaurent& o);
  QLaurent& operator*=(const QLaurent& o);
  bool operator==(const QLaurent& o) const { return c_ == o.c_; }

  // The bar involution q -> q^{-1}.
  QLaurent bar() const;

  std::string to_string() const;
  // Grammar: integer coefficients, q^k (k possibly negative), + - *.
  static std::optional<QLaurent> parse(const std::string& text);

 private:
  void insert(int k, const Rat& v);
  std::map<int, Rat> c_;  // exponent -> nonzero coefficient
};

// Element of Q(q) as a reduced fraction of integer polynomials.
// Canonical form: gcd(num, den) = 1 in Z[q] (integer content included),
// denominator nonzero with positive leading coefficient.
class QRational {
 public:
  QRational();
  QRational(long constant);  // NOLINT: implicit by design
  explicit QRational(const Rat& constant);
  QRational(const QLaurent& p);  // NOLINT: canonical embedding
  QRational(ZPoly num, ZPoly den);

  bool is_zero() const { return num_.is_zero(); }
  const ZPoly& num() const { return num_; }
  const ZPoly& den() const { return den_; }

  QRational operator+(const QRational& o) const;
  QRational operator-(const QRational& o) const;
  QRational operator-() const;
  QRational operator*(const QRational& o) const;
  QRational operator/(const QRational& o) const;
  QRational& operator+=(const QRational& o);
  QRational& operator*=(const QRational& o);
  bool operator==(const QRational& o) const {
    return num_ == o.num_ && den_ == o.den_;
  }
  bool operator!=(const QRational& o) const { return !(*this == o); }

  QRational inverse() const;

  // Defined when the denominator is a monomial c*q^k.
  bool is_laurent() const;
  std::optional<QLaurent> to_laurent() const;

  std::string to_string() const;

 private:
  void reduce();
  ZPoly num_, den_;
};

// Sum_{i=0..n-1} q^{n-1-2i}; rejects negative n.
QLaurent quantum_int(int n);

// Canonical reduced fraction; throws on zero denominator.
QRational qr_normalize(ZPoly num, ZPoly den);

// Exact element of the cyclotomic field Q(zeta_k) = Q[q]/(Phi_k).
class CycloNumber {
 public:
  CycloNumber(int order);  // zero of the given order
  static CycloNumber from_rat(int order, const Rat& v);
  static CycloNumber q_power(int order, int k);

  int order() const { return order_; }
  bool is_zero() const;
  bool is_one() const;
  const std::vector<Rat>& residue() const { return res_; }

  CycloNumber operator+(const CycloNumber& o) const;
  CycloNumber operator-(const CycloNumber& o) const;
  CycloNumber operator*(const CycloNumber& o) const;
  bool operator==(const CycloNumber& o) const {
    return order_ == o.order_ && res_ == o.res_;
  }

  std::string to_string() const;

  // Phi_k as an integer polynomial, computed by exact division and cached.
  static const ZPoly& cyclotomic(int k);

 private:
  int order_;
  std::vector<Rat> res_;  // res_[i] = coefficient of q^i, size = deg Phi_k
  void reduce(std::vector<Rat> raw);  // raw poly (exponents >= 0) mod Phi_k
};

// Image of p under q -> a primitive k-th root of unity.
CycloNumber specialize_cyclotomic(const QLaurent& p, int k);

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace qsatake
