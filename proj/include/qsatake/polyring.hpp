#pragma once

// The graded polynomial ring R in the simple roots alpha_s (degree 2) with
// the q-deformed affine reflection action, Demazure operators, and graded
// bases of invariant subrings. Supports the two-primary realization
// (colors b, r) and the three-primary realization (colors b, r, y).

#include "qsatake/qarith.hpp"

#include <array>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace qsatake {

// Primary colors; the enumerator order (r, b, y) is the variable slot order,
// which fixes the lexicographic monomial order on (a_r, a_b, a_y).
enum class P : int { r = 0, b = 1, y = 2 };

inline char primary_char(P s) {
  switch (s) {
    case P::r: return 'r';
    case P::b: return 'b';
    case P::y: return 'y';
  }
  return '?';
}

std::optional<P> primary_from_char(char c);

// Color rotation: b -> r -> y -> b.
P rotate_primary(P s);

// A subset of primary colors, used both as region labels and as parabolic
// indices. The full set is never a valid label.
class Subset {
 public:
  constexpr Subset() : bits_(0) {}
  static constexpr Subset empty() { return Subset(0); }
  static Subset of(P s) { return Subset(1u << static_cast<int>(s)); }
  static Subset pair(P s, P t) {
    return Subset((1u << static_cast<int>(s)) | (1u << static_cast<int>(t)));
  }

  bool contains(P s) const { return bits_ & (1u << static_cast<int>(s)); }
  bool subset_of(Subset o) const { return (bits_ & ~o.bits_) == 0; }
  Subset unite(Subset o) const { return Subset(bits_ | o.bits_); }
  Subset intersect(Subset o) const { return Subset(bits_ & o.bits_); }
  int size() const;
  bool is_empty() const { return bits_ == 0; }
  bool is_primary() const { return size() == 1; }
  P as_primary() const;  // requires size 1
  std::vector<P> members() const;

  bool operator==(const Subset& o) const { return bits_ == o.bits_; }
  bool operator!=(const Subset& o) const { return bits_ != o.bits_; }
  bool operator<(const Subset& o) const { return bits_ < o.bits_; }

  unsigned bits() const { return bits_; }

  // Names: "0" (empty), "b", "r", "y", "p" {r,b}, "g" {b,y}, "o" {r,y}.
  std::string name() const;
  static std::optional<Subset> from_name(const std::string& n);
  static std::optional<Subset> from_char(char c);

 private:
  constexpr explicit Subset(unsigned bits) : bits_(bits) {}
  unsigned bits_;
};

// Length of the longest element of the parabolic subgroup: 0, 1, 3.
int ell(Subset I);

// Color rotation on doubletons: p -> o -> g -> p (and b -> r -> y on
// singletons, identity on the empty set).
Subset rotate_subset(Subset I);

using Exp = std::array<int, 3>;  // exponents of (a_r, a_b, a_y)

// Multivariate polynomial over Q(q) in the simple roots, graded with
// deg alpha_s = 2. Invariant: no stored zero coefficients.
class Poly {
 public:
  Poly() = default;
  Poly(long constant);  // NOLINT: implicit by design
  explicit Poly(const QRational& constant);
  static Poly alpha(P s);
  static Poly monomial(const Exp& e, const QRational& coeff);

  bool is_zero() const { return c_.empty(); }
  const std::map<Exp, QRational>& terms() const { return c_; }
  QRational coeff(const Exp& e) const;

  Poly operator+(const Poly& o) const;
  Poly operator-(const Poly& o) const;
  Poly operator-() const;
  Poly operator*(const Poly& o) const;
  Poly operator*(const QRational& s) const;
  Poly& operator+=(const Poly& o);
  Poly& operator*=(const Poly& o);
  bool operator==(const Poly& o) const { return c_ == o.c_; }
  bool operator!=(const Poly& o) const { return c_ != o.c_; }

  // Total degree (2 * exponent sum) of the largest monomial; -1 for zero.
  int degree() const;
  bool is_homogeneous() const;
  Poly homogeneous_component(int d) const;
  // True when only the named variables appear.
  bool uses_only(int var_count) const;

  // Exact division by alpha_s; throws if any monomial lacks the variable.
  Poly shift_down(P s) const;

  std::string to_string() const;
  // Grammar: variables a_r a_b a_y, q-scalars per the qarith grammar, + - * ^.
  static std::optional<Poly> parse(const std::string& text);

 private:
  void insert(const Exp& e, const QRational& v);
  std::map<Exp, QRational> c_;
};

// A realization: Cartan matrix plus the induced reflection action on R.
class Realization {
 public:
  // rank 1: primaries {b, r}; rank 2: primaries {b, r, y}.
  static const Realization& get(int rank);

  int rank() const { return rank_; }
  int var_count() const { return rank_ + 1; }
  const std::vector<P>& primaries() const { return primaries_; }
  const std::vector<Subset>& subsets() const { return subsets_; }       // all proper
  const std::vector<Subset>& doubletons() const { return doubletons_; }

  bool valid_subset(Subset I) const;
  QLaurent cartan(P s, P t) const;

  Poly reflect(P s, const Poly& f) const;
  Poly act_word(const std::vector<P>& w, const Poly& f) const;
  Poly demazure(P s, const Poly& f) const;
  bool is_invariant(Subset I, const Poly& f) const;

  // Basis of the degree-d piece of R^I; deterministic; cached.
  const std::vector<Poly>& graded_basis(Subset I, int d) const;

 private:
  explicit Realization(int rank);
  int rank_;
  std::vector<P> primaries_;
  std::vector<Subset> subsets_;
  std::vector<Subset> doubletons_;
  QLaurent cartan_[3][3];
  Poly reflect_image_[3][3];  // image of alpha_t under s
  mutable std::map<std::pair<unsigned, int>, std::vector<Poly>> basis_cache_;
  // The straightening passes hit the same polynomials over and over;
  // memoized by printed form. Single-threaded use.
  mutable std::array<std::unordered_map<std::string, Poly>, 3> reflect_memo_;
  mutable std::array<std::unordered_map<std::string, Poly>, 3> demazure_memo_;
};

// All monomials of polynomial degree d (even) in the first var_count
// variables, in ascending lexicographic order.
std::vector<Exp> monomials_of_degree(int var_count, int d);

}  // namespace qsatake
