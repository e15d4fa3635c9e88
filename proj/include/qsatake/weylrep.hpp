#pragma once

// Exotic reflection representations of the affine symmetric group: the
// q-deformed cycle Cartan matrix, its simple-reflection action on the coroot
// space, Coxeter-relation verification over generic q, and kernel analysis
// at roots of unity.

#include <string>
#include <vector>

#include "qsatake/qarith.hpp"
#include "qsatake/report.hpp"

namespace qsatake {

// Dense square matrix over an exact scalar ring (QLaurent or CycloNumber).
template <typename S>
class SquareMatrix {
 public:
  SquareMatrix(int size, const S& fill);

  int size() const { return size_; }
  S& at(int i, int j) { return a_[index(i, j)]; }
  const S& at(int i, int j) const { return a_[index(i, j)]; }

  SquareMatrix operator*(const SquareMatrix& o) const;
  bool operator==(const SquareMatrix& o) const {
    return size_ == o.size_ && a_ == o.a_;
  }
  bool operator!=(const SquareMatrix& o) const { return !(*this == o); }

  // Rows separated by "; ", entries by ", ".
  std::string to_string() const;

 private:
  std::size_t index(int i, int j) const;
  int size_;
  std::vector<S> a_;
};

// The deformed cycle Cartan matrix on n + 1 nodes: 2 on the diagonal and -1
// on the adjacent band, except that both edges at the last node carry the
// deformation: a(n-1,n) = -q, a(n,n-1) = -q^-1, a(0,n) = -q^-1, a(n,0) = -q.
// For n = 1 both off-diagonal entries are -(q + q^-1).
struct ExoticCartan {
  int n;
  SquareMatrix<QLaurent> a;
};

ExoticCartan cartan_matrix(int n);

// Exact determinant, computed by field elimination; equals 2 - q^2 - q^-2.
QRational cartan_determinant(const ExoticCartan& c);

// Simple reflections on the coroot basis: M_i = Id - e_i (x) row_i(A), so
// only row i differs from the identity. Square scalar type as above.
template <typename S>
class ReflRep {
 public:
  ReflRep(int n, SquareMatrix<S> id, std::vector<SquareMatrix<S>> refl);

  int n() const { return n_; }
  const SquareMatrix<S>& reflection(int i) const;
  const SquareMatrix<S>& identity() const { return id_; }
  bool is_identity(const SquareMatrix<S>& m) const { return m == id_; }

  // Ordered product M_{w_0} M_{w_1} ...; empty word gives the identity.
  SquareMatrix<S> word_matrix(const std::vector<int>& word) const;

 private:
  int n_;
  SquareMatrix<S> id_;
  std::vector<SquareMatrix<S>> refl_;
};

// Entries are Laurent polynomials in a generic q.
ReflRep<QLaurent> generic_rep(int n);
// Entries specialized at a primitive root of unity of the given order.
ReflRep<CycloNumber> cyclotomic_rep(int n, int order);

// s_1 ... s_{n-1} s_n s_{n-1} ... s_1 (just s_1 when n = 1).
std::vector<int> translation_word(int n);
// s_1 s_2 ... s_n s_0.
std::vector<int> rotation_word(int n);

// Involutions, braid/commutation relations per the Cartan pattern (braid
// exactly when a_st * a_ts = 1, commutation when both entries vanish), the
// same pattern at q = 1, and generic-q non-relations (s_0 t)^j != Id for
// j <= 12.
Report check_coxeter(int n);

// At q^2 a primitive m-th root of unity (scalar order 2m, and also m when m
// is odd): (s_0 t)^m = Id, lower powers nontrivial, and for n >= 2 the
// product x = s_1 ... s_n s_0 has order exactly m * n.
Report kernel_check(int n, int m);

}  // namespace qsatake
