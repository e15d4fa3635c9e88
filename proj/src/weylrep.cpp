#include "qsatake/weylrep.hpp"

#include <cstddef>
#include <utility>

namespace qsatake {

namespace {

[[noreturn]] void fail(const std::string& msg) { throw UsageError(msg); }

QRational det_target() {
  return QRational(QLaurent(2) - QLaurent::q_power(2) - QLaurent::q_power(-2));
}

}  // namespace

template <typename S>
SquareMatrix<S>::SquareMatrix(int size, const S& fill)
    : size_(size),
      a_(size > 0 ? static_cast<std::size_t>(size) * size : 0, fill) {
  if (size < 1) fail("matrix size must be positive");
}

template <typename S>
std::size_t SquareMatrix<S>::index(int i, int j) const {
  if (i < 0 || i >= size_ || j < 0 || j >= size_)
    fail("matrix index out of range");
  return static_cast<std::size_t>(i) * size_ + j;
}

template <typename S>
SquareMatrix<S> SquareMatrix<S>::operator*(const SquareMatrix& o) const {
  if (size_ != o.size_) fail("matrix size mismatch");
  SquareMatrix out(size_, a_[0] - a_[0]);
  for (int i = 0; i < size_; ++i)
    for (int k = 0; k < size_; ++k) {
      const S& x = at(i, k);
      if (x.is_zero()) continue;
      for (int j = 0; j < size_; ++j)
        out.at(i, j) = out.at(i, j) + x * o.at(k, j);
    }
  return out;
}

template <typename S>
std::string SquareMatrix<S>::to_string() const {
  std::string out = "[";
  for (int i = 0; i < size_; ++i) {
    if (i) out += "; ";
    for (int j = 0; j < size_; ++j) {
      if (j) out += ", ";
      out += at(i, j).to_string();
    }
  }
  return out + "]";
}

template <typename S>
ReflRep<S>::ReflRep(int n, SquareMatrix<S> id, std::vector<SquareMatrix<S>> refl)
    : n_(n), id_(std::move(id)), refl_(std::move(refl)) {
  if (n_ < 1) fail("rank must be at least 1");
  if (id_.size() != n_ + 1 || refl_.size() != static_cast<std::size_t>(n_) + 1)
    fail("reflection family has the wrong size");
  for (const auto& m : refl_)
    if (m.size() != id_.size()) fail("reflection matrix size mismatch");
}

template <typename S>
const SquareMatrix<S>& ReflRep<S>::reflection(int i) const {
  if (i < 0 || i > n_) fail("reflection index out of range");
  return refl_[static_cast<std::size_t>(i)];
}

template <typename S>
SquareMatrix<S> ReflRep<S>::word_matrix(const std::vector<int>& word) const {
  SquareMatrix<S> out = id_;
  for (int i : word) out = out * reflection(i);
  return out;
}

ExoticCartan cartan_matrix(int n) {
  if (n < 1) fail("cartan rank must be at least 1");
  int sz = n + 1;
  SquareMatrix<QLaurent> a(sz, QLaurent());
  for (int i = 0; i < sz; ++i) a.at(i, i) = QLaurent(2);
  QLaurent mq = QLaurent::q_power(1, Rat(-1));
  QLaurent mqi = QLaurent::q_power(-1, Rat(-1));
  if (n == 1) {
    QLaurent corner = -quantum_int(2);
    a.at(0, 1) = corner;
    a.at(1, 0) = corner;
  } else {
    for (int i = 0; i + 2 < sz; ++i) {
      a.at(i, i + 1) = QLaurent(-1);
      a.at(i + 1, i) = QLaurent(-1);
    }
    a.at(n - 1, n) = mq;
    a.at(n, n - 1) = mqi;
    a.at(0, n) = mqi;
    a.at(n, 0) = mq;
  }
  return {n, a};
}

QRational cartan_determinant(const ExoticCartan& c) {
  int sz = c.a.size();
  std::vector<std::vector<QRational>> m(sz, std::vector<QRational>(sz));
  for (int i = 0; i < sz; ++i)
    for (int j = 0; j < sz; ++j) m[i][j] = QRational(c.a.at(i, j));
  QRational det(1);
  for (int col = 0; col < sz; ++col) {
    int pivot = -1;
    for (int r = col; r < sz; ++r)
      if (!m[r][col].is_zero()) {
        pivot = r;
        break;
      }
    if (pivot < 0) return QRational(0);
    if (pivot != col) {
      std::swap(m[pivot], m[col]);
      det = det * QRational(-1);
    }
    det = det * m[col][col];
    for (int r = col + 1; r < sz; ++r) {
      if (m[r][col].is_zero()) continue;
      QRational f = m[r][col] / m[col][col];
      for (int j = col; j < sz; ++j) m[r][j] = m[r][j] - f * m[col][j];
    }
  }
  return det;
}

ReflRep<QLaurent> generic_rep(int n) {
  ExoticCartan c = cartan_matrix(n);
  int sz = n + 1;
  SquareMatrix<QLaurent> id(sz, QLaurent());
  for (int i = 0; i < sz; ++i) id.at(i, i) = QLaurent(1);
  std::vector<SquareMatrix<QLaurent>> refl;
  refl.reserve(static_cast<std::size_t>(sz));
  for (int i = 0; i < sz; ++i) {
    SquareMatrix<QLaurent> m = id;
    for (int j = 0; j < sz; ++j) m.at(i, j) = m.at(i, j) - c.a.at(i, j);
    refl.push_back(std::move(m));
  }
  return ReflRep<QLaurent>(n, std::move(id), std::move(refl));
}

ReflRep<CycloNumber> cyclotomic_rep(int n, int order) {
  if (order < 1) fail("cyclotomic order must be positive");
  ReflRep<QLaurent> g = generic_rep(n);
  auto spec = [order](const SquareMatrix<QLaurent>& m) {
    SquareMatrix<CycloNumber> out(m.size(), CycloNumber(order));
    for (int i = 0; i < m.size(); ++i)
      for (int j = 0; j < m.size(); ++j)
        out.at(i, j) = specialize_cyclotomic(m.at(i, j), order);
    return out;
  };
  std::vector<SquareMatrix<CycloNumber>> refl;
  refl.reserve(static_cast<std::size_t>(n) + 1);
  for (int i = 0; i <= n; ++i) refl.push_back(spec(g.reflection(i)));
  return ReflRep<CycloNumber>(n, spec(g.identity()), std::move(refl));
}

std::vector<int> translation_word(int n) {
  if (n < 1) fail("rank must be at least 1");
  std::vector<int> w;
  for (int i = 1; i < n; ++i) w.push_back(i);
  w.push_back(n);
  for (int i = n - 1; i >= 1; --i) w.push_back(i);
  return w;
}

std::vector<int> rotation_word(int n) {
  if (n < 1) fail("rank must be at least 1");
  std::vector<int> w;
  for (int i = 1; i <= n; ++i) w.push_back(i);
  w.push_back(0);
  return w;
}

Report check_coxeter(int n) {
  Report rep;
  rep.suite = "weylrep";
  ExoticCartan c = cartan_matrix(n);
  QRational det = cartan_determinant(c);
  rep.add("cartan.det", det == det_target(),
          det == det_target() ? "" : "got " + det.to_string());

  ReflRep<QLaurent> g = generic_rep(n);
  for (int i = 0; i <= n; ++i) {
    SquareMatrix<QLaurent> sq = g.reflection(i) * g.reflection(i);
    rep.add("involution." + std::to_string(i), g.is_identity(sq),
            g.is_identity(sq) ? "" : sq.to_string());
  }

  for (int i = 0; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j) {
      const QLaurent& ij = c.a.at(i, j);
      const QLaurent& ji = c.a.at(j, i);
      std::string tag = std::to_string(i) + "." + std::to_string(j);
      if (ij.is_zero() && ji.is_zero()) {
        SquareMatrix<QLaurent> lhs = g.reflection(i) * g.reflection(j);
        SquareMatrix<QLaurent> rhs = g.reflection(j) * g.reflection(i);
        rep.add("commute." + tag, lhs == rhs,
                lhs == rhs ? "" : lhs.to_string() + " vs " + rhs.to_string());
      } else if (ij * ji == QLaurent(1)) {
        SquareMatrix<QLaurent> lhs =
            g.reflection(i) * g.reflection(j) * g.reflection(i);
        SquareMatrix<QLaurent> rhs =
            g.reflection(j) * g.reflection(i) * g.reflection(j);
        rep.add("braid." + tag, lhs == rhs,
                lhs == rhs ? "" : lhs.to_string() + " vs " + rhs.to_string());
      }
    }

  // Same pattern with q set to 1: the undeformed affine cycle.
  ReflRep<CycloNumber> h = cyclotomic_rep(n, 1);
  CycloNumber one = CycloNumber::from_rat(1, Rat(1));
  for (int i = 0; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j) {
      CycloNumber ij = specialize_cyclotomic(c.a.at(i, j), 1);
      CycloNumber ji = specialize_cyclotomic(c.a.at(j, i), 1);
      std::string tag = std::to_string(i) + "." + std::to_string(j);
      if (ij.is_zero() && ji.is_zero()) {
        rep.add("classical.commute." + tag,
                h.reflection(i) * h.reflection(j) ==
                    h.reflection(j) * h.reflection(i));
      } else if (ij * ji == one) {
        rep.add("classical.braid." + tag,
                h.reflection(i) * h.reflection(j) * h.reflection(i) ==
                    h.reflection(j) * h.reflection(i) * h.reflection(j));
      }
    }

  SquareMatrix<QLaurent> a = g.reflection(0) * g.word_matrix(translation_word(n));
  SquareMatrix<QLaurent> p = g.identity();
  for (int j = 1; j <= 12; ++j) {
    p = p * a;
    rep.add("generic.nonrel." + std::to_string(j), !g.is_identity(p),
            g.is_identity(p) ? "power " + std::to_string(j) + " is trivial"
                             : "");
  }
  return rep;
}

Report kernel_check(int n, int m) {
  if (n < 1) fail("rank must be at least 1");
  if (m < 2) fail("root order must be at least 2");
  Report rep;
  rep.suite = "kernel";
  std::vector<int> orders = {2 * m};
  if (m % 2 == 1) orders.push_back(m);
  for (int k : orders) {
    std::string pre = "k" + std::to_string(k) + ".";
    ReflRep<CycloNumber> r = cyclotomic_rep(n, k);
    SquareMatrix<CycloNumber> a =
        r.reflection(0) * r.word_matrix(translation_word(n));
    SquareMatrix<CycloNumber> p = r.identity();
    for (int j = 1; j <= m; ++j) {
      p = p * a;
      if (j < m)
        rep.add(pre + "nontrivial." + std::to_string(j), !r.is_identity(p),
                r.is_identity(p) ? "kernel power below " + std::to_string(m)
                                 : "");
    }
    rep.add(pre + "kernel.power", r.is_identity(p),
            r.is_identity(p) ? "" : p.to_string());
    if (n >= 2) {
      SquareMatrix<CycloNumber> x = r.word_matrix(rotation_word(n));
      SquareMatrix<CycloNumber> px = r.identity();
      int first = 0;
      for (int j = 1; j <= m * n; ++j) {
        px = px * x;
        if (first == 0 && r.is_identity(px)) first = j;
      }
      rep.add(pre + "rotation.order", first == m * n,
              first == m * n ? ""
                             : "first identity power " + std::to_string(first));
    }
  }
  return rep;
}

template class SquareMatrix<QLaurent>;
template class SquareMatrix<CycloNumber>;
template class ReflRep<QLaurent>;
template class ReflRep<CycloNumber>;

}  // namespace qsatake
