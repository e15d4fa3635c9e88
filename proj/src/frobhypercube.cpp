#include "qsatake/frobhypercube.hpp"

#include "qsatake/linalg.hpp"

#include <algorithm>
#include <random>
#include <sstream>

namespace qsatake {

namespace {

// Row-reduced span with unit pivots, used for greedy basis extension.
struct Echelon {
  std::vector<QVec> rows;
  std::vector<size_t> pivots;

  // Adds v to the span; returns true when the rank grew.
  bool add(QVec v) {
    for (size_t r = 0; r < rows.size(); ++r) {
      const QRational& c = v[pivots[r]];
      if (c.is_zero()) continue;
      QRational f = c;
      for (size_t j = 0; j < v.size(); ++j) v[j] = v[j] - f * rows[r][j];
    }
    size_t p = v.size();
    for (size_t j = 0; j < v.size(); ++j)
      if (!v[j].is_zero()) {
        p = j;
        break;
      }
    if (p == v.size()) return false;
    QRational inv = v[p].inverse();
    for (size_t j = 0; j < v.size(); ++j) v[j] = v[j] * inv;
    for (size_t r = 0; r < rows.size(); ++r) {
      const QRational& c = rows[r][p];
      if (c.is_zero()) continue;
      QRational f = c;
      for (size_t j = 0; j < v.size(); ++j)
        rows[r][j] = rows[r][j] - f * v[j];
    }
    rows.push_back(std::move(v));
    pivots.push_back(p);
    return true;
  }

  size_t rank() const { return rows.size(); }
};

QVec poly_coords(const Poly& f, const std::map<Exp, size_t>& index) {
  QVec v(index.size(), QRational());
  for (const auto& [e, c] : f.terms()) {
    auto it = index.find(e);
    if (it == index.end()) throw UsageError("polynomial outside coordinate span");
    v[it->second] = c;
  }
  return v;
}

std::map<Exp, size_t> monomial_index(int var_count, int d) {
  std::map<Exp, size_t> index;
  size_t k = 0;
  for (const Exp& e : monomials_of_degree(var_count, d)) index[e] = k++;
  return index;
}

int group_order(Subset I) {
  switch (I.size()) {
    case 0: return 1;
    case 1: return 2;
    default: return 6;
  }
}

}  // namespace

const FrobeniusCube& FrobeniusCube::get(int rank) {
  static const FrobeniusCube cube1(Realization::get(1));
  static const FrobeniusCube cube2(Realization::get(2));
  if (rank == 1) return cube1;
  if (rank == 2) return cube2;
  throw UsageError("rank must be 1 or 2");
}

FrobeniusCube::FrobeniusCube(const Realization& re) : re_(re) {
  roots_[Subset::empty()] = {};
  for (P s : re_.primaries()) roots_[Subset::of(s)] = {Poly::alpha(s)};
  for (Subset I : re_.doubletons()) {
    auto [s, t] = doubleton_pair(I);
    roots_[I] = {Poly::alpha(s), Poly::alpha(t),
                 re_.reflect(s, Poly::alpha(t))};
  }
}

const std::vector<Poly>& FrobeniusCube::roots(Subset I) const {
  auto it = roots_.find(I);
  if (it == roots_.end()) throw UsageError("no root set for this subset");
  return it->second;
}

std::pair<P, P> FrobeniusCube::doubleton_pair(Subset I) const {
  if (I.size() != 2) throw UsageError("doubleton required");
  // Fixed color order b < r < y.
  for (P s : {P::b, P::r, P::y})
    if (I.contains(s))
      for (P t : {P::r, P::y})
        if (t != s && I.contains(t)) return {s, t};
  throw UsageError("doubleton required");
}

Poly FrobeniusCube::nonsimple_root(Subset I) const {
  const auto& r = roots(I);
  if (r.size() != 3) throw UsageError("doubleton required");
  return r[2];
}

QLaurent FrobeniusCube::c(P s, P t) const {
  if (re_.rank() != 2) throw UsageError("pairing scalars need three primaries");
  if (s == t) throw UsageError("pairing scalar needs distinct colors");
  if (s == P::b && t == P::y) return QLaurent::q_power(-1);
  if (s == P::r && t == P::y) return QLaurent::q_power(1);
  return QLaurent(1);
}

Poly FrobeniusCube::mu(Subset I, Subset J) const {
  require_nested(I, J);
  const auto& lo = roots(I);
  Poly out = 1;
  for (const Poly& root : roots(J))
    if (std::find(lo.begin(), lo.end(), root) == lo.end()) out *= root;
  return out;
}

void FrobeniusCube::require_nested(Subset I, Subset J) const {
  if (!re_.valid_subset(I) || !re_.valid_subset(J))
    throw UsageError("subset invalid for realization");
  if (!I.subset_of(J))
    throw UsageError("need nested subsets (source level inside target level)");
}

int FrobeniusCube::extension_degree(Subset I, Subset J) const {
  require_nested(I, J);
  return 2 * (ell(J) - ell(I));
}

int FrobeniusCube::module_rank(Subset I, Subset J) const {
  require_nested(I, J);
  return group_order(J) / group_order(I);
}

TraceWord FrobeniusCube::trace_word(Subset I, Subset J) const {
  require_nested(I, J);
  if (I == J) return {QLaurent(1), {}};
  if (I.is_empty() && J.is_primary()) return {QLaurent(1), {J.as_primary()}};
  if (I.is_primary() && J.size() == 2) {
    P s = I.as_primary();
    P t = P::r;
    for (P u : J.members())
      if (u != s) t = u;
    // Values fixed by the trace table of the three-primary realization;
    // the q prefactors compensate the braid scalars.
    QLaurent pre(1);
    if (s == P::b && t == P::y) pre = QLaurent::q_power(1);
    if (s == P::r && t == P::y) pre = QLaurent::q_power(-1);
    return {pre, {s, t}};
  }
  if (I.is_empty() && J.size() == 2) {
    P m = doubleton_pair(J).first;
    TraceWord upper = trace_word(Subset::of(m), J);
    upper.word.push_back(m);
    return upper;
  }
  throw UsageError("no trace between these levels");
}

Poly FrobeniusCube::trace(Subset I, Subset J, const Poly& f) const {
  require_nested(I, J);
  if (!re_.is_invariant(I, f)) throw UsageError("trace input not invariant");
  TraceWord tw = trace_word(I, J);
  Poly g = f;
  for (auto it = tw.word.rbegin(); it != tw.word.rend(); ++it)
    g = re_.demazure(*it, g);
  return g * QRational(tw.prefactor);
}

FrobeniusExtension FrobeniusCube::extension(Subset I, Subset J) const {
  return {I, J, trace_word(I, J), extension_degree(I, J), module_rank(I, J)};
}

const DualBases& FrobeniusCube::dual_bases(Subset I, Subset J,
                                           BasisStrategy strategy) const {
  require_nested(I, J);
  auto key = std::make_tuple(I.bits(), J.bits(), static_cast<int>(strategy));
  auto hit = cache_.find(key);
  if (hit != cache_.end()) return hit->second;

  const int target = module_rank(I, J);
  const int top = extension_degree(I, J);
  DualBases out;
  std::vector<int> degs;

  for (int d = 0; d <= top && static_cast<int>(out.basis.size()) < target;
       d += 2) {
    auto index = monomial_index(re_.var_count(), d);
    Echelon span;
    for (size_t i = 0; i < out.basis.size(); ++i) {
      int gd = d - degs[i];
      if (gd < 0) continue;
      for (const Poly& g : re_.graded_basis(J, gd))
        span.add(poly_coords(out.basis[i] * g, index));
    }
    std::vector<Poly> cands = re_.graded_basis(I, d);
    if (strategy == BasisStrategy::LexHigh)
      std::reverse(cands.begin(), cands.end());
    for (const Poly& cand : cands) {
      if (static_cast<int>(out.basis.size()) == target) break;
      if (span.add(poly_coords(cand, index))) {
        out.basis.push_back(cand);
        degs.push_back(d);
      }
    }
  }
  if (static_cast<int>(out.basis.size()) != target)
    throw UsageError("module basis incomplete");

  // Duals degree by degree: the dual of a degree-d element lives in degree
  // top - d, and the pairing conditions form a linear system over the
  // graded basis of that piece.
  for (int j = 0; j < target; ++j) {
    int dd = top - degs[j];
    const auto& gb = re_.graded_basis(I, dd);
    std::vector<std::vector<Poly>> traced(out.basis.size());
    for (size_t i = 0; i < out.basis.size(); ++i) {
      traced[i].reserve(gb.size());
      for (const Poly& g : gb) traced[i].push_back(trace(I, J, out.basis[i] * g));
    }
    QMat a;
    QVec rhs;
    for (size_t i = 0; i < out.basis.size(); ++i) {
      int rd = degs[i] - degs[j];
      if (rd < 0) continue;  // pairing vanishes in negative degree
      for (const auto& [e, idx] : monomial_index(re_.var_count(), rd)) {
        QVec row(gb.size());
        for (size_t m = 0; m < gb.size(); ++m) row[m] = traced[i][m].coeff(e);
        a.push_back(std::move(row));
        rhs.push_back(QRational(static_cast<long>(
            (static_cast<int>(i) == j && rd == 0) ? 1 : 0)));
      }
    }
    auto sol = solve(a, rhs);
    if (!sol) throw UsageError("singular pairing for dual bases");
    Poly dual;
    for (size_t m = 0; m < gb.size(); ++m) dual += gb[m] * (*sol)[m];
    out.dual.push_back(dual);
  }

  return cache_.emplace(key, std::move(out)).first->second;
}

std::vector<std::pair<Poly, Poly>> FrobeniusCube::coproduct(
    Subset I, Subset J, BasisStrategy strategy) const {
  const DualBases& db = dual_bases(I, J, strategy);
  std::vector<std::pair<Poly, Poly>> out;
  for (size_t i = 0; i < db.basis.size(); ++i)
    out.emplace_back(db.basis[i], db.dual[i]);
  return out;
}

std::vector<Poly> FrobeniusCube::tensor_coordinates(
    Subset I, Subset J,
    const std::vector<std::pair<Poly, Poly>>& pairs) const {
  const DualBases& db = dual_bases(I, J, BasisStrategy::LexLow);
  std::vector<Poly> coords(db.basis.size());
  for (size_t k = 0; k < db.basis.size(); ++k) {
    Poly w;
    for (const auto& [u, v] : pairs) w += trace(I, J, db.dual[k] * u) * v;
    coords[k] = w;
  }
  return coords;
}

// ----------------------------------------------------------------- suite

namespace {

Poly apply_ops(const Realization& re, std::initializer_list<P> ops,
               const Poly& f) {
  Poly g = f;
  for (auto it = std::rbegin(ops); it != std::rend(ops); ++it)
    g = re.demazure(*it, g);
  return g;
}

std::string subset_pair_name(Subset I, Subset J) {
  return I.name() + J.name();
}

// All strictly nested valid pairs, smallest extensions first.
std::vector<std::pair<Subset, Subset>> nested_pairs(const Realization& re) {
  std::vector<std::pair<Subset, Subset>> out;
  for (Subset I : re.subsets())
    for (Subset J : re.subsets())
      if (I != J && I.subset_of(J)) out.emplace_back(I, J);
  std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    return ell(a.second) - ell(a.first) < ell(b.second) - ell(b.first);
  });
  return out;
}

Poly random_invariant(const Realization& re, Subset I, int max_deg,
                      std::mt19937& rng) {
  std::uniform_int_distribution<int> co(-3, 3);
  Poly f;
  for (int d = 0; d <= max_deg; d += 2)
    for (const Poly& g : re.graded_basis(I, d)) f += g * QRational(co(rng));
  return f;
}

}  // namespace

Report verify_hypercube(int rank, int degree_cutoff) {
  const FrobeniusCube& cube = FrobeniusCube::get(rank);
  const Realization& re = cube.realization();
  Report rep;
  rep.suite = "frobenius";

  const QRational q2(quantum_int(2)), q3(quantum_int(3));
  const QRational q(QLaurent::q_power(1)), qi(QLaurent::q_power(-1));

  auto all_graded = [&](int cutoff) {
    std::vector<Poly> out;
    for (int d = 0; d <= cutoff; d += 2)
      for (const Poly& f : re.graded_basis(Subset::empty(), d))
        out.push_back(f);
    return out;
  };

  if (rank == 2) {
    std::vector<Poly> fs = all_graded(degree_cutoff);

    {
      bool ok = true;
      std::string w;
      for (const Poly& f : fs)
        if (apply_ops(re, {P::b, P::r, P::b}, f) !=
            apply_ops(re, {P::r, P::b, P::r}, f)) {
          ok = false;
          w = "f = " + f.to_string();
          break;
        }
      rep.add("braid.brb_eq_rbr", ok, w);
    }
    {
      bool ok = true;
      std::string w;
      for (const Poly& f : fs)
        if (apply_ops(re, {P::b, P::y, P::b}, f) * q !=
            apply_ops(re, {P::y, P::b, P::y}, f)) {
          ok = false;
          w = "f = " + f.to_string();
          break;
        }
      rep.add("braid.q_byb_eq_yby", ok, w);
    }
    {
      bool ok = true;
      std::string w;
      for (const Poly& f : fs)
        if (apply_ops(re, {P::r, P::y, P::r}, f) * qi !=
            apply_ops(re, {P::y, P::r, P::y}, f)) {
          ok = false;
          w = "f = " + f.to_string();
          break;
        }
      rep.add("braid.qinv_ryr_eq_yry", ok, w);
    }

    // Composition of two single-color steps against the scaled two-step
    // trace word, as raw operators.
    for (P s : re.primaries())
      for (P t : re.primaries()) {
        if (s == t) continue;
        Subset st = Subset::pair(s, t);
        TraceWord tw = cube.trace_word(Subset::of(s), st);
        QRational scale = QRational(cube.c(s, t)) * QRational(tw.prefactor);
        bool ok = true;
        std::string w;
        for (const Poly& f : fs) {
          Poly lhs = re.demazure(s, re.demazure(t, f));
          Poly word = f;
          for (auto it = tw.word.rbegin(); it != tw.word.rend(); ++it)
            word = re.demazure(*it, word);
          if (lhs != word * scale) {
            ok = false;
            w = "f = " + f.to_string();
            break;
          }
        }
        rep.add("compose." + std::string(1, primary_char(s)) +
                    std::string(1, primary_char(t)),
                ok, w);
      }

    // Trace chains through each singleton.
    for (Subset I : re.doubletons())
      for (P s : I.members()) {
        bool ok = true;
        std::string w;
        for (const Poly& f : fs) {
          Poly via =
              cube.trace(Subset::of(s), I, cube.trace(Subset::empty(), Subset::of(s), f));
          if (via != cube.trace(Subset::empty(), I, f)) {
            ok = false;
            w = "f = " + f.to_string();
            break;
          }
        }
        rep.add("chain.0_" + std::string(1, primary_char(s)) + "_" + I.name(),
                ok, w);
      }

    // Cross-level trace of the complementary root product.
    for (Subset I : re.doubletons())
      for (P s : I.members())
        for (Subset J : re.doubletons()) {
          if (J == I || !J.contains(s)) continue;
          Poly got = cube.trace(Subset::of(s), I, cube.mu(Subset::of(s), J));
          rep.add("crossmu." + std::string(1, primary_char(s)) + "_" +
                      I.name() + "_" + J.name(),
                  got == Poly(q3),
                  got == Poly(q3) ? "" : "got " + got.to_string());
        }

    // The nonsimple root hit by the complementary color.
    for (Subset I : re.doubletons()) {
      P u = P::r;
      for (P s : re.primaries())
        if (!I.contains(s)) u = s;
      Poly got = re.demazure(u, cube.nonsimple_root(I));
      rep.add("complement_mu." + I.name(), got == Poly(-q2),
              got == Poly(-q2) ? "" : "got " + got.to_string());
    }

    // Scalar cancellation for the two colors of each doubleton against the
    // complement.
    for (Subset I : re.doubletons()) {
      P u = P::r;
      for (P s : re.primaries())
        if (!I.contains(s)) u = s;
      auto [s, t] = cube.doubleton_pair(I);
      QLaurent got = cube.c(s, u) * cube.c(t, u);
      rep.add("c_cancel." + I.name(), got == QLaurent(1),
              got == QLaurent(1) ? "" : "got " + got.to_string());
    }

    // Trace of the same-level root product is the group index 3.
    for (Subset I : re.doubletons())
      for (P s : I.members()) {
        Poly got = cube.trace(Subset::of(s), I, cube.mu(Subset::of(s), I));
        rep.add("selfmu." + std::string(1, primary_char(s)) + "_" + I.name(),
                got == Poly(3), got == Poly(3) ? "" : "got " + got.to_string());
      }
  } else {
    Poly got = re.demazure(P::b, Poly::alpha(P::r));
    rep.add("sl2.demazure_cross_b", got == Poly(-q2),
            got == Poly(-q2) ? "" : "got " + got.to_string());
    got = re.demazure(P::r, Poly::alpha(P::b));
    rep.add("sl2.demazure_cross_r", got == Poly(-q2),
            got == Poly(-q2) ? "" : "got " + got.to_string());
  }

  // Dual-basis structure for every nested pair.
  std::mt19937 rng(20260823);
  for (auto [I, J] : nested_pairs(re)) {
    std::string nm = subset_pair_name(I, J);
    const DualBases& db = cube.dual_bases(I, J);
    int target = cube.module_rank(I, J);
    rep.add("rank." + nm, static_cast<int>(db.basis.size()) == target);

    bool delta = true;
    std::string w;
    for (size_t i = 0; i < db.basis.size() && delta; ++i)
      for (size_t j = 0; j < db.dual.size(); ++j) {
        Poly got = cube.trace(I, J, db.basis[i] * db.dual[j]);
        Poly want = (i == j) ? Poly(1) : Poly(0);
        if (got != want) {
          delta = false;
          w = "entry (" + std::to_string(i) + "," + std::to_string(j) +
              ") = " + got.to_string();
          break;
        }
      }
    rep.add("dual.delta." + nm, delta, w);

    Poly casimir;
    for (size_t i = 0; i < db.basis.size(); ++i)
      casimir += db.basis[i] * db.dual[i];
    Poly muIJ = cube.mu(I, J);
    rep.add("dual.casimir." + nm, casimir == muIJ,
            casimir == muIJ ? "" : "got " + casimir.to_string() + ", want " +
                                       muIJ.to_string());

    // Counit property: tracing the left slot of the coproduct gives 1.
    Poly counit;
    for (size_t i = 0; i < db.basis.size(); ++i)
      counit += cube.trace(I, J, db.basis[i]) * db.dual[i];
    rep.add("dual.counit." + nm, counit == Poly(1),
            counit == Poly(1) ? "" : "got " + counit.to_string());

    // Canonical coordinates agree across the two pivot strategies.
    auto lo = cube.tensor_coordinates(I, J, cube.coproduct(I, J, BasisStrategy::LexLow));
    auto hi = cube.tensor_coordinates(I, J, cube.coproduct(I, J, BasisStrategy::LexHigh));
    rep.add("dual.coproduct_independent." + nm, lo == hi);

    // Reproducing property on random elements of the source ring.
    bool repro = true;
    for (int trial = 0; trial < 3 && repro; ++trial) {
      Poly f = random_invariant(re, I, 6, rng);
      Poly back;
      for (size_t i = 0; i < db.basis.size(); ++i)
        back += db.basis[i] * cube.trace(I, J, db.dual[i] * f);
      repro = (back == f);
    }
    rep.add("dual.reproducing." + nm, repro);

    // Trace degree drop and surjectivity onto each graded piece.
    int drop = cube.extension_degree(I, J);
    bool degree_ok = true, surj = true;
    for (int d = 0; d + drop <= degree_cutoff; d += 2) {
      Echelon image;
      auto index = monomial_index(re.var_count(), d);
      for (const Poly& f : re.graded_basis(I, d + drop)) {
        Poly t = cube.trace(I, J, f);
        if (!t.is_zero() && t.degree() != d) degree_ok = false;
        image.add(poly_coords(t, index));
      }
      if (image.rank() != re.graded_basis(J, d).size()) surj = false;
    }
    rep.add("trace.degree_drop." + nm, degree_ok);
    rep.add("trace.surjective." + nm, surj);
  }

  // Multiplicativity of the root product along chains.
  for (Subset J : re.doubletons())
    for (P s : J.members()) {
      Subset I = Subset::of(s);
      Poly lhs = cube.mu(Subset::empty(), J);
      Poly rhs = cube.mu(Subset::empty(), I) * cube.mu(I, J);
      rep.add("mu.chain.0_" + I.name() + "_" + J.name(), lhs == rhs);
    }
  for (P s : re.primaries())
    rep.add("mu.simple." + std::string(1, primary_char(s)),
            cube.mu(Subset::empty(), Subset::of(s)) == Poly::alpha(s));

  return rep;
}

}  // namespace qsatake
