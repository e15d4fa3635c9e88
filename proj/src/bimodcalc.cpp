#include "qsatake/bimodcalc.hpp"

#include "qsatake/linalg.hpp"

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <sstream>

namespace qsatake {

// ------------------------------------------------------------------- Word

Word validate_word(int rank, const std::vector<Subset>& labels) {
  const Realization& re = Realization::get(rank);
  if (labels.empty()) throw UsageError("empty word");
  for (Subset I : labels)
    if (!re.valid_subset(I))
      throw UsageError("word label invalid for realization: " + I.name());
  for (size_t i = 0; i + 1 < labels.size(); ++i) {
    Subset a = labels[i], b = labels[i + 1];
    bool nested = a.subset_of(b) || b.subset_of(a);
    if (!nested || std::abs(a.size() - b.size()) != 1)
      throw UsageError("word labels " + a.name() + "," + b.name() +
                       " are not nested neighbors");
  }
  Word w;
  w.rank_ = rank;
  w.labels_ = labels;
  return w;
}

Word Word::glued(const Word& o) const {
  if (rank_ != o.rank_) throw UsageError("gluing words of different rank");
  if (labels_.empty() || o.labels_.empty())
    throw UsageError("gluing an empty word");
  if (labels_.back() != o.labels_.front())
    throw UsageError("gluing needs a shared boundary letter");
  std::vector<Subset> out = labels_;
  out.insert(out.end(), o.labels_.begin() + 1, o.labels_.end());
  return validate_word(rank_, out);
}

std::string Word::to_string() const {
  std::string out;
  for (Subset I : labels_) out += I.name();
  return out;
}

std::optional<Word> Word::parse(int rank, const std::string& text) {
  std::vector<Subset> labels;
  for (char c : text) {
    auto s = Subset::from_char(c);
    if (!s) return std::nullopt;
    labels.push_back(*s);
  }
  try {
    return validate_word(rank, labels);
  } catch (const UsageError&) {
    return std::nullopt;
  }
}

// ---------------------------------------------------------- TensorElement

TensorElement TensorElement::zero(const Word& w) {
  if (w.size() == 0) throw UsageError("element needs a word");
  return TensorElement(w, {});
}

TensorElement TensorElement::pure(const Word& w, std::vector<Poly> slots) {
  if (slots.size() != w.size())
    throw UsageError("slot count does not match word length");
  const Realization& re = Realization::get(w.rank());
  for (size_t i = 0; i < slots.size(); ++i)
    if (!re.is_invariant(w.at(i), slots[i]))
      throw UsageError("slot " + std::to_string(i) +
                       " is not invariant under " + w.at(i).name());
  std::vector<std::vector<Poly>> terms;
  bool zero = std::any_of(slots.begin(), slots.end(),
                          [](const Poly& f) { return f.is_zero(); });
  if (!zero) terms.push_back(std::move(slots));
  return TensorElement(w, std::move(terms));
}

TensorElement TensorElement::unchecked(const Word& w,
                                       std::vector<std::vector<Poly>> terms) {
  return TensorElement(w, std::move(terms));
}

TensorElement TensorElement::operator+(const TensorElement& o) const {
  if (word_ != o.word_) throw UsageError("adding elements of different words");
  std::vector<std::vector<Poly>> terms = terms_;
  terms.insert(terms.end(), o.terms_.begin(), o.terms_.end());
  return TensorElement(word_, std::move(terms));
}

TensorElement TensorElement::operator*(const QRational& s) const {
  std::vector<std::vector<Poly>> terms = terms_;
  for (auto& slots : terms) slots[0] = slots[0] * s;
  return TensorElement(word_, std::move(terms));
}

const std::map<std::vector<int>, Poly>& TensorElement::canonical() const {
  if (canon_) return *canon_;
  const FrobeniusCube& cube = FrobeniusCube::get(word_.rank());
  std::map<std::vector<int>, Poly> out;
  const size_t last = word_.size() - 1;
  for (const auto& slots : terms_) {
    std::vector<std::pair<std::vector<int>, Poly>> state;
    state.emplace_back(std::vector<int>{}, Poly(1));
    for (size_t i = 0; i < last; ++i) {
      std::vector<std::pair<std::vector<int>, Poly>> next;
      for (auto& [tup, carried] : state) {
        Poly content = carried * slots[i];
        if (content.is_zero()) continue;
        if (word_.step_up(i)) {
          const DualBases& db = cube.dual_bases(word_.at(i), word_.at(i + 1));
          for (size_t k = 0; k < db.basis.size(); ++k) {
            Poly coeff =
                cube.trace(word_.at(i), word_.at(i + 1), db.dual[k] * content);
            if (coeff.is_zero()) continue;
            std::vector<int> t2 = tup;
            t2.push_back(static_cast<int>(k));
            next.emplace_back(std::move(t2), std::move(coeff));
          }
        } else {
          std::vector<int> t2 = tup;
          t2.push_back(0);
          next.emplace_back(std::move(t2), std::move(content));
        }
      }
      state = std::move(next);
    }
    for (auto& [tup, carried] : state) {
      Poly v = carried * slots[last];
      if (!v.is_zero()) out[tup] += v;
    }
  }
  for (auto it = out.begin(); it != out.end();)
    it = it->second.is_zero() ? out.erase(it) : std::next(it);
  canon_ = std::move(out);
  return *canon_;
}

TensorElement TensorElement::compacted() const {
  const FrobeniusCube& cube = FrobeniusCube::get(word_.rank());
  std::vector<std::vector<Poly>> terms;
  for (const auto& [tup, cof] : canonical()) {
    std::vector<Poly> slots;
    for (size_t i = 0; i + 1 < word_.size(); ++i) {
      if (word_.step_up(i))
        slots.push_back(cube.dual_bases(word_.at(i), word_.at(i + 1))
                            .basis[static_cast<size_t>(tup[i])]);
      else
        slots.push_back(Poly(1));
    }
    slots.push_back(cof);
    terms.push_back(std::move(slots));
  }
  TensorElement out(word_, std::move(terms));
  out.canon_ = canonical();
  return out;
}

bool TensorElement::is_zero() const { return canonical().empty(); }

bool TensorElement::operator==(const TensorElement& o) const {
  return word_ == o.word_ && canonical() == o.canonical();
}

std::string TensorElement::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream out;
  for (size_t t = 0; t < terms_.size(); ++t) {
    if (t) out << " + ";
    for (size_t i = 0; i < terms_[t].size(); ++i) {
      if (i) out << " (x) ";
      out << "(" << terms_[t][i].to_string() << ")";
    }
  }
  return out.str();
}

// ------------------------------------------------------------ graded data

namespace {

// Per-slot index sets of the canonical form: step-up slots index the module
// basis of the link extension, step-down slots are a single index.
std::vector<std::vector<int>> slot_degrees(const Word& w) {
  const FrobeniusCube& cube = FrobeniusCube::get(w.rank());
  std::vector<std::vector<int>> out;
  for (size_t i = 0; i + 1 < w.size(); ++i) {
    if (w.step_up(i)) {
      std::vector<int> degs;
      for (const Poly& b : cube.dual_bases(w.at(i), w.at(i + 1)).basis)
        degs.push_back(b.degree());
      out.push_back(std::move(degs));
    } else {
      out.push_back({0});
    }
  }
  return out;
}

void enumerate_tuples(const std::vector<std::vector<int>>& degs, size_t i,
                      std::vector<int>& tuple, int used, int budget,
                      const std::function<void(const std::vector<int>&, int)>& fn) {
  if (i == degs.size()) {
    fn(tuple, used);
    return;
  }
  for (size_t k = 0; k < degs[i].size(); ++k) {
    if (used + degs[i][k] > budget) continue;
    tuple.push_back(static_cast<int>(k));
    enumerate_tuples(degs, i + 1, tuple, used + degs[i][k], budget, fn);
    tuple.pop_back();
  }
}

TensorElement canonical_basis_element(const Word& w,
                                      const std::vector<int>& tuple,
                                      const Poly& last) {
  const FrobeniusCube& cube = FrobeniusCube::get(w.rank());
  std::vector<Poly> slots;
  for (size_t i = 0; i + 1 < w.size(); ++i) {
    if (w.step_up(i))
      slots.push_back(cube.dual_bases(w.at(i), w.at(i + 1))
                          .basis[static_cast<size_t>(tuple[i])]);
    else
      slots.push_back(Poly(1));
  }
  slots.push_back(last);
  return TensorElement::pure(w, std::move(slots));
}

// Flat coordinates of a canonical form in the degree-d piece: one column
// per (index tuple, rightmost monomial).
struct PieceCoords {
  std::map<std::pair<std::vector<int>, Exp>, size_t> columns;

  explicit PieceCoords(const Word& w, int d) {
    auto degs = slot_degrees(w);
    std::vector<int> tuple;
    size_t next = 0;
    enumerate_tuples(degs, 0, tuple, 0, d,
                     [&](const std::vector<int>& t, int used) {
                       for (const Exp& e : monomials_of_degree(
                                Realization::get(w.rank()).var_count(),
                                d - used))
                         columns[{t, e}] = next++;
                     });
  }

  QVec coords(const TensorElement& x) const {
    QVec v(columns.size(), QRational());
    for (const auto& [tuple, poly] : x.canonical())
      for (const auto& [e, c] : poly.terms()) {
        auto it = columns.find({tuple, e});
        if (it == columns.end())
          throw UsageError("element outside the expected graded piece");
        v[it->second] = c;
      }
    return v;
  }
};

struct Echelon {
  std::vector<QVec> rows;
  std::vector<size_t> pivots;

  bool add(QVec v) {
    for (size_t r = 0; r < rows.size(); ++r) {
      QRational f = v[pivots[r]];
      if (f.is_zero()) continue;
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
      QRational f = rows[r][p];
      if (f.is_zero()) continue;
      for (size_t j = 0; j < v.size(); ++j)
        rows[r][j] = rows[r][j] - f * v[j];
    }
    rows.push_back(std::move(v));
    pivots.push_back(p);
    return true;
  }
};

TensorElement scale_slot(const TensorElement& x, size_t pos, const Poly& f) {
  TensorElement out = TensorElement::zero(x.word());
  for (std::vector<Poly> slots : x.terms()) {
    slots[pos] = slots[pos] * f;
    out = out + TensorElement::pure(x.word(), std::move(slots));
  }
  return out;
}

}  // namespace

std::vector<TensorElement> graded_piece(const Word& w, int d,
                                        int degree_cutoff) {
  if (w.size() == 0) throw UsageError("empty word");
  if (d > degree_cutoff)
    throw UsageError("degree " + std::to_string(d) + " exceeds cutoff " +
                     std::to_string(degree_cutoff));
  std::vector<TensorElement> out;
  if (d < 0 || d % 2 != 0) return out;
  const Realization& re = Realization::get(w.rank());
  auto degs = slot_degrees(w);
  std::vector<int> tuple;
  enumerate_tuples(degs, 0, tuple, 0, d,
                   [&](const std::vector<int>& t, int used) {
                     for (const Poly& g :
                          re.graded_basis(w.at(w.size() - 1), d - used))
                       out.push_back(canonical_basis_element(w, t, g));
                   });
  return out;
}

std::vector<TensorElement> bimodule_generators(const Word& w,
                                               int degree_cutoff) {
  if (w.size() == 0) throw UsageError("empty word");
  const Realization& re = Realization::get(w.rank());
  int bound = 0;
  for (size_t i = 0; i + 1 < w.size(); ++i)
    if (!w.step_up(i)) bound += 2 * (ell(w.link(i)) - ell(w.at(i + 1)));
  if (bound > degree_cutoff)
    throw UsageError("generator search needs degree " + std::to_string(bound) +
                     ", cutoff is " + std::to_string(degree_cutoff));

  std::vector<TensorElement> gens;
  std::vector<int> gen_degs;
  Subset left = w.at(0), right = w.at(w.size() - 1);
  for (int d = 0; d <= bound; d += 2) {
    PieceCoords pc(w, d);
    if (pc.columns.empty()) continue;
    Echelon span;
    for (size_t g = 0; g < gens.size(); ++g) {
      int hd = d - gen_degs[g];
      if (hd <= 0) continue;
      for (const Poly& h : re.graded_basis(left, hd))
        span.add(pc.coords(scale_slot(gens[g], 0, h)));
      for (const Poly& h : re.graded_basis(right, hd))
        span.add(pc.coords(scale_slot(gens[g], w.size() - 1, h)));
    }
    for (const TensorElement& cand : graded_piece(w, d, degree_cutoff))
      if (span.add(pc.coords(cand))) {
        gens.push_back(cand);
        gen_degs.push_back(d);
      }
  }
  return gens;
}

// ---------------------------------------------------------------- MorTerm

struct MorTerm::Node {
  Kind kind;
  Word src, tgt;
  int deg = 0;
  size_t pos = 0;
  Poly f;            // Box payload
  Subset small, big; // extension labels
  P cross_to = P::r;
  std::vector<MorTerm> parts;
};

namespace {

void require_same_boundary(const Word& a, const Word& b) {
  if (a.rank() != b.rank() || a.at(0) != b.at(0) ||
      a.at(a.size() - 1) != b.at(b.size() - 1))
    throw UsageError("words have different boundary labels");
}

std::vector<Subset> labels_without(const Word& w, size_t from, size_t count) {
  std::vector<Subset> out = w.labels();
  out.erase(out.begin() + static_cast<long>(from),
            out.begin() + static_cast<long>(from + count));
  return out;
}

}  // namespace

MorTerm MorTerm::identity(const Word& w) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Identity;
  n->src = n->tgt = w;
  return MorTerm(std::move(n));
}

MorTerm MorTerm::zero(const Word& src, const Word& tgt, int deg) {
  require_same_boundary(src, tgt);
  auto n = std::make_shared<Node>();
  n->kind = Kind::Zero;
  n->src = src;
  n->tgt = tgt;
  n->deg = deg;
  return MorTerm(std::move(n));
}

MorTerm MorTerm::box(const Word& w, size_t pos, const Poly& f) {
  if (pos >= w.size()) throw UsageError("box position outside word");
  if (f.is_zero()) throw UsageError("box polynomial must be nonzero");
  if (!f.is_homogeneous()) throw UsageError("box polynomial must be homogeneous");
  if (!Realization::get(w.rank()).is_invariant(w.at(pos), f))
    throw UsageError("box polynomial not invariant under " + w.at(pos).name());
  auto n = std::make_shared<Node>();
  n->kind = Kind::Box;
  n->src = n->tgt = w;
  n->deg = f.degree();
  n->pos = pos;
  n->f = f;
  return MorTerm(std::move(n));
}

MorTerm MorTerm::unit(const Word& w, size_t pos, Subset lower) {
  if (pos >= w.size()) throw UsageError("unit position outside word");
  Subset J = w.at(pos);
  if (!lower.subset_of(J) || J.size() != lower.size() + 1)
    throw UsageError("unit needs a one-step lower label");
  std::vector<Subset> out = w.labels();
  out.insert(out.begin() + static_cast<long>(pos + 1), {lower, J});
  auto n = std::make_shared<Node>();
  n->kind = Kind::Unit;
  n->src = w;
  n->tgt = validate_word(w.rank(), out);
  n->deg = -(ell(J) - ell(lower));
  n->pos = pos;
  n->small = lower;
  n->big = J;
  return MorTerm(std::move(n));
}

MorTerm MorTerm::trace_cap(const Word& w, size_t pos) {
  if (pos + 2 >= w.size()) throw UsageError("trace fragment outside word");
  Subset A = w.at(pos), B = w.at(pos + 1);
  if (w.at(pos + 2) != A || !B.subset_of(A) || A.size() != B.size() + 1)
    throw UsageError("trace needs a fragment A B A with B one step below A");
  auto n = std::make_shared<Node>();
  n->kind = Kind::Trace;
  n->src = w;
  n->tgt = validate_word(w.rank(), labels_without(w, pos + 1, 2));
  n->deg = -(ell(A) - ell(B));
  n->pos = pos;
  n->small = B;
  n->big = A;
  return MorTerm(std::move(n));
}

MorTerm MorTerm::mult(const Word& w, size_t pos) {
  if (pos + 2 >= w.size()) throw UsageError("mult fragment outside word");
  Subset A = w.at(pos), B = w.at(pos + 1);
  if (w.at(pos + 2) != A || !A.subset_of(B) || B.size() != A.size() + 1)
    throw UsageError("mult needs a fragment A B A with B one step above A");
  auto n = std::make_shared<Node>();
  n->kind = Kind::Mult;
  n->src = w;
  n->tgt = validate_word(w.rank(), labels_without(w, pos + 1, 2));
  n->deg = ell(B) - ell(A);
  n->pos = pos;
  n->small = A;
  n->big = B;
  return MorTerm(std::move(n));
}

MorTerm MorTerm::comult(const Word& w, size_t pos, Subset upper) {
  if (pos >= w.size()) throw UsageError("comult position outside word");
  Subset I = w.at(pos);
  if (!I.subset_of(upper) || upper.size() != I.size() + 1)
    throw UsageError("comult needs a one-step upper label");
  std::vector<Subset> out = w.labels();
  out.insert(out.begin() + static_cast<long>(pos + 1), {upper, I});
  auto n = std::make_shared<Node>();
  n->kind = Kind::Comult;
  n->src = w;
  n->tgt = validate_word(w.rank(), out);
  n->deg = ell(upper) - ell(I);
  n->pos = pos;
  n->small = I;
  n->big = upper;
  return MorTerm(std::move(n));
}

MorTerm MorTerm::crossing(const Word& w, size_t pos, P to) {
  if (pos + 2 >= w.size()) throw UsageError("crossing fragment outside word");
  Subset a = w.at(pos), b = w.at(pos + 1), c = w.at(pos + 2);
  bool forward = a.is_empty() && b.is_primary() && c.size() == 2;
  bool mirror = c.is_empty() && b.is_primary() && a.size() == 2;
  if (!(forward || mirror))
    throw UsageError("crossing needs a fragment 0 s I or I s 0");
  Subset I = forward ? c : a;
  if (!I.contains(b.as_primary()) || !I.contains(to))
    throw UsageError("crossing colors must lie in the doubleton");
  std::vector<Subset> out = w.labels();
  out[pos + 1] = Subset::of(to);
  auto n = std::make_shared<Node>();
  n->kind = Kind::Crossing;
  n->src = w;
  n->tgt = validate_word(w.rank(), out);
  n->deg = 0;
  n->pos = pos;
  n->small = b;
  n->big = I;
  n->cross_to = to;
  return MorTerm(std::move(n));
}

MorTerm MorTerm::vertical(const MorTerm& second, const MorTerm& first) {
  if (first.target() != second.source())
    throw UsageError("vertical composition: words do not match");
  auto n = std::make_shared<Node>();
  n->kind = Kind::Vertical;
  n->src = first.source();
  n->tgt = second.target();
  n->deg = first.degree() + second.degree();
  n->parts = {second, first};
  return MorTerm(std::move(n));
}

MorTerm MorTerm::horizontal(const MorTerm& left, const MorTerm& right) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Horizontal;
  n->src = left.source().glued(right.source());
  n->tgt = left.target().glued(right.target());
  n->deg = left.degree() + right.degree();
  n->parts = {left, right};
  return MorTerm(std::move(n));
}

MorTerm MorTerm::sum(std::vector<MorTerm> parts) {
  if (parts.empty()) throw UsageError("empty sum");
  for (const MorTerm& p : parts) {
    if (p.source() != parts[0].source() || p.target() != parts[0].target())
      throw UsageError("sum parts must share boundaries");
    if (p.degree() != parts[0].degree())
      throw UsageError("sum parts must share the degree");
  }
  auto n = std::make_shared<Node>();
  n->kind = Kind::Sum;
  n->src = parts[0].source();
  n->tgt = parts[0].target();
  n->deg = parts[0].degree();
  n->parts = std::move(parts);
  return MorTerm(std::move(n));
}

MorTerm MorTerm::then(const MorTerm& next) const {
  return vertical(next, *this);
}

MorTerm::Kind MorTerm::kind() const { return n_->kind; }
const Word& MorTerm::source() const { return n_->src; }
const Word& MorTerm::target() const { return n_->tgt; }
int MorTerm::degree() const { return n_->deg; }

namespace {

// Intermediate elements with more pure terms than this are rewritten into
// straightened form between composition stages. Overridable for tuning
// experiments via QSATAKE_COMPACT.
std::size_t compact_threshold() {
  static const std::size_t v = [] {
    if (const char* s = std::getenv("QSATAKE_COMPACT")) {
      long n = std::strtol(s, nullptr, 10);
      if (n > 0) return static_cast<std::size_t>(n);
    }
    return static_cast<std::size_t>(8);
  }();
  return v;
}

}  // namespace

TensorElement MorTerm::apply(const TensorElement& x) const {
  if (x.word() != source()) throw UsageError("element word mismatch");
  const Node& n = *n_;
  switch (n.kind) {
    case Kind::Identity:
      return x;
    case Kind::Zero:
      return TensorElement::zero(target());
    case Kind::Box: {
      std::vector<std::vector<Poly>> terms = x.terms();
      for (auto& slots : terms) slots[n.pos] = slots[n.pos] * n.f;
      return TensorElement::unchecked(target(), std::move(terms));
    }
    case Kind::Unit: {
      std::vector<std::vector<Poly>> terms = x.terms();
      for (auto& slots : terms)
        slots.insert(slots.begin() + static_cast<long>(n.pos + 1),
                     {Poly(1), Poly(1)});
      return TensorElement::unchecked(target(), std::move(terms));
    }
    case Kind::Trace: {
      const FrobeniusCube& cube = FrobeniusCube::get(source().rank());
      std::vector<std::vector<Poly>> terms = x.terms();
      for (auto& slots : terms) {
        Poly merged = slots[n.pos] * cube.trace(n.small, n.big, slots[n.pos + 1]) *
                      slots[n.pos + 2];
        slots[n.pos] = merged;
        slots.erase(slots.begin() + static_cast<long>(n.pos + 1),
                    slots.begin() + static_cast<long>(n.pos + 3));
      }
      return TensorElement::unchecked(target(), std::move(terms));
    }
    case Kind::Mult: {
      std::vector<std::vector<Poly>> terms = x.terms();
      for (auto& slots : terms) {
        Poly merged = slots[n.pos] * slots[n.pos + 1] * slots[n.pos + 2];
        slots[n.pos] = merged;
        slots.erase(slots.begin() + static_cast<long>(n.pos + 1),
                    slots.begin() + static_cast<long>(n.pos + 3));
      }
      return TensorElement::unchecked(target(), std::move(terms));
    }
    case Kind::Comult: {
      const FrobeniusCube& cube = FrobeniusCube::get(source().rank());
      const DualBases& db = cube.dual_bases(n.small, n.big);
      std::vector<std::vector<Poly>> terms;
      for (const auto& slots : x.terms())
        for (size_t k = 0; k < db.basis.size(); ++k) {
          std::vector<Poly> s2 = slots;
          s2[n.pos] = s2[n.pos] * db.basis[k];
          s2.insert(s2.begin() + static_cast<long>(n.pos + 1),
                    {Poly(1), db.dual[k]});
          terms.push_back(std::move(s2));
        }
      return TensorElement::unchecked(target(), std::move(terms));
    }
    case Kind::Crossing: {
      bool forward = source().at(n.pos).is_empty();
      std::vector<std::vector<Poly>> terms = x.terms();
      for (auto& slots : terms) {
        if (forward) {
          slots[n.pos] = slots[n.pos] * slots[n.pos + 1];
          slots[n.pos + 1] = Poly(1);
        } else {
          slots[n.pos + 2] = slots[n.pos + 1] * slots[n.pos + 2];
          slots[n.pos + 1] = Poly(1);
        }
      }
      return TensorElement::unchecked(target(), std::move(terms));
    }
    case Kind::Vertical: {
      TensorElement mid = n.parts[1].apply(x);
      if (mid.terms().size() > compact_threshold()) mid = mid.compacted();
      return n.parts[0].apply(mid);
    }
    case Kind::Sum: {
      TensorElement acc = TensorElement::zero(target());
      for (const MorTerm& p : n.parts) acc = acc + p.apply(x);
      if (acc.terms().size() > compact_threshold()) acc = acc.compacted();
      return acc;
    }
    case Kind::Horizontal: {
      const MorTerm& l = n.parts[0];
      const MorTerm& r = n.parts[1];
      TensorElement mid = whisker_right(l, r.source()).apply(x);
      if (mid.terms().size() > compact_threshold()) mid = mid.compacted();
      return whisker_left(l.target(), r).apply(mid);
    }
  }
  throw UsageError("unreachable term kind");
}

MorTerm MorTerm::whisker_right(const MorTerm& t, const Word& w) {
  const Node& node = *t.n_;
  switch (node.kind) {
    case Kind::Identity:
      return identity(node.src.glued(w));
    case Kind::Zero:
      return zero(node.src.glued(w), node.tgt.glued(w), node.deg);
    case Kind::Box:
      return box(node.src.glued(w), node.pos, node.f);
    case Kind::Unit:
      return unit(node.src.glued(w), node.pos, node.small);
    case Kind::Trace:
      return trace_cap(node.src.glued(w), node.pos);
    case Kind::Mult:
      return mult(node.src.glued(w), node.pos);
    case Kind::Comult:
      return comult(node.src.glued(w), node.pos, node.big);
    case Kind::Crossing:
      return crossing(node.src.glued(w), node.pos, node.cross_to);
    case Kind::Vertical:
      return vertical(whisker_right(node.parts[0], w),
                      whisker_right(node.parts[1], w));
    case Kind::Sum: {
      std::vector<MorTerm> parts;
      for (const MorTerm& p : node.parts) parts.push_back(whisker_right(p, w));
      return sum(std::move(parts));
    }
    case Kind::Horizontal:
      return horizontal(node.parts[0], whisker_right(node.parts[1], w));
  }
  throw UsageError("unreachable whisker case");
}

MorTerm MorTerm::whisker_left(const Word& w, const MorTerm& t) {
  const Node& node = *t.n_;
  size_t shift = w.size() - 1;
  switch (node.kind) {
    case Kind::Identity:
      return identity(w.glued(node.src));
    case Kind::Zero:
      return zero(w.glued(node.src), w.glued(node.tgt), node.deg);
    case Kind::Box:
      return box(w.glued(node.src), node.pos + shift, node.f);
    case Kind::Unit:
      return unit(w.glued(node.src), node.pos + shift, node.small);
    case Kind::Trace:
      return trace_cap(w.glued(node.src), node.pos + shift);
    case Kind::Mult:
      return mult(w.glued(node.src), node.pos + shift);
    case Kind::Comult:
      return comult(w.glued(node.src), node.pos + shift, node.big);
    case Kind::Crossing:
      return crossing(w.glued(node.src), node.pos + shift, node.cross_to);
    case Kind::Vertical:
      return vertical(whisker_left(w, node.parts[0]),
                      whisker_left(w, node.parts[1]));
    case Kind::Sum: {
      std::vector<MorTerm> parts;
      for (const MorTerm& p : node.parts) parts.push_back(whisker_left(w, p));
      return sum(std::move(parts));
    }
    case Kind::Horizontal:
      return horizontal(whisker_left(w, node.parts[0]), node.parts[1]);
  }
  throw UsageError("unreachable whisker case");
}

std::string MorTerm::to_string() const {
  const Node& n = *n_;
  std::ostringstream out;
  auto arrow = [&]() {
    out << " [" << n.src.to_string() << "]->[" << n.tgt.to_string() << "])";
  };
  switch (n.kind) {
    case Kind::Identity: out << "(id"; arrow(); break;
    case Kind::Zero: out << "(zero"; arrow(); break;
    case Kind::Box:
      out << "(box @" << n.pos << " " << n.f.to_string();
      arrow();
      break;
    case Kind::Unit: out << "(unit @" << n.pos; arrow(); break;
    case Kind::Trace: out << "(trace @" << n.pos; arrow(); break;
    case Kind::Mult: out << "(mult @" << n.pos; arrow(); break;
    case Kind::Comult: out << "(comult @" << n.pos; arrow(); break;
    case Kind::Crossing:
      out << "(cross @" << n.pos << " ->" << primary_char(n.cross_to);
      arrow();
      break;
    case Kind::Vertical:
      out << "(comp " << n.parts[0].to_string() << " "
          << n.parts[1].to_string() << ")";
      break;
    case Kind::Horizontal:
      out << "(tens " << n.parts[0].to_string() << " "
          << n.parts[1].to_string() << ")";
      break;
    case Kind::Sum: {
      out << "(sum";
      for (const MorTerm& p : n.parts) out << " " << p.to_string();
      out << ")";
      break;
    }
  }
  return out.str();
}

TensorElement eval_term(const MorTerm& t, const TensorElement& x) {
  return t.apply(x);
}

// ----------------------------------------------------------- maps_equal

namespace {

const std::vector<TensorElement>& generators_cached(const Word& w,
                                                    int degree_cutoff) {
  static std::map<std::pair<Word, int>, std::vector<TensorElement>> cache;
  auto key = std::make_pair(w, degree_cutoff);
  auto it = cache.find(key);
  if (it == cache.end())
    it = cache.emplace(key, bimodule_generators(w, degree_cutoff)).first;
  return it->second;
}

}  // namespace

bool maps_equal(const MorTerm& a, const MorTerm& b, int degree_cutoff) {
  if (a.source() != b.source() || a.target() != b.target())
    throw UsageError("comparing maps with different boundary words");
  if (a.degree() != b.degree()) return false;
  for (const TensorElement& g : generators_cached(a.source(), degree_cutoff))
    if (a.apply(g) != b.apply(g)) return false;
  return true;
}

// ------------------------------------------------- splitting idempotents

std::vector<MorTerm> splitting_idempotents(int rank, P s) {
  const FrobeniusCube& cube = FrobeniusCube::get(rank);
  Subset S = Subset::of(s);
  Word w = validate_word(rank, {S, Subset::empty(), S});
  Word ws = validate_word(rank, {S});
  const DualBases& db = cube.dual_bases(Subset::empty(), S);
  std::vector<MorTerm> out;
  for (size_t i = 0; i < db.basis.size(); ++i) {
    MorTerm e = MorTerm::box(w, 1, db.dual[i])
                    .then(MorTerm::trace_cap(w, 0))
                    .then(MorTerm::unit(ws, 0, Subset::empty()))
                    .then(MorTerm::box(w, 1, db.basis[i]));
    out.push_back(e);
  }
  return out;
}

// ------------------------------------------------------ relation suite

namespace {

struct Suite {
  Report rep;
  int cutoff;

  void check(const std::string& name, const MorTerm& lhs, const MorTerm& rhs) {
    bool ok = false;
    std::string witness;
    try {
      ok = maps_equal(lhs, rhs, cutoff);
      if (!ok)
        for (const TensorElement& g :
             generators_cached(lhs.source(), cutoff))
          if (lhs.apply(g) != rhs.apply(g)) {
            witness = "on " + g.to_string() + ": " +
                      lhs.apply(g).to_string() + " vs " +
                      rhs.apply(g).to_string();
            break;
          }
    } catch (const UsageError& e) {
      witness = e.what();
    }
    rep.add(name, ok, witness);
  }

  void check_elem(const std::string& name, const TensorElement& lhs,
                  const TensorElement& rhs) {
    bool ok = (lhs == rhs);
    rep.add(name, ok,
            ok ? "" : lhs.to_string() + " vs " + rhs.to_string());
  }
};

// Map side of a possibly-zero polynomial: a box, or the zero map.
MorTerm box_or_zero(const Word& w, size_t pos, const Poly& f, int deg) {
  if (f.is_zero()) return MorTerm::zero(w, w, deg);
  return MorTerm::box(w, pos, f);
}

}  // namespace

Report verify_relations(int rank, int degree_cutoff) {
  const FrobeniusCube& cube = FrobeniusCube::get(rank);
  const Realization& re = cube.realization();
  Suite st{{}, degree_cutoff};
  st.rep.suite = "relations";
  const int fdeg = std::min(6, degree_cutoff);
  Subset E = Subset::empty();

  // Adjacent extensions (I ⊂ J, one step).
  std::vector<std::pair<Subset, Subset>> exts;
  for (P s : re.primaries()) exts.emplace_back(E, Subset::of(s));
  for (Subset I : re.doubletons())
    for (P s : I.members()) exts.emplace_back(Subset::of(s), I);

  for (auto [I, J] : exts) {
    std::string nm = I.name() + J.name();
    Word ji = validate_word(rank, {J, I});
    Word ij = validate_word(rank, {I, J});

    st.check("zigzag." + nm + ".comult_trace",
             MorTerm::comult(ji, 1, J).then(MorTerm::trace_cap(
                 MorTerm::comult(ji, 1, J).target(), 0)),
             MorTerm::identity(ji));
    st.check("zigzag." + nm + ".unit_mult",
             MorTerm::unit(ji, 0, I).then(
                 MorTerm::mult(MorTerm::unit(ji, 0, I).target(), 1)),
             MorTerm::identity(ji));
    st.check("zigzag." + nm + ".comult_trace_mirror",
             MorTerm::comult(ij, 0, J).then(MorTerm::trace_cap(
                 MorTerm::comult(ij, 0, J).target(), 1)),
             MorTerm::identity(ij));
    st.check("zigzag." + nm + ".unit_mult_mirror",
             MorTerm::unit(ij, 1, I).then(
                 MorTerm::mult(MorTerm::unit(ij, 1, I).target(), 0)),
             MorTerm::identity(ij));
  }

  // Clockwise circles multiply by the root product; anticlockwise circles
  // vanish.
  for (auto [I, J] : exts) {
    std::string nm = I.name() + J.name();
    Word wi = validate_word(rank, {I});
    Word wj = validate_word(rank, {J});
    st.check("circle.cw." + nm,
             MorTerm::comult(wi, 0, J)
                 .then(MorTerm::mult(MorTerm::comult(wi, 0, J).target(), 0)),
             MorTerm::box(wi, 0, cube.mu(I, J)));
    st.check("circle.ccw." + nm,
             MorTerm::unit(wj, 0, I)
                 .then(MorTerm::trace_cap(MorTerm::unit(wj, 0, I).target(), 0)),
             MorTerm::zero(wj, wj, -2 * (ell(J) - ell(I))));
  }

  // Boxed circles compute the trace.
  for (auto [I, J] : exts) {
    std::string nm = I.name() + J.name();
    Word wj = validate_word(rank, {J});
    Word expanded = MorTerm::unit(wj, 0, I).target();
    for (int d = 0; d <= fdeg; d += 2)
      for (const Poly& f : re.graded_basis(I, d)) {
        MorTerm lhs = MorTerm::unit(wj, 0, I)
                          .then(MorTerm::box(expanded, 1, f))
                          .then(MorTerm::trace_cap(expanded, 0));
        Poly tf = cube.trace(I, J, f);
        st.check("demazure.box." + nm + ".d" + std::to_string(d) + "." +
                     std::to_string(&f - re.graded_basis(I, d).data()),
                 lhs, box_or_zero(wj, 0, tf, d - 2 * (ell(J) - ell(I))));
      }
  }

  // Pairing values of simple roots under the boxed circle.
  for (P s : re.primaries())
    for (P t : re.primaries()) {
      Word ws = validate_word(rank, {Subset::of(s)});
      Word expanded = MorTerm::unit(ws, 0, E).target();
      MorTerm lhs = MorTerm::unit(ws, 0, E)
                        .then(MorTerm::box(expanded, 1, Poly::alpha(t)))
                        .then(MorTerm::trace_cap(expanded, 0));
      Poly want(QRational(re.cartan(s, t)));
      st.check("cartan." + std::string(1, primary_char(s)) +
                   std::string(1, primary_char(t)),
               lhs, MorTerm::box(ws, 0, want));
    }

  // Invariant polynomials slide across walls.
  for (auto [I, J] : exts) {
    for (auto [a, b] : {std::make_pair(I, J), std::make_pair(J, I)}) {
      Word w2 = validate_word(rank, {a, b});
      std::string nm = a.name() + b.name();
      for (int d = 2; d <= fdeg; d += 2)
        for (const Poly& f : re.graded_basis(J, d))
          st.check("slide." + nm + ".d" + std::to_string(d) + "." +
                       std::to_string(&f - re.graded_basis(J, d).data()),
                   MorTerm::box(w2, 0, f), MorTerm::box(w2, 1, f));
    }
  }

  // Reversed circles force the coproduct decoration.
  for (auto [I, J] : exts) {
    std::string nm = I.name() + J.name();
    Word w3 = validate_word(rank, {I, J, I});
    const DualBases& db = cube.dual_bases(I, J);
    std::vector<MorTerm> parts;
    for (size_t k = 0; k < db.basis.size(); ++k)
      parts.push_back(MorTerm::box(w3, 2, db.dual[k])
                          .then(MorTerm::box(w3, 0, db.basis[k])));
    st.check("circleforce." + nm,
             MorTerm::mult(w3, 0).then(MorTerm::comult(
                 MorTerm::mult(w3, 0).target(), 0, J)),
             MorTerm::sum(std::move(parts)));
  }

  // Polynomial forcing across a singleton wall.
  for (P s : re.primaries()) {
    Subset S = Subset::of(s);
    Word w3 = validate_word(rank, {E, S, E});
    const DualBases& db = cube.dual_bases(E, S);
    for (int d = 2; d <= fdeg; d += 2) {
      const auto& basis = re.graded_basis(E, d);
      for (const Poly& f : basis) {
        std::vector<MorTerm> parts;
        parts.push_back(MorTerm::box(w3, 2, re.reflect(s, f)));
        Poly df = re.demazure(s, f);
        if (!df.is_zero())
          for (size_t k = 0; k < db.basis.size(); ++k)
            parts.push_back(MorTerm::box(w3, 2, db.dual[k] * df)
                                .then(MorTerm::box(w3, 0, db.basis[k])));
        st.check("force." + std::string(1, primary_char(s)) + ".d" +
                     std::to_string(d) + "." +
                     std::to_string(&f - basis.data()),
                 MorTerm::box(w3, 0, f), MorTerm::sum(std::move(parts)));
      }
    }
  }

  // Trace is linear over the outer ring.
  for (auto [I, J] : exts) {
    std::string nm = I.name() + J.name();
    Word w3 = validate_word(rank, {J, I, J});
    Word wj = validate_word(rank, {J});
    const auto& basis2 = re.graded_basis(J, 2);
    for (size_t gi = 0; gi < basis2.size(); ++gi) {
      const Poly& g = basis2[gi];
      st.check("trace.linear.left." + nm + "." + std::to_string(gi),
               MorTerm::box(w3, 0, g).then(MorTerm::trace_cap(w3, 0)),
               MorTerm::trace_cap(w3, 0).then(MorTerm::box(wj, 0, g)));
      st.check("trace.linear.right." + nm + "." + std::to_string(gi),
               MorTerm::box(w3, 2, g).then(MorTerm::trace_cap(w3, 0)),
               MorTerm::trace_cap(w3, 0).then(MorTerm::box(wj, 0, g)));
    }
  }

  if (rank == 2) {
    // Crossings are mutually inverse.
    for (Subset I : re.doubletons()) {
      auto [s, t] = cube.doubleton_pair(I);
      for (auto [x, y] : {std::make_pair(s, t), std::make_pair(t, s)}) {
        Word fw = validate_word(rank, {E, Subset::of(x), I});
        Word bw = validate_word(rank, {I, Subset::of(x), E});
        st.check("crossing.invol." + I.name() + "." +
                     std::string(1, primary_char(x)),
                 MorTerm::crossing(fw, 0, y).then(
                     MorTerm::crossing(MorTerm::crossing(fw, 0, y).target(), 0, x)),
                 MorTerm::identity(fw));
        st.check("crossing.invol.mirror." + I.name() + "." +
                     std::string(1, primary_char(x)),
                 MorTerm::crossing(bw, 0, y).then(
                     MorTerm::crossing(MorTerm::crossing(bw, 0, y).target(), 0, x)),
                 MorTerm::identity(bw));
      }
    }

    // Sideways crossings: raising and lowering the middle region.
    for (Subset I : re.doubletons()) {
      auto [p1, p2] = cube.doubleton_pair(I);
      for (auto [s, t] : {std::make_pair(p1, p2), std::make_pair(p2, p1)}) {
        std::string nm = I.name() + "." + std::string(1, primary_char(s)) +
                         std::string(1, primary_char(t));
        Subset Ss = Subset::of(s), St = Subset::of(t);
        Word low = validate_word(rank, {Ss, E, St});
        Word high = validate_word(rank, {Ss, I, St});

        MorTerm up_a = MorTerm::comult(low, 2, I);
        MorTerm up_b = MorTerm::crossing(up_a.target(), 1, s);
        MorTerm up_c = MorTerm::trace_cap(up_b.target(), 0);
        MorTerm up = up_a.then(up_b).then(up_c);

        MorTerm dn_a = MorTerm::unit(high, 0, E);
        MorTerm dn_b = MorTerm::crossing(dn_a.target(), 1, t);
        MorTerm dn_c = MorTerm::mult(dn_b.target(), 2);
        MorTerm down = dn_a.then(dn_b).then(dn_c);

        if (up.target() != high || down.target() != low)
          throw UsageError("sideways construction out of shape");
        if (up.degree() != 1 || down.degree() != 1)
          throw UsageError("sideways crossing degree is off");

        st.check("sideways.updown." + nm, up.then(down),
                 MorTerm::box(low, 1, cube.nonsimple_root(I)));

        const DualBases& dbt = cube.dual_bases(St, I);
        std::vector<MorTerm> parts;
        for (size_t k = 0; k < dbt.basis.size(); ++k) {
          Poly ds = re.demazure(s, dbt.basis[k]);
          if (ds.is_zero()) continue;
          parts.push_back(MorTerm::box(high, 2, dbt.dual[k])
                              .then(MorTerm::box(high, 0, ds)));
        }
        st.check("sideways.downup." + nm, down.then(up),
                 MorTerm::sum(std::move(parts)));

        // The two Sweedler forms of the mixed coproduct agree.
        const DualBases& dbs = cube.dual_bases(Ss, I);
        TensorElement lhs = TensorElement::zero(high);
        for (size_t k = 0; k < dbt.basis.size(); ++k)
          lhs = lhs + TensorElement::pure(
                          high, {re.demazure(s, dbt.basis[k]), Poly(1),
                                 dbt.dual[k]});
        TensorElement rhs = TensorElement::zero(high);
        for (size_t k = 0; k < dbs.basis.size(); ++k)
          rhs = rhs + TensorElement::pure(
                          high, {dbs.basis[k], Poly(1),
                                 re.demazure(t, dbs.dual[k])});
        st.check_elem("sweedler." + nm, lhs, rhs);

        // Decorated variant with an extra polynomial inserted; the mixed
        // degrees and colors make the check nontrivial for every rotation.
        Poly f = Poly::alpha(P::r) * Poly::alpha(P::y) + Poly::alpha(P::b) +
                 Poly::alpha(P::y) * QRational(3) - Poly(2);
        TensorElement lhs2 = TensorElement::zero(high);
        for (size_t k = 0; k < dbt.basis.size(); ++k)
          lhs2 = lhs2 + TensorElement::pure(
                            high, {re.demazure(s, f * dbt.basis[k]), Poly(1),
                                   dbt.dual[k]});
        TensorElement rhs2 = TensorElement::zero(high);
        for (size_t k = 0; k < dbs.basis.size(); ++k)
          rhs2 = rhs2 + TensorElement::pure(
                            high, {dbs.basis[k], Poly(1),
                                   re.demazure(t, f * dbs.dual[k])});
        st.check_elem("sweedler.decorated." + nm, lhs2, rhs2);
      }
    }

    // Tracing the first leg of the coproduct gives the unit tensor.
    for (Subset I : re.doubletons())
      for (P s : I.members()) {
        Subset Ss = Subset::of(s);
        Word w3 = validate_word(rank, {Ss, I, Ss});
        const DualBases& db = cube.dual_bases(Ss, I);
        TensorElement lhs = TensorElement::zero(w3);
        for (size_t k = 0; k < db.basis.size(); ++k)
          lhs = lhs + TensorElement::pure(
                          w3, {cube.trace(Ss, I, db.basis[k]), Poly(1),
                               db.dual[k]});
        st.check_elem("coproduct.counit." + Ss.name() + I.name(), lhs,
                      TensorElement::pure(w3, {Poly(1), Poly(1), Poly(1)}));
      }

    // Composition scalars of the one-step traces.
    for (P s : re.primaries())
      for (P t : re.primaries()) {
        if (s == t) continue;
        Subset st2 = Subset::pair(s, t);
        TraceWord tw = cube.trace_word(Subset::of(s), st2);
        QRational scale = QRational(cube.c(s, t)) * QRational(tw.prefactor);
        bool ok = true;
        for (int d = 0; d <= fdeg && ok; d += 2)
          for (const Poly& f : re.graded_basis(E, d)) {
            Poly lhs = re.demazure(s, re.demazure(t, f));
            Poly rhs = f;
            for (auto it = tw.word.rbegin(); it != tw.word.rend(); ++it)
              rhs = re.demazure(*it, rhs);
            if (lhs != rhs * scale) {
              ok = false;
              break;
            }
          }
        st.rep.add("compose.scaled." + std::string(1, primary_char(s)) +
                       std::string(1, primary_char(t)),
                   ok);
      }
  }

  // Splitting idempotents: orthogonal, idempotent, summing to the identity.
  for (P s : re.primaries()) {
    std::vector<MorTerm> es = splitting_idempotents(rank, s);
    Word w = es[0].source();
    std::string nm(1, primary_char(s));
    for (size_t i = 0; i < es.size(); ++i)
      for (size_t j = 0; j < es.size(); ++j) {
        MorTerm comp = es[j].then(es[i]);
        MorTerm want = (i == j) ? es[i] : MorTerm::zero(w, w, 0);
        st.check("idem." + nm + "." + std::to_string(i) + std::to_string(j),
                 comp, want);
      }
    st.check("idem." + nm + ".sum", MorTerm::sum(es), MorTerm::identity(w));
  }

  return st.rep;
}

}  // namespace qsatake
