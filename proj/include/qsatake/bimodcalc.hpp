#pragma once

// Words of nested region labels, the tensor-product bimodules they present,
// and a term language of bimodule maps built from the Frobenius structure
// maps (unit, trace, multiplication, comultiplication), boxes, and
// crossings. Equality of maps is decided exactly by evaluation on a finite
// generating set of the source bimodule.

#include "qsatake/frobhypercube.hpp"
#include "qsatake/report.hpp"

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace qsatake {

// A path of region labels; consecutive labels are nested and their sizes
// differ by exactly one. The bimodule of a word c_0 ... c_m is
// R^{c_0} (x)_{R^{u_0}} R^{c_1} (x)_{R^{u_1}} ... R^{c_m} with
// u_i = c_i ∪ c_{i+1}.
class Word {
 public:
  Word() : rank_(0) {}
  int rank() const { return rank_; }
  const std::vector<Subset>& labels() const { return labels_; }
  size_t size() const { return labels_.size(); }
  Subset at(size_t i) const { return labels_.at(i); }
  Subset link(size_t i) const { return labels_.at(i).unite(labels_.at(i + 1)); }
  bool step_up(size_t i) const {  // true when c_i ⊂ c_{i+1}
    return labels_.at(i).subset_of(labels_.at(i + 1));
  }

  bool operator==(const Word& o) const {
    return rank_ == o.rank_ && labels_ == o.labels_;
  }
  bool operator!=(const Word& o) const { return !(*this == o); }
  bool operator<(const Word& o) const {
    return std::tie(rank_, labels_) < std::tie(o.rank_, o.labels_);
  }

  // Concatenation sharing one boundary letter: the last label here must
  // equal the first label of the other word.
  Word glued(const Word& o) const;

  std::string to_string() const;  // concatenated subset names, e.g. "b0b"
  static std::optional<Word> parse(int rank, const std::string& text);

  friend Word validate_word(int rank, const std::vector<Subset>& labels);

 private:
  int rank_;
  std::vector<Subset> labels_;
};

// Checks the step condition and label validity; throws UsageError.
Word validate_word(int rank, const std::vector<Subset>& labels);

// An element of the bimodule of a word: a sum of pure tensors, one Poly per
// slot, each slot invariant under its label. Equality goes through the
// canonical straightened form, which pushes module coefficients to the
// rightmost slot along the fixed dual bases.
class TensorElement {
 public:
  static TensorElement zero(const Word& w);
  // Validates slot invariance.
  static TensorElement pure(const Word& w, std::vector<Poly> slots);

  const Word& word() const { return word_; }
  const std::vector<std::vector<Poly>>& terms() const { return terms_; }

  TensorElement operator+(const TensorElement& o) const;
  TensorElement operator*(const QRational& s) const;

  // Basis-index tuple for slots 0..m-1 mapped to the rightmost-slot
  // cofactor; zero cofactors are dropped.
  const std::map<std::vector<int>, Poly>& canonical() const;
  bool is_zero() const;
  bool operator==(const TensorElement& o) const;
  bool operator!=(const TensorElement& o) const { return !(*this == o); }

  std::string to_string() const;

 private:
  friend class MorTerm;
  static TensorElement unchecked(const Word& w,
                                 std::vector<std::vector<Poly>> terms);
  // The same element rewritten from its canonical form: one term per index
  // tuple, basis slots left of the cofactor. Bounds term growth in chains.
  TensorElement compacted() const;
  TensorElement(Word w, std::vector<std::vector<Poly>> terms)
      : word_(std::move(w)), terms_(std::move(terms)) {}
  Word word_;
  std::vector<std::vector<Poly>> terms_;
  mutable std::optional<std::map<std::vector<int>, Poly>> canon_;
};

// Homogeneous basis of the degree-d piece (polynomial degree, no shifts).
std::vector<TensorElement> graded_piece(const Word& w, int d,
                                        int degree_cutoff = 12);

// Finite homogeneous generating set over (R^{c_0}, R^{c_m}), computed as a
// degree-by-degree complement of the left/right-positive span.
std::vector<TensorElement> bimodule_generators(const Word& w,
                                               int degree_cutoff = 12);

// A bimodule map between word bimodules, as an immutable expression tree.
class MorTerm {
 public:
  enum class Kind {
    Identity,
    Zero,
    Box,
    Unit,
    Trace,
    Mult,
    Comult,
    Crossing,
    Vertical,
    Horizontal,
    Sum
  };

  static MorTerm identity(const Word& w);
  static MorTerm zero(const Word& src, const Word& tgt, int deg);
  // Multiply slot pos by f (f invariant under the slot label).
  static MorTerm box(const Word& w, size_t pos, const Poly& f);
  // [.. J ..] -> [.. J I J ..] inserting (I, J) after pos; x -> (x, 1, 1).
  static MorTerm unit(const Word& w, size_t pos, Subset lower);
  // [.. A B A ..] -> [.. A ..] with B ⊂ A: (a, f, b) -> a·trace(f)·b.
  static MorTerm trace_cap(const Word& w, size_t pos);
  // [.. A B A ..] -> [.. A ..] with A ⊂ B: (x, r, y) -> x·r·y.
  static MorTerm mult(const Word& w, size_t pos);
  // [.. I ..] -> [.. I J I ..]: x -> Σ_j (x·b_j, 1, b_j^*).
  static MorTerm comult(const Word& w, size_t pos, Subset upper);
  // Fragment (∅, s, I) or (I, s, ∅) at pos with s, to ∈ I: re-expresses the
  // middle color as to. Degree 0; mutually inverse for the two colors.
  static MorTerm crossing(const Word& w, size_t pos, P to);

  static MorTerm vertical(const MorTerm& second, const MorTerm& first);
  static MorTerm horizontal(const MorTerm& left, const MorTerm& right);
  static MorTerm sum(std::vector<MorTerm> parts);

  // next ∘ this, for left-to-right chaining.
  MorTerm then(const MorTerm& next) const;

  Kind kind() const;
  const Word& source() const;
  const Word& target() const;
  int degree() const;

  TensorElement apply(const TensorElement& x) const;

  std::string to_string() const;

 private:
  struct Node;
  explicit MorTerm(std::shared_ptr<const Node> n) : n_(std::move(n)) {}
  // Extends every word of the term by an ambient word glued on one side.
  static MorTerm whisker_right(const MorTerm& t, const Word& w);
  static MorTerm whisker_left(const Word& w, const MorTerm& t);
  std::shared_ptr<const Node> n_;
};

TensorElement eval_term(const MorTerm& t, const TensorElement& x);

// Exact equality as bimodule maps: boundary words must match; a degree
// mismatch is an inequality; otherwise both sides are evaluated on the
// generating set of the source.
bool maps_equal(const MorTerm& a, const MorTerm& b, int degree_cutoff = 12);

// Orthogonal idempotents on the word s ∅ s splitting it into shifted
// copies of s; their sum is the identity.
std::vector<MorTerm> splitting_idempotents(int rank, P s);

// Relation suite for the generator calculus; rank 1 or 2 selects the
// two- or three-primary realization.
Report verify_relations(int rank, int degree_cutoff = 12);

}  // namespace qsatake
