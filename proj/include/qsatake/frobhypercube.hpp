#pragma once

// The cube of Frobenius extensions among the invariant subrings R^I:
// positive-root products, normalized trace maps between nested levels,
// graded dual bases, and coproduct elements, together with a verification
// suite for the defining identities.

#include "qsatake/polyring.hpp"
#include "qsatake/report.hpp"

#include <map>
#include <utility>
#include <vector>

namespace qsatake {

// A trace map written as a Demazure word (rightmost letter applied first)
// scaled by a Laurent prefactor.
struct TraceWord {
  QLaurent prefactor;
  std::vector<P> word;
};

// Pivot choice when extending the graded module basis; the two strategies
// produce genuinely different bases, which downstream checks use to confirm
// basis independence of canonical data.
enum class BasisStrategy { LexLow, LexHigh };

// A module basis of R^I over R^J together with its trace-dual basis:
// trace(I, J, basis[i] * dual[j]) = delta_{ij}.
struct DualBases {
  std::vector<Poly> basis;  // homogeneous, weakly increasing degree
  std::vector<Poly> dual;
};

// Static description of one edge of the cube.
struct FrobeniusExtension {
  Subset lower, upper;  // lower ⊆ upper; source ring is R^lower
  TraceWord trace;
  int degree;  // 2 * (ell(upper) - ell(lower)); top degree of the basis
  int rank;    // module rank of R^lower over R^upper
};

class FrobeniusCube {
 public:
  static const FrobeniusCube& get(int rank);
  const Realization& realization() const { return re_; }

  // Ordered positive roots of the parabolic subgroup indexed by I.
  const std::vector<Poly>& roots(Subset I) const;
  // For a doubleton I: the unique root of Phi_I that is not simple.
  Poly nonsimple_root(Subset I) const;
  // The two colors of a doubleton in the fixed b < r < y order.
  std::pair<P, P> doubleton_pair(Subset I) const;
  // Pairing scalar for distinct colors (three-primary realization only).
  QLaurent c(P s, P t) const;

  // Product of the roots of Phi_J that are not in Phi_I.
  Poly mu(Subset I, Subset J) const;

  FrobeniusExtension extension(Subset I, Subset J) const;
  int extension_degree(Subset I, Subset J) const;
  int module_rank(Subset I, Subset J) const;
  TraceWord trace_word(Subset I, Subset J) const;

  // Normalized trace R^I -> R^J; rejects inputs outside R^I.
  Poly trace(Subset I, Subset J, const Poly& f) const;

  // Graded dual bases, cached per (I, J, strategy); deterministic.
  const DualBases& dual_bases(
      Subset I, Subset J, BasisStrategy strategy = BasisStrategy::LexLow) const;

  // Sum_i basis[i] (x) dual[i] as a list of slot pairs.
  std::vector<std::pair<Poly, Poly>> coproduct(
      Subset I, Subset J, BasisStrategy strategy = BasisStrategy::LexLow) const;

  // Canonical coordinates of Sum_i first[i] (x) second[i] in
  // R^I (x)_{R^J} R^I over the LexLow basis: entry k is the right-hand
  // cofactor of basis element k. Equal coordinate lists mean equal tensors.
  std::vector<Poly> tensor_coordinates(
      Subset I, Subset J,
      const std::vector<std::pair<Poly, Poly>>& pairs) const;

 private:
  explicit FrobeniusCube(const Realization& re);
  void require_nested(Subset I, Subset J) const;

  const Realization& re_;
  std::map<Subset, std::vector<Poly>> roots_;
  mutable std::map<std::tuple<unsigned, unsigned, int>, DualBases> cache_;
};

// Verification suite for the trace and root tables; degree_cutoff bounds the
// graded bases the operator identities are tested on.
Report verify_hypercube(int rank, int degree_cutoff = 12);

}  // namespace qsatake
