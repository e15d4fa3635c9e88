#pragma once

// Functor from web diagrams to bimodule morphism terms. Boundary region
// words are rerouted through the shared lower color of each adjacent pair,
// cups and caps map to Frobenius composites, and trivalent vertices map to
// merge-then-trace composites carrying calibrated normalization scalars.

#include <cstdint>
#include <vector>

#include "qsatake/bimodcalc.hpp"
#include "qsatake/polyring.hpp"
#include "qsatake/qarith.hpp"
#include "qsatake/report.hpp"
#include "qsatake/webs.hpp"

namespace qsatake {

// [c_0 .. c_m] -> [c_0, c_0 n c_1, c_1, ..., c_m]: the letter inserted
// between adjacent regions is their intersection.
Word functor_word(int rank, const std::vector<Subset>& region_word);

// Elementary layers (identity-padded cup, cap or trivalent webs) whose
// bottom-to-top composite equals w; each recorded free loop becomes one
// cup/cap pair. Throws when no layer decomposition exists.
std::vector<Web> slice_web(const Web& w);

// Scalars on the trivalent images, one per vertex direction and cyclic
// orientation of the three region colors around the vertex.
struct Calibration {
  QRational down_plus{1}, down_minus{1}, up_plus{1}, up_minus{1};
  bool operator==(const Calibration& o) const {
    return down_plus == o.down_plus && down_minus == o.down_minus &&
           up_plus == o.up_plus && up_minus == o.up_minus;
  }
  bool operator!=(const Calibration& o) const { return !(*this == o); }
  bool is_unit() const;
  std::string to_string() const;
};

// Solves F(bigon) = -[2] F(edge) over every bigon coloring with the down
// images unit-normalized; throws when some bigon image is not proportional
// to the identity or same-orientation constraints disagree.
Calibration calibrate_trivalent();

class FunctorSpec {
 public:
  // rank 1 has no trivalent generators; rank 2 takes the bigon scalars.
  explicit FunctorSpec(int rank, Calibration nu = Calibration{});

  // Calibrated instance, computed once per rank.
  static const FunctorSpec& get(int rank);

  int rank() const { return rank_; }
  const Calibration& calibration() const { return nu_; }

  // Images of the elementary webs; all are degree 0 and their boundary
  // words are the functor_word images of the web boundaries.
  MorTerm identity_image(const std::vector<Subset>& region_word) const;
  MorTerm cup_image(Subset outer, Subset inner) const;
  MorTerm cap_image(Subset outer, Subset inner) const;
  MorTerm trivalent_down_image(Subset s0, Subset s1, Subset s2) const;
  MorTerm trivalent_up_image(Subset t0, Subset t1, Subset t2) const;

  MorTerm web_image(const Web& w) const;         // composite over slice_web
  MorTerm combo_image(const WebCombo& c) const;  // linear extension

 private:
  int rank_;
  Calibration nu_;
};

// Image of a web combination under the calibrated functor.
MorTerm functor_image(const WebCombo& c);

// Relation transport and degree checks: circle values, bigon and square
// transports at every coloring, functoriality on sliced samples.
Report verify_functor(int rank, int degree_cutoff = 12,
                      std::uint64_t seed = 20260823);

}  // namespace qsatake
