#pragma once

// Planar webs on a horizontal strip, stored as combinatorial maps: darts
// paired by an edge involution, counterclockwise rotations at trivalent
// vertices, ordered wall attachments on the bottom and top boundary, and a
// region color to the left of every dart. Vertex-free closed strands are
// kept as a multiset of side-color pairs. Reduction rewrites loops, bigon
// faces, and square faces until every summand is non-elliptic.

#include "qsatake/polyring.hpp"
#include "qsatake/report.hpp"

#include <array>
#include <cstdint>
#include <random>
#include <string>
#include <utility>
#include <vector>

namespace qsatake {

// Region colors: the singletons r, b for the two-primary theory, the
// doubletons p, g, o for the three-primary theory.
bool valid_web_color(int rank, Subset c);
std::vector<Subset> web_colors(int rank);

// A word of region colors along a wall; consecutive letters differ. The
// wall between letters i and i+1 carries strand endpoint i.
void validate_web_word(int rank, const std::vector<Subset>& word);

struct Web {
  int rank = 2;
  std::vector<Subset> source, target;          // bottom and top words
  std::vector<std::array<int, 3>> vertices;    // ccw dart triples
  std::vector<int> bottom, top;                // wall darts, left to right
  std::vector<int> partner;                    // fixed-point-free involution
  std::vector<Subset> left;                    // region left of each dart
  std::vector<std::pair<Subset, Subset>> loops;  // normalized, sorted

  size_t darts() const { return partner.size(); }

  // Deterministic encoding: boundary-anchored breadth-first relabeling,
  // floating components keyed by their minimal self-encoding. Webs are
  // equal iff their encodings are equal.
  std::string canonical() const;
  bool operator==(const Web& o) const { return canonical() == o.canonical(); }
  bool operator!=(const Web& o) const { return !(*this == o); }
};

// Full structural validation; throws UsageError with the violated rule.
void validate_web(const Web& w);

// Where a dart is attached.
struct Attach {
  enum class Kind { Vertex, Bottom, Top } kind;
  int index;  // vertex number or wall position
  int slot;   // position inside the vertex triple; 0 for walls
};
std::vector<Attach> web_attachments(const Web& w);

// Elementary webs.
Web identity_web(int rank, const std::vector<Subset>& word);
Web cup_web(int rank, Subset outer, Subset inner);  // s -> s t s
Web cap_web(int rank, Subset outer, Subset inner);  // s t s -> s
// One trivalent vertex, legs to the bottom wall: s0 s1 s2 s0 -> s0.
Web trivalent_web(const std::vector<Subset>& source4);
// One trivalent vertex, legs to the top wall: t0 -> t0 t1 t2 t0.
Web trivalent_web_up(const std::vector<Subset>& target4);
// Two vertices joined by a two-sided face of color inner, one strand
// endpoint per wall: a b -> a b.
Web bigon_web(Subset a, Subset b, Subset inner);
// Four vertices around a central four-sided face of color center:
// outer side outer -> outer side outer.
Web square_web(Subset outer, Subset side, Subset center);

// Horizontal gluing on a shared boundary letter and vertical composition
// (top after bottom, glued along the matching middle wall).
Web tensor_webs(const Web& l, const Web& r);
Web compose_webs(const Web& top, const Web& bottom);

// Internal face census: (darts bounding the face, side count); free loops
// are listed as ({}, 0).
std::vector<std::pair<std::vector<int>, int>> faces(const Web& w);

// No free loops, no closed components, no internal face with <= 4 sides.
bool is_nonelliptic(const Web& w);

// A QLaurent-linear combination of webs with common boundary words,
// merged by canonical form.
class WebCombo {
 public:
  WebCombo(int rank, std::vector<Subset> source, std::vector<Subset> target);
  static WebCombo of(const Web& w, const QLaurent& c = QLaurent(1));

  int rank() const { return rank_; }
  const std::vector<Subset>& source() const { return source_; }
  const std::vector<Subset>& target() const { return target_; }
  // Sorted by canonical key; zero coefficients dropped.
  const std::vector<std::pair<Web, QLaurent>>& terms() const { return terms_; }

  void add(const Web& w, const QLaurent& c);
  WebCombo operator+(const WebCombo& o) const;
  WebCombo scaled(const QLaurent& c) const;
  bool is_zero() const { return terms_.empty(); }
  bool operator==(const WebCombo& o) const;

  std::string to_string() const;

 private:
  int rank_;
  std::vector<Subset> source_, target_;
  std::vector<std::pair<Web, QLaurent>> terms_;  // sorted by canonical key
  std::vector<std::string> keys_;                // canonical key per term
};

WebCombo compose_combos(const WebCombo& top, const WebCombo& bottom);
WebCombo tensor_combos(const WebCombo& l, const WebCombo& r);

// Rewrite selection: First scans loops then faces in a fixed order; Random
// draws uniformly from all available rewrites using the given seed.
enum class ReduceStrategy { First, Random };

WebCombo reduce(const WebCombo& c, ReduceStrategy strategy = ReduceStrategy::First,
                std::uint64_t seed = 0);
WebCombo reduce(const Web& w, ReduceStrategy strategy = ReduceStrategy::First,
                std::uint64_t seed = 0);

// Scalar of a boundary-free web (single-letter identical words, no strand
// endpoints); the empty web gives 1.
QLaurent evaluate_closed(const Web& w);

// JSON serialization; the reader validates the web.
Web web_from_json(const std::string& text);
std::string web_to_json(const Web& w);

// Seeded generation by stacking random elementary layers; the closed
// variant mirrors the stack so the boundary closes up.
Web random_web(int rank, std::mt19937_64& rng, int layers);
Web random_closed_web(int rank, std::mt19937_64& rng, int layers);

// Reduction and evaluation suite: fixed examples, confluence of the two
// strategies on seeded elliptic webs, boundary preservation, non-elliptic
// outputs.
Report verify_webs(int rank, std::uint64_t seed = 20260823, int trials = 100);

}  // namespace qsatake
