#include "qsatake/satake.hpp"

#include <algorithm>
#include <array>
#include <cstddef>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

namespace qsatake {
namespace {

[[noreturn]] void fail(const std::string& msg) { throw UsageError(msg); }

// Orientation of a step between distinct rank-2 colors: true when it
// follows the reference cycle o -> g -> p -> o.
bool plus_oriented(Subset x0, Subset x1) {
  if (x0 == Subset::pair(P::r, P::y)) return x1 == Subset::pair(P::b, P::y);
  if (x0 == Subset::pair(P::b, P::y)) return x1 == Subset::pair(P::r, P::b);
  return x1 == Subset::pair(P::r, P::y);
}

// One elementary layer above the region word `before`.
//   kind 0: cup at letter pos, inner color cols[0]
//   kind 1: cap at strand pos
//   kind 2: trivalent vertex with legs down at strand pos
//   kind 3: trivalent vertex with legs up at letter pos, sectors cols[0..2]
struct Layer {
  int kind = 0;
  size_t pos = 0;
  std::array<Subset, 3> cols{};
  std::vector<Subset> before;
};

std::vector<Subset> word_after(const Layer& l) {
  std::vector<Subset> w = l.before;
  switch (l.kind) {
    case 0:
      w.insert(w.begin() + l.pos + 1, {l.cols[0], w[l.pos]});
      break;
    case 1:
      w.erase(w.begin() + l.pos + 1, w.begin() + l.pos + 3);
      break;
    case 2:
      w.erase(w.begin() + l.pos + 1, w.begin() + l.pos + 4);
      break;
    case 3:
      w.insert(w.begin() + l.pos + 1, {l.cols[1], l.cols[2], l.cols[0]});
      break;
  }
  return w;
}

Web layer_web(int rank, const Layer& l) {
  std::vector<Subset> pre(l.before.begin(), l.before.begin() + l.pos + 1);
  size_t keep = l.pos;
  Web mid;
  switch (l.kind) {
    case 0:
      mid = cup_web(rank, l.before[l.pos], l.cols[0]);
      break;
    case 1:
      mid = cap_web(rank, l.before[l.pos], l.before[l.pos + 1]);
      keep = l.pos + 2;
      break;
    case 2:
      mid = trivalent_web({l.before[l.pos], l.before[l.pos + 1],
                           l.before[l.pos + 2], l.before[l.pos + 3]});
      keep = l.pos + 3;
      break;
    case 3:
      mid = trivalent_web_up({l.cols[0], l.cols[1], l.cols[2], l.cols[0]});
      break;
  }
  std::vector<Subset> suf(l.before.begin() + keep, l.before.end());
  return tensor_webs(tensor_webs(identity_web(rank, pre), mid),
                     identity_web(rank, suf));
}

// Sweep state: `frontier` lists the upward dart of every unfinished edge,
// left to right; `word` is the region word across the current level.
// Negative frontier entries are the halves of a placed free loop, paired
// as (v, v-1).
struct SliceState {
  std::vector<int> frontier;
  std::vector<Subset> word;
  std::vector<char> vertex_done;
  std::vector<char> dart_seen;
  std::vector<std::pair<Subset, Subset>> pending;
  int next_virtual = -1;
  std::vector<Layer> layers;
};

class Slicer {
 public:
  explicit Slicer(const Web& w) : w_(w), att_(web_attachments(w)) {}

  std::vector<Layer> run() {
    SliceState s;
    s.frontier = w_.bottom;
    s.word = w_.source;
    s.vertex_done.assign(w_.vertices.size(), 0);
    s.dart_seen.assign(w_.darts(), 0);
    for (int d : w_.bottom) s.dart_seen[d] = 1;
    s.pending = w_.loops;
    if (!advance(s)) fail("web admits no layer decomposition");
    return std::move(s.layers);
  }

 private:
  const Web& w_;
  std::vector<Attach> att_;

  bool at_vertex(int dart, int* vertex) const {
    if (att_[dart].kind != Attach::Kind::Vertex) return false;
    *vertex = att_[dart].index;
    return true;
  }

  std::vector<size_t> legs_of(const SliceState& s, int v) const {
    std::vector<size_t> out;
    for (size_t i = 0; i < s.frontier.size(); ++i) {
      int vv;
      if (s.frontier[i] >= 0 && at_vertex(w_.partner[s.frontier[i]], &vv) &&
          vv == v)
        out.push_back(i);
    }
    return out;
  }

  static bool same_cycle(const std::array<int, 3>& t, int d0, int d1, int d2) {
    for (int k = 0; k < 3; ++k)
      if (t[k] == d0 && t[(k + 1) % 3] == d1 && t[(k + 2) % 3] == d2)
        return true;
    return false;
  }

  void mark_vertex(SliceState& s, int v) const {
    s.vertex_done[v] = 1;
    for (int d : w_.vertices[v]) s.dart_seen[d] = 1;
  }

  static void push(SliceState& s, Layer l) {
    l.before = s.word;
    s.word = word_after(l);
    s.layers.push_back(std::move(l));
  }

  // Free loops become cup layers whose cap is owed; placing cups before
  // caps close lets further loops nest inside.
  bool fire_loop_cup(SliceState& s) const {
    for (size_t li = 0; li < s.pending.size(); ++li) {
      auto [c1, c2] = s.pending[li];
      for (size_t j = 0; j < s.word.size(); ++j) {
        Subset inner;
        if (s.word[j] == c1)
          inner = c2;
        else if (s.word[j] == c2)
          inner = c1;
        else
          continue;
        push(s, Layer{0, j, {inner, Subset(), Subset()}, {}});
        int v1 = s.next_virtual--, v2 = s.next_virtual--;
        s.frontier.insert(s.frontier.begin() + j, {v1, v2});
        s.pending.erase(s.pending.begin() + li);
        return true;
      }
    }
    return false;
  }

  bool fire_cap(SliceState& s) const {
    for (size_t i = 0; i + 1 < s.frontier.size(); ++i) {
      int a = s.frontier[i], b = s.frontier[i + 1];
      // top-attached pairs are hanging arcs awaiting the top wall, not caps
      bool arc = a >= 0 ? b >= 0 && w_.partner[a] == b &&
                              att_[a].kind != Attach::Kind::Top
                        : b == a - 1;
      if (!arc) continue;
      push(s, Layer{1, i, {}, {}});
      s.frontier.erase(s.frontier.begin() + i, s.frontier.begin() + i + 2);
      return true;
    }
    return false;
  }

  bool fire_vertex3(SliceState& s) const {
    for (size_t i = 0; i < s.frontier.size(); ++i) {
      int v;
      if (s.frontier[i] < 0 || !at_vertex(w_.partner[s.frontier[i]], &v) ||
          s.vertex_done[v])
        continue;
      auto legs = legs_of(s, v);
      if (legs.size() != 3 || legs[0] != i || legs[1] != i + 1 ||
          legs[2] != i + 2)
        continue;
      int p0 = w_.partner[s.frontier[i]];
      int p1 = w_.partner[s.frontier[i + 1]];
      int p2 = w_.partner[s.frontier[i + 2]];
      if (!same_cycle(w_.vertices[v], p0, p1, p2))
        fail("frontier meets a vertex against its rotation");
      mark_vertex(s, v);
      push(s, Layer{2, i, {}, {}});
      s.frontier.erase(s.frontier.begin() + i, s.frontier.begin() + i + 3);
      return true;
    }
    return false;
  }

  bool fire_vertex2(SliceState& s) const {
    for (size_t i = 0; i < s.frontier.size(); ++i) {
      int v;
      if (s.frontier[i] < 0 || !at_vertex(w_.partner[s.frontier[i]], &v) ||
          s.vertex_done[v])
        continue;
      auto legs = legs_of(s, v);
      if (legs.size() != 2 || legs[0] != i || legs[1] != i + 1) continue;
      int p0 = w_.partner[s.frontier[i]];
      int p1 = w_.partner[s.frontier[i + 1]];
      int x = -1;
      for (int d : w_.vertices[v])
        if (d != p0 && d != p1) x = d;
      if (!same_cycle(w_.vertices[v], p0, p1, x))
        fail("frontier meets a vertex against its rotation");
      mark_vertex(s, v);
      // bend the upward edge: a cup to the right, then all three legs down
      push(s, Layer{0, i + 2, {s.word[i], Subset(), Subset()}, {}});
      push(s, Layer{2, i, {}, {}});
      s.frontier[i] = x;
      s.frontier.erase(s.frontier.begin() + i + 1);
      return true;
    }
    return false;
  }

  bool fire_vertex1(SliceState& s) const {
    for (size_t i = 0; i < s.frontier.size(); ++i) {
      int v;
      if (s.frontier[i] < 0 || !at_vertex(w_.partner[s.frontier[i]], &v) ||
          s.vertex_done[v])
        continue;
      if (legs_of(s, v).size() != 1) continue;
      int p = w_.partner[s.frontier[i]];
      const auto& t = w_.vertices[v];
      int k = t[0] == p ? 0 : t[1] == p ? 1 : 2;
      int x = t[(k + 1) % 3], y = t[(k + 2) % 3];
      mark_vertex(s, v);
      // the vertex with its two other edges upward, then a cap folding the
      // first new strand onto the consumed one
      Subset a = s.word[i], b = s.word[i + 1], c = w_.left[x];
      push(s, Layer{3, i + 1, {b, a, c}, {}});
      push(s, Layer{1, i, {}, {}});
      s.frontier[i] = y;
      s.frontier.insert(s.frontier.begin() + i + 1, x);
      return true;
    }
    return false;
  }

  // Structure hanging from the top wall or floating: a vertex emitted with
  // all legs upward, or an arc between two top attachments emitted as a
  // cup. The letter (and, for floating parts, the rotation) is a guess,
  // so these choices backtrack.
  struct Inject {
    int vertex = -1;  // -1: arc case
    int rotation = 0;
    int west = -1;
    size_t letter = 0;
  };

  std::vector<Inject> inject_candidates(const SliceState& s) const {
    std::vector<Inject> out;
    for (size_t v = 0; v < w_.vertices.size(); ++v) {
      if (s.vertex_done[v] || !legs_of(s, (int)v).empty()) continue;
      const auto& t = w_.vertices[v];
      for (int k = 0; k < 3; ++k) {
        Subset t0 = w_.left[t[(k + 2) % 3]];
        for (size_t j = 0; j < s.word.size(); ++j)
          if (s.word[j] == t0) out.push_back({(int)v, k, -1, j});
      }
    }
    for (int d = 0; d < (int)w_.darts(); ++d) {
      int e = w_.partner[d];
      if (s.dart_seen[d] || s.dart_seen[e]) continue;
      if (att_[d].kind != Attach::Kind::Top ||
          att_[e].kind != Attach::Kind::Top)
        continue;
      for (size_t j = 0; j < s.word.size(); ++j)
        if (s.word[j] == w_.left[d]) out.push_back({-1, 0, d, j});
    }
    return out;
  }

  void apply_inject(SliceState& s, const Inject& c) const {
    if (c.vertex >= 0) {
      const auto& t = w_.vertices[c.vertex];
      int a = t[c.rotation], b = t[(c.rotation + 1) % 3],
          cc = t[(c.rotation + 2) % 3];
      mark_vertex(s, c.vertex);
      push(s, Layer{3, c.letter, {w_.left[cc], w_.left[b], w_.left[a]}, {}});
      s.frontier.insert(s.frontier.begin() + c.letter, {cc, b, a});
    } else {
      int east = w_.partner[c.west];
      s.dart_seen[c.west] = s.dart_seen[east] = 1;
      push(s, Layer{0, c.letter, {w_.left[east], Subset(), Subset()}, {}});
      s.frontier.insert(s.frontier.begin() + c.letter, {c.west, east});
    }
  }

  bool complete(const SliceState& s) const {
    if (!s.pending.empty()) return false;
    for (char d : s.vertex_done)
      if (!d) return false;
    if (s.frontier.size() != w_.top.size()) return false;
    for (size_t j = 0; j < s.frontier.size(); ++j)
      if (s.frontier[j] < 0 || w_.partner[s.frontier[j]] != w_.top[j])
        return false;
    return s.word == w_.target;
  }

  bool advance(SliceState& s) const {
    while (fire_loop_cup(s) || fire_cap(s) || fire_vertex3(s) ||
           fire_vertex2(s) || fire_vertex1(s)) {
    }
    if (complete(s)) return true;
    for (const Inject& c : inject_candidates(s)) {
      SliceState copy = s;
      apply_inject(copy, c);
      if (advance(copy)) {
        s = std::move(copy);
        return true;
      }
    }
    return false;
  }
};

std::vector<Layer> slice_layers(const Web& w) {
  validate_web(w);
  return Slicer(w).run();
}

MorTerm scaled(const MorTerm& t, const QRational& c) {
  if (c == QRational(1)) return t;
  if (c.is_zero()) fail("zero scalar on a morphism term");
  return t.then(MorTerm::box(t.target(), 0, Poly(c)));
}

MorTerm layer_term(const FunctorSpec& fs, const Layer& l) {
  int rank = fs.rank();
  std::vector<Subset> pre(l.before.begin(), l.before.begin() + l.pos + 1);
  size_t keep = l.pos;
  MorTerm mid = [&]() -> MorTerm {
    switch (l.kind) {
      case 0:
        return fs.cup_image(l.before[l.pos], l.cols[0]);
      case 1:
        keep = l.pos + 2;
        return fs.cap_image(l.before[l.pos], l.before[l.pos + 1]);
      case 2:
        keep = l.pos + 3;
        return fs.trivalent_down_image(l.before[l.pos], l.before[l.pos + 1],
                                       l.before[l.pos + 2]);
      default:
        return fs.trivalent_up_image(l.cols[0], l.cols[1], l.cols[2]);
    }
  }();
  std::vector<Subset> suf(l.before.begin() + keep, l.before.end());
  return MorTerm::horizontal(
      MorTerm::identity(functor_word(rank, pre)),
      MorTerm::horizontal(mid, MorTerm::identity(functor_word(rank, suf))));
}

// The constant c with r == e * c; nullopt when r is not a constant
// multiple of e. e must be nonzero.
std::optional<QRational> constant_ratio(const TensorElement& r,
                                        const TensorElement& e) {
  if (r.is_zero()) return QRational(0);
  const auto& rc = r.canonical();
  const auto& ec = e.canonical();
  auto it = ec.find(rc.begin()->first);
  if (it == ec.end()) return std::nullopt;
  const auto& mono = *it->second.terms().begin();
  QRational c = rc.begin()->second.coeff(mono.first) / mono.second;
  if (r != e * c) return std::nullopt;
  return c;
}

// Scalar of an endomorphism proportional to the identity; throws otherwise.
QRational identity_scalar(const MorTerm& t) {
  const Word& w = t.source();
  std::vector<Poly> ones(w.size(), Poly(1));
  TensorElement e = TensorElement::pure(w, ones);
  auto c = constant_ratio(t.apply(e), e);
  if (!c || !maps_equal(t, scaled(MorTerm::identity(w), *c), 8))
    fail("image is not a scalar multiple of the identity");
  return *c;
}

Subset third_color(Subset a, Subset b) {
  for (Subset c : web_colors(2))
    if (c != a && c != b) return c;
  fail("no third color");
}

}  // namespace

Word functor_word(int rank, const std::vector<Subset>& region_word) {
  validate_web_word(rank, region_word);
  std::vector<Subset> labels;
  labels.reserve(2 * region_word.size() - 1);
  for (size_t i = 0; i < region_word.size(); ++i) {
    if (i > 0)
      labels.push_back(region_word[i - 1].intersect(region_word[i]));
    labels.push_back(region_word[i]);
  }
  return validate_word(rank, labels);
}

std::vector<Web> slice_web(const Web& w) {
  std::vector<Web> out;
  for (const Layer& l : slice_layers(w)) out.push_back(layer_web(w.rank, l));
  return out;
}

bool Calibration::is_unit() const {
  return *this == Calibration{};
}

std::string Calibration::to_string() const {
  return "down+ " + down_plus.to_string() + ", down- " +
         down_minus.to_string() + ", up+ " + up_plus.to_string() + ", up- " +
         up_minus.to_string();
}

FunctorSpec::FunctorSpec(int rank, Calibration nu)
    : rank_(rank), nu_(std::move(nu)) {
  if (rank != 1 && rank != 2) fail("rank must be 1 or 2");
}

const FunctorSpec& FunctorSpec::get(int rank) {
  if (rank == 1) {
    static const FunctorSpec one(1);
    return one;
  }
  if (rank == 2) {
    static const FunctorSpec two(2, calibrate_trivalent());
    return two;
  }
  fail("rank must be 1 or 2");
}

MorTerm FunctorSpec::identity_image(
    const std::vector<Subset>& region_word) const {
  return MorTerm::identity(functor_word(rank_, region_word));
}

MorTerm FunctorSpec::cup_image(Subset outer, Subset inner) const {
  Subset u = outer.intersect(inner);
  MorTerm t = MorTerm::unit(validate_word(rank_, {outer}), 0, u);
  return t.then(MorTerm::comult(t.target(), 1, inner));
}

MorTerm FunctorSpec::cap_image(Subset outer, Subset inner) const {
  MorTerm t = MorTerm::mult(functor_word(rank_, {outer, inner, outer}), 1);
  return t.then(MorTerm::trace_cap(t.target(), 0));
}

MorTerm FunctorSpec::trivalent_down_image(Subset s0, Subset s1,
                                          Subset s2) const {
  if (rank_ != 2) fail("trivalent images need rank 2");
  Subset u0 = s0.intersect(s1), u2 = s2.intersect(s0);
  MorTerm t = MorTerm::unit(functor_word(2, {s0, s1, s2, s0}), 3, Subset());
  t = t.then(MorTerm::crossing(t.target(), 4, u2.as_primary()));
  t = t.then(MorTerm::mult(t.target(), 5));
  t = t.then(MorTerm::crossing(t.target(), 4, u0.as_primary()));
  t = t.then(MorTerm::crossing(t.target(), 2, u0.as_primary()));
  t = t.then(MorTerm::trace_cap(t.target(), 3));
  t = t.then(MorTerm::mult(t.target(), 1));
  t = t.then(MorTerm::trace_cap(t.target(), 0));
  return scaled(t, plus_oriented(s0, s1) ? nu_.down_plus : nu_.down_minus);
}

MorTerm FunctorSpec::trivalent_up_image(Subset t0, Subset t1,
                                        Subset t2) const {
  if (rank_ != 2) fail("trivalent images need rank 2");
  Subset u0 = t0.intersect(t1), u1 = t1.intersect(t2), u2 = t2.intersect(t0);
  MorTerm t = MorTerm::unit(validate_word(2, {t0}), 0, u0);
  t = t.then(MorTerm::comult(t.target(), 1, t1));
  t = t.then(MorTerm::unit(t.target(), 3, Subset()));
  t = t.then(MorTerm::crossing(t.target(), 2, u1.as_primary()));
  t = t.then(MorTerm::crossing(t.target(), 4, u2.as_primary()));
  t = t.then(MorTerm::comult(t.target(), 5, t2));
  t = t.then(MorTerm::crossing(t.target(), 4, u1.as_primary()));
  t = t.then(MorTerm::trace_cap(t.target(), 3));
  return scaled(t, plus_oriented(t0, t1) ? nu_.up_plus : nu_.up_minus);
}

MorTerm FunctorSpec::web_image(const Web& w) const {
  if (w.rank != rank_) fail("web rank mismatch");
  MorTerm t = identity_image(w.source);
  for (const Layer& l : slice_layers(w)) t = t.then(layer_term(*this, l));
  return t;
}

MorTerm FunctorSpec::combo_image(const WebCombo& c) const {
  if (c.rank() != rank_) fail("web rank mismatch");
  if (c.terms().empty())
    return MorTerm::zero(functor_word(rank_, c.source()),
                         functor_word(rank_, c.target()), 0);
  std::vector<MorTerm> parts;
  for (const auto& [web, coeff] : c.terms())
    parts.push_back(scaled(web_image(web), QRational(coeff)));
  if (parts.size() == 1) return parts[0];
  return MorTerm::sum(std::move(parts));
}

Calibration calibrate_trivalent() {
  FunctorSpec bare(2);
  QRational minus_two(-quantum_int(2));
  std::optional<QRational> want_plus, want_minus;
  for (Subset a : web_colors(2))
    for (Subset b : web_colors(2)) {
      if (a == b) continue;
      Subset inner = third_color(a, b);
      QRational c = identity_scalar(bare.web_image(bigon_web(a, b, inner)));
      // both vertices of this bigon share the a -> inner orientation
      QRational nu = minus_two / c;
      auto& slot = plus_oriented(a, inner) ? want_plus : want_minus;
      if (slot && *slot != nu) fail("inconsistent trivalent scalars");
      slot = nu;
    }
  return Calibration{1, 1, *want_plus, *want_minus};
}

MorTerm functor_image(const WebCombo& c) {
  return FunctorSpec::get(c.rank()).combo_image(c);
}

Report verify_functor(int rank, int degree_cutoff, std::uint64_t seed) {
  if (rank != 1 && rank != 2) fail("rank must be 1 or 2");
  Report rep;
  rep.suite = "functor";
  rep.seed = seed;
  const FunctorSpec& fs = FunctorSpec::get(rank);
  std::vector<Subset> colors = web_colors(rank);
  QRational circle_value =
      rank == 1 ? QRational(-quantum_int(2)) : QRational(quantum_int(3));
  QRational minus_two(-quantum_int(2));

  if (rank == 2) {
    Calibration c1 = fs.calibration();
    rep.add("calibration.solves", true, c1.to_string());
    rep.add("calibration.idempotent", calibrate_trivalent() == c1);
    rep.add("calibration.unit", c1.is_unit(), c1.to_string());
  }

  for (Subset s : colors)
    for (Subset t : colors) {
      if (s == t) continue;
      MorTerm cup = fs.cup_image(s, t), cap = fs.cap_image(s, t);
      bool ok = cup.degree() == 0 && cap.degree() == 0 &&
                cup.source() == functor_word(rank, {s}) &&
                cup.target() == functor_word(rank, {s, t, s}) &&
                cap.source() == functor_word(rank, {s, t, s}) &&
                cap.target() == functor_word(rank, {s});
      rep.add("degree.cupcap." + s.name() + t.name(), ok);
    }
  if (rank == 2) {
    for (Subset s0 : colors)
      for (Subset s1 : colors) {
        if (s0 == s1) continue;
        Subset s2 = third_color(s0, s1);
        Word w7 = functor_word(2, {s0, s1, s2, s0});
        Word w1 = functor_word(2, {s0});
        MorTerm down = fs.trivalent_down_image(s0, s1, s2);
        MorTerm up = fs.trivalent_up_image(s0, s1, s2);
        bool ok = down.degree() == 0 && up.degree() == 0 &&
                  down.source() == w7 && down.target() == w1 &&
                  up.source() == w1 && up.target() == w7;
        rep.add("degree.vertex." + s0.name() + s1.name() + s2.name(), ok);
      }
  }

  for (Subset s : colors)
    for (Subset t : colors) {
      if (s == t) continue;
      Web circle = compose_webs(cap_web(rank, s, t), cup_web(rank, s, t));
      MorTerm want = scaled(fs.identity_image({s}), circle_value);
      rep.add("circle." + s.name() + t.name(),
              maps_equal(fs.web_image(circle), want, degree_cutoff));
    }

  if (rank == 2) {
    for (Subset a : colors)
      for (Subset b : colors) {
        if (a == b) continue;
        Web bg = bigon_web(a, b, third_color(a, b));
        MorTerm want = scaled(fs.identity_image({a, b}), minus_two);
        rep.add("bigon." + a.name() + b.name(),
                maps_equal(fs.web_image(bg), want, degree_cutoff));
      }
    for (Subset outer : colors)
      for (Subset side : colors) {
        if (outer == side) continue;
        Web sq = square_web(outer, side, third_color(outer, side));
        Web turnback =
            compose_webs(cup_web(2, outer, side), cap_web(2, outer, side));
        MorTerm rhs = MorTerm::sum(
            {fs.identity_image({outer, side, outer}), fs.web_image(turnback)});
        rep.add("square." + outer.name() + side.name(),
                maps_equal(fs.web_image(sq), rhs, degree_cutoff));
      }
  }

  // functoriality across a split of the layer decomposition
  std::mt19937_64 rng(seed);
  auto split_check = [&](const std::string& name, const Web& w) {
    std::vector<Layer> layers = slice_layers(w);
    size_t half = layers.size() / 2;
    Web lo = identity_web(rank, w.source);
    for (size_t i = 0; i < half; ++i)
      lo = compose_webs(layer_web(rank, layers[i]), lo);
    std::vector<Subset> mid =
        half < layers.size() ? layers[half].before : w.target;
    Web hi = identity_web(rank, mid);
    for (size_t i = half; i < layers.size(); ++i)
      hi = compose_webs(layer_web(rank, layers[i]), hi);
    bool ok = maps_equal(fs.web_image(w),
                         fs.web_image(lo).then(fs.web_image(hi)),
                         degree_cutoff);
    rep.add(name, ok);
  };
  split_check("functoriality.circle",
              compose_webs(cap_web(rank, colors[0], colors[1]),
                           cup_web(rank, colors[0], colors[1])));
  if (rank == 2) {
    split_check("functoriality.bigon",
                bigon_web(colors[0], colors[1], colors[2]));
    split_check("functoriality.square",
                square_web(colors[0], colors[1], colors[2]));
  }

  for (int k = 0; k < 3; ++k) {
    Web w = random_closed_web(rank, rng, 2 + (int)(rng() % 2));
    auto slices = slice_web(w);
    Web rebuilt = identity_web(rank, w.source);
    for (const Web& l : slices) rebuilt = compose_webs(l, rebuilt);
    rep.add("slicer.rebuild." + std::to_string(k), rebuilt == w);
    MorTerm img = fs.web_image(w);
    rep.add("image.degree." + std::to_string(k), img.degree() == 0);
    Word w1 = functor_word(rank, w.source);
    TensorElement ones =
        TensorElement::pure(w1, std::vector<Poly>(w1.size(), Poly(1)));
    rep.add("closed.value." + std::to_string(k),
            img.apply(ones) == ones * QRational(evaluate_closed(w)));
    if (k == 0) split_check("functoriality.closed", w);
  }

  return rep;
}

}  // namespace qsatake
