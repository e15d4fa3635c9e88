#include "doctest.h"

#include "qsatake/bimodcalc.hpp"

using namespace qsatake;

TEST_SUITE_BEGIN("bimodcalc");

namespace {
Subset S(const char* n) { return *Subset::from_name(n); }
Word W(int rank, const char* text) { return *Word::parse(rank, text); }
}  // namespace

TEST_CASE("word validation and parsing") {
  Word w = W(2, "0b0");
  CHECK(w.size() == 3);
  CHECK(w.at(1) == S("b"));
  CHECK(w.link(0) == S("b"));
  CHECK(w.step_up(0));
  CHECK(!w.step_up(1));
  CHECK(w.to_string() == "0b0");

  CHECK(Word::parse(2, "bp") .has_value());
  CHECK(Word::parse(2, "0bgyo").has_value());
  CHECK(!Word::parse(2, "br").has_value());   // not nested
  CHECK(!Word::parse(2, "0p").has_value());   // size jumps by two
  CHECK(!Word::parse(1, "by").has_value());   // not a rank-1 label
  CHECK(!Word::parse(2, "").has_value());
  CHECK_THROWS_AS(validate_word(2, {S("b"), S("o")}), UsageError);

  Word left = W(2, "bp"), right = W(2, "pr0");
  CHECK(left.glued(right) == W(2, "bpr0"));
  CHECK_THROWS_AS(right.glued(left), UsageError);
}

TEST_CASE("pure tensors and straightening") {
  Word w = W(2, "0b0");
  Poly ab = Poly::alpha(P::b), ar = Poly::alpha(P::r), ay = Poly::alpha(P::y);

  CHECK_THROWS_AS(TensorElement::pure(w, {Poly(1), ar, Poly(1)}), UsageError);
  CHECK_THROWS_AS(TensorElement::pure(w, {Poly(1), Poly(1)}), UsageError);

  TensorElement x = TensorElement::pure(w, {ar + ab, Poly(1), ay});
  CHECK(!x.is_zero());
  CHECK(x.canonical().size() <= 2);

  // Sliding an invariant factor across a wall fixes the element.
  const auto& re = Realization::get(2);
  Poly inv = re.graded_basis(S("b"), 2)[0];
  TensorElement a = TensorElement::pure(w, {inv, Poly(1), Poly(1)});
  TensorElement b = TensorElement::pure(w, {Poly(1), inv, Poly(1)});
  TensorElement c = TensorElement::pure(w, {Poly(1), Poly(1), inv});
  CHECK(a == b);
  CHECK(b == c);

  // Straightening respects addition and scalars.
  TensorElement s1 = a + x;
  TensorElement s2 = x + c;
  CHECK(s1 == s2);
  CHECK((x * QRational(2)) + (x * QRational(-2)) == TensorElement::zero(w));

  // The canonical form is reproduced by rebuilding from its own data.
  TensorElement rebuilt = TensorElement::zero(w);
  const auto& cube = FrobeniusCube::get(2);
  const auto& db = cube.dual_bases(S("0"), S("b"));
  for (const auto& [tuple, g] : x.canonical()) {
    std::vector<Poly> slots = {db.basis[tuple[0]], Poly(1), g};
    rebuilt = rebuilt + TensorElement::pure(w, slots);
  }
  CHECK(rebuilt == x);
}

TEST_CASE("graded pieces") {
  CHECK(graded_piece(W(2, "0b0"), 0).size() == 1);
  CHECK(graded_piece(W(2, "0b0"), 2).size() == 4);
  CHECK(graded_piece(W(2, "0b0"), 1).empty());
  CHECK(graded_piece(W(2, "b"), 2).size() == 2);
  CHECK(graded_piece(W(1, "b0b"), 2).size() == 2);
  CHECK_THROWS_AS(graded_piece(W(2, "0b0"), 14), UsageError);

  for (const TensorElement& e : graded_piece(W(2, "b0b"), 4)) {
    REQUIRE(e.canonical().size() == 1);
    const auto& [tuple, g] = *e.canonical().begin();
    CHECK(tuple.size() == 2);
    CHECK(g.is_homogeneous());
  }
}

TEST_CASE("bimodule generators") {
  auto single = bimodule_generators(W(2, "b"));
  REQUIRE(single.size() == 1);
  CHECK(single[0] == TensorElement::pure(W(2, "b"), {Poly(1)}));

  auto split = bimodule_generators(W(2, "0b0"));
  REQUIRE(split.size() == 1);
  CHECK(split[0].canonical().begin()->second == Poly(1));

  for (int rank : {1, 2}) {
    auto two = bimodule_generators(W(rank, "b0b"));
    REQUIRE(two.size() == 2);
    CHECK(two[0].canonical().begin()->first == std::vector<int>{0, 0});
    // The second generator sits in degree 2.
    int d = 0;
    for (const auto& [tuple, g] : two[1].canonical()) d = g.degree();
    CHECK(d <= 2);
  }

  // The cutoff guards the search bound.
  CHECK_THROWS_AS(bimodule_generators(W(2, "o"), -1), UsageError);
}

TEST_CASE("generator evaluation") {
  const auto& re = Realization::get(2);
  const auto& cube = FrobeniusCube::get(2);
  Word w0 = W(2, "0"), wb = W(2, "b");
  Poly ab = Poly::alpha(P::b), ay = Poly::alpha(P::y);

  // Clockwise circle: comultiply then multiply picks up the simple root.
  MorTerm circle = MorTerm::comult(w0, 0, S("b"))
                       .then(MorTerm::mult(W(2, "0b0"), 0));
  TensorElement one0 = TensorElement::pure(w0, {Poly(1)});
  CHECK(circle.apply(one0) == TensorElement::pure(w0, {ab}));
  CHECK(circle.degree() == 2);

  // Boxed circle above a singleton wall computes the Demazure image.
  Poly f = ay * ay + ab;
  Word expanded = MorTerm::unit(wb, 0, S("0")).target();
  MorTerm dem = MorTerm::unit(wb, 0, S("0"))
                    .then(MorTerm::box(expanded, 1, ay * ay))
                    .then(MorTerm::trace_cap(expanded, 0));
  TensorElement oneb = TensorElement::pure(wb, {Poly(1)});
  CHECK(dem.apply(oneb) ==
        TensorElement::pure(wb, {re.demazure(P::b, ay * ay)}));

  // Unit and trace against a doubleton wall.
  Word wp = W(2, "p");
  Word pbp = MorTerm::unit(wp, 0, S("b")).target();
  CHECK(pbp == W(2, "pbp"));
  MorTerm tr = MorTerm::unit(wp, 0, S("b"))
                   .then(MorTerm::box(pbp, 1, cube.mu(S("b"), S("p"))))
                   .then(MorTerm::trace_cap(pbp, 0));
  CHECK(tr.apply(TensorElement::pure(wp, {Poly(1)})) ==
        TensorElement::pure(wp, {Poly(cube.module_rank(S("b"), S("p")))}));

  // Crossings rewrite the middle color without changing the element.
  Word cross_w = W(2, "0bp");
  MorTerm cr = MorTerm::crossing(cross_w, 0, P::r);
  TensorElement t = TensorElement::pure(cross_w, {ab, Poly(1), Poly(1)});
  TensorElement u = cr.apply(t);
  CHECK(u.word() == W(2, "0rp"));
  CHECK(MorTerm::crossing(W(2, "0rp"), 0, P::b).apply(u).canonical() ==
        t.canonical());
}

TEST_CASE("term validation") {
  Word w = W(2, "0b0");
  CHECK_THROWS_AS(MorTerm::box(w, 3, Poly(1)), UsageError);
  CHECK_THROWS_AS(MorTerm::box(w, 0, Poly()), UsageError);
  CHECK_THROWS_AS(MorTerm::box(w, 1, Poly::alpha(P::r)), UsageError);
  CHECK_THROWS_AS(
      MorTerm::box(w, 0, Poly(1) + Poly::alpha(P::r)), UsageError);
  CHECK_THROWS_AS(MorTerm::unit(w, 1, S("r")), UsageError);
  CHECK_THROWS_AS(MorTerm::trace_cap(W(2, "0b0"), 1), UsageError);
  CHECK_THROWS_AS(MorTerm::mult(W(2, "b0b"), 0), UsageError);
  CHECK_THROWS_AS(MorTerm::comult(w, 1, S("o")), UsageError);
  CHECK_THROWS_AS(MorTerm::crossing(W(2, "0b0"), 0, P::r), UsageError);
  CHECK_THROWS_AS(MorTerm::crossing(W(2, "0bg"), 0, P::r), UsageError);
  CHECK_THROWS_AS(
      MorTerm::vertical(MorTerm::identity(w), MorTerm::identity(W(2, "b"))),
      UsageError);
  CHECK_THROWS_AS(
      MorTerm::sum(
          {MorTerm::identity(w), MorTerm::box(w, 0, Poly::alpha(P::b))}),
      UsageError);
  CHECK_THROWS_AS(MorTerm::zero(w, W(2, "b"), 0), UsageError);

  MorTerm id = MorTerm::identity(w);
  CHECK(id.degree() == 0);
  CHECK(MorTerm::unit(w, 1, S("0")).degree() == -1);
  CHECK(MorTerm::comult(W(2, "b"), 0, S("g")).degree() == 2);
}

TEST_CASE("maps_equal basics") {
  Word w = W(2, "0b0");
  MorTerm id = MorTerm::identity(w);
  CHECK(maps_equal(id, id));
  CHECK_THROWS_AS(maps_equal(id, MorTerm::identity(W(2, "0r0"))), UsageError);

  // Same boundary, different degree: unequal without evaluation.
  CHECK(!maps_equal(id, MorTerm::box(w, 0, Poly::alpha(P::b))));

  // A box by zero cannot be built; the zero map stands in for it.
  CHECK(maps_equal(MorTerm::zero(w, w, 2),
                   MorTerm::sum({MorTerm::box(w, 0, Poly::alpha(P::b)),
                                 MorTerm::box(w, 0, -Poly::alpha(P::b))})));

  // Boxes on the two sides of an invariant wall agree as maps.
  const auto& re = Realization::get(2);
  Poly inv = re.graded_basis(S("b"), 2)[1];
  CHECK(maps_equal(MorTerm::box(w, 0, inv), MorTerm::box(w, 1, inv)));
  CHECK(maps_equal(MorTerm::box(w, 1, inv), MorTerm::box(w, 2, inv)));
  // A non-invariant slide fails.
  CHECK(!maps_equal(MorTerm::box(w, 0, Poly::alpha(P::r)),
                    MorTerm::box(w, 2, Poly::alpha(P::r))));
}

TEST_CASE("horizontal composition and interchange") {
  Word wb = W(2, "b"), w0 = W(2, "0");
  Poly ab = Poly::alpha(P::b);
  const auto& re = Realization::get(2);
  Poly inv = re.graded_basis(S("b"), 2)[0];

  // Tensoring boxes equals boxing the glued word at shifted positions.
  Word bb = W(2, "b0b");
  MorTerm lhs = MorTerm::horizontal(
      MorTerm::box(W(2, "b0"), 0, inv), MorTerm::box(W(2, "0b"), 1, inv));
  MorTerm rhs = MorTerm::box(bb, 0, inv).then(MorTerm::box(bb, 2, inv));
  CHECK(maps_equal(lhs, rhs));

  // Interchange: compose-then-tensor equals tensor-then-compose.
  MorTerm a1 = MorTerm::unit(W(2, "b0"), 0, S("0"));
  MorTerm a2 = MorTerm::trace_cap(a1.target(), 0);
  MorTerm b1 = MorTerm::comult(W(2, "0b"), 0, S("b"));
  MorTerm b2 = MorTerm::mult(b1.target(), 0);
  MorTerm t1 = MorTerm::horizontal(a1.then(a2), b1.then(b2));
  MorTerm t2 = MorTerm::horizontal(a1, b1).then(MorTerm::horizontal(a2, b2));
  CHECK(maps_equal(t1, t2));

  // Whiskering with identities is transparent.
  MorTerm boxed = MorTerm::box(w0, 0, ab * ab);
  MorTerm wh = MorTerm::horizontal(MorTerm::identity(W(2, "b0")), boxed);
  CHECK(maps_equal(wh, MorTerm::box(W(2, "b0"), 1, ab * ab)));
}

TEST_CASE("evaluated slots stay invariant") {
  const auto& re = Realization::get(2);
  Word w = W(2, "b0r");
  MorTerm up = MorTerm::comult(w, 2, S("p"))
                   .then(MorTerm::crossing(W(2, "b0rpr"), 1, P::b))
                   .then(MorTerm::trace_cap(W(2, "b0bpr"), 0));
  CHECK(up.target() == W(2, "bpr"));
  CHECK(up.degree() == 1);
  for (const TensorElement& g : bimodule_generators(w)) {
    TensorElement out = up.apply(g);
    for (const auto& slots : out.terms())
      for (size_t i = 0; i < slots.size(); ++i)
        CHECK(re.is_invariant(out.word().at(i), slots[i]));
  }
}

TEST_CASE("splitting idempotents") {
  for (int rank : {1, 2}) {
    auto es = splitting_idempotents(rank, P::b);
    REQUIRE(es.size() == 2);
    Word w = es[0].source();
    CHECK(w == W(rank, "b0b"));
    for (const MorTerm& e : es) CHECK(e.degree() == 0);
    CHECK(maps_equal(es[0].then(es[0]), es[0]));
    CHECK(maps_equal(es[1].then(es[1]), es[1]));
    CHECK(maps_equal(es[0].then(es[1]), MorTerm::zero(w, w, 0)));
    CHECK(maps_equal(es[1].then(es[0]), MorTerm::zero(w, w, 0)));
    CHECK(maps_equal(MorTerm::sum(es), MorTerm::identity(w)));
  }
}

TEST_CASE("relation suite passes") {
  for (int rank : {1, 2}) {
    Report rep = verify_relations(rank, 8);
    if (!rep.all_pass()) {
      for (const auto& c : rep.checks)
        if (!c.pass) MESSAGE(c.name << ": " << c.witness);
    }
    CHECK(rep.all_pass());
    CHECK(rep.checks.size() > (rank == 1 ? 30 : 300));
  }
}

TEST_SUITE_END();
