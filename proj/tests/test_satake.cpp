#include "doctest.h"

#include <random>
#include <string>
#include <vector>

#include "qsatake/satake.hpp"

using namespace qsatake;

namespace {

const Subset kP = Subset::pair(P::r, P::b);
const Subset kO = Subset::pair(P::r, P::y);
const Subset kG = Subset::pair(P::b, P::y);
const Subset kR = Subset::of(P::r);
const Subset kB = Subset::of(P::b);

TensorElement ones_of(const Word& w) {
  return TensorElement::pure(w, std::vector<Poly>(w.size(), Poly(1)));
}

MorTerm scalar_endo(const Word& w, const QLaurent& c) {
  return MorTerm::identity(w).then(MorTerm::box(w, 0, Poly(QRational(c))));
}

Web compose_slices(const Web& w) {
  Web out = identity_web(w.rank, w.source);
  for (const Web& layer : slice_web(w)) out = compose_webs(layer, out);
  return out;
}

// A single closed two-sided face between two vertices, floating.
Web closed_theta(Subset a, Subset b, Subset inner) {
  Web mid = tensor_webs(bigon_web(a, b, inner), identity_web(2, {b, a}));
  return compose_webs(cap_web(2, a, b),
                      compose_webs(mid, cup_web(2, a, b)));
}

}  // namespace

TEST_SUITE("satake") {

TEST_CASE("functor words route through shared lower colors") {
  CHECK(functor_word(2, {kO}).to_string() == "o");
  CHECK(functor_word(2, {kO, kG}).to_string() == "oyg");
  CHECK(functor_word(2, {kO, kG, kP, kO}).to_string() == "oygbpro");
  CHECK(functor_word(1, {kR, kB}).to_string() == "r0b");
  CHECK(functor_word(1, {kB}).to_string() == "b");
  CHECK_THROWS_AS(functor_word(2, {kO, kO}), UsageError);
  CHECK_THROWS_AS(functor_word(2, {}), UsageError);
  CHECK_THROWS_AS(functor_word(1, {kO}), UsageError);
}

TEST_CASE("generator images have degree zero and matching boundaries") {
  FunctorSpec f1(1), f2(2);
  for (Subset s : web_colors(1))
    for (Subset t : web_colors(1)) {
      if (s == t) continue;
      MorTerm cup = f1.cup_image(s, t), cap = f1.cap_image(s, t);
      CHECK(cup.degree() == 0);
      CHECK(cap.degree() == 0);
      CHECK(cup.source() == functor_word(1, {s}));
      CHECK(cup.target() == functor_word(1, {s, t, s}));
    }
  for (Subset s0 : web_colors(2))
    for (Subset s1 : web_colors(2)) {
      if (s0 == s1) continue;
      Subset s2 = web_colors(2)[0] != s0 && web_colors(2)[0] != s1
                      ? web_colors(2)[0]
                      : (web_colors(2)[1] != s0 && web_colors(2)[1] != s1
                             ? web_colors(2)[1]
                             : web_colors(2)[2]);
      MorTerm down = f2.trivalent_down_image(s0, s1, s2);
      MorTerm up = f2.trivalent_up_image(s0, s1, s2);
      CHECK(down.degree() == 0);
      CHECK(up.degree() == 0);
      CHECK(down.source() == functor_word(2, {s0, s1, s2, s0}));
      CHECK(down.target() == functor_word(2, {s0}));
      CHECK(up.source() == functor_word(2, {s0}));
      CHECK(up.target() == functor_word(2, {s0, s1, s2, s0}));
    }
}

TEST_CASE("cup then cap gives the circle scalar") {
  FunctorSpec f1(1), f2(2);
  Word wr = functor_word(1, {kR});
  CHECK(maps_equal(f1.cup_image(kR, kB).then(f1.cap_image(kR, kB)),
                   scalar_endo(wr, -quantum_int(2)), 8));
  Word wp = functor_word(2, {kP});
  CHECK(maps_equal(f2.cup_image(kP, kO).then(f2.cap_image(kP, kO)),
                   scalar_endo(wp, quantum_int(3)), 8));
}

TEST_CASE("slices compose to the original web") {
  std::vector<Web> fixtures = {
      identity_web(2, {kO, kG, kO}),
      cup_web(2, kO, kG),
      cap_web(1, kR, kB),
      trivalent_web({kO, kG, kP, kO}),
      trivalent_web_up({kP, kG, kO, kP}),
      bigon_web(kO, kG, kP),
      square_web(kO, kG, kP),
      compose_webs(cap_web(2, kP, kG), cup_web(2, kP, kG)),
      closed_theta(kO, kG, kP),
  };
  for (const Web& w : fixtures) CHECK(compose_slices(w) == w);

  std::mt19937_64 rng(4);
  for (int k = 0; k < 8; ++k) {
    Web w2 = random_web(2, rng, 3 + (int)(rng() % 4));
    CHECK(compose_slices(w2) == w2);
    Web w1 = random_web(1, rng, 3 + (int)(rng() % 4));
    CHECK(compose_slices(w1) == w1);
  }
  for (int k = 0; k < 4; ++k) {
    Web w2 = random_closed_web(2, rng, 2 + (int)(rng() % 3));
    CHECK(compose_slices(w2) == w2);
    Web w1 = random_closed_web(1, rng, 2 + (int)(rng() % 3));
    CHECK(compose_slices(w1) == w1);
  }
}

TEST_CASE("calibration is solvable, idempotent, and unit") {
  Calibration c = calibrate_trivalent();
  CHECK(c.is_unit());
  CHECK(calibrate_trivalent() == c);
}

TEST_CASE("functor images transport the defining relations") {
  const FunctorSpec& f2 = FunctorSpec::get(2);
  const FunctorSpec& f1 = FunctorSpec::get(1);

  Web circle1 = compose_webs(cap_web(1, kB, kR), cup_web(1, kB, kR));
  CHECK(maps_equal(f1.web_image(circle1),
                   scalar_endo(functor_word(1, {kB}), -quantum_int(2)), 8));

  Web circle2 = compose_webs(cap_web(2, kG, kP), cup_web(2, kG, kP));
  CHECK(maps_equal(f2.web_image(circle2),
                   scalar_endo(functor_word(2, {kG}), quantum_int(3)), 8));

  CHECK(maps_equal(
      f2.web_image(bigon_web(kO, kG, kP)),
      f2.identity_image({kO, kG})
          .then(MorTerm::box(functor_word(2, {kO, kG}), 0,
                             Poly(QRational(-quantum_int(2))))),
      8));

  Web sq = square_web(kP, kG, kO);
  Web turnback = compose_webs(cup_web(2, kP, kG), cap_web(2, kP, kG));
  MorTerm rhs = MorTerm::sum(
      {f2.identity_image({kP, kG, kP}), f2.web_image(turnback)});
  CHECK(maps_equal(f2.web_image(sq), rhs, 8));
}

TEST_CASE("functor image is linear over web combinations") {
  const FunctorSpec& f2 = FunctorSpec::get(2);
  Web id3 = identity_web(2, {kO, kG, kO});
  Web turnback = compose_webs(cup_web(2, kO, kG), cap_web(2, kO, kG));
  WebCombo combo = WebCombo::of(id3, QLaurent::q_power(2, 1)) +
                   WebCombo::of(turnback, -quantum_int(2));
  MorTerm got = functor_image(combo);
  MorTerm want = MorTerm::sum(
      {f2.web_image(id3).then(MorTerm::box(functor_word(2, {kO, kG, kO}), 0,
                                           Poly(QRational(QLaurent::q_power(2, 1))))),
       f2.web_image(turnback)
           .then(MorTerm::box(functor_word(2, {kO, kG, kO}), 0,
                              Poly(QRational(-quantum_int(2)))))});
  CHECK(maps_equal(got, want, 8));

  WebCombo empty(2, {kO}, {kO});
  MorTerm z = functor_image(empty);
  Word w1 = functor_word(2, {kO});
  CHECK(z.apply(ones_of(w1)).is_zero());
}

TEST_CASE("closed web images match closed evaluations") {
  const FunctorSpec& f2 = FunctorSpec::get(2);
  const FunctorSpec& f1 = FunctorSpec::get(1);

  Web theta = closed_theta(kO, kG, kP);
  Word wo = functor_word(2, {kO});
  CHECK(f2.web_image(theta).apply(ones_of(wo)) ==
        ones_of(wo) * QRational(evaluate_closed(theta)));

  std::mt19937_64 rng(11);
  for (int k = 0; k < 6; ++k) {
    Web w = random_closed_web(2, rng, 2 + (int)(rng() % 3));
    Word ww = functor_word(2, w.source);
    CHECK(f2.web_image(w).apply(ones_of(ww)) ==
          ones_of(ww) * QRational(evaluate_closed(w)));
  }
  for (int k = 0; k < 3; ++k) {
    Web w = random_closed_web(1, rng, 2 + (int)(rng() % 3));
    Word ww = functor_word(1, w.source);
    CHECK(f1.web_image(w).apply(ones_of(ww)) ==
          ones_of(ww) * QRational(evaluate_closed(w)));
  }
}

TEST_CASE("invalid inputs are rejected") {
  CHECK_THROWS_AS(FunctorSpec bad(3), UsageError);
  FunctorSpec f1(1);
  CHECK_THROWS_AS(f1.trivalent_down_image(kO, kG, kP), UsageError);
  CHECK_THROWS_AS(f1.web_image(cup_web(2, kO, kG)), UsageError);

  Web junk;
  junk.rank = 2;
  junk.source = {kP};
  junk.target = {kP};
  junk.loops = {{kO, kG}};
  CHECK_THROWS_AS(slice_web(junk), UsageError);
}

TEST_CASE("verification suite passes") {
  for (int rank : {1, 2}) {
    Report rep = verify_functor(rank, 8, 20260823);
    for (const CheckResult& c : rep.checks)
      if (!c.pass) MESSAGE(c.name << ": " << c.witness);
    CHECK(rep.all_pass());
  }
}

}  // TEST_SUITE
