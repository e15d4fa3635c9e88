#include "doctest.h"

#include "qsatake/polyring.hpp"

#include <random>

using namespace qsatake;

TEST_SUITE_BEGIN("polyring");

namespace {

const QRational kq = QRational(QLaurent::q_power(1));
const QRational kqi = QRational(QLaurent::q_power(-1));

Poly random_poly(const Realization& re, std::mt19937& rng, int max_deg = 3) {
  std::uniform_int_distribution<int> terms(1, 4), ex(0, max_deg), co(-4, 4);
  Poly f;
  int n = terms(rng);
  for (int i = 0; i < n; ++i) {
    Exp e = {0, 0, 0};
    for (int v = 0; v < re.var_count(); ++v) e[v] = ex(rng);
    f += Poly::monomial(e, QRational(co(rng)));
  }
  return f;
}

}  // namespace

TEST_CASE("subset names and lengths") {
  CHECK(Subset::empty().name() == "0");
  CHECK(Subset::of(P::b).name() == "b");
  CHECK(Subset::pair(P::r, P::b).name() == "p");
  CHECK(Subset::pair(P::b, P::y).name() == "g");
  CHECK(Subset::pair(P::r, P::y).name() == "o");
  for (const char* n : {"0", "b", "r", "y", "p", "g", "o"}) {
    auto s = Subset::from_name(n);
    REQUIRE(s.has_value());
    CHECK(s->name() == n);
  }
  CHECK(!Subset::from_name("x").has_value());
  CHECK(!Subset::from_name("").has_value());

  CHECK(ell(Subset::empty()) == 0);
  CHECK(ell(Subset::of(P::y)) == 1);
  CHECK(ell(Subset::pair(P::r, P::b)) == 3);
}

TEST_CASE("color rotation") {
  CHECK(rotate_primary(P::b) == P::r);
  CHECK(rotate_primary(P::r) == P::y);
  CHECK(rotate_primary(P::y) == P::b);
  auto p = Subset::pair(P::r, P::b), g = Subset::pair(P::b, P::y),
       o = Subset::pair(P::r, P::y);
  CHECK(rotate_subset(p) == o);
  CHECK(rotate_subset(o) == g);
  CHECK(rotate_subset(g) == p);
  CHECK(rotate_subset(Subset::empty()) == Subset::empty());
}

TEST_CASE("reflection action, three primaries") {
  const auto& re = Realization::get(2);
  Poly ab = Poly::alpha(P::b), ar = Poly::alpha(P::r), ay = Poly::alpha(P::y);

  CHECK(re.reflect(P::b, ab) == -ab);
  CHECK(re.reflect(P::b, ar) == ar + ab);
  CHECK(re.reflect(P::b, ay) == ay + ab * kqi);
  CHECK(re.reflect(P::r, ab) == ab + ar);
  CHECK(re.reflect(P::r, ar) == -ar);
  CHECK(re.reflect(P::r, ay) == ay + ar * kq);
  CHECK(re.reflect(P::y, ab) == ab + ay * kq);
  CHECK(re.reflect(P::y, ar) == ar + ay * kqi);
  CHECK(re.reflect(P::y, ay) == -ay);
}

TEST_CASE("reflection action, two primaries") {
  const auto& re = Realization::get(1);
  Poly ab = Poly::alpha(P::b), ar = Poly::alpha(P::r);
  QRational two = QRational(quantum_int(2));
  CHECK(re.reflect(P::b, ab) == -ab);
  CHECK(re.reflect(P::b, ar) == ar + ab * two);
  CHECK(re.reflect(P::r, ar) == -ar);
  CHECK(re.reflect(P::r, ab) == ab + ar * two);
}

TEST_CASE("cartan entries match the action") {
  for (int rank : {1, 2}) {
    const auto& re = Realization::get(rank);
    for (P s : re.primaries()) {
      for (P t : re.primaries()) {
        Poly expect = Poly::alpha(t) -
                      Poly::alpha(s) * QRational(re.cartan(s, t));
        CHECK(re.reflect(s, Poly::alpha(t)) == expect);
      }
      CHECK(re.cartan(s, s) == QLaurent(2));
    }
  }
  const auto& re = Realization::get(2);
  CHECK(re.cartan(P::b, P::y) == -QLaurent::q_power(-1));
  CHECK(re.cartan(P::y, P::b) == -QLaurent::q_power(1));
  CHECK(re.cartan(P::r, P::y) == -QLaurent::q_power(1));
  CHECK(re.cartan(P::y, P::r) == -QLaurent::q_power(-1));
  CHECK(re.cartan(P::b, P::r) == QLaurent(-1));
  CHECK(re.cartan(P::r, P::b) == QLaurent(-1));
}

TEST_CASE("reflections are ring involutions") {
  std::mt19937 rng(23);
  for (int rank : {1, 2}) {
    const auto& re = Realization::get(rank);
    for (int i = 0; i < 20; ++i) {
      Poly f = random_poly(re, rng), g = random_poly(re, rng);
      for (P s : re.primaries()) {
        CHECK(re.reflect(s, re.reflect(s, f)) == f);
        CHECK(re.reflect(s, f * g) == re.reflect(s, f) * re.reflect(s, g));
      }
    }
  }
}

TEST_CASE("braid relations for the action") {
  std::mt19937 rng(29);
  const auto& re = Realization::get(2);
  const std::vector<std::pair<std::vector<P>, std::vector<P>>> pairs = {
      {{P::b, P::r, P::b}, {P::r, P::b, P::r}},
      {{P::b, P::y, P::b}, {P::y, P::b, P::y}},
      {{P::r, P::y, P::r}, {P::y, P::r, P::y}},
  };
  for (int i = 0; i < 10; ++i) {
    Poly f = random_poly(re, rng);
    for (const auto& [lhs, rhs] : pairs)
      CHECK(re.act_word(lhs, f) == re.act_word(rhs, f));
  }
  const auto& r1 = Realization::get(1);
  // Two primaries: only the involution relations; sb*sr has infinite order.
  Poly g = Poly::alpha(P::r) * Poly::alpha(P::b);
  Poly h = r1.act_word({P::b, P::r}, g);
  CHECK(h != g);
}

TEST_CASE("demazure operators") {
  const auto& re = Realization::get(2);
  Poly ab = Poly::alpha(P::b), ar = Poly::alpha(P::r), ay = Poly::alpha(P::y);

  CHECK(re.demazure(P::b, ab) == Poly(2));
  CHECK(re.demazure(P::y, ab) == Poly(-kq));
  CHECK(re.demazure(P::b, ay) == Poly(-kqi));
  CHECK(re.demazure(P::r, ab) == Poly(-1));
  CHECK(re.demazure(P::b, Poly(1)).is_zero());
  CHECK(re.demazure(P::b, ab * ab).is_zero());
  CHECK(re.demazure(P::r, ar * ar).is_zero());

  std::mt19937 rng(31);
  for (int rank : {1, 2}) {
    const auto& rr = Realization::get(rank);
    for (int i = 0; i < 15; ++i) {
      Poly f = random_poly(rr, rng), g = random_poly(rr, rng);
      for (P s : rr.primaries()) {
        Poly df = rr.demazure(s, f);
        // Image is invariant; the operator is a twisted derivation
        // and kills its own image.
        CHECK(rr.is_invariant(Subset::of(s), df));
        CHECK(rr.demazure(s, df).is_zero());
        CHECK(rr.demazure(s, f * g) ==
              df * g + rr.reflect(s, f) * rr.demazure(s, g));
      }
    }
  }
}

TEST_CASE("demazure braid scalars") {
  const auto& re = Realization::get(2);
  auto chain = [&](std::initializer_list<P> ops, const Poly& f) {
    Poly g = f;
    for (auto it = std::rbegin(ops); it != std::rend(ops); ++it)
      g = re.demazure(*it, g);
    return g;
  };
  std::mt19937 rng(37);
  for (int i = 0; i < 12; ++i) {
    Poly f = random_poly(re, rng);
    CHECK(chain({P::b, P::r, P::b}, f) == chain({P::r, P::b, P::r}, f));
    CHECK(chain({P::b, P::y, P::b}, f) * kq == chain({P::y, P::b, P::y}, f));
    CHECK(chain({P::r, P::y, P::r}, f) * kqi == chain({P::y, P::r, P::y}, f));
  }
}

TEST_CASE("graded basis dimensions, three primaries") {
  const auto& re = Realization::get(2);
  auto dim = [&](const char* n, int d) {
    return static_cast<int>(re.graded_basis(*Subset::from_name(n), d).size());
  };
  CHECK(dim("0", 0) == 1);
  CHECK(dim("0", 2) == 3);
  CHECK(dim("0", 4) == 6);
  CHECK(dim("0", 6) == 10);
  CHECK(dim("b", 2) == 2);
  CHECK(dim("b", 4) == 4);
  CHECK(dim("p", 2) == 1);
  CHECK(dim("p", 4) == 2);
  CHECK(dim("g", 2) == 1);
  CHECK(dim("o", 2) == 1);
  CHECK_THROWS_AS(re.graded_basis(Subset::of(P::b), 1), UsageError);

  // Freeness over the invariant subrings predicts graded dimensions:
  // R over R^s has ranks in degrees {0,2}; R over R^{s,t} in
  // {0,2,2,4,4,6}; R^s over R^{s,t} in {0,2,4}.
  for (int d = 0; d <= 8; d += 2) {
    CHECK(dim("0", d) == dim("b", d) + (d >= 2 ? dim("b", d - 2) : 0));
    int lhs = dim("0", d);
    int rhs = dim("p", d);
    if (d >= 2) rhs += 2 * dim("p", d - 2);
    if (d >= 4) rhs += 2 * dim("p", d - 4);
    if (d >= 6) rhs += dim("p", d - 6);
    CHECK(lhs == rhs);
    int mid = dim("b", d);
    int low = dim("p", d) + (d >= 2 ? dim("p", d - 2) : 0) +
              (d >= 4 ? dim("p", d - 4) : 0);
    CHECK(mid == low);
  }
}

TEST_CASE("graded basis dimensions, two primaries") {
  const auto& re = Realization::get(1);
  auto dim = [&](const char* n, int d) {
    return static_cast<int>(re.graded_basis(*Subset::from_name(n), d).size());
  };
  CHECK(dim("0", 2) == 2);
  CHECK(dim("0", 4) == 3);
  CHECK(dim("b", 2) == 1);
  CHECK(dim("r", 2) == 1);
  for (int d = 0; d <= 8; d += 2)
    CHECK(dim("0", d) == dim("b", d) + (d >= 2 ? dim("b", d - 2) : 0));
}

TEST_CASE("graded basis elements are invariant and homogeneous") {
  for (int rank : {1, 2}) {
    const auto& re = Realization::get(rank);
    for (Subset I : re.subsets()) {
      for (int d = 0; d <= 6; d += 2) {
        for (const Poly& f : re.graded_basis(I, d)) {
          CHECK(re.is_invariant(I, f));
          CHECK(f.is_homogeneous());
          CHECK(f.degree() == d);
          CHECK(f.uses_only(re.var_count()));
        }
      }
    }
  }
}

TEST_CASE("polynomial printing and parsing") {
  Poly f = Poly::alpha(P::r) * Poly::alpha(P::r) +
           Poly::alpha(P::b) * QRational(quantum_int(2)) - Poly(3);
  auto back = Poly::parse(f.to_string());
  REQUIRE(back.has_value());
  CHECK(*back == f);

  auto g = Poly::parse("a_b^2*a_y - q^-1*a_r");
  REQUIRE(g.has_value());
  Poly expect = Poly::alpha(P::b) * Poly::alpha(P::b) * Poly::alpha(P::y) -
                Poly::alpha(P::r) * kqi;
  CHECK(*g == expect);
  CHECK(!Poly::parse("a_z").has_value());
  CHECK(!Poly::parse("a_b +").has_value());

  std::mt19937 rng(41);
  const auto& re = Realization::get(2);
  for (int i = 0; i < 30; ++i) {
    Poly h = random_poly(re, rng);
    auto rb = Poly::parse(h.to_string());
    REQUIRE(rb.has_value());
    CHECK(*rb == h);
  }
}

TEST_CASE("homogeneous components and exact division") {
  Poly f = Poly::alpha(P::b) * Poly::alpha(P::b) + Poly::alpha(P::r) + Poly(5);
  CHECK(!f.is_homogeneous());
  CHECK(f.homogeneous_component(4) == Poly::alpha(P::b) * Poly::alpha(P::b));
  CHECK(f.homogeneous_component(2) == Poly::alpha(P::r));
  CHECK(f.homogeneous_component(0) == Poly(5));
  CHECK(f.homogeneous_component(6).is_zero());

  Poly g = Poly::alpha(P::b) * Poly::alpha(P::r);
  CHECK(g.shift_down(P::b) == Poly::alpha(P::r));
  CHECK_THROWS_AS(f.shift_down(P::b), UsageError);
}

TEST_SUITE_END();
