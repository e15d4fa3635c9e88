#include "doctest.h"

#include "qsatake/frobhypercube.hpp"

using namespace qsatake;

TEST_SUITE_BEGIN("frobhypercube");

namespace {
const QRational kq = QRational(QLaurent::q_power(1));
Subset S(const char* n) { return *Subset::from_name(n); }
}  // namespace

TEST_CASE("root tables") {
  const auto& cube = FrobeniusCube::get(2);
  Poly ab = Poly::alpha(P::b), ar = Poly::alpha(P::r), ay = Poly::alpha(P::y);

  CHECK(cube.roots(S("0")).empty());
  CHECK(cube.roots(S("b")) == std::vector<Poly>{ab});

  auto p = cube.roots(S("p"));
  REQUIRE(p.size() == 3);
  CHECK(p[0] == ab);
  CHECK(p[1] == ar);
  CHECK(p[2] == ar + ab);

  auto g = cube.roots(S("g"));
  REQUIRE(g.size() == 3);
  CHECK(g[0] == ab);
  CHECK(g[1] == ay);
  CHECK(g[2] == ay + ab * kq.inverse());

  auto o = cube.roots(S("o"));
  REQUIRE(o.size() == 3);
  CHECK(o[0] == ar);
  CHECK(o[1] == ay);
  CHECK(o[2] == ay + ar * kq);

  CHECK(cube.nonsimple_root(S("p")) == ar + ab);
  CHECK_THROWS_AS(cube.nonsimple_root(S("b")), UsageError);

  const auto& cube1 = FrobeniusCube::get(1);
  CHECK(cube1.roots(S("r")) == std::vector<Poly>{ar});
}

TEST_CASE("pairing scalars") {
  const auto& cube = FrobeniusCube::get(2);
  CHECK(cube.c(P::r, P::b) == QLaurent(1));
  CHECK(cube.c(P::b, P::r) == QLaurent(1));
  CHECK(cube.c(P::y, P::b) == QLaurent(1));
  CHECK(cube.c(P::y, P::r) == QLaurent(1));
  CHECK(cube.c(P::b, P::y) == QLaurent::q_power(-1));
  CHECK(cube.c(P::r, P::y) == QLaurent::q_power(1));
  CHECK_THROWS_AS(cube.c(P::b, P::b), UsageError);
  CHECK_THROWS_AS(FrobeniusCube::get(1).c(P::b, P::r), UsageError);
}

TEST_CASE("root products") {
  const auto& cube = FrobeniusCube::get(2);
  Poly ab = Poly::alpha(P::b), ar = Poly::alpha(P::r), ay = Poly::alpha(P::y);

  CHECK(cube.mu(S("r"), S("o")) == ay * (ay + ar * kq));
  CHECK(cube.mu(S("p"), S("p")) == Poly(1));
  CHECK(cube.mu(S("0"), S("p")) == ab * ar * (ar + ab));
  CHECK(cube.mu(S("0"), S("y")) == ay);
  CHECK_THROWS_AS(cube.mu(S("p"), S("g")), UsageError);

  for (Subset J : cube.realization().doubletons()) {
    for (P s : J.members()) {
      Subset I = Subset::of(s);
      CHECK(cube.mu(S("0"), J) == cube.mu(S("0"), I) * cube.mu(I, J));
    }
    CHECK(cube.mu(S("0"), J).degree() == 6);
  }
}

TEST_CASE("trace values") {
  const auto& cube = FrobeniusCube::get(2);
  const QRational q2(quantum_int(2)), q3(quantum_int(3));

  CHECK(cube.trace(S("r"), S("p"), cube.mu(S("r"), S("o"))) == Poly(q3));
  CHECK(cube.trace(S("0"), S("y"), cube.nonsimple_root(S("p"))) == Poly(-q2));
  for (Subset I : cube.realization().doubletons())
    for (P s : I.members())
      CHECK(cube.trace(Subset::of(s), I, cube.mu(Subset::of(s), I)) == Poly(3));

  // Degenerate and invalid cases.
  Poly ar = Poly::alpha(P::r);
  CHECK(cube.trace(S("r"), S("r"), ar * ar) == ar * ar);
  CHECK_THROWS_AS(cube.trace(S("r"), S("p"), ar), UsageError);
  CHECK_THROWS_AS(cube.trace(S("p"), S("r"), Poly(1)), UsageError);
}

TEST_CASE("trace words compose through either singleton") {
  const auto& cube = FrobeniusCube::get(2);
  const auto& re = cube.realization();
  for (Subset J : re.doubletons()) {
    for (int d = 0; d <= 8; d += 2) {
      for (const Poly& f : re.graded_basis(Subset::empty(), d)) {
        Poly whole = cube.trace(S("0"), J, f);
        for (P s : J.members()) {
          Subset I = Subset::of(s);
          CHECK(cube.trace(I, J, cube.trace(S("0"), I, f)) == whole);
        }
      }
    }
  }
}

TEST_CASE("extension bookkeeping") {
  const auto& cube = FrobeniusCube::get(2);
  CHECK(cube.module_rank(S("0"), S("b")) == 2);
  CHECK(cube.module_rank(S("y"), S("g")) == 3);
  CHECK(cube.module_rank(S("0"), S("o")) == 6);
  CHECK(cube.extension_degree(S("0"), S("b")) == 2);
  CHECK(cube.extension_degree(S("y"), S("g")) == 4);
  CHECK(cube.extension_degree(S("0"), S("o")) == 6);
  auto ext = cube.extension(S("b"), S("g"));
  CHECK(ext.rank == 3);
  CHECK(ext.degree == 4);
  CHECK(ext.trace.prefactor == QLaurent::q_power(1));
  REQUIRE(ext.trace.word.size() == 2);
  CHECK(ext.trace.word[0] == P::b);
  CHECK(ext.trace.word[1] == P::y);
}

TEST_CASE("dual bases pair to delta") {
  for (int rank : {1, 2}) {
    const auto& cube = FrobeniusCube::get(rank);
    const auto& re = cube.realization();
    for (Subset I : re.subsets())
      for (Subset J : re.subsets()) {
        if (I == J || !I.subset_of(J)) continue;
        for (auto strat : {BasisStrategy::LexLow, BasisStrategy::LexHigh}) {
          const DualBases& db = cube.dual_bases(I, J, strat);
          REQUIRE(static_cast<int>(db.basis.size()) == cube.module_rank(I, J));
          REQUIRE(db.dual.size() == db.basis.size());
          for (size_t i = 0; i < db.basis.size(); ++i)
            for (size_t j = 0; j < db.dual.size(); ++j) {
              Poly got = cube.trace(I, J, db.basis[i] * db.dual[j]);
              CHECK(got == ((i == j) ? Poly(1) : Poly(0)));
            }
          Poly casimir;
          for (size_t i = 0; i < db.basis.size(); ++i)
            casimir += db.basis[i] * db.dual[i];
          CHECK(casimir == cube.mu(I, J));
        }
      }
  }
}

TEST_CASE("dual basis degrees") {
  const auto& cube = FrobeniusCube::get(2);
  auto degrees = [&](Subset I, Subset J) {
    std::vector<int> out;
    for (const Poly& f : cube.dual_bases(I, J).basis) out.push_back(f.degree());
    return out;
  };
  CHECK(degrees(S("0"), S("b")) == std::vector<int>{0, 2});
  CHECK(degrees(S("y"), S("g")) == std::vector<int>{0, 2, 4});
  CHECK(degrees(S("0"), S("p")) == std::vector<int>{0, 2, 2, 4, 4, 6});
}

TEST_CASE("coproduct properties") {
  const auto& cube = FrobeniusCube::get(2);

  // Multiplying the two slots recovers the root product.
  auto cp = cube.coproduct(S("0"), S("b"));
  Poly prod;
  for (const auto& [u, v] : cp) prod += u * v;
  CHECK(prod == Poly::alpha(P::b));

  // Tracing the left slot gives 1 (x) 1.
  auto cp2 = cube.coproduct(S("r"), S("p"));
  Poly left;
  for (const auto& [u, v] : cp2) left += cube.trace(S("r"), S("p"), u) * v;
  CHECK(left == Poly(1));

  // Canonical coordinates of the coproduct over its own basis are the duals.
  const DualBases& db = cube.dual_bases(S("r"), S("p"));
  auto coords = cube.tensor_coordinates(S("r"), S("p"), cp2);
  REQUIRE(coords.size() == db.dual.size());
  for (size_t k = 0; k < coords.size(); ++k) CHECK(coords[k] == db.dual[k]);
}

TEST_CASE("coproduct is basis independent") {
  for (int rank : {1, 2}) {
    const auto& cube = FrobeniusCube::get(rank);
    const auto& re = cube.realization();
    for (Subset I : re.subsets())
      for (Subset J : re.subsets()) {
        if (I == J || !I.subset_of(J)) continue;
        auto lo = cube.tensor_coordinates(
            I, J, cube.coproduct(I, J, BasisStrategy::LexLow));
        auto hi = cube.tensor_coordinates(
            I, J, cube.coproduct(I, J, BasisStrategy::LexHigh));
        CHECK(lo == hi);
      }
  }
  // The two strategies really pick different bases somewhere.
  const auto& cube = FrobeniusCube::get(2);
  CHECK(cube.dual_bases(S("0"), S("b"), BasisStrategy::LexLow).basis !=
        cube.dual_bases(S("0"), S("b"), BasisStrategy::LexHigh).basis);
}

TEST_CASE("verification suite passes") {
  for (int rank : {1, 2}) {
    Report rep = verify_hypercube(rank, 8);
    for (const auto& c : rep.checks) {
      INFO(c.name, ": ", c.witness);
      CHECK(c.pass);
    }
    CHECK(rep.all_pass());
    CHECK(rep.suite == "frobenius");
  }
}

TEST_SUITE_END();
