#include "doctest.h"

#include <utility>
#include <vector>

#include "qsatake/weylrep.hpp"

using namespace qsatake;

TEST_SUITE_BEGIN("weylrep");

TEST_CASE("cartan matrix has the deformed cycle shape") {
  ExoticCartan c1 = cartan_matrix(1);
  CHECK(c1.a.size() == 2);
  CHECK(c1.a.at(0, 0) == QLaurent(2));
  CHECK(c1.a.at(0, 1) == -quantum_int(2));
  CHECK(c1.a.at(1, 0) == -quantum_int(2));

  ExoticCartan c4 = cartan_matrix(4);
  CHECK(c4.a.size() == 5);
  for (int i = 0; i < 5; ++i) CHECK(c4.a.at(i, i) == QLaurent(2));
  for (int i = 0; i + 2 < 5; ++i) {
    CHECK(c4.a.at(i, i + 1) == QLaurent(-1));
    CHECK(c4.a.at(i + 1, i) == QLaurent(-1));
  }
  CHECK(c4.a.at(3, 4) == QLaurent::q_power(1, Rat(-1)));
  CHECK(c4.a.at(4, 3) == QLaurent::q_power(-1, Rat(-1)));
  CHECK(c4.a.at(0, 4) == QLaurent::q_power(-1, Rat(-1)));
  CHECK(c4.a.at(4, 0) == QLaurent::q_power(1, Rat(-1)));
  CHECK(c4.a.at(0, 2).is_zero());
  CHECK(c4.a.at(2, 0).is_zero());
}

TEST_CASE("determinant is 2 - q^2 - q^-2 for every tested rank") {
  QRational want(QLaurent(2) - QLaurent::q_power(2) - QLaurent::q_power(-2));
  for (int n = 1; n <= 6; ++n)
    CHECK(cartan_determinant(cartan_matrix(n)) == want);
}

TEST_CASE("reflection words multiply as expected") {
  ReflRep<QLaurent> g = generic_rep(2);
  CHECK(g.is_identity(g.word_matrix({})));
  for (int i = 0; i <= 2; ++i) CHECK(g.is_identity(g.word_matrix({i, i})));
  CHECK(g.word_matrix({0, 1, 0}) == g.word_matrix({1, 0, 1}));
  CHECK(g.word_matrix({0, 2, 0}) == g.word_matrix({2, 0, 2}));

  ReflRep<QLaurent> g3 = generic_rep(3);
  CHECK(g3.word_matrix({1, 3}) == g3.word_matrix({3, 1}));
  CHECK(translation_word(1) == std::vector<int>{1});
  CHECK(translation_word(3) == std::vector<int>{1, 2, 3, 2, 1});
  CHECK(rotation_word(3) == std::vector<int>{1, 2, 3, 0});
}

TEST_CASE("specialization commutes with matrix products") {
  for (int order : {1, 4, 5, 6}) {
    ReflRep<QLaurent> g = generic_rep(2);
    ReflRep<CycloNumber> h = cyclotomic_rep(2, order);
    std::vector<int> word = {0, 1, 2, 1, 0, 2};
    SquareMatrix<QLaurent> gm = g.word_matrix(word);
    SquareMatrix<CycloNumber> direct = h.word_matrix(word);
    SquareMatrix<CycloNumber> specialized(gm.size(), CycloNumber(order));
    for (int i = 0; i < gm.size(); ++i)
      for (int j = 0; j < gm.size(); ++j)
        specialized.at(i, j) = specialize_cyclotomic(gm.at(i, j), order);
    CHECK(direct == specialized);
  }
}

TEST_CASE("coxeter report passes for small ranks") {
  for (int n = 1; n <= 3; ++n) {
    Report rep = check_coxeter(n);
    CHECK(rep.all_pass());
    if (!rep.all_pass()) MESSAGE(rep.to_table());
  }
}

TEST_CASE("kernel checks pass at the advertised root orders") {
  const std::vector<std::pair<int, int>> cases = {{1, 2}, {1, 3}, {1, 4},
                                                  {2, 2}, {2, 3}, {3, 2}};
  for (auto [n, m] : cases) {
    Report rep = kernel_check(n, m);
    CHECK(rep.all_pass());
    if (!rep.all_pass()) MESSAGE("n=", n, " m=", m, "\n", rep.to_table());
  }
}

TEST_CASE("invalid inputs are rejected") {
  CHECK_THROWS_AS(cartan_matrix(0), UsageError);
  CHECK_THROWS_AS(cyclotomic_rep(1, 0), UsageError);
  CHECK_THROWS_AS(kernel_check(0, 2), UsageError);
  CHECK_THROWS_AS(kernel_check(1, 1), UsageError);
  CHECK_THROWS_AS(generic_rep(2).reflection(3), UsageError);
  CHECK_THROWS_AS(generic_rep(2).word_matrix({0, 5}), UsageError);
  CHECK_THROWS_AS(SquareMatrix<QLaurent>(0, QLaurent()), UsageError);
}

TEST_SUITE_END();
