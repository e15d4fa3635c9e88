#include "doctest.h"

#include "qsatake/qarith.hpp"

#include <random>

using namespace qsatake;

TEST_SUITE_BEGIN("qarith");

namespace {

QLaurent random_laurent(std::mt19937& rng) {
  std::uniform_int_distribution<int> exp(-4, 4), coeff(-5, 5), len(0, 4);
  QLaurent p;
  int n = len(rng);
  for (int i = 0; i < n; ++i)
    p += QLaurent::q_power(exp(rng), Rat(coeff(rng)));
  return p;
}

}  // namespace

TEST_CASE("quantum integers") {
  CHECK(quantum_int(0) == QLaurent(0));
  CHECK(quantum_int(1) == QLaurent(1));
  QLaurent two = QLaurent::q_power(1) + QLaurent::q_power(-1);
  CHECK(quantum_int(2) == two);
  QLaurent three = QLaurent::q_power(2) + QLaurent(1) + QLaurent::q_power(-2);
  CHECK(quantum_int(3) == three);
  CHECK_THROWS_AS(quantum_int(-1), UsageError);

  for (int n = 1; n <= 8; ++n) {
    CHECK(quantum_int(n).bar() == quantum_int(n));
    // [2][n] = [n+1] + [n-1]
    CHECK(quantum_int(2) * quantum_int(n) ==
          quantum_int(n + 1) + quantum_int(n - 1));
  }
}

TEST_CASE("laurent printing and parsing") {
  CHECK(quantum_int(3).to_string() == "q^2 + 1 + q^-2");
  CHECK((-QLaurent::q_power(1)).to_string() == "-q");
  CHECK(QLaurent(0).to_string() == "0");
  auto p = QLaurent::parse("q^2 + 1 + q^-2");
  REQUIRE(p.has_value());
  CHECK(*p == quantum_int(3));
  auto m = QLaurent::parse("-q");
  REQUIRE(m.has_value());
  CHECK(*m == -QLaurent::q_power(1));
  auto prod = QLaurent::parse("2*q^-1 - 3*q");
  REQUIRE(prod.has_value());
  CHECK(*prod == QLaurent::q_power(-1, Rat(2)) - QLaurent::q_power(1, Rat(3)));
  CHECK(!QLaurent::parse("q +").has_value());
  CHECK(!QLaurent::parse("x").has_value());

  std::mt19937 rng(7);
  for (int i = 0; i < 50; ++i) {
    QLaurent a = random_laurent(rng);
    auto back = QLaurent::parse(a.to_string());
    REQUIRE(back.has_value());
    CHECK(*back == a);
  }
}

TEST_CASE("rational normalization") {
  ZPoly q2m1 = ZPoly::monomial(Int(1), 2) - ZPoly(1);
  ZPoly qm1 = ZPoly::monomial(Int(1), 1) - ZPoly(1);
  QRational a = qr_normalize(q2m1, qm1);
  CHECK(a == QRational(QLaurent::q_power(1) + QLaurent(1)));

  QRational b = qr_normalize(ZPoly::monomial(Int(2), 1), ZPoly(2));
  CHECK(b == QRational(QLaurent::q_power(1)));

  QRational c = qr_normalize(ZPoly::monomial(Int(-1), 1), ZPoly(-1));
  CHECK(c == QRational(QLaurent::q_power(1)));

  CHECK_THROWS_AS(qr_normalize(ZPoly(1), ZPoly()), UsageError);

  // Canonical forms decide equality.
  ZPoly n1 = ZPoly::monomial(Int(2), 3) - ZPoly::monomial(Int(2), 1);
  ZPoly d1 = ZPoly::monomial(Int(4), 2) - ZPoly(4);
  CHECK(qr_normalize(n1, d1) == qr_normalize(ZPoly::monomial(Int(1), 1), ZPoly(2)));
}

TEST_CASE("rational field operations") {
  QRational half = QRational(Rat(1, 2));
  CHECK(half + half == QRational(1));
  QRational q(QLaurent::q_power(1));
  CHECK(q * q.inverse() == QRational(1));
  QRational zero;
  CHECK_THROWS_AS(zero.inverse(), UsageError);
  // 1/(q+1) round trips through arithmetic.
  QRational s = QRational(QLaurent::q_power(1) + QLaurent(1)).inverse();
  CHECK(s + s == QRational(2) / QRational(QLaurent::q_power(1) + QLaurent(1)));
  CHECK(!s.is_laurent());
  CHECK(q.is_laurent());
  CHECK(half.is_laurent());
}

TEST_CASE("rational embedding matches laurent arithmetic") {
  std::mt19937 rng(11);
  for (int i = 0; i < 60; ++i) {
    QLaurent a = random_laurent(rng), b = random_laurent(rng);
    QRational ra(a), rb(b);
    CHECK(QRational(a + b) == ra + rb);
    CHECK(QRational(a * b) == ra * rb);
    auto back = ra.to_laurent();
    REQUIRE(back.has_value());
    CHECK(*back == a);
  }
}

TEST_CASE("cyclotomic polynomials") {
  // Phi_1 = q - 1, Phi_2 = q + 1, Phi_6 = q^2 - q + 1
  CHECK(CycloNumber::cyclotomic(1) ==
        ZPoly::monomial(Int(1), 1) - ZPoly(1));
  CHECK(CycloNumber::cyclotomic(2) ==
        ZPoly::monomial(Int(1), 1) + ZPoly(1));
  CHECK(CycloNumber::cyclotomic(6) ==
        ZPoly::monomial(Int(1), 2) - ZPoly::monomial(Int(1), 1) + ZPoly(1));
  // Phi_12 = q^4 - q^2 + 1
  CHECK(CycloNumber::cyclotomic(12) ==
        ZPoly::monomial(Int(1), 4) - ZPoly::monomial(Int(1), 2) + ZPoly(1));
}

TEST_CASE("cyclotomic specialization") {
  // At a primitive 6th root: q^3 = -1, so q + q^-1 = q - q^2 = 1
  // and q^2 + 1 + q^-2 = q^2 + 1 - q = 0.
  CHECK(specialize_cyclotomic(quantum_int(2), 6).is_one());
  CHECK(specialize_cyclotomic(quantum_int(3), 6).is_zero());
  CHECK(specialize_cyclotomic(QLaurent(1), 5).is_one());

  // q has exact multiplicative order k.
  for (int k : {1, 2, 3, 4, 5, 6, 8, 12}) {
    CycloNumber q = CycloNumber::q_power(k, 1);
    CycloNumber acc = CycloNumber::from_rat(k, Rat(1));
    for (int j = 1; j < k; ++j) {
      acc = acc * q;
      CHECK(!acc.is_one());
    }
    acc = acc * q;
    CHECK(acc.is_one());
  }

  // Ring homomorphism on random pairs.
  std::mt19937 rng(13);
  for (int i = 0; i < 40; ++i) {
    QLaurent a = random_laurent(rng), b = random_laurent(rng);
    int k = 1 + static_cast<int>(rng() % 12);
    CHECK(specialize_cyclotomic(a + b, k) ==
          specialize_cyclotomic(a, k) + specialize_cyclotomic(b, k));
    CHECK(specialize_cyclotomic(a * b, k) ==
          specialize_cyclotomic(a, k) * specialize_cyclotomic(b, k));
  }
}

TEST_CASE("zpoly gcd") {
  ZPoly a = ZPoly::monomial(Int(1), 2) - ZPoly(1);       // q^2 - 1
  ZPoly b = ZPoly::monomial(Int(1), 2) -
            ZPoly::monomial(Int(2), 1) + ZPoly(1);       // (q-1)^2
  ZPoly g = ZPoly::gcd(a, b);
  CHECK(g == ZPoly::monomial(Int(1), 1) - ZPoly(1));
  CHECK(ZPoly::gcd(ZPoly(4), ZPoly(6)) == ZPoly(2));
  CHECK(ZPoly::gcd(ZPoly(), a) == a);
}

TEST_SUITE_END();
