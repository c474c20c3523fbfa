#include "orthomf/exact.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace orthomf;

TEST_CASE("bernoulli numbers") {
  CHECK(bernoulli(0) == 1);
  CHECK(bernoulli(2) == Rat(1, 6));
  CHECK_THROWS(bernoulli(1));  // only the even indices appear in the formulas
  CHECK_THROWS(bernoulli(3));
  CHECK(bernoulli(4) == Rat(-1, 30));
  CHECK(bernoulli(10) == Rat(5, 66));
  CHECK(bernoulli(12) == Rat(-691, 2730));
  CHECK(bernoulli(14) == Rat(7, 6));
}

TEST_CASE("eisenstein normalizations") {
  CHECK(Rat(-4) / bernoulli(2) == -24);
  CHECK(Rat(-8) / bernoulli(4) == 240);
  CHECK(Rat(-12) / bernoulli(6) == -504);
  CHECK(Rat(-16) / bernoulli(8) == 480);
  CHECK(Rat(-20) / bernoulli(10) == -264);
  CHECK(Rat(-24) / bernoulli(12) == Rat(65520, 691));
}

TEST_CASE("divisor sums") {
  CHECK(sigma(1, Rat(6)) == 12);
  CHECK(sigma(3, Rat(6)) == 252);
  CHECK(sigma(0, Rat(12)) == 6);
  CHECK(sigma(3, Rat(1)) == 1);
  // off the positive integers the sum is empty
  CHECK(sigma(3, Rat(1, 2)) == 0);
  CHECK(sigma(3, Rat(0)) == 0);
  CHECK(sigma(3, Rat(-4)) == 0);
}

TEST_CASE("divisors and gcd") {
  auto d = divisors(Int(12));
  REQUIRE(d.size() == 6);
  CHECK(d.front() == 1);
  CHECK(d.back() == 12);
  CHECK(gcd_vec({Int(12), Int(-18), Int(30)}) == 6);
  CHECK(gcd_vec({Int(0), Int(0)}) == 0);
  CHECK(gcd_vec({Int(0), Int(7)}) == 7);
}

TEST_CASE("powers") {
  CHECK(pow_int(Int(3), 5) == 243);
  CHECK(pow_rat(Int(2), -3) == Rat(1, 8));
  CHECK(pow_rat(Int(5), 0) == 1);
}

TEST_CASE("rational strings") {
  CHECK(rat_str(Rat(-3, 7)) == "-3/7");
  CHECK(rat_str(Rat(5)) == "5");
  CHECK(parse_rat("22/7") == Rat(22, 7));
  CHECK(parse_rat("-4") == Rat(-4));
  Rat big(123456789, 987654321);
  big.canonicalize();
  CHECK(parse_rat(rat_str(big)) == big);
}

TEST_CASE("primality") {
  CHECK(is_prime(Int(2)));
  CHECK(is_prime(Int(97)));
  CHECK(!is_prime(Int(1)));
  CHECK(!is_prime(Int(91)));
}
