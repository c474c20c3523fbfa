#include "orthomf/io.hpp"
#include "orthomf/quadform.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace orthomf;

static QSpace load(const std::string& name) {
  return load_space(std::string(ORTHOMF_DATA_DIR) + "/" + name).sp;
}

TEST_CASE("space construction and determinants") {
  CHECK(load("e8.json").detS == 1);
  CHECK(load("a2.json").detS == 3);
  CHECK(load("d4.json").detS == 4);
  CHECK(load("n2det7.json").detS == 7);
  CHECK(load("s2.json").detS == 2);

  QSpace e8 = load("e8.json");
  CHECK(e8.detS0 == -1);
  CHECK(e8.detS1 == 1);  // signature (2, n + 2), n even
  CHECK(e8.unimodular());
}

TEST_CASE("space construction rejects bad input") {
  MatZ odd(1, 1);
  odd(0, 0) = 3;
  CHECK_THROWS(build_space(odd));
  MatZ indef(2, 2);
  indef(0, 0) = 2;
  indef(1, 1) = -2;
  CHECK_THROWS(build_space(indef));
  MatZ asym(2, 2);
  asym(0, 0) = asym(1, 1) = 2;
  asym(0, 1) = 1;
  CHECK_THROWS(build_space(asym));
}

TEST_CASE("short vector counts") {
  QSpace e8 = load("e8.json");
  // S[mu] <= 2 includes zero: 241 vectors; <= 4 adds the 2160 of norm 4.
  CHECK(short_vectors(e8.S, Int(1)).size() == 241);
  CHECK(short_vectors(e8.S, Int(2)).size() == 2401);
  QSpace a2 = load("a2.json");
  CHECK(short_vectors(a2.S, Int(1)).size() == 7);  // hexagonal: 6 roots
}

TEST_CASE("index invariants") {
  QSpace e8 = load("e8.json");
  VecQ mu(8, Rat(0));
  mu[0] = 1;
  Index lam(Rat(1), mu, Rat(2));
  CHECK(norm2(e8, lam) == 2);  // 2*1*2 - 2
  CHECK(eps(e8, lam) == 1);
  CHECK(in_cone(e8, lam));
  CHECK(in_dual(e8, lam));

  Index iso(Rat(2), VecQ(8, Rat(0)), Rat(0));
  CHECK(norm2(e8, iso) == 0);
  CHECK(eps(e8, iso) == 2);

  Index neg(Rat(0), mu, Rat(0));
  CHECK(norm2(e8, neg) < 0);
  CHECK(!in_cone(e8, neg));
}

TEST_CASE("dual lattice on a non-unimodular space") {
  QSpace a2 = load("a2.json");
  // columns of S^{-1} are dual vectors with thirds
  VecQ mu = {Rat(2, 3), Rat(1, 3)};
  Index lam(Rat(0), mu, Rat(1));
  CHECK(in_dual(a2, lam));
  CHECK(norm2(a2, lam) == Rat(-2, 3));
  VecQ bad = {Rat(1, 2), Rat(0)};
  CHECK(!in_dual(a2, Index(Rat(0), bad, Rat(1))));
}

TEST_CASE("cone enumeration") {
  QSpace e8 = load("e8.json");
  auto cone = enumerate_cone(e8, 1);
  // cells: (0,0) + (0,1) + (1,0) with mu = 0 only, (1,1) with S[mu] <= 2
  CHECK(cone.size() == 3 + 241);
  long streamed = 0;
  for_each_cone(e8, 1, [&](const Index&) { ++streamed; });
  CHECK(streamed == (long)cone.size());
  CHECK(std::is_sorted(cone.begin(), cone.end()));

  QSpace a2 = load("a2.json");
  auto cone2 = enumerate_cone(a2, 1);
  for (const auto& lam : cone2) {
    CHECK(in_dual(a2, lam));
    CHECK(in_cone(a2, lam));
  }
  // dual midpoints appear: 1/3-coordinates with S[mu] <= 2
  bool frac = false;
  for (const auto& lam : cone2)
    for (const auto& x : lam.v)
      if (!is_integer(x)) frac = true;
  CHECK(frac);
}

TEST_CASE("isotropic pair decompositions") {
  QSpace e8 = load("e8.json");
  Index lam(Rat(1), VecQ(8, Rat(0)), Rat(1));
  auto pairs = isotropic_pairs(e8, lam);
  REQUIRE(pairs.size() == 2);  // (1,0,0)+(0,0,1) in both orders
  for (const auto& [nu, mu] : pairs) {
    CHECK(norm2(e8, nu) == 0);
    CHECK(norm2(e8, mu) == 0);
    CHECK(nu + mu == lam);
  }
}

TEST_CASE("congruence counts match the closed form") {
  QSpace e8 = load("e8.json");
  for (long q : {2, 3}) {
    for (long l : {0, 1}) {
      Int got = count_congruence(e8, Int(l), Int(q));
      Int want = pow_int(Int(q), 7) - pow_int(Int(q), 3);
      if (l % q == 0) want += pow_int(Int(q), 4);
      CHECK(got == want);
    }
  }
}

TEST_CASE("index keys round trip") {
  QSpace e8 = load("e8.json");
  VecQ mu(8, Rat(0));
  mu[3] = -2;
  Index lam(Rat(3), mu, Rat(5));
  auto key = to_key(e8, lam);
  REQUIRE(key);
  CHECK(from_key(e8, *key) == lam);

  QSpace a2 = load("a2.json");
  Index frac(Rat(0), VecQ{Rat(2, 3), Rat(1, 3)}, Rat(1));
  auto key2 = to_key(a2, frac);
  REQUIRE(key2);
  CHECK(from_key(a2, *key2) == frac);
  // non-dual vectors get no key
  CHECK(!to_key(a2, Index(Rat(0), VecQ{Rat(1, 2), Rat(0)}, Rat(0))));
}
