#include "orthomf/eisenstein.hpp"
#include "orthomf/io.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace orthomf;

static QSpace load(const std::string& name) {
  return load_space(std::string(ORTHOMF_DATA_DIR) + "/" + name).sp;
}

static Index idx(long m, std::vector<long> mu, long l) {
  VecQ v;
  v.push_back(Rat(m));
  for (long x : mu) v.push_back(Rat(x));
  v.push_back(Rat(l));
  return Index(std::move(v));
}

TEST_CASE("elliptic eisenstein guards") {
  CHECK_THROWS(ell_eisenstein(3, 4));
  CHECK_THROWS(ell_eisenstein(2, 4));
  CHECK_THROWS(ell_eisenstein(-4, 4));
  EllSeries e0 = ell_eisenstein(0, 4);
  CHECK(ell_get(e0, Rat(0)) == 1);
  CHECK(ell_get(e0, Rat(3)) == 0);
  CHECK(ell_get(ell_eisenstein(12, 2), Rat(1)) == Rat(65520, 691));
}

TEST_CASE("closed-form coefficients on the rank 8 space") {
  // isotropic indices
  CHECK(F_value(10, 8, Int(1), Int(0)) == -264);
  CHECK(F_value(10, 8, Int(2), Int(0)) == Rat(-264) * sigma(9, Rat(2)));
  // positive norm: prefactor is the product of the two normalizations
  CHECK(F_value(10, 8, Int(1), Int(2)) == Rat(-264) * Rat(-504));
  CHECK(F_value(10, 8, Int(1), Int(4)) == Rat(-264) * Rat(-504) * sigma(5, Rat(2)));
  CHECK(F_value(14, 8, Int(1), Int(2)) == Rat(-24) * Rat(-264));
  // singular weight kills the positive-norm part
  CHECK(F_value(4, 8, Int(1), Int(2)) == 0);
  CHECK(F_value(4, 8, Int(3), Int(0)) == Rat(240) * sigma(3, Rat(3)));
  // the divisor sum skips non-integral arguments
  CHECK(F_value(10, 8, Int(2), Int(2)) == Rat(-264) * Rat(-504) * sigma(5, Rat(1)));
}

TEST_CASE("series via closed form and via divisor extension agree") {
  QSpace sp = load("e8.json");
  for (long k : {10, 14}) {
    FourierSeries a = F_series(sp, k, 2);
    FourierSeries b = F_series_via_maass(sp, k, 2);
    CHECK(series_equal(a, b, 2));
  }
}

TEST_CASE("series guards") {
  QSpace sp = load("e8.json");
  CHECK_THROWS(F_series(load("a2.json"), 10, 2));  // needs det S = 1
  CHECK_THROWS(F_series(sp, 9, 2));                // odd weight
  CHECK_THROWS(F_series(sp, 6, 2));                // weight gap (n/2, n/2 + 2]
  CHECK(coeff(F_series(sp, 4, 2), idx(0, {0, 0, 0, 0, 0, 0, 0, 0}, 0)) == 1);
}

TEST_CASE("divisor argument variants differ exactly where documented") {
  QSpace sp = load("e8.json");
  Index lam = idx(2, {0, 0, 0, 0, 0, 0, 0, 0}, 2);  // eps 2, norm 8
  FourierSeries dsq = F_series(sp, 10, 4, DivisorVariant::DSquared);
  FourierSeries lin = F_series(sp, 10, 4, DivisorVariant::Linear);
  CHECK(maass_defect(dsq, lam) == 0);
  CHECK(maass_defect(lin, lam) != 0);
  // on primitive indices the two variants coincide
  Index prim = idx(1, {0, 0, 0, 0, 0, 0, 0, 0}, 2);
  CHECK(coeff(dsq, prim) == coeff(lin, prim));
}

TEST_CASE("pair decomposition identity at small norms") {
  QSpace sp = load("e8.json");
  auto [lhs, rhs] = remark3d_check(sp, idx(1, {0, 0, 0, 0, 0, 0, 0, 0}, 1));
  CHECK(lhs == 2);
  CHECK(rhs == 2);
  std::vector<long> mu(8, 0);
  mu[0] = 1;
  auto [l2, r2] = remark3d_check(sp, idx(1, mu, 2));  // norm 2
  CHECK(l2 == r2);
  CHECK_THROWS(remark3d_check(sp, idx(1, {0, 0, 0, 0, 0, 0, 0, 0}, 0)));  // norm 0
  CHECK_THROWS(remark3d_check(load("d4.json"), idx(1, {0, 0, 0, 0}, 1)));
}
