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

TEST_CASE("elliptic series container") {
  EllSeries e4 = ell_eisenstein(4, 6);
  CHECK(e4.weight == 4);
  CHECK(ell_get(e4, Rat(0)) == 1);
  CHECK(ell_get(e4, Rat(1)) == 240);
  CHECK(ell_get(e4, Rat(6)) == 240 * 252);
  CHECK(ell_get(e4, Rat(1, 2)) == 0);
  CHECK(ell_get(e4, Rat(-3)) == 0);
  CHECK(ell_get(e4, Rat(100)) == 240 * sigma(3, Rat(100)));  // generator past the prefix

  EllSeries table = ell_zero(4, 3);
  CHECK_THROWS(ell_get(table, Rat(5)));  // table-backed series have a hard range

  EllSeries sum = ell_add(ell_scale(e4, Rat(2)), e4);
  CHECK(ell_get(sum, Rat(1)) == 720);
  CHECK(ell_equal(sum, ell_scale(e4, Rat(3)), 6));
}

TEST_CASE("coefficient access conventions") {
  QSpace sp = load("e8.json");
  FourierSeries f = zero_series(sp, 10, 2);
  set_coeff(f, idx(1, {0, 0, 0, 0, 0, 0, 0, 0}, 1), Rat(7));
  CHECK(coeff(f, idx(1, {0, 0, 0, 0, 0, 0, 0, 0}, 1)) == 7);
  CHECK(coeff(f, idx(0, {0, 0, 0, 0, 0, 0, 0, 0}, 2)) == 0);  // in range, unset
  // off cone and off dual are zero without a table entry
  CHECK(coeff(f, idx(0, {1, 0, 0, 0, 0, 0, 0, 0}, 0)) == 0);
  CHECK(coeff(f, Index(Rat(1, 2), VecQ(8, Rat(0)), Rat(1))) == 0);
  // outside the rectangle the truncation is unknown
  CHECK_THROWS_AS(coeff(f, idx(3, {0, 0, 0, 0, 0, 0, 0, 0}, 1)), std::out_of_range);
}

TEST_CASE("materialization agrees with the generator") {
  QSpace sp = load("e8.json");
  FourierSeries f = F_series(sp, 10, 1);
  FourierSeries m = materialize(f);
  CHECK(!m.lazy());
  long cnt = 0;
  for_each_cone(sp, 1, [&](const Index& lam) {
    ++cnt;
    CHECK(coeff(m, lam) == coeff(f, lam));
  });
  CHECK(cnt == 244);
  CHECK(series_equal(f, m, 1));
}

TEST_CASE("star image is the scaled elliptic Eisenstein series") {
  QSpace sp = load("e8.json");
  FourierSeries f = F_series(sp, 10, 4);
  EllSeries s = star(f);
  CHECK(s.weight == 6);
  CHECK(ell_equal(s, ell_scale(ell_eisenstein(6, 8), Rat(-264)), 8));
}

TEST_CASE("divisor extension inverts the star map") {
  QSpace sp = load("e8.json");
  EllSeries c;
  c.weight = 6;
  for (long i = 0; i < 40; ++i) {
    Rat x(3 * i * i - 7 * i + 2, 5);
    x.canonicalize();
    c.c.push_back(x);
  }
  FourierSeries f = maass_extend(sp, 10, c, 3);
  EllSeries back = star(f);
  CHECK(ell_equal(back, c, 3));
  // and the defining relations hold at sampled indices
  CHECK(maass_defect(f, idx(2, {1, 0, 0, 0, 0, 0, 0, 0}, 2)) == 0);
  CHECK(maass_defect(f, idx(2, {0, 0, 0, 0, 0, 0, 0, 0}, 2)) == 0);
  CHECK(p_maass_defect(f, Int(2), idx(2, {1, 1, 0, 0, 0, 0, 0, 0}, 3), 1) == 0);
  CHECK(defect_iii(f, Int(3), idx(1, {0, 1, 0, 0, 0, 0, 0, 0}, 1)) == 0);
}

TEST_CASE("defects detect a broken series") {
  QSpace sp = load("e8.json");
  FourierSeries f = materialize(F_series(sp, 10, 2));
  Index lam = idx(2, {0, 0, 0, 0, 0, 0, 0, 0}, 1);  // eps = 1, generator (1,0,2)
  CHECK(maass_defect(f, lam) == 0);
  set_coeff(f, lam, coeff(f, lam) + 1);
  CHECK(maass_defect(f, lam) != 0);
}

TEST_CASE("series multiplication") {
  QSpace sp = load("e8.json");
  FourierSeries one = const_series(sp, Rat(1), 2);
  FourierSeries f = materialize(F_series(sp, 10, 2));
  FourierSeries prod = multiply(one, f);
  // multiplying by the delta-like constant series leaves the cone part alone
  CHECK(series_equal(prod, f, 2));
  FourierSeries two = const_series(sp, Rat(2), 2);
  CHECK(coeff(multiply(two, two), idx(0, {0, 0, 0, 0, 0, 0, 0, 0}, 0)) == 4);
}

TEST_CASE("line restriction of the closed-form series") {
  QSpace sp = load("e8.json");
  FourierSeries f = F_series(sp, 10, 4);
  Index u = idx(1, {0, 0, 0, 0, 0, 0, 0, 0}, 0);
  EllSeries r = phi(f, u);
  // multiples of an isotropic line: coefficients sigma_9(eps)
  CHECK(ell_get(r, Rat(0)) == 1);
  CHECK(ell_get(r, Rat(2)) == Rat(-264) * sigma(9, Rat(2)));
  CHECK_THROWS(phi(f, idx(1, {0, 0, 0, 0, 0, 0, 0, 0}, 1)));  // norm 2, not isotropic
}

TEST_CASE("cusp detection") {
  QSpace sp = load("e8.json");
  CHECK(!is_cusp(F_series(sp, 10, 2)));
  CHECK(is_cusp(zero_series(sp, 10, 2)));
}

TEST_CASE("numeric evaluation at a deep point") {
  QSpace sp = load("e8.json");
  FourierSeries f = materialize(F_series(sp, 4, 2));
  std::vector<std::complex<double>> w(10, {0.0, 0.0});
  w[0] = {0.1, 5.0};
  w[9] = {-0.2, 5.0};
  auto v = eval_numeric(f, w);
  CHECK(std::abs(v - 1.0) < 1e-5);
  // invariance under an integral translation, numerically
  CHECK(slash_defect_numeric(f, translation(sp, VecZ(10, Int(1))), w) < 1e-8);
}
