#include "orthomf/io.hpp"
#include "orthomf/orthogroup.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace orthomf;

static QSpace load(const std::string& name) {
  return load_space(std::string(ORTHOMF_DATA_DIR) + "/" + name).sp;
}

TEST_CASE("generators are orthogonal similitudes of scale 1") {
  QSpace sp = load("a2.json");
  VecZ lam(4, Int(1));
  VecZ mu(2, Int(-1));
  for (const GElem& g : {translation(sp, lam), translation(sp, lam, true), k_mu(sp, mu),
                         k_tilde_mu(sp, mu), k_hat(sp)}) {
    CHECK(g.scale == 1);
    CHECK(is_similitude(sp, g.mat, Int(1)));
  }
  // the coordinate swap has determinant -1, the rest lie in SO+
  CHECK(in_SO_plus(sp, translation(sp, lam)));
  CHECK(in_SO_plus(sp, k_mu(sp, mu)));
  CHECK(!in_SO_plus(sp, k_hat(sp)));
  CHECK(det(kmat_hat(sp)) == -1);
}

TEST_CASE("translations act by adding the translation vector") {
  QSpace sp = load("a2.json");
  VecZ lam = {Int(1), Int(-2), Int(0), Int(3)};
  HPoint w0 = base_point(sp);
  auto [img, coc] = act(sp, translation(sp, lam), w0);
  CHECK(coc.re == 1);
  CHECK(coc.im == 0);
  for (long i = 0; i < 4; ++i) {
    CHECK(img.w[i].re == Rat(lam[i]));
    CHECK(img.w[i].im == w0.w[i].im);
  }
  CHECK(in_halfspace(sp, img));
}

TEST_CASE("rotation conjugation identity") {
  QSpace sp = load("d4.json");
  VecZ mu = {Int(1), Int(0), Int(-1), Int(2)};
  CHECK(kmat_tilde_mu(sp, mu) == kmat_hat(sp) * kmat_mu(sp, mu) * kmat_hat(sp));
  CHECK(gmul(sp, translation(sp, VecZ(6, Int(1))), translation(sp, VecZ(6, Int(2)))).mat ==
        translation(sp, VecZ(6, Int(3))).mat);
}

TEST_CASE("group multiplication tracks the similitude scale") {
  QSpace sp = load("a2.json");
  GElem s2 = scalar_gelem(sp, Int(2));
  CHECK(s2.scale == 4);
  GElem prod = gmul(sp, s2, translation(sp, VecZ(4, Int(1))));
  CHECK(prod.scale == 4);
  CHECK(is_similitude(sp, prod.mat, Int(4)));
}

TEST_CASE("embedded SL2 elements act invertibly") {
  QSpace sp = load("a2.json");
  MatQ W(2, 2);
  W(0, 1) = -1;
  W(1, 0) = 1;
  for (const GElem& g : {embed_down(sp, W), embed_up(sp, W)}) {
    CHECK(in_SO_plus(sp, g));
    HPoint w0 = base_point(sp);
    auto [img, coc] = act(sp, g, w0);
    CHECK(!coc.is_zero());
    CHECK(in_halfspace(sp, img));
    // act back with the inverse matrix
    GElem ginv = make_gelem(sp, inverse(g.mat), Int(1));
    auto [back, coc2] = act(sp, ginv, img);
    for (long i = 0; i < 4; ++i) {
      CHECK(back.w[i].re == w0.w[i].re);
      CHECK(back.w[i].im == w0.w[i].im);
    }
  }
}

TEST_CASE("exact and floating point actions agree") {
  QSpace sp = load("a2.json");
  VecZ mu(2, Int(1));
  GElem g = gmul(sp, k_mu(sp, mu), translation(sp, VecZ(4, Int(-1)), true));
  HPoint w0 = base_point(sp);
  auto [img, coc] = act(sp, g, w0);
  std::vector<std::complex<double>> wd;
  for (const auto& c : w0.w) wd.push_back(c.to_c());
  auto [imgd, cocd] = act_c(sp, g, wd);
  CHECK(std::abs(cocd - coc.to_c()) < 1e-12);
  for (long i = 0; i < 4; ++i) CHECK(std::abs(imgd[i] - img.w[i].to_c()) < 1e-12);
}

TEST_CASE("discriminant kernel membership") {
  QSpace sp = load("a2.json");
  // integral translations lie in the kernel, the outer swap does not
  CHECK(in_discriminant_kernel(sp, translation(sp, VecZ(4, Int(2)))));
  CHECK(!in_discriminant_kernel(sp, k_hat(sp)));  // det -1 swap
  QSpace e8 = load("e8.json");
  CHECK(in_discriminant_kernel(e8, k_mu(e8, VecZ(8, Int(1)))));
}
