#include "orthomf/eisenstein.hpp"
#include "orthomf/hecke.hpp"
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

TEST_CASE("rank over a prime field") {
  MatZ m(3, 3);
  m(0, 0) = 2;
  m(1, 1) = 4;
  m(2, 2) = 6;
  CHECK(rank_mod(m, Int(5)) == 3);
  CHECK(rank_mod(m, Int(2)) == 0);
  CHECK(rank_mod(m, Int(3)) == 2);
}

TEST_CASE("middle blocks are scale q^2 similitudes of S0") {
  QSpace sp = load("e8.json");
  Int q(2);
  MiddleBlocks mb = middle_blocks(sp, q);
  CHECK((long)mb.c.size() == 256);  // q^n
  CHECK(mb.d.size() == 1);
  MatQ s0 = to_q(sp.S0);
  long checked = 0;
  for (const auto& a : mb.all()) {
    MatQ aq = to_q(a);
    REQUIRE(aq.transpose() * s0 * aq == s0 * Rat(q * q));
    ++checked;
  }
  CHECK(checked == (long)(mb.c.size() + mb.d.size() + mb.e.size() + mb.f.size()));
}

TEST_CASE("coset counts on the rank 8 space at q = 2") {
  QSpace sp = load("e8.json");
  HeckeCounts h = counts(sp, Int(2));
  CHECK(h.Na == 1024);
  CHECK(h.Nb == 1);
  CHECK(h.Nc == 512);
  CHECK(h.Nd == 2);
  // the fifth family pairs with the congruence count at l = 0
  CHECK(h.Ne == 2 * (count_congruence(sp, Int(0), Int(2)) - 1));
  CHECK(h.rho0 == 1 + 1024 + h.N);
  CHECK(rho(sp, 12, Int(2)) == Rat(1) + pow_rat(Int(2), -14) + Rat(h.N) * pow_rat(Int(2), -12));
}

TEST_CASE("representatives on a small non-unimodular space") {
  QSpace sp = load("n2det7.json");
  for (long q : {2, 3, 5}) {
    auto fams = coset_reps(sp, Int(q));
    HeckeCounts h = counts(sp, Int(q));
    long total = 0;
    for (const auto& fam : fams) {
      for (const auto& r : fam.reps) {
        REQUIRE(r.scale == q * q);
        REQUIRE(rank_mod(to_z(r.mat), Int(q)) == 1);
      }
      total += (long)fam.reps.size();
    }
    CHECK(Int(total) == h.rho0);
  }
  CHECK_THROWS(coset_reps(sp, Int(7)));  // q | det S unsupported
}

TEST_CASE("operator at lambda = 0 reproduces the coset count eigenvalue") {
  QSpace sp = load("s2.json");
  long k = 6;
  FourierSeries f = zero_series(sp, k, 9);
  set_coeff(f, idx(0, {0}, 0), Rat(1));
  FourierSeries g = apply_TSq(f, Int(3));
  CHECK(!g.lazy());
  CHECK(g.B == 3);
  CHECK(coeff(g, idx(0, {0}, 0)) == rho(sp, k, Int(3)));
}

TEST_CASE("operator is the eigenvalue times the series, spot checked") {
  QSpace sp = load("e8.json");
  FourierSeries F = F_series(sp, 12, 4);
  FourierSeries g = apply_TSq(F, Int(2));
  CHECK(g.lazy());
  Rat r = rho(sp, 12, Int(2));
  for (const Index& lam :
       {idx(0, {0, 0, 0, 0, 0, 0, 0, 0}, 0), idx(1, {0, 0, 0, 0, 0, 0, 0, 0}, 1),
        idx(2, {1, 0, 0, 0, 0, 0, 0, 0}, 1), idx(2, {1, 1, 0, 0, 0, 0, 0, 0}, 2)}) {
    CHECK(coeff(g, lam) == r * coeff(F, lam));
  }
}

TEST_CASE("parabolic operators agree on divisor-relation series") {
  QSpace sp = load("e8.json");
  EllSeries c;
  c.weight = 6;
  for (long i = 0; i < 40; ++i) {
    Rat x(2 * i - 5, 3);
    x.canonicalize();
    c.c.push_back(x);
  }
  FourierSeries f = maass_extend(sp, 10, c, 4);
  for (long p : {2, 3}) {
    FourierSeries up = apply_Tp_up(f, Int(p));
    FourierSeries down = apply_Tp_down(f, Int(p));
    for (const Index& lam : {idx(0, {0, 0, 0, 0, 0, 0, 0, 0}, 1),
                             idx(1, {1, 0, 0, 0, 0, 0, 0, 0}, 1),
                             idx(1, {0, 0, 0, 0, 0, 0, 0, 0}, 1)}) {
      CHECK(coeff(up, lam) == coeff(down, lam));
    }
  }
}

TEST_CASE("parabolic similitude lists") {
  QSpace sp = load("a2.json");
  for (const auto& M : tp_matrices_down(sp, Int(2))) CHECK(M.scale == 4);
  for (const auto& M : tp_matrices_up(sp, Int(2))) CHECK(M.scale == 4);
  CHECK(tp_matrices_down(sp, Int(2)).size() == 3);
  CHECK(tp_matrices_up(sp, Int(2)).size() == 3);
}

TEST_CASE("classical elliptic operator has Eisenstein eigenvalues") {
  EllSeries e4 = ell_eisenstein(4, 24);
  for (long m : {2, 3, 4}) {
    EllSeries t = ell_hecke(e4, Int(m));
    CHECK(ell_equal(t, ell_scale(e4, Rat(sigma(3, Rat(m)))), 5));
  }
}

TEST_CASE("star relation at small depth") {
  QSpace sp = load("e8.json");
  FourierSeries F = F_series(sp, 14, 4);
  auto [lhs, rhs] = star_relation_check(F, Int(2));
  CHECK(ell_equal(lhs, rhs, 4));
}
