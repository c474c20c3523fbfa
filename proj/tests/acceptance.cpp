// Acceptance gate: one summary line per criterion (A1..A12), details above
// each summary.  Exit 0 only if every criterion passes.

#include "orthomf/io.hpp"
#include "orthomf/verify.hpp"

#include <iostream>

using namespace orthomf;

int main() {
  QSpace e8 = load_space(std::string(ORTHOMF_DATA_DIR) + "/e8.json").sp;
  QSpace n2 = load_space(std::string(ORTHOMF_DATA_DIR) + "/n2det7.json").sp;

  bool all = true;
  auto crit = [&](const std::string& id, bool ok) {
    std::cout << id << (ok ? " PASS" : " FAIL") << "\n" << std::flush;
    all &= ok;
  };

  crit("A1", verify_bernoulli(std::cout));
  crit("A2", verify_lattice(e8, {{Int(2), 240}, {Int(4), 2160}}, std::cout));
  {
    bool ok = true;
    for (long q : {2, 3}) ok &= verify_reps(e8, Int(q), std::cout);
    for (long q : {2, 3, 5}) ok &= verify_reps(n2, Int(q), std::cout);
    crit("A3", ok);
  }
  crit("A4", verify_congruence(e8, {Int(2), Int(3), Int(5)}, {Int(0), Int(1), Int(2)},
                               std::cout));
  crit("A5", verify_maass(e8, {4, 10, 14}, {2, 3, 5}, 4, std::cout));
  {
    bool ok = verify_eigen(e8, 12, Int(2), 4, std::cout);
    ok &= verify_eigen(e8, 14, Int(2), 4, std::cout);
    ok &= verify_eigen(e8, 14, Int(3), 4, std::cout);
    crit("A6", ok);
  }
  crit("A7", verify_star(e8, 14, Int(2), 10, std::cout));
  crit("A8", verify_remark3d(e8, 2, std::cout));
  crit("A9", verify_square(e8, 3, std::cout));
  crit("A10", verify_tp(e8, std::cout));
  crit("A11", verify_phi(e8, {10, 14}, 2, std::cout));
  crit("A12", verify_cocycle(e8, std::cout));

  std::cout << (all ? "ALL CRITERIA PASS" : "CRITERIA FAILED") << "\n";
  return all ? 0 : 1;
}
