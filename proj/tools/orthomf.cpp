// Command line front end: exact Fourier coefficients, the star map, Hecke
// coset representatives and operators, and the verification suites.
//
// Exit codes: 0 success, 1 identity failure, 2 usage / input error.

#include "orthomf/eisenstein.hpp"
#include "orthomf/hecke.hpp"
#include "orthomf/io.hpp"
#include "orthomf/verify.hpp"

#include <CLI11.hpp>

#include <iostream>

using namespace orthomf;

namespace {

void emit(const std::string& out_path, const std::string& body) {
  if (out_path.empty())
    std::cout << body;
  else
    write_file(out_path, body);
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact orthogonal modular form computations"};
  app.require_subcommand(1);

  std::string gram, out_path, series_path, format = "json";
  long k = 0, B = 4;
  long q = 2, p = 2;

  auto add_common = [&](CLI::App* cmd, bool need_gram = true) {
    auto* g = cmd->add_option("--gram", gram, "Gram matrix JSON file");
    if (need_gram) g->required();
    cmd->add_option("--out", out_path, "output file (default stdout)");
    cmd->add_option("--format", format, "json|csv")
        ->check(CLI::IsMember({"json", "csv"}));
  };

  auto* c_coeffs = app.add_subcommand("coeffs", "Fourier coefficients of the Eisenstein series");
  add_common(c_coeffs);
  c_coeffs->add_option("--k", k, "weight")->required();
  c_coeffs->add_option("--B", B, "cone truncation bound")->required();

  auto* c_star = app.add_subcommand("star", "elliptic image of a series under the star map");
  add_common(c_star);
  c_star->add_option("--series", series_path, "series JSON file")->required();

  auto* c_reps = app.add_subcommand("hecke-reps", "right coset representatives at q");
  add_common(c_reps);
  c_reps->add_option("--q", q, "prime")->required();

  auto* c_apply = app.add_subcommand("hecke-apply", "apply the Hecke operator at q to a series");
  add_common(c_apply);
  c_apply->add_option("--series", series_path, "series JSON file")->required();
  c_apply->add_option("--q", q, "prime")->required();

  auto* c_verify = app.add_subcommand("verify", "verification suites");
  c_verify->require_subcommand(1);
  std::vector<long> ks;
  auto* v_maass = c_verify->add_subcommand("maass", "divisor-sum coefficient relations");
  add_common(v_maass);
  v_maass->add_option("--k", ks, "weights (repeatable)");
  v_maass->add_option("--B", B, "cone window bound");
  auto* v_eigen = c_verify->add_subcommand("eigen", "Hecke eigenform property");
  add_common(v_eigen);
  v_eigen->add_option("--k", k, "weight")->required();
  v_eigen->add_option("--q", q, "prime")->required();
  v_eigen->add_option("--B", B, "cone window bound");
  auto* v_star = c_verify->add_subcommand("star", "star map intertwining");
  add_common(v_star);
  v_star->add_option("--k", k, "weight")->required();
  v_star->add_option("--q", q, "prime")->required();
  auto* v_square = c_verify->add_subcommand("square", "series product identities");
  add_common(v_square);
  v_square->add_option("--B", B, "cone window bound");
  auto* v_remark = c_verify->add_subcommand("remark3d", "isotropic pair decomposition identity");
  add_common(v_remark);
  auto* v_cocycle = c_verify->add_subcommand("cocycle", "group action and cocycle laws");
  add_common(v_cocycle);
  auto* v_reps = c_verify->add_subcommand("reps", "coset representative validity");
  add_common(v_reps);
  v_reps->add_option("--q", q, "prime")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    LoadedSpace ls = load_space(gram);

    if (*c_coeffs) {
      FourierSeries f = materialize(F_series(ls.sp, k, B));
      emit(out_path, format == "json" ? dump(series_to_json(f, ls.hash)) : series_to_csv(f));
      return 0;
    }
    if (*c_star) {
      Json j = Json::parse(read_file(series_path));
      FourierSeries f = series_from_json(j, ls.sp, ls.hash);
      EllSeries g = star(f);
      emit(out_path, format == "json" ? dump(ell_to_json(g)) : ell_to_csv(g));
      return 0;
    }
    if (*c_reps) {
      if (format != "json") {
        std::cerr << "hecke-reps: only json output is supported\n";
        return 2;
      }
      emit(out_path, dump(reps_to_json(coset_reps(ls.sp, Int(q)), Int(q), ls.hash)));
      return 0;
    }
    if (*c_apply) {
      Json j = Json::parse(read_file(series_path));
      FourierSeries f = series_from_json(j, ls.sp, ls.hash);
      FourierSeries g = apply_TSq(f, Int(q));
      emit(out_path, format == "json" ? dump(series_to_json(g, ls.hash)) : series_to_csv(g));
      return 0;
    }

    bool ok = true;
    if (*v_maass) {
      if (ks.empty()) ks = {4, 10, 14};
      ok = verify_maass(ls.sp, ks, {2, 3, 5}, B, std::cout);
    } else if (*v_eigen) {
      ok = verify_eigen(ls.sp, k, Int(q), B, std::cout);
    } else if (*v_star) {
      ok = verify_star(ls.sp, k, Int(q), 10, std::cout);
    } else if (*v_square) {
      ok = verify_square(ls.sp, std::min<long>(B, 3), std::cout);
    } else if (*v_remark) {
      ok = verify_remark3d(ls.sp, 2, std::cout);
    } else if (*v_cocycle) {
      ok = verify_cocycle(ls.sp, std::cout);
    } else if (*v_reps) {
      ok = verify_reps(ls.sp, Int(q), std::cout);
    }
    return ok ? 0 : 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
