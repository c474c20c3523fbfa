// JSON / CSV serialization.  All rationals go out as "p/q" strings ("p" when
// the denominator is 1); emission is sorted so output is byte-stable.

#pragma once

#include "orthomf/fourier.hpp"
#include "orthomf/hecke.hpp"
#include "orthomf/orthogroup.hpp"
#include "orthomf/quadform.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace orthomf {

using Json = nlohmann::ordered_json;

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_file(const std::string& path, const std::string& body) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write file: " + path);
  out << body;
}

// FNV-1a over the raw file bytes; identifies the Gram file a series belongs to.
inline std::string fnv1a_hex(const std::string& bytes) {
  uint64_t h = 1469598103934665603ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  snprintf(buf, sizeof buf, "%016llx", (unsigned long long)h);
  return buf;
}

// ---------------------------------------------------------------------------
// Gram matrices: {"n": int, "rows": [[int, ...], ...]}.

inline MatZ gram_from_json(const Json& j) {
  long n = j.at("n").get<long>();
  const auto& rows = j.at("rows");
  if ((long)rows.size() != n) throw std::runtime_error("gram: row count != n");
  MatZ S(n, n);
  for (long i = 0; i < n; ++i) {
    if ((long)rows[i].size() != n) throw std::runtime_error("gram: column count != n");
    for (long c = 0; c < n; ++c) S(i, c) = Int(rows[i][c].get<long>());
  }
  return S;
}

inline Json gram_to_json(const MatZ& S) {
  Json j;
  j["n"] = S.rows();
  Json rows = Json::array();
  for (long i = 0; i < S.rows(); ++i) {
    Json row = Json::array();
    for (long c = 0; c < S.cols(); ++c) row.push_back(S(i, c).get_si());
    rows.push_back(row);
  }
  j["rows"] = rows;
  return j;
}

struct LoadedSpace {
  QSpace sp;
  std::string hash;  // of the gram file bytes
};

inline LoadedSpace load_space(const std::string& path) {
  std::string body = read_file(path);
  return {build_space(gram_from_json(Json::parse(body))), fnv1a_hex(body)};
}

// ---------------------------------------------------------------------------
// Series: {"k", "B", "space", "coeffs": [{"lambda": [...], "value": "p/q"}]}.
// Index entries are plain integers when integral, "p/q" strings otherwise.

inline Json rat_json(const Rat& x) {
  if (is_integer(x) && x.get_num().fits_slong_p()) return Json(x.get_num().get_si());
  return Json(rat_str(x));
}

inline Rat rat_from_json(const Json& j) {
  if (j.is_number_integer()) return Rat(j.get<long>());
  if (j.is_string()) return parse_rat(j.get<std::string>());
  throw std::runtime_error("expected integer or rational string");
}

inline Json series_to_json(const FourierSeries& f, const std::string& space_hash) {
  Json j;
  j["k"] = f.k;
  j["B"] = f.B;
  j["space"] = space_hash;
  Json coeffs = Json::array();
  for (const auto& [lam, v] : sorted_support(f)) {
    Json entry;
    Json lj = Json::array();
    for (const auto& x : lam.v) lj.push_back(rat_json(x));
    entry["lambda"] = lj;
    entry["value"] = rat_str(v);
    coeffs.push_back(entry);
  }
  j["coeffs"] = coeffs;
  return j;
}

inline FourierSeries series_from_json(const Json& j, const QSpace& sp,
                                      const std::string& space_hash = "") {
  if (!space_hash.empty() && j.at("space").get<std::string>() != space_hash)
    throw std::runtime_error("series: space hash does not match the Gram file");
  FourierSeries f = zero_series(sp, j.at("k").get<long>(), j.at("B").get<long>());
  for (const auto& entry : j.at("coeffs")) {
    VecQ v;
    for (const auto& x : entry.at("lambda")) v.push_back(rat_from_json(x));
    set_coeff(f, Index(std::move(v)), parse_rat(entry.at("value").get<std::string>()));
  }
  return f;
}

inline std::string series_to_csv(const FourierSeries& f) {
  std::ostringstream out;
  out << "m";
  for (long i = 0; i < f.sp.n; ++i) out << ",mu" << (i + 1);
  out << ",l,norm,eps,value\n";
  for (const auto& [lam, v] : sorted_support(f)) {
    for (long i = 0; i < lam.dim(); ++i) {
      if (i) out << ",";
      out << rat_str(lam.v[i]);
    }
    out << "," << rat_str(norm2(f.sp, lam)) << "," << eps(f.sp, lam).get_str() << ","
        << rat_str(v) << "\n";
  }
  return out.str();
}

// ---------------------------------------------------------------------------
// Elliptic expansions: {"weight": int, "coeffs": ["p/q", ...]}.

inline Json ell_to_json(const EllSeries& g) {
  Json j;
  j["weight"] = g.weight;
  Json c = Json::array();
  for (const auto& x : g.c) c.push_back(rat_str(x));
  j["coeffs"] = c;
  return j;
}

inline std::string ell_to_csv(const EllSeries& g) {
  std::ostringstream out;
  out << "n,value\n";
  for (long i = 0; i < g.length(); ++i) out << i << "," << rat_str(g.c[i]) << "\n";
  return out.str();
}

// ---------------------------------------------------------------------------
// Group elements: {"scale": r, "rows": [["p/q", ...], ...]}.

inline Json gelem_to_json(const GElem& g) {
  Json j;
  j["scale"] = g.scale.get_si();
  Json rows = Json::array();
  for (long i = 0; i < g.mat.rows(); ++i) {
    Json row = Json::array();
    for (long c = 0; c < g.mat.cols(); ++c) row.push_back(rat_str(g.mat(i, c)));
    rows.push_back(row);
  }
  j["rows"] = rows;
  return j;
}

inline Json reps_to_json(const std::vector<CosetFamily>& fams, const Int& q,
                         const std::string& space_hash) {
  Json j;
  j["q"] = q.get_si();
  j["space"] = space_hash;
  Json list = Json::array();
  for (const auto& fam : fams)
    for (const auto& rep : fam.reps) {
      Json entry = gelem_to_json(rep);
      entry["family"] = std::string(1, fam.label);
      list.push_back(entry);
    }
  j["reps"] = list;
  return j;
}

}  // namespace orthomf
