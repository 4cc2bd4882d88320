#include "rankbound/witness_io.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "rankbound/version.hpp"

namespace rankbound {

namespace {

using json = nlohmann::ordered_json;

json encode_complex(const Complex& z) { return json::array({z.real(), z.imag()}); }

json encode_vector(const CVector& v) {
  json arr = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) arr.push_back(encode_complex(v(i)));
  return arr;
}

json encode_matrix(const CMatrix& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(encode_complex(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

Complex decode_complex(const json& j, const char* where) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw WitnessFileError(std::string(where) + ": complex entries must be [re, im] numbers");
  const double re = j[0].get<double>();
  const double im = j[1].get<double>();
  if (!std::isfinite(re) || !std::isfinite(im))
    throw WitnessFileError(std::string(where) + ": non-finite coordinate");
  return {re, im};
}

CVector decode_vector(const json& j, Eigen::Index expected, const char* where) {
  if (!j.is_array() || static_cast<Eigen::Index>(j.size()) != expected)
    throw WitnessFileError(std::string(where) + ": wrong vector length");
  CVector v(expected);
  for (Eigen::Index i = 0; i < expected; ++i) v(i) = decode_complex(j[i], where);
  return v;
}

CMatrix decode_matrix(const json& j, Eigen::Index rows, Eigen::Index cols, const char* where) {
  if (!j.is_array() || static_cast<Eigen::Index>(j.size()) != rows)
    throw WitnessFileError(std::string(where) + ": wrong row count");
  CMatrix m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    const json& row = j[i];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols)
      throw WitnessFileError(std::string(where) + ": wrong column count");
    for (Eigen::Index k = 0; k < cols; ++k) m(i, k) = decode_complex(row[k], where);
  }
  return m;
}

const json& require(const json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end())
    throw WitnessFileError(std::string("witness file is missing field '") + key + "'");
  return *it;
}

long long require_int(const json& j, const char* key) {
  const json& v = require(j, key);
  if (!v.is_number_integer())
    throw WitnessFileError(std::string("witness field '") + key + "' must be an integer");
  return v.get<long long>();
}

}  // namespace

nlohmann::ordered_json witness_to_json(const WitnessSet& ws) {
  json j;
  j["schema"] = "rankbound-witness";
  j["format"] = {{"a", ws.profile.format.a},
                 {"b", ws.profile.format.b},
                 {"c", ws.profile.format.c},
                 {"r", ws.profile.format.r}};
  j["profile"] = {
      {"dim", ws.profile.dim}, {"codim", ws.profile.codim}, {"fiber_dim", ws.profile.fiber_dim}};
  j["params"] = {{"A", encode_matrix(ws.params.A)},
                 {"B", encode_vector(ws.params.B)},
                 {"H", encode_matrix(ws.params.H)},
                 {"u0", encode_vector(ws.params.u0)}};
  json sols = json::array();
  for (const auto& sol : ws.solutions) {
    sols.push_back({{"u", encode_vector(sol.u)},
                    {"t", encode_vector(sol.t)},
                    {"residual_norm", sol.residual_norm}});
  }
  j["solutions"] = std::move(sols);
  json meta;
  meta["tool_version"] = kToolVersion;
  meta["index_order"] = kIndexOrder;
  meta["rng_seed"] = ws.meta.rng_seed;
  meta["loops_run"] = ws.meta.loops_run;
  meta["paths_failed"] = ws.meta.paths_failed;
  meta["stall_counter"] = ws.meta.stall_counter;
  meta["target_count"] =
      ws.meta.target_count ? json(*ws.meta.target_count) : json(nullptr);
  meta["stop_reason"] = ws.meta.stop_reason;
  meta["fiber_collisions"] = ws.meta.fiber_collisions;
  j["meta"] = std::move(meta);
  return j;
}

WitnessSet witness_from_json(const nlohmann::ordered_json& j, double residual_tol) {
  if (!j.is_object()) throw WitnessFileError("witness file is not a JSON object");
  const json& schema = require(j, "schema");
  if (!schema.is_string() || schema.get<std::string>() != "rankbound-witness")
    throw WitnessFileError("unrecognized witness schema");

  const json& jf = require(j, "format");
  Format format;
  try {
    format = Format(static_cast<int>(require_int(jf, "a")), static_cast<int>(require_int(jf, "b")),
                    static_cast<int>(require_int(jf, "c")), static_cast<int>(require_int(jf, "r")));
  } catch (const std::invalid_argument& e) {
    throw WitnessFileError(std::string("witness format is invalid: ") + e.what());
  }
  if (format.a != require_int(jf, "a") || format.b != require_int(jf, "b") ||
      format.c != require_int(jf, "c"))
    throw WitnessFileError("witness format sides must be stored in sorted order");

  const json& jp = require(j, "profile");
  SecantProfile profile{format, require_int(jp, "dim"), require_int(jp, "codim"),
                        require_int(jp, "fiber_dim")};
  const long long ambient = format.ambient_dim();
  const long long n_u = format.chart_unknowns();
  if (profile.dim < 0 || profile.dim + profile.codim != ambient ||
      profile.fiber_dim != n_u - profile.dim || profile.codim < 1)
    throw WitnessFileError("witness profile is inconsistent with its format");

  const json& jparams = require(j, "params");
  WitnessSet ws;
  ws.profile = profile;
  ws.params.A = decode_matrix(require(jparams, "A"), ambient, profile.codim, "params.A");
  ws.params.B = decode_vector(require(jparams, "B"), ambient, "params.B");
  ws.params.H =
      decode_matrix(require(jparams, "H"), n_u - profile.dim, n_u, "params.H");
  ws.params.u0 = decode_vector(require(jparams, "u0"), n_u, "params.u0");

  const json& jsols = require(j, "solutions");
  if (!jsols.is_array()) throw WitnessFileError("witness solutions must be an array");
  for (std::size_t i = 0; i < jsols.size(); ++i) {
    Solution sol;
    sol.u = decode_vector(require(jsols[i], "u"), n_u, "solution u");
    sol.t = decode_vector(require(jsols[i], "t"), profile.codim, "solution t");
    sol.residual_norm = evaluate(format, profile, ws.params, sol.u, sol.t).norm();
    if (!(sol.residual_norm <= residual_tol)) {
      std::ostringstream msg;
      msg << "witness solution " << i << " fails revalidation: residual "
          << sol.residual_norm << " exceeds " << residual_tol;
      throw WitnessFileError(msg.str());
    }
    ws.solutions.push_back(std::move(sol));
  }

  const json& jm = require(j, "meta");
  const json& order = require(jm, "index_order");
  if (!order.is_string() || order.get<std::string>() != kIndexOrder)
    throw WitnessFileError("witness file uses an unsupported index order");
  const json& version = require(jm, "tool_version");
  if (!version.is_string()) throw WitnessFileError("witness meta.tool_version must be a string");
  const json& seed = require(jm, "rng_seed");
  if (!seed.is_number_integer())
    throw WitnessFileError("witness meta.rng_seed must be an integer");
  ws.meta.rng_seed = seed.get<std::uint64_t>();
  ws.meta.loops_run = require_int(jm, "loops_run");
  ws.meta.paths_failed = require_int(jm, "paths_failed");
  ws.meta.stall_counter = require_int(jm, "stall_counter");
  const json& target = require(jm, "target_count");
  if (target.is_null())
    ws.meta.target_count = std::nullopt;
  else if (target.is_number_integer())
    ws.meta.target_count = target.get<long long>();
  else
    throw WitnessFileError("witness meta.target_count must be an integer or null");
  const json& reason = require(jm, "stop_reason");
  if (!reason.is_string()) throw WitnessFileError("witness meta.stop_reason must be a string");
  ws.meta.stop_reason = reason.get<std::string>();
  ws.meta.fiber_collisions = require_int(jm, "fiber_collisions");
  return ws;
}

void save_witness(const WitnessSet& ws, const std::string& path) {
  const std::filesystem::path target(path);
  const std::filesystem::path temp = target.string() + ".tmp";
  {
    std::ofstream out(temp);
    if (!out) throw WitnessFileError("cannot open '" + temp.string() + "' for writing");
    out << witness_to_json(ws).dump(2) << "\n";
    if (!out) throw WitnessFileError("failed while writing '" + temp.string() + "'");
  }
  std::filesystem::rename(temp, target);
}

WitnessSet load_witness(const std::string& path, double residual_tol) {
  std::ifstream in(path);
  if (!in) throw WitnessFileError("cannot open witness file '" + path + "'");
  nlohmann::ordered_json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw WitnessFileError(std::string("witness file is not valid JSON: ") + e.what());
  }
  return witness_from_json(j, residual_tol);
}

}  // namespace rankbound
