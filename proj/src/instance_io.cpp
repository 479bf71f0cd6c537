#include "pmlp/instance_io.hpp"

#include <cmath>
#include <utility>

#include <nlohmann/json.hpp>

#include "pmlp/rng.hpp"

namespace pmlp {

namespace {

using nlohmann::json;

double require_real(const json& j, const std::string& path) {
  if (!j.is_number()) throw ParseError(path, "expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) throw ParseError(path, "nonfinite value");
  return v;
}

std::size_t require_count(const json& j, const std::string& path) {
  if (!j.is_number_integer() || j.get<long long>() <= 0) {
    throw ParseError(path, "expected a positive integer");
  }
  return static_cast<std::size_t>(j.get<long long>());
}

Vector require_vector(const json& j, std::size_t len, const std::string& path) {
  if (!j.is_array()) throw ParseError(path, "expected an array");
  if (j.size() != len) {
    throw ParseError(path, "expected " + std::to_string(len) +
                               " entries, got " + std::to_string(j.size()));
  }
  std::vector<double> out(len);
  for (std::size_t i = 0; i < len; ++i) {
    out[i] = require_real(j[i], path + "[" + std::to_string(i) + "]");
  }
  return Vector(std::move(out));
}

}  // namespace

LpInstance instance_from_json(const json& doc,
                              std::vector<std::string>* warnings) {
  if (!doc.is_object()) throw ParseError("$", "expected a JSON object");
  for (const char* key : {"n", "d", "A", "b", "c"}) {
    if (!doc.contains(key)) {
      throw ParseError(key, "missing required field");
    }
  }
  const std::size_t n = require_count(doc["n"], "n");
  const std::size_t d = require_count(doc["d"], "d");
  if (n < d) throw ParseError("n", "need n >= d");

  if (!doc["A"].is_array() || doc["A"].size() != d) {
    throw ParseError("A", "expected " + std::to_string(d) + " rows");
  }
  Matrix a(d, n, 0.0);
  for (std::size_t i = 0; i < d; ++i) {
    const Vector row = require_vector(doc["A"][i], n, "A[" + std::to_string(i) + "]");
    for (std::size_t j = 0; j < n; ++j) a(i, j) = row[j];
  }

  LpInstance inst;
  inst.a = std::move(a);
  inst.b = require_vector(doc["b"], d, "b");
  inst.c = require_vector(doc["c"], n, "c");

  if (doc.contains("L")) {
    inst.lipschitz = require_real(doc["L"], "L");
    if (!(inst.lipschitz > 0.0)) throw ParseError("L", "must be positive");
    if (norm_inf(inst.c) > inst.lipschitz) {
      throw ParseError("L", "|c|_inf exceeds the declared Lipschitz bound");
    }
  } else {
    inst.lipschitz = std::max(norm_inf(inst.c), 1.0);
    if (warnings) {
      warnings->push_back("L missing; defaulting to max(|c|_inf, 1) = " +
                          std::to_string(inst.lipschitz));
    }
  }

  if (doc.contains("R")) {
    inst.diameter = require_real(doc["R"], "R");
    if (!(inst.diameter > 0.0)) throw ParseError("R", "must be positive");
  } else {
    // Heuristic stand-in; the recovery guarantees are only as good as R.
    inst.diameter = 2.0 * static_cast<double>(n) * std::max(1.0, norm_inf(inst.b));
    if (warnings) {
      warnings->push_back(
          "R missing; defaulting to 2*n*max(1, |b|_inf) = " +
          std::to_string(inst.diameter) +
          " (supply a true diameter bound for meaningful guarantees)");
    }
  }

  if (rank(inst.a) != d) {
    throw ParseError("A", "rank-deficient constraint matrix (rank " +
                              std::to_string(rank(inst.a)) + " < d = " +
                              std::to_string(d) + ")");
  }
  inst.validate();
  return inst;
}

LpInstance parse_instance(const std::string& text,
                          std::vector<std::string>* warnings) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw ParseError("$", std::string("invalid JSON: ") + e.what());
  }
  return instance_from_json(doc, warnings);
}

json instance_to_json(const LpInstance& inst) {
  json doc;
  doc["n"] = inst.n();
  doc["d"] = inst.d();
  json rows = json::array();
  for (std::size_t i = 0; i < inst.d(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < inst.n(); ++j) row.push_back(inst.a(i, j));
    rows.push_back(std::move(row));
  }
  doc["A"] = std::move(rows);
  doc["b"] = inst.b.raw();
  doc["c"] = inst.c.raw();
  doc["R"] = inst.diameter;
  doc["L"] = inst.lipschitz;
  return doc;
}

std::string instance_to_text(const LpInstance& inst) {
  return instance_to_json(inst).dump(2) + "\n";
}

LpInstance generate_instance(std::size_t n, std::size_t d, std::uint64_t seed,
                             GeneratorWitness* witness) {
  if (n < d || d == 0) {
    throw DomainError("generate_instance: need n >= d >= 1");
  }
  SplitMix64 rng(seed);

  Matrix a;
  bool full_rank = false;
  for (int attempt = 0; attempt < 100 && !full_rank; ++attempt) {
    Matrix cand(d, n, 0.0);
    for (std::size_t i = 0; i < d; ++i) {
      for (std::size_t j = 0; j < n; ++j) cand(i, j) = rng.next_in(-1.0, 1.0);
    }
    if (rank(cand) == d) {
      a = std::move(cand);
      full_rank = true;
    }
  }
  if (!full_rank) {
    throw RankError("generate_instance: no full-rank A in 100 attempts");
  }

  Vector x_star(n, 0.0);
  for (std::size_t j = 0; j < n; ++j) x_star[j] = rng.next_in(0.5, 1.5);
  const Vector b = mat_vec(a, x_star);

  Vector y(d, 0.0);
  for (std::size_t i = 0; i < d; ++i) y[i] = rng.next_in(-1.0, 1.0);
  Vector c_raw(n, 0.0);
  for (std::size_t j = 0; j < n; ++j) c_raw[j] = rng.next_in(-1.0, 1.0);

  // slack target: map c' - A^T y affinely onto [0.1, 2]
  const Vector aty = mat_transpose_vec(a, y);
  Vector s_raw = sub(c_raw, aty);
  double lo = s_raw[0], hi = s_raw[0];
  for (double v : s_raw) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  Vector s(n, 0.0);
  if (hi > lo) {
    for (std::size_t j = 0; j < n; ++j) {
      s[j] = 0.1 + 1.9 * (s_raw[j] - lo) / (hi - lo);
    }
  } else {
    for (std::size_t j = 0; j < n; ++j) s[j] = 1.0;
  }

  LpInstance inst;
  inst.a = std::move(a);
  inst.b = b;
  inst.c = add(aty, s);
  inst.diameter = 2.0 * norm1(x_star);
  inst.lipschitz = std::max(norm_inf(inst.c), 1.0);
  inst.validate();
  if (witness) {
    witness->x_star = std::move(x_star);
    witness->y = std::move(y);
    witness->s = std::move(s);
  }
  return inst;
}

}  // namespace pmlp
