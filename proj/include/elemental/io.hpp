#pragma once

#include <cstdio>
#include <cmath>
#include <cstddef>
#include <ostream>
#include <string>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "elemental/certificate.hpp"
#include "elemental/errors.hpp"
#include "elemental/simulation.hpp"
#include "elemental/weights.hpp"

namespace elemental::io {

using json = nlohmann::json;

/// Shortest form that reads back to the same double: 17 significant digits.
inline std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// ---- weight-matrix documents --------------------------------------------
//
// { "n": int, "kind": "elemental" | "spacing",
//   "entries": [ { "i": int, "j": int, "w": float }, ... ] }
// Omitted entries are zero; i, j are 1-based.

inline json entries_json(const UpperTriangular& m) {
  json entries = json::array();
  for (std::size_t i = 1; i <= m.n(); ++i) {
    for (std::size_t j = i + 1; j <= m.n(); ++j) {
      if (m(i, j) != 0.0) entries.push_back({{"i", i}, {"j", j}, {"w", m(i, j)}});
    }
  }
  return entries;
}

inline json to_json(const ElementalWeights& r) {
  return {{"n", r.n()}, {"kind", "elemental"}, {"entries", entries_json(r.matrix())}};
}

inline json to_json(const SpacingWeights& a) {
  return {{"n", a.n()}, {"kind", "spacing"}, {"entries", entries_json(a.matrix())}};
}

using WeightDocument = std::variant<ElementalWeights, SpacingWeights>;

/// Parses and validates a weight-matrix document. Elemental weights must sum
/// to one and sit on J >= I + 2; spacing weights must sum to zero and sit on
/// j >= i + 1. Violations throw PreconditionError. With `require_invariant`
/// false the sum condition is not enforced (shape still is).
inline WeightDocument weights_from_json(const json& doc, bool require_invariant = true) {
  try {
    const auto n = doc.at("n").get<long long>();
    const auto kind = doc.at("kind").get<std::string>();
    if (n < 2 || n > 100000) throw PreconditionError("weight document: n out of range");
    if (kind != "elemental" && kind != "spacing") {
      throw PreconditionError("weight document: kind must be \"elemental\" or \"spacing\"");
    }
    const bool elemental = kind == "elemental";
    const std::size_t offset = elemental ? 2 : 1;
    UpperTriangular m(static_cast<std::size_t>(n));
    for (const auto& e : doc.at("entries")) {
      const auto i = e.at("i").get<long long>();
      const auto j = e.at("j").get<long long>();
      const double w = e.at("w").get<double>();
      if (i < 1 || j > n || j < i + static_cast<long long>(offset)) {
        throw PreconditionError("weight document: entry (" + std::to_string(i) + ", " + std::to_string(j) +
                                ") is outside the " + kind + " triangle");
      }
      if (!std::isfinite(w)) throw PreconditionError("weight document: non-finite weight");
      m(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) += w;
    }
    if (elemental) {
      return require_invariant ? ElementalWeights(std::move(m)) : ElementalWeights::unconstrained(std::move(m));
    }
    return require_invariant ? SpacingWeights(std::move(m)) : SpacingWeights::unconstrained(std::move(m));
  } catch (const json::exception& e) {
    throw PreconditionError(std::string("weight document: ") + e.what());
  }
}

/// Spacing weights of either kind of document.
inline SpacingWeights spacing_weights_of(const WeightDocument& doc) {
  if (const auto* r = std::get_if<ElementalWeights>(&doc)) return expand(*r);
  return std::get<SpacingWeights>(doc);
}

// ---- certificate ---------------------------------------------------------

inline json to_json(const CertificateReport& r) {
  return {{"zero_sum_ok", r.zero_sum_ok},
          {"psi_i_sum", r.psi_i_sum},
          {"psi_j_sum", r.psi_j_sum},
          {"b", r.b.b},
          {"passed", r.passed}};
}

// ---- summary tables ------------------------------------------------------

inline constexpr const char* kSummaryHeader = "n,xi,estimator,mean,bias,variance,rmse,stderr,reps";
inline constexpr const char* kConsistencyHeader = "n,xi,estimator,mean,bias,variance,rmse,stderr,reps,axis";
inline constexpr const char* kEfficiencyHeader = "n,xi,scheme,efficiency,min_variance,lower,upper,scheme_variance";
inline constexpr const char* kSampleHeader = "rep,rank,value";
inline constexpr const char* kEstimateHeader = "rep,estimator,value";

inline std::string csv_fields(const SummaryRow& r) {
  return std::to_string(r.n) + "," + format_double(r.xi) + "," + r.estimator + "," + format_double(r.mean) + "," +
         format_double(r.bias) + "," + format_double(r.variance) + "," + format_double(r.rmse) + "," +
         format_double(r.stderr_of_mean) + "," + std::to_string(r.replications);
}

inline void write_summary_csv(std::ostream& os, const std::vector<SummaryRow>& rows) {
  os << kSummaryHeader << '\n';
  for (const auto& r : rows) os << csv_fields(r) << '\n';
}

inline void write_consistency_csv(std::ostream& os, const std::vector<ConsistencyRow>& rows) {
  os << kConsistencyHeader << '\n';
  for (const auto& r : rows) os << csv_fields(r.summary) << ',' << format_double(r.axis) << '\n';
}

inline void write_efficiency_csv(std::ostream& os, const std::vector<EfficiencyRow>& rows) {
  os << kEfficiencyHeader << '\n';
  for (const auto& r : rows) {
    os << r.n << ',' << format_double(r.xi) << ',' << r.scheme << ',' << format_double(r.efficiency) << ','
       << format_double(r.min_variance) << ',' << format_double(r.lower) << ',' << format_double(r.upper) << ','
       << format_double(r.scheme_variance) << '\n';
  }
}

}  // namespace elemental::io
