#ifndef KWGRAPH_REPORT_IO_HPP
#define KWGRAPH_REPORT_IO_HPP

#include <string>
#include <vector>

#include "json.hpp"
#include "kwgraph/graph_io.hpp"
#include "kwgraph/solver.hpp"
#include "kwgraph/spectral.hpp"
#include "kwgraph/verify.hpp"

// JSON documents exchanged by the command-line tool. Objects are emitted with
// ordered keys and shortest round-trip doubles so identical inputs give
// byte-identical output.

namespace kwgraph {

using ojson = nlohmann::ordered_json;

inline ojson function_to_json(const Graph& g, const VertexFunction& f) {
  ojson out = ojson::object();
  for (std::size_t x = 0; x < g.size(); ++x) out[g.vertex_ids()[x]] = f[x];
  return out;
}

/// Reads {"id": value, ...}; every vertex must be present, no extras.
inline VertexFunction function_from_json(const Graph& g, const nlohmann::json& j) {
  if (!j.is_object()) throw Error(ErrorKind::Parse, "vertex function must be an object");
  VertexFunction f(g.size());
  std::vector<bool> seen(g.size(), false);
  for (auto it = j.begin(); it != j.end(); ++it) {
    auto idx = g.index_of(it.key());
    if (!idx) throw Error(ErrorKind::Parse, "unknown vertex id '" + it.key() + "'");
    if (!it.value().is_number())
      throw Error(ErrorKind::Parse, "value for '" + it.key() + "' is not a number");
    f[*idx] = it.value().get<double>();
    seen[*idx] = true;
  }
  for (std::size_t x = 0; x < g.size(); ++x) {
    if (!seen[x]) throw Error(ErrorKind::Parse, "missing value for vertex '" + g.vertex_ids()[x] + "'");
  }
  return f;
}

inline ojson multipliers_to_json(const std::vector<EigenMultiplier>& t) {
  ojson out = ojson::array();
  for (const EigenMultiplier& m : t) out.push_back({{"s", m.s}, {"i", m.i}, {"value", m.value}});
  return out;
}

inline std::vector<EigenMultiplier> multipliers_from_json(const nlohmann::json& j) {
  if (!j.is_array()) throw Error(ErrorKind::Parse, "'t' must be an array");
  std::vector<EigenMultiplier> out;
  for (const auto& e : j) {
    if (!e.is_object() || !e.contains("s") || !e.contains("i") || !e.contains("value"))
      throw Error(ErrorKind::Parse, "multiplier entries need s, i and value");
    out.push_back({e["s"].get<std::size_t>(), e["i"].get<std::size_t>(), e["value"].get<double>()});
  }
  return out;
}

inline ojson spectrum_to_json(const Graph& g, const Spectrum& spec, bool with_bases) {
  ojson out;
  out["vertices"] = g.vertex_ids();
  out["grouping_tol"] = spec.grouping_tol;
  out["eigenvalues"] = spec.eigenvalues;
  out["multiplicities"] = spec.multiplicities();
  out["poincare_constant"] = spec.m() >= 2 ? ojson(poincare_constant(spec)) : ojson(nullptr);
  if (with_bases) {
    ojson bases = ojson::array();
    for (const auto& basis : spec.bases) {
      ojson group = ojson::array();
      for (const VertexFunction& v : basis) group.push_back(v.vector());
      bases.push_back(std::move(group));
    }
    out["bases"] = std::move(bases);
  }
  return out;
}

inline Spectrum spectrum_from_json(const nlohmann::json& j) {
  try {
    Spectrum spec;
    spec.grouping_tol = j.at("grouping_tol").get<double>();
    spec.eigenvalues = j.at("eigenvalues").get<std::vector<double>>();
    for (const auto& group : j.at("bases")) {
      std::vector<VertexFunction> basis;
      for (const auto& v : group) basis.emplace_back(v.get<std::vector<double>>());
      spec.bases.push_back(std::move(basis));
    }
    if (spec.bases.size() != spec.eigenvalues.size())
      throw Error(ErrorKind::Parse, "spectrum: bases and eigenvalues disagree in length");
    return spec;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::Parse, std::string("malformed spectrum document: ") + e.what());
  }
}

inline ojson regime_to_json(const Regime& r) {
  return {{"tag", to_string(r.tag)},
          {"subspace_index", r.subspace_index},
          {"trivial_subspace", r.trivial_subspace}};
}

/// Solve report; a superset of the candidate-solution format, so it can be fed
/// straight back to `verify`.
inline ojson solve_report_to_json(const Graph& g, const SolveReport& r,
                                  const std::string& graph_path, std::size_t requested_k) {
  ojson out;
  out["graph"] = graph_path;
  out["alpha"] = r.alpha;
  out["beta"] = r.beta;
  out["k"] = r.regime.subspace_index;
  out["requested_k"] = requested_k;
  out["regime"] = regime_to_json(r.regime);
  out["status"] = to_string(r.status);
  out["objective"] = r.objective;
  out["grad_sup"] = r.grad_sup;
  out["residual_sup"] = r.residual_sup;
  out["residual_l2"] = r.residual_l2;
  out["xi"] = r.xi;
  out["t"] = multipliers_to_json(r.t_multipliers);
  out["iterations"] = r.iterations;
  out["seed"] = r.seed;
  out["u"] = function_to_json(g, r.minimizer);
  out["trace"] = r.objective_trace;
  return out;
}

struct CandidateDocument {
  std::string graph_path;
  Candidate candidate;
};

/// Parses {"graph": path, "alpha": A, "beta": B, "k": K, "u": {...}} with
/// optional "xi" and "t". The graph itself is loaded by the caller.
inline CandidateDocument parse_candidate_header(const nlohmann::json& j) {
  if (!j.is_object()) throw Error(ErrorKind::Parse, "candidate must be a JSON object");
  CandidateDocument doc;
  doc.graph_path = detail::require_string(j, "graph", "candidate");
  doc.candidate.alpha = detail::require_number(j, "alpha", "candidate");
  doc.candidate.beta = detail::require_number(j, "beta", "candidate");
  const double k = detail::require_number(j, "k", "candidate");
  if (k < 0 || k != static_cast<double>(static_cast<std::size_t>(k)))
    throw Error(ErrorKind::Parse, "candidate: k must be a non-negative integer");
  doc.candidate.k = static_cast<std::size_t>(k);
  if (!j.contains("u")) throw Error(ErrorKind::Parse, "candidate: missing field 'u'");
  if (j.contains("xi") && j.contains("t")) {
    doc.candidate.claimed = Multipliers{detail::require_number(j, "xi", "candidate"),
                                        multipliers_from_json(j["t"])};
  }
  return doc;
}

inline ojson probe_report_to_json(const Graph& g, const ProbeReport& p, double alpha,
                                  double beta, std::size_t k) {
  ojson out;
  out["alpha"] = alpha;
  out["beta"] = beta;
  out["k"] = k;
  out["regime"] = regime_to_json(p.regime);
  out["verdict"] = to_string(p.verdict);
  out["direction"] = function_to_json(g, p.direction);
  ojson samples = ojson::array();
  for (const ProbeSample& s : p.samples) samples.push_back({{"t", s.t}, {"J", s.J}});
  out["samples"] = std::move(samples);
  return out;
}

inline ojson checks_to_json(const std::vector<CheckResult>& checks, double tol) {
  ojson out;
  out["tol"] = tol;
  out["passed"] = all_passed(checks);
  ojson list = ojson::array();
  for (const CheckResult& c : checks)
    list.push_back({{"name", c.name}, {"passed", c.passed}, {"value", c.value}, {"detail", c.detail}});
  out["checks"] = std::move(list);
  return out;
}

}  // namespace kwgraph

#endif  // KWGRAPH_REPORT_IO_HPP
