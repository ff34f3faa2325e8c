#ifndef KWGRAPH_CLI_HPP
#define KWGRAPH_CLI_HPP

#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "kwgraph/graph_io.hpp"
#include "kwgraph/report_io.hpp"
#include "kwgraph/solver.hpp"
#include "kwgraph/spectral.hpp"
#include "kwgraph/verify.hpp"

namespace kwgraph::cli {

/// Process exit codes; one per outcome class.
enum ExitCode : int {
  kSuccess = 0,
  kInputError = 1,
  kUnboundedRegime = 2,
  kNotConverged = 3,
  kInconclusiveProbe = 4,
  kVerificationFailed = 5,
};

namespace detail {

inline std::string short_number(double x) {
  std::ostringstream ss;
  ss << std::setprecision(12) << x;
  return ss.str();
}

/// Loads and validates a graph file; prints violations and returns nullopt on
/// failure.
inline std::optional<Graph> load_graph(const std::string& path, std::ostream& err) {
  try {
    Graph g = parse_graph_unchecked(read_text_file(path));
    if (auto violations = validate(g); !violations.empty()) {
      err << "invalid graph '" << path << "':\n";
      for (const Violation& v : violations) err << "  " << v.message() << "\n";
      return std::nullopt;
    }
    return g;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return std::nullopt;
  }
}

inline std::uint64_t seed_from_env(std::uint64_t fallback) {
  if (const char* s = std::getenv("KWGRAPH_SEED")) {
    try {
      return std::stoull(s);
    } catch (const std::exception&) {
      return fallback;
    }
  }
  return fallback;
}

inline bool write_file(const std::string& path, const std::string& contents, std::ostream& err) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    err << "error: cannot write '" << path << "'\n";
    return false;
  }
  out << contents;
  return static_cast<bool>(out);
}

inline std::string resolve_graph_path(const std::string& graph_path,
                                      const std::string& solution_path) {
  namespace fs = std::filesystem;
  const fs::path p(graph_path);
  if (p.is_absolute()) return graph_path;
  const fs::path beside = fs::path(solution_path).parent_path() / p;
  if (fs::exists(beside)) return beside.string();
  return graph_path;
}

}  // namespace detail

struct SpectrumArgs {
  std::string graph;
  double tol = kDefaultGroupingTol;
  bool json = false;
};

inline int cmd_spectrum(const SpectrumArgs& a, std::ostream& out, std::ostream& err) {
  auto g = detail::load_graph(a.graph, err);
  if (!g) return kInputError;
  try {
    const Spectrum spec = compute_spectrum(*g, a.tol);
    if (a.json) {
      out << spectrum_to_json(*g, spec, true).dump() << "\n";
      return kSuccess;
    }
    out << "λ: ";
    for (std::size_t k = 0; k < spec.m(); ++k) {
      if (k) out << ", ";
      out << detail::short_number(spec.lambda(k)) << " (" << spec.multiplicity(k) << ")";
    }
    if (spec.m() >= 2) out << "; C_P = " << detail::short_number(poincare_constant(spec));
    out << "\n";
    return kSuccess;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }
}

struct SolveArgs {
  std::string graph;
  double alpha = 0.0;
  double beta = 0.0;
  std::size_t k = 0;
  double tol = SolverOptions{}.grad_tol;
  int max_iters = SolverOptions{}.max_iters;
  std::string json_out;
};

inline int cmd_solve(const SolveArgs& a, std::ostream& out, std::ostream& err) {
  auto g = detail::load_graph(a.graph, err);
  if (!g) return kInputError;
  try {
    const Spectrum spec = compute_spectrum(*g);
    const Regime regime = classify_regime(spec, a.alpha, a.beta, a.k);
    if (regime.tag == RegimeTag::UnboundedBelow) {
      ojson doc;
      doc["graph"] = a.graph;
      doc["alpha"] = a.alpha;
      doc["beta"] = a.beta;
      doc["requested_k"] = a.k;
      doc["regime"] = regime_to_json(regime);
      out << doc.dump() << "\n";
      err << "regime UNBOUNDED_BELOW: inf J = -inf on this subspace; run `kwgraph probe` "
             "to certify divergence\n";
      return kUnboundedRegime;
    }
    SolverOptions opts;
    opts.grad_tol = a.tol;
    opts.max_iters = a.max_iters;
    opts.seed = detail::seed_from_env(opts.seed);
    const SolveReport report = minimize(*g, spec, a.alpha, a.beta, a.k, opts);
    const std::string text = solve_report_to_json(*g, report, a.graph, a.k).dump();
    out << text << "\n";
    if (!a.json_out.empty() && !detail::write_file(a.json_out, text + "\n", err)) {
      return kInputError;
    }
    if (report.status != SolveStatus::Converged) {
      err << "not converged: grad_sup = " << report.grad_sup << " after " << report.iterations
          << " iterations\n";
      return kNotConverged;
    }
    return kSuccess;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }
}

struct ProbeArgs {
  std::string graph;
  double alpha = 0.0;
  double beta = 0.0;
  std::size_t k = 0;
  int max_exp = 20;
  std::string csv_out;
};

inline int cmd_probe(const ProbeArgs& a, std::ostream& out, std::ostream& err) {
  auto g = detail::load_graph(a.graph, err);
  if (!g) return kInputError;
  try {
    const Spectrum spec = compute_spectrum(*g);
    const ProbeReport report = probe_divergence(*g, spec, a.alpha, a.beta, a.k, a.max_exp);
    out << probe_report_to_json(*g, report, a.alpha, a.beta, a.k).dump() << "\n";
    if (!a.csv_out.empty()) {
      std::string csv = "t,J\n";
      for (const ProbeSample& s : report.samples)
        csv += ojson(s.t).dump() + "," + ojson(s.J).dump() + "\n";
      if (!detail::write_file(a.csv_out, csv, err)) return kInputError;
    }
    return report.verdict == ProbeVerdict::Unbounded ? kSuccess : kInconclusiveProbe;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }
}

struct VerifyArgs {
  std::string solution;
  double tol = 1e-8;
};

inline int cmd_verify(const VerifyArgs& a, std::ostream& out, std::ostream& err) {
  try {
    nlohmann::json doc;
    try {
      doc = nlohmann::json::parse(read_text_file(a.solution));
    } catch (const nlohmann::json::exception& e) {
      err << "error: malformed candidate: " << e.what() << "\n";
      return kInputError;
    }
    CandidateDocument cand = parse_candidate_header(doc);
    auto g = detail::load_graph(detail::resolve_graph_path(cand.graph_path, a.solution), err);
    if (!g) return kInputError;
    cand.candidate.u = function_from_json(*g, doc["u"]);
    const Spectrum spec = compute_spectrum(*g);
    if (cand.candidate.k >= spec.m()) {
      err << "error: k = " << cand.candidate.k << " out of range\n";
      return kInputError;
    }
    const std::vector<CheckResult> checks = verify_solution(*g, spec, cand.candidate, a.tol);
    out << checks_to_json(checks, a.tol).dump() << "\n";
    if (!all_passed(checks)) {
      for (const CheckResult& c : checks)
        if (!c.passed) err << "FAILED " << c.name << ": " << c.detail << "\n";
      return kVerificationFailed;
    }
    return kSuccess;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const nlohmann::json::exception& e) {
    err << "error: malformed candidate: " << e.what() << "\n";
    return kInputError;
  }
}

/// Entry point shared by the executable and the tests.
inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Kazdan-Warner equations on finite weighted graphs"};
  app.require_subcommand(1);

  SpectrumArgs spectrum_args;
  auto* spectrum = app.add_subcommand("spectrum", "eigenvalues of -Laplacian and Poincare constant");
  spectrum->add_option("graph", spectrum_args.graph, "graph JSON file")->required();
  spectrum->add_option("--tol", spectrum_args.tol, "relative eigenvalue grouping tolerance");
  spectrum->add_flag("--json", spectrum_args.json, "emit the full spectrum as JSON");

  SolveArgs solve_args;
  auto* solve = app.add_subcommand("solve", "minimize J_{alpha,beta} and report the solution");
  solve->add_option("graph", solve_args.graph, "graph JSON file")->required();
  solve->add_option("--alpha", solve_args.alpha)->required();
  solve->add_option("--beta", solve_args.beta)->required();
  solve->add_option("--k", solve_args.k, "eigenspace index (0 = mean-zero space)");
  solve->add_option("--tol", solve_args.tol, "sup-norm gradient tolerance");
  solve->add_option("--max-iters", solve_args.max_iters);
  solve->add_option("--json", solve_args.json_out, "also write the report to this file");

  ProbeArgs probe_args;
  auto* probe = app.add_subcommand("probe", "evaluate J along an eigenfunction ray");
  probe->add_option("graph", probe_args.graph, "graph JSON file")->required();
  probe->add_option("--alpha", probe_args.alpha)->required();
  probe->add_option("--beta", probe_args.beta)->required();
  probe->add_option("--k", probe_args.k);
  probe->add_option("--max-exp", probe_args.max_exp, "largest exponent e in t = 2^e");
  probe->add_option("--csv", probe_args.csv_out, "write t,J samples to this file");

  VerifyArgs verify_args;
  auto* verify = app.add_subcommand("verify", "check a candidate solution");
  verify->add_option("solution", verify_args.solution, "candidate JSON file")->required();
  verify->add_option("--tol", verify_args.tol);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kInputError;
  }

  if (*spectrum) return cmd_spectrum(spectrum_args, out, err);
  if (*solve) return cmd_solve(solve_args, out, err);
  if (*probe) return cmd_probe(probe_args, out, err);
  return cmd_verify(verify_args, out, err);
}

}  // namespace kwgraph::cli

#endif  // KWGRAPH_CLI_HPP
