#include "qfg/cli.hpp"

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <limits>
#include <thread>
#include <vector>

#include "CLI11.hpp"

#include "qfg/scenario.hpp"
#include "qfisher/fisher.hpp"
#include "qfisher/optimize.hpp"
#include "qfisher/sld.hpp"
#include "qfisher/verify.hpp"

namespace qfg {

using nlohmann::ordered_json;
using qfisher::Complex;
using qfisher::Error;
using qfisher::ErrorKind;

int exit_code_for(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::ParseError:
    case ErrorKind::InvariantViolation:
      return kExitBadInput;
    default:
      return kExitNumerical;
  }
}

namespace {

double parse_double(const std::string& text, const std::string& what) {
  char* end = nullptr;
  const double v = std::strtod(text.c_str(), &end);
  if (text.empty() || end != text.c_str() + text.size() || !std::isfinite(v)) {
    throw Error(ErrorKind::ParseError, what + ": cannot read number '" + text + "'");
  }
  return v;
}

// "re,im" or "re"
Complex parse_complex_arg(const std::string& text, const std::string& what) {
  const auto comma = text.find(',');
  if (comma == std::string::npos) return {parse_double(text, what), 0.0};
  return {parse_double(text.substr(0, comma), what), parse_double(text.substr(comma + 1), what)};
}

unsigned resolve_jobs(int flag) {
  if (flag > 0) return static_cast<unsigned>(flag);
  if (flag == 0) throw Error(ErrorKind::ParseError, "--jobs must be positive");
  if (const char* env = std::getenv("QFG_JOBS"); env && *env) {
    const double v = parse_double(env, "QFG_JOBS");
    if (v < 1 || v != std::floor(v) || v > 1024) throw Error(ErrorKind::ParseError, "QFG_JOBS must be a positive integer");
    return static_cast<unsigned>(v);
  }
  return 1;
}

ordered_json matrix_json(const qfisher::ComplexMatrix& m) {
  ordered_json rows = ordered_json::array();
  for (std::size_t i = 0; i < m.dim(); ++i) {
    ordered_json row = ordered_json::array();
    for (std::size_t j = 0; j < m.dim(); ++j) row.push_back(ordered_json::array({m(i, j).real(), m(i, j).imag()}));
    rows.push_back(std::move(row));
  }
  return rows;
}

struct Local {
  qfisher::DensityOp rho;
  qfisher::HermitianMatrix drho;
};

Local local_data(const Scenario& s, double theta) {
  const qfisher::Curve& c = *s.curve;
  return {c.evaluate(theta), qfisher::differentiate_curve(c, theta, s.options.derivative, s.options.fd_step)};
}

const qfisher::Curve& require_curve(const Scenario& s, const std::string& what) {
  if (!s.curve) throw Error(ErrorKind::InvariantViolation, "curve: required for " + what);
  return *s.curve;
}

int cmd_eval(const std::string& path, const std::string& quantity, std::ostream& out) {
  const Scenario s = load_scenario(path);
  ordered_json result;
  if (!s.curve) {
    const qfisher::FisherPair f = qfisher::wavefunction_fisher(*s.grid);
    if (quantity == "cfi") {
      result["cfi"] = f.classical;
    } else if (quantity == "qfi") {
      result["qfi"] = f.quantum;
    } else {
      require_curve(s, quantity);
    }
    out << dump(result) << '\n';
    return kExitOk;
  }
  const Local loc = local_data(s, s.theta0);
  if (quantity == "qfi") {
    result["qfi"] = qfisher::quantum_fisher(loc.rho, loc.drho);
  } else if (quantity == "cfi") {
    if (!s.povm) throw Error(ErrorKind::InvariantViolation, "povm: required for cfi");
    result["cfi"] = qfisher::classical_fisher(loc.rho, loc.drho, *s.povm);
  } else if (quantity == "sld") {
    result["sld"] = matrix_json(qfisher::sld_solve(loc.rho, loc.drho));
  } else {
    const qfisher::FisherTensorValue t = qfisher::fisher_tensor_general(loc.rho, loc.drho, loc.drho);
    result["sym"] = t.sym();
    result["antisym"] = t.antisym();
  }
  out << dump(result) << '\n';
  return kExitOk;
}

struct Range {
  double a;
  double b;
  int n;
};

Range parse_range(const std::string& text) {
  const auto c1 = text.find(':');
  const auto c2 = c1 == std::string::npos ? std::string::npos : text.find(':', c1 + 1);
  if (c2 == std::string::npos) throw Error(ErrorKind::ParseError, "--range: expected a:b:n");
  Range r{parse_double(text.substr(0, c1), "--range"), parse_double(text.substr(c1 + 1, c2 - c1 - 1), "--range"), 0};
  const double n = parse_double(text.substr(c2 + 1), "--range");
  if (n < 1 || n != std::floor(n) || n > 1e7) throw Error(ErrorKind::ParseError, "--range: n must be a positive integer");
  r.n = static_cast<int>(n);
  return r;
}

int cmd_scan(const std::string& path, const std::string& param, const std::string& range_text, int jobs_flag,
             std::ostream& out) {
  if (param != "theta") throw Error(ErrorKind::ParseError, "--param: only 'theta' is supported");
  const Range range = parse_range(range_text);
  const unsigned jobs = resolve_jobs(jobs_flag);
  const Scenario s = load_scenario(path);
  require_curve(s, "scan");

  const std::size_t n = static_cast<std::size_t>(range.n);
  std::vector<std::string> rows(n);
  std::vector<std::exception_ptr> failures(n);
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        const double theta = n == 1 ? range.a : range.a + (range.b - range.a) * static_cast<double>(i) / (n - 1);
        const Local loc = local_data(s, theta);
        const qfisher::QfiSplit q = qfisher::qfi_decomposed(loc.rho, loc.drho);
        const double cfi =
            s.povm ? qfisher::classical_fisher(loc.rho, loc.drho, *s.povm) : std::numeric_limits<double>::quiet_NaN();
        rows[i] = format_number(theta) + ',' + format_number(cfi) + ',' + format_number(q.sphere) + ',' +
                  format_number(q.transverse) + ',' + format_number(q.total);
      } catch (...) {
        failures[i] = std::current_exception();
      }
    }
  };
  const unsigned workers = std::min<unsigned>(jobs, static_cast<unsigned>(n));
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }
  for (const auto& f : failures) {
    if (f) std::rethrow_exception(f);
  }
  out << "theta,cfi,qfi_sphere,qfi_transverse,qfi_total\n";
  for (const auto& r : rows) out << r << '\n';
  return kExitOk;
}

int cmd_tensor(double k, const std::string& z_text, const std::string& v_text, const std::string& v2_text,
               std::ostream& out) {
  const Complex v = parse_complex_arg(v_text, "--v");
  const Complex v2 = parse_complex_arg(v2_text, "--v2");
  qfisher::FisherTensorValue t;
  if (z_text == "inf") {
    // velocities are taken in the south-chart coordinate w = 1/z
    const qfisher::QubitPoint p = qfisher::QubitPoint::at_infinity(k);
    t = qfisher::fisher_tensor_general(qfisher::rho_of_kz(p), qfisher::TangentDir(p, 0.0, v).drho(),
                                       qfisher::TangentDir(p, 0.0, v2).drho());
  } else {
    t = qfisher::fisher_tensor(k, parse_complex_arg(z_text, "--z"), v, v2);
  }
  ordered_json result;
  result["sym"] = t.sym();
  result["antisym"] = t.antisym();
  out << dump(result) << '\n';
  return kExitOk;
}

int cmd_optimize(const std::string& path, int grid, int refine, int jobs_flag, std::ostream& out) {
  const unsigned jobs = resolve_jobs(jobs_flag);
  const Scenario s = load_scenario(path);
  require_curve(s, "optimize");
  const Local loc = local_data(s, s.theta0);
  qfisher::OptimizeOptions opt;
  opt.grid_n = grid != -1 ? grid : s.options.grid_n;
  opt.refine_iters = refine != -1 ? refine : s.options.refine_iters;
  opt.jobs = jobs;
  const qfisher::OptimizeResult r = qfisher::maximize_cfi(loc.rho, loc.drho, opt);
  ordered_json result;
  result["n"] = ordered_json::array({r.n[0], r.n[1], r.n[2]});
  result["cfi"] = r.value;
  result["qfi"] = r.qfi;
  result["gap"] = r.gap;
  result["degenerate"] = r.degenerate;
  out << dump(result) << '\n';
  return kExitOk;
}

int cmd_verify(const std::string& suite, std::uint64_t seed, std::ostream& out) {
  std::vector<qfisher::verify::SuiteResult> results;
  if (suite.empty()) {
    results = qfisher::verify::run_all(seed);
  } else {
    results.push_back(qfisher::verify::run_suite(suite, seed));
  }
  bool all = true;
  ordered_json suites = ordered_json::array();
  for (const auto& r : results) {
    ordered_json checks = ordered_json::array();
    for (const auto& c : r.checks) {
      ordered_json cj;
      cj["name"] = c.name;
      cj["passed"] = c.passed;
      cj["worst"] = c.worst;
      cj["tolerance"] = c.tolerance;
      cj["detail"] = c.detail;
      checks.push_back(std::move(cj));
    }
    ordered_json sj;
    sj["suite"] = r.suite;
    sj["passed"] = r.passed();
    sj["checks"] = std::move(checks);
    suites.push_back(std::move(sj));
    all = all && r.passed();
  }
  ordered_json result;
  result["passed"] = all;
  result["suites"] = std::move(suites);
  out << dump(result) << '\n';
  return all ? kExitOk : kExitVerifyFailed;
}

void report(std::ostream& err, std::string_view kind, const std::string& detail) {
  ordered_json e;
  e["error"]["kind"] = std::string(kind);
  e["error"]["detail"] = detail;
  err << dump(e) << '\n';
}

}  // namespace

int run(std::span<const std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Fisher information, SLDs and Fisher tensors for qubit and q-dit state families", "qfg"};
  app.require_subcommand(1);

  std::string scenario;
  std::string quantity;
  auto* eval = app.add_subcommand("eval", "Evaluate one quantity at theta0");
  eval->add_option("--scenario", scenario, "Scenario JSON file")->required();
  eval->add_option("--quantity", quantity, "cfi | qfi | sld | tensor")
      ->required()
      ->check(CLI::IsMember({"cfi", "qfi", "sld", "tensor"}));

  std::string param = "theta";
  std::string range;
  int jobs = -1;
  auto* scan = app.add_subcommand("scan", "Tabulate Fisher information along the curve as CSV");
  scan->add_option("--scenario", scenario, "Scenario JSON file")->required();
  scan->add_option("--param", param, "Scanned parameter");
  scan->add_option("--range", range, "a:b:n, n points from a to b inclusive")->required();
  scan->add_option("--jobs", jobs, "Worker threads (default: QFG_JOBS or 1)");

  double k = 0.25;
  std::string z = "0,0";
  std::string v;
  std::string v2;
  auto* tensor = app.add_subcommand("tensor", "Fisher tensor on two sphere directions");
  tensor->add_option("--k", k, "Smaller eigenvalue in (0, 1/2]")->required();
  tensor->add_option("--z", z, "re,im or inf");
  tensor->add_option("--v", v, "re,im")->required();
  tensor->add_option("--v2", v2, "re,im")->required();

  int grid = -1;
  int refine = -1;
  auto* optimize = app.add_subcommand("optimize", "Search the best projective qubit measurement");
  optimize->add_option("--scenario", scenario, "Scenario JSON file")->required();
  optimize->add_option("--grid", grid, "Fibonacci grid size (default 1024)");
  optimize->add_option("--refine", refine, "Refinement rounds (default 40)");
  optimize->add_option("--jobs", jobs, "Worker threads (default: QFG_JOBS or 1)");

  std::string suite;
  std::uint64_t seed = qfisher::verify::kDefaultSeed;
  auto* verify = app.add_subcommand("verify", "Run the invariant suites");
  verify->add_option("--suite", suite, "Suite name (default: all)");
  verify->add_option("--seed", seed, "Random seed");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    report(err, "ParseError", e.what());
    return kExitBadInput;
  }

  try {
    if (eval->parsed()) return cmd_eval(scenario, quantity, out);
    if (scan->parsed()) return cmd_scan(scenario, param, range, jobs, out);
    if (tensor->parsed()) return cmd_tensor(k, z, v, v2, out);
    if (optimize->parsed()) return cmd_optimize(scenario, grid, refine, jobs, out);
    return cmd_verify(suite, seed, out);
  } catch (const Error& e) {
    report(err, qfisher::to_string(e.kind()), e.what());
    return exit_code_for(e.kind());
  } catch (const std::exception& e) {
    report(err, "NumericalFailure", e.what());
    return kExitNumerical;
  }
}

}  // namespace qfg
