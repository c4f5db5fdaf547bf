// Acceptance run: one PASS/FAIL line per criterion. Tolerances are pinned
// here and checked against each suite's reported worst deviation, so a suite
// cannot pass a criterion with a looser threshold of its own.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "golden_cases.hpp"
#include "qfg/cli.hpp"
#include "qfisher/verify.hpp"

namespace {

using qfisher::verify::CheckResult;
using qfisher::verify::SuiteResult;

struct Pin {
  std::string check;  // exact check name in the suite
  double tol;
};

struct Criterion {
  int id;
  std::string title;
  std::string suite;
  std::vector<Pin> pins;
  double max_seconds = 0.0;  // 0 = no runtime limit
};

const CheckResult* find_check(const SuiteResult& s, const std::string& name) {
  for (const auto& c : s.checks)
    if (c.name == name) return &c;
  return nullptr;
}

bool run_criterion(const Criterion& c, std::string& why) {
  const auto t0 = std::chrono::steady_clock::now();
  const SuiteResult s = qfisher::verify::run_suite(c.suite);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  bool ok = true;
  char buf[256];
  for (const auto& pin : c.pins) {
    const CheckResult* r = find_check(s, pin.check);
    if (!r) {
      why += " missing check '" + pin.check + "';";
      ok = false;
      continue;
    }
    if (!r->passed || !(r->worst <= pin.tol)) {
      std::snprintf(buf, sizeof buf, " '%s' worst %.3e > %.1e;", pin.check.c_str(), r->worst, pin.tol);
      why += buf;
      ok = false;
    }
  }
  if (!s.passed()) {
    why += " suite reported a failing check;";
    ok = false;
  }
  if (c.max_seconds > 0.0 && secs >= c.max_seconds) {
    std::snprintf(buf, sizeof buf, " took %.2fs (limit %.0fs);", secs, c.max_seconds);
    why += buf;
    ok = false;
  }
  std::snprintf(buf, sizeof buf, " %.3fs", secs);
  why += buf;
  return ok;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

bool cli_determinism(std::string& why) {
  const std::filesystem::path fixtures = QFISHER_FIXTURE_DIR;
  const std::filesystem::path golden = QFISHER_GOLDEN_DIR;
  int n = 0;
  bool ok = true;
  bool seen[4] = {false, false, false, false};
  for (const auto& c : qfisher::testing::golden_cases(fixtures)) {
    std::string runs[2];
    for (auto& text : runs) {
      std::ostringstream out, err;
      if (qfg::run(c.args, out, err) != 0) {
        why += " " + c.name + " exited nonzero;";
        ok = false;
      }
      text = out.str();
    }
    if (runs[0] != runs[1] || runs[0] != slurp(golden / c.name)) {
      why += " " + c.name + " differs;";
      ok = false;
    }
    const std::string& cmd = c.args.front();
    seen[0] |= cmd == "eval";
    seen[1] |= cmd == "scan";
    seen[2] |= cmd == "tensor";
    seen[3] |= cmd == "optimize";
    ++n;
  }
  for (bool s : seen)
    if (!s) {
      why += " a command has no golden case;";
      ok = false;
    }
  why += " " + std::to_string(n) + " goldens";
  return ok;
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "SLD residual", "sld-residual", {{"sld residual", 1e-10}}, 1.0},
      {2, "bound chain", "bound-chain",
       {{"classical <= quantum (qubit projective)", 1e-9}, {"classical <= quantum (pure q-dit)", 1e-9}}, 1.0},
      {3, "closed forms vs solver", "closed-forms",
       {{"closed-form total vs solver", 1e-9}, {"transverse QFI at k=1/4, dk=1 is 16/3", 1e-12}}},
      {4, "mixing suppression", "mixing-suppression", {{"sphere QFI = (1-2k)^2 x pure QFI", 1e-9}}},
      {5, "S3 identity", "s3-identity", {{"total Fisher metric = round S^3 pullback", 1e-8}}},
      {6, "Fisher tensor", "fisher-tensor",
       {{"closed form vs 4 Tr[rho0 drho0 drho0']", 1e-10},
        {"(1/4) Im F = -(i/2) Tr rho[X~, X~']", 1e-10},
        {"(1/4) Re F = (1/2) Tr rho{X~, X~'}", 1e-10},
        {"equivariance under conjugation", 1e-10},
        {"F(k=1/4, z=0, v=1, v'=i) = -i/2", 1e-12}}},
      {7, "G_KKS relation", "g-kks",
       {{"(k1-k2) Re F = 4 g_kks", 1e-10}, {"g_kks(k=1/4, z=0, v=v'=1) = -1/8", 1e-12}}},
      {8, "optimizer attainment", "optimizer",
       {{"maximize_cfi reaches QFI (grid 1024, 40 rounds)", 1e-6},
        {"SLD eigenbasis POVM attains QFI", 1e-8},
        {"optimal axis stays in the great-circle plane (rad)", 1e-4}},
       10.0},
      {9, "attainability soundness", "attainability",
       {{"every SLD-eigenbasis outcome attains", 1e-8}, {"sigma_y pair on the great circle is rejected", 0.0}}},
      // worst is reported as 1.9 - slope
      {10, "finite differences", "finite-differences", {{"FD convergence order >= 1.9 (reported as 1.9 - slope)", 0.0}}},
      {11, "wavefunction formulas", "wavefunction",
       {{"quantum - classical = sum p da^2 dx - (sum p da dx)^2", 1e-10}, {"equal when d alpha is constant", 1e-10}}},
  };

  int failed = 0;
  for (const auto& c : criteria) {
    std::string why;
    bool ok = false;
    try {
      ok = run_criterion(c, why);
    } catch (const std::exception& e) {
      why = std::string(" threw: ") + e.what();
    }
    std::printf("%s %2d %s:%s\n", ok ? "PASS" : "FAIL", c.id, c.title.c_str(), why.c_str());
    failed += !ok;
  }
  {
    std::string why;
    bool ok = false;
    try {
      ok = cli_determinism(why);
    } catch (const std::exception& e) {
      why = std::string(" threw: ") + e.what();
    }
    std::printf("%s 12 CLI determinism:%s\n", ok ? "PASS" : "FAIL", why.c_str());
    failed += !ok;
  }
  std::fflush(stdout);
  return failed == 0 ? 0 : 1;
}
