#pragma once

// Shipped CLI invocations whose stdout is frozen under tests/golden.

#include <filesystem>
#include <string>
#include <vector>

namespace qfisher::testing {

struct GoldenCase {
  std::string name;
  std::vector<std::string> args;
};

inline std::vector<GoldenCase> golden_cases(const std::filesystem::path& dir) {
  const auto fixture = [&](const char* name) { return (dir / name).string(); };
  return {
      {"eval_transverse_qfi.json", {"eval", "--scenario", fixture("transverse_k025.json"), "--quantity", "qfi"}},
      {"eval_transverse_cfi.json", {"eval", "--scenario", fixture("transverse_k025.json"), "--quantity", "cfi"}},
      {"eval_degenerate_qfi.json", {"eval", "--scenario", fixture("degenerate_k05.json"), "--quantity", "qfi"}},
      {"eval_great_circle_cfi.json", {"eval", "--scenario", fixture("great_circle.json"), "--quantity", "cfi"}},
      {"eval_great_circle_sld.json", {"eval", "--scenario", fixture("great_circle.json"), "--quantity", "sld"}},
      {"eval_great_circle_tensor.json", {"eval", "--scenario", fixture("great_circle.json"), "--quantity", "tensor"}},
      {"eval_sphere_south_qfi.json", {"eval", "--scenario", fixture("sphere_south.json"), "--quantity", "qfi"}},
      {"eval_qutrit_qfi.json", {"eval", "--scenario", fixture("qutrit.json"), "--quantity", "qfi"}},
      {"eval_table_qfi.json", {"eval", "--scenario", fixture("table.json"), "--quantity", "qfi"}},
      {"eval_wavefunction_qfi.json", {"eval", "--scenario", fixture("wavefunction.json"), "--quantity", "qfi"}},
      {"scan_sphere_circle.csv",
       {"scan", "--scenario", fixture("sphere_circle.json"), "--param", "theta", "--range", "0:1:5"}},
      {"scan_transverse.csv",
       {"scan", "--scenario", fixture("transverse_k025.json"), "--param", "theta", "--range", "0:0.5:6", "--jobs", "3"}},
      {"tensor_reference.json", {"tensor", "--k", "0.25", "--v", "1,0", "--v2", "0,1"}},
      {"tensor_generic.json", {"tensor", "--k", "0.2", "--z", "0.4,-0.7", "--v", "0.9,0.2", "--v2", "-0.3,1.1"}},
      {"tensor_infinity.json", {"tensor", "--k", "0.3", "--z", "inf", "--v", "1,0.5", "--v2", "-0.5,2"}},
      {"optimize_great_circle.json", {"optimize", "--scenario", fixture("great_circle.json")}},
      {"optimize_sphere_circle.json", {"optimize", "--scenario", fixture("sphere_circle.json"), "--jobs", "2"}},
      {"optimize_transverse.json", {"optimize", "--scenario", fixture("transverse_k025.json"), "--grid", "256"}},
  };
}

}  // namespace qfisher::testing
