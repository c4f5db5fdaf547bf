#include "qfg/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "qfisher/error.hpp"

namespace qfg {

using nlohmann::json;
using qfisher::Chart;
using qfisher::Complex;
using qfisher::Error;
using qfisher::ErrorKind;

namespace {

std::string join(const std::string& base, const std::string& key) { return base.empty() ? key : base + "." + key; }

[[noreturn]] void parse_fail(const std::string& where, const std::string& what) {
  throw Error(ErrorKind::ParseError, where + ": " + what);
}

[[noreturn]] void invariant_fail(const std::string& where, const std::string& what) {
  throw Error(ErrorKind::InvariantViolation, where + ": " + what);
}

// Library errors raised while building a value become InvariantViolation
// naming the field.
template <class F>
auto guarded(const std::string& where, F&& f) {
  try {
    return f();
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::ParseError || e.kind() == ErrorKind::InvariantViolation) throw;
    invariant_fail(where, std::string(qfisher::to_string(e.kind())) + ": " + e.what());
  }
}

void expect_object(const json& j, const std::string& where) {
  if (!j.is_object()) parse_fail(where, "expected an object");
}

void reject_unknown(const json& j, std::initializer_list<std::string_view> allowed, const std::string& where) {
  for (const auto& [key, value] : j.items()) {
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
      parse_fail(join(where, key), "unknown field");
    }
  }
}

double number(const json& j, const std::string& where) {
  if (!j.is_number()) parse_fail(where, "expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) parse_fail(where, "not finite");
  return v;
}

double required_number(const json& obj, const char* key, const std::string& where) {
  if (!obj.contains(key)) parse_fail(join(where, key), "missing");
  return number(obj.at(key), join(where, key));
}

int required_int(const json& j, const std::string& where) {
  if (!j.is_number_integer()) parse_fail(where, "expected an integer");
  return j.get<int>();
}

std::vector<Complex> parse_vector(const json& j, const std::string& where) {
  if (!j.is_array()) parse_fail(where, "expected an array of [re, im] pairs");
  std::vector<Complex> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(parse_complex(j[i], where + "[" + std::to_string(i) + "]"));
  return out;
}

std::vector<double> parse_reals(const json& j, const std::string& where) {
  if (!j.is_array()) parse_fail(where, "expected an array of numbers");
  std::vector<double> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(number(j[i], where + "[" + std::to_string(i) + "]"));
  return out;
}

double parse_k(const json& obj, const std::string& where) {
  const double k = required_number(obj, "k", where);
  if (!(k > 0.0 && k <= 0.5)) invariant_fail(join(where, "k"), "outside (0, 1/2]");
  return k;
}

struct ChartPoint {
  Chart chart = Chart::North;
  Complex coord;
};

// "z" is the north coordinate or "inf"; "chart" picks the working chart.
ChartPoint parse_point(const json& obj, const std::string& where) {
  Chart chart = Chart::North;
  bool chart_given = false;
  if (obj.contains("chart")) {
    const json& c = obj.at("chart");
    if (c == "north") {
      chart = Chart::North;
    } else if (c == "south") {
      chart = Chart::South;
    } else {
      parse_fail(join(where, "chart"), "expected \"north\" or \"south\"");
    }
    chart_given = true;
  }
  const json z = obj.contains("z") ? obj.at("z") : json::array({0.0, 0.0});
  if (z.is_string()) {
    if (z != "inf") parse_fail(join(where, "z"), "expected [re, im] or \"inf\"");
    if (chart_given && chart == Chart::North) invariant_fail(join(where, "z"), "z = infinity is outside the north chart");
    return {Chart::South, 0.0};
  }
  const Complex zc = parse_complex(z, join(where, "z"));
  if (chart == Chart::North) return {Chart::North, zc};
  if (zc == Complex(0.0)) invariant_fail(join(where, "z"), "z = 0 is outside the south chart");
  return {Chart::South, 1.0 / zc};
}

qfisher::Curve parse_curve(const json& j, const std::string& where) {
  expect_object(j, where);
  if (!j.contains("family") || !j.at("family").is_string()) parse_fail(join(where, "family"), "missing or not a string");
  const std::string family = j.at("family").get<std::string>();

  if (family == "GREAT_CIRCLE_PURE") {
    reject_unknown(j, {"family", "e0", "e1"}, where);
    std::vector<Complex> e0{1.0, 0.0};
    std::vector<Complex> e1{0.0, 1.0};
    if (j.contains("e0")) e0 = parse_vector(j.at("e0"), join(where, "e0"));
    if (j.contains("e1")) e1 = parse_vector(j.at("e1"), join(where, "e1"));
    return guarded(where, [&] { return qfisher::Curve::great_circle(e0, e1); });
  }
  if (family == "SPHERE_CURVE") {
    reject_unknown(j, {"family", "k", "z", "chart", "path"}, where);
    qfisher::SpherePathParams p;
    p.k = parse_k(j, where);
    const ChartPoint pt = parse_point(j, where);
    p.chart = pt.chart;
    p.origin = pt.coord;
    const std::string pw = join(where, "path");
    if (!j.contains("path")) parse_fail(pw, "missing");
    const json& path = j.at("path");
    expect_object(path, pw);
    const std::string type = path.value("type", std::string{});
    if (type == "line") {
      reject_unknown(path, {"type", "v"}, pw);
      p.kind = qfisher::PathKind::Line;
      if (!path.contains("v")) parse_fail(join(pw, "v"), "missing");
      p.v = parse_complex(path.at("v"), join(pw, "v"));
    } else if (type == "circle") {
      reject_unknown(path, {"type", "radius"}, pw);
      p.kind = qfisher::PathKind::Circle;
      p.radius = required_number(path, "radius", pw);
      if (p.radius < 0.0) invariant_fail(join(pw, "radius"), "must be non-negative");
    } else {
      parse_fail(join(pw, "type"), "expected \"line\" or \"circle\"");
    }
    return guarded(where, [&] { return qfisher::Curve::sphere(p); });
  }
  if (family == "TRANSVERSE_CURVE") {
    reject_unknown(j, {"family", "k", "dk", "z", "chart"}, where);
    qfisher::TransverseParams p;
    p.k0 = parse_k(j, where);
    p.dk = required_number(j, "dk", where);
    const ChartPoint pt = parse_point(j, where);
    p.chart = pt.chart;
    p.coord = pt.coord;
    return guarded(where, [&] { return qfisher::Curve::transverse(p); });
  }
  if (family == "PURE_QDIT_COEFFS") {
    reject_unknown(j, {"family", "a"}, where);
    if (!j.contains("a")) parse_fail(join(where, "a"), "missing");
    const auto a = parse_vector(j.at("a"), join(where, "a"));
    return guarded(join(where, "a"), [&] { return qfisher::Curve::pure_qdit(a); });
  }
  if (family == "TABLE") {
    reject_unknown(j, {"family", "samples"}, where);
    const std::string sw = join(where, "samples");
    if (!j.contains("samples") || !j.at("samples").is_array()) parse_fail(sw, "missing or not an array");
    std::vector<std::pair<double, qfisher::HermitianMatrix>> samples;
    const json& arr = j.at("samples");
    for (std::size_t i = 0; i < arr.size(); ++i) {
      const std::string w = sw + "[" + std::to_string(i) + "]";
      expect_object(arr[i], w);
      reject_unknown(arr[i], {"theta", "rho"}, w);
      const double theta = required_number(arr[i], "theta", w);
      if (!arr[i].contains("rho")) parse_fail(join(w, "rho"), "missing");
      const auto m = parse_matrix(arr[i].at("rho"), join(w, "rho"));
      samples.emplace_back(theta, guarded(join(w, "rho"), [&] { return qfisher::HermitianMatrix(m); }));
    }
    return guarded(sw, [&] { return qfisher::Curve::table(std::move(samples)); });
  }
  parse_fail(join(where, "family"), "unknown family '" + family + "'");
}

qfisher::Povm parse_povm(const json& j, const std::string& where) {
  expect_object(j, where);
  reject_unknown(j, {"elements"}, where);
  const std::string ew = join(where, "elements");
  if (!j.contains("elements") || !j.at("elements").is_array()) parse_fail(ew, "missing or not an array");
  std::vector<qfisher::HermitianMatrix> elements;
  const json& arr = j.at("elements");
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const std::string w = ew + "[" + std::to_string(i) + "]";
    const auto m = parse_matrix(arr[i], w);
    elements.push_back(guarded(w, [&] { return qfisher::HermitianMatrix(m); }));
  }
  const qfisher::PovmDiagnostic diag = qfisher::inspect_povm(elements);
  if (!diag.valid) invariant_fail(where, diag.diagnostic);
  return qfisher::Povm(std::move(elements));
}

qfisher::WavefunctionGrid parse_grid(const json& j, const std::string& where) {
  expect_object(j, where);
  reject_unknown(j, {"x", "dx", "p", "dp", "alpha", "dalpha"}, where);
  qfisher::WavefunctionGrid g;
  g.dx = required_number(j, "dx", where);
  for (const char* key : {"p", "dp", "dalpha"}) {
    if (!j.contains(key)) parse_fail(join(where, key), "missing");
  }
  g.p = parse_reals(j.at("p"), join(where, "p"));
  g.dp = parse_reals(j.at("dp"), join(where, "dp"));
  g.dalpha = parse_reals(j.at("dalpha"), join(where, "dalpha"));
  g.alpha = j.contains("alpha") ? parse_reals(j.at("alpha"), join(where, "alpha")) : std::vector<double>(g.p.size());
  if (j.contains("x")) g.x = parse_reals(j.at("x"), join(where, "x"));
  // evaluate once so the invariants are checked at load time
  guarded(where, [&] { return qfisher::wavefunction_fisher(g); });
  return g;
}

ScenarioOptions parse_options(const json& j, const std::string& where) {
  expect_object(j, where);
  reject_unknown(j, {"derivative", "fd_step", "grid_n", "refine_iters"}, where);
  ScenarioOptions o;
  if (j.contains("derivative")) {
    const json& d = j.at("derivative");
    if (d == "analytic") {
      o.derivative = qfisher::DiffMode::Analytic;
    } else if (d == "fd") {
      o.derivative = qfisher::DiffMode::FiniteDifference;
    } else {
      parse_fail(join(where, "derivative"), "expected \"analytic\" or \"fd\"");
    }
  }
  if (j.contains("fd_step")) {
    o.fd_step = number(j.at("fd_step"), join(where, "fd_step"));
    if (!(o.fd_step > 0.0)) invariant_fail(join(where, "fd_step"), "must be positive");
  }
  if (j.contains("grid_n")) {
    o.grid_n = required_int(j.at("grid_n"), join(where, "grid_n"));
    if (o.grid_n < 8) invariant_fail(join(where, "grid_n"), "must be at least 8");
  }
  if (j.contains("refine_iters")) {
    o.refine_iters = required_int(j.at("refine_iters"), join(where, "refine_iters"));
    if (o.refine_iters < 0) invariant_fail(join(where, "refine_iters"), "must be non-negative");
  }
  return o;
}

}  // namespace

Complex parse_complex(const json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 2) parse_fail(where, "expected [re, im]");
  return {number(j[0], where + "[0]"), number(j[1], where + "[1]")};
}

qfisher::ComplexMatrix parse_matrix(const json& j, const std::string& where) {
  if (!j.is_array() || j.empty()) parse_fail(where, "expected a non-empty array of rows");
  const std::size_t d = j.size();
  if (d > qfisher::kMaxDim) invariant_fail(where, "dimension above 8");
  std::vector<Complex> entries;
  entries.reserve(d * d);
  for (std::size_t i = 0; i < d; ++i) {
    const std::string rw = where + "[" + std::to_string(i) + "]";
    if (!j[i].is_array() || j[i].size() != d) parse_fail(rw, "row length differs from the row count");
    for (std::size_t k = 0; k < d; ++k) entries.push_back(parse_complex(j[i][k], rw + "[" + std::to_string(k) + "]"));
  }
  return qfisher::ComplexMatrix(d, std::move(entries));
}

Scenario parse_scenario(const json& doc) {
  expect_object(doc, "$");
  reject_unknown(doc, {"curve", "theta0", "povm", "grid", "options"}, "");
  Scenario s;
  if (doc.contains("curve")) s.curve = parse_curve(doc.at("curve"), "curve");
  if (doc.contains("theta0")) s.theta0 = number(doc.at("theta0"), "theta0");
  if (doc.contains("povm")) s.povm = parse_povm(doc.at("povm"), "povm");
  if (doc.contains("grid")) s.grid = parse_grid(doc.at("grid"), "grid");
  if (doc.contains("options")) s.options = parse_options(doc.at("options"), "options");
  if (!s.curve && !s.grid) parse_fail("$", "scenario needs a curve or a grid");
  if (s.curve && s.povm && s.povm->dim() != s.curve->dim()) {
    invariant_fail("povm", "dimension differs from the curve");
  }
  return s;
}

Scenario parse_scenario_text(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::ParseError, std::string("invalid JSON: ") + e.what());
  }
  return parse_scenario(doc);
}

Scenario load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::ParseError, "cannot open scenario file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_scenario_text(buf.str());
}

}  // namespace qfg
