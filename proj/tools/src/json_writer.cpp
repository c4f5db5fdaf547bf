#include <cmath>
#include <cstdio>
#include <cstring>

#include "qfg/cli.hpp"

namespace qfg {

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (v == 0.0) v = 0.0;  // folds -0
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  if (std::strcmp(buf, "-0") == 0) return "0.0";
  if (!std::strpbrk(buf, ".e")) std::strcat(buf, ".0");
  return buf;
}

namespace {

void write(const nlohmann::ordered_json& j, std::string& out) {
  switch (j.type()) {
    case nlohmann::json::value_t::object: {
      out += '{';
      bool first = true;
      for (const auto& [key, value] : j.items()) {
        if (!first) out += ", ";
        first = false;
        out += nlohmann::json(key).dump();
        out += ": ";
        write(value, out);
      }
      out += '}';
      break;
    }
    case nlohmann::json::value_t::array: {
      out += '[';
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i) out += ", ";
        write(j[i], out);
      }
      out += ']';
      break;
    }
    case nlohmann::json::value_t::number_float: {
      const double v = j.get<double>();
      out += std::isfinite(v) ? format_number(v) : "null";
      break;
    }
    default:
      out += j.dump();
  }
}

}  // namespace

std::string dump(const nlohmann::ordered_json& j) {
  std::string out;
  write(j, out);
  return out;
}

}  // namespace qfg
