#include "arguments.hpp"

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"
#include "zenolab/cli.hpp"
#include "zeno/errors.hpp"

namespace zeno::cli {
namespace {

std::string flag_name(const std::string& arg) {
  if (arg == "-n") return "steps";
  if (arg == "-T") return "time";
  if (arg.rfind("--", 0) != 0) return {};
  const auto eq = arg.find('=');
  return arg.substr(2, eq == std::string::npos ? std::string::npos : eq - 2);
}

std::string scalar_text(const nlohmann::json& value, const std::string& key) {
  if (value.is_string()) return value.get<std::string>();
  if (value.is_number()) return value.dump();
  if (value.is_array() && value.size() == 2 && value[0].is_number() && value[1].is_number()) {
    return value[0].dump() + ":" + value[1].dump();
  }
  throw ValidationError("config: unsupported value for key '" + key + "'");
}

}  // namespace

std::vector<std::string> merge_config_file(const std::vector<std::string>& args) {
  std::vector<std::string> rest;
  std::string path;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config") {
      if (i + 1 >= args.size()) throw ValidationError("--config requires a path");
      path = args[++i];
    } else if (args[i].rfind("--config=", 0) == 0) {
      path = args[i].substr(9);
    } else {
      rest.push_back(args[i]);
    }
  }
  if (path.empty()) return rest;

  std::ifstream in(path);
  if (!in) throw ValidationError("config: cannot open '" + path + "'");
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("config: invalid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ValidationError("config: top level must be a JSON object");

  std::vector<std::string> merged;
  std::size_t first_flag = 0;
  if (!rest.empty() && rest[0].rfind('-', 0) != 0) {
    merged.push_back(rest[0]);
    first_flag = 1;
  } else if (doc.contains("command") && doc["command"].is_string()) {
    merged.push_back(doc["command"].get<std::string>());
  }

  std::set<std::string> given;
  for (std::size_t i = first_flag; i < rest.size(); ++i) {
    const std::string name = flag_name(rest[i]);
    if (!name.empty()) given.insert(name);
  }

  for (auto it = doc.begin(); it != doc.end(); ++it) {
    const std::string& key = it.key();
    if (key == "command" || key == "config" || given.count(key)) continue;
    const auto& value = it.value();
    const std::string flag = "--" + key;
    if (value.is_boolean()) {
      if (value.get<bool>()) merged.push_back(flag);
    } else if (value.is_array()) {
      for (const auto& element : value) {
        merged.push_back(flag);
        merged.push_back(scalar_text(element, key));
      }
    } else if (value.is_null()) {
      continue;
    } else {
      merged.push_back(flag);
      merged.push_back(scalar_text(value, key));
    }
  }
  merged.insert(merged.end(), rest.begin() + static_cast<std::ptrdiff_t>(first_flag), rest.end());
  return merged;
}

double parse_number(const std::string& text, const std::string& what) {
  double value = 0.0;
  const char* begin = text.data();
  const char* end = text.data() + text.size();
  if (!text.empty() && *begin == '+') ++begin;
  const auto res = std::from_chars(begin, end, value);
  if (res.ec != std::errc{} || res.ptr != end || !std::isfinite(value)) {
    throw ValidationError(what + ": '" + text + "' is not a finite number");
  }
  return value;
}

SweepAxis parse_sweep_axis(const std::string& spec) {
  const auto eq = spec.find('=');
  if (eq == std::string::npos || eq == 0) throw ValidationError("--vary expects name=values, got '" + spec + "'");
  SweepAxis axis;
  axis.name = spec.substr(0, eq);
  if (axis.name == "time") axis.name = "T";
  const std::string body = spec.substr(eq + 1);
  const std::string what = "--vary " + axis.name;

  auto split = [](const std::string& s, char sep) {
    std::vector<std::string> parts;
    std::stringstream ss(s);
    std::string part;
    while (std::getline(ss, part, sep)) parts.push_back(part);
    return parts;
  };

  if (body.rfind("lin:", 0) == 0) {
    const auto parts = split(body.substr(4), ':');
    if (parts.size() != 3) throw ValidationError(what + ": lin:start:stop:count expected");
    const double start = parse_number(parts[0], what);
    const double stop = parse_number(parts[1], what);
    const double count = parse_number(parts[2], what);
    if (count < 0 || count != std::floor(count)) throw ValidationError(what + ": count must be a whole number");
    if (count > 1e7) throw CapacityError(what + ": axis exceeds the 10^6 grid point cap");
    const auto c = static_cast<std::uint64_t>(count);
    for (std::uint64_t i = 0; i < c; ++i) {
      axis.values.push_back(c == 1 ? start
                                   : start + (stop - start) * static_cast<double>(i) / static_cast<double>(c - 1));
    }
  } else if (body.rfind("pow2:", 0) == 0) {
    const auto parts = split(body.substr(5), ':');
    if (parts.size() != 2) throw ValidationError(what + ": pow2:lo:hi expected");
    const double lo = parse_number(parts[0], what);
    const double hi = parse_number(parts[1], what);
    if (lo < 0 || hi > 62 || lo != std::floor(lo) || hi != std::floor(hi)) {
      throw ValidationError(what + ": pow2 exponents must be whole numbers in [0, 62]");
    }
    for (double k = lo; k <= hi; k += 1.0) axis.values.push_back(std::ldexp(1.0, static_cast<int>(k)));
  } else if (!body.empty()) {
    for (const auto& part : split(body, ',')) axis.values.push_back(parse_number(part, what));
  }
  return axis;
}

unsigned sweep_threads() {
  const char* raw = std::getenv(kThreadsEnv);
  if (raw == nullptr || *raw == '\0') return 1;
  const double value = parse_number(raw, kThreadsEnv);
  if (value < 1 || value != std::floor(value) || value > 1024) {
    throw ValidationError(std::string(kThreadsEnv) + " must be a whole number in [1, 1024]");
  }
  return static_cast<unsigned>(value);
}

}  // namespace zeno::cli
