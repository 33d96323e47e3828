#include "config.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "simjoin/errors.hpp"

namespace simjoin::harness {

using nlohmann::json;

namespace {

[[noreturn]] void field_error(const std::string& path, const std::string& what) {
  throw ParseError("config field '" + path + "': " + what, 0);
}

void only_keys(const json& obj, const std::string& path, std::initializer_list<const char*> allowed) {
  const std::set<std::string> ok(allowed.begin(), allowed.end());
  for (const auto& [key, _] : obj.items()) {
    if (!ok.count(key)) field_error(path.empty() ? key : path + "." + key, "unknown field");
  }
}

const json& require_object(const json& parent, const char* key, const std::string& path) {
  if (!parent.contains(key)) field_error(path, "missing");
  const json& v = parent.at(key);
  if (!v.is_object()) field_error(path, "expected an object");
  return v;
}

std::uint64_t as_u64(const json& v, const std::string& path) {
  if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<std::int64_t>() >= 0)) {
    field_error(path, "expected a non-negative integer");
  }
  return v.get<std::uint64_t>();
}

int as_int(const json& v, const std::string& path, int lo, int hi) {
  if (!v.is_number_integer()) field_error(path, "expected an integer");
  const auto x = v.get<std::int64_t>();
  if (x < lo || x > hi) {
    field_error(path, "value " + std::to_string(x) + " outside [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
  }
  return static_cast<int>(x);
}

double as_probability(const json& v, const std::string& path) {
  if (!v.is_number()) field_error(path, "expected a number");
  const double x = v.get<double>();
  if (!(x > 0.0 && x < 1.0)) field_error(path, "expected a value in (0, 1)");
  return x;
}

std::string as_string(const json& v, const std::string& path) {
  if (!v.is_string()) field_error(path, "expected a string");
  return v.get<std::string>();
}

template <class T, class F>
std::vector<T> as_list(const json& v, const std::string& path, F&& item) {
  if (!v.is_array()) field_error(path, "expected an array");
  std::vector<T> out;
  for (std::size_t i = 0; i < v.size(); ++i) out.push_back(item(v[i], path + "[" + std::to_string(i) + "]"));
  return out;
}

int line_of(const std::string& text, std::size_t byte) {
  byte = std::min(byte, text.size());
  return 1 + static_cast<int>(std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(byte), '\n'));
}

}  // namespace

ExperimentConfig parse_config(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what(), line_of(text, e.byte > 0 ? e.byte - 1 : 0));
  }
  if (!doc.is_object()) throw ParseError("config must be a JSON object", 1);
  only_keys(doc, "", {"base_seed", "r", "trials", "protocol", "input", "sweep", "output"});

  ExperimentConfig cfg;
  cfg.source = doc;
  if (!doc.contains("base_seed")) field_error("base_seed", "missing (a fixed seed is mandatory)");
  cfg.base_seed = as_u64(doc["base_seed"], "base_seed");
  if (!doc.contains("r")) field_error("r", "missing");
  cfg.r = as_int(doc["r"], "r", 1, 64);
  if (doc.contains("trials")) {
    cfg.trials = as_u64(doc["trials"], "trials");
    if (cfg.trials < 1) field_error("trials", "must be at least 1");
  }

  const json& proto = require_object(doc, "protocol", "protocol");
  only_keys(proto, "protocol", {"kind", "k", "delta", "grid", "code_seed"});
  if (!proto.contains("kind")) field_error("protocol.kind", "missing");
  try {
    cfg.protocol.kind = parse_protocol_kind(as_string(proto["kind"], "protocol.kind"));
    if (proto.contains("grid")) cfg.protocol.grid = parse_subcube_grid(as_string(proto["grid"], "protocol.grid"));
  } catch (const PreconditionError& e) {
    field_error(proto.contains("grid") ? "protocol.grid" : "protocol.kind", e.what());
  }
  if (proto.contains("k")) cfg.protocol.k = as_int(proto["k"], "protocol.k", 0, 64);
  if (proto.contains("delta")) cfg.protocol.delta = as_probability(proto["delta"], "protocol.delta");
  if (proto.contains("code_seed")) cfg.protocol.code_seed = as_u64(proto["code_seed"], "protocol.code_seed");

  if (doc.contains("input")) {
    const json& in = require_object(doc, "input", "input");
    only_keys(in, "input", {"kind"});
    if (in.contains("kind")) {
      try {
        cfg.input = parse_input_kind(as_string(in["kind"], "input.kind"));
      } catch (const PreconditionError& e) {
        field_error("input.kind", e.what());
      }
    }
  }

  const json& sweep = require_object(doc, "sweep", "sweep");
  only_keys(sweep, "sweep", {"d", "n", "p", "k", "delta"});
  for (const char* axis : {"d", "n", "p"}) {
    if (!sweep.contains(axis)) field_error(std::string("sweep.") + axis, "missing");
  }
  cfg.sweep.d = as_list<int>(sweep["d"], "sweep.d", [](const json& v, const std::string& p) { return as_int(v, p, 1, 64); });
  cfg.sweep.n = as_list<std::uint64_t>(sweep["n"], "sweep.n", [](const json& v, const std::string& p) { return as_u64(v, p); });
  cfg.sweep.p = as_list<int>(sweep["p"], "sweep.p", [](const json& v, const std::string& p) { return as_int(v, p, 1, 1 << 20); });
  if (sweep.contains("k")) {
    cfg.sweep.k = as_list<std::optional<int>>(sweep["k"], "sweep.k",
                                              [](const json& v, const std::string& p) { return std::optional<int>(as_int(v, p, 0, 64)); });
  } else {
    cfg.sweep.k = {cfg.protocol.k};
  }
  if (sweep.contains("delta")) {
    cfg.sweep.delta = as_list<std::optional<double>>(
        sweep["delta"], "sweep.delta", [](const json& v, const std::string& p) { return std::optional<double>(as_probability(v, p)); });
  } else {
    cfg.sweep.delta = {cfg.protocol.delta};
  }

  if (doc.contains("output")) {
    const json& out = require_object(doc, "output", "output");
    only_keys(out, "output", {"csv", "summary", "timing"});
    if (out.contains("csv")) cfg.output.csv = as_string(out["csv"], "output.csv");
    if (out.contains("summary")) cfg.output.summary = as_string(out["summary"], "output.summary");
    if (out.contains("timing")) cfg.output.timing = as_string(out["timing"], "output.timing");
  }
  return cfg;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open config '" + path + "'", 0);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

}  // namespace simjoin::harness
