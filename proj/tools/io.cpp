#include <cstdio>
#include <fstream>
#include <stdexcept>

#include "cli.hpp"
#include "json.hpp"

namespace triple_couple::cli {

namespace {

std::string scalar_token(const nlohmann::json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_unsigned()) return std::to_string(v.get<std::uint64_t>());
  if (v.is_number_integer()) return std::to_string(v.get<std::int64_t>());
  if (v.is_number_float()) return v.dump();
  if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
  throw std::runtime_error("config: unsupported value " + v.dump());
}

void append(std::vector<std::string>& out, const std::string& key, const nlohmann::json& v) {
  const std::string flag = "--" + key;
  if (v.is_boolean()) {
    if (v.get<bool>()) out.push_back(flag);
    return;
  }
  if (v.is_array()) {
    std::string joined;
    for (const auto& item : v) {
      if (!joined.empty()) joined += ',';
      joined += scalar_token(item);
    }
    out.push_back(flag);
    out.push_back(joined);
    return;
  }
  out.push_back(flag);
  out.push_back(scalar_token(v));
}

}  // namespace

std::vector<std::string> config_to_args(const std::string& json_text, const std::string& subcommand) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::runtime_error(std::string("config: ") + e.what());
  }
  if (!doc.is_object()) throw std::runtime_error("config: top level must be an object");

  static const char* kSubcommands[] = {"gen", "motifs", "tv", "couple", "certificate", "sweep", "verify"};
  nlohmann::json merged = nlohmann::json::object();
  for (auto it = doc.begin(); it != doc.end(); ++it) {
    bool is_section = false;
    for (const char* s : kSubcommands) is_section |= it.key() == s;
    if (!is_section) merged[it.key()] = it.value();
  }
  if (doc.contains(subcommand)) {
    if (!doc[subcommand].is_object()) throw std::runtime_error("config: section " + subcommand + " must be an object");
    for (auto it = doc[subcommand].begin(); it != doc[subcommand].end(); ++it) merged[it.key()] = it.value();
  }
  std::vector<std::string> out;
  // nlohmann::json objects iterate in key order, so the token list is stable.
  for (auto it = merged.begin(); it != merged.end(); ++it) append(out, it.key(), it.value());
  return out;
}

void write_atomic(const std::string& path, const std::string& content) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + tmp);
    out << content;
    out.flush();
    if (!out) throw std::runtime_error("write failed: " + tmp);
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0) {
    std::remove(tmp.c_str());
    throw std::runtime_error("cannot rename " + tmp + " to " + path);
  }
}

}  // namespace triple_couple::cli
