#pragma once

#include <fstream>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "extdiv/errors.hpp"
#include "extdiv/format.hpp"

namespace extdiv {

/// Ordered key=value bag behind the run.meta sidecar. Captures the full
/// effective configuration of a CLI run so it can be replayed byte-for-byte.
class RunMeta {
 public:
  void set(const std::string& key, const std::string& value) {
    for (auto& [k, v] : entries_) {
      if (k == key) {
        v = value;
        return;
      }
    }
    entries_.emplace_back(key, value);
  }
  void set(const std::string& key, double value) { set(key, fmt_double(value)); }
  void set(const std::string& key, int value) { set(key, fmt_int(value)); }
  void set(const std::string& key, long long value) { set(key, fmt_int(value)); }
  void set(const std::string& key, unsigned long long value) {
    set(key, std::to_string(value));
  }
  void set(const std::string& key, bool value) { set(key, std::string(value ? "1" : "0")); }

  std::optional<std::string> get(const std::string& key) const {
    for (const auto& [k, v] : entries_) {
      if (k == key) return v;
    }
    return std::nullopt;
  }

  std::string require(const std::string& key) const {
    auto v = get(key);
    if (!v) throw FormatError("run.meta: missing key '" + key + "'");
    return *v;
  }

  double require_double(const std::string& key) const { return std::stod(require(key)); }
  long long require_int(const std::string& key) const { return std::stoll(require(key)); }
  bool require_bool(const std::string& key) const { return require(key) == "1"; }

  std::string serialize() const {
    std::string out;
    for (const auto& [k, v] : entries_) {
      out += k;
      out += '=';
      out += v;
      out += '\n';
    }
    return out;
  }

  void save(const std::string& path) const {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw FormatError("RunMeta: cannot open " + path);
    f << serialize();
  }

  static RunMeta load(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw FormatError("RunMeta: cannot open " + path);
    RunMeta m;
    std::string line;
    while (std::getline(f, line)) {
      if (line.empty()) continue;
      const auto eq = line.find('=');
      if (eq == std::string::npos) {
        throw FormatError("RunMeta: malformed line '" + line + "'");
      }
      m.set(line.substr(0, eq), line.substr(eq + 1));
    }
    return m;
  }

 private:
  std::vector<std::pair<std::string, std::string>> entries_;
};

}  // namespace extdiv
