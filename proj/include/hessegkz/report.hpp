#pragma once

// Verification plumbing: check reports, the key=value configuration file,
// glob filters, and deterministic JSON serialization.

#include <json.hpp>

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace hessegkz {

struct VerificationReport {
  std::string id;
  std::string status;  // pass | fail | flagged
  double residual = 0.0;
  double tolerance = 0.0;
  std::string note;
  double runtime = 0.0;  // seconds
};

inline VerificationReport make_report(std::string id, double residual,
                                      double tolerance, std::string note = "") {
  VerificationReport r;
  r.id = std::move(id);
  r.residual = residual;
  r.tolerance = tolerance;
  r.status = residual <= tolerance ? "pass" : "fail";
  r.note = std::move(note);
  return r;
}

inline VerificationReport make_flagged(std::string id, double residual,
                                       double tolerance, std::string note) {
  VerificationReport r;
  r.id = std::move(id);
  r.residual = residual;
  r.tolerance = tolerance;
  r.status = "flagged";
  r.note = std::move(note);
  return r;
}

// ------------------- configuration -------------------

struct Config {
  std::map<std::string, std::string> kv;

  static Config from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return from_text(ss.str());
  }

  static Config from_text(const std::string& text) {
    Config c;
    std::istringstream in(text);
    std::string line;
    long lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      auto hash = line.find('#');
      if (hash != std::string::npos) line = line.substr(0, hash);
      auto strip = [](std::string s) {
        auto b = s.find_first_not_of(" \t\r");
        auto e = s.find_last_not_of(" \t\r");
        return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
      };
      line = strip(line);
      if (line.empty()) continue;
      auto eq = line.find('=');
      if (eq == std::string::npos)
        throw std::runtime_error("config line " + std::to_string(lineno) +
                                 ": expected key=value");
      std::string key = strip(line.substr(0, eq));
      std::string val = strip(line.substr(eq + 1));
      if (key.empty())
        throw std::runtime_error("config line " + std::to_string(lineno) +
                                 ": empty key");
      c.kv[key] = val;
    }
    return c;
  }

  void set(const std::string& k, const std::string& v) { kv[k] = v; }

  long get_long(const std::string& k, long dflt) const {
    auto it = kv.find(k);
    if (it == kv.end()) return dflt;
    std::size_t used = 0;
    long v = std::stol(it->second, &used);
    if (used != it->second.size())
      throw std::runtime_error("config key " + k + ": not an integer");
    return v;
  }

  double get_double(const std::string& k, double dflt) const {
    auto it = kv.find(k);
    if (it == kv.end()) return dflt;
    std::size_t used = 0;
    double v = std::stod(it->second, &used);
    if (used != it->second.size())
      throw std::runtime_error("config key " + k + ": not a number");
    return v;
  }

  // FNV-1a over the canonical sorted key=value rendering.
  std::string hash() const {
    std::uint64_t h = 1469598103934665603ull;
    auto feed = [&](const std::string& s) {
      for (unsigned char ch : s) {
        h ^= ch;
        h *= 1099511628211ull;
      }
    };
    for (const auto& [k, v] : kv) {
      feed(k);
      feed("=");
      feed(v);
      feed("\n");
    }
    std::ostringstream os;
    os << std::hex << h;
    return os.str();
  }
};

// ------------------- glob filter -------------------

inline bool glob_match(const std::string& pattern, const std::string& text) {
  // iterative * / ? matcher
  std::size_t p = 0, t = 0, star = std::string::npos, mark = 0;
  while (t < text.size()) {
    if (p < pattern.size() &&
        (pattern[p] == '?' || pattern[p] == text[t])) {
      ++p;
      ++t;
    } else if (p < pattern.size() && pattern[p] == '*') {
      star = p++;
      mark = t;
    } else if (star != std::string::npos) {
      p = star + 1;
      t = ++mark;
    } else {
      return false;
    }
  }
  while (p < pattern.size() && pattern[p] == '*') ++p;
  return p == pattern.size();
}

// ------------------- suite serialization -------------------

struct SuiteReport {
  std::vector<VerificationReport> suite;  // ordered by check id
  std::string config_hash;

  int exit_code() const {
    for (const auto& r : suite)
      if (r.status == "fail") return 1;
    return 0;
  }
};

inline nlohmann::json suite_to_json(const SuiteReport& s) {
  nlohmann::json j;
  j["suite"] = nlohmann::json::array();
  for (const auto& r : s.suite) {
    nlohmann::json e;
    e["id"] = r.id;
    e["status"] = r.status;
    e["residual"] = r.residual;
    e["tolerance"] = r.tolerance;
    e["note"] = r.note;
    // floored to whole seconds so repeated runs serialize identically
    e["runtime"] = (double)(long)r.runtime;
    j["suite"].push_back(e);
  }
  j["config_hash"] = s.config_hash;
  return j;
}

}  // namespace hessegkz
