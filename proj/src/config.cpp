#include "afc/config.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace afc {
namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

[[noreturn]] void fail(const std::string& name, std::size_t lineno,
                       const std::string& what) {
  throw std::invalid_argument(name + ":" + std::to_string(lineno) + ": " + what);
}

double to_double(const std::string& v, const std::string& ctx) {
  const char* b = v.c_str();
  char* end = nullptr;
  const double x = std::strtod(b, &end);
  while (end && (*end == ' ' || *end == '\t')) ++end;
  if (end == b || *end != '\0')
    throw std::invalid_argument(ctx + ": not a number: '" + v + "'");
  return x;
}

}  // namespace

Config Config::parse_text(const std::string& text, const std::string& name) {
  Config cfg;
  cfg.name_ = name;
  std::istringstream in(text);
  std::string line, section;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find_first_of("#;");
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']')
        fail(name, lineno, "malformed section header");
      section = trim(line.substr(1, line.size() - 2));
      if (section.empty()) fail(name, lineno, "empty section name");
      cfg.sections_[section];  // sections may legitimately stay empty
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      fail(name, lineno, "expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string val = trim(line.substr(eq + 1));
    if (key.empty()) fail(name, lineno, "empty key");
    if (section.empty()) fail(name, lineno, "key outside any [section]");
    if (cfg.sections_[section].count(key))
      fail(name, lineno, "duplicate key '" + key + "' in [" + section + "]");
    cfg.sections_[section][key] = val;
  }
  return cfg;
}

Config Config::parse_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::invalid_argument("cannot open config: " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return parse_text(ss.str(), path);
}

const std::string* Config::find(const std::string& sec,
                                const std::string& key) const {
  const auto s = sections_.find(sec);
  if (s == sections_.end()) return nullptr;
  const auto k = s->second.find(key);
  return k == s->second.end() ? nullptr : &k->second;
}

void Config::touch(const std::string& sec, const std::string& key) {
  consumed_.insert(sec + "/" + key);
}

bool Config::has_section(const std::string& section) const {
  return sections_.count(section) != 0;
}

bool Config::has_key(const std::string& section, const std::string& key) const {
  return find(section, key) != nullptr;
}

double Config::get_double(const std::string& sec, const std::string& key) {
  const auto* v = find(sec, key);
  if (!v)
    throw std::invalid_argument(name_ + ": missing required key [" + sec +
                                "] " + key);
  touch(sec, key);
  return to_double(*v, name_ + ": [" + sec + "] " + key);
}

double Config::get_double(const std::string& sec, const std::string& key,
                          double dflt) {
  touch(sec, key);
  const auto* v = find(sec, key);
  return v ? to_double(*v, name_ + ": [" + sec + "] " + key) : dflt;
}

std::size_t Config::get_size(const std::string& sec, const std::string& key) {
  const double v = get_double(sec, key);
  const auto n = static_cast<std::size_t>(v);
  if (v < 0.0 || static_cast<double>(n) != v)
    throw std::invalid_argument(name_ + ": [" + sec + "] " + key +
                                " must be a non-negative integer");
  return n;
}

std::size_t Config::get_size(const std::string& sec, const std::string& key,
                             std::size_t dflt) {
  touch(sec, key);
  return has_key(sec, key) ? get_size(sec, key) : dflt;
}

std::string Config::get_string(const std::string& sec, const std::string& key) {
  const auto* v = find(sec, key);
  if (!v)
    throw std::invalid_argument(name_ + ": missing required key [" + sec +
                                "] " + key);
  touch(sec, key);
  return *v;
}

std::string Config::get_string(const std::string& sec, const std::string& key,
                               const std::string& dflt) {
  touch(sec, key);
  const auto* v = find(sec, key);
  return v ? *v : dflt;
}

bool Config::get_bool(const std::string& sec, const std::string& key,
                      bool dflt) {
  touch(sec, key);
  const auto* v = find(sec, key);
  if (!v) return dflt;
  if (*v == "true" || *v == "1" || *v == "yes" || *v == "on") return true;
  if (*v == "false" || *v == "0" || *v == "no" || *v == "off") return false;
  throw std::invalid_argument(name_ + ": [" + sec + "] " + key +
                              " must be a boolean, got '" + *v + "'");
}

std::vector<double> Config::get_double_list(const std::string& sec,
                                            const std::string& key) {
  const std::string raw = get_string(sec, key);
  std::istringstream in(raw);
  std::vector<double> out;
  std::string tok;
  while (in >> tok)
    out.push_back(to_double(tok, name_ + ": [" + sec + "] " + key));
  if (out.empty())
    throw std::invalid_argument(name_ + ": [" + sec + "] " + key +
                                " must hold at least one number");
  return out;
}

bool Config::consume_list_if_present(const std::string& sec,
                                     const std::string& key,
                                     std::vector<double>& out) {
  touch(sec, key);
  if (!has_key(sec, key)) return false;
  out = get_double_list(sec, key);
  return true;
}

void Config::mark_section_known(const std::string& sec) {
  known_sections_.insert(sec);
}

void Config::assert_fully_consumed() const {
  std::string leftovers;
  for (const auto& [sec, kv] : sections_) {
    if (known_sections_.count(sec)) continue;
    for (const auto& [key, val] : kv) {
      if (!consumed_.count(sec + "/" + key)) {
        if (!leftovers.empty()) leftovers += ", ";
        leftovers += "[" + sec + "] " + key;
      }
    }
  }
  if (!leftovers.empty())
    throw std::invalid_argument(name_ + ": unrecognized keys: " + leftovers);
}

}  // namespace afc
