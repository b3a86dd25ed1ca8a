#pragma once

#include <cstddef>
#include <map>
#include <set>
#include <string>
#include <vector>

namespace afc {

// INI-style config: [section] headers, key = value lines, '#' or ';' comments.
// Keys carry explicit units in their names (_hz, _s, _m). Every key that is
// present must be consumed by the experiment being run; leftovers are
// rejected (typo protection).
class Config {
 public:
  static Config parse_file(const std::string& path);
  static Config parse_text(const std::string& text, const std::string& name);

  bool has_section(const std::string& section) const;
  bool has_key(const std::string& section, const std::string& key) const;

  // Typed getters; the with-default forms also register the key as known so
  // "absent" is fine but "present and never read" is not.
  double get_double(const std::string& sec, const std::string& key);
  double get_double(const std::string& sec, const std::string& key, double dflt);
  std::size_t get_size(const std::string& sec, const std::string& key);
  std::size_t get_size(const std::string& sec, const std::string& key, std::size_t dflt);
  std::string get_string(const std::string& sec, const std::string& key);
  std::string get_string(const std::string& sec, const std::string& key, const std::string& dflt);
  bool get_bool(const std::string& sec, const std::string& key, bool dflt);
  // whitespace-separated list of doubles
  std::vector<double> get_double_list(const std::string& sec, const std::string& key);
  bool consume_list_if_present(const std::string& sec, const std::string& key,
                               std::vector<double>& out);

  void mark_section_known(const std::string& sec);  // e.g. sections read wholesale
  // Throws std::invalid_argument naming every present-but-unconsumed key.
  void assert_fully_consumed() const;

  const std::string& name() const { return name_; }

 private:
  std::string name_;
  std::map<std::string, std::map<std::string, std::string>> sections_;
  std::set<std::string> consumed_;  // "section/key"
  std::set<std::string> known_sections_;

  const std::string* find(const std::string& sec, const std::string& key) const;
  void touch(const std::string& sec, const std::string& key);
};

}  // namespace afc
