#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>

namespace irgn {

// Canonical text form of a double: shortest string that parses back to the
// identical bits. Used everywhere a value must round-trip exactly.
std::string format_double(double x);
double parse_double(std::string_view s);  // throws std::invalid_argument

// Minimal self-describing "[section] / key = value" text format used for the
// config file and for core-type serialization. Strict: every non-blank,
// non-comment line must be a section header or a key assignment, duplicate
// keys are rejected, and all errors carry the offending line number.
class KvWriter {
public:
  void section(std::string_view name);
  void key(std::string_view name, std::string_view value);
  void key(std::string_view name, double value);
  void key(std::string_view name, int value);
  void key(std::string_view name, std::uint64_t value);
  void key(std::string_view name, bool value);
  void key(std::string_view name, const Eigen::VectorXd& value);
  void key(std::string_view name, const std::vector<int>& value);

  const std::string& str() const { return out_; }

private:
  std::string out_;
  bool first_section_ = true;
};

class KvDoc {
public:
  struct Entry {
    std::string value;
    int line = 0;
    mutable bool consumed = false;
  };

  static KvDoc parse(std::string_view text, std::string file_label = "<config>");

  bool has(const std::string& section, const std::string& key) const;
  const std::vector<std::string>& sections() const { return section_order_; }
  std::vector<std::string> keys(const std::string& section) const;

  std::string get_string(const std::string& section, const std::string& key) const;
  double get_double(const std::string& section, const std::string& key) const;
  int get_int(const std::string& section, const std::string& key) const;
  std::uint64_t get_u64(const std::string& section, const std::string& key) const;
  bool get_bool(const std::string& section, const std::string& key) const;
  Eigen::VectorXd get_vector(const std::string& section, const std::string& key) const;
  std::vector<int> get_int_vector(const std::string& section, const std::string& key) const;

  int line_of(const std::string& section, const std::string& key) const;
  const std::string& file_label() const { return file_; }

  // Strict-parsing support: sections/keys never read via the getters above.
  // Returns (section, key, line) triples.
  std::vector<std::tuple<std::string, std::string, int>> unconsumed() const;
  [[noreturn]] void fail(const std::string& section, const std::string& key,
                         const std::string& message) const;

private:
  const Entry& entry(const std::string& section, const std::string& key) const;

  std::string file_;
  std::vector<std::string> section_order_;
  std::map<std::string, std::vector<std::string>> key_order_;
  std::map<std::string, std::map<std::string, Entry>> data_;
};

}  // namespace irgn
