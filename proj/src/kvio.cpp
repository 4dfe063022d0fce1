#include "irgn/kvio.hpp"

#include <charconv>
#include <cstdlib>
#include <stdexcept>
#include <tuple>

#include "irgn/errors.hpp"

namespace irgn {

std::string format_double(double x) {
  char buf[40];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x);
  if (ec != std::errc{}) throw std::invalid_argument("format_double: conversion failed");
  return std::string(buf, ptr);
}

double parse_double(std::string_view s) {
  double x = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), x);
  if (ec != std::errc{} || ptr != s.data() + s.size())
    throw std::invalid_argument("parse_double: '" + std::string(s) + "' is not a number");
  return x;
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
    s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split_commas(std::string_view s) {
  std::vector<std::string_view> parts;
  while (true) {
    auto pos = s.find(',');
    if (pos == std::string_view::npos) {
      parts.push_back(trim(s));
      break;
    }
    parts.push_back(trim(s.substr(0, pos)));
    s.remove_prefix(pos + 1);
  }
  return parts;
}

}  // namespace

void KvWriter::section(std::string_view name) {
  if (!first_section_) out_ += "\n";
  first_section_ = false;
  out_ += "[";
  out_ += name;
  out_ += "]\n";
}

void KvWriter::key(std::string_view name, std::string_view value) {
  out_ += name;
  out_ += " = ";
  out_ += value;
  out_ += "\n";
}

void KvWriter::key(std::string_view name, double value) { key(name, format_double(value)); }
void KvWriter::key(std::string_view name, int value) { key(name, std::to_string(value)); }
void KvWriter::key(std::string_view name, std::uint64_t value) { key(name, std::to_string(value)); }
void KvWriter::key(std::string_view name, bool value) {
  key(name, value ? std::string_view("true") : std::string_view("false"));
}

void KvWriter::key(std::string_view name, const Eigen::VectorXd& value) {
  std::string joined;
  for (Eigen::Index i = 0; i < value.size(); ++i) {
    if (i) joined += ",";
    joined += format_double(value[i]);
  }
  key(name, joined);
}

void KvWriter::key(std::string_view name, const std::vector<int>& value) {
  std::string joined;
  for (std::size_t i = 0; i < value.size(); ++i) {
    if (i) joined += ",";
    joined += std::to_string(value[i]);
  }
  key(name, joined);
}

KvDoc KvDoc::parse(std::string_view text, std::string file_label) {
  KvDoc doc;
  doc.file_ = std::move(file_label);
  std::string current;
  int line_no = 0;
  while (!text.empty()) {
    auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text.remove_prefix(nl == std::string_view::npos ? text.size() : nl + 1);
    ++line_no;
    line = trim(line);
    if (line.empty() || line.front() == '#') continue;
    if (line.front() == '[') {
      if (line.back() != ']')
        throw ConfigError(doc.file_, line_no, "malformed section header '" + std::string(line) + "'");
      current = std::string(trim(line.substr(1, line.size() - 2)));
      if (current.empty()) throw ConfigError(doc.file_, line_no, "empty section name");
      if (!doc.data_.count(current)) {
        doc.section_order_.push_back(current);
        doc.data_[current];
      }
      continue;
    }
    auto eq = line.find('=');
    if (eq == std::string_view::npos)
      throw ConfigError(doc.file_, line_no, "expected 'key = value', got '" + std::string(line) + "'");
    std::string key(trim(line.substr(0, eq)));
    std::string value(trim(line.substr(eq + 1)));
    if (key.empty()) throw ConfigError(doc.file_, line_no, "empty key");
    if (current.empty())
      throw ConfigError(doc.file_, line_no, "key '" + key + "' before any [section]");
    auto& sec = doc.data_[current];
    if (sec.count(key))
      throw ConfigError(doc.file_, line_no, "duplicate key '" + key + "' in [" + current + "]");
    sec[key] = Entry{value, line_no, false};
    doc.key_order_[current].push_back(key);
  }
  return doc;
}

bool KvDoc::has(const std::string& section, const std::string& key) const {
  auto s = data_.find(section);
  return s != data_.end() && s->second.count(key) > 0;
}

std::vector<std::string> KvDoc::keys(const std::string& section) const {
  auto it = key_order_.find(section);
  return it == key_order_.end() ? std::vector<std::string>{} : it->second;
}

const KvDoc::Entry& KvDoc::entry(const std::string& section, const std::string& key) const {
  auto s = data_.find(section);
  if (s == data_.end()) throw ConfigError(file_, 0, "missing section [" + section + "]");
  auto k = s->second.find(key);
  if (k == s->second.end())
    throw ConfigError(file_, 0, "missing key '" + key + "' in [" + section + "]");
  k->second.consumed = true;
  return k->second;
}

std::string KvDoc::get_string(const std::string& section, const std::string& key) const {
  return entry(section, key).value;
}

double KvDoc::get_double(const std::string& section, const std::string& key) const {
  const auto& e = entry(section, key);
  try {
    return parse_double(e.value);
  } catch (const std::invalid_argument&) {
    throw ConfigError(file_, e.line, "key '" + key + "': expected a number, got '" + e.value + "'");
  }
}

int KvDoc::get_int(const std::string& section, const std::string& key) const {
  const auto& e = entry(section, key);
  int x = 0;
  auto [ptr, ec] = std::from_chars(e.value.data(), e.value.data() + e.value.size(), x);
  if (ec != std::errc{} || ptr != e.value.data() + e.value.size())
    throw ConfigError(file_, e.line, "key '" + key + "': expected an integer, got '" + e.value + "'");
  return x;
}

std::uint64_t KvDoc::get_u64(const std::string& section, const std::string& key) const {
  const auto& e = entry(section, key);
  std::uint64_t x = 0;
  auto [ptr, ec] = std::from_chars(e.value.data(), e.value.data() + e.value.size(), x);
  if (ec != std::errc{} || ptr != e.value.data() + e.value.size())
    throw ConfigError(file_, e.line,
                      "key '" + key + "': expected an unsigned integer, got '" + e.value + "'");
  return x;
}

bool KvDoc::get_bool(const std::string& section, const std::string& key) const {
  const auto& e = entry(section, key);
  if (e.value == "true") return true;
  if (e.value == "false") return false;
  throw ConfigError(file_, e.line, "key '" + key + "': expected true/false, got '" + e.value + "'");
}

Eigen::VectorXd KvDoc::get_vector(const std::string& section, const std::string& key) const {
  const auto& e = entry(section, key);
  if (trim(e.value).empty()) return Eigen::VectorXd(0);
  auto parts = split_commas(e.value);
  Eigen::VectorXd v(static_cast<Eigen::Index>(parts.size()));
  for (std::size_t i = 0; i < parts.size(); ++i) {
    try {
      v[static_cast<Eigen::Index>(i)] = parse_double(parts[i]);
    } catch (const std::invalid_argument&) {
      throw ConfigError(file_, e.line, "key '" + key + "': bad vector entry '" +
                                           std::string(parts[i]) + "'");
    }
  }
  return v;
}

std::vector<int> KvDoc::get_int_vector(const std::string& section, const std::string& key) const {
  const auto& e = entry(section, key);
  if (trim(e.value).empty()) return {};
  auto parts = split_commas(e.value);
  std::vector<int> v(parts.size());
  for (std::size_t i = 0; i < parts.size(); ++i) {
    int x = 0;
    auto [ptr, ec] = std::from_chars(parts[i].data(), parts[i].data() + parts[i].size(), x);
    if (ec != std::errc{} || ptr != parts[i].data() + parts[i].size())
      throw ConfigError(file_, e.line, "key '" + key + "': bad integer entry '" +
                                           std::string(parts[i]) + "'");
    v[i] = x;
  }
  return v;
}

int KvDoc::line_of(const std::string& section, const std::string& key) const {
  return entry(section, key).line;
}

std::vector<std::tuple<std::string, std::string, int>> KvDoc::unconsumed() const {
  std::vector<std::tuple<std::string, std::string, int>> out;
  for (const auto& section : section_order_) {
    for (const auto& key : keys(section)) {
      const auto& e = data_.at(section).at(key);
      if (!e.consumed) out.emplace_back(section, key, e.line);
    }
  }
  return out;
}

void KvDoc::fail(const std::string& section, const std::string& key,
                 const std::string& message) const {
  int line = 0;
  if (has(section, key)) line = data_.at(section).at(key).line;
  throw ConfigError(file_, line, "key '" + key + "' in [" + section + "]: " + message);
}

}  // namespace irgn
