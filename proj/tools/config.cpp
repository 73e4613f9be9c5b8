#include "config.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

namespace twhcli {

using twh::Matrix;
using twh::Rat;

namespace {

std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

int parse_int(const std::string& key, const std::string& v) {
  try {
    size_t used = 0;
    int x = std::stoi(v, &used);
    if (used != v.size()) throw std::invalid_argument(v);
    return x;
  } catch (const std::exception&) {
    throw ConfigError(key + ": not an integer: " + v);
  }
}

Rat parse_rat(const std::string& v) {
  try {
    return Rat(trim(v));
  } catch (const std::exception&) {
    throw ConfigError("not a rational: '" + trim(v) + "'");
  }
}

}  // namespace

const std::vector<std::string>& all_suites() {
  static const std::vector<std::string> s{"delta-identities", "untwisted-axioms",      "twisted-axioms",
                                          "construction-equivalence", "dplus-abstract", "dplus-representations",
                                          "corollary"};
  return s;
}

Matrix<Rat> parse_matrix(const std::string& text) {
  // two levels of brackets, entries are rationals
  std::string t = trim(text);
  if (t.size() < 2 || t.front() != '[' || t.back() != ']') throw ConfigError("matrix literal must be [[..], ..]");
  std::vector<std::vector<Rat>> rows;
  size_t i = 1;
  auto skip = [&] {
    while (i < t.size() && std::isspace(static_cast<unsigned char>(t[i]))) ++i;
  };
  skip();
  while (i < t.size() - 1) {
    if (t[i] != '[') throw ConfigError("matrix literal: expected '[' at offset " + std::to_string(i));
    size_t close = t.find(']', i);
    if (close == std::string::npos) throw ConfigError("matrix literal: unclosed row");
    std::vector<Rat> row;
    std::stringstream ss(t.substr(i + 1, close - i - 1));
    for (std::string item; std::getline(ss, item, ',');) row.push_back(parse_rat(item));
    rows.push_back(std::move(row));
    i = close + 1;
    skip();
    if (i < t.size() - 1) {
      if (t[i] != ',') throw ConfigError("matrix literal: expected ',' between rows");
      ++i;
      skip();
    }
  }
  if (rows.empty()) throw ConfigError("matrix literal is empty");
  for (const auto& r : rows)
    if (r.size() != rows[0].size()) throw ConfigError("matrix literal is ragged");
  return Matrix<Rat>(rows);
}

RunConfig parse_config(const std::string& text) {
  RunConfig c;
  std::stringstream in(text);
  int lineno = 0;
  for (std::string line; std::getline(in, line);) {
    ++lineno;
    if (auto h = line.find('#'); h != std::string::npos) line.resize(h);
    line = trim(line);
    if (line.empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError("line " + std::to_string(lineno) + ": expected key = value");
    std::string key = trim(line.substr(0, eq)), v = trim(line.substr(eq + 1));
    std::replace(key.begin(), key.end(), '-', '_');
    try {
      if (key == "preset") c.preset = v;
      else if (key == "d") c.d = parse_int(key, v);
      else if (key == "p") c.p = parse_int(key, v);
      else if (key == "gram") c.gram = parse_matrix(v);
      else if (key == "nu") c.nu = parse_matrix(v);
      else if (key == "weight_cut") c.budgets.weight_cut = parse_int(key, v);
      else if (key == "window") c.budgets.window = parse_int(key, v);
      else if (key == "y_order") c.budgets.y_order = parse_int(key, v);
      else if (key == "x_order") c.budgets.x_order = parse_int(key, v);
      else if (key == "max_mode") c.budgets.max_mode = parse_int(key, v);
      else if (key == "max_r") c.budgets.max_r = parse_int(key, v);
      else if (key == "jobs") c.jobs = parse_int(key, v);
      else if (key == "format") c.format = v;
      else if (key == "suites") {
        c.suites.clear();
        std::stringstream ss(v);
        for (std::string s; std::getline(ss, s, ',');)
          if (!trim(s).empty()) c.suites.push_back(trim(s));
      } else throw ConfigError("unknown key '" + key + "'");
    } catch (const ConfigError& e) {
      throw ConfigError("line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  return c;
}

RunConfig load_config(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ConfigError("cannot read " + path);
  std::stringstream ss;
  ss << f.rdbuf();
  return parse_config(ss.str());
}

void RunConfig::validate(bool need_setup) const {
  const Budgets& b = budgets;
  for (auto [name, v] : {std::pair{"weight_cut", b.weight_cut}, std::pair{"window", b.window},
                         std::pair{"y_order", b.y_order}, std::pair{"x_order", b.x_order},
                         std::pair{"max_mode", b.max_mode}, std::pair{"max_r", b.max_r}, std::pair{"jobs", jobs}})
    if (v <= 0) throw ConfigError(std::string(name) + " must be positive");
  bool explicit_m = gram.has_value() || nu.has_value();
  if (preset && explicit_m) throw ConfigError("give either a preset or gram/nu, not both");
  if ((need_setup || has_setup()) && !preset && !(gram && nu)) throw ConfigError("no setup: need a preset or both gram and nu");
  if (d && *d <= 0) throw ConfigError("d must be positive");
  if (format != "human" && format != "json") throw ConfigError("format must be human or json");
  for (const auto& s : suites)
    if (std::find(all_suites().begin(), all_suites().end(), s) == all_suites().end())
      throw ConfigError("unknown suite '" + s + "'");
}

twh::Setup RunConfig::setup() const {
  validate();
  if (preset) {
    twh::Setup s = twh::preset(*preset, d.value_or(*preset == "cyclic" ? 3 : 1), budgets.weight_cut);
    if (p && *p != s.p) throw ConfigError("preset " + *preset + " has p = " + std::to_string(s.p));
    return s;
  }
  twh::Setup s;
  s.d = static_cast<int>(gram->rows());
  if (d && *d != s.d) throw ConfigError("d = " + std::to_string(*d) + " but gram is " + std::to_string(s.d) + "x" +
                                        std::to_string(s.d));
  s.gram = *gram;
  s.nu = *nu;
  s.weight_cut = budgets.weight_cut;
  if (p) {
    s.p = *p;
  } else {
    // the order of nu; make_setup rejects shapes first, so only look when they match
    s.p = 0;
    if (nu->rows() == nu->cols() && static_cast<int>(nu->rows()) == s.d) {
      Matrix<Rat> one = Matrix<Rat>::identity(s.d), x = *nu;
      for (int k = 1; k <= 64 && !s.p; ++k, x = x * *nu)
        if (x == one) s.p = k;
    }
    if (!s.p) throw ConfigError("nu has no finite order <= 64; give p");
  }
  return s;
}

std::string RunConfig::summary() const {
  std::string s;
  if (preset) s = *preset + " d=" + std::to_string(d.value_or(*preset == "cyclic" ? 3 : 1));
  else s = "explicit d=" + std::to_string(gram ? gram->rows() : 0);
  const Budgets& b = budgets;
  s += " weight_cut=" + std::to_string(b.weight_cut) + " window=" + std::to_string(b.window) +
       " y_order=" + std::to_string(b.y_order) + " x_order=" + std::to_string(b.x_order) +
       " max_mode=" + std::to_string(b.max_mode) + " max_r=" + std::to_string(b.max_r);
  return s;
}

}  // namespace twhcli
