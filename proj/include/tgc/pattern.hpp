#pragma once

#include <algorithm>
#include <cctype>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <boost/rational.hpp>

#include "combinatorics.hpp"
#include "error.hpp"

namespace tgc {

// One repeated group, e.g. "0**" with repeat 3.
struct PatternAtom {
  std::string unit;
  int repeat = 1;
};

using Symbols = std::map<std::string, long long, std::less<>>;

namespace detail {

// Recursive-descent evaluator for exponent expressions:
//   expr := term (('+'|'-') term)*
//   term := factor (('*'|'/') factor)*
//   factor := integer | name | 'ceil(' expr ')' | 'floor(' expr ')' | '(' expr ')' | '-' factor
class ExprParser {
 public:
  using Q = boost::rational<long long>;

  ExprParser(std::string_view text, const Symbols& symbols) : s_(text), sym_(symbols) {}

  Q parse() {
    Q v = expr();
    skip();
    if (pos_ != s_.size()) fail("trailing input");
    return v;
  }

 private:
  [[noreturn]] void fail(const std::string& why) const {
    throw invalid_parameters("pattern expression '" + std::string(s_) + "': " + why);
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  Q expr() {
    Q v = term();
    while (true) {
      if (eat('+')) v += term();
      else if (eat('-')) v -= term();
      else return v;
    }
  }
  Q term() {
    Q v = factor();
    while (true) {
      if (eat('*')) v *= factor();
      else if (eat('/')) {
        Q d = factor();
        if (d == Q(0)) fail("division by zero");
        v /= d;
      } else return v;
    }
  }
  Q factor() {
    skip();
    if (eat('-')) return -factor();
    if (eat('(')) {
      Q v = expr();
      if (!eat(')')) fail("missing ')'");
      return v;
    }
    if (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
      long long v = 0;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) v = v * 10 + (s_[pos_++] - '0');
      return Q(v);
    }
    std::string name;
    while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
      name += s_[pos_++];
    if (name.empty()) fail("unexpected character");
    if (name == "ceil" || name == "floor") {
      if (!eat('(')) fail("expected '(' after " + name);
      Q v = expr();
      if (!eat(')')) fail("missing ')'");
      long long f = floor_div(v.numerator(), v.denominator());
      return Q(name == "floor" || v.denominator() == 1 ? f : f + 1);
    }
    auto it = sym_.find(name);
    if (it == sym_.end()) fail("unknown symbol " + name);
    return Q(it->second);
  }

  std::string_view s_;
  const Symbols& sym_;
  std::size_t pos_ = 0;
};

}  // namespace detail

inline long long eval_exponent(std::string_view text, const Symbols& symbols) {
  auto v = detail::ExprParser(text, symbols).parse();
  if (v.denominator() != 1) throw invalid_parameters("non-integer exponent '" + std::string(text) + "'");
  return v.numerator();
}

// Parses "(0**)^{p+1} (0*)^{N} 0 (*)^{k-1}". A literal '1' is read as '*'.
inline std::vector<PatternAtom> parse_pattern(std::string_view text, const Symbols& symbols) {
  std::vector<PatternAtom> atoms;
  std::size_t i = 0;
  auto unit_char = [](char ch) { return ch == '0' || ch == '*' || ch == '1'; };
  auto norm = [](std::string u) {
    for (auto& ch : u)
      if (ch == '1') ch = '*';
    return u;
  };
  while (i < text.size()) {
    char ch = text[i];
    if (std::isspace(static_cast<unsigned char>(ch))) {
      ++i;
      continue;
    }
    if (unit_char(ch)) {
      atoms.push_back({norm(std::string(1, ch)), 1});
      ++i;
      continue;
    }
    if (ch != '(') throw invalid_parameters("pattern: unexpected '" + std::string(1, ch) + "'");
    auto close = text.find(')', i);
    if (close == std::string_view::npos) throw invalid_parameters("pattern: missing ')'");
    std::string unit(text.substr(i + 1, close - i - 1));
    if (unit.empty()) throw invalid_parameters("pattern: empty group");
    for (char u : unit)
      if (!unit_char(u)) throw invalid_parameters("pattern: bad group '" + unit + "'");
    i = close + 1;
    if (i + 1 >= text.size() || text[i] != '^' || text[i + 1] != '{')
      throw invalid_parameters("pattern: group without ^{...}");
    auto end = text.find('}', i);
    if (end == std::string_view::npos) throw invalid_parameters("pattern: missing '}'");
    long long rep = eval_exponent(text.substr(i + 2, end - i - 2), symbols);
    if (rep < 0) throw invalid_parameters("pattern: negative repeat for (" + unit + ")");
    atoms.push_back({norm(unit), static_cast<int>(rep)});
    i = end + 1;
  }
  return atoms;
}

inline int pattern_length(const std::vector<PatternAtom>& atoms) {
  long long n = 0;
  for (const auto& a : atoms) n += static_cast<long long>(a.unit.size()) * a.repeat;
  return static_cast<int>(n);
}

inline std::vector<bool> expand_pattern(const std::vector<PatternAtom>& atoms) {
  std::vector<bool> row;
  for (const auto& a : atoms) {
    if (a.repeat < 0) throw invalid_parameters("pattern: negative repeat");
    for (int r = 0; r < a.repeat; ++r)
      for (char ch : a.unit) {
        if (ch != '0' && ch != '*') throw invalid_parameters("pattern: bad symbol");
        row.push_back(ch == '*');
      }
  }
  return row;
}

inline std::vector<bool> expand_pattern(const std::vector<PatternAtom>& atoms, int q) {
  auto row = expand_pattern(atoms);
  if (static_cast<int>(row.size()) != q)
    throw construction_error("pattern expands to length " + std::to_string(row.size()) + ", expected " +
                             std::to_string(q));
  return row;
}

// ---- C* tableI templates ----------------------------------------------------

struct RowTemplateCase {
  int cstar;
  std::vector<std::string> rows;
  std::optional<long long> u;  // only for cases parameterized by u
};

namespace row_templates {
inline const char* r1 = "(0**)^{p+1} (0*)^{N} 0 (*)^{k-1}";
inline const char* r2 = "0 (*0)^{N} (**0)^{p+1} (*)^{k-1}";
inline const char* r3_three = "* (0*)^{ceil(N/2)+1} (0**)^{p-1} (0*)^{floor(N/2)+2} (*)^{k-1}";
inline const char* r3_four = "(0**)^{p} (0*)^{N+2} (*)^{k-1}";
inline const char* r4_four = "(*0)^{N+2} (**0)^{p} (*)^{k-1}";
inline const char* half_even_a = "0 * (**0)^{p/2-1} (*0)^{N+1} * (0**)^{p/2} * 0 (*)^{k-1}";
inline const char* half_even_b = "0 * (**0)^{p/2} * (0*)^{N+1} (0**)^{p/2-1} * 0 (*)^{k-1}";
inline const char* odd_four_a = "0 * (**0)^{p-1} (*0)^{N+2} * (*)^{k-1}";
inline const char* odd_four_b = "* (0*)^{N+2} (0**)^{p-1} * 0 (*)^{k-1}";
inline const char* half_odd = "0 * (**0)^{(p-1)/2} (*0)^{N+1} * (0**)^{(p-1)/2} * 0 (*)^{k-1}";
inline const char* u_five_a = "0 * (**0)^{u} (*0)^{N+1} 1 (0**)^{p-1-u} * 0 (*)^{k-1}";
inline const char* u_five_b = "0 * (**0)^{p-1-u} (*0)^{N+1} 1 (0**)^{u} * 0 (*)^{k-1}";
inline const char* u_six_a = "0 * (**0)^{u} (*0)^{N+1} * (0**)^{p-1-u} * 0 (*)^{k-1}";
inline const char* u_six_b = "0 * (**0)^{p-1-u} (*0)^{N+1} * (0**)^{u} * 0 (*)^{k-1}";
}  // namespace row_templates

// Template rows for C* in {3..6}; p = n - 3(k-1), q = p' = k - (p + 4).
inline RowTemplateCase row_template_case(int cstar, int p, int q) {
  using namespace row_templates;
  const bool even = p % 2 == 0;
  auto undefined_u = [&] {
    return construction_error("C* tableI: u undefined for C*=" + std::to_string(cstar) + ", p=" +
                              std::to_string(p) + ", p'=" + std::to_string(q));
  };
  switch (cstar) {
    case 3:
      return {3, {r1, r2, r3_three}, std::nullopt};
    case 4:
      if (q % 3 != 0) return {4, {r1, r2, r3_four, r4_four}, std::nullopt};
      if (even) return {4, {r1, r2, half_even_a, half_even_b}, std::nullopt};
      return {4, {r1, r2, odd_four_a, odd_four_b}, std::nullopt};
    case 5:
      if (even) return {5, {r1, r2, half_even_a, half_even_b, r3_three}, std::nullopt};
      if (q % 3 != 0) return {5, {r1, r2, r3_four, r4_four, half_odd}, std::nullopt};
      switch (q % 6) {
        case 1: return {5, {r1, r2, r3_three, u_five_a, u_five_b}, (q - 7) / 3};
        case 3: return {5, {r1, r2, r3_three, u_five_a, u_five_b}, (q - 3) / 3};
        case 5: return {5, {r1, r2, r3_three, u_five_a, u_five_b}, (q - 5) / 3};
        default: throw undefined_u();
      }
    case 6:
      if (even) return {6, {r1, r2, r3_four, r4_four, half_even_a, half_even_b}, std::nullopt};
      switch (q % 6) {
        case 1: return {6, {r1, r2, r3_four, r4_four, u_six_a, u_six_b}, (q + 2) / 3};
        case 3: return {6, {r1, r2, r3_four, r4_four, u_six_a, u_six_b}, (q - 3) / 3};
        case 5: return {6, {r1, r2, r3_four, r4_four, u_six_a, u_six_b}, (q - 2) / 3};
        default: throw undefined_u();
      }
    default:
      throw invalid_parameters("C* tableI has no template for C*=" + std::to_string(cstar));
  }
}

struct ExpandedTemplate {
  long long width = 0;  // the solved value of N
  std::vector<std::vector<bool>> rows;
};

// Solves the free width N so that every row has length n and k-1 zeros.
inline ExpandedTemplate expand_row_templates(int cstar, int n, int k) {
  const int p = n - 3 * (k - 1);
  const int q = k - (p + 4);
  auto tc = row_template_case(cstar, p, q);
  std::vector<long long> widths;
  for (long long w = 0; w <= n; ++w) {
    Symbols sym{{"p", p}, {"k", k}, {"N", w}};
    if (tc.u) sym["u"] = *tc.u;
    bool ok = true;
    for (const auto& r : tc.rows) {
      try {
        if (pattern_length(parse_pattern(r, sym)) != n) ok = false;
      } catch (const invalid_parameters&) {
        ok = false;
      }
      if (!ok) break;
    }
    if (ok) widths.push_back(w);
  }
  std::string where = "C*=" + std::to_string(cstar) + ", n=" + std::to_string(n) + ", k=" + std::to_string(k);
  if (widths.size() != 1)
    throw construction_error("C* tableI: " + std::to_string(widths.size()) + " consistent widths for " + where);
  ExpandedTemplate out;
  out.width = widths.front();
  Symbols sym{{"p", p}, {"k", k}, {"N", out.width}};
  if (tc.u) sym["u"] = *tc.u;
  for (const auto& r : tc.rows) {
    auto row = expand_pattern(parse_pattern(r, sym), n);
    int zeros = static_cast<int>(std::count(row.begin(), row.end(), false));
    if (zeros != k - 1)
      throw construction_error("C* tableI: row '" + r + "' has " + std::to_string(zeros) + " zeros for " + where);
    out.rows.push_back(std::move(row));
  }
  return out;
}

}  // namespace tgc
