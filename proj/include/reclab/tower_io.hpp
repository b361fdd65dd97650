#pragma once

#include <cctype>
#include <sstream>
#include <string>
#include <string_view>

#include <json.hpp>

#include "reclab/tower.hpp"

// Text form: integers, P (= Π), u, + - * ^ and parentheses, e.g. "2*P^3*u - 1".
// P^-k is allowed and produces a Π-shift; other negative powers invert.

namespace reclab {

namespace detail {

class TowerParser {
 public:
  TowerParser(const TowerParamsPtr& tp, std::string_view s) : tp_(tp), s_(s) {}

  TowerElement parse() {
    TowerElement r = expr();
    skip();
    if (pos_ != s_.size()) error("unexpected '" + std::string(1, s_[pos_]) + "'");
    return r;
  }

 private:
  [[noreturn]] void error(const std::string& msg) const {
    fail(Errc::ParseError, msg + " at offset " + std::to_string(pos_));
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

  i64 integer() {
    skip();
    bool neg = eat('-');
    skip();
    if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_]))) error("expected integer");
    i64 v = 0;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
      if (v > (INT64_MAX - 9) / 10) error("integer literal too large");
      v = v * 10 + (s_[pos_++] - '0');
    }
    return neg ? -v : v;
  }

  TowerElement expr() {
    TowerElement r = term();
    for (;;) {
      if (eat('+'))
        r = r + term();
      else if (eat('-'))
        r = r - term();
      else
        return r;
    }
  }

  TowerElement term() {
    TowerElement r = unary();
    while (eat('*')) r = r * unary();
    return r;
  }

  TowerElement unary() {
    if (eat('-')) return -unary();
    return power();
  }

  TowerElement power() {
    skip();
    const bool is_pi = pos_ < s_.size() && s_[pos_] == 'P';
    TowerElement base = atom();
    if (!eat('^')) return base;
    const i64 e = integer();
    if (e >= 0) return base.pow(static_cast<u64>(e));
    if (is_pi) return TowerElement::one(tp_).with_pi_shift(static_cast<int>(e));
    try {
      return invert(base).pow(static_cast<u64>(-e));
    } catch (const Error& err) {
      error(std::string("cannot invert: ") + err.what());
    }
  }

  TowerElement atom() {
    skip();
    if (pos_ >= s_.size()) error("unexpected end of input");
    const char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      TowerElement r = expr();
      if (!eat(')')) error("expected ')'");
      return r;
    }
    if (c == 'P') {
      ++pos_;
      return TowerElement::pi(tp_);
    }
    if (c == 'u') {
      ++pos_;
      return TowerElement::u(tp_);
    }
    if (std::isdigit(static_cast<unsigned char>(c))) return TowerElement::from_int(tp_, integer());
    error("unexpected '" + std::string(1, c) + "'");
  }

  const TowerParamsPtr& tp_;
  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace detail

inline TowerElement parse_element(const TowerParamsPtr& tp, std::string_view text) {
  return detail::TowerParser(tp, text).parse();
}

/// Canonical text: Σ c*P^i*u^j with centered coefficients, times P^-k for a shift.
inline std::string to_string(const TowerElement& a) {
  const auto& t = *a.params();
  std::ostringstream os;
  bool first = true;
  for (int i = 0; i < t.n_pi; ++i)
    for (int j = 0; j < t.n_u; ++j) {
      const i64 c = a.coeff(i, j).centered();
      if (c == 0) continue;
      const i64 mag = c < 0 ? -c : c;
      if (first)
        os << (c < 0 ? "-" : "");
      else
        os << (c < 0 ? " - " : " + ");
      first = false;
      std::string mono;
      if (i > 0) mono += i == 1 ? "P" : "P^" + std::to_string(i);
      if (j > 0) mono += (mono.empty() ? "" : "*") + std::string(j == 1 ? "u" : "u^" + std::to_string(j));
      if (mono.empty())
        os << mag;
      else if (mag == 1)
        os << mono;
      else
        os << mag << "*" << mono;
    }
  std::string body = first ? "0" : os.str();
  if (a.pi_shift() < 0 && !first) return "(" + body + ")*P^" + std::to_string(a.pi_shift());
  return body;
}

inline nlohmann::json to_json(const TowerElement& a) {
  const auto& t = *a.params();
  nlohmann::json coeffs = nlohmann::json::array();
  for (int i = 0; i < t.n_pi; ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (int j = 0; j < t.n_u; ++j) row.push_back(a.raw(i, j));
    coeffs.push_back(row);
  }
  return {{"p", t.p}, {"m", t.m}, {"N", t.N}, {"precision", a.precision()}, {"pi_shift", a.pi_shift()},
          {"coeffs", coeffs}};
}

inline TowerElement element_from_json(const TowerParamsPtr& tp, const nlohmann::json& j) {
  try {
    const auto& t = *tp;
    if (j.at("p").get<u64>() != t.p || j.at("m").get<int>() != t.m)
      fail(Errc::ParamsMismatch, "element belongs to a different tower");
    const auto& rows = j.at("coeffs");
    if (rows.size() != static_cast<std::size_t>(t.n_pi)) fail(Errc::ParseError, "wrong number of coefficient rows");
    std::vector<u64> c(t.size(), 0);
    for (int i = 0; i < t.n_pi; ++i) {
      if (rows[i].size() != static_cast<std::size_t>(t.n_u)) fail(Errc::ParseError, "wrong row length");
      for (int k = 0; k < t.n_u; ++k) c[static_cast<std::size_t>(i) * t.n_u + k] = rows[i][k].get<u64>();
    }
    return TowerElement(tp, std::move(c), j.at("precision").get<int>(), j.value("pi_shift", 0));
  } catch (const nlohmann::json::exception& e) {
    fail(Errc::ParseError, e.what());
  }
}

}  // namespace reclab
