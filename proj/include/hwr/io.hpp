#pragma once

#include <cstddef>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "hwr/errors.hpp"
#include "hwr/flows.hpp"
#include "hwr/puiseux.hpp"
#include "hwr/rational.hpp"
#include "hwr/series.hpp"
#include "hwr/striped.hpp"
#include "hwr/weyl.hpp"

namespace hwr::io {

using json = nlohmann::ordered_json;

inline Rational rational_from(const json& j) {
  if (j.is_number_integer()) return Rational(j.get<long>());
  if (!j.is_string()) throw parse_error("expected a rational string", 0);
  return Rational::parse(j.get<std::string>());
}

inline std::size_t size_from(const json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_number_unsigned()) throw parse_error(std::string("missing field ") + key, 0);
  return j[key].get<std::size_t>();
}

inline json to_json(const Rational& r) { return r.to_string(); }

inline json to_json(const Series& s) {
  json coeffs = json::array();
  for (const auto& c : s.coeffs()) coeffs.push_back(c.to_string());
  return json{{"trunc", s.trunc()}, {"coeffs", coeffs}};
}

inline Series series_from(const json& j) {
  std::size_t n = size_from(j, "trunc");
  if (!j.contains("coeffs") || !j["coeffs"].is_array()) throw parse_error("missing field coeffs", 0);
  std::vector<Rational> c;
  for (const auto& v : j["coeffs"]) c.push_back(rational_from(v));
  if (c.size() != n + 1) throw parse_error("coefficient count does not match trunc", 0);
  return Series(std::move(c), n);
}

inline json to_json(const PuiseuxSeries& p) {
  json coeffs = json::array();
  for (const auto& c : p.coeffs()) coeffs.push_back(c.to_string());
  return json{{"ram", p.ram()}, {"lo", p.lo()}, {"coeffs", coeffs}};
}

inline PuiseuxSeries puiseux_from(const json& j) {
  std::size_t ram = size_from(j, "ram");
  if (!j.contains("lo") || !j["lo"].is_number_integer()) throw parse_error("missing field lo", 0);
  std::vector<Rational> c;
  for (const auto& v : j.at("coeffs")) c.push_back(rational_from(v));
  return PuiseuxSeries(ram, j["lo"].get<long>(), std::move(c));
}

inline json to_json(const weyl::NormalForm& nf) {
  json terms = json::array();
  for (const auto& [key, c] : nf.terms()) {
    terms.push_back(json{{"i", key.i}, {"j", key.j}, {"m", key.m}, {"coeff", c.to_string()}});
  }
  return json{{"mode", nf.mode() == weyl::Mode::hw ? "hw" : "env"}, {"terms", terms}};
}

inline weyl::NormalForm normal_form_from(const json& j) {
  std::string mode = j.at("mode").get<std::string>();
  if (mode != "hw" && mode != "env") throw parse_error("mode must be hw or env", 0);
  weyl::NormalForm::Terms terms;
  for (const auto& t : j.at("terms")) {
    weyl::Monomial key{t.at("i").get<unsigned>(), t.at("j").get<unsigned>(), t.at("m").get<unsigned>()};
    terms[key] += rational_from(t.at("coeff"));
  }
  return weyl::NormalForm(terms, mode == "hw" ? weyl::Mode::hw : weyl::Mode::env);
}

inline json to_json(const striped::StripedElement& e) {
  return json{{"n", e.n}, {"rho", e.rho.to_string()}, {"mu", e.mu.to_string()}, {"lambda", e.lambda.to_string()}};
}

inline striped::StripedElement striped_from(const json& j) {
  return {j.at("n").get<long>(), rational_from(j.at("rho")), rational_from(j.at("mu")), rational_from(j.at("lambda"))};
}

inline json flow_report(std::size_t n, const Rational& r, const flows::Flow& f) {
  return json{{"n", n}, {"r", r.to_string()}, {"lambda", f.lambda.to_string()}, {"s", to_json(f.s)}, {"g", to_json(f.g)}};
}

inline json triangle_json(const std::vector<std::vector<Rational>>& rows, const RefSeq& c) {
  json out = json::array();
  for (const auto& row : rows) {
    json r = json::array();
    for (const auto& v : row) r.push_back(v.to_string());
    out.push_back(r);
  }
  return json{{"c", c.name()}, {"n_max", rows.empty() ? 0 : rows.size() - 1}, {"rows", out}};
}

inline std::vector<std::vector<Rational>> triangle_from(const json& j) {
  std::vector<std::vector<Rational>> rows;
  for (const auto& r : j.at("rows")) {
    std::vector<Rational> row;
    for (const auto& v : r) row.push_back(rational_from(v));
    rows.push_back(std::move(row));
  }
  if (rows.size() != size_from(j, "n_max") + 1) throw parse_error("row count does not match n_max", 0);
  return rows;
}

inline std::string triangle_csv(const std::vector<std::vector<Rational>>& rows) {
  std::ostringstream os;
  for (const auto& row : rows) {
    for (std::size_t k = 0; k < row.size(); ++k) os << (k ? "," : "") << row[k].to_string();
    os << "\n";
  }
  return os.str();
}

inline std::string triangle_pretty(const std::vector<std::vector<Rational>>& rows) {
  std::ostringstream os;
  for (const auto& row : rows) {
    for (std::size_t k = 0; k < row.size(); ++k) os << (k ? " " : "") << row[k].to_string();
    os << "\n";
  }
  return os.str();
}

namespace detail {

inline std::string power(const char* sym, unsigned e) {
  if (e == 0) return "";
  std::string s = sym;
  if (e > 1) s += "^" + std::to_string(e);
  return s;
}

}  // namespace detail

// "a+^2 a + 2 a+", highest monomials first.
inline std::string pretty(const weyl::NormalForm& nf) {
  if (nf.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (auto it = nf.terms().rbegin(); it != nf.terms().rend(); ++it) {
    const auto& [key, c] = *it;
    std::string mono;
    for (const auto& part : {detail::power("a+", key.i), detail::power("a", key.j), detail::power("c", key.m)}) {
      if (part.empty()) continue;
      if (!mono.empty()) mono += " ";
      mono += part;
    }
    Rational mag = abs(c);
    std::string body;
    if (mono.empty()) {
      body = mag.to_string();
    } else if (mag == Rational(1)) {
      body = mono;
    } else {
      body = mag.to_string() + " " + mono;
    }
    if (first) {
      out = (c.sign() < 0 ? "-" : "") + body;
    } else {
      out += (c.sign() < 0 ? " - " : " + ") + body;
    }
    first = false;
  }
  return out;
}

}  // namespace hwr::io
