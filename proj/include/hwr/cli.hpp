#pragma once

#include <cctype>
#include <cstddef>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "hwr/errors.hpp"
#include "hwr/flows.hpp"
#include "hwr/io.hpp"
#include "hwr/riordan.hpp"
#include "hwr/sequences.hpp"
#include "hwr/striped.hpp"
#include "hwr/weyl.hpp"

namespace hwr::cli {

enum ExitCode : int { ok = 0, check_failed = 1, usage = 2 };

struct Options {
  std::size_t trunc = 32;
  std::string lambda = "1/7";
  std::string ref = "ogf";
  std::string format = "pretty";
  std::size_t n = 6;
};

// "X2D", "XD2", "X3D2": X stands for a+, D for a, digits are exponents. Other input goes to parse_word.
inline weyl::BosonWord parse_omega(const std::string& s) {
  bool xd = !s.empty() && std::all_of(s.begin(), s.end(), [](char ch) {
    return ch == 'X' || ch == 'D' || std::isdigit(static_cast<unsigned char>(ch));
  });
  if (!xd) return weyl::parse_word(s);
  std::vector<weyl::Letter> letters;
  std::size_t i = 0;
  while (i < s.size()) {
    char ch = s[i];
    if (ch != 'X' && ch != 'D') throw parse_error("expected X or D", i);
    std::size_t j = ++i;
    std::size_t k = 0;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) k = k * 10 + static_cast<std::size_t>(s[i++] - '0');
    if (i == j) k = 1;
    if (k == 0) throw parse_error("exponent must be at least 1", j);
    letters.insert(letters.end(), k, ch == 'X' ? weyl::Letter::B : weyl::Letter::A);
  }
  return weyl::BosonWord(std::move(letters));
}

inline RefSeq parse_ref(const std::string& s) {
  if (s == "ogf") return RefSeq::ordinary();
  if (s == "egf") return RefSeq::exponential();
  throw parse_error("reference must be ogf or egf", 0);
}

inline std::vector<Rational> parse_list(const std::string& s) {
  std::vector<Rational> out;
  std::size_t start = 0;
  while (start <= s.size()) {
    std::size_t comma = s.find(',', start);
    std::string part = s.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
    try {
      out.push_back(Rational::parse(part));
    } catch (const parse_error& e) {
      throw parse_error("bad list entry '" + part + "'", start + e.position());
    }
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

inline std::string json_text(const io::json& j) { return j.dump() + "\n"; }

inline int cmd_order(const std::string& word, const std::string& mode, const Options& o, std::ostream& out) {
  weyl::Mode m = mode == "env" ? weyl::Mode::env : weyl::Mode::hw;
  if (mode != "hw" && mode != "env") throw parse_error("mode must be hw or env", 0);
  weyl::NormalForm nf = weyl::normal_order(weyl::parse_word(word), m);
  if (o.format == "json") {
    out << json_text(io::to_json(nf));
  } else {
    out << io::pretty(nf) << "\n";
  }
  return ok;
}

inline int cmd_stirling(const std::string& omega, const Options& o, std::ostream& out) {
  weyl::GSTable t = weyl::gen_stirling(weyl::normal_order(parse_omega(omega)), o.n);
  if (o.format == "json") {
    io::json rows = io::json::array();
    for (const auto& row : t.rows) {
      io::json r = io::json::array();
      for (const auto& v : row) r.push_back(v.to_string());
      rows.push_back(r);
    }
    out << json_text(io::json{{"omega", io::to_json(t.omega)}, {"excess", t.excess}, {"rows", rows}});
  } else if (o.format == "csv") {
    out << io::triangle_csv(t.rows);
  } else {
    out << io::triangle_pretty(t.rows);
  }
  return ok;
}

inline riordan::RiordanArray named_array(const std::string& name, long m, const std::string& g, const std::string& f,
                                         const Options& o) {
  std::size_t n = std::max(o.trunc, o.n);
  using namespace riordan::named;
  if (name == "pascal") return pascal(n);
  if (name == "pascal_power") return pascal_power(m, n);
  if (name == "pascal_exp") return pascal_exp(n);
  if (name == "stirling1") return stirling1(n);
  if (name == "stirling2") return stirling2(n);
  if (name == "identity") return riordan::identity(n, parse_ref(o.ref));
  if (name == "custom") {
    if (g.empty() || f.empty()) throw parse_error("custom arrays need --g and --f", 0);
    return riordan::make(Series(parse_list(g), n), Series(parse_list(f), n), parse_ref(o.ref));
  }
  throw parse_error("unknown array '" + name + "'", 0);
}

inline int cmd_riordan(const std::string& name, long m, const std::string& g, const std::string& f, bool az,
                       const Options& o, std::ostream& out) {
  riordan::RiordanArray t = named_array(name, m, g, f, o);
  auto rows = riordan::triangle(t, o.n);
  if (o.format == "json") {
    io::json j = io::triangle_json(rows, t.ref());
    if (az) {
      auto seqs = riordan::az_sequences(t);
      j["A"] = io::to_json(seqs.a);
      j["Z"] = io::to_json(seqs.z);
    }
    out << json_text(j);
  } else {
    out << (o.format == "csv" ? io::triangle_csv(rows) : io::triangle_pretty(rows));
    if (az) {
      auto seqs = riordan::az_sequences(t);
      out << "A: " << json_text(io::to_json(seqs.a)) << "Z: " << json_text(io::to_json(seqs.z));
    }
  }
  return ok;
}

inline int cmd_flow(std::size_t n, const std::string& r, const Options& o, std::ostream& out) {
  Rational rr = Rational::parse(r);
  flows::Flow fl = flows::conjugacy_prefunction(n, rr, Rational::parse(o.lambda), o.trunc);
  out << json_text(io::flow_report(n, rr, fl));
  return ok;
}

inline int cmd_striped(const striped::StripedElement& e, const std::string& times, const Options& o,
                       std::ostream& out) {
  if (!times.empty()) {
    auto p = parse_list(times);
    if (p.size() != 3 || !p[0].is_integer()) throw parse_error("--qmul expects n,rho,mu", 0);
    striped::StripedElement b{p[0].numerator().get_si(), p[1], p[2], e.lambda};
    out << json_text(io::json{{"product", io::to_json(striped::qmul(e, b))}, {"swapped", io::to_json(striped::qmul(b, e))}});
    return ok;
  }
  auto t = striped::materialize(e, std::max(o.trunc, o.n));
  bool stripes = striped::stripe_check(t, static_cast<std::size_t>(e.n));
  auto rows = riordan::triangle(t, o.n);
  if (o.format == "json") {
    out << json_text(io::json{{"element", io::to_json(e)}, {"stripe_ok", stripes}, {"triangle", io::triangle_json(rows, t.ref())}});
  } else {
    out << io::to_json(e).dump() << "\n" << io::triangle_pretty(rows) << "stripe_ok " << (stripes ? "true" : "false") << "\n";
  }
  return stripes ? ok : check_failed;
}

inline int cmd_seq(long d, const std::string& variant, const Options& o, std::ostream& out) {
  sequences::CountingEgf s;
  if (variant.empty()) {
    if (d < 1) throw parse_error("--d must be positive", 0);
    s = sequences::family(d);
  } else if (variant == "4z") {
    s = sequences::quadruple_factorial();
  } else if (variant == "2z2") {
    s = sequences::binary_mappings();
  } else {
    throw parse_error("unknown variant '" + variant + "'", 0);
  }
  sequences::SeqCheck c = sequences::check(s, o.n);
  bool factorial_ok = true;
  if (variant.empty() && d == 1) {
    for (std::size_t n = 0; n < c.values.size(); ++n) factorial_ok = factorial_ok && c.values[n] == factorial(n);
  }
  bool pass = c.routes_agree && c.published_match.value_or(true) && factorial_ok;
  if (o.format == "json") {
    io::json vals = io::json::array();
    for (const auto& v : c.values) vals.push_back(v.to_string());
    io::json j{{"name", s.name}, {"oeis", s.oeis}, {"values", vals}, {"routes_agree", c.routes_agree}};
    if (c.published_match) j["published_match"] = *c.published_match;
    j["passed"] = pass;
    out << json_text(j);
  } else {
    for (std::size_t n = 0; n < c.values.size(); ++n) out << (n ? " " : "") << c.values[n].to_string();
    out << "\n" << (pass ? "ok" : "FAILED") << "\n";
  }
  return pass ? ok : check_failed;
}

struct VerifyArgs {
  std::string omega = "X2D";
  std::size_t pmax = 5;
  std::size_t samples = 8;
  std::size_t n = 3;
  std::string r = "1";
};

inline int cmd_verify(const std::string& suite, const VerifyArgs& v, const Options& o, std::ostream& out) {
  io::json checks = io::json::array();
  bool pass = true;
  auto record = [&](const std::string& name, bool result) {
    checks.push_back(io::json{{"name", name}, {"passed", result}});
    pass = pass && result;
  };
  if (suite == "equiv" || suite == "prop45") {
    auto rep = flows::verify_equiv_report(weyl::normal_order(parse_omega(v.omega)), flows::lambda_samples(v.samples),
                                          v.pmax, o.trunc);
    checks.push_back(io::json{{"name", "sheffer"}, {"value", rep.sheffer}});
    checks.push_back(io::json{{"name", "substitution"}, {"value", rep.substitution}});
    if (rep.flow_agrees) record("flow_agrees", *rep.flow_agrees);
    record("equivalence", rep.holds());
  } else if (suite == "grouplaw") {
    record("group_law", flows::group_law_holds(v.n, Rational::parse(v.r), flows::lambda_samples(o.trunc + 1), o.trunc));
  } else if (suite == "stripe") {
    Rational lambda = Rational::parse(o.lambda);
    for (long k = 0; k <= static_cast<long>(v.n); ++k) {
      long l = static_cast<long>(v.n) - k;
      if (k == l) continue;
      auto e = striped::from_bracket(k, l, Rational(1), Rational(1), lambda, flows::Variant::plus);
      record("stripe k=" + std::to_string(k) + " l=" + std::to_string(l),
             striped::stripe_check(striped::materialize(e, o.trunc), static_cast<std::size_t>(v.n)));
    }
    record("pascal_not_2_striped", !striped::stripe_check(riordan::named::pascal(o.trunc), 2));
  } else {
    throw parse_error("unknown suite '" + suite + "'", 0);
  }
  out << json_text(io::json{{"suite", suite}, {"passed", pass}, {"checks", checks}});
  return pass ? ok : check_failed;
}

// Entry point shared by the executable and the tests.
inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact Heisenberg-Weyl normal ordering, Riordan arrays and striped quasigroups"};
  app.require_subcommand(1);
  Options o;
  auto common = [&](CLI::App* sub, bool with_n = true) {
    sub->add_option("--trunc", o.trunc, "truncation order")->capture_default_str();
    sub->add_option("--lambda", o.lambda, "flow parameter p/q")->capture_default_str();
    sub->add_option("--ref", o.ref, "reference sequence")->check(CLI::IsMember({"ogf", "egf"}))->capture_default_str();
    sub->add_option("--format", o.format, "output format")->check(CLI::IsMember({"json", "csv", "pretty"}))->capture_default_str();
    if (with_n) sub->add_option("--n", o.n, "size or row count")->capture_default_str();
  };

  std::string word, mode = "hw";
  auto* order = app.add_subcommand("order", "normal-order a word in a, a+, c");
  order->add_option("word", word, "word, e.g. \"a a+^2\"")->required();
  order->add_option("--mode", mode, "hw or env")->capture_default_str();
  common(order);

  std::string omega;
  auto* stirling = app.add_subcommand("stirling", "generalized Stirling table of a homogeneous word");
  stirling->add_option("omega", omega, "word, e.g. X2D or \"a+^2 a\"")->required();
  common(stirling);

  std::string name, g, f;
  long m = 1;
  bool az = false;
  auto* rio = app.add_subcommand("riordan", "named or custom Riordan array");
  rio->add_option("name", name, "pascal, pascal_power, pascal_exp, stirling1, stirling2, identity, custom")->required();
  rio->add_option("--m", m, "power for pascal_power");
  rio->add_option("--g", g, "coefficients of g for custom arrays");
  rio->add_option("--f", f, "coefficients of f for custom arrays");
  rio->add_flag("--az", az, "also print A- and Z-sequences");
  common(rio);

  std::size_t flow_n = 3;
  std::string flow_r = "1";
  auto* flow = app.add_subcommand("flow", "flow of x^n d/dx + r x^(n-1)");
  flow->add_option("--n", flow_n, "degree n >= 2")->capture_default_str();
  flow->add_option("--r", flow_r, "scalar r")->capture_default_str();
  common(flow, false);

  long sn = 3;
  std::string srho = "1", smu = "1", times;
  auto* str = app.add_subcommand("striped", "striped element (n, rho, mu, lambda)");
  str->add_option("--n", sn, "stripe index n")->capture_default_str();
  str->add_option("--rows", o.n, "rows to print")->capture_default_str();
  str->add_option("--rho", srho)->capture_default_str();
  str->add_option("--mu", smu)->capture_default_str();
  str->add_option("--qmul", times, "second factor n,rho,mu for the quasigroup product");
  common(str, false);

  long d = 2;
  std::string variant;
  auto* seq = app.add_subcommand("seq", "counting sequences from (1 - d z)^(-1/d) and relatives");
  seq->add_option("--d", d)->capture_default_str();
  seq->add_option("--variant", variant, "4z or 2z2");
  common(seq);

  std::string suite;
  VerifyArgs v;
  auto* verify = app.add_subcommand("verify", "run a named check suite");
  verify->add_option("suite", suite, "equiv (alias prop45), grouplaw or stripe")->required();
  verify->add_option("--omega", v.omega)->capture_default_str();
  verify->add_option("--pmax", v.pmax)->capture_default_str();
  verify->add_option("--samples", v.samples, "lambda samples for equiv")->capture_default_str();
  verify->add_option("--r", v.r)->capture_default_str();
  verify->add_option("--n", v.n, "n for grouplaw and stripe")->capture_default_str();
  common(verify, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    std::ostringstream os, es;
    int code = app.exit(e, os, es);
    out << os.str();
    err << es.str();
    return code == 0 ? ok : usage;
  }

  try {
    if (o.format != "pretty" && o.format != "json" && o.format != "csv") throw parse_error("bad format", 0);
    if (*order) return cmd_order(word, mode, o, out);
    if (*stirling) return cmd_stirling(omega, o, out);
    if (*rio) return cmd_riordan(name, m, g, f, az, o, out);
    if (*flow) {
      if (o.format == "pretty") o.format = "json";
      return cmd_flow(flow_n, flow_r, o, out);
    }
    if (*str) return cmd_striped({sn, Rational::parse(srho), Rational::parse(smu), Rational::parse(o.lambda)}, times, o, out);
    if (*seq) return cmd_seq(d, variant, o, out);
    if (*verify) return cmd_verify(suite, v, o, out);
  } catch (const error& e) {
    err << "error: " << e.what() << "\n";
    return usage;
  }
  return usage;
}

}  // namespace hwr::cli
