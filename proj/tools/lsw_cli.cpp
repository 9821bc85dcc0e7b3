// Command-line front end: parses expressions, runs one operation, prints JSON or text.
// Exit codes: 0 verdict computed, 1 witness found / property violated, 2 bad input.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdint>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "lsw/freelsa.hpp"
#include "lsw/identity.hpp"
#include "lsw/lambda.hpp"
#include "lsw/opid.hpp"
#include "lsw/poly.hpp"
#include "lsw/skew.hpp"
#include "lsw/witt.hpp"

using json = nlohmann::ordered_json;
using namespace lsw;

namespace {

constexpr int kSchema = 1;

struct Report {
  json j;
  std::vector<std::pair<std::string, std::string>> text;

  Report(const std::string& command) {
    j["schema"] = kSchema;
    j["command"] = command;
  }

  void put(const std::string& key, json value) { j[key] = std::move(value); }

  void line(const std::string& key, const std::string& value) { text.emplace_back(key, value); }

  // both views at once for plain strings
  void both(const std::string& key, const std::string& value) {
    put(key, value);
    line(key, value);
  }
};

struct Common {
  std::string format = "json";
};

void emit(const Report& r, const Common& c) {
  if (c.format == "text") {
    for (const auto& [k, v] : r.text) std::cout << k << ": " << v << "\n";
  } else {
    std::cout << r.j.dump(2) << "\n";
  }
}

json strings(const std::vector<Derivation>& ds) {
  json a = json::array();
  for (const auto& d : ds) a.push_back(to_string(d));
  return a;
}

std::string joined(const std::vector<Derivation>& ds) {
  std::string out;
  for (const auto& d : ds) {
    if (!out.empty()) out += "; ";
    out += to_string(d);
  }
  return out;
}

std::vector<std::int64_t> parse_s(const std::string& text, int n) {
  VarSet vars = VarSet::lambda(n);
  std::vector<std::int64_t> s(static_cast<std::size_t>(vars.size()), 0);
  if (text.empty()) return s;
  std::vector<std::string> parts;
  std::stringstream ss(text);
  for (std::string p; std::getline(ss, p, ',');) parts.push_back(p);
  auto trim = [](std::string x) {
    auto b = x.find_first_not_of(' '), e = x.find_last_not_of(' ');
    return b == std::string::npos ? std::string() : x.substr(b, e - b + 1);
  };
  auto to_nat = [](const std::string& x) {
    if (x.empty() || x.find_first_not_of("0123456789") != std::string::npos || x.size() > 9)
      throw std::invalid_argument("s values must be nonnegative integers, got '" + x + "'");
    return static_cast<std::int64_t>(std::stol(x));
  };
  bool named = text.find('=') != std::string::npos;
  if (!named) {
    if (static_cast<int>(parts.size()) != vars.size())
      throw std::invalid_argument("expected " + std::to_string(vars.size()) + " values for s");
    for (std::size_t k = 0; k < parts.size(); ++k) s[k] = to_nat(trim(parts[k]));
    return s;
  }
  std::vector<bool> given(s.size(), false);
  for (const auto& p : parts) {
    auto eq = p.find('=');
    if (eq == std::string::npos) throw std::invalid_argument("expected name=value in '" + p + "'");
    auto idx = vars.lookup(trim(p.substr(0, eq)));
    if (!idx) throw std::invalid_argument("unknown lambda variable '" + trim(p.substr(0, eq)) + "'");
    s[static_cast<std::size_t>(*idx)] = to_nat(trim(p.substr(eq + 1)));
    given[static_cast<std::size_t>(*idx)] = true;
  }
  for (std::size_t k = 0; k < given.size(); ++k)
    if (!given[k]) throw std::invalid_argument("no value for " + vars.name(static_cast<int>(k)));
  return s;
}

json s_object(const std::vector<std::int64_t>& s, int n) {
  VarSet vars = VarSet::lambda(n);
  json o = json::object();
  for (std::size_t k = 0; k < s.size(); ++k) o[vars.name(static_cast<int>(k))] = s[k];
  return o;
}

std::string s_text(const std::vector<std::int64_t>& s, int n) {
  VarSet vars = VarSet::lambda(n);
  std::string out;
  for (std::size_t k = 0; k < s.size(); ++k) {
    if (!out.empty()) out += ", ";
    out += vars.name(static_cast<int>(k)) + "=" + std::to_string(s[k]);
  }
  return out.empty() ? "(none)" : out;
}

Monomial parse_lambda_monomial(const std::string& text, int n) {
  Polynomial p = parse_polynomial(text, VarSet::lambda(n));
  if (p.term_count() != 1 || p.terms().begin()->second != 1)
    throw std::invalid_argument("expected a single monic lambda monomial");
  return p.terms().begin()->first;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Left-symmetric Witt algebra toolkit"};
  app.require_subcommand(1);
  Common common;
  std::function<int()> action;

  auto add_format = [&](CLI::App* sub) {
    sub->add_option("--format", common.format, "json or text")->check(CLI::IsMember({"json", "text"}));
  };

  // shared parameters
  int n = 2;
  std::uint64_t seed = 1;
  int degree_bound = 2;
  std::size_t samples = 200;
  unsigned jobs = 1;
  std::string cls_text = "full";

  // --- mul ---
  std::string a_text, b_text, op = "product";
  bool laurent = false;
  auto* mul = app.add_subcommand("mul", "product a.b (or commutator) of two derivations");
  mul->add_option("--a", a_text, "first derivation")->required();
  mul->add_option("--b", b_text, "second derivation")->required();
  mul->add_option("--n", n, "number of variables")->check(CLI::Range(1, 64));
  mul->add_option("--op", op, "product or commutator")->check(CLI::IsMember({"product", "commutator"}));
  mul->add_flag("--laurent", laurent, "allow negative exponents");
  add_format(mul);
  mul->callback([&] {
    action = [&] {
      Derivation a = parse_derivation(a_text, n, laurent), b = parse_derivation(b_text, n, laurent);
      Derivation r = op == "product" ? ls_mul(a, b) : commutator(a, b);
      Report rep("mul");
      rep.put("n", n);
      rep.put("laurent", laurent);
      rep.both("op", op);
      rep.both("a", to_string(a));
      rep.both("b", to_string(b));
      rep.both("result", to_string(r));
      emit(rep, common);
      return 0;
    };
  });

  // --- jacobian ---
  std::string d_text;
  auto* jac = app.add_subcommand("jacobian", "Jacobian matrix (d_j f_i) of a derivation");
  jac->add_option("--d", d_text, "derivation")->required();
  jac->add_option("--n", n, "number of variables")->check(CLI::Range(1, 64));
  add_format(jac);
  jac->callback([&] {
    action = [&] {
      Derivation d = parse_derivation(d_text, n);
      PolyMatrix m = jacobian(d);
      Report rep("jacobian");
      rep.put("n", n);
      rep.both("derivation", to_string(d));
      json rows = json::array();
      for (int i = 0; i < n; ++i) {
        json row = json::array();
        for (int j = 0; j < n; ++j) row.push_back(to_string(m.at(i, j)));
        rows.push_back(row);
      }
      rep.put("jacobian", rows);
      rep.line("jacobian", to_string(m));
      emit(rep, common);
      return 0;
    };
  });

  // --- grade ---
  auto* grade = app.add_subcommand("grade", "split a derivation into homogeneous components");
  grade->add_option("--d", d_text, "derivation")->required();
  grade->add_option("--n", n, "number of variables")->check(CLI::Range(1, 64));
  add_format(grade);
  grade->callback([&] {
    action = [&] {
      Derivation d = parse_derivation(d_text, n);
      Report rep("grade");
      rep.put("n", n);
      rep.both("derivation", to_string(d));
      json comps = json::array();
      for (const auto& [deg, part] : degree_decompose(d)) {
        comps.push_back({{"degree", deg}, {"component", to_string(part)}});
        rep.line("L_" + std::to_string(deg), to_string(part));
      }
      rep.put("components", comps);
      emit(rep, common);
      return 0;
    };
  });

  // --- membership ---
  auto* memb = app.add_subcommand("membership", "strongest of full / triangular / strongly_triangular");
  memb->add_option("--d", d_text, "derivation")->required();
  memb->add_option("--n", n, "number of variables")->check(CLI::Range(1, 64));
  add_format(memb);
  memb->callback([&] {
    action = [&] {
      Derivation d = parse_derivation(d_text, n);
      Subalgebra c = membership(d);
      PolyMatrix j = jacobian(d);
      Report rep("membership");
      rep.put("n", n);
      rep.both("derivation", to_string(d));
      rep.both("class", to_string(c));
      rep.put("jacobian_upper_triangular", j.is_upper_triangular(false));
      rep.put("jacobian_strictly_upper_triangular", j.is_upper_triangular(true));
      rep.line("jacobian", to_string(j));
      emit(rep, common);
      return 0;
    };
  });

  // --- normalize ---
  std::string element_text, strategy = "smallest_leftmost";
  auto* norm = app.add_subcommand("normalize", "reduced-word normal form in the free left-symmetric algebra");
  norm->add_option("element", element_text, "combination of words, e.g. \"(y1*(y2*y3))\"")->required();
  norm->add_option("--strategy", strategy, "rewrite strategy")
      ->check(CLI::IsMember({"smallest_leftmost", "leftmost_innermost", "largest_rightmost_outermost"}));
  add_format(norm);
  norm->callback([&] {
    action = [&] {
      Combination g = parse_combination(element_text);
      RewriteStrategy st = strategy == "smallest_leftmost"    ? RewriteStrategy::smallest_leftmost
                           : strategy == "leftmost_innermost" ? RewriteStrategy::leftmost_innermost
                                                              : RewriteStrategy::largest_rightmost_outermost;
      RewriteStats stats;
      LSElement nf = normal_form(g, st, &stats);
      Report rep("normalize");
      rep.both("input", to_string(g));
      rep.both("strategy", strategy);
      rep.both("normal_form", to_string(nf));
      rep.put("terms", nf.size());
      rep.put("rewrite_steps", stats.steps);
      rep.line("rewrite_steps", std::to_string(stats.steps));
      if (!nf.is_zero()) rep.both("lowest_word", to_string(lowest_word(nf)));
      emit(rep, common);
      return 0;
    };
  });

  // --- lform ---
  std::string word_text;
  auto* lform = app.add_subcommand("lform", "w = w1(w2(...(wm yi))) for a reduced word");
  lform->add_option("word", word_text, "reduced word")->required();
  add_format(lform);
  lform->callback([&] {
    action = [&] {
      Word w = parse_word(word_text);
      LForm f = l_form(w);
      Report rep("lform");
      rep.both("word", to_string(w));
      json fs = json::array();
      std::string ft;
      for (const auto& x : f.factors) {
        fs.push_back(to_string(x));
        ft += (ft.empty() ? "" : ", ") + to_string(x);
      }
      rep.put("factors", fs);
      rep.line("factors", ft.empty() ? "(none)" : ft);
      rep.put("tail", f.tail);
      rep.line("tail", "y" + std::to_string(f.tail));
      emit(rep, common);
      return 0;
    };
  });

  // --- enumerate-reduced ---
  int degree = 3;
  bool count_only = false;
  auto* enumr = app.add_subcommand("enumerate-reduced", "multilinear reduced words on y1..yd");
  enumr->add_option("--d", degree, "degree")->check(CLI::Range(1, 9));
  enumr->add_flag("--count-only", count_only, "print only the count");
  add_format(enumr);
  enumr->callback([&] {
    action = [&] {
      auto ws = enumerate_multilinear_reduced(degree);
      Report rep("enumerate-reduced");
      rep.put("d", degree);
      rep.put("count", ws.size());
      rep.line("count", std::to_string(ws.size()));
      if (!count_only) {
        json arr = json::array();
        for (const auto& w : ws) {
          arr.push_back({{"word", to_string(w)}, {"special", is_special(w)}});
          rep.line("word", to_string(w) + (is_special(w) ? " special" : ""));
        }
        rep.put("words", arr);
      }
      emit(rep, common);
      return 0;
    };
  });

  // --- op-check ---
  std::string f_text, mode_text = "decide";
  std::size_t exhaustive_limit = 100000;
  auto* opc = app.add_subcommand("op-check", "right operator identity f(R_y1..R_ym) y = 0");
  opc->add_option("--f", f_text, "associative polynomial in z1..zm")->required();
  opc->add_option("--n", n, "number of variables")->check(CLI::Range(1, 8));
  opc->add_option("--class", cls_text, "full, triangular or strongly_triangular");
  opc->add_option("--mode", mode_text, "decide or sample")->check(CLI::IsMember({"decide", "sample"}));
  opc->add_option("--degree-bound", degree_bound, "basis degree bound (sample mode)")->check(CLI::Range(-1, 12));
  opc->add_option("--exhaustive-limit", exhaustive_limit, "basis tuples swept before sampling");
  opc->add_option("--samples", samples, "random tuples (sample mode)");
  opc->add_option("--seed", seed, "random seed");
  opc->add_option("--jobs", jobs, "worker threads")->check(CLI::Range(1, 256));
  add_format(opc);
  opc->callback([&] {
    action = [&] {
      AssocPoly f = parse_assoc(f_text);
      Subalgebra cls = parse_subalgebra(cls_text);
      CheckMode mode = parse_check_mode(mode_text);
      OperatorCheckParams p;
      p.degree_bound = degree_bound;
      p.exhaustive_limit = exhaustive_limit;
      p.samples = samples;
      p.seed = seed;
      p.jobs = jobs;
      OperatorVerdict v = right_operator_check(f, n, cls, mode, p);
      Report rep("op-check");
      rep.both("f", to_string(f));
      rep.put("n", n);
      rep.line("n", std::to_string(n));
      rep.both("class", to_string(cls));
      rep.both("mode", to_string(mode));
      rep.both("verdict", v.identity ? "identity" : "witness");
      json params = {{"seed", seed}};
      if (mode == CheckMode::sample) {
        params["degree_bound"] = degree_bound;
        params["exhaustive_limit"] = exhaustive_limit;
        params["samples"] = samples;
        params["exhaustive_checked"] = v.exhaustive_checked;
        params["exhaustive_complete"] = v.exhaustive_complete;
        params["samples_checked"] = v.samples_checked;
        rep.line("exhaustive_checked", std::to_string(v.exhaustive_checked));
        rep.line("samples_checked", std::to_string(v.samples_checked));
      }
      rep.put("params", params);
      if (!v.identity) {
        rep.put("witness", {{"args", strings(v.witness_args)},
                            {"input", to_string(*v.witness_input)},
                            {"value", to_string(*v.value)}});
        rep.line("witness_args", joined(v.witness_args));
        rep.line("witness_input", to_string(*v.witness_input));
        rep.line("value", to_string(*v.value));
      }
      emit(rep, common);
      return v.identity ? 0 : 1;
    };
  });

  // --- matrix-check ---
  auto* mc = app.add_subcommand("matrix-check", "is f an identity of M_n, T_n or ST_n (generic matrices)");
  mc->add_option("--f", f_text, "associative polynomial in z1..zm")->required();
  mc->add_option("--n", n, "matrix size")->check(CLI::Range(1, 8));
  mc->add_option("--class", cls_text, "full, triangular or strongly_triangular");
  add_format(mc);
  mc->callback([&] {
    action = [&] {
      AssocPoly f = parse_assoc(f_text);
      Subalgebra cls = parse_subalgebra(cls_text);
      MatrixDecision d = matrix_identity_decide(f, n, cls);
      Report rep("matrix-check");
      rep.both("f", to_string(f));
      rep.put("n", n);
      rep.line("n", std::to_string(n));
      rep.both("class", to_string(cls));
      rep.both("verdict", d.identity ? "identity" : "witness");
      if (!d.identity) {
        json ws = json::array();
        std::string wt;
        for (const auto& m : d.witness) {
          ws.push_back(to_string(m));
          wt += (wt.empty() ? "" : "; ") + to_string(m);
        }
        rep.put("witness", {{"matrices", ws}, {"value", to_string(*d.value)}});
        rep.line("witness", wt);
        rep.line("value", to_string(*d.value));
      }
      emit(rep, common);
      return d.identity ? 0 : 1;
    };
  });

  // --- chi ---
  auto* chic = app.add_subcommand("chi", "image of a word or element under y_i -> z_i");
  chic->add_option("element", element_text, "word or combination")->required();
  chic->add_option("--n", n, "number of generators")->check(CLI::Range(1, 12));
  add_format(chic);
  chic->callback([&] {
    action = [&] {
      Combination g = parse_combination(element_text);
      LambdaDerivation img = chi_element(g, n);
      Report rep("chi");
      rep.both("input", to_string(g));
      rep.put("n", n);
      rep.both("image", to_string(img));
      if (g.size() == 1 && g.begin()->second == 1) {
        ChiData cd = chi(g.begin()->first, n);
        json exps = json::array();
        for (const auto& e : cd.exps) exps.push_back(to_string(e));
        rep.put("f_w", to_string(cd.f_w));
        rep.put("exponents", exps);
        rep.put("r", cd.r);
        rep.line("f_w", to_string(cd.f_w));
        rep.line("r", std::to_string(cd.r));
      }
      emit(rep, common);
      return 0;
    };
  });

  // --- leading ---
  auto* lead = app.add_subcommand("leading", "leading lambda-monomial of f^w for w multilinear, special, reduced");
  lead->add_option("word", word_text, "word")->required();
  lead->add_option("--n", n, "number of generators (default: largest letter)");
  add_format(lead);
  lead->callback([&] {
    action = [&] {
      Word w = parse_word(word_text);
      int nn = lead->count("--n") ? n : w.max_letter();
      Monomial m = leading_f(w, nn);
      Monomial direct = leading_monomial(chi(w, nn).f_w);
      VarSet vars = VarSet::lambda(nn);
      std::string ms = m.is_one() ? "1" : format_monomial(m, vars);
      Report rep("leading");
      rep.both("word", to_string(w));
      rep.put("n", nn);
      rep.both("leading", ms);
      rep.put("agrees_with_direct", m == direct);
      rep.line("agrees_with_direct", m == direct ? "true" : "false");
      emit(rep, common);
      return m == direct ? 0 : 1;
    };
  });

  // --- reconstruct ---
  std::string mono_text;
  auto* recon = app.add_subcommand("reconstruct", "the word of W with a given leading lambda-monomial");
  recon->add_option("monomial", mono_text, "e.g. \"l12 l13\"")->required();
  recon->add_option("--n", n, "number of generators")->check(CLI::Range(1, 12));
  add_format(recon);
  recon->callback([&] {
    action = [&] {
      Monomial m = parse_lambda_monomial(mono_text, n);
      Word w = reconstruct_word(m, n);
      Report rep("reconstruct");
      rep.both("monomial", m.is_one() ? "1" : format_monomial(m, VarSet::lambda(n)));
      rep.put("n", n);
      rep.both("word", to_string(w));
      emit(rep, common);
      return 0;
    };
  });

  // --- specialize ---
  std::string s_text_in;
  auto* spec = app.add_subcommand("specialize", "s-hat: lambda -> s applied to chi(element) or to the generators");
  spec->add_option("--element", element_text, "element of the free algebra (default: generators z1..zn)");
  spec->add_option("--s", s_text_in, "\"l12=1,l13=0,l23=2\" or values in tuple order")->required();
  spec->add_option("--n", n, "number of generators")->check(CLI::Range(1, 8));
  add_format(spec);
  spec->callback([&] {
    action = [&] {
      auto s = parse_s(s_text_in, n);
      Report rep("specialize");
      rep.put("n", n);
      rep.put("s", s_object(s, n));
      rep.line("s", s_text(s, n));
      if (element_text.empty()) {
        auto zs = specialize_generators(n, s);
        rep.put("generators", strings(zs));
        rep.line("generators", joined(zs));
      } else {
        Combination g = parse_combination(element_text);
        Derivation v = with_laurent(specialize(chi_element(g, n), s), false);
        rep.both("input", to_string(g));
        rep.both("value", to_string(v));
      }
      emit(rep, common);
      return 0;
    };
  });

  // --- certify ---
  std::optional<int> target;
  auto* cert = app.add_subcommand("certify", "non-identity certificate over ST(L_n)");
  cert->add_option("--element", element_text, "multilinear element in y1..yd")->required();
  cert->add_option("--n", target, "target n (default d)")->check(CLI::Range(1, 12));
  add_format(cert);
  cert->callback([&] {
    action = [&] {
      Combination g = parse_combination(element_text);
      Certificate c = certify_nonidentity(g, target);
      Report rep("certify");
      rep.both("input_element", to_string(g));
      if (c.verdict == CertificateVerdict::trivial_identity) {
        rep.both("verdict", "trivial_identity");
        emit(rep, common);
        return 1;
      }
      rep.both("verdict", "certified");
      rep.put("degree", c.degree);
      rep.put("n", c.n);
      rep.line("n", std::to_string(c.n));
      rep.put("sigma", c.sigma);
      std::string sg;
      for (std::size_t i = 0; i < c.sigma.size(); ++i)
        sg += (i ? ", " : "") + std::to_string(i + 1) + "->" + std::to_string(c.sigma[i]);
      rep.line("sigma", sg);
      rep.both("f_g", to_string(c.f_g));
      rep.put("s", s_object(c.s, c.degree));
      rep.line("s", s_text(c.s, c.degree));
      rep.put("substitutions", strings(c.substitutions));
      rep.line("substitutions", joined(c.substitutions));
      rep.both("value", to_string(*c.value));
      bool ok = validate(c);
      rep.put("validated", ok);
      rep.line("validated", ok ? "true" : "false");
      emit(rep, common);
      return ok ? 0 : 1;
    };
  });

  // --- skew-check ---
  std::int64_t big_n = 0, t = 0;
  bool exhaustive = false;
  std::size_t skew_samples = 50;
  auto* skew = app.add_subcommand("skew-check", "skew-symmetrized evaluation of a word on basis elements");
  skew->add_option("--n", n, "number of variables")->check(CLI::Range(1, 8));
  skew->add_option("--N", big_n, "size of the skew block (default: least N with e(N) >= t)");
  skew->add_option("--t", t, "number of extra arguments")->check(CLI::Range(0, 16));
  skew->add_option("--word", word_text, "word multilinear in y1..yN")->required();
  skew->add_option("--samples", skew_samples, "random samples");
  skew->add_option("--seed", seed, "random seed");
  skew->add_option("--degree-bound", degree_bound, "basis degree bound")->check(CLI::Range(-1, 12));
  skew->add_option("--jobs", jobs, "worker threads")->check(CLI::Range(1, 256));
  skew->add_flag("--exhaustive", exhaustive, "all tuples instead of samples");
  add_format(skew);
  skew->callback([&] {
    action = [&] {
      Word w = parse_word(word_text);
      std::int64_t N = big_n > 0 ? big_n : minimal_skew_N(n, t);
      SkewCheckParams p;
      p.degree_bound = degree_bound;
      p.samples = skew_samples;
      p.seed = seed;
      p.jobs = jobs;
      SkewReport r = exhaustive ? skew_exhaustive(w, n, N, t, degree_bound) : skew_check(w, n, N, t, p);
      Report rep("skew-check");
      rep.both("word", to_string(w));
      rep.put("n", n);
      rep.put("N", N);
      rep.put("t", t);
      rep.put("e_N", r.e_N);
      rep.put("prop2_applies", r.prop2);
      rep.put("params", {{"degree_bound", degree_bound},
                         {"samples", exhaustive ? r.samples.size() : skew_samples},
                         {"seed", seed},
                         {"exhaustive", exhaustive}});
      rep.line("N", std::to_string(N));
      rep.line("e_N", std::to_string(r.e_N));
      rep.line("prop2_applies", r.prop2 ? "true" : "false");
      json arr = json::array();
      std::size_t nonzero = 0;
      for (const auto& s : r.samples) {
        json o = {{"positions", s.positions}, {"degree_sum", s.degree_sum}, {"zero", s.zero}};
        if (!s.extra_positions.empty()) o["extra_positions"] = s.extra_positions;
        if (s.value) o["value"] = to_string(*s.value);
        if (!s.zero) ++nonzero;
        arr.push_back(o);
      }
      rep.put("samples", arr);
      rep.put("all_zero", r.all_zero());
      rep.line("samples", std::to_string(r.samples.size()));
      rep.line("nonzero", std::to_string(nonzero));
      rep.line("all_zero", r.all_zero() ? "true" : "false");
      emit(rep, common);
      return r.all_zero() ? 0 : 1;
    };
  });

  // --- min-N ---
  auto* minn = app.add_subcommand("min-N", "least N with e(N) >= t");
  minn->add_option("--n", n, "number of variables")->check(CLI::Range(1, 64));
  minn->add_option("--t", t, "threshold")->check(CLI::Range(static_cast<std::int64_t>(0), static_cast<std::int64_t>(1) << 40));
  add_format(minn);
  minn->callback([&] {
    action = [&] {
      std::int64_t N = minimal_skew_N(n, t);
      Report rep("min-N");
      rep.put("n", n);
      rep.put("t", t);
      rep.put("N", N);
      rep.put("e_N", e_of_N(n, N));
      rep.line("N", std::to_string(N));
      rep.line("e_N", std::to_string(e_of_N(n, N)));
      emit(rep, common);
      return 0;
    };
  });

  // --- id-check ---
  std::size_t id_samples = 0;
  auto* idc = app.add_subcommand("id-check", "search a counterexample to g = 0 in L_n or a subalgebra");
  idc->add_option("--element", element_text, "element of the free algebra")->required();
  idc->add_option("--n", n, "number of variables")->check(CLI::Range(1, 8));
  idc->add_option("--class", cls_text, "full, triangular or strongly_triangular");
  idc->add_option("--degree-bound", degree_bound, "basis degree bound")->check(CLI::Range(-1, 12));
  idc->add_option("--exhaustive-limit", exhaustive_limit, "basis tuples swept before sampling");
  idc->add_option("--samples", id_samples, "random tuples after the sweep");
  idc->add_option("--seed", seed, "random seed");
  add_format(idc);
  idc->callback([&] {
    action = [&] {
      Combination g = parse_combination(element_text);
      Subalgebra cls = parse_subalgebra(cls_text);
      IdentityCheckParams p;
      p.degree_bound = degree_bound;
      p.exhaustive_limit = exhaustive_limit;
      p.samples = id_samples;
      p.seed = seed;
      IdentityVerdict v = check_identity(g, n, cls, p);
      Report rep("id-check");
      rep.both("element", to_string(g));
      rep.put("n", n);
      rep.line("n", std::to_string(n));
      rep.both("class", to_string(cls));
      rep.both("verdict", v.holds ? "no_counterexample" : "witness");
      rep.put("params", {{"degree_bound", degree_bound},
                         {"exhaustive_limit", exhaustive_limit},
                         {"samples", id_samples},
                         {"seed", seed},
                         {"exhaustive_checked", v.exhaustive_checked},
                         {"exhaustive_complete", v.exhaustive_complete},
                         {"samples_checked", v.samples_checked}});
      rep.line("exhaustive_checked", std::to_string(v.exhaustive_checked));
      if (!v.holds) {
        rep.put("witness", {{"args", strings(v.witness)}, {"value", to_string(*v.value)}});
        rep.line("witness", joined(v.witness));
        rep.line("value", to_string(*v.value));
      }
      emit(rep, common);
      return v.holds ? 0 : 1;
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    return action();
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::out_of_range& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 3;
  }
}
