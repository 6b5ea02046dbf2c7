#ifndef AHS_CLI_HPP
#define AHS_CLI_HPP

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "ahs/config.hpp"
#include "ahs/verify.hpp"

namespace ahs::cli {

// Exit codes: 0 success / all Pass; 1 usage or parse error; 2 any Fail
// certificate; 3 a required certification is missing.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitFail = 2;
inline constexpr int kExitNotCertified = 3;

namespace detail {

inline void emit_form(const RunConfig& cfg, const std::string& label, const LogForm& f) {
  if (cfg.output == RunConfig::Output::Json) {
    nlohmann::json j = f.to_json();
    j["value"] = f.eval(cfg.precision_bits).to_string(24);
    if (!label.empty()) j["what"] = label;
    std::cout << j.dump() << "\n";
  } else {
    std::cout << (label.empty() ? "" : label + " = ") << f.to_string() << "\n";
  }
}

inline void emit_cert(const RunConfig& cfg, const BoundCertificate& c) {
  if (cfg.output == RunConfig::Output::Json) {
    std::cout << c.to_json().dump() << "\n";
  } else {
    std::cout << "[" << to_string(c.verdict) << "] " << c.rule << "\n";
  }
}

inline int exit_for(const std::vector<BoundCertificate>& certs) {
  for (const auto& c : certs)
    if (c.verdict == Verdict::Fail) return kExitFail;
  for (const auto& c : certs)
    if (c.verdict == Verdict::NotCertified) return kExitNotCertified;
  return kExitOk;
}

}  // namespace detail

inline int run(int argc, char** argv) {
  CLI::App app{"exact Arakelov-degree, height, and covering toolbox"};
  app.require_subcommand(1);

  RunConfig cfg = RunConfig::defaults_from_env();
  std::string config_file, epsilon_str, sign_str = "auto", format_str = "text";
  app.add_option("--config", config_file, "key=value configuration file");
  app.add_option("--precision", cfg.precision_bits, "working precision in bits");
  app.add_option("--epsilon", epsilon_str, "split exponent, rational in ]0,1/6[");
  app.add_option("--sign", sign_str, "sign convention: auto|paper|gram");
  app.add_option("--seed", cfg.seed, "seed for randomized sweeps");
  app.add_option("--format", format_str, "output format: text|json");
  app.add_option("--b0-d-max", cfg.b0_D_max, "search depth in D for B0");
  app.add_option("--b0-delta-max", cfg.b0_delta_max, "search depth in delta for B0");

  auto* c_cmd = app.add_subcommand("constants", "exact C/Q/S values and their envelopes");
  std::string c_kind = "c";
  int c_n = 1, c_D = 2;
  bool c_envelope = false;
  c_cmd->add_option("--kind", c_kind, "c|q|s|c-brute");
  c_cmd->add_option("--n", c_n)->required();
  c_cmd->add_option("--D", c_D)->required();
  c_cmd->add_flag("--envelope", c_envelope, "also print the two-sided envelope and verdict");

  auto* b0_cmd = app.add_subcommand("b0", "certified lower bound for B0(n)");
  int b0_n = 2;
  b0_cmd->add_option("--n", b0_n)->required();

  auto* h_cmd = app.add_subcommand("height", "heights of points and hypersurfaces");
  std::string h_point, h_poly;
  h_cmd->add_option("--point", h_point, "comma-separated integer coordinates");
  h_cmd->add_option("--poly", h_poly, "homogeneous polynomial");

  auto* n_cmd = app.add_subcommand("norms", "Bombieri norms and estimates");
  std::string n_op = "bombieri", n_f, n_g;
  int n_samples = 256, n_iters = 200;
  n_cmd->add_option("--op", n_op, "bombieri|sup-estimate|bbem-check");
  n_cmd->add_option("--f", n_f)->required();
  n_cmd->add_option("--g", n_g);
  n_cmd->add_option("--samples", n_samples);
  n_cmd->add_option("--iters", n_iters);

  auto* d_cmd = app.add_subcommand("degree", "Arakelov degrees of section lattices");
  std::string d_op = "e-sym", d_f;
  int d_n = 1, d_D = 2;
  d_cmd->add_option("--op", d_op, "gram|e-sym|sub|quotient");
  d_cmd->add_option("--n", d_n);
  d_cmd->add_option("--D", d_D)->required();
  d_cmd->add_option("--f", d_f, "section (for sub|quotient)");

  auto* bd_cmd = app.add_subcommand("bound", "lower-bound formulas for the quotient lattice");
  std::string bd_variant = "naive", bd_f, bd_logarg;
  int bd_n = 2, bd_delta = 1, bd_D = 2;
  bd_cmd->add_option("--variant", bd_variant,
                     "naive|etape1|prop-numerical|final-classic|final-arakelov|subspace|theorem-1-1");
  bd_cmd->add_option("--n", bd_n)->required();
  bd_cmd->add_option("--delta", bd_delta);
  bd_cmd->add_option("--D", bd_D);
  bd_cmd->add_option("--f", bd_f, "section; its deg_n feeds the bound");
  bd_cmd->add_option("--log-arg", bd_logarg, "rational x: the input becomes log(x)");

  auto* p_cmd = app.add_subcommand("points", "enumerate rational points of bounded height");
  std::string p_f, p_B = "1";
  p_cmd->add_option("--f", p_f)->required();
  p_cmd->add_option("--B", p_B, "height bound, rational");

  auto* t_cmd = app.add_subcommand("threshold", "covering-theorem height threshold");
  std::string t_f, t_logarg;
  int t_n = 2, t_delta = 2, t_K = 1;
  t_cmd->add_option("--n", t_n)->required();
  t_cmd->add_option("--delta", t_delta)->required();
  t_cmd->add_option("--f", t_f, "hypersurface; h(X) is its classic height");
  t_cmd->add_option("--log-arg", t_logarg, "rational x: h(X) = log(x)");
  t_cmd->add_option("--K", t_K, "field degree factor");

  auto* cv_cmd = app.add_subcommand("cover", "auxiliary hypersurface through S(X;B)");
  std::string cv_f, cv_B = "1";
  int cv_degree = -1;
  cv_cmd->add_option("--f", cv_f)->required();
  cv_cmd->add_option("--B", cv_B);
  cv_cmd->add_option("--degree", cv_degree, "defaults to deg(f)+1");

  auto* v_cmd = app.add_subcommand("varpi", "covering-degree bound");
  VarpiInputs vin;
  v_cmd->add_option("--n", vin.n)->required();
  v_cmd->add_option("--delta", vin.delta)->required();
  v_cmd->add_option("--B", vin.B)->required();
  v_cmd->add_option("--H", vin.H_K)->required();
  v_cmd->add_option("--b-prime", vin.b_prime);
  v_cmd->add_option("--C2", vin.C2);

  auto* vf_cmd = app.add_subcommand("verify", "run a verification suite");
  std::string vf_suite = "all", vf_table, vf_cex;
  int vf_nmax = 4, vf_dmax = 60;
  vf_cmd->add_option("--suite", vf_suite, "appendix|chain|heights|bbem|detmethod|all");
  vf_cmd->add_option("--n-max", vf_nmax);
  vf_cmd->add_option("--D-max", vf_dmax);
  vf_cmd->add_option("--emit-table", vf_table, "write the validity table to this file");
  vf_cmd->add_option("--emit-counterexamples", vf_cex, "write counterexample certificates");

  // Global flags are accepted after the subcommand name as well.
  for (auto* sub : app.get_subcommands(nullptr)) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (!config_file.empty()) {
      RunConfig file_cfg = RunConfig::from_file(config_file);
      file_cfg.precision_bits = cfg.precision_bits;
      file_cfg.seed = cfg.seed;
      cfg = file_cfg;
    }
    if (!epsilon_str.empty()) cfg.epsilon = parse_rat(epsilon_str);
    if (sign_str == "paper") cfg.sign = RunConfig::Sign::Paper;
    else if (sign_str == "gram") cfg.sign = RunConfig::Sign::Gram;
    else if (sign_str == "auto") cfg.sign = RunConfig::Sign::Auto;
    else throw std::invalid_argument("bad --sign value: " + sign_str);
    if (format_str == "json") cfg.output = RunConfig::Output::Json;
    else if (format_str == "text") cfg.output = RunConfig::Output::Text;
    else throw std::invalid_argument("bad --format value: " + format_str);
    cfg.validate();

    if (*c_cmd) {
      LogForm v;
      if (c_kind == "c") v = c_exact(c_n, c_D);
      else if (c_kind == "c-brute") v = c_bruteforce(c_n, c_D);
      else if (c_kind == "q") v = q_exact(c_n, c_D);
      else if (c_kind == "s") v = s_exact(c_n, c_D);
      else throw std::invalid_argument("bad --kind: " + c_kind);
      detail::emit_form(cfg, cfg.output == RunConfig::Output::Text ? "" : c_kind, v);
      if (c_envelope) {
        Appendix ap(cfg.asympt());
        Envelope env = c_kind == "q"   ? ap.q_envelope(c_n, c_D)
                       : c_kind == "s" ? ap.s_envelope(c_n, c_D)
                                       : ap.c_envelope(c_n, c_D);
        EnvelopeCheck chk = check_envelope(env, v, cfg.precision_bits);
        detail::emit_form(cfg, "lower", env.lower);
        detail::emit_form(cfg, "upper", env.upper);
        std::cout << "verdict: " << to_string(chk.verdict) << "\n";
        return chk.verdict == Verdict::Pass || chk.verdict == Verdict::OutOfValidatedRange
                   ? kExitOk
                   : kExitFail;
      }
      return kExitOk;
    }

    if (*b0_cmd) {
      B0Calculator calc(cfg.asympt());
      B0Result r = calc.lower_bound(b0_n, cfg.b0_search());
      if (cfg.output == RunConfig::Output::Json) std::cout << r.to_json().dump() << "\n";
      else
        std::cout << "B0(" << b0_n << ") >= " << r.value_lower.lo_string(20) << "  (tail "
                  << r.tail_bound.hi_string(8) << ", "
                  << (r.certified ? "certified" : "NOT CERTIFIED") << ")\n"
                  << r.notes << "\n";
      return r.certified ? kExitOk : kExitNotCertified;
    }

    if (*h_cmd) {
      if (h_point.empty() == h_poly.empty())
        throw std::invalid_argument("height: give exactly one of --point or --poly");
      if (!h_point.empty()) {
        std::vector<Int> raw;
        std::stringstream ss(h_point);
        std::string tok;
        while (std::getline(ss, tok, ',')) raw.emplace_back(tok);
        RatPoint p = normalize_point(raw);
        detail::emit_form(cfg, "weil", weil_height(p));
        detail::emit_form(cfg, "fubini-study", arakelov_height_point(p));
      } else {
        HomoPoly f = parse_poly(h_poly);
        detail::emit_form(cfg, "classic", classic_height_poly(f));
        detail::emit_form(cfg, "deg_n", deg_n_section(f));
      }
      return kExitOk;
    }

    if (*n_cmd) {
      HomoPoly f = parse_poly(n_f);
      if (n_op == "bombieri") {
        Rat v = n_g.empty() ? bombieri_norm_sq(f) : bombieri_inner(f, parse_poly(n_g));
        std::cout << (n_g.empty() ? "norm_sq = " : "inner = ") << to_string(v) << "\n";
        return kExitOk;
      }
      if (n_op == "sup-estimate") {
        auto est = sup_norm_estimate(f, n_samples, n_iters, cfg.seed);
        std::cout << "sup_lower_estimate = " << est.lower_estimate << "\n";
        return kExitOk;
      }
      if (n_op == "bbem-check") {
        if (n_g.empty()) throw std::invalid_argument("bbem-check needs --g");
        BoundCertificate c = product_inequality_check(f, parse_poly(n_g));
        detail::emit_cert(cfg, c);
        return detail::exit_for({c});
      }
      throw std::invalid_argument("bad --op: " + n_op);
    }

    if (*d_cmd) {
      if (d_op == "e-sym") {
        detail::emit_form(cfg, "deg(E_D)", deg_e_monomial(d_n, d_D).value);
        return kExitOk;
      }
      if (d_op == "gram") {
        std::cout << "det = " << to_string(gram_matrix(monomial_basis(d_n, d_D)).det())
                  << "\n";
        return kExitOk;
      }
      if (d_f.empty()) throw std::invalid_argument("degree: --f required for sub|quotient");
      HomoPoly f = parse_poly(d_f);
      LatticeDegree d = d_op == "sub" ? deg_sub_multiplied(f, d_D) : deg_quotient_fd(f, d_D);
      detail::emit_form(cfg, "deg", d.value);
      return kExitOk;
    }

    if (*bd_cmd) {
      LogForm input;
      if (!bd_f.empty()) input = deg_n_section(parse_poly(bd_f));
      else if (!bd_logarg.empty()) input = log_of_rat(parse_rat(bd_logarg));
      BoundVariant variant;
      if (bd_variant == "naive") variant = BoundVariant::Naive;
      else if (bd_variant == "etape1") variant = BoundVariant::Etape1;
      else if (bd_variant == "prop-numerical") variant = BoundVariant::PropNumerical;
      else if (bd_variant == "final-classic") variant = BoundVariant::FinalClassic;
      else if (bd_variant == "final-arakelov") variant = BoundVariant::FinalArakelov;
      else if (bd_variant == "subspace") variant = BoundVariant::Subspace;
      else if (bd_variant == "theorem-1-1") variant = BoundVariant::Theorem11;
      else throw std::invalid_argument("bad --variant: " + bd_variant);
      std::optional<B0Result> b0;
      if (variant != BoundVariant::Naive && variant != BoundVariant::Etape1) {
        B0Calculator calc(cfg.asympt());
        b0 = calc.lower_bound(bd_n, cfg.b0_search());
      }
      BoundValue v = paper_lower_bound_fd(bd_n, bd_delta, bd_D, input,
                                          AmbientModel::standard(bd_n), variant, b0,
                                          cfg.resolved_sign());
      if (v.uses_b0)
        std::cout << "bound in " << v.eval(cfg.precision_bits).to_string(20) << "\n";
      else
        detail::emit_form(cfg, "bound", v.exact_part);
      return kExitOk;
    }

    if (*p_cmd) {
      PointSet ps = enumerate_points(parse_poly(p_f), parse_rat(p_B));
      if (cfg.output == RunConfig::Output::Json) {
        std::cout << ps.to_json().dump() << "\n";
      } else {
        for (const auto& pt : ps.points) {
          std::string row;
          for (const auto& x : pt.coords) row += (row.empty() ? "" : ",") + x.get_str();
          std::cout << "[" << row << "]\n";
        }
        std::cout << ps.points.size() << " points\n";
      }
      return kExitOk;
    }

    if (*t_cmd) {
      LogForm h;
      if (!t_f.empty()) h = classic_height_poly(parse_poly(t_f));
      else if (!t_logarg.empty()) h = log_of_rat(parse_rat(t_logarg));
      B0Calculator calc(cfg.asympt());
      B0Result b0 = calc.lower_bound(t_n, cfg.b0_search());
      Interval thr = threshold_B(t_n, t_delta, h, b0, t_K, cfg.precision_bits);
      std::cout << "threshold in " << thr.to_string(16) << "\n";
      return kExitOk;
    }

    if (*cv_cmd) {
      HomoPoly f = parse_poly(cv_f);
      int degree = cv_degree > 0 ? cv_degree : f.degree + 1;
      Rat B = parse_rat(cv_B);
      CoverOutcome res = auxiliary_hypersurface(f, B, degree);
      if (std::holds_alternative<CoverFailure>(res)) {
        const auto& fail = std::get<CoverFailure>(res);
        std::cout << "failure: " << fail.reason << " (rank " << fail.rank << ", " << fail.rows
                  << " points, " << fail.cols << " monomials)\n";
        return kExitFail;
      }
      const HomoPoly& g = std::get<HomoPoly>(res);
      PointSet ps = enumerate_points(f, B);
      // Independent re-check of the covering postconditions.
      BoundCertificate c;
      c.rule = "cover-postconditions";
      bool vanish = true;
      for (const auto& p : ps.points) vanish = vanish && g.eval(p.coords) == 0;
      bool nondiv = !divides(f, g);
      c.verdict = vanish && nondiv ? Verdict::Pass : Verdict::Fail;
      c.lhs = g.to_string();
      c.rhs = ps.to_json();
      c.witnesses = {{"vanishes", vanish}, {"not_multiple", nondiv}};
      if (cfg.output == RunConfig::Output::Json) {
        std::cout << nlohmann::json({{"g", g.to_string()}, {"certificate", c.to_json()}}).dump()
                  << "\n";
      } else {
        std::cout << "g = " << g.to_string() << "\n";
        detail::emit_cert(cfg, c);
      }
      return detail::exit_for({c});
    }

    if (*v_cmd) {
      std::cout << "varpi <= " << varpi_bound(vin) << "\n";
      return kExitOk;
    }

    if (*vf_cmd) {
      SuiteResult total;
      total.name = "verify";
      auto want = [&](const char* s) { return vf_suite == s || vf_suite == "all"; };
      if (want("appendix"))
        total.merge(
            run_appendix_suite(cfg, vf_nmax, vf_dmax, std::max(256L, cfg.precision_bits)));
      if (want("chain")) total.merge(run_chain_suite(cfg, 8));
      if (want("heights")) total.merge(run_heights_suite(cfg, 2000, 120, 300));
      if (want("bbem")) total.merge(run_bbem_suite(cfg, 300));
      if (want("detmethod")) {
        B0Calculator calc(cfg.asympt());
        B0Result b0 = calc.lower_bound(2, cfg.b0_search());
        if (!b0.certified) return kExitNotCertified;
        total.merge(run_detmethod_suite(cfg, b0, 10));
      }
      if (!vf_table.empty()) {
        nlohmann::json rows = nlohmann::json::array();
        for (const auto& sw : total.sweeps) rows.push_back(sw.record.to_json());
        std::ofstream out(vf_table);
        out << rows.dump(2) << "\n";
      }
      if (!vf_cex.empty()) {
        nlohmann::json rows = nlohmann::json::array();
        for (const auto& sw : total.sweeps)
          for (const auto& ce : sw.counterexamples) rows.push_back(ce.to_json());
        std::ofstream out(vf_cex);
        out << rows.dump(2) << "\n";
      }
      if (cfg.output == RunConfig::Output::Json) {
        nlohmann::json certs = nlohmann::json::array();
        for (const auto& c : total.certs) certs.push_back(c.to_json());
        std::cout << certs.dump() << "\n";
      }
      std::cout << total.summary() << "\n";
      if (total.fail > 0) return kExitFail;
      if (total.undecided > 0) return kExitNotCertified;
      return kExitOk;
    }
  } catch (const NotCertified& e) {
    std::cerr << "not certified: " << e.what() << "\n";
    return kExitNotCertified;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace ahs::cli

#endif  // AHS_CLI_HPP
