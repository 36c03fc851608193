#pragma once

// Command dispatch for the `sofic` tool. Exit codes: 0 pass, 1 numeric
// verdict failed, 2 bad input.

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "sofic/codes.hpp"
#include "sofic/gibbs.hpp"
#include "sofic/measures.hpp"
#include "sofic/presentation.hpp"
#include "sofic/report.hpp"
#include "sofic/shift.hpp"
#include "sofic/spec_file.hpp"
#include "sofic/thermo.hpp"

namespace sofic::cli {

inline constexpr int kPass = 0;
inline constexpr int kFail = 1;
inline constexpr int kInputError = 2;

struct Options {
  std::string file;
  std::string potential;
  std::size_t depth = 0;
  std::size_t cmax = 20;
  std::optional<double> tol;
  std::string format = "human";
};

namespace detail {

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::invalid_input, "cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct Loaded {
  ShiftSpecFile spec;
  SoficPresentation y;
};

inline Loaded load(const std::string& path) {
  auto spec = parse_spec(read_file(path));
  auto y = to_presentation(spec);
  if (y.graph().is_empty()) throw Error(ErrorKind::empty_shift, "the shift is empty");
  return {std::move(spec), std::move(y)};
}

/// --potential zero | <file>; without the flag the shift file's own
/// [potential] section is used, else zero.
inline Potential potential_for(const Options& o, const ShiftSpecFile& spec, const SoficPresentation& y) {
  if (o.potential == "zero") return zero_potential(y);
  if (!o.potential.empty()) return to_potential(parse_potential_spec(read_file(o.potential)), y);
  if (spec.potential) return to_potential(*spec.potential, y);
  return zero_potential(y);
}

inline std::string fmt_word(const Alphabet& a, const Word& w) { return w.empty() ? "(empty)" : a.format(w); }

inline std::string num(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

inline void add_battery(Report& r, const BatteryReport& b, const Alphabet& a) {
  r.add("pairs_tested", b.pairs.size());
  r.add("pairs_skipped", b.skipped_pairs);
  for (std::size_t i = 0; i < b.lengths.size(); ++i) {
    r.sci("max_deviation[c=" + std::to_string(b.lengths[i]) + "]", b.max_deviation[i]);
  }
  std::size_t failing = 0;
  for (const auto& p : b.pairs) {
    if (p.pass) continue;
    if (++failing <= 5) r.add("failing_pair", fmt_word(a, p.u) + " <-> " + fmt_word(a, p.v));
  }
  r.add("violations", b.violation);
  r.add("trend_non_increasing", b.trend_ok);
}

inline Report analyze(const Options& o) {
  const auto [spec, y] = load(o.file);
  const auto& g = y.graph();
  Report r("analyze " + o.file);
  r.add("kind", spec.shift->kind);
  r.add("alphabet_size", y.alphabet().size());
  r.add("vertices", g.vertex_count());
  r.add("edges", g.edge_count());
  r.add("essential", g.is_essential());
  r.add("right_resolving", y.is_deterministic());
  const bool irreducible = is_irreducible(g);
  r.add("graph_irreducible", irreducible);
  if (irreducible) {
    const auto cs = cyclic_structure(g);
    r.add("period", cs.period);
    for (std::size_t c = 0; c < cs.period; ++c) {
      std::string members;
      for (std::size_t v = 0; v < g.vertex_count(); ++v) {
        if (cs.class_of[v] == c) members += (members.empty() ? "" : " ") + g.vertices()[v];
      }
      r.add("class[" + std::to_string(c) + "]", members);
    }
  } else {
    std::size_t i = 0;
    for (const auto& [comp, period] : component_periods(g)) {
      std::string members;
      for (auto v : comp) members += (members.empty() ? "" : " ") + g.vertices()[v];
      r.add("component[" + std::to_string(i) + "]", members + " (period " + std::to_string(period) + ")");
      ++i;
    }
  }
  r.add("language_irreducible", is_irreducible(y));
  r.set_verdict(true);
  return r;
}

inline Report fischer(const Options& o) {
  const auto [spec, y] = load(o.file);
  const auto fc = fischer_cover(y);
  const auto& g = fc.presentation.graph();
  Report r("fischer " + o.file);
  r.add("states", g.vertex_count());
  r.add("edges", g.edge_count());
  for (std::size_t e = 0; e < g.edge_count(); ++e) {
    const auto& edge = g.edge(e);
    r.add("edge[" + std::to_string(e) + "]", g.vertices()[edge.source] + " -" +
                                                  y.alphabet()[fc.presentation.label(e)] + "-> " +
                                                  g.vertices()[edge.target]);
  }
  const auto magic = find_magic_word(fc.cover);
  r.add("degree", magic.count);
  r.add("magic_word", fmt_word(y.alphabet(), magic.word));
  r.add("magic_coordinate", magic.coordinate);
  r.add("almost_invertible", magic.count == 1);
  r.set_verdict(magic.count == 1);
  return r;
}

inline Report pressure_cmd(const Options& o) {
  const auto [spec, y] = load(o.file);
  const auto f = potential_for(o, spec, y);
  Report r("pressure " + o.file);
  r.add("range", f.range);
  r.real("pressure", sofic_pressure(y, f));
  r.set_verdict(true);
  return r;
}

inline Report eqmeasure(const Options& o) {
  const auto [spec, y] = load(o.file);
  const auto f = potential_for(o, spec, y);
  const auto lift = lift_equilibrium(y, f);
  const std::size_t depth = o.depth == 0 ? 3 : o.depth;
  Report r("eqmeasure " + o.file);
  r.real("pressure", lift.pressure);
  r.real("entropy", lift.entropy_upstairs);
  r.real("integral", lift.integral);
  r.sci("variational_gap", lift.variational_gap);
  for (std::size_t n = 1; n <= depth; ++n) {
    for (const auto& w : words_of_length(y, n)) r.add("nu[" + y.alphabet().format(w) + "]", num(lift.nu.cylinder(w)));
  }
  r.set_verdict(lift.variational_gap < 1e-9);
  return r;
}

inline Report pushforward_cmd(const Options& o) {
  const auto [spec, y] = load(o.file);
  const auto code = to_code(spec, y);
  const auto [x, one] = recode_to_one_block(code);
  const auto f = potential_for(o, spec, y);
  const auto g = potential_on_higher_block(y.graph(), pullback_potential(y.code(), f), code.window());
  const auto eq = equilibrium(x, g);
  const auto nu = pushforward(eq.measure, one);
  const std::size_t depth = o.depth == 0 ? 3 : o.depth;
  Report r("pushforward " + o.file);
  const auto analysis = sofic::analyze(one);
  r.add("finite_to_one", analysis.finite_to_one);
  r.add("degree", analysis.degree ? std::to_string(*analysis.degree) : std::string("infinite"));
  r.real("pressure_upstairs", eq.pressure);
  r.real("entropy_upstairs", entropy(eq.measure));
  const auto image = image_presentation(x, one);
  double total_error = 0;
  for (std::size_t n = 1; n <= depth; ++n) {
    double total = 0;
    for (const auto& w : words_of_length(image, n)) {
      const double m = nu.cylinder(w);
      total += m;
      r.add("nu[" + image.alphabet().format(w) + "]", num(m));
    }
    total_error = std::max(total_error, std::abs(total - 1.0));
  }
  r.sci("mass_error", total_error);
  r.set_verdict(total_error < 1e-9);
  return r;
}

inline Report gibbs_check(const Options& o) {
  const auto [spec, y] = load(o.file);
  const auto f = potential_for(o, spec, y);
  const double tol = o.tol.value_or(1e-6);
  const auto lift = lift_equilibrium(y, f);
  const auto b = gibbs_battery(lift.nu, lift.cover.presentation, f, context_lengths(f.range - 1, o.cmax), tol);
  Report r("gibbs-check " + o.file);
  r.sci("tol", tol);
  add_battery(r, b, y.alphabet());
  r.set_verdict(b.pass);
  return r;
}

inline Report verify_lr(const Options& o) {
  const auto [spec, y] = load(o.file);
  const auto f = potential_for(o, spec, y);
  const double tol = o.tol.value_or(1e-6);
  const auto lr = verify_sofic_lanford_ruelle(y, f, tol, o.cmax);
  Report r("verify lanford-ruelle " + o.file);
  r.add("cover_states", lr.cover_states);
  r.add("cover_degree", lr.degree);
  r.real("pressure", lr.pressure);
  r.sci("variational_gap", lr.variational_gap);
  r.sci("tol", tol);
  add_battery(r, lr.battery, y.alphabet());
  r.add("gibbs", lr.pass);
  r.set_verdict(lr.pass);
  return r;
}

inline Report verify_dobrushin(const Options& o) {
  const auto [spec, y] = load(o.file);
  const auto f = potential_for(o, spec, y);
  const double tol = o.tol.value_or(0.01);
  const std::size_t n = o.depth == 0 ? 12 : o.depth;
  const auto d = verify_sofic_dobrushin(y, f, tol, n);
  Report r("verify dobrushin " + o.file);
  r.real("pressure", d.pressure);
  r.real("integral", d.integral);
  for (std::size_t i = 0; i < d.entropy.h.size(); ++i) r.real("h[" + std::to_string(i + 1) + "]", d.entropy.h[i]);
  r.add("h_non_increasing", d.entropy.non_increasing);
  r.sci("gap", d.gap);
  r.sci("tol", tol);
  r.add("equilibrium", d.pass);
  r.set_verdict(d.pass);
  return r;
}

inline Report verify_f21(const Options& o) {
  const auto [spec, y] = load(o.file);
  const auto code = to_code(spec, y);
  const auto [x, one] = recode_to_one_block(code);
  const auto image = image_presentation(x, one);
  Potential f;
  if (o.potential.empty() || o.potential == "zero") f = zero_potential(image);
  else f = to_potential(parse_potential_spec(read_file(o.potential)), image);
  const double tol = o.tol.value_or(1e-6);
  const auto res = verify_finite_to_one_preservation(code, f, tol, o.cmax);
  Report r("verify finite-to-one " + o.file);
  r.add("degree", res.degree);
  r.real("pressure", res.pressure);
  r.real("entropy_upstairs", res.entropy_upstairs);
  r.real("entropy_downstairs", res.entropy_downstairs);
  r.sci("entropy_gap", res.entropy_gap);
  r.sci("lift_error", res.lift_error);
  r.sci("tol", tol);
  add_battery(r, res.battery, image.alphabet());
  r.add("gibbs", res.pass);
  r.set_verdict(res.pass);
  return r;
}

inline Report verify_counterexample(const Options&) {
  const auto c = sunny_side_up_counterexample();
  Report r("verify counterexample (sunny-side-up shift)");
  std::string counts;
  for (auto n : c.word_counts) counts += (counts.empty() ? "" : " ") + std::to_string(n);
  r.add("word_counts", counts);
  r.add("irreducible", c.irreducible);
  r.real("pressure", c.pressure);
  r.real("entropy", c.entropy);
  r.add("equilibrium", c.equilibrium);
  r.add("gibbs", c.gibbs_consistent);
  r.add("gibbs_violation", c.gibbs.violation);
  r.add("summary", std::string("equilibrium: ") + (c.equilibrium ? "yes" : "no") +
                        "; Gibbs: " + (c.gibbs_consistent ? "yes" : "no"));
  r.set_verdict(c.pass);
  return r;
}

inline int exit_code_for(const Error& e) {
  return e.kind() == ErrorKind::no_convergence ? kFail : kInputError;
}

}  // namespace detail

/// Runs one command line (without the program name).
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Symbolic dynamics: sofic shifts, pressure, equilibrium and Gibbs measures", "sofic"};
  app.require_subcommand(1);
  Options o;
  std::string verify_kind;
  auto common = [&](CLI::App* sub, bool file, bool potential) {
    if (file) sub->add_option("file", o.file, "shift description file")->required();
    if (potential) sub->add_option("--potential", o.potential, "potential file, or 'zero'");
    sub->add_option("--depth", o.depth, "cylinder depth / entropy block length");
    sub->add_option("--cmax", o.cmax, "largest context length");
    sub->add_option("--tol", o.tol, "tolerance");
    sub->add_option("--format", o.format, "human or machine")->check(CLI::IsMember({"human", "machine"}));
  };
  auto* analyze = app.add_subcommand("analyze", "irreducibility, period, cyclic classes");
  common(analyze, true, false);
  auto* fischer = app.add_subcommand("fischer", "minimal right-resolving presentation and degree");
  common(fischer, true, false);
  auto* pressure = app.add_subcommand("pressure", "topological pressure");
  common(pressure, true, true);
  auto* eq = app.add_subcommand("eqmeasure", "equilibrium measure cylinder table");
  common(eq, true, true);
  auto* push = app.add_subcommand("pushforward", "image of the equilibrium measure under the [code]");
  common(push, true, true);
  auto* gibbs = app.add_subcommand("gibbs-check", "cylinder-ratio Gibbs battery");
  common(gibbs, true, true);
  auto* verify = app.add_subcommand("verify", "end-to-end verification pipelines");
  verify->add_option("pipeline", verify_kind, "lanford-ruelle | dobrushin | finite-to-one | counterexample")
      ->required()
      ->check(CLI::IsMember({"lanford-ruelle", "dobrushin", "finite-to-one", "counterexample"}));
  verify->add_option("file", o.file, "shift description file");
  verify->add_option("--potential", o.potential, "potential file, or 'zero'");
  verify->add_option("--depth", o.depth, "entropy block length");
  verify->add_option("--cmax", o.cmax, "largest context length");
  verify->add_option("--tol", o.tol, "tolerance");
  verify->add_option("--format", o.format, "human or machine")->check(CLI::IsMember({"human", "machine"}));

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kInputError;
  }
  try {
    std::optional<Report> report;
    if (*analyze) report = detail::analyze(o);
    else if (*fischer) report = detail::fischer(o);
    else if (*pressure) report = detail::pressure_cmd(o);
    else if (*eq) report = detail::eqmeasure(o);
    else if (*push) report = detail::pushforward_cmd(o);
    else if (*gibbs) report = detail::gibbs_check(o);
    else if (*verify) {
      if (verify_kind != "counterexample" && o.file.empty()) {
        err << "error: verify " << verify_kind << " needs a shift file\n";
        return kInputError;
      }
      if (verify_kind == "lanford-ruelle") report = detail::verify_lr(o);
      else if (verify_kind == "dobrushin") report = detail::verify_dobrushin(o);
      else if (verify_kind == "finite-to-one") report = detail::verify_f21(o);
      else report = detail::verify_counterexample(o);
    }
    report->print(out, o.format == "machine");
    return report->verdict() ? kPass : kFail;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return detail::exit_code_for(e);
  }
}

}  // namespace sofic::cli
