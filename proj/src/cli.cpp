#include "luka/cli.hpp"

#include <CLI11.hpp>

#include <optional>

#include "luka/consequence.hpp"
#include "luka/diffval.hpp"
#include "luka/io.hpp"
#include "luka/tangent.hpp"

namespace luka::cli {

namespace {

struct Options {
  std::string formula, point, dir, theory, query, valuation, valuation2, set, over_set, a, lambda;
  std::size_t n = 0;
  unsigned max_m = 10;
  bool dump = false, semantic = false, stable = false;
};

const char* yes_no(bool b) { return b ? "yes" : "no"; }

std::optional<std::size_t> dim_flag(const Options& o) {
  if (o.n == 0) return std::nullopt;
  return o.n;
}

ValuationFile load_valuation(const std::string& path) { return parse_valuation(read_file(path), path); }

void require_default_vars(const ValuationFile& f, const std::string& path) {
  for (std::size_t i = 0; i < f.vars.size(); ++i) {
    if (f.vars[i] != i + 1) throw InputError(path + ": this command expects the variables 1..n");
  }
}

int run_eval(const Options& o, std::ostream& out) {
  out << to_string(eval_formula(parse(o.formula), parse_point(o.point))) << "\n";
  return 0;
}

int run_compile(const Options& o, std::ostream& out) {
  const Formula f = parse(o.formula);
  const std::size_t n = o.n ? o.n : std::max<std::size_t>(1, max_variable(f));
  const PLFunction F = compile(f, n);
  out << "dim: " << n << "\ncells: " << F.cells().size() << "\n";
  if (o.dump) out << dump(F);
  return 0;
}

int run_oneset(const Options& o, std::ostream& out) {
  const Formula f = parse(o.formula);
  const std::size_t n = o.n ? o.n : std::max<std::size_t>(1, max_variable(f));
  out << format_region(drop_subsumed(one_set(compile(f, n))));
  return 0;
}

void print_report(const ConsequenceReport& rep, std::ostream& out) {
  out << "verdict: " << (rep.holds() ? "holds" : "fails") << "\n";
  out << "min: " << (rep.minimum ? to_string(*rep.minimum) : "none (no models)") << "\n";
  if (rep.countermodel) out << "countermodel: " << format_point(*rep.countermodel) << "\n";
}

int run_entails(const Options& o, std::ostream& out) {
  const Formula psi = parse(o.query);
  if (!o.over_set.empty()) {
    if (o.semantic || o.stable || !o.theory.empty()) {
      throw InputError("--over-set takes no theory and no mode flag");
    }
    const RegionUnion x = parse_region(read_file(o.over_set), o.over_set);
    const ConsequenceReport rep = semantic_over_set(x, psi);
    out << "mode: over-set\ndim: " << x.dim << "\n";
    print_report(rep, out);
    return rep.holds() ? 0 : 1;
  }
  if (o.semantic == o.stable) throw InputError("entails needs exactly one of --semantic, --stable, --over-set");
  if (o.theory.empty()) throw InputError("entails needs --theory");
  const Theory theory = load_theory(o.theory);
  const std::size_t n = o.n ? o.n : common_dim(theory, psi);
  const ConsequenceReport rep =
      o.stable ? stable_consequence(theory, psi, dim_flag(o)) : semantic_consequence(theory, psi, dim_flag(o));
  out << "mode: " << (o.stable ? "stable" : "semantic") << "\ndim: " << n << "\n";
  print_report(rep, out);
  if (o.stable) {
    out << "note: finite theory: |=d coincides with |= by Hay-Wojcicki\n";
    if (rep.holds()) out << "flags-checked: " << rep.flags_checked << "\n";
  }
  return rep.holds() ? 0 : 1;
}

int run_diffval_check(const Options& o, std::ostream& out) {
  const ValuationFile f = load_valuation(o.valuation);
  const Validation v = validate(f.valuation);
  out << "valid: " << yes_no(v.valid) << "\n";
  if (v.valid) {
    out << "order: " << f.valuation.order() << "\nthreshold: " << to_string(v.threshold) << "\n";
  } else {
    out << "reason: " << v.reason << "\n";
  }
  return v.valid ? 0 : 1;
}

int run_diffval_satisfies(const Options& o, std::ostream& out) {
  if (o.formula.empty()) throw InputError("diffval satisfies needs --formula");
  const ValuationFile f = load_valuation(o.valuation);
  require_default_vars(f, o.valuation);
  const Formula phi = parse(o.formula);
  if (const auto v = validate(f.valuation); !v) throw InputError(o.valuation + ": invalid valuation: " + v.reason);
  const bool sat = satisfies(f.valuation, phi);
  out << "satisfies: " << yes_no(sat) << "\nvalue-at-base: " << to_string(eval_formula(phi, f.valuation.base))
      << "\n";
  return sat ? 0 : 1;
}

int run_diffval_dominates(const Options& o, std::ostream& out) {
  if (o.valuation2.empty()) throw InputError("diffval dominates needs --valuation2");
  const ValuationFile v = load_valuation(o.valuation);
  const ValuationFile u = load_valuation(o.valuation2);
  const Domination d = dominates(v.valuation, v.vars, u.valuation, u.vars);
  out << "dominates: " << yes_no(d.holds) << "\ngeometric: " << yes_no(d.geometric)
      << "\nprobes: " << (d.probes_agree() ? "agree" : "disagree") << "\n";
  if (!d.detail.empty()) out << "detail: " << d.detail << "\n";
  return d.holds ? 0 : 1;
}

ClosedSetDescription load_set(const std::string& path) { return parse_set(read_file(path), path); }

Point required_point(const std::string& text, const char* flag) {
  if (text.empty()) throw InputError(std::string("missing ") + flag);
  return parse_point(text);
}

int run_tangent_certify(const Options& o, std::ostream& out) {
  const ClosedSetDescription set = load_set(o.set);
  const Point u = required_point(o.dir, "--dir");
  Point x;
  if (!o.point.empty()) {
    x = parse_point(o.point);
  } else if (const auto* seq = std::get_if<PointSequence>(&set)) {
    x = seq->limit;
  } else {
    throw InputError("missing --point");
  }
  const TangentReport rep = certify_tangent(set, x, u, o.max_m);
  out << "verdict: " << to_string(rep.verdict) << "\nbound: " << rep.bound << "\n";
  if (const auto* seq = std::get_if<PointSequence>(&set)) {
    for (const auto& e : rep.evidence) {
      out << "m " << e.m << ": " << format_point(seq->points[e.index]) << "\n";
    }
  }
  if (rep.verdict == TangentVerdict::refuted && rep.refuted_at) out << "refuted-at: " << rep.refuted_at << "\n";
  if (!rep.caveat.empty()) out << "caveat: " << rep.caveat << "\n";
  return rep.verdict == TangentVerdict::certified ? 0 : 1;
}

int run_tangent_outgoing(const Options& o, std::ostream& out) {
  const ClosedSetDescription set = load_set(o.set);
  const Point x = required_point(o.point, "--point");
  const Point u = required_point(o.dir, "--dir");
  const Rat lambda = o.lambda.empty() ? default_lambda(set, x, u) : parse_rat(o.lambda);
  const bool outgoing = certify_outgoing(set, x, u, lambda);
  out << "outgoing: " << yes_no(outgoing) << "\nlambda: " << to_string(lambda)
      << "\nend: " << format_point(add(x, scale(u, lambda))) << "\n";
  return outgoing ? 0 : 1;
}

int run_tangent_sss(const Options& o, std::ostream& out) {
  const ClosedSetDescription set = load_set(o.set);
  std::vector<Candidate> candidates;
  if (!o.point.empty() || !o.dir.empty()) {
    candidates.push_back(Candidate{required_point(o.point, "--point"), required_point(o.dir, "--dir")});
  }
  std::optional<Rat> lambda;
  if (!o.lambda.empty()) lambda = parse_rat(o.lambda);
  const SssReport rep = sss_check(set, candidates, o.max_m, lambda);
  out << "verdict: " << to_string(rep.verdict) << "\nbound: " << rep.bound << "\n";
  if (rep.heuristic) out << "heuristic: criterion is a theorem only in dimension 2\n";
  const CandidateResult* witness = nullptr;
  for (const auto& r : rep.results) {
    out << "candidate: " << format_point(r.candidate.point) << " dir " << format_point(r.candidate.dir)
        << " tangent " << to_string(r.tangent.verdict) << " outgoing " << yes_no(r.outgoing);
    if (r.lambda > 0) out << " lambda " << to_string(r.lambda);
    out << "\n";
    if (!witness && r.tangent.verdict == TangentVerdict::certified && r.outgoing) witness = &r;
  }
  if (witness) {
    out << "witness-point: " << format_point(witness->candidate.point)
        << "\nwitness-dir: " << format_point(witness->candidate.dir) << "\n";
  }
  out << "justification: " << rep.justification << "\n";
  return rep.verdict == SssVerdict::not_strongly_semisimple_witnessed ? 1 : 0;
}

int run_witness(const Options& o, std::ostream& out) {
  const Theory theory = load_theory(o.theory);
  const Formula psi = parse(o.query);
  const ValuationFile f = load_valuation(o.valuation);
  require_default_vars(f, o.valuation);
  const WitnessReport rep = witness_verify(theory, psi, f.valuation);
  out << "certified: " << yes_no(rep.certified) << "\nmembers: " << theory.members.size() << "\n";
  for (const auto i : rep.failing_members) {
    out << "unsatisfied: " << i + 1 << " " << to_text(theory.members[i]) << "\n";
  }
  out << "query: " << (rep.query_satisfied ? "satisfied" : "refuted") << "\n";
  if (!rep.proviso.empty()) out << "proviso: " << rep.proviso << "\n";
  return rep.certified ? 0 : 1;
}

int run_interval(const Options& o, std::ostream& out) {
  out << to_text(formula_from_interval(parse_rat(o.a))) << "\n";
  return 0;
}

}  // namespace

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Decision procedures for Lukasiewicz logic", "luka"};
  app.require_subcommand(1);
  app.failure_message(CLI::FailureMessage::help);

  auto* eval = app.add_subcommand("eval", "Evaluate a formula at a point");
  eval->add_option("-f,--formula", o.formula, "Formula")->required();
  eval->add_option("-p,--point", o.point, "Point, e.g. 1/2,3/4")->required();

  auto* comp = app.add_subcommand("compile", "Compile a formula to its linear pieces");
  comp->add_option("-f,--formula", o.formula, "Formula")->required();
  comp->add_option("-n,--dim", o.n, "Dimension (default: largest variable index)");
  comp->add_flag("--dump", o.dump, "Print every cell");

  auto* ones = app.add_subcommand("oneset", "Print the set where a formula equals 1, as a region file");
  ones->add_option("-f,--formula", o.formula, "Formula")->required();
  ones->add_option("-n,--dim", o.n, "Dimension (default: largest variable index)");

  auto* ent = app.add_subcommand("entails", "Decide consequence");
  ent->add_flag("--semantic", o.semantic, "Semantic consequence |=");
  ent->add_flag("--stable", o.stable, "Stable consequence |=d");
  ent->add_option("--over-set", o.over_set, "Region file; decide whether the query is 1 on it");
  ent->add_option("--theory", o.theory, "Theory file, one formula per line");
  ent->add_option("--query", o.query, "Query formula")->required();
  ent->add_option("-n,--dim", o.n, "Dimension (default: largest variable index)");

  auto* dv = app.add_subcommand("diffval", "Differential valuations");
  dv->require_subcommand(1);
  auto* dv_check = dv->add_subcommand("check", "Validate a valuation");
  auto* dv_sat = dv->add_subcommand("satisfies", "Whether a valuation satisfies a formula");
  auto* dv_dom = dv->add_subcommand("dominates", "Whether --valuation dominates --valuation2");
  for (auto* s : {dv_check, dv_sat, dv_dom}) s->add_option("--valuation", o.valuation, "Valuation file")->required();
  dv_sat->add_option("--formula", o.formula, "Formula")->required();
  dv_dom->add_option("--valuation2", o.valuation2, "Valuation file over a subset of the variables")->required();

  auto* tg = app.add_subcommand("tangent", "Tangents of closed sets");
  tg->require_subcommand(1);
  auto* tg_cert = tg->add_subcommand("certify", "Certify a tangent direction");
  auto* tg_out = tg->add_subcommand("outgoing", "Certify that a segment misses the set");
  auto* tg_sss = tg->add_subcommand("sss", "Outgoing-tangent criterion for strong semisimplicity");
  for (auto* s : {tg_cert, tg_out, tg_sss}) {
    s->add_option("--set", o.set, "Region or sequence file")->required();
    s->add_option("--point", o.point, "Point of the set");
    s->add_option("--dir", o.dir, "Direction");
    s->add_option("--max-m", o.max_m, "Largest cone index")->check(CLI::PositiveNumber);
    s->add_option("--lambda", o.lambda, "Segment length (default: chosen from the set)");
  }

  auto* wit = app.add_subcommand("witness", "Verify a differential countermodel");
  wit->add_option("--theory", o.theory, "Theory file")->required();
  wit->add_option("--query", o.query, "Query formula")->required();
  wit->add_option("--valuation", o.valuation, "Valuation file")->required();

  auto* itv = app.add_subcommand("interval", "Formula whose one-set is [0,a]");
  itv->add_option("--a", o.a, "Endpoint a, 0 < a < 1")->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return 2;
  }

  try {
    if (eval->parsed()) return run_eval(o, out);
    if (comp->parsed()) return run_compile(o, out);
    if (ones->parsed()) return run_oneset(o, out);
    if (ent->parsed()) return run_entails(o, out);
    if (dv_check->parsed()) return run_diffval_check(o, out);
    if (dv_sat->parsed()) return run_diffval_satisfies(o, out);
    if (dv_dom->parsed()) return run_diffval_dominates(o, out);
    if (tg_cert->parsed()) return run_tangent_certify(o, out);
    if (tg_out->parsed()) return run_tangent_outgoing(o, out);
    if (tg_sss->parsed()) return run_tangent_sss(o, out);
    if (wit->parsed()) return run_witness(o, out);
    if (itv->parsed()) return run_interval(o, out);
  } catch (const SoundnessError& e) {
    err << "internal error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  err << app.help();
  return 2;
}

}  // namespace luka::cli
