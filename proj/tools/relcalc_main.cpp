#include <cctype>
#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "relcalc/axioms.hpp"
#include "relcalc/derived.hpp"
#include "relcalc/encoders.hpp"
#include "relcalc/json_io.hpp"
#include "relcalc/proofs.hpp"
#include "relcalc/semantics.hpp"
#include "relcalc/term.hpp"
#include "relcalc/theories.hpp"

namespace {

using nlohmann::json;
using namespace relcalc;

constexpr int kOk = 0;
constexpr int kUserError = 1;
constexpr int kCheckFailed = 2;
constexpr int kInconclusive = 3;

long default_budget() {
  if (const char* env = std::getenv("RELCALC_BUDGET")) {
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end && *end == '\0' && v > 0) return v;
  }
  return 1000000;
}

std::vector<int> parse_sizes(const std::string& s) {
  std::vector<int> out;
  size_t pos = 0;
  while (pos <= s.size()) {
    size_t comma = s.find(',', pos);
    std::string part = s.substr(pos, comma == std::string::npos ? std::string::npos
                                                                : comma - pos);
    if (part.empty()) throw TermError("bad --sizes value: " + s);
    for (char c : part)
      if (!std::isdigit(static_cast<unsigned char>(c)))
        throw TermError("bad --sizes value: " + s);
    out.push_back(std::stoi(part));
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  if (out.empty()) throw TermError("bad --sizes value: " + s);
  return out;
}

std::string dirname_of(const std::string& path) {
  size_t slash = path.find_last_of('/');
  if (slash == std::string::npos) return ".";
  if (slash == 0) return "/";
  return path.substr(0, slash);
}

Signature load_signature_file(const std::string& path) {
  return signature_from_json(read_text_file(path));
}

struct TypecheckArgs {
  std::string sig_path, term;
  bool json_out = false;
};

int cmd_typecheck(const TypecheckArgs& a) {
  Signature sig;
  if (!a.sig_path.empty()) sig = load_signature_file(a.sig_path);
  TermPtr t = parse_term(a.term, sig);
  Type ty = typecheck(t, sig);
  if (a.json_out)
    std::cout << json{{"in", ty.in}, {"out", ty.out}}.dump() << "\n";
  else
    std::cout << ty.in << " -> " << ty.out << "\n";
  return kOk;
}

struct EvalArgs {
  std::string sig_path, interp_path, term;
  bool json_out = false;
};

int cmd_eval(const EvalArgs& a) {
  Signature sig;
  bool have_sig = !a.sig_path.empty();
  if (have_sig) sig = load_signature_file(a.sig_path);
  FiniteInterpretation I = interpretation_from_json(read_text_file(a.interp_path),
                                                    have_sig ? &sig : nullptr);
  if (!have_sig) sig = I.signature();
  TermPtr t = parse_term(a.term, sig);
  Relation r = eval(t, I, sig);
  if (a.json_out)
    std::cout << json{{"in", r.in},
                      {"out", r.out},
                      {"pairs", json::parse(relation_to_json(r))}}
                     .dump()
              << "\n";
  else
    std::cout << relation_to_json(r) << "\n";
  return kOk;
}

struct CheckArgs {
  std::string theory_path, sig_path, proof_path;
  bool json_out = false;
};

int cmd_check(const CheckArgs& a) {
  std::string proof_text = read_text_file(a.proof_path);
  Theory thy;
  if (!a.theory_path.empty()) {
    thy = theory_from_json(read_text_file(a.theory_path));
  } else if (auto embedded = derivation_theory_path(proof_text)) {
    std::string path = *embedded;
    if (!path.empty() && path[0] != '/')
      path = dirname_of(a.proof_path) + "/" + path;
    thy = theory_from_json(read_text_file(path));
  } else if (!a.sig_path.empty()) {
    thy.signature = load_signature_file(a.sig_path);
  } else {
    throw TermError("no theory: pass --theory or --sig, or embed \"theory\"");
  }
  Derivation d = derivation_from_json(proof_text, thy.signature);
  CheckResult res = check_derivation(thy, d);
  if (a.json_out) {
    json out{{"ok", res.ok}};
    if (!res.ok) {
      out["stepIndex"] = static_cast<long>(res.step_index);
      out["reason"] = res.reason;
    }
    std::cout << out.dump() << "\n";
  } else if (res.ok) {
    std::cout << "Ok (" << d.steps.size() << " steps)\n";
  } else {
    std::cout << "failed at step " << res.step_index << ": " << res.reason << "\n";
  }
  return res.ok ? kOk : kCheckFailed;
}

struct SoundnessArgs {
  std::string sig_path, sizes = "0,1,2";
  long budget = 0;
  bool json_out = false;
};

// Atom pool for soundness sweeps; schemas with many term metavariables
// get a reduced pool to keep the instance count workable.
std::vector<TermPtr> atom_pool(const Signature& sig, bool small) {
  std::vector<TermPtr> pool;
  for (Color c : {Color::White, Color::Black}) {
    pool.push_back(id1(c));
    pool.push_back(copier(c));
    if (!small) {
      pool.push_back(id0(c));
      pool.push_back(sym(c));
      pool.push_back(discard(c));
      pool.push_back(cocopier(c));
      pool.push_back(codiscard(c));
    }
  }
  for (const auto& [name, ty] : sig.symbols) {
    pool.push_back(gen(name, Color::White));
    if (!small) pool.push_back(gen(name, Color::Black));
  }
  return pool;
}

size_t term_var_count(const AxiomSchema& s) {
  size_t n = 0;
  for (const auto& [name, kind] : s.metavars)
    if (kind == MetaKind::TermVar) ++n;
  return n;
}

int cmd_soundness(const SoundnessArgs& a) {
  Signature sig;
  if (!a.sig_path.empty())
    sig = load_signature_file(a.sig_path);
  else
    sig.symbols = {{"R", Type{1, 1}}, {"S", Type{2, 0}}};
  std::vector<int> sizes = parse_sizes(a.sizes);
  std::vector<int> nats = {0, 1, 2};
  std::vector<TermPtr> pool_full = atom_pool(sig, false);
  std::vector<TermPtr> pool_small = atom_pool(sig, true);

  long total_failures = 0;
  bool any_budget = false;
  json rows = json::array();
  if (!a.json_out)
    std::cout << "schema                         instances    checks  failures\n";
  for (const AxiomSchema& schema : axiom_schemas()) {
    const auto& pool = term_var_count(schema) >= 3 ? pool_small : pool_full;
    SoundnessReport rep =
        check_axiom_soundness(schema, sig, pool, nats, sizes, a.budget);
    total_failures += static_cast<long>(rep.failures.size());
    any_budget = any_budget || rep.budget_exceeded;
    if (a.json_out) {
      rows.push_back(json{{"schema", schema.id},
                          {"instances", rep.instances},
                          {"checks", rep.checks},
                          {"failures", static_cast<long>(rep.failures.size())},
                          {"budgetExceeded", rep.budget_exceeded}});
    } else {
      std::printf("%-30s %9ld %9ld %9zu%s\n", schema.id.c_str(), rep.instances,
                  rep.checks, rep.failures.size(),
                  rep.budget_exceeded ? "  (budget exceeded)" : "");
    }
  }
  if (a.json_out) {
    std::cout << json{{"schemas", rows},
                      {"failures", total_failures},
                      {"budgetExceeded", any_budget}}
                     .dump()
              << "\n";
  } else {
    std::cout << "total failures: " << total_failures
              << (any_budget ? " (budget exceeded)" : "") << "\n";
  }
  if (total_failures > 0) return kCheckFailed;
  if (any_budget) return kInconclusive;
  return kOk;
}

struct EncodeArgs {
  std::string from, sig_path, input;
  bool json_out = false;
};

Signature infer_cr_signature(const cr::ExprPtr& e, Signature& sig) {
  if (e->kind == cr::Kind::Symbol) sig.symbols[e->name] = Type{1, 1};
  if (e->left) infer_cr_signature(e->left, sig);
  if (e->right) infer_cr_signature(e->right, sig);
  return sig;
}

void infer_fol_tm(const fol::Tm& t, Signature& sig) {
  if (t.var > 0) return;
  sig.symbols[t.fn] = Type{static_cast<int>(t.args.size()), 1};
  for (const auto& a : t.args) infer_fol_tm(a, sig);
}

void infer_fol_signature(const fol::FormulaPtr& f, Signature& sig) {
  using fol::Kind;
  switch (f->kind) {
    case Kind::Eq:
      infer_fol_tm(f->t1, sig);
      infer_fol_tm(f->t2, sig);
      return;
    case Kind::Pred:
      sig.symbols[f->name] = Type{static_cast<int>(f->args.size()), 0};
      for (const auto& a : f->args) infer_fol_tm(a, sig);
      return;
    default:
      if (f->left) infer_fol_signature(f->left, sig);
      if (f->right) infer_fol_signature(f->right, sig);
      return;
  }
}

void infer_prop_signature(const prop::FormulaPtr& f, Signature& sig) {
  if (f->kind == prop::Kind::Atom || f->kind == prop::Kind::NegAtom)
    sig.symbols[f->name] = Type{0, 0};
  if (f->left) infer_prop_signature(f->left, sig);
  if (f->right) infer_prop_signature(f->right, sig);
}

int cmd_encode(const EncodeArgs& a) {
  Signature sig;
  bool have_sig = !a.sig_path.empty();
  if (have_sig) sig = load_signature_file(a.sig_path);
  if (a.from == "cr") {
    cr::ExprPtr e = cr::parse(a.input);
    if (!have_sig) infer_cr_signature(e, sig);
    TermPtr t = cr::encode(e, sig);
    if (a.json_out)
      std::cout << json{{"term", print_term(t)}}.dump() << "\n";
    else
      std::cout << print_term(t) << "\n";
    return kOk;
  }
  if (a.from == "fol") {
    auto [f, ctx] = fol::parse(a.input);
    if (!have_sig) infer_fol_signature(f, sig);
    fol::EncodeResult r = fol::encode(f, ctx, sig);
    if (a.json_out) {
      json obs = json::array();
      for (const auto& [lhs, rhs] : r.obligations)
        obs.push_back(json{{"lhs", print_term(lhs)}, {"rhs", print_term(rhs)}});
      std::cout << json{{"term", print_term(r.term)},
                        {"context", ctx},
                        {"obligations", obs}}
                       .dump()
                << "\n";
    } else {
      std::cout << print_term(r.term) << "\n";
      for (const auto& [lhs, rhs] : r.obligations)
        std::cout << "obligation: " << print_term(lhs) << "  <=  "
                  << print_term(rhs) << "\n";
    }
    return kOk;
  }
  if (a.from == "pfl") {
    if (!have_sig)
      throw TermError("--from pfl needs --sig to fix the atom arities");
    pfl::PredPtr p = pfl::parse(a.input);
    pfl::EncodeResult r = pfl::encode(p, sig);
    if (a.json_out)
      std::cout << json{{"term", print_term(r.term)}, {"arity", r.arity}}.dump()
                << "\n";
    else
      std::cout << print_term(r.term) << "\n";
    return kOk;
  }
  if (a.from == "prop") {
    prop::FormulaPtr f = prop::parse(a.input);
    if (!have_sig) infer_prop_signature(f, sig);
    TermPtr t = prop::encode(f, sig);
    if (a.json_out)
      std::cout << json{{"term", print_term(t)}}.dump() << "\n";
    else
      std::cout << print_term(t) << "\n";
    return kOk;
  }
  throw TermError("--from must be one of cr, fol, pfl, prop");
}

struct SearchArgs {
  std::string sig_path, lhs, rhs, sizes = "0,1,2";
  long budget = 0;
  bool json_out = false;
};

int cmd_search(const SearchArgs& a) {
  Signature sig;
  if (!a.sig_path.empty()) sig = load_signature_file(a.sig_path);
  TermPtr c = parse_term(a.lhs, sig);
  TermPtr d = parse_term(a.rhs, sig);
  Type tc = typecheck(c, sig);
  Type td = typecheck(d, sig);
  if (!(tc == td))
    throw TypeMismatch("search terms", std::to_string(tc.in) + " -> " +
                                           std::to_string(tc.out),
                       std::to_string(td.in) + " -> " + std::to_string(td.out));
  SearchResult res =
      countermodel_search(c, d, sig, parse_sizes(a.sizes), a.budget);
  if (a.json_out) {
    json out{{"checked", res.checked}, {"budgetExceeded", res.budget_exceeded}};
    out["countermodel"] =
        res.countermodel ? json::parse(interpretation_to_json(*res.countermodel))
                         : json();
    std::cout << out.dump() << "\n";
  } else if (res.countermodel) {
    std::cout << "countermodel: " << interpretation_to_json(*res.countermodel)
              << "\n";
  } else if (res.budget_exceeded) {
    std::cout << "inconclusive (budget exceeded after " << res.checked
              << " interpretations)\n";
  } else {
    std::cout << "no countermodel (" << res.checked << " interpretations)\n";
  }
  if (res.countermodel) return kCheckFailed;
  if (res.budget_exceeded) return kInconclusive;
  return kOk;
}

struct ClassifyArgs {
  std::string theory_path, sizes = "0,1,2";
  long budget = 0;
  bool json_out = false;
};

const char* class_name(ModelClass c) {
  switch (c) {
    case ModelClass::ModelNonEmpty:
      return "ModelNonEmpty";
    case ModelClass::ModelEmptyOnly:
      return "ModelEmptyOnly";
    case ModelClass::NoModelUpToBound:
      return "NoModelUpToBound";
  }
  return "?";
}

int cmd_classify(const ClassifyArgs& a) {
  Theory thy = theory_from_json(read_text_file(a.theory_path));
  ClassifyResult res = classify(thy, parse_sizes(a.sizes), a.budget);
  if (a.json_out) {
    json out{{"class", class_name(res.model_class)},
             {"checked", res.checked},
             {"budgetExceeded", res.budget_exceeded}};
    out["witness"] = res.witness
                         ? json::parse(interpretation_to_json(*res.witness))
                         : json();
    std::cout << out.dump() << "\n";
  } else {
    std::cout << class_name(res.model_class);
    if (res.witness) std::cout << " witness=" << interpretation_to_json(*res.witness);
    if (res.budget_exceeded) std::cout << " (budget exceeded)";
    std::cout << "\n";
  }
  if (res.model_class != ModelClass::ModelNonEmpty && res.budget_exceeded)
    return kInconclusive;
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"calculus of binary-relation diagrams"};
  app.require_subcommand(1);
  long budget_default = default_budget();

  TypecheckArgs tc;
  CLI::App* s_tc = app.add_subcommand("typecheck", "type a term");
  s_tc->add_option("--sig", tc.sig_path, "signature JSON file");
  s_tc->add_flag("--json", tc.json_out, "machine-readable output");
  s_tc->add_option("term", tc.term, "term text")->required();

  EvalArgs ev;
  CLI::App* s_ev = app.add_subcommand("eval", "evaluate a term in a finite model");
  s_ev->add_option("--sig", ev.sig_path, "signature JSON file");
  s_ev->add_option("--interp", ev.interp_path, "interpretation JSON file")
      ->required();
  s_ev->add_flag("--json", ev.json_out, "machine-readable output");
  s_ev->add_option("term", ev.term, "term text")->required();

  CheckArgs ck;
  CLI::App* s_ck = app.add_subcommand("check", "replay a proof script");
  s_ck->add_option("--theory", ck.theory_path, "theory JSON file");
  s_ck->add_option("--sig", ck.sig_path, "signature JSON file (axiom-free theory)");
  s_ck->add_option("--proof", ck.proof_path, "proof script JSON file")->required();
  s_ck->add_flag("--json", ck.json_out, "machine-readable output");

  SoundnessArgs so;
  so.budget = budget_default;
  CLI::App* s_so = app.add_subcommand("soundness", "sweep the axiom catalogue");
  s_so->add_option("--sig", so.sig_path, "signature JSON file");
  s_so->add_option("--sizes", so.sizes, "domain sizes, comma separated");
  s_so->add_option("--budget", so.budget, "semantic checks per schema");
  s_so->add_flag("--json", so.json_out, "machine-readable output");

  EncodeArgs en;
  CLI::App* s_en = app.add_subcommand("encode", "translate other syntaxes to terms");
  s_en->add_option("--from", en.from, "cr | fol | pfl | prop")->required();
  s_en->add_option("--sig", en.sig_path, "signature JSON file");
  s_en->add_flag("--json", en.json_out, "machine-readable output");
  s_en->add_option("input", en.input, "expression text")->required();

  SearchArgs se;
  se.budget = budget_default;
  CLI::App* s_se = app.add_subcommand("search", "look for an inclusion countermodel");
  s_se->add_option("--sig", se.sig_path, "signature JSON file");
  s_se->add_option("--sizes", se.sizes, "domain sizes, comma separated");
  s_se->add_option("--budget", se.budget, "interpretation budget");
  s_se->add_flag("--json", se.json_out, "machine-readable output");
  s_se->add_option("lhs", se.lhs, "candidate smaller term")->required();
  s_se->add_option("rhs", se.rhs, "candidate larger term")->required();

  ClassifyArgs cl;
  cl.budget = budget_default;
  CLI::App* s_cl = app.add_subcommand("classify", "search a theory for models");
  s_cl->add_option("--theory", cl.theory_path, "theory JSON file")->required();
  s_cl->add_option("--sizes", cl.sizes, "domain sizes, comma separated");
  s_cl->add_option("--budget", cl.budget, "interpretation budget");
  s_cl->add_flag("--json", cl.json_out, "machine-readable output");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*s_tc) return cmd_typecheck(tc);
    if (*s_ev) return cmd_eval(ev);
    if (*s_ck) return cmd_check(ck);
    if (*s_so) return cmd_soundness(so);
    if (*s_en) return cmd_encode(en);
    if (*s_se) return cmd_search(se);
    if (*s_cl) return cmd_classify(cl);
  } catch (const TermError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUserError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUserError;
  }
  return kUserError;
}
