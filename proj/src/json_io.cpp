#include "relcalc/json_io.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

namespace relcalc {

namespace {

using nlohmann::json;

json parse_json(const std::string& text) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) throw ParseError(0, "invalid JSON");
  return j;
}

[[noreturn]] void bad(const std::string& what) { throw ParseError(0, what); }

int get_int(const json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_number_integer())
    bad(std::string("expected integer field '") + key + "'");
  return j[key].get<int>();
}

Tuple tuple_from(const json& j) {
  if (!j.is_array()) bad("tuple must be an array");
  Tuple t;
  for (const auto& x : j) {
    if (!x.is_number_integer()) bad("tuple entries must be integers");
    t.push_back(x.get<int>());
  }
  return t;
}

json tuple_to(const Tuple& t) {
  json a = json::array();
  for (int x : t) a.push_back(x);
  return a;
}

json pairs_to(const PairSet& pairs) {
  json a = json::array();
  for (const auto& [x, y] : pairs) a.push_back(json::array({tuple_to(x), tuple_to(y)}));
  return a;
}

Path path_from(const json& j) {
  if (!j.is_array()) bad("'path' must be an array of SL/SR/TL/TR");
  Path p;
  for (const auto& s : j) {
    if (!s.is_string()) bad("path segments must be strings");
    std::string seg = s.get<std::string>();
    if (seg == "SL")
      p.push_back(PathSeg::SeqLeft);
    else if (seg == "SR")
      p.push_back(PathSeg::SeqRight);
    else if (seg == "TL")
      p.push_back(PathSeg::TensorLeft);
    else if (seg == "TR")
      p.push_back(PathSeg::TensorRight);
    else
      bad("unknown path segment '" + seg + "'");
  }
  return p;
}

json path_to(const Path& p) {
  json a = json::array();
  for (PathSeg s : p) {
    switch (s) {
      case PathSeg::SeqLeft:
        a.push_back("SL");
        break;
      case PathSeg::SeqRight:
        a.push_back("SR");
        break;
      case PathSeg::TensorLeft:
        a.push_back("TL");
        break;
      case PathSeg::TensorRight:
        a.push_back("TR");
        break;
    }
  }
  return a;
}

}  // namespace

Signature signature_from_json(const std::string& text) {
  json j = parse_json(text);
  if (!j.is_object() || !j.contains("symbols") || !j["symbols"].is_object())
    bad("signature needs an object field 'symbols'");
  Signature sig;
  for (const auto& [name, entry] : j["symbols"].items()) {
    if (!entry.is_object()) bad("symbol entry for '" + name + "' must be an object");
    int ar = get_int(entry, "ar");
    int coar = get_int(entry, "coar");
    if (ar < 0 || coar < 0) bad("negative wire count for symbol '" + name + "'");
    sig.symbols[name] = Type{ar, coar};
  }
  return sig;
}

std::string signature_to_json(const Signature& sig) {
  json syms = json::object();
  for (const auto& [name, ty] : sig.symbols)
    syms[name] = json{{"ar", ty.in}, {"coar", ty.out}};
  return json{{"symbols", syms}}.dump();
}

FiniteInterpretation interpretation_from_json(const std::string& text,
                                              const Signature* sig) {
  json j = parse_json(text);
  if (!j.is_object()) bad("interpretation must be an object");
  FiniteInterpretation I;
  I.domain_size = get_int(j, "domain");
  if (I.domain_size < 0) bad("'domain' must be non-negative");
  if (!j.contains("relations") || !j["relations"].is_object())
    bad("interpretation needs an object field 'relations'");
  for (const auto& [name, entry] : j["relations"].items()) {
    if (!entry.is_array()) bad("relation '" + name + "' must be an array of pairs");
    Relation r;
    bool first = true;
    for (const auto& pr : entry) {
      if (!pr.is_array() || pr.size() != 2)
        bad("relation '" + name + "' entries must be [in, out] pairs");
      Tuple x = tuple_from(pr[0]);
      Tuple y = tuple_from(pr[1]);
      if (first) {
        r.in = static_cast<int>(x.size());
        r.out = static_cast<int>(y.size());
        first = false;
      } else if (r.in != static_cast<int>(x.size()) ||
                 r.out != static_cast<int>(y.size())) {
        bad("relation '" + name + "' has pairs of mixed widths");
      }
      for (int v : x)
        if (v < 0 || v >= I.domain_size)
          bad("relation '" + name + "' mentions a value outside the domain");
      for (int v : y)
        if (v < 0 || v >= I.domain_size)
          bad("relation '" + name + "' mentions a value outside the domain");
      r.pairs.insert({std::move(x), std::move(y)});
    }
    if (sig) {
      auto it = sig->symbols.find(name);
      if (it != sig->symbols.end() && r.pairs.empty()) {
        r.in = it->second.in;
        r.out = it->second.out;
      }
    }
    I.relations[name] = std::move(r);
  }
  if (sig) validate_interpretation(I, *sig);
  return I;
}

std::string interpretation_to_json(const FiniteInterpretation& I) {
  json rels = json::object();
  for (const auto& [name, r] : I.relations) rels[name] = pairs_to(r.pairs);
  return json{{"domain", I.domain_size}, {"relations", rels}}.dump();
}

Theory theory_from_json(const std::string& text) {
  json j = parse_json(text);
  if (!j.is_object() || !j.contains("signature"))
    bad("theory needs a 'signature' field");
  Theory thy;
  thy.signature = signature_from_json(j["signature"].dump());
  if (!j.contains("axioms") || !j["axioms"].is_array())
    bad("theory needs an array field 'axioms'");
  for (const auto& ax : j["axioms"]) {
    if (!ax.is_object() || !ax.contains("lhs") || !ax.contains("rhs") ||
        !ax["lhs"].is_string() || !ax["rhs"].is_string())
      bad("theory axioms must be {\"lhs\": \"...\", \"rhs\": \"...\"}");
    TermPtr lhs = parse_term(ax["lhs"].get<std::string>(), thy.signature);
    TermPtr rhs = parse_term(ax["rhs"].get<std::string>(), thy.signature);
    Type tl = typecheck(lhs, thy.signature);
    Type tr = typecheck(rhs, thy.signature);
    if (!(tl == tr))
      throw TypeMismatch("theory axiom", std::to_string(tl.in) + " -> " +
                                             std::to_string(tl.out),
                         std::to_string(tr.in) + " -> " + std::to_string(tr.out));
    thy.axioms.emplace_back(std::move(lhs), std::move(rhs));
  }
  return thy;
}

std::string theory_to_json(const Theory& thy) {
  json axs = json::array();
  for (const auto& [lhs, rhs] : thy.axioms)
    axs.push_back(json{{"lhs", print_term(lhs)}, {"rhs", print_term(rhs)}});
  json sig = parse_json(signature_to_json(thy.signature));
  return json{{"signature", sig}, {"axioms", axs}}.dump();
}

std::optional<std::string> derivation_theory_path(const std::string& text) {
  json j = parse_json(text);
  if (j.is_object() && j.contains("theory") && j["theory"].is_string())
    return j["theory"].get<std::string>();
  return std::nullopt;
}

Derivation derivation_from_json(const std::string& text, const Signature& sig) {
  json j = parse_json(text);
  if (!j.is_object() || !j.contains("start") || !j.contains("end") ||
      !j["start"].is_string() || !j["end"].is_string())
    bad("proof script needs string fields 'start' and 'end'");
  Derivation d;
  d.start = parse_term(j["start"].get<std::string>(), sig);
  d.end = parse_term(j["end"].get<std::string>(), sig);
  if (j.contains("steps")) {
    if (!j["steps"].is_array()) bad("'steps' must be an array");
    for (const auto& s : j["steps"]) {
      if (!s.is_object()) bad("steps must be objects");
      RewriteStep st;
      if (s.contains("assoc")) {
        if (!s["assoc"].is_boolean() || !s["assoc"].get<bool>())
          bad("'assoc' must be true when present");
        st.kind = RewriteStep::Kind::Normalize;
        if (s.contains("to")) {
          if (!s["to"].is_string()) bad("'to' must be a term string");
          st.to = parse_term(s["to"].get<std::string>(), sig);
        }
      } else if (s.contains("thyAxiom")) {
        if (!s["thyAxiom"].is_number_integer() || s["thyAxiom"].get<int>() < 0)
          bad("'thyAxiom' must be a non-negative index");
        st.kind = RewriteStep::Kind::TheoryAxiom;
        st.theory_index = static_cast<size_t>(s["thyAxiom"].get<int>());
        if (s.contains("path")) st.path = path_from(s["path"]);
      } else if (s.contains("axiom")) {
        if (!s["axiom"].is_string()) bad("'axiom' must be a schema id string");
        st.kind = RewriteStep::Kind::Schema;
        st.axiom_id = s["axiom"].get<std::string>();
        if (s.contains("path")) st.path = path_from(s["path"]);
        if (s.contains("dir")) {
          std::string dir = s["dir"].is_string() ? s["dir"].get<std::string>() : "";
          if (dir == "fwd")
            st.forward = true;
          else if (dir == "bwd")
            st.forward = false;
          else
            bad("'dir' must be \"fwd\" or \"bwd\"");
        }
        if (s.contains("bind")) {
          if (!s["bind"].is_object()) bad("'bind' must be an object");
          for (const auto& [name, v] : s["bind"].items()) {
            if (v.is_string())
              st.bind.terms[name] = parse_term(v.get<std::string>(), sig);
            else if (v.is_number_integer())
              st.bind.nats[name] = v.get<int>();
            else
              bad("binding '" + name + "' must be a term string or an integer");
          }
        }
      } else {
        bad("step needs one of 'axiom', 'assoc', 'thyAxiom'");
      }
      d.steps.push_back(std::move(st));
    }
  }
  return d;
}

std::string derivation_to_json(const Derivation& d) {
  json steps = json::array();
  for (const RewriteStep& st : d.steps) {
    json s = json::object();
    switch (st.kind) {
      case RewriteStep::Kind::Normalize:
        s["assoc"] = true;
        if (st.to) s["to"] = print_term(st.to);
        break;
      case RewriteStep::Kind::TheoryAxiom:
        s["thyAxiom"] = static_cast<int>(st.theory_index);
        s["path"] = path_to(st.path);
        break;
      case RewriteStep::Kind::Schema:
        s["axiom"] = st.axiom_id;
        s["path"] = path_to(st.path);
        s["dir"] = st.forward ? "fwd" : "bwd";
        if (!st.bind.terms.empty() || !st.bind.nats.empty()) {
          json b = json::object();
          for (const auto& [name, t] : st.bind.terms) b[name] = print_term(t);
          for (const auto& [name, n] : st.bind.nats) b[name] = n;
          s["bind"] = b;
        }
        break;
    }
    steps.push_back(std::move(s));
  }
  return json{{"start", print_term(d.start)},
              {"end", print_term(d.end)},
              {"steps", steps}}
      .dump();
}

std::string relation_to_json(const Relation& r) { return pairs_to(r.pairs).dump(); }

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw TermError("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace relcalc
