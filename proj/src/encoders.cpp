#include "relcalc/encoders.hpp"

#include <algorithm>
#include <cctype>
#include <functional>

#include "relcalc/derived.hpp"
#include "relcalc/theories.hpp"

namespace relcalc {

namespace {

std::string type_str(const Type& t) {
  return std::to_string(t.in) + " -> " + std::to_string(t.out);
}

struct Cur {
  const std::string& s;
  size_t pos = 0;

  void ws() {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
  }
  bool at_end() {
    ws();
    return pos >= s.size();
  }
  // Punctuation token, consumed on match.
  bool lit(const std::string& t) {
    ws();
    if (s.compare(pos, t.size(), t) != 0) return false;
    pos += t.size();
    return true;
  }
  std::string peek_ident() {
    ws();
    size_t p = pos;
    if (p >= s.size() || !std::isalpha(static_cast<unsigned char>(s[p]))) return "";
    size_t q = p + 1;
    while (q < s.size() &&
           (std::isalnum(static_cast<unsigned char>(s[q])) || s[q] == '_'))
      ++q;
    return s.substr(p, q - p);
  }
  std::string take_ident() {
    std::string id = peek_ident();
    pos += id.size();
    return id;
  }
  // Keyword: a whole identifier equal to w, consumed on match.
  bool word(const std::string& w) {
    if (peek_ident() != w) return false;
    pos += w.size();
    return true;
  }
  [[noreturn]] void fail(const std::string& msg) { throw ParseError(pos, msg); }
  void expect(const std::string& t) {
    if (!lit(t)) fail("expected '" + t + "'");
  }
};

}  // namespace

// ---------------------------------------------------------------- cr

namespace cr {

namespace {

ExprPtr mk(Kind k, ExprPtr l = nullptr, ExprPtr r = nullptr) {
  auto e = std::make_shared<Expr>();
  e->kind = k;
  e->left = std::move(l);
  e->right = std::move(r);
  return e;
}

ExprPtr mk_sym(std::string name) {
  auto e = std::make_shared<Expr>();
  e->kind = Kind::Symbol;
  e->name = std::move(name);
  return e;
}

ExprPtr parse_expr(Cur& c);

ExprPtr parse_atom(Cur& c) {
  if (c.lit("(")) {
    ExprPtr e = parse_expr(c);
    c.expect(")");
    return e;
  }
  std::string id = c.take_ident();
  if (id.empty()) c.fail("expected expression");
  if (id == "id") {
    if (c.pos < c.s.size() && c.s[c.pos] == '+') {
      ++c.pos;
      return mk(Kind::IdP);
    }
    if (c.pos < c.s.size() && c.s[c.pos] == '-') {
      ++c.pos;
      return mk(Kind::IdM);
    }
    c.fail("'id' needs an immediate '+' or '-'");
  }
  if (id == "top") return mk(Kind::Top);
  if (id == "bot") return mk(Kind::Bot);
  return mk_sym(id);
}

ExprPtr parse_unary(Cur& c) {
  if (c.lit("~")) return mk(Kind::Complement, parse_unary(c));
  if (c.lit("^")) return mk(Kind::Converse, parse_unary(c));
  return parse_atom(c);
}

ExprPtr parse_sq(Cur& c) {
  ExprPtr e = parse_unary(c);
  for (;;) {
    if (c.lit(";+"))
      e = mk(Kind::SeqP, e, parse_unary(c));
    else if (c.lit(";-"))
      e = mk(Kind::SeqM, e, parse_unary(c));
    else
      return e;
  }
}

ExprPtr parse_meet(Cur& c) {
  ExprPtr e = parse_sq(c);
  while (c.lit("&")) e = mk(Kind::Meet, e, parse_sq(c));
  return e;
}

ExprPtr parse_expr(Cur& c) {
  ExprPtr e = parse_meet(c);
  while (c.lit("|")) e = mk(Kind::Join, e, parse_meet(c));
  return e;
}

int prec(Kind k) {
  switch (k) {
    case Kind::Join:
      return 0;
    case Kind::Meet:
      return 1;
    case Kind::SeqP:
    case Kind::SeqM:
      return 2;
    case Kind::Converse:
    case Kind::Complement:
      return 3;
    default:
      return 4;
  }
}

std::string render(const ExprPtr& e, int min_prec) {
  int p = prec(e->kind);
  std::string s;
  switch (e->kind) {
    case Kind::Symbol:
      s = e->name;
      break;
    case Kind::IdP:
      s = "id+";
      break;
    case Kind::IdM:
      s = "id-";
      break;
    case Kind::Top:
      s = "top";
      break;
    case Kind::Bot:
      s = "bot";
      break;
    case Kind::Complement:
      s = "~" + render(e->left, 3);
      break;
    case Kind::Converse:
      s = "^" + render(e->left, 3);
      break;
    case Kind::SeqP:
      s = render(e->left, 2) + " ;+ " + render(e->right, 3);
      break;
    case Kind::SeqM:
      s = render(e->left, 2) + " ;- " + render(e->right, 3);
      break;
    case Kind::Meet:
      s = render(e->left, 1) + " & " + render(e->right, 2);
      break;
    case Kind::Join:
      s = render(e->left, 0) + " | " + render(e->right, 1);
      break;
  }
  if (p < min_prec) return "(" + s + ")";
  return s;
}

}  // namespace

ExprPtr parse(const std::string& text) {
  Cur c{text};
  ExprPtr e = parse_expr(c);
  if (!c.at_end()) c.fail("trailing input");
  return e;
}

std::string print(const ExprPtr& e) { return render(e, 0); }

TermPtr encode(const ExprPtr& e, const Signature& sig) {
  switch (e->kind) {
    case Kind::Symbol: {
      auto it = sig.symbols.find(e->name);
      if (it == sig.symbols.end()) throw UnknownSymbol(e->name);
      if (!(it->second == Type{1, 1}))
        throw TypeMismatch("relation symbol " + e->name, "1 -> 1",
                           type_str(it->second));
      return gen(e->name, Color::White);
    }
    case Kind::IdP:
      return id1(Color::White);
    case Kind::IdM:
      return id1(Color::Black);
    case Kind::SeqP:
      return seq(Color::White, encode(e->left, sig), encode(e->right, sig));
    case Kind::SeqM:
      return seq(Color::Black, encode(e->left, sig), encode(e->right, sig));
    case Kind::Converse:
      return converse_term(encode(e->left, sig), sig);
    case Kind::Top:
      return seq(Color::White, discard(Color::White), codiscard(Color::White));
    case Kind::Meet:
      return meet_term(encode(e->left, sig), encode(e->right, sig), sig);
    case Kind::Bot:
      return seq(Color::Black, discard(Color::Black), codiscard(Color::Black));
    case Kind::Join:
      return join_term(encode(e->left, sig), encode(e->right, sig), sig);
    case Kind::Complement:
      return negate_term(encode(e->left, sig), sig);
  }
  throw TermError("unreachable");
}

Relation eval(const ExprPtr& e, const FiniteInterpretation& I) {
  const int n = I.domain_size;
  auto rel = [&](PairSet pairs) { return Relation{1, 1, std::move(pairs)}; };
  auto full = [&] {
    PairSet p;
    for (int x = 0; x < n; ++x)
      for (int y = 0; y < n; ++y) p.insert({{x}, {y}});
    return p;
  };
  switch (e->kind) {
    case Kind::Symbol: {
      auto it = I.relations.find(e->name);
      if (it == I.relations.end()) throw UnknownSymbol(e->name);
      if (it->second.in != 1 || it->second.out != 1)
        throw TypeMismatch("relation symbol " + e->name, "1 -> 1",
                           type_str({it->second.in, it->second.out}));
      return it->second;
    }
    case Kind::IdP: {
      PairSet p;
      for (int x = 0; x < n; ++x) p.insert({{x}, {x}});
      return rel(std::move(p));
    }
    case Kind::IdM: {
      PairSet p;
      for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
          if (x != y) p.insert({{x}, {y}});
      return rel(std::move(p));
    }
    case Kind::SeqP: {
      Relation a = eval(e->left, I), b = eval(e->right, I);
      PairSet p;
      for (const auto& [x, y] : a.pairs)
        for (const auto& [y2, z] : b.pairs)
          if (y == y2) p.insert({x, z});
      return rel(std::move(p));
    }
    case Kind::SeqM: {
      Relation a = eval(e->left, I), b = eval(e->right, I);
      PairSet p;
      for (int x = 0; x < n; ++x)
        for (int z = 0; z < n; ++z) {
          bool all = true;
          for (int y = 0; y < n && all; ++y)
            all = a.pairs.count({{x}, {y}}) || b.pairs.count({{y}, {z}});
          if (all) p.insert({{x}, {z}});
        }
      return rel(std::move(p));
    }
    case Kind::Converse: {
      Relation a = eval(e->left, I);
      PairSet p;
      for (const auto& [x, y] : a.pairs) p.insert({y, x});
      return rel(std::move(p));
    }
    case Kind::Top:
      return rel(full());
    case Kind::Bot:
      return rel({});
    case Kind::Meet: {
      Relation a = eval(e->left, I), b = eval(e->right, I);
      PairSet p;
      std::set_intersection(a.pairs.begin(), a.pairs.end(), b.pairs.begin(),
                            b.pairs.end(), std::inserter(p, p.begin()));
      return rel(std::move(p));
    }
    case Kind::Join: {
      Relation a = eval(e->left, I), b = eval(e->right, I);
      PairSet p = a.pairs;
      p.insert(b.pairs.begin(), b.pairs.end());
      return rel(std::move(p));
    }
    case Kind::Complement: {
      Relation a = eval(e->left, I);
      PairSet p;
      for (auto& pr : full())
        if (!a.pairs.count(pr)) p.insert(pr);
      return rel(std::move(p));
    }
  }
  throw TermError("unreachable");
}

}  // namespace cr

// ---------------------------------------------------------------- fol

namespace fol {

namespace {

std::shared_ptr<Formula> mk(Kind k) {
  auto f = std::make_shared<Formula>();
  f->kind = k;
  return f;
}

FormulaPtr mk2(Kind k, FormulaPtr l, FormulaPtr r = nullptr) {
  auto f = mk(k);
  f->left = std::move(l);
  f->right = std::move(r);
  return f;
}

FormulaPtr quantifier(Kind k, std::string var, FormulaPtr body) {
  auto f = mk(k);
  f->var = std::move(var);
  f->left = std::move(body);
  return f;
}

Tm var_tm(int i) {
  Tm t;
  t.var = i;
  return t;
}

FormulaPtr eq_vars(int i, int j) {
  auto f = mk(Kind::Eq);
  f->t1 = var_tm(i);
  f->t2 = var_tm(j);
  return f;
}

bool is_var_name(const std::string& id, int& idx) {
  if (id.size() < 2 || id[0] != 'x') return false;
  for (size_t i = 1; i < id.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(id[i]))) return false;
  idx = std::stoi(id.substr(1));
  return true;
}

FormulaPtr parse_disj(Cur& c);

Tm parse_tm(Cur& c) {
  std::string id = c.take_ident();
  if (id.empty()) c.fail("expected a term");
  int idx = 0;
  if (is_var_name(id, idx)) {
    if (idx < 1) c.fail("variable indices start at 1");
    return var_tm(idx);
  }
  Tm t;
  t.fn = id;
  c.expect("(");
  if (!c.lit(")")) {
    do {
      t.args.push_back(parse_tm(c));
    } while (c.lit(","));
    c.expect(")");
  }
  return t;
}

FormulaPtr parse_atom(Cur& c) {
  if (c.word("top")) return mk(Kind::Top);
  if (c.word("bot")) return mk(Kind::Bot);
  if (c.lit("(")) {
    FormulaPtr f = parse_disj(c);
    c.expect(")");
    return f;
  }
  std::string id = c.peek_ident();
  if (id.empty()) c.fail("expected a formula");
  int idx = 0;
  if (is_var_name(id, idx)) {
    Tm lhs = parse_tm(c);
    c.expect("=");
    auto f = mk(Kind::Eq);
    f->t1 = lhs;
    f->t2 = parse_tm(c);
    return f;
  }
  c.take_ident();
  std::vector<Tm> args;
  bool parens = c.lit("(");
  if (parens && !c.lit(")")) {
    do {
      args.push_back(parse_tm(c));
    } while (c.lit(","));
    c.expect(")");
  }
  if (c.lit("=")) {
    if (!parens) c.fail("a constant term needs '()' before '='");
    Tm lhs;
    lhs.fn = id;
    lhs.args = std::move(args);
    auto f = mk(Kind::Eq);
    f->t1 = lhs;
    f->t2 = parse_tm(c);
    return f;
  }
  auto f = mk(Kind::Pred);
  f->name = id;
  f->args = std::move(args);
  return f;
}

FormulaPtr parse_unary(Cur& c) {
  if (c.lit("!")) return mk2(Kind::Not, parse_unary(c));
  bool ex = c.word("exists");
  if (ex || c.word("forall")) {
    std::string v = c.take_ident();
    int idx = 0;
    if (!is_var_name(v, idx) || idx < 1) c.fail("expected a variable to bind");
    c.expect(".");
    return quantifier(ex ? Kind::Exists : Kind::Forall, v, parse_disj(c));
  }
  return parse_atom(c);
}

FormulaPtr parse_conj(Cur& c) {
  FormulaPtr f = parse_unary(c);
  while (c.lit("/\\")) f = mk2(Kind::And, f, parse_unary(c));
  return f;
}

FormulaPtr parse_disj(Cur& c) {
  FormulaPtr f = parse_conj(c);
  while (c.lit("\\/")) f = mk2(Kind::Or, f, parse_conj(c));
  return f;
}

int stated_index(const std::string& var_name) {
  int idx = 0;
  is_var_name(var_name, idx);
  return idx;
}

void free_max_tm(const Tm& t, const std::set<int>& bound, int& mx) {
  if (t.var > 0) {
    if (!bound.count(t.var)) mx = std::max(mx, t.var);
    return;
  }
  for (const Tm& a : t.args) free_max_tm(a, bound, mx);
}

void free_max(const FormulaPtr& f, std::set<int>& bound, int& mx) {
  switch (f->kind) {
    case Kind::Top:
    case Kind::Bot:
      return;
    case Kind::Eq:
      free_max_tm(f->t1, bound, mx);
      free_max_tm(f->t2, bound, mx);
      return;
    case Kind::Pred:
      for (const Tm& a : f->args) free_max_tm(a, bound, mx);
      return;
    case Kind::And:
    case Kind::Or:
      free_max(f->left, bound, mx);
      free_max(f->right, bound, mx);
      return;
    case Kind::Not:
      free_max(f->left, bound, mx);
      return;
    case Kind::Exists:
    case Kind::Forall: {
      int k = stated_index(f->var);
      bool fresh = bound.insert(k).second;
      free_max(f->left, bound, mx);
      if (fresh) bound.erase(k);
      return;
    }
  }
}

void check_tm_scope(const Tm& t, int ctx) {
  if (t.var > 0) {
    if (t.var > ctx)
      throw ScopeError("variable x" + std::to_string(t.var) +
                       " exceeds context of size " + std::to_string(ctx));
    return;
  }
  for (const Tm& a : t.args) check_tm_scope(a, ctx);
}

void check_convention(const FormulaPtr& f, int ctx) {
  switch (f->kind) {
    case Kind::Top:
    case Kind::Bot:
      return;
    case Kind::Eq:
      check_tm_scope(f->t1, ctx);
      check_tm_scope(f->t2, ctx);
      return;
    case Kind::Pred:
      for (const Tm& a : f->args) check_tm_scope(a, ctx);
      return;
    case Kind::And:
    case Kind::Or:
      check_convention(f->left, ctx);
      check_convention(f->right, ctx);
      return;
    case Kind::Not:
      check_convention(f->left, ctx);
      return;
    case Kind::Exists:
    case Kind::Forall: {
      int k = stated_index(f->var);
      if (k != ctx + 1)
        throw ScopeError("quantifier binds x" + std::to_string(k) +
                         " but the next variable here is x" +
                         std::to_string(ctx + 1));
      check_convention(f->left, ctx + 1);
      return;
    }
  }
}

std::string tm_str(const Tm& t, const std::function<std::string(int)>& vn) {
  if (t.var > 0) return vn(t.var);
  std::string s = t.fn + "(";
  for (size_t i = 0; i < t.args.size(); ++i) {
    if (i) s += ", ";
    s += tm_str(t.args[i], vn);
  }
  return s + ")";
}

// Or and quantifiers 0, And 1, Not 2, atoms 3.
std::string render(const FormulaPtr& f, int min_prec, int n_in, int n_out,
                   std::vector<std::string>& extra) {
  auto vn = [&](int i) -> std::string {
    if (i <= n_in) return "x" + std::to_string(i);
    if (i <= n_in + n_out) return "y" + std::to_string(i - n_in);
    size_t k = static_cast<size_t>(i - n_in - n_out);
    if (k <= extra.size()) return extra[k - 1];
    return "x" + std::to_string(i);
  };
  int p = 3;
  std::string s;
  switch (f->kind) {
    case Kind::Top:
      s = "top";
      break;
    case Kind::Bot:
      s = "bot";
      break;
    case Kind::Eq:
      s = tm_str(f->t1, vn) + " = " + tm_str(f->t2, vn);
      break;
    case Kind::Pred:
      s = f->name;
      if (!f->args.empty()) {
        s += "(";
        for (size_t i = 0; i < f->args.size(); ++i) {
          if (i) s += ", ";
          s += tm_str(f->args[i], vn);
        }
        s += ")";
      }
      break;
    case Kind::Not:
      p = 2;
      s = "! " + render(f->left, 2, n_in, n_out, extra);
      break;
    case Kind::And:
      p = 1;
      s = render(f->left, 1, n_in, n_out, extra) + " /\\ " +
          render(f->right, 2, n_in, n_out, extra);
      break;
    case Kind::Or:
      p = 0;
      s = render(f->left, 0, n_in, n_out, extra) + " \\/ " +
          render(f->right, 1, n_in, n_out, extra);
      break;
    case Kind::Exists:
    case Kind::Forall:
      p = 0;
      extra.push_back(f->var);
      s = (f->kind == Kind::Exists ? "exists " : "forall ") + f->var + " . " +
          render(f->left, 0, n_in, n_out, extra);
      extra.pop_back();
      break;
  }
  if (p < min_prec) return "(" + s + ")";
  return s;
}

// Duplicates the whole context k times; n -> k*n.
TermPtr fanout(int n, int k) {
  if (k <= 0) return discard_n(Color::White, n);
  if (k == 1) return id_n(Color::White, n);
  return seq(Color::White, copier_n(Color::White, n),
             tensor(Color::White, id_n(Color::White, n), fanout(n, k - 1)));
}

struct FolEncoder {
  const Signature& sig;
  std::set<std::string> fns;

  TermPtr term(const Tm& t, int ctx) {
    if (t.var > 0) {
      if (t.var < 1 || t.var > ctx)
        throw ScopeError("variable x" + std::to_string(t.var) +
                         " exceeds context of size " + std::to_string(ctx));
      return tensor(Color::White, discard_n(Color::White, t.var - 1),
                    tensor(Color::White, id1(Color::White),
                           discard_n(Color::White, ctx - t.var)));
    }
    auto it = sig.symbols.find(t.fn);
    if (it == sig.symbols.end()) throw UnknownSymbol(t.fn);
    Type want{static_cast<int>(t.args.size()), 1};
    if (!(it->second == want))
      throw TypeMismatch("function symbol " + t.fn, type_str(want),
                         type_str(it->second));
    fns.insert(t.fn);
    return apply(t.fn, t.args, ctx);
  }

  // fanout the context, feed one term encoding per argument, apply the symbol.
  TermPtr apply(const std::string& name, const std::vector<Tm>& args, int ctx) {
    const int m = static_cast<int>(args.size());
    TermPtr g = gen(name, Color::White);
    if (m == 0) return seq(Color::White, discard_n(Color::White, ctx), g);
    if (m == 1) return seq(Color::White, term(args[0], ctx), g);
    TermPtr chain = term(args[m - 1], ctx);
    for (int i = m - 2; i >= 0; --i)
      chain = tensor(Color::White, term(args[i], ctx), chain);
    return seq(Color::White, fanout(ctx, m), seq(Color::White, chain, g));
  }

  TermPtr formula(const FormulaPtr& f, int ctx) {
    switch (f->kind) {
      case Kind::Top:
        return discard_n(Color::White, ctx);
      case Kind::Bot:
        return discard_n(Color::Black, ctx);
      case Kind::Pred: {
        auto it = sig.symbols.find(f->name);
        if (it == sig.symbols.end()) throw UnknownSymbol(f->name);
        Type want{static_cast<int>(f->args.size()), 0};
        if (!(it->second == want))
          throw TypeMismatch("predicate symbol " + f->name, type_str(want),
                             type_str(it->second));
        return apply(f->name, f->args, ctx);
      }
      case Kind::Eq: {
        TermPtr pair = tensor(Color::White, term(f->t1, ctx), term(f->t2, ctx));
        return seq(Color::White, fanout(ctx, 2),
                   seq(Color::White, pair, cap_term(Color::White, 1)));
      }
      case Kind::And:
        return meet_term(formula(f->left, ctx), formula(f->right, ctx), sig);
      case Kind::Or:
        return join_term(formula(f->left, ctx), formula(f->right, ctx), sig);
      case Kind::Not:
        return negate_term(formula(f->left, ctx), sig);
      case Kind::Exists:
        return seq(Color::White,
                   tensor(Color::White, id_n(Color::White, ctx),
                          codiscard(Color::White)),
                   formula(f->left, ctx + 1));
      case Kind::Forall:
        return seq(Color::Black,
                   tensor(Color::Black, id_n(Color::Black, ctx),
                          codiscard(Color::Black)),
                   formula(f->left, ctx + 1));
    }
    throw TermError("unreachable");
  }
};

int tm_value(const Tm& t, const Tuple& env, const FiniteInterpretation& I) {
  if (t.var > 0) {
    if (static_cast<size_t>(t.var) > env.size())
      throw ScopeError("variable x" + std::to_string(t.var) +
                       " exceeds context of size " + std::to_string(env.size()));
    return env[t.var - 1];
  }
  auto it = I.relations.find(t.fn);
  if (it == I.relations.end()) throw UnknownSymbol(t.fn);
  const Relation& r = it->second;
  if (r.in != static_cast<int>(t.args.size()) || r.out != 1)
    throw TypeMismatch("function symbol " + t.fn,
                       type_str({static_cast<int>(t.args.size()), 1}),
                       type_str({r.in, r.out}));
  Tuple a;
  for (const Tm& x : t.args) a.push_back(tm_value(x, env, I));
  std::optional<int> val;
  for (const auto& [u, v] : r.pairs)
    if (u == a) {
      if (val) throw TermError("symbol " + t.fn + " is not a function");
      val = v[0];
    }
  if (!val) throw TermError("symbol " + t.fn + " is not a total function");
  return *val;
}

bool sat(const FormulaPtr& f, Tuple& env, const FiniteInterpretation& I) {
  switch (f->kind) {
    case Kind::Top:
      return true;
    case Kind::Bot:
      return false;
    case Kind::Eq:
      return tm_value(f->t1, env, I) == tm_value(f->t2, env, I);
    case Kind::Pred: {
      auto it = I.relations.find(f->name);
      if (it == I.relations.end()) throw UnknownSymbol(f->name);
      const Relation& r = it->second;
      if (r.in + r.out != static_cast<int>(f->args.size()))
        throw TypeMismatch("predicate symbol " + f->name,
                           std::to_string(f->args.size()) + " arguments",
                           type_str({r.in, r.out}));
      Tuple a, b;
      for (int i = 0; i < r.in; ++i) a.push_back(tm_value(f->args[i], env, I));
      for (int i = 0; i < r.out; ++i)
        b.push_back(tm_value(f->args[r.in + i], env, I));
      return r.pairs.count({a, b}) > 0;
    }
    case Kind::And:
      return sat(f->left, env, I) && sat(f->right, env, I);
    case Kind::Or:
      return sat(f->left, env, I) || sat(f->right, env, I);
    case Kind::Not:
      return !sat(f->left, env, I);
    case Kind::Exists: {
      for (int v = 0; v < I.domain_size; ++v) {
        env.push_back(v);
        bool ok = sat(f->left, env, I);
        env.pop_back();
        if (ok) return true;
      }
      return false;
    }
    case Kind::Forall: {
      for (int v = 0; v < I.domain_size; ++v) {
        env.push_back(v);
        bool ok = sat(f->left, env, I);
        env.pop_back();
        if (!ok) return false;
      }
      return true;
    }
  }
  throw TermError("unreachable");
}

Tm rmap_tm(const Tm& t, const std::vector<int>& map) {
  if (t.var > 0) return var_tm(map.at(static_cast<size_t>(t.var) - 1));
  Tm r;
  r.fn = t.fn;
  for (const Tm& a : t.args) r.args.push_back(rmap_tm(a, map));
  return r;
}

FormulaPtr renumber(const FormulaPtr& f, std::vector<int> map, int tctx) {
  switch (f->kind) {
    case Kind::Top:
    case Kind::Bot:
      return f;
    case Kind::Eq: {
      auto g = mk(Kind::Eq);
      g->t1 = rmap_tm(f->t1, map);
      g->t2 = rmap_tm(f->t2, map);
      return g;
    }
    case Kind::Pred: {
      auto g = mk(Kind::Pred);
      g->name = f->name;
      for (const Tm& a : f->args) g->args.push_back(rmap_tm(a, map));
      return g;
    }
    case Kind::And:
    case Kind::Or:
      return mk2(f->kind, renumber(f->left, map, tctx),
                 renumber(f->right, map, tctx));
    case Kind::Not:
      return mk2(Kind::Not, renumber(f->left, map, tctx));
    case Kind::Exists:
    case Kind::Forall: {
      map.push_back(tctx + 1);
      return quantifier(f->kind, f->var, renumber(f->left, std::move(map), tctx + 1));
    }
  }
  throw TermError("unreachable");
}

FormulaPtr conj_of(const std::vector<FormulaPtr>& fs) {
  if (fs.empty()) return mk(Kind::Top);
  FormulaPtr r = fs.back();
  for (size_t i = fs.size() - 1; i-- > 0;) r = mk2(Kind::And, fs[i], r);
  return r;
}

FormulaPtr disj_of(const std::vector<FormulaPtr>& fs) {
  if (fs.empty()) return mk(Kind::Bot);
  FormulaPtr r = fs.back();
  for (size_t i = fs.size() - 1; i-- > 0;) r = mk2(Kind::Or, fs[i], r);
  return r;
}

// Wire equations of the white structural atoms, as (input, output) pairs
// positioned in the atom's own context.
std::vector<std::pair<int, int>> atom_links(NodeKind k, int n) {
  switch (k) {
    case NodeKind::Id1:
      return {{1, n + 1}};
    case NodeKind::Sym:
      return {{1, n + 2}, {2, n + 1}};
    case NodeKind::Copier:
      return {{1, n + 1}, {1, n + 2}};
    case NodeKind::Cocopier:
      return {{1, n + 1}, {2, n + 1}};
    default:
      return {};
  }
}

Decoded decode_rec(const TermPtr& t, const Signature& sig, int depth) {
  Type ty = typecheck(t, sig);
  const bool white = t->color == Color::White;
  switch (t->kind) {
    case NodeKind::Gen: {
      auto f = mk(Kind::Pred);
      f->name = t->name;
      if (white) {
        for (int i = 1; i <= ty.in + ty.out; ++i) f->args.push_back(var_tm(i));
        return {f, ty.in, ty.out};
      }
      for (int j = 1; j <= ty.out; ++j) f->args.push_back(var_tm(ty.in + j));
      for (int i = 1; i <= ty.in; ++i) f->args.push_back(var_tm(i));
      return {mk2(Kind::Not, f), ty.in, ty.out};
    }
    case NodeKind::Id0:
    case NodeKind::Id1:
    case NodeKind::Sym:
    case NodeKind::Copier:
    case NodeKind::Discard:
    case NodeKind::Cocopier:
    case NodeKind::Codiscard: {
      auto links = atom_links(t->kind, ty.in);
      std::vector<FormulaPtr> parts;
      for (auto [a, b] : links) {
        FormulaPtr e = eq_vars(a, b);
        parts.push_back(white ? e : mk2(Kind::Not, e));
      }
      return {white ? conj_of(parts) : disj_of(parts), ty.in, ty.out};
    }
    case NodeKind::Seq: {
      Decoded da = decode_rec(t->left, sig, depth + 1);
      Decoded db = decode_rec(t->right, sig, depth + 1);
      const int n = da.inputs, k = da.outputs, m = db.outputs;
      const int N = n + m + k;
      std::vector<int> ma, mb;
      for (int i = 1; i <= n; ++i) ma.push_back(i);
      for (int j = 1; j <= k; ++j) ma.push_back(n + m + j);
      for (int i = 1; i <= k; ++i) mb.push_back(n + m + i);
      for (int j = 1; j <= m; ++j) mb.push_back(n + j);
      FormulaPtr fa = renumber(da.formula, std::move(ma), N);
      FormulaPtr fb = renumber(db.formula, std::move(mb), N);
      FormulaPtr body = mk2(white ? Kind::And : Kind::Or, fa, fb);
      for (int i = k; i >= 1; --i)
        body = quantifier(white ? Kind::Exists : Kind::Forall,
                          "z" + std::to_string(depth) + "_" + std::to_string(i),
                          body);
      return {body, n, m};
    }
    case NodeKind::Tensor: {
      Decoded da = decode_rec(t->left, sig, depth + 1);
      Decoded db = decode_rec(t->right, sig, depth + 1);
      const int n1 = da.inputs, m1 = da.outputs;
      const int n2 = db.inputs, m2 = db.outputs;
      const int N = n1 + n2 + m1 + m2;
      std::vector<int> ma, mb;
      for (int i = 1; i <= n1; ++i) ma.push_back(i);
      for (int j = 1; j <= m1; ++j) ma.push_back(n1 + n2 + j);
      for (int i = 1; i <= n2; ++i) mb.push_back(n1 + i);
      for (int j = 1; j <= m2; ++j) mb.push_back(n1 + n2 + m1 + j);
      FormulaPtr fa = renumber(da.formula, std::move(ma), N);
      FormulaPtr fb = renumber(db.formula, std::move(mb), N);
      return {mk2(white ? Kind::And : Kind::Or, fa, fb), n1 + n2, m1 + m2};
    }
  }
  throw TermError("unreachable");
}

}  // namespace

std::pair<FormulaPtr, int> parse(const std::string& text) {
  Cur c{text};
  FormulaPtr f = parse_disj(c);
  if (!c.at_end()) c.fail("trailing input");
  int mx = 0;
  std::set<int> bound;
  free_max(f, bound, mx);
  check_convention(f, mx);
  return {f, mx};
}

std::string print(const FormulaPtr& f, int inputs, int outputs) {
  std::vector<std::string> extra;
  return render(f, 0, inputs, outputs, extra);
}

EncodeResult encode(const FormulaPtr& f, int context, const Signature& sig) {
  FolEncoder enc{sig};
  EncodeResult r;
  r.term = enc.formula(f, context);
  for (const std::string& fn : enc.fns) {
    for (auto& pr : function_axioms(fn, sig)) r.obligations.push_back(pr);
  }
  return r;
}

std::set<Tuple> eval(const FormulaPtr& f, int context, const FiniteInterpretation& I) {
  std::set<Tuple> out;
  for (Tuple env : all_tuples(I.domain_size, context))
    if (sat(f, env, I)) out.insert(env);
  return out;
}

Decoded decode(const TermPtr& t, const Signature& sig) {
  return decode_rec(t, sig, 1);
}

}  // namespace fol

// ---------------------------------------------------------------- pfl

namespace pfl {

namespace {

PredPtr mk(Kind k, PredPtr a = nullptr, PredPtr b = nullptr) {
  auto p = std::make_shared<Pred>();
  p->kind = k;
  p->a = std::move(a);
  p->b = std::move(b);
  return p;
}

PredPtr parse_pred(Cur& c);

PredPtr parse_unary(Cur& c) {
  if (c.word("p")) return mk(Kind::SwapHead, parse_unary(c));
  if (c.word("P")) return mk(Kind::SwapEnds, parse_unary(c));
  if (c.lit("[")) return mk(Kind::Pad, parse_unary(c));
  if (c.lit("]")) return mk(Kind::Proj, parse_unary(c));
  if (c.lit("!")) return mk(Kind::Not, parse_unary(c));
  if (c.word("I")) return mk(Kind::Ident);
  if (c.lit("(")) {
    PredPtr p = parse_pred(c);
    c.expect(")");
    return p;
  }
  std::string id = c.take_ident();
  if (id.empty()) c.fail("expected a predicate");
  auto p = std::make_shared<Pred>();
  p->kind = Kind::Atom;
  p->name = id;
  return p;
}

PredPtr parse_pred(Cur& c) {
  PredPtr p = parse_unary(c);
  while (c.lit("&")) p = mk(Kind::And, p, parse_unary(c));
  return p;
}

std::string render(const PredPtr& p, bool at_and_right) {
  std::string s;
  bool is_and = p->kind == Kind::And;
  switch (p->kind) {
    case Kind::Atom:
      s = p->name;
      break;
    case Kind::Ident:
      s = "I";
      break;
    case Kind::SwapHead:
      s = "p " + render(p->a, true);
      break;
    case Kind::SwapEnds:
      s = "P " + render(p->a, true);
      break;
    case Kind::Pad:
      s = "[ " + render(p->a, true);
      break;
    case Kind::Proj:
      s = "] " + render(p->a, true);
      break;
    case Kind::Not:
      s = "! " + render(p->a, true);
      break;
    case Kind::And:
      s = render(p->a, false) + " & " + render(p->b, true);
      break;
  }
  if (is_and && at_and_right) return "(" + s + ")";
  return s;
}

}  // namespace

PredPtr parse(const std::string& text) {
  Cur c{text};
  PredPtr p = parse_pred(c);
  if (!c.at_end()) c.fail("trailing input");
  return p;
}

std::string print(const PredPtr& p) { return render(p, false); }

int arity(const PredPtr& p, const Signature& sig) {
  switch (p->kind) {
    case Kind::Atom: {
      auto it = sig.symbols.find(p->name);
      if (it == sig.symbols.end()) throw UnknownSymbol(p->name);
      if (it->second.out != 0)
        throw PFLTypeError("atom " + p->name + " must have no output wires, has " +
                           std::to_string(it->second.out));
      return it->second.in;
    }
    case Kind::Ident:
      return 2;
    case Kind::SwapHead:
      return std::max(arity(p->a, sig), 2);
    case Kind::SwapEnds:
      return arity(p->a, sig);
    case Kind::Pad:
      return arity(p->a, sig) + 1;
    case Kind::Proj:
      return std::max(arity(p->a, sig) - 1, 0);
    case Kind::And:
      return std::max(arity(p->a, sig), arity(p->b, sig));
    case Kind::Not:
      return arity(p->a, sig);
  }
  throw TermError("unreachable");
}

EncodeResult encode(const PredPtr& p, const Signature& sig) {
  const Color W = Color::White;
  switch (p->kind) {
    case Kind::Atom: {
      int n = arity(p, sig);
      return {gen(p->name, W), n};
    }
    case Kind::Ident:
      return {cap_term(W, 1), 2};
    case Kind::Not: {
      EncodeResult e = encode(p->a, sig);
      return {negate_term(e.term, sig), e.arity};
    }
    case Kind::And: {
      EncodeResult ea = encode(p->a, sig);
      EncodeResult eb = encode(p->b, sig);
      int n = std::max(ea.arity, eb.arity);
      auto lift = [&](const EncodeResult& e) {
        if (e.arity == n) return e.term;
        return seq(W, tensor(W, id_n(W, e.arity), discard_n(W, n - e.arity)),
                   e.term);
      };
      return {meet_term(lift(ea), lift(eb), sig), n};
    }
    case Kind::Pad: {
      EncodeResult e = encode(p->a, sig);
      return {seq(W, tensor(W, discard(W), id_n(W, e.arity)), e.term),
              e.arity + 1};
    }
    case Kind::Proj: {
      EncodeResult e = encode(p->a, sig);
      if (e.arity == 0)
        return {seq(W, seq(W, codiscard(W), discard(W)), e.term), 0};
      return {seq(W, tensor(W, codiscard(W), id_n(W, e.arity - 1)), e.term),
              e.arity - 1};
    }
    case Kind::SwapHead: {
      EncodeResult e = encode(p->a, sig);
      if (e.arity >= 2)
        return {seq(W, tensor(W, sym(W), id_n(W, e.arity - 2)), e.term),
                e.arity};
      if (e.arity == 1)
        return {seq(W, tensor(W, discard(W), id1(W)), e.term), 2};
      return {seq(W, discard_n(W, 2), e.term), 2};
    }
    case Kind::SwapEnds: {
      EncodeResult e = encode(p->a, sig);
      if (e.arity < 2) return e;
      TermPtr perm = seq(W, sym_mn(W, 1, e.arity - 1),
                         tensor(W, sym_mn(W, e.arity - 2, 1), id1(W)));
      return {seq(W, perm, e.term), e.arity};
    }
  }
  throw TermError("unreachable");
}

std::set<Tuple> eval(const PredPtr& p, const FiniteInterpretation& I) {
  const Signature sig = I.signature();
  const int dom = I.domain_size;
  switch (p->kind) {
    case Kind::Atom: {
      arity(p, sig);
      std::set<Tuple> out;
      for (const auto& [x, y] : I.relations.at(p->name).pairs) out.insert(x);
      return out;
    }
    case Kind::Ident: {
      std::set<Tuple> out;
      for (int x = 0; x < dom; ++x) out.insert({x, x});
      return out;
    }
    case Kind::SwapHead: {
      std::set<Tuple> s = eval(p->a, I);
      int na = arity(p->a, sig);
      int n = std::max(na, 2);
      std::set<Tuple> out;
      for (Tuple x : all_tuples(dom, n)) {
        Tuple sw = x;
        std::swap(sw[0], sw[1]);
        sw.resize(na);
        if (s.count(sw)) out.insert(x);
      }
      return out;
    }
    case Kind::SwapEnds: {
      std::set<Tuple> s = eval(p->a, I);
      int n = arity(p->a, sig);
      if (n < 2) return s;
      std::set<Tuple> out;
      for (Tuple x : all_tuples(dom, n)) {
        Tuple sw = x;
        std::swap(sw.front(), sw.back());
        if (s.count(sw)) out.insert(x);
      }
      return out;
    }
    case Kind::Pad: {
      std::set<Tuple> s = eval(p->a, I);
      std::set<Tuple> out;
      for (int v = 0; v < dom; ++v)
        for (const Tuple& x : s) {
          Tuple y{v};
          y.insert(y.end(), x.begin(), x.end());
          out.insert(y);
        }
      return out;
    }
    case Kind::Proj: {
      std::set<Tuple> s = eval(p->a, I);
      int na = arity(p->a, sig);
      std::set<Tuple> out;
      if (na == 0) {
        if (dom > 0 && s.count(Tuple{})) out.insert(Tuple{});
        return out;
      }
      for (const Tuple& x : s) out.insert(Tuple(x.begin() + 1, x.end()));
      return out;
    }
    case Kind::And: {
      std::set<Tuple> sa = eval(p->a, I);
      std::set<Tuple> sb = eval(p->b, I);
      int na = arity(p->a, sig), nb = arity(p->b, sig);
      int n = std::max(na, nb);
      std::set<Tuple> out;
      for (Tuple x : all_tuples(dom, n)) {
        Tuple xa(x.begin(), x.begin() + na);
        Tuple xb(x.begin(), x.begin() + nb);
        if (sa.count(xa) && sb.count(xb)) out.insert(x);
      }
      return out;
    }
    case Kind::Not: {
      std::set<Tuple> s = eval(p->a, I);
      int n = arity(p->a, sig);
      std::set<Tuple> out;
      for (Tuple x : all_tuples(dom, n))
        if (!s.count(x)) out.insert(x);
      return out;
    }
  }
  throw TermError("unreachable");
}

}  // namespace pfl

// ---------------------------------------------------------------- prop

namespace prop {

namespace {

std::shared_ptr<Formula> mk(Kind k, FormulaPtr l = nullptr, FormulaPtr r = nullptr) {
  auto f = std::make_shared<Formula>();
  f->kind = k;
  f->left = std::move(l);
  f->right = std::move(r);
  return f;
}

FormulaPtr atom(Kind k, std::string name) {
  auto f = mk(k);
  f->name = std::move(name);
  return f;
}

FormulaPtr parse_disj(Cur& c);

FormulaPtr parse_atom(Cur& c) {
  if (c.lit("(")) {
    FormulaPtr f = parse_disj(c);
    c.expect(")");
    return f;
  }
  if (c.lit("!")) {
    std::string id = c.take_ident();
    if (id.empty() || id == "top" || id == "bot")
      c.fail("'!' applies to an atom name");
    return atom(Kind::NegAtom, id);
  }
  if (c.word("top")) return mk(Kind::Top);
  if (c.word("bot")) return mk(Kind::Bot);
  std::string id = c.take_ident();
  if (id.empty()) c.fail("expected a formula");
  return atom(Kind::Atom, id);
}

FormulaPtr parse_conj(Cur& c) {
  FormulaPtr f = parse_atom(c);
  while (c.lit("&")) f = mk(Kind::And, f, parse_atom(c));
  return f;
}

FormulaPtr parse_disj(Cur& c) {
  FormulaPtr f = parse_conj(c);
  while (c.lit("|")) f = mk(Kind::Or, f, parse_conj(c));
  return f;
}

std::string render(const FormulaPtr& f, int min_prec) {
  int p = 2;
  std::string s;
  switch (f->kind) {
    case Kind::Top:
      s = "top";
      break;
    case Kind::Bot:
      s = "bot";
      break;
    case Kind::Atom:
      s = f->name;
      break;
    case Kind::NegAtom:
      s = "!" + f->name;
      break;
    case Kind::And:
      p = 1;
      s = render(f->left, 1) + " & " + render(f->right, 2);
      break;
    case Kind::Or:
      p = 0;
      s = render(f->left, 0) + " | " + render(f->right, 1);
      break;
  }
  if (p < min_prec) return "(" + s + ")";
  return s;
}

TermPtr atom_gen(const std::string& name, Color c, const Signature& sig) {
  auto it = sig.symbols.find(name);
  if (it == sig.symbols.end()) throw UnknownSymbol(name);
  if (!(it->second == Type{0, 0}))
    throw TypeMismatch("propositional atom " + name, "0 -> 0",
                       type_str(it->second));
  return gen(name, c);
}

}  // namespace

FormulaPtr parse(const std::string& text) {
  Cur c{text};
  FormulaPtr f = parse_disj(c);
  if (!c.at_end()) c.fail("trailing input");
  return f;
}

std::string print(const FormulaPtr& f) { return render(f, 0); }

TermPtr encode(const FormulaPtr& f, const Signature& sig) {
  switch (f->kind) {
    case Kind::Top:
      return id0(Color::White);
    case Kind::Bot:
      return id0(Color::Black);
    case Kind::Atom:
      return atom_gen(f->name, Color::White, sig);
    case Kind::NegAtom:
      return atom_gen(f->name, Color::Black, sig);
    case Kind::And:
      return seq(Color::White, encode(f->left, sig), encode(f->right, sig));
    case Kind::Or:
      return seq(Color::Black, encode(f->left, sig), encode(f->right, sig));
  }
  throw TermError("unreachable");
}

}  // namespace prop

}  // namespace relcalc
