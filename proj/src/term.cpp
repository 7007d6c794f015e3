#include "relcalc/term.hpp"

#include <cctype>
#include <sstream>

namespace relcalc {

namespace {

TermPtr make(NodeKind k, Color c, std::string name = {}, TermPtr l = nullptr,
             TermPtr r = nullptr) {
  auto t = std::make_shared<Term>();
  t->kind = k;
  t->color = c;
  t->name = std::move(name);
  t->left = std::move(l);
  t->right = std::move(r);
  return t;
}

}  // namespace

TermPtr gen(const std::string& name, Color c) { return make(NodeKind::Gen, c, name); }
TermPtr id0(Color c) { return make(NodeKind::Id0, c); }
TermPtr id1(Color c) { return make(NodeKind::Id1, c); }
TermPtr sym(Color c) { return make(NodeKind::Sym, c); }
TermPtr copier(Color c) { return make(NodeKind::Copier, c); }
TermPtr discard(Color c) { return make(NodeKind::Discard, c); }
TermPtr cocopier(Color c) { return make(NodeKind::Cocopier, c); }
TermPtr codiscard(Color c) { return make(NodeKind::Codiscard, c); }

TermPtr seq(Color c, TermPtr l, TermPtr r) {
  return make(NodeKind::Seq, c, {}, std::move(l), std::move(r));
}

TermPtr tensor(Color c, TermPtr l, TermPtr r) {
  return make(NodeKind::Tensor, c, {}, std::move(l), std::move(r));
}

bool term_eq(const TermPtr& a, const TermPtr& b) {
  if (a.get() == b.get()) return true;
  if (!a || !b) return false;
  if (a->kind != b->kind || a->color != b->color) return false;
  switch (a->kind) {
    case NodeKind::Gen:
      return a->name == b->name;
    case NodeKind::Seq:
    case NodeKind::Tensor:
      return term_eq(a->left, b->left) && term_eq(a->right, b->right);
    default:
      return true;
  }
}

Type typecheck(const TermPtr& t, const Signature& sig) {
  switch (t->kind) {
    case NodeKind::Gen: {
      auto it = sig.symbols.find(t->name);
      if (it == sig.symbols.end()) throw UnknownSymbol(t->name);
      Type ty = it->second;
      if (t->color == Color::White) return ty;
      return Type{ty.out, ty.in};
    }
    case NodeKind::Id0:
      return {0, 0};
    case NodeKind::Id1:
      return {1, 1};
    case NodeKind::Sym:
      return {2, 2};
    case NodeKind::Copier:
      return {1, 2};
    case NodeKind::Discard:
      return {1, 0};
    case NodeKind::Cocopier:
      return {2, 1};
    case NodeKind::Codiscard:
      return {0, 1};
    case NodeKind::Seq: {
      Type a = typecheck(t->left, sig);
      Type b = typecheck(t->right, sig);
      if (a.out != b.in)
        throw TypeMismatch(print_term(t), "middle interface " + std::to_string(a.out),
                           std::to_string(b.in));
      return {a.in, b.out};
    }
    case NodeKind::Tensor: {
      Type a = typecheck(t->left, sig);
      Type b = typecheck(t->right, sig);
      return {a.in + b.in, a.out + b.out};
    }
  }
  throw TermError("corrupt term node");
}

TermPtr id_n(Color c, int n) {
  if (n <= 0) return id0(c);
  if (n == 1) return id1(c);
  return tensor(c, id1(c), id_n(c, n - 1));
}

TermPtr sym_mn(Color c, int m, int n) {
  if (m <= 0) return id_n(c, n);
  if (n <= 0) return id_n(c, m);
  if (m == 1 && n == 1) return sym(c);
  if (m == 1)
    return seq(c, tensor(c, sym_mn(c, 1, n - 1), id1(c)),
               tensor(c, id_n(c, n - 1), sym(c)));
  return seq(c, tensor(c, id1(c), sym_mn(c, m - 1, n)),
             tensor(c, sym_mn(c, 1, n), id_n(c, m - 1)));
}

TermPtr copier_n(Color c, int n) {
  if (n <= 0) return id0(c);
  if (n == 1) return copier(c);
  return seq(c, tensor(c, copier(c), copier_n(c, n - 1)),
             tensor(c, id1(c), tensor(c, sym_mn(c, 1, n - 1), id_n(c, n - 1))));
}

TermPtr discard_n(Color c, int n) {
  if (n <= 0) return id0(c);
  if (n == 1) return discard(c);
  return tensor(c, discard(c), discard_n(c, n - 1));
}

TermPtr cocopier_n(Color c, int n) {
  if (n <= 0) return id0(c);
  if (n == 1) return cocopier(c);
  return seq(c, tensor(c, id1(c), tensor(c, sym_mn(c, 1, n - 1), id_n(c, n - 1))),
             tensor(c, cocopier(c), cocopier_n(c, n - 1)));
}

TermPtr codiscard_n(Color c, int n) {
  if (n <= 0) return id0(c);
  if (n == 1) return codiscard(c);
  return tensor(c, codiscard(c), codiscard_n(c, n - 1));
}

TermPtr sugar(SugarKind k, Color c, int n, int m) {
  switch (k) {
    case SugarKind::Id:
      return id_n(c, n);
    case SugarKind::Sym:
      return sym_mn(c, m, n);
    case SugarKind::Copier:
      return copier_n(c, n);
    case SugarKind::Discard:
      return discard_n(c, n);
    case SugarKind::Cocopier:
      return cocopier_n(c, n);
    case SugarKind::Codiscard:
      return codiscard_n(c, n);
  }
  throw TermError("corrupt sugar kind");
}

namespace {

const char* atom_word(NodeKind k) {
  switch (k) {
    case NodeKind::Id0: return "id0";
    case NodeKind::Id1: return "id";
    case NodeKind::Sym: return "sw";
    case NodeKind::Copier: return "cp";
    case NodeKind::Discard: return "dc";
    case NodeKind::Cocopier: return "cc";
    case NodeKind::Codiscard: return "cd";
    default: return nullptr;
  }
}

// Composition binds tighter than tensor; both are printed left
// associated, so only right-nested chains and tensor operands of a
// composition need parentheses.
bool needs_parens(const TermPtr& child, NodeKind parent, bool right_side) {
  if (child->kind != NodeKind::Seq && child->kind != NodeKind::Tensor) return false;
  if (parent == NodeKind::Seq)
    return right_side || child->kind == NodeKind::Tensor;
  return right_side && child->kind == NodeKind::Tensor;
}

void print_rec(const TermPtr& t, std::string& out) {
  if (const char* w = atom_word(t->kind)) {
    out += w;
    out += color_sign(t->color);
    return;
  }
  if (t->kind == NodeKind::Gen) {
    out += t->name;
    out += color_sign(t->color);
    return;
  }
  auto emit = [&](const TermPtr& child, bool right_side) {
    bool p = needs_parens(child, t->kind, right_side);
    if (p) out += '(';
    print_rec(child, out);
    if (p) out += ')';
  };
  emit(t->left, false);
  out += ' ';
  out += t->kind == NodeKind::Seq ? ';' : '*';
  out += color_sign(t->color);
  out += ' ';
  emit(t->right, true);
}

struct Token {
  enum Kind { Atom, SeqOp, TensorOp, LParen, RParen, End } kind;
  NodeKind atom;      // Atom with builtin word
  std::string name;   // Atom with declared name; empty for builtins
  Color color;
  size_t pos;
};

struct Lexer {
  const std::string& text;
  size_t i = 0;

  explicit Lexer(const std::string& s) : text(s) {}

  Token next() {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    size_t start = i;
    if (i >= text.size()) return {Token::End, NodeKind::Id0, {}, Color::White, start};
    char ch = text[i];
    if (ch == '(') { ++i; return {Token::LParen, NodeKind::Id0, {}, Color::White, start}; }
    if (ch == ')') { ++i; return {Token::RParen, NodeKind::Id0, {}, Color::White, start}; }
    if (ch == ';' || ch == '*') {
      ++i;
      Color c = read_sign(start);
      return {ch == ';' ? Token::SeqOp : Token::TensorOp, NodeKind::Id0, {}, c, start};
    }
    if (std::isalpha(static_cast<unsigned char>(ch))) {
      size_t j = i + 1;
      while (j < text.size() &&
             (std::isalnum(static_cast<unsigned char>(text[j])) || text[j] == '_'))
        ++j;
      std::string word = text.substr(i, j - i);
      i = j;
      Color c = read_sign(start);
      if (word == "id0") return {Token::Atom, NodeKind::Id0, {}, c, start};
      if (word == "id") return {Token::Atom, NodeKind::Id1, {}, c, start};
      if (word == "sw") return {Token::Atom, NodeKind::Sym, {}, c, start};
      if (word == "cp") return {Token::Atom, NodeKind::Copier, {}, c, start};
      if (word == "dc") return {Token::Atom, NodeKind::Discard, {}, c, start};
      if (word == "cc") return {Token::Atom, NodeKind::Cocopier, {}, c, start};
      if (word == "cd") return {Token::Atom, NodeKind::Codiscard, {}, c, start};
      return {Token::Atom, NodeKind::Gen, word, c, start};
    }
    throw ParseError(start, std::string("unexpected character '") + ch + "'");
  }

  Color read_sign(size_t start) {
    if (i >= text.size() || (text[i] != '+' && text[i] != '-'))
      throw ParseError(start, "expected '+' or '-' color tag");
    return text[i++] == '+' ? Color::White : Color::Black;
  }
};

struct Parser {
  Lexer lex;
  const Signature& sig;
  Token look;

  Parser(const std::string& s, const Signature& g) : lex(s), sig(g) { look = lex.next(); }

  void advance() { look = lex.next(); }

  TermPtr atom() {
    if (look.kind == Token::LParen) {
      advance();
      TermPtr t = tensor_level();
      if (look.kind != Token::RParen) throw ParseError(look.pos, "expected ')'");
      advance();
      return t;
    }
    if (look.kind != Token::Atom)
      throw ParseError(look.pos, "expected an atom or '('");
    TermPtr t;
    if (look.atom == NodeKind::Gen) {
      if (!sig.symbols.count(look.name)) throw UnknownSymbol(look.name);
      t = gen(look.name, look.color);
    } else {
      t = make(look.atom, look.color);
    }
    advance();
    return t;
  }

  TermPtr seq_level() {
    TermPtr t = atom();
    while (look.kind == Token::SeqOp) {
      Color c = look.color;
      advance();
      t = seq(c, t, atom());
    }
    return t;
  }

  TermPtr tensor_level() {
    TermPtr t = seq_level();
    while (look.kind == Token::TensorOp) {
      Color c = look.color;
      advance();
      t = tensor(c, t, seq_level());
    }
    return t;
  }
};

}  // namespace

std::string print_term(const TermPtr& t) {
  std::string out;
  print_rec(t, out);
  return out;
}

TermPtr parse_term(const std::string& text, const Signature& sig) {
  Parser p(text, sig);
  TermPtr t = p.tensor_level();
  if (p.look.kind != Token::End)
    throw ParseError(p.look.pos, "trailing input after term");
  return t;
}

bool is_identity_term(const TermPtr& t, Color c) {
  if (t->color != c) return false;
  switch (t->kind) {
    case NodeKind::Id0:
    case NodeKind::Id1:
      return true;
    case NodeKind::Seq:
    case NodeKind::Tensor:
      return is_identity_term(t->left, c) && is_identity_term(t->right, c);
    default:
      return false;
  }
}

namespace {

// Wire count of a term accepted by is_identity_term.
int identity_width(const TermPtr& t) {
  switch (t->kind) {
    case NodeKind::Id0: return 0;
    case NodeKind::Id1: return 1;
    case NodeKind::Seq: return identity_width(t->left);
    default: return identity_width(t->left) + identity_width(t->right);
  }
}

void flatten(NodeKind k, Color c, const TermPtr& t, std::vector<TermPtr>& out) {
  if (t->kind == k && t->color == c) {
    flatten(k, c, t->left, out);
    flatten(k, c, t->right, out);
  } else {
    out.push_back(t);
  }
}

TermPtr rebuild(NodeKind k, Color c, const std::vector<TermPtr>& fs) {
  TermPtr acc = fs.back();
  for (size_t i = fs.size() - 1; i-- > 0;)
    acc = make(k, c, {}, fs[i], acc);
  return acc;
}

}  // namespace

TermPtr assoc_normalize(const TermPtr& t) {
  switch (t->kind) {
    case NodeKind::Seq: {
      Color c = t->color;
      std::vector<TermPtr> fs;
      flatten(NodeKind::Seq, c, assoc_normalize(t->left), fs);
      flatten(NodeKind::Seq, c, assoc_normalize(t->right), fs);
      std::vector<TermPtr> kept;
      int width = -1;
      for (const auto& f : fs) {
        if (is_identity_term(f, c))
          width = identity_width(f);
        else
          kept.push_back(f);
      }
      if (kept.empty()) return id_n(c, width);
      return rebuild(NodeKind::Seq, c, kept);
    }
    case NodeKind::Tensor: {
      Color c = t->color;
      std::vector<TermPtr> fs;
      flatten(NodeKind::Tensor, c, assoc_normalize(t->left), fs);
      flatten(NodeKind::Tensor, c, assoc_normalize(t->right), fs);
      std::vector<TermPtr> kept;
      for (const auto& f : fs)
        if (!(is_identity_term(f, c) && identity_width(f) == 0)) kept.push_back(f);
      if (kept.empty()) return id0(c);
      return rebuild(NodeKind::Tensor, c, kept);
    }
    default:
      return t;
  }
}

}  // namespace relcalc
