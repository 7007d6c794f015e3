#include "relcalc/semantics.hpp"

#include <algorithm>

namespace relcalc {

Signature FiniteInterpretation::signature() const {
  Signature sig;
  for (const auto& [name, rel] : relations) sig.symbols[name] = {rel.in, rel.out};
  return sig;
}

std::vector<Tuple> all_tuples(int size, int width) {
  std::vector<Tuple> out;
  if (width == 0) {
    out.push_back({});
    return out;
  }
  if (size <= 0) return out;
  Tuple cur(width, 0);
  while (true) {
    out.push_back(cur);
    int i = width - 1;
    while (i >= 0 && cur[i] == size - 1) cur[i--] = 0;
    if (i < 0) break;
    ++cur[i];
  }
  return out;
}

void validate_interpretation(const FiniteInterpretation& I, const Signature& sig) {
  for (const auto& [name, ty] : sig.symbols) {
    auto it = I.relations.find(name);
    if (it == I.relations.end()) throw UnknownSymbol(name);
    const Relation& rel = it->second;
    if (rel.in != ty.in || rel.out != ty.out)
      throw TypeMismatch("relation " + name,
                         std::to_string(ty.in) + " -> " + std::to_string(ty.out),
                         std::to_string(rel.in) + " -> " + std::to_string(rel.out));
    for (const auto& [x, y] : rel.pairs) {
      if (static_cast<int>(x.size()) != ty.in || static_cast<int>(y.size()) != ty.out)
        throw TypeMismatch("relation " + name, "tuple widths " + std::to_string(ty.in) +
                           "/" + std::to_string(ty.out), "other widths");
      for (int v : x)
        if (v < 0 || v >= I.domain_size)
          throw TypeMismatch("relation " + name, "entries in domain", std::to_string(v));
      for (int v : y)
        if (v < 0 || v >= I.domain_size)
          throw TypeMismatch("relation " + name, "entries in domain", std::to_string(v));
    }
  }
}

namespace {

Tuple concat(const Tuple& a, const Tuple& b) {
  Tuple r = a;
  r.insert(r.end(), b.begin(), b.end());
  return r;
}

std::pair<Tuple, Tuple> split(const Tuple& t, int k) {
  return {Tuple(t.begin(), t.begin() + k), Tuple(t.begin() + k, t.end())};
}

Relation eval_rec(const TermPtr& t, const FiniteInterpretation& I, const Signature& sig,
                  std::map<const Term*, Relation>* memo);

Relation eval_node(const TermPtr& t, const FiniteInterpretation& I, const Signature& sig,
                   std::map<const Term*, Relation>* memo) {
  const int size = I.domain_size;
  switch (t->kind) {
    case NodeKind::Gen: {
      auto si = sig.symbols.find(t->name);
      if (si == sig.symbols.end()) throw UnknownSymbol(t->name);
      auto it = I.relations.find(t->name);
      if (it == I.relations.end()) throw UnknownSymbol(t->name);
      const Relation& rho = it->second;
      if (t->color == Color::White) return rho;
      // Converse complement: (y, x) related iff (x, y) is not in rho.
      Relation r{rho.out, rho.in, {}};
      for (const auto& x : all_tuples(size, rho.in))
        for (const auto& y : all_tuples(size, rho.out))
          if (!rho.pairs.count({x, y})) r.pairs.insert({y, x});
      return r;
    }
    case NodeKind::Id0: {
      Relation r{0, 0, {}};
      if (t->color == Color::White) r.pairs.insert({{}, {}});
      return r;
    }
    case NodeKind::Id1: {
      Relation r{1, 1, {}};
      for (int x = 0; x < size; ++x)
        for (int y = 0; y < size; ++y)
          if (t->color == Color::White ? x == y : x != y) r.pairs.insert({{x}, {y}});
      return r;
    }
    case NodeKind::Sym: {
      Relation r{2, 2, {}};
      for (const auto& x : all_tuples(size, 2))
        for (const auto& y : all_tuples(size, 2)) {
          bool swapped = x[0] == y[1] && x[1] == y[0];
          if (t->color == Color::White ? swapped : !swapped) r.pairs.insert({x, y});
        }
      return r;
    }
    case NodeKind::Copier: {
      Relation r{1, 2, {}};
      for (int x = 0; x < size; ++x)
        for (const auto& y : all_tuples(size, 2)) {
          bool diag = x == y[0] && x == y[1];
          if (t->color == Color::White ? diag : !diag) r.pairs.insert({{x}, y});
        }
      return r;
    }
    case NodeKind::Discard: {
      Relation r{1, 0, {}};
      if (t->color == Color::White)
        for (int x = 0; x < size; ++x) r.pairs.insert({{x}, {}});
      return r;
    }
    case NodeKind::Cocopier: {
      Relation r{2, 1, {}};
      for (const auto& x : all_tuples(size, 2))
        for (int y = 0; y < size; ++y) {
          bool diag = y == x[0] && y == x[1];
          if (t->color == Color::White ? diag : !diag) r.pairs.insert({x, {y}});
        }
      return r;
    }
    case NodeKind::Codiscard: {
      Relation r{0, 1, {}};
      if (t->color == Color::White)
        for (int y = 0; y < size; ++y) r.pairs.insert({{}, {y}});
      return r;
    }
    case NodeKind::Seq: {
      Relation a = eval_rec(t->left, I, sig, memo);
      Relation b = eval_rec(t->right, I, sig, memo);
      if (a.out != b.in)
        throw TypeMismatch(print_term(t), "middle interface " + std::to_string(a.out),
                           std::to_string(b.in));
      Relation r{a.in, b.out, {}};
      if (t->color == Color::White) {
        for (const auto& [x, y1] : a.pairs)
          for (const auto& [y2, z] : b.pairs)
            if (y1 == y2) r.pairs.insert({x, z});
      } else {
        // Universal middle: every interface tuple satisfies one side.
        auto mids = all_tuples(size, a.out);
        for (const auto& x : all_tuples(size, a.in))
          for (const auto& z : all_tuples(size, b.out)) {
            bool ok = true;
            for (const auto& y : mids) {
              if (!a.pairs.count({x, y}) && !b.pairs.count({y, z})) {
                ok = false;
                break;
              }
            }
            if (ok) r.pairs.insert({x, z});
          }
      }
      return r;
    }
    case NodeKind::Tensor: {
      Relation a = eval_rec(t->left, I, sig, memo);
      Relation b = eval_rec(t->right, I, sig, memo);
      Relation r{a.in + b.in, a.out + b.out, {}};
      if (t->color == Color::White) {
        for (const auto& [x1, y1] : a.pairs)
          for (const auto& [x2, y2] : b.pairs)
            r.pairs.insert({concat(x1, x2), concat(y1, y2)});
      } else {
        for (const auto& x : all_tuples(size, r.in))
          for (const auto& y : all_tuples(size, r.out)) {
            auto [x1, x2] = split(x, a.in);
            auto [y1, y2] = split(y, a.out);
            if (a.pairs.count({x1, y1}) || b.pairs.count({x2, y2}))
              r.pairs.insert({x, y});
          }
      }
      return r;
    }
  }
  throw TermError("corrupt term node");
}

Relation eval_rec(const TermPtr& t, const FiniteInterpretation& I, const Signature& sig,
                  std::map<const Term*, Relation>* memo) {
  if (memo) {
    auto hit = memo->find(t.get());
    if (hit != memo->end()) return hit->second;
  }
  Relation r = eval_node(t, I, sig, memo);
  if (memo) memo->emplace(t.get(), r);
  return r;
}

}  // namespace

Relation eval(const TermPtr& t, const FiniteInterpretation& I, const Signature& sig) {
  return eval_rec(t, I, sig, nullptr);
}

Relation eval(const TermPtr& t, const FiniteInterpretation& I) {
  Signature sig = I.signature();
  return eval_rec(t, I, sig, nullptr);
}

Relation eval_cached(const TermPtr& t, const FiniteInterpretation& I, const Signature& sig,
                     std::map<const Term*, Relation>& cache) {
  return eval_rec(t, I, sig, &cache);
}

bool semantic_leq(const TermPtr& c, const TermPtr& d, const FiniteInterpretation& I,
                  const Signature& sig) {
  Type tc = typecheck(c, sig);
  Type td = typecheck(d, sig);
  if (!(tc == td))
    throw TypeMismatch("ordered pair of terms",
                       std::to_string(tc.in) + " -> " + std::to_string(tc.out),
                       std::to_string(td.in) + " -> " + std::to_string(td.out));
  Relation rc = eval(c, I, sig);
  Relation rd = eval(d, I, sig);
  return std::includes(rd.pairs.begin(), rd.pairs.end(), rc.pairs.begin(),
                       rc.pairs.end());
}

InterpretationStream::InterpretationStream(const Signature& sig, std::vector<int> sizes,
                                           long budget)
    : sig_(sig), sizes_(std::move(sizes)), budget_(budget) {}

bool InterpretationStream::start_size() {
  if (size_index_ >= sizes_.size()) return false;
  int size = sizes_[size_index_];
  symbols_.clear();
  for (const auto& [name, ty] : sig_.symbols) {
    SymbolState st;
    st.name = name;
    st.in = ty.in;
    st.out = ty.out;
    for (const auto& x : all_tuples(size, ty.in))
      for (const auto& y : all_tuples(size, ty.out)) st.pair_list.push_back({x, y});
    std::sort(st.pair_list.begin(), st.pair_list.end());
    st.mask.assign(st.pair_list.size(), false);
    symbols_.push_back(std::move(st));
  }
  size_started_ = true;
  return true;
}

bool InterpretationStream::advance() {
  // Binary increment; the alphabetically last symbol carries first.
  for (size_t s = symbols_.size(); s-- > 0;) {
    auto& mask = symbols_[s].mask;
    size_t i = 0;
    while (i < mask.size() && mask[i]) mask[i++] = false;
    if (i < mask.size()) {
      mask[i] = true;
      return true;
    }
  }
  return false;
}

std::optional<FiniteInterpretation> InterpretationStream::next() {
  if (done_) return std::nullopt;
  if (!size_started_) {
    if (!start_size()) {
      done_ = true;
      return std::nullopt;
    }
  } else if (!advance()) {
    ++size_index_;
    size_started_ = false;
    return next();
  }
  if (yielded_ >= budget_) {
    exceeded_ = true;
    done_ = true;
    return std::nullopt;
  }
  FiniteInterpretation I;
  I.domain_size = sizes_[size_index_];
  for (const auto& st : symbols_) {
    Relation rel{st.in, st.out, {}};
    for (size_t i = 0; i < st.mask.size(); ++i)
      if (st.mask[i]) rel.pairs.insert(st.pair_list[i]);
    I.relations[st.name] = std::move(rel);
  }
  ++yielded_;
  return I;
}

SearchResult countermodel_search(const TermPtr& c, const TermPtr& d, const Signature& sig,
                                 const std::vector<int>& sizes, long budget) {
  SearchResult res;
  InterpretationStream stream(sig, sizes, budget);
  while (auto I = stream.next()) {
    ++res.checked;
    if (!semantic_leq(c, d, *I, sig)) {
      res.countermodel = std::move(I);
      return res;
    }
  }
  res.budget_exceeded = stream.budget_exceeded();
  return res;
}

}  // namespace relcalc
