#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "ff/sexpr.hpp"

namespace ff {

// ---------------------------------------------------------------------------
// Sorts and variables
// ---------------------------------------------------------------------------

enum class Sort : uint8_t { Number, SetSort };

struct Var {
  Sort sort = Sort::Number;
  uint32_t index = 0;

  bool operator==(const Var& o) const { return sort == o.sort && index == o.index; }
  bool operator!=(const Var& o) const { return !(*this == o); }
  bool operator<(const Var& o) const {
    if (sort != o.sort) return sort < o.sort;
    return index < o.index;
  }
  std::string name() const {
    return (sort == Sort::Number ? "x" : "X") + std::to_string(index);
  }
};

inline Var nv(uint32_t i) { return Var{Sort::Number, i}; }
inline Var sv(uint32_t i) { return Var{Sort::SetSort, i}; }

// ---------------------------------------------------------------------------
// Languages
// ---------------------------------------------------------------------------
// L_I:     one sort, 0 1 + ·, relations = ≤ plus the defined predicates.
// L_II:    two sorts, adds ∈ (no equality for the second sort).
// L_I_cut: L_I plus the unary predicate for the distinguished cut.

enum class Language : uint8_t { LI, LII, LIcut };

inline std::string languageName(Language l) {
  switch (l) {
    case Language::LI: return "LI";
    case Language::LII: return "LII";
    case Language::LIcut: return "LIcut";
  }
  return "?";
}

inline std::optional<Language> languageFromName(const std::string& s) {
  if (s == "LI") return Language::LI;
  if (s == "LII") return Language::LII;
  if (s == "LIcut") return Language::LIcut;
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Terms
// ---------------------------------------------------------------------------

struct TermNode;
using Term = std::shared_ptr<const TermNode>;

struct TermNode {
  enum class Kind : uint8_t { Zero, One, Variable, Add, Mul, MetaTerm };
  Kind kind;
  Var var{};           // Variable (always Sort::Number)
  Term a, b;           // Add / Mul
  std::string meta;    // MetaTerm slot name (templates only)
  uint32_t size_ = 1;  // symbol count
  uint64_t hash_ = 0;
  uint64_t varsBloom_ = 0;  // bits for every variable occurring below
};

inline uint64_t varBit(Var v) {
  uint64_t h = (uint64_t(v.index) << 1) | uint64_t(v.sort);
  h *= 0x9e3779b97f4a7c15ull;
  return 1ull << (h >> 58);
}

namespace detail {
inline uint64_t mix(uint64_t h, uint64_t v) {
  h ^= v + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
  return h;
}
}  // namespace detail

inline Term mkTerm(TermNode n) {
  switch (n.kind) {
    case TermNode::Kind::Zero: n.size_ = 1; n.hash_ = 0x10; break;
    case TermNode::Kind::One: n.size_ = 1; n.hash_ = 0x11; break;
    case TermNode::Kind::Variable:
      n.size_ = 1;
      n.hash_ = detail::mix(0x12, (uint64_t(n.var.index) << 1) | uint64_t(n.var.sort));
      n.varsBloom_ = varBit(n.var);
      break;
    case TermNode::Kind::Add:
    case TermNode::Kind::Mul:
      n.size_ = 1 + n.a->size_ + n.b->size_;
      n.hash_ = detail::mix(detail::mix(n.kind == TermNode::Kind::Add ? 0x13 : 0x14, n.a->hash_), n.b->hash_);
      n.varsBloom_ = n.a->varsBloom_ | n.b->varsBloom_;
      break;
    case TermNode::Kind::MetaTerm:
      n.size_ = 1;
      n.hash_ = detail::mix(0x15, std::hash<std::string>{}(n.meta));
      break;
  }
  return std::make_shared<const TermNode>(std::move(n));
}

inline Term tZero() {
  static const Term t = mkTerm(TermNode{TermNode::Kind::Zero});
  return t;
}
inline Term tOne() {
  static const Term t = mkTerm(TermNode{TermNode::Kind::One});
  return t;
}
inline Term tVar(Var v) {
  if (v.sort != Sort::Number) throw std::runtime_error("set variable used in term position: " + v.name());
  TermNode n{TermNode::Kind::Variable};
  n.var = v;
  return mkTerm(std::move(n));
}
inline Term tVar(uint32_t i) { return tVar(nv(i)); }
inline Term tAdd(Term a, Term b) {
  TermNode n{TermNode::Kind::Add};
  n.a = std::move(a);
  n.b = std::move(b);
  return mkTerm(std::move(n));
}
inline Term tMul(Term a, Term b) {
  TermNode n{TermNode::Kind::Mul};
  n.a = std::move(a);
  n.b = std::move(b);
  return mkTerm(std::move(n));
}
inline Term tMeta(std::string name) {
  TermNode n{TermNode::Kind::MetaTerm};
  n.meta = std::move(name);
  return mkTerm(std::move(n));
}

// Numerals as 1+1+...+1 (right-associated); 0 and 1 are the constants.
inline Term tNum(uint64_t k) {
  if (k == 0) return tZero();
  Term t = tOne();
  for (uint64_t i = 1; i < k; ++i) t = tAdd(tOne(), t);
  return t;
}

// Cantor-style pairing term (x+y)*(x+y)+x; injective on N^2.
inline Term tPair(Term x, Term y) {
  Term s = tAdd(x, y);
  return tAdd(tMul(s, s), x);
}

inline bool termEq(const Term& a, const Term& b) {
  if (a.get() == b.get()) return true;
  if (a->hash_ != b->hash_ || a->kind != b->kind || a->size_ != b->size_) return false;
  switch (a->kind) {
    case TermNode::Kind::Zero:
    case TermNode::Kind::One: return true;
    case TermNode::Kind::Variable: return a->var == b->var;
    case TermNode::Kind::Add:
    case TermNode::Kind::Mul: return termEq(a->a, b->a) && termEq(a->b, b->b);
    case TermNode::Kind::MetaTerm: return a->meta == b->meta;
  }
  return false;
}

// ---------------------------------------------------------------------------
// Atoms and formulas
// ---------------------------------------------------------------------------
// Official connectives are ¬, ⇒ and ∀ only. Everything else is sugar that
// desugars at construction/parse time.

enum class Rel : uint8_t {
  Eq,       // t1 = t2
  Leq,      // t1 ≤ t2
  SetMem,   // t ∈ X          (L_II)
  CutMem,   // 𝕀(t)           (L_I_cut)
  AckMem,   // t1 ∈_Ack t2    (defined Δ0 predicate)
  Pow2,     // 2^t1 = t2      (defined Δ0 predicate)
  SupExp,   // 2_{t1}(t2)=t3  (defined Δ0 predicate)
  Card,     // |t1| = t2      (defined Δ0 predicate)
};

inline int relArity(Rel r) {
  switch (r) {
    case Rel::Eq: case Rel::Leq: case Rel::AckMem: case Rel::Pow2: case Rel::Card: return 2;
    case Rel::SetMem: return 2;  // term + set variable
    case Rel::CutMem: return 1;
    case Rel::SupExp: return 3;
  }
  return 0;
}

struct FormulaNode;
using Formula = std::shared_ptr<const FormulaNode>;

struct FormulaNode {
  enum class Kind : uint8_t { Atom, Not, Imp, Forall, MetaFormula };
  Kind kind;
  // Atom
  Rel rel = Rel::Eq;
  std::vector<Term> args;  // number-sort term arguments
  Var setArg{};            // SetMem's set variable
  // Not / Imp / Forall
  Formula a, b;
  Var qvar{};              // Forall
  // MetaFormula slot (templates only)
  std::string meta;

  uint64_t size_ = 0;
  uint64_t hash_ = 0;
  uint64_t varsBloom_ = 0;  // bits for every variable occurring below
};

inline Formula mkFormula(FormulaNode n) {
  uint64_t h = 0, sz = 0, bloom = 0;
  switch (n.kind) {
    case FormulaNode::Kind::Atom: {
      h = detail::mix(0x20, uint64_t(n.rel));
      sz = 1;
      for (auto& t : n.args) {
        h = detail::mix(h, t->hash_);
        sz += t->size_;
        bloom |= t->varsBloom_;
      }
      if (n.rel == Rel::SetMem) {
        h = detail::mix(h, (uint64_t(n.setArg.index) << 1) | 1u);
        sz += 1;
        bloom |= varBit(n.setArg);
      }
      break;
    }
    case FormulaNode::Kind::Not:
      h = detail::mix(0x21, n.a->hash_);
      sz = 1 + n.a->size_;
      bloom = n.a->varsBloom_;
      break;
    case FormulaNode::Kind::Imp:
      h = detail::mix(detail::mix(0x22, n.a->hash_), n.b->hash_);
      sz = 1 + n.a->size_ + n.b->size_;
      bloom = n.a->varsBloom_ | n.b->varsBloom_;
      break;
    case FormulaNode::Kind::Forall:
      h = detail::mix(detail::mix(0x23, (uint64_t(n.qvar.index) << 1) | uint64_t(n.qvar.sort)), n.a->hash_);
      sz = 2 + n.a->size_;
      bloom = n.a->varsBloom_ | varBit(n.qvar);
      break;
    case FormulaNode::Kind::MetaFormula:
      h = detail::mix(0x24, std::hash<std::string>{}(n.meta));
      sz = 1;
      break;
  }
  n.hash_ = h;
  n.size_ = sz;
  n.varsBloom_ = bloom;
  return std::make_shared<const FormulaNode>(std::move(n));
}

inline Formula fAtom(Rel r, std::vector<Term> args) {
  if ((int)args.size() != relArity(r) || r == Rel::SetMem)
    throw std::runtime_error("bad atom arity");
  FormulaNode n{FormulaNode::Kind::Atom};
  n.rel = r;
  n.args = std::move(args);
  return mkFormula(std::move(n));
}
inline Formula fEq(Term a, Term b) { return fAtom(Rel::Eq, {std::move(a), std::move(b)}); }
inline Formula fLeq(Term a, Term b) { return fAtom(Rel::Leq, {std::move(a), std::move(b)}); }
inline Formula fAck(Term a, Term b) { return fAtom(Rel::AckMem, {std::move(a), std::move(b)}); }
inline Formula fPow2(Term a, Term b) { return fAtom(Rel::Pow2, {std::move(a), std::move(b)}); }
inline Formula fSupExp(Term y, Term x, Term z) { return fAtom(Rel::SupExp, {std::move(y), std::move(x), std::move(z)}); }
inline Formula fCard(Term a, Term b) { return fAtom(Rel::Card, {std::move(a), std::move(b)}); }
inline Formula fCut(Term a) { return fAtom(Rel::CutMem, {std::move(a)}); }
inline Formula fIn(Term t, Var X) {
  if (X.sort != Sort::SetSort) throw std::runtime_error("∈ needs a set variable on the right");
  FormulaNode n{FormulaNode::Kind::Atom};
  n.rel = Rel::SetMem;
  n.args = {std::move(t)};
  n.setArg = X;
  return mkFormula(std::move(n));
}
inline Formula fNot(Formula a) {
  FormulaNode n{FormulaNode::Kind::Not};
  n.a = std::move(a);
  return mkFormula(std::move(n));
}
inline Formula fImp(Formula a, Formula b) {
  FormulaNode n{FormulaNode::Kind::Imp};
  n.a = std::move(a);
  n.b = std::move(b);
  return mkFormula(std::move(n));
}
inline Formula fForall(Var v, Formula a) {
  FormulaNode n{FormulaNode::Kind::Forall};
  n.qvar = v;
  n.a = std::move(a);
  return mkFormula(std::move(n));
}
inline Formula fMeta(std::string name) {
  FormulaNode n{FormulaNode::Kind::MetaFormula};
  n.meta = std::move(name);
  return mkFormula(std::move(n));
}

// Sugar constructors; these desugar immediately.
inline Formula fAnd(Formula a, Formula b) { return fNot(fImp(std::move(a), fNot(std::move(b)))); }
inline Formula fOr(Formula a, Formula b) { return fImp(fNot(std::move(a)), std::move(b)); }
inline Formula fIff(Formula a, Formula b) {
  Formula ab = fImp(a, b);
  Formula ba = fImp(std::move(b), std::move(a));
  return fAnd(std::move(ab), std::move(ba));
}
inline Formula fExists(Var v, Formula a) { return fNot(fForall(v, fNot(std::move(a)))); }
inline Formula fLt(Term a, Term b) { return fNot(fLeq(std::move(b), std::move(a))); }
// Bounded quantifiers, the canonical Δ0 patterns:
//   ∀y≤t φ  :=  ∀y(y≤t ⇒ φ)        ∃y≤t φ  :=  ¬∀y(y≤t ⇒ ¬φ)
inline Formula fForallLeq(Var y, Term t, Formula a) {
  return fForall(y, fImp(fLeq(tVar(y), std::move(t)), std::move(a)));
}
inline Formula fExistsLeq(Var y, Term t, Formula a) {
  return fNot(fForall(y, fImp(fLeq(tVar(y), std::move(t)), fNot(std::move(a)))));
}
// Guarded quantifiers over an arbitrary guard:
//   ∀y(g ⇒ φ)   and   ∃y(g ∧ φ) := ¬∀y(g ⇒ ¬φ)
inline Formula fForallSuch(Var y, Formula guard, Formula a) {
  return fForall(y, fImp(std::move(guard), std::move(a)));
}
inline Formula fExistsSuch(Var y, Formula guard, Formula a) {
  return fNot(fForall(y, fImp(std::move(guard), fNot(std::move(a)))));
}

inline Formula conj(const std::vector<Formula>& fs) {
  if (fs.empty()) throw std::runtime_error("conj of empty list");
  Formula r = fs.back();
  for (size_t i = fs.size() - 1; i-- > 0;) r = fAnd(fs[i], r);
  return r;
}

inline bool formulaEq(const Formula& a, const Formula& b) {
  if (a.get() == b.get()) return true;
  if (a->hash_ != b->hash_ || a->kind != b->kind || a->size_ != b->size_) return false;
  switch (a->kind) {
    case FormulaNode::Kind::Atom: {
      if (a->rel != b->rel) return false;
      if (a->rel == Rel::SetMem && a->setArg != b->setArg) return false;
      for (size_t i = 0; i < a->args.size(); ++i)
        if (!termEq(a->args[i], b->args[i])) return false;
      return true;
    }
    case FormulaNode::Kind::Not: return formulaEq(a->a, b->a);
    case FormulaNode::Kind::Imp: return formulaEq(a->a, b->a) && formulaEq(a->b, b->b);
    case FormulaNode::Kind::Forall: return a->qvar == b->qvar && formulaEq(a->a, b->a);
    case FormulaNode::Kind::MetaFormula: return a->meta == b->meta;
  }
  return false;
}

// The size measure: symbol occurrences in the official form, parentheses not
// counted; ∀ together with its bound variable counts two symbols.
inline uint64_t size(const Term& t) { return t->size_; }
inline uint64_t size(const Formula& f) { return f->size_; }

// ---------------------------------------------------------------------------
// Free variables, substitution, renaming
// ---------------------------------------------------------------------------

inline void freeVarsTerm(const Term& t, std::set<Var>& out) {
  switch (t->kind) {
    case TermNode::Kind::Variable: out.insert(t->var); break;
    case TermNode::Kind::Add:
    case TermNode::Kind::Mul:
      freeVarsTerm(t->a, out);
      freeVarsTerm(t->b, out);
      break;
    default: break;
  }
}

inline void freeVarsInto(const Formula& f, std::set<Var>& bound, std::set<Var>& out) {
  switch (f->kind) {
    case FormulaNode::Kind::Atom: {
      std::set<Var> vs;
      for (auto& t : f->args) freeVarsTerm(t, vs);
      if (f->rel == Rel::SetMem) vs.insert(f->setArg);
      for (auto& v : vs)
        if (!bound.count(v)) out.insert(v);
      break;
    }
    case FormulaNode::Kind::Not: freeVarsInto(f->a, bound, out); break;
    case FormulaNode::Kind::Imp:
      freeVarsInto(f->a, bound, out);
      freeVarsInto(f->b, bound, out);
      break;
    case FormulaNode::Kind::Forall: {
      bool was = bound.count(f->qvar) > 0;
      bound.insert(f->qvar);
      freeVarsInto(f->a, bound, out);
      if (!was) bound.erase(f->qvar);
      break;
    }
    case FormulaNode::Kind::MetaFormula: break;
  }
}

inline std::set<Var> freeVars(const Formula& f) {
  std::set<Var> bound, out;
  freeVarsInto(f, bound, out);
  return out;
}

inline std::set<Var> freeVars(const Term& t) {
  std::set<Var> out;
  freeVarsTerm(t, out);
  return out;
}

inline bool isFreeInScan(Var v, const Formula& f) {
  if (!(f->varsBloom_ & varBit(v))) return false;
  switch (f->kind) {
    case FormulaNode::Kind::Atom: {
      for (auto& t : f->args) {
        std::set<Var> vs;
        freeVarsTerm(t, vs);
        if (vs.count(v)) return true;
      }
      return f->rel == Rel::SetMem && f->setArg == v;
    }
    case FormulaNode::Kind::Not: return isFreeInScan(v, f->a);
    case FormulaNode::Kind::Imp: return isFreeInScan(v, f->a) || isFreeInScan(v, f->b);
    case FormulaNode::Kind::Forall: return f->qvar != v && isFreeInScan(v, f->a);
    case FormulaNode::Kind::MetaFormula: return false;
  }
  return false;
}

inline bool isFreeIn(Var v, const Formula& f) { return isFreeInScan(v, f); }

// Free variables in order of first occurrence (left to right, terms
// included). Renaming a free variable preserves this order, which the
// forcing translation relies on for FT5.
inline void freeVarsOrderedTerm(const Term& t, std::set<Var>& bound, std::vector<Var>& out,
                                std::set<Var>& seen) {
  switch (t->kind) {
    case TermNode::Kind::Variable:
      if (!bound.count(t->var) && !seen.count(t->var)) {
        seen.insert(t->var);
        out.push_back(t->var);
      }
      break;
    case TermNode::Kind::Add:
    case TermNode::Kind::Mul:
      freeVarsOrderedTerm(t->a, bound, out, seen);
      freeVarsOrderedTerm(t->b, bound, out, seen);
      break;
    default: break;
  }
}

inline void freeVarsOrderedInto(const Formula& f, std::set<Var>& bound, std::vector<Var>& out,
                                std::set<Var>& seen) {
  switch (f->kind) {
    case FormulaNode::Kind::Atom:
      for (auto& t : f->args) freeVarsOrderedTerm(t, bound, out, seen);
      if (f->rel == Rel::SetMem && !bound.count(f->setArg) && !seen.count(f->setArg)) {
        seen.insert(f->setArg);
        out.push_back(f->setArg);
      }
      break;
    case FormulaNode::Kind::Not: freeVarsOrderedInto(f->a, bound, out, seen); break;
    case FormulaNode::Kind::Imp:
      freeVarsOrderedInto(f->a, bound, out, seen);
      freeVarsOrderedInto(f->b, bound, out, seen);
      break;
    case FormulaNode::Kind::Forall: {
      bool was = bound.count(f->qvar) > 0;
      bound.insert(f->qvar);
      freeVarsOrderedInto(f->a, bound, out, seen);
      if (!was) bound.erase(f->qvar);
      break;
    }
    case FormulaNode::Kind::MetaFormula: break;
  }
}

inline std::vector<Var> freeVarsOrdered(const Formula& f) {
  std::set<Var> bound, seen;
  std::vector<Var> out;
  freeVarsOrderedInto(f, bound, out, seen);
  return out;
}

inline void allVarsTerm(const Term& t, std::set<Var>& out) { freeVarsTerm(t, out); }

inline void allVars(const Formula& f, std::set<Var>& out) {
  switch (f->kind) {
    case FormulaNode::Kind::Atom:
      for (auto& t : f->args) allVarsTerm(t, out);
      if (f->rel == Rel::SetMem) out.insert(f->setArg);
      break;
    case FormulaNode::Kind::Not: allVars(f->a, out); break;
    case FormulaNode::Kind::Imp:
      allVars(f->a, out);
      allVars(f->b, out);
      break;
    case FormulaNode::Kind::Forall:
      out.insert(f->qvar);
      allVars(f->a, out);
      break;
    case FormulaNode::Kind::MetaFormula: break;
  }
}

// Deterministic fresh variable: smallest index of the given sort not in
// `used`.
inline Var freshVar(Sort sort, const std::set<Var>& used) {
  uint32_t i = 0;
  while (used.count(Var{sort, i})) ++i;
  return Var{sort, i};
}

inline Term substTerm(const Term& t, Var x, const Term& repl) {
  switch (t->kind) {
    case TermNode::Kind::Variable: return t->var == x ? repl : t;
    case TermNode::Kind::Add: {
      Term a = substTerm(t->a, x, repl), b = substTerm(t->b, x, repl);
      if (a.get() == t->a.get() && b.get() == t->b.get()) return t;
      return tAdd(a, b);
    }
    case TermNode::Kind::Mul: {
      Term a = substTerm(t->a, x, repl), b = substTerm(t->b, x, repl);
      if (a.get() == t->a.get() && b.get() == t->b.get()) return t;
      return tMul(a, b);
    }
    default: return t;
  }
}

// Capture-avoiding substitution. For the number sort `repl` is a term; for
// the set sort `setRepl` names the replacement variable. Bound variables that
// would capture are renamed to the smallest unused index.
struct Subst {
  Var x;
  Term repl;     // when x.sort == Number
  Var setRepl;   // when x.sort == SetSort
};

// Sentinel index used transiently while renaming a captured binder; it never
// appears in a returned formula.
inline constexpr uint32_t kRenameSentinel = 0xfffffffeu;

inline Formula substituteImpl(const Formula& f, const Subst& s) {
  switch (f->kind) {
    case FormulaNode::Kind::Atom: {
      if (s.x.sort == Sort::Number) {
        std::vector<Term> args;
        args.reserve(f->args.size());
        bool changed = false;
        for (auto& t : f->args) {
          Term nt = substTerm(t, s.x, s.repl);
          changed |= nt.get() != t.get();
          args.push_back(std::move(nt));
        }
        if (!changed) return f;
        FormulaNode n{FormulaNode::Kind::Atom};
        n.rel = f->rel;
        n.args = std::move(args);
        n.setArg = f->setArg;
        return mkFormula(std::move(n));
      }
      if (f->rel == Rel::SetMem && f->setArg == s.x) {
        return fIn(f->args[0], s.setRepl);
      }
      return f;
    }
    case FormulaNode::Kind::Not: {
      Formula a = substituteImpl(f->a, s);
      return a.get() == f->a.get() ? f : fNot(a);
    }
    case FormulaNode::Kind::Imp: {
      Formula a = substituteImpl(f->a, s);
      Formula b = substituteImpl(f->b, s);
      return (a.get() == f->a.get() && b.get() == f->b.get()) ? f : fImp(a, b);
    }
    case FormulaNode::Kind::Forall: {
      if (f->qvar == s.x) return f;  // x bound here; nothing to do below
      if (!(f->varsBloom_ & varBit(s.x)) || !isFreeIn(s.x, f)) return f;
      std::set<Var> replFv;
      if (s.x.sort == Sort::Number)
        freeVarsTerm(s.repl, replFv);
      else
        replFv.insert(s.setRepl);
      if (replFv.count(f->qvar)) {
        // Rename through a sentinel, then pick the smallest index absent from
        // the substituted body. Computing the fresh name from the *result*
        // keeps substitution composition path-independent.
        Var sentinel{f->qvar.sort, kRenameSentinel};
        Subst toSentinel;
        toSentinel.x = f->qvar;
        if (f->qvar.sort == Sort::Number)
          toSentinel.repl = tVar(sentinel);
        else
          toSentinel.setRepl = sentinel;
        Formula body = substituteImpl(substituteImpl(f->a, toSentinel), s);
        std::set<Var> used;
        allVars(body, used);
        Var fresh = freshVar(f->qvar.sort, used);
        Subst fromSentinel;
        fromSentinel.x = sentinel;
        if (f->qvar.sort == Sort::Number)
          fromSentinel.repl = tVar(fresh);
        else
          fromSentinel.setRepl = fresh;
        return fForall(fresh, substituteImpl(body, fromSentinel));
      }
      Formula a = substituteImpl(f->a, s);
      return a.get() == f->a.get() ? f : fForall(f->qvar, a);
    }
    case FormulaNode::Kind::MetaFormula: return f;
  }
  return f;
}

inline Formula substitute(const Formula& f, Var x, const Term& t) {
  if (x.sort != Sort::Number) throw std::runtime_error("substitute: sort mismatch (set variable, term replacement)");
  Subst s;
  s.x = x;
  s.repl = t;
  return substituteImpl(f, s);
}

inline Formula substituteSet(const Formula& f, Var X, Var Y) {
  if (X.sort != Sort::SetSort || Y.sort != Sort::SetSort)
    throw std::runtime_error("substituteSet: sort mismatch");
  Subst s;
  s.x = X;
  s.setRepl = Y;
  return substituteImpl(f, s);
}

inline Formula substituteVar(const Formula& f, Var x, Var y) {
  if (x.sort != y.sort) throw std::runtime_error("substituteVar: sort mismatch");
  if (x.sort == Sort::Number) return substitute(f, x, tVar(y));
  return substituteSet(f, x, y);
}

// ---------------------------------------------------------------------------
// Meta-slot instantiation (templates, ledger families, axiom schemes)
// ---------------------------------------------------------------------------

struct MetaBindings {
  std::map<std::string, Formula> formulas;
  std::map<std::string, Term> terms;

  bool empty() const { return formulas.empty() && terms.empty(); }
};

inline Term instantiateTerm(const Term& t, const MetaBindings& b) {
  switch (t->kind) {
    case TermNode::Kind::MetaTerm: {
      auto it = b.terms.find(t->meta);
      if (it == b.terms.end()) throw std::runtime_error("unbound term slot " + t->meta);
      return it->second;
    }
    case TermNode::Kind::Add: return tAdd(instantiateTerm(t->a, b), instantiateTerm(t->b, b));
    case TermNode::Kind::Mul: return tMul(instantiateTerm(t->a, b), instantiateTerm(t->b, b));
    default: return t;
  }
}

inline Formula instantiate(const Formula& f, const MetaBindings& b) {
  switch (f->kind) {
    case FormulaNode::Kind::MetaFormula: {
      auto it = b.formulas.find(f->meta);
      if (it == b.formulas.end()) throw std::runtime_error("unbound formula slot " + f->meta);
      return it->second;
    }
    case FormulaNode::Kind::Atom: {
      FormulaNode n{FormulaNode::Kind::Atom};
      n.rel = f->rel;
      n.setArg = f->setArg;
      for (auto& t : f->args) n.args.push_back(instantiateTerm(t, b));
      return mkFormula(std::move(n));
    }
    case FormulaNode::Kind::Not: return fNot(instantiate(f->a, b));
    case FormulaNode::Kind::Imp: return fImp(instantiate(f->a, b), instantiate(f->b, b));
    case FormulaNode::Kind::Forall: return fForall(f->qvar, instantiate(f->a, b));
  }
  return f;
}

inline bool hasMetaSlots(const Formula& f) {
  switch (f->kind) {
    case FormulaNode::Kind::MetaFormula: return true;
    case FormulaNode::Kind::Atom:
      for (auto& t : f->args) {
        std::function<bool(const Term&)> go = [&](const Term& u) -> bool {
          if (u->kind == TermNode::Kind::MetaTerm) return true;
          if (u->kind == TermNode::Kind::Add || u->kind == TermNode::Kind::Mul)
            return go(u->a) || go(u->b);
          return false;
        };
        if (go(t)) return true;
      }
      return false;
    case FormulaNode::Kind::Not: return hasMetaSlots(f->a);
    case FormulaNode::Kind::Imp: return hasMetaSlots(f->a) || hasMetaSlots(f->b);
    case FormulaNode::Kind::Forall: return hasMetaSlots(f->a);
  }
  return false;
}

// ---------------------------------------------------------------------------
// Language membership check
// ---------------------------------------------------------------------------

inline bool relAllowed(Rel r, Language l) {
  switch (r) {
    case Rel::SetMem: return l == Language::LII;
    case Rel::CutMem: return l == Language::LIcut;
    default: return true;  // =, ≤ and the defined Δ0 predicates live everywhere
  }
}

inline bool inLanguage(const Formula& f, Language l) {
  switch (f->kind) {
    case FormulaNode::Kind::Atom:
      return relAllowed(f->rel, l);
    case FormulaNode::Kind::Not: return inLanguage(f->a, l);
    case FormulaNode::Kind::Imp: return inLanguage(f->a, l) && inLanguage(f->b, l);
    case FormulaNode::Kind::Forall:
      if (f->qvar.sort == Sort::SetSort && l != Language::LII) return false;
      return inLanguage(f->a, l);
    case FormulaNode::Kind::MetaFormula: return true;
  }
  return false;
}

inline bool isSentence(const Formula& f) { return freeVars(f).empty(); }

}  // namespace ff
