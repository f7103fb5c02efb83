#pragma once

// Syntactic formula classification: Δ0 via the bounded-quantifier grammar,
// Σn/Πn via strict quantifier-prefix scanning over a Δ0 matrix, ∀Π03 for the
// pipeline gate. Bounded quantifiers are the exact official patterns
//   ∀y(y≤t ⇒ φ)   and   ¬∀y(y≤t ⇒ ¬φ)     with y not free in t.

#include <optional>

#include "ff/syntax.hpp"

namespace ff {

struct FormulaClass {
  enum class Tag { Delta0, SigmaN, PiN, Delta0_0, Sigma0_N, Pi0_N, AllPi03, Other };
  Tag tag = Tag::Other;
  int n = 0;  // hierarchy level for SigmaN/PiN/Sigma0_N/Pi0_N

  bool operator==(const FormulaClass& o) const { return tag == o.tag && n == o.n; }
  std::string str() const {
    switch (tag) {
      case Tag::Delta0: return "Delta0";
      case Tag::SigmaN: return "Sigma" + std::to_string(n);
      case Tag::PiN: return "Pi" + std::to_string(n);
      case Tag::Delta0_0: return "Delta0_0";
      case Tag::Sigma0_N: return "Sigma0_" + std::to_string(n);
      case Tag::Pi0_N: return "Pi0_" + std::to_string(n);
      case Tag::AllPi03: return "AllPi03";
      case Tag::Other: return "Other";
    }
    return "?";
  }
};

// Matches the bounded-universal pattern ∀y(y≤t ⇒ ψ); returns (y, t, ψ).
inline bool matchBoundedForall(const Formula& f, Var& y, Term& t, Formula& body) {
  using K = FormulaNode::Kind;
  if (f->kind != K::Forall || f->qvar.sort != Sort::Number) return false;
  const Formula& im = f->a;
  if (im->kind != K::Imp) return false;
  const Formula& g = im->a;
  if (g->kind != K::Atom || g->rel != Rel::Leq) return false;
  const Term& lhs = g->args[0];
  if (lhs->kind != TermNode::Kind::Variable || lhs->var != f->qvar) return false;
  if (freeVars(g->args[1]).count(f->qvar)) return false;  // y not in t
  y = f->qvar;
  t = g->args[1];
  body = im->b;
  return true;
}

// Matches the existential pattern ¬∀x¬ψ.
inline bool matchExistsPattern(const Formula& f, Var& x, Formula& body) {
  using K = FormulaNode::Kind;
  if (f->kind != K::Not || f->a->kind != K::Forall || f->a->a->kind != K::Not) return false;
  x = f->a->qvar;
  body = f->a->a->a;
  return true;
}

inline bool hasSetVariable(const Formula& f) {
  std::set<Var> vs;
  allVars(f, vs);
  for (auto& v : vs)
    if (v.sort == Sort::SetSort) return true;
  return false;
}

inline bool hasSetQuantifier(const Formula& f) {
  switch (f->kind) {
    case FormulaNode::Kind::Atom:
    case FormulaNode::Kind::MetaFormula: return false;
    case FormulaNode::Kind::Not: return hasSetQuantifier(f->a);
    case FormulaNode::Kind::Imp: return hasSetQuantifier(f->a) || hasSetQuantifier(f->b);
    case FormulaNode::Kind::Forall:
      return f->qvar.sort == Sort::SetSort || hasSetQuantifier(f->a);
  }
  return false;
}

// The bounded grammar. CutMem atoms are excluded: 𝕀 never occurs in a Δ0
// formula of the first-order hierarchy.
inline bool isDelta0Grammar(const Formula& f) {
  switch (f->kind) {
    case FormulaNode::Kind::Atom: return f->rel != Rel::CutMem;
    case FormulaNode::Kind::Not: return isDelta0Grammar(f->a);
    case FormulaNode::Kind::Imp: return isDelta0Grammar(f->a) && isDelta0Grammar(f->b);
    case FormulaNode::Kind::Forall: {
      Var y;
      Term t;
      Formula body;
      if (!matchBoundedForall(f, y, t, body)) return false;
      return isDelta0Grammar(body);
    }
    case FormulaNode::Kind::MetaFormula: return false;
  }
  return false;
}

// Like isDelta0Grammar but additionally requires every quantifier bound to be
// a plain variable (the shape kleeneNF demands).
inline bool isDelta0VarBounded(const Formula& f) {
  switch (f->kind) {
    case FormulaNode::Kind::Atom: return f->rel != Rel::CutMem;
    case FormulaNode::Kind::Not: return isDelta0VarBounded(f->a);
    case FormulaNode::Kind::Imp: return isDelta0VarBounded(f->a) && isDelta0VarBounded(f->b);
    case FormulaNode::Kind::Forall: {
      Var y;
      Term t;
      Formula body;
      if (!matchBoundedForall(f, y, t, body)) return false;
      if (t->kind != TermNode::Kind::Variable) return false;
      return isDelta0VarBounded(body);
    }
    case FormulaNode::Kind::MetaFormula: return false;
  }
  return false;
}

// Δ0 as commonly used: an L_I formula in the bounded grammar.
inline bool isDelta0(const Formula& f) { return !hasSetVariable(f) && isDelta0Grammar(f); }
// Δ00: set variables may occur free (as parameters), no set quantifiers.
inline bool isDelta00(const Formula& f) { return !hasSetQuantifier(f) && isDelta0Grammar(f); }

// Strict prefix class: number of alternating unbounded first-order quantifier
// blocks over a Δ0 matrix. blocks == 0 means the formula itself is Δ0.
struct PrefixClass {
  int blocks = 0;
  bool firstExists = false;
};

inline std::optional<PrefixClass> prefixClass(const Formula& f) {
  if (isDelta0Grammar(f)) return PrefixClass{0, false};
  if (f->kind == FormulaNode::Kind::Forall && f->qvar.sort == Sort::Number) {
    auto c = prefixClass(f->a);
    if (!c) return std::nullopt;
    if (c->blocks == 0) return PrefixClass{1, false};
    if (c->firstExists) return PrefixClass{c->blocks + 1, false};
    return c;  // absorb into the leading ∀ block
  }
  Var x;
  Formula body;
  if (matchExistsPattern(f, x, body) && x.sort == Sort::Number) {
    auto c = prefixClass(body);
    if (!c) return std::nullopt;
    if (c->blocks == 0) return PrefixClass{1, true};
    if (!c->firstExists) return PrefixClass{c->blocks + 1, true};
    return c;
  }
  return std::nullopt;
}

// Is the prefix class contained in Π03 (i.e. embeds in a ∀∃∀ prefix)?
inline bool withinPi3(const PrefixClass& c) {
  if (c.blocks < 3) return true;
  return c.blocks == 3 && !c.firstExists;
}

inline FormulaClass classify(const Formula& f) {
  using Tag = FormulaClass::Tag;
  bool setVar = hasSetVariable(f);
  bool setQ = hasSetQuantifier(f);
  if (!setQ) {
    auto c = prefixClass(f);
    if (c) {
      if (c->blocks == 0) return {setVar ? Tag::Delta0_0 : Tag::Delta0, 0};
      if (c->firstExists) return {setVar ? Tag::Sigma0_N : Tag::SigmaN, c->blocks};
      return {setVar ? Tag::Pi0_N : Tag::PiN, c->blocks};
    }
    return {Tag::Other, 0};
  }
  // Universal closure: strip leading ∀ of either sort, then require a prefix
  // class within Π03 and no remaining set quantifier.
  Formula g = f;
  bool sawSetForall = false;
  while (g->kind == FormulaNode::Kind::Forall) {
    if (g->qvar.sort == Sort::SetSort) sawSetForall = true;
    g = g->a;
  }
  if (!sawSetForall || hasSetQuantifier(g)) return {Tag::Other, 0};
  auto c = prefixClass(g);
  if (c && withinPi3(*c)) return {Tag::AllPi03, 0};
  return {Tag::Other, 0};
}

// Gate for the simulation pipeline: sentences of the ∀Π03 class, including
// the degenerate cases without a set prefix.
inline bool isAllPi03Sentence(const Formula& f) {
  if (!isSentence(f)) return false;
  FormulaClass c = classify(f);
  if (c.tag == FormulaClass::Tag::AllPi03) return true;
  Formula g = f;
  while (g->kind == FormulaNode::Kind::Forall) g = g->a;
  if (hasSetQuantifier(g)) return false;
  auto pc = prefixClass(g);
  return pc.has_value() && withinPi3(*pc);
}

}  // namespace ff
