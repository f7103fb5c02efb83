#pragma once

// Structure-preserving translations on formulas: the Ackermann translation of
// Δ00 formulas and the bounded-quantifier star form used before Kleene normal
// form.

#include <map>

#include "ff/classify.hpp"
#include "ff/syntax.hpp"

namespace ff {

struct AckResult {
  Formula formula;                 // L_I formula
  std::map<Var, Var> setVarMap;    // second-order variable -> first-order name
};

inline Formula ackermannRewrite(const Formula& f, const std::map<Var, Var>& m) {
  switch (f->kind) {
    case FormulaNode::Kind::Atom: {
      if (f->rel != Rel::SetMem) return f;
      auto it = m.find(f->setArg);
      if (it == m.end()) throw std::runtime_error("ackermannTranslate: unmapped set variable " + f->setArg.name());
      return fAck(f->args[0], tVar(it->second));
    }
    case FormulaNode::Kind::Not: return fNot(ackermannRewrite(f->a, m));
    case FormulaNode::Kind::Imp:
      return fImp(ackermannRewrite(f->a, m), ackermannRewrite(f->b, m));
    case FormulaNode::Kind::Forall: return fForall(f->qvar, ackermannRewrite(f->a, m));
    case FormulaNode::Kind::MetaFormula: return f;
  }
  return f;
}

// Replaces every atom t∈X of a Δ00 formula by t∈_Ack x_X, with fresh
// first-order variables chosen deterministically (smallest unused indices, in
// order of the set variables).
inline AckResult ackermannTranslate(const Formula& f) {
  if (!isDelta00(f)) throw std::runtime_error("ackermannTranslate: input not Delta^0_0: " + std::to_string(f->size_));
  std::set<Var> vars;
  allVars(f, vars);
  std::set<Var> used = vars;
  std::map<Var, Var> m;
  for (auto& v : vars) {
    if (v.sort != Sort::SetSort) continue;
    Var fresh = freshVar(Sort::Number, used);
    used.insert(fresh);
    m.emplace(v, fresh);
  }
  return AckResult{ackermannRewrite(f, m), std::move(m)};
}

// ---------------------------------------------------------------------------
// Star form (the rebinding step before Kleene normal form)
// ---------------------------------------------------------------------------
//
// For φ = ∀y∃z θ with θ in the bounded grammar, produce
//   φ* = ∀y∃w∃z≤w ( boundGuard(w) ∧ θ^w )
// where θ^w rebinds every quantifier of θ to the variable w while keeping the
// original guard, and boundGuard collects "cap ≤ w" atoms for the capped
// versions of all original bound terms. Every quantifier of the matrix is
// bounded by w, and φ ⇔ φ* holds provably.

struct StarFormResult {
  Formula star;         // φ*
  Formula equivalence;  // ∀-closure of φ ⇔ φ*
  Formula matrix;       // the w-bounded Δ00 matrix (boundGuard ∧ θ^w)
  Var boundVar;         // w
  Var witnessVar;       // z
  Var piVar;            // y
};

namespace detail {

// cap(t): t with each quantified variable replaced by the capped version of
// its own bound, so caps only mention variables free in the whole matrix.
inline void collectCaps(const Formula& f, std::map<Var, Term>& capOf, std::vector<Term>& caps) {
  switch (f->kind) {
    case FormulaNode::Kind::Atom:
    case FormulaNode::Kind::MetaFormula: return;
    case FormulaNode::Kind::Not: collectCaps(f->a, capOf, caps); return;
    case FormulaNode::Kind::Imp:
      collectCaps(f->a, capOf, caps);
      collectCaps(f->b, capOf, caps);
      return;
    case FormulaNode::Kind::Forall: {
      Var y;
      Term t;
      Formula body;
      if (!matchBoundedForall(f, y, t, body))
        throw std::runtime_error("starForm: unbounded quantifier in matrix");
      Term cap = t;
      for (auto& [v, c] : capOf) cap = substTerm(cap, v, c);
      caps.push_back(cap);
      auto saved = capOf;
      capOf[y] = cap;
      collectCaps(body, capOf, caps);
      capOf = saved;
      return;
    }
  }
}

inline Formula rebind(const Formula& f, Var w) {
  switch (f->kind) {
    case FormulaNode::Kind::Atom:
    case FormulaNode::Kind::MetaFormula: return f;
    case FormulaNode::Kind::Not: return fNot(rebind(f->a, w));
    case FormulaNode::Kind::Imp: return fImp(rebind(f->a, w), rebind(f->b, w));
    case FormulaNode::Kind::Forall: {
      Var y;
      Term t;
      Formula body;
      if (!matchBoundedForall(f, y, t, body))
        throw std::runtime_error("starForm: unbounded quantifier in matrix");
      // ∀u≤t ψ  ↦  ∀u≤w (u≤t ⇒ ψ^w)
      return fForallLeq(y, tVar(w), fImp(fLeq(tVar(y), t), rebind(body, w)));
    }
  }
  return f;
}

}  // namespace detail

inline StarFormResult starForm(const Formula& phi) {
  // Required shape: ∀y ¬∀z¬θ with θ in the bounded grammar.
  Var y, z;
  Formula inner, theta;
  if (phi->kind != FormulaNode::Kind::Forall || phi->qvar.sort != Sort::Number)
    throw std::runtime_error("starForm: input is not of the shape ∀y∃z θ");
  y = phi->qvar;
  if (!matchExistsPattern(phi->a, z, theta) || z.sort != Sort::Number)
    throw std::runtime_error("starForm: input is not of the shape ∀y∃z θ");
  if (!isDelta0Grammar(theta))
    throw std::runtime_error("starForm: matrix is not in the bounded grammar");

  std::set<Var> used;
  allVars(phi, used);
  Var w = freshVar(Sort::Number, used);

  std::map<Var, Term> capOf;
  std::vector<Term> caps;
  detail::collectCaps(theta, capOf, caps);

  Formula matrix = detail::rebind(theta, w);
  for (auto it = caps.rbegin(); it != caps.rend(); ++it)
    matrix = fAnd(fLeq(*it, tVar(w)), matrix);

  Formula star = fForall(y, fExists(w, fExistsLeq(z, tVar(w), matrix)));

  // Equivalence statement, universally closed over the free variables.
  Formula equiv = fIff(phi, star);
  std::set<Var> fv = freeVars(equiv);
  for (auto it = fv.rbegin(); it != fv.rend(); ++it) equiv = fForall(*it, equiv);

  return StarFormResult{star, equiv, matrix, w, z, y};
}

}  // namespace ff
