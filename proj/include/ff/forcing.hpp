#pragma once

// Forcing translations: the five formula families, the FT1-FT5 load checks
// and the FT6-FT8 structural recursion computing s ⊩ φ.
//
// Variable layout in the target language (all deterministic so proofs
// reproduce byte for byte):
//   names:        index 100 + 2i for source number variable i,
//                 index 101 + 2i for source set variable i
//   conditions:   index 400 + d  for recursion depth d (bound inside forced
//                 formulas), index 450 + k for the working variables of the
//                 proof templates
//   family-internal bound variables stay below index 100.

#include <functional>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "ff/classify.hpp"
#include "ff/proof.hpp"
#include "ff/stdformulas.hpp"
#include "ff/surface.hpp"

namespace ff {

struct ForcingError : std::runtime_error {
  explicit ForcingError(const std::string& m) : std::runtime_error(m) {}
};

struct ForcingTranslation {
  std::string id;  // tau1 | tau2 | tau3 | user ids
  Language source = Language::LI;
  Language target = Language::LII;
  Sort condSort = Sort::SetSort;

  // The five formula families, stored over reserved variables and
  // instantiated by substitution.
  Var condVar;              // s in cond
  Formula condF;            // Cond(s)
  Var leLo, leHi;           // s', s in le  (s' ⊴ s)
  Formula leF;
  std::map<Sort, Var> nameVar;      // per source sort
  std::map<Sort, Formula> nameF;    // Name(v)
  std::map<Sort, Var> vnCondVar, vnNameVar;
  std::map<Sort, Formula> vnF;      // ValidName(s, v)

  // Atom forcing: source atom (terms over source variables) at condition s.
  std::function<Formula(const ForcingTranslation&, const Formula& atom, Var s)> forceAtom;

  // Ledger ids for the single-sentence FI obligations, keyed "FI1".."FI13"
  // (name-sort variants keyed e.g. "FI5-N", "FI5-S").
  std::map<std::string, std::string> fiIds;

  // Schematic per-atom/per-term generators, installed by the interpretation
  // layer. Each returns a checkable proof in the target theory.
  struct Hooks {
    // FI6: ∀s,s'∈Cond ∀names(s⊩α ∧ s'⊴s ⇒ s'⊩α)
    std::function<Proof(const Formula& atom)> fi6;
    // FI13: density for the atom
    std::function<Proof(const Formula& atom)> fi13;
    // FI11 at an atom: the substitution-lemma statement for (α, x, t)
    std::function<Proof(const Formula& atom, Var x, const Term& t)> fi11;
    // S(equality axiom) for the named axiom of the source language
    std::function<Proof(const std::string& name)> forcedEq;
  } hooks;

  std::string targetTheory;  // theory the generated proofs live in

  // --- variable layout ---
  Var nameOf(Var src) const {
    if (src.index >= 14000) throw ForcingError("source variable index too large for the name layout");
    uint32_t idx = 10000 + 2 * src.index + (src.sort == Sort::SetSort ? 1 : 0);
    Sort s = nameSort(src.sort);
    return Var{s, idx};
  }
  Sort nameSort(Sort srcSort) const {
    auto it = nameVar.find(srcSort);
    if (it == nameVar.end()) throw ForcingError("no name sort for this source sort");
    return it->second.sort;
  }
  // Condition binders inside forced formulas. The index depends only on the
  // subformula below the binder, never on the context above, so the forced
  // form of a subformula is always a plain substitution instance of its
  // standalone forced form.
  Var condDepth(int d) const {
    if (d < 0 || d >= 9000) throw ForcingError("forcing recursion too deep");
    return Var{condSort, 40000 + (uint32_t)d};
  }
  Var workCond(int k) const { return Var{condSort, 50000 + (uint32_t)k}; }

  // --- family instantiation ---
  Formula cond(Var s) const { return substituteVar(condF, condVar, s); }
  Formula le(Var lo, Var hi) const {
    if (lo == hi) return substituteVar(substituteVar(leF, leLo, lo), leHi, lo);
    // substitute via sentinel in case hi collides with leLo
    Formula f = substituteVar(leF, leLo, Var{condSort, 0xfffffffd});
    f = substituteVar(f, leHi, hi);
    return substituteVar(f, Var{condSort, 0xfffffffd}, lo);
  }
  Formula nameOfSort(Sort srcSort, Var v) const {
    return substituteVar(nameF.at(srcSort), nameVar.at(srcSort), v);
  }
  Formula vn(Sort srcSort, Var s, Var v) const {
    Formula f = substituteVar(vnF.at(srcSort), vnNameVar.at(srcSort), Var{v.sort, 0xfffffffd});
    f = substituteVar(f, vnCondVar.at(srcSort), s);
    return substituteVar(f, Var{v.sort, 0xfffffffd}, v);
  }
  // ValidName for a target name variable of a given source variable.
  Formula vnOfSrc(Var s, Var srcVar) const { return vn(srcVar.sort, s, nameOf(srcVar)); }
};

// ---------------------------------------------------------------------------
// Binder hygiene: rename bound variables so no binder shadows a free variable
// or another binder. Deterministic (smallest unused index at each point).
// ---------------------------------------------------------------------------

// Renames only binders that shadow something on the current scope path (a
// binder above or a free variable of the whole formula). Sibling scopes may
// reuse a binder; this keeps substitution instances structurally aligned
// with their originals.
inline Formula cleanBindersImpl(const Formula& f, std::set<Var>& path) {
  switch (f->kind) {
    case FormulaNode::Kind::Atom:
    case FormulaNode::Kind::MetaFormula: return f;
    case FormulaNode::Kind::Not: {
      Formula a = cleanBindersImpl(f->a, path);
      return a.get() == f->a.get() ? f : fNot(a);
    }
    case FormulaNode::Kind::Imp: {
      Formula a = cleanBindersImpl(f->a, path);
      Formula b = cleanBindersImpl(f->b, path);
      return (a.get() == f->a.get() && b.get() == f->b.get()) ? f : fImp(a, b);
    }
    case FormulaNode::Kind::Forall: {
      Var q = f->qvar;
      Formula body = f->a;
      if (path.count(q)) {
        std::set<Var> avoid = path;
        allVars(body, avoid);
        Var fresh = freshVar(q.sort, avoid);
        body = substituteVar(body, q, fresh);
        q = fresh;
      }
      bool inserted = path.insert(q).second;
      Formula cleaned = cleanBindersImpl(body, path);
      if (inserted) path.erase(q);
      return (cleaned.get() == f->a.get() && q == f->qvar) ? f : fForall(q, cleaned);
    }
  }
  return f;
}

inline Formula cleanBinders(const Formula& f) {
  std::set<Var> path = freeVars(f);
  return cleanBindersImpl(f, path);
}

// ---------------------------------------------------------------------------
// The FT6-FT8 recursion
// ---------------------------------------------------------------------------

struct ForcedFormula {
  Var condVar;
  Formula source;               // cleaned source formula
  Formula target;               // s ⊩ source
  std::map<Var, Var> nameMap;   // free source variable -> target name variable
};

namespace detail {

inline std::vector<Var> sortedFreeVars(const Formula& f) { return freeVarsOrdered(f); }

// VN conjuncts over the free source variables; [Cond(s)] when there are
// none. Every forced formula is the right-nested chain conj(vnList + [core]),
// which the proof templates rely on when destructuring.
inline std::vector<Formula> vnList(const ForcingTranslation& tau, const Formula& srcPart, Var s) {
  auto vars = sortedFreeVars(srcPart);
  if (vars.empty()) return {tau.cond(s)};
  std::vector<Formula> cs;
  for (auto& v : vars) cs.push_back(tau.vnOfSrc(s, v));
  return cs;
}

inline Formula vnConj(const ForcingTranslation& tau, const Formula& srcPart, Var s) {
  return conj(vnList(tau, srcPart, s));
}

inline Formula withVn(const ForcingTranslation& tau, const Formula& srcPart, Var s, Formula core) {
  std::vector<Formula> cs = vnList(tau, srcPart, s);
  cs.push_back(std::move(core));
  return conj(cs);
}

// Height of the condition-binder tower a formula's forced form needs.
inline int forceHeight(const Formula& phi) {
  switch (phi->kind) {
    case FormulaNode::Kind::Atom: return 0;
    case FormulaNode::Kind::Not: return forceHeight(phi->a) + 1;
    case FormulaNode::Kind::Imp: return std::max(forceHeight(phi->a), forceHeight(phi->b)) + 2;
    case FormulaNode::Kind::Forall: return forceHeight(phi->a) + 2;
    default: throw ForcingError("cannot force a meta slot");
  }
}

inline Formula forceRec(const ForcingTranslation& tau, const Formula& phi, Var s) {
  switch (phi->kind) {
    case FormulaNode::Kind::Atom:
      return tau.forceAtom(tau, phi, s);
    case FormulaNode::Kind::Not: {
      Var s1 = tau.condDepth(forceHeight(phi->a));
      Formula inner = forceRec(tau, phi->a, s1);
      Formula all = fForall(s1, fImp(tau.le(s1, s), fNot(inner)));
      return withVn(tau, phi, s, all);
    }
    case FormulaNode::Kind::Imp: {
      int m = std::max(forceHeight(phi->a), forceHeight(phi->b));
      Var s1 = tau.condDepth(m), s2 = tau.condDepth(m + 1);
      Formula fa = forceRec(tau, phi->a, s1);
      Formula fb = forceRec(tau, phi->b, s2);
      Formula ex = fExistsSuch(s2, tau.le(s2, s1), fImp(fa, fb));
      Formula all = fForall(s1, fImp(tau.le(s1, s), ex));
      return withVn(tau, phi, s, all);
    }
    case FormulaNode::Kind::Forall: {
      Var w = phi->qvar;
      Var wName = tau.nameOf(w);
      int m = forceHeight(phi->a);
      Var s1 = tau.condDepth(m), s2 = tau.condDepth(m + 1);
      Formula body = forceRec(tau, phi->a, s2);
      Formula ex = fExistsSuch(s2, tau.le(s2, s1), fImp(tau.vnOfSrc(s1, w), body));
      Formula all = fForall(wName, fForall(s1, fImp(tau.le(s1, s), ex)));
      return withVn(tau, phi, s, all);
    }
    case FormulaNode::Kind::MetaFormula:
      throw ForcingError("cannot force a meta slot");
  }
  throw ForcingError("unreachable");
}

}  // namespace detail

// Forces a formula at the given working condition variable (default: the
// first template variable).
inline ForcedFormula forceFormula(const ForcingTranslation& tau, const Formula& phi0, Var s) {
  if (!inLanguage(phi0, tau.source))
    throw ForcingError("formula not in the source language of " + tau.id);
  Formula phi = cleanBinders(phi0);
  ForcedFormula out;
  out.condVar = s;
  out.source = phi;
  out.target = detail::forceRec(tau, phi, s);
  for (auto& v : detail::sortedFreeVars(phi)) out.nameMap.emplace(v, tau.nameOf(v));
  return out;
}

inline ForcedFormula forceFormula(const ForcingTranslation& tau, const Formula& phi) {
  return forceFormula(tau, phi, tau.workCond(0));
}

// ---------------------------------------------------------------------------
// Statement builders shared by the proof generators
// ---------------------------------------------------------------------------

// ∀s(Cond(s) ⇒ body(s))
inline Formula forAllCond(const ForcingTranslation& tau, Var s, const Formula& body) {
  return fForall(s, fImp(tau.cond(s), body));
}
// relativized name quantifiers over the free variables of the source formula
inline Formula forAllNames(const ForcingTranslation& tau, const Formula& src, const Formula& body) {
  auto vars = detail::sortedFreeVars(src);
  Formula out = body;
  for (auto it = vars.rbegin(); it != vars.rend(); ++it)
    out = fForall(tau.nameOf(*it), fImp(tau.nameOfSort(it->sort, tau.nameOf(*it)), out));
  return out;
}

// The Lemma 3.6 output statement: ∀s∈Cond ∀v̄∈Name (VN(s,v̄) ⇒ s⊩φ(v̄));
// for sentences, ∀s∈Cond (s⊩φ).
inline Formula forcedStatement(const ForcingTranslation& tau, const Formula& src) {
  Var s = tau.workCond(0);
  ForcedFormula ff = forceFormula(tau, src, s);
  if (freeVars(ff.source).empty()) return forAllCond(tau, s, ff.target);
  Formula body = fImp(detail::vnConj(tau, ff.source, s), ff.target);
  return forAllCond(tau, s, forAllNames(tau, ff.source, body));
}

// ---------------------------------------------------------------------------
// FT1-FT5 load checks
// ---------------------------------------------------------------------------

inline std::vector<Formula> conjunctsOf(const Formula& f) {
  Formula a, b;
  if (matchAnd(f, a, b)) {
    std::vector<Formula> out = {a};
    for (auto& c : conjunctsOf(b)) out.push_back(c);
    return out;
  }
  return {f};
}

inline bool hasConjunct(const Formula& f, const Formula& c) {
  for (auto& x : conjunctsOf(f))
    if (formulaEq(x, c)) return true;
  return false;
}

// Representative atoms of the source language, built over distinct source
// variables, used for the structural FT4/FT5 checks.
inline std::vector<Formula> sampleAtoms(Language lang) {
  Var x = nv(0), y = nv(1), z = nv(2);
  std::vector<Formula> out = {fEq(tVar(x), tVar(y)), fLeq(tVar(x), tVar(y)),
                              fAck(tVar(x), tVar(y)), fPow2(tVar(x), tVar(y)),
                              fSupExp(tVar(x), tVar(y), tVar(z)), fCard(tVar(x), tVar(y))};
  if (lang == Language::LII) out.push_back(fIn(tVar(x), sv(0)));
  if (lang == Language::LIcut) out.push_back(fCut(tVar(x)));
  // a term-bearing shape
  out.push_back(fEq(tAdd(tVar(x), tVar(y)), tMul(tVar(z), tVar(z))));
  return out;
}

struct LoadCheckResult {
  bool ok = true;
  std::vector<std::string> failures;
  void fail(std::string m) {
    ok = false;
    failures.push_back(std::move(m));
  }
};

inline LoadCheckResult checkTranslation(const ForcingTranslation& tau) {
  LoadCheckResult r;
  auto fvEq = [](const Formula& f, std::set<Var> want) { return freeVars(f) == want; };

  // FT1: displayed free variables only.
  if (!fvEq(tau.condF, {tau.condVar})) r.fail("FT1: Cond has stray free variables");
  if (!fvEq(tau.leF, {tau.leLo, tau.leHi})) r.fail("FT1: LE has stray free variables");
  for (auto& [srt, f] : tau.nameF)
    if (!fvEq(f, {tau.nameVar.at(srt)})) r.fail("FT1: Name has stray free variables");
  for (auto& [srt, f] : tau.vnF)
    if (!fvEq(f, {tau.vnCondVar.at(srt), tau.vnNameVar.at(srt)}))
      r.fail("FT1: ValidName has stray free variables");

  // FT2: LE contains Cond(s') ∧ Cond(s) as conjuncts.
  if (!hasConjunct(tau.leF, tau.cond(tau.leLo)) || !hasConjunct(tau.leF, tau.cond(tau.leHi)))
    r.fail("FT2: LE lacks the Cond conjuncts");

  // FT3: ValidName contains Cond(s) ∧ Name(v).
  for (auto& [srt, f] : tau.vnF) {
    if (!hasConjunct(f, substituteVar(tau.condF, tau.condVar, tau.vnCondVar.at(srt))))
      r.fail("FT3: ValidName lacks the Cond conjunct");
    if (!hasConjunct(f, substituteVar(tau.nameF.at(srt), tau.nameVar.at(srt), tau.vnNameVar.at(srt))))
      r.fail("FT3: ValidName lacks the Name conjunct");
  }

  // FT4: every atom forcing contains the ValidName conjuncts.
  Var s = tau.workCond(0);
  for (auto& atom : sampleAtoms(tau.source)) {
    Formula forced = tau.forceAtom(tau, atom, s);
    for (auto& v : detail::sortedFreeVars(atom)) {
      if (!hasConjunct(forced, tau.vnOfSrc(s, v)))
        r.fail("FT4: atom forcing lacks ValidName for " + v.name() + " in " + print(atom));
    }
  }

  // FT5: atom forcing commutes with variable renaming.
  for (auto& atom : sampleAtoms(tau.source)) {
    for (auto& v : detail::sortedFreeVars(atom)) {
      Var w{v.sort, v.index + 7};
      Formula renamedAtom = substituteVar(atom, v, w);
      Formula left = substituteVar(tau.forceAtom(tau, atom, s), tau.nameOf(v), tau.nameOf(w));
      Formula right = tau.forceAtom(tau, renamedAtom, s);
      if (!formulaEq(left, right)) r.fail("FT5: renaming mismatch on " + print(atom));
    }
  }
  return r;
}

}  // namespace ff
