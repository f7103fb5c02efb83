#pragma once

// The generic forcing engine: schematic proof generators for monotonicity,
// density, non-contradiction (Lemmas 3.3/3.4), the conjunction/existential
// unfoldings (Lemma 3.5), forced logical axioms and modus ponens, and the
// whole-proof translation (Lemma 3.6). Every generated proof is re-checked
// by the kernel before it is handed out.

#include <deque>
#include <map>

#include "ff/forcing.hpp"
#include "ff/kernel.hpp"
#include "ff/script.hpp"

namespace ff {

// ---------------------------------------------------------------------------
// Statement builders (shared with the per-interpretation hook generators)
// ---------------------------------------------------------------------------

namespace stmt {

inline Formula condAll(const ForcingTranslation& t, Var s, Formula body) {
  return fForall(s, fImp(t.cond(s), std::move(body)));
}

inline Formula namesAll(const ForcingTranslation& t, const std::vector<Var>& srcVars, Formula body) {
  for (auto it = srcVars.rbegin(); it != srcVars.rend(); ++it)
    body = fForall(t.nameOf(*it), fImp(t.nameOfSort(it->sort, t.nameOf(*it)), body));
  return body;
}

// Lemma 3.4(a) for φ (which must be binder-clean).
inline Formula mono(const ForcingTranslation& t, const Formula& phi) {
  Var s = t.workCond(0), s1 = t.workCond(1);
  Formula fs = forceFormula(t, phi, s).target;
  Formula fs1 = forceFormula(t, phi, s1).target;
  Formula body = fImp(fAnd(t.le(s1, s), fs), fs1);
  return condAll(t, s, condAll(t, s1, namesAll(t, freeVarsOrdered(phi), body)));
}

// The density hypothesis ∀s1⊴s ∃s2⊴s1 (s2 ⊩ φ), over working variables 1/2.
inline Formula densHyp(const ForcingTranslation& t, const Formula& phi, Var s) {
  Var s1 = t.workCond(1), s2 = t.workCond(2);
  Formula fs2 = forceFormula(t, phi, s2).target;
  return fForall(s1, fImp(t.le(s1, s), fExistsSuch(s2, t.le(s2, s1), fs2)));
}

// Lemma 3.4(b).
inline Formula dens(const ForcingTranslation& t, const Formula& phi) {
  Var s = t.workCond(0);
  Formula body = fImp(densHyp(t, phi, s), forceFormula(t, phi, s).target);
  return condAll(t, s, namesAll(t, freeVarsOrdered(phi), body));
}

// Lemma 3.3, sentence (8).
inline Formula noContra(const ForcingTranslation& t, const Formula& phi) {
  Var s = t.workCond(0);
  Formula fs = forceFormula(t, phi, s).target;
  Formula fns = forceFormula(t, fNot(phi), s).target;
  Formula body = fNot(fAnd(fs, fns));
  return condAll(t, s, namesAll(t, freeVarsOrdered(phi), body));
}

// Lemma 3.6 per-line statement: for sentences ∀s∈Cond(s⊩χ), otherwise
// relativized names plus the VN hypothesis.
inline Formula forced(const ForcingTranslation& t, const Formula& chi) {
  return forcedStatement(t, chi);
}

// Lemma 3.5(a), with the ValidName hypothesis made explicit.
inline Formula sugarConj(const ForcingTranslation& t, const Formula& a, const Formula& b) {
  Var s = t.workCond(0);
  Formula both = fAnd(a, b);
  Formula lhs = forceFormula(t, both, s).target;
  Formula rhs = fAnd(forceFormula(t, a, s).target, forceFormula(t, b, s).target);
  auto U = freeVarsOrdered(both);
  Formula body = fIff(lhs, rhs);
  if (!U.empty()) body = fImp(detail::vnConj(t, both, s), body);
  return condAll(t, s, namesAll(t, U, body));
}

// Lemma 3.5(b) for ∃xφ (given in the official ¬∀x¬ shape).
inline Formula sugarExists(const ForcingTranslation& t, const Formula& ex) {
  Var x;
  Formula phi;
  if (!matchExistsPattern(ex, x, phi)) throw ForcingError("sugarExists: not an existential");
  Var s = t.workCond(0), s1 = t.workCond(1), s2 = t.workCond(2);
  Formula lhs = forceFormula(t, ex, s).target;
  Var xN = t.nameOf(x);
  Formula fphi = forceFormula(t, phi, s2).target;
  Formula rhs = fForall(
      s1, fImp(t.le(s1, s),
               fExistsSuch(s2, t.le(s2, s1),
                           fExistsSuch(xN, t.vn(x.sort, s2, xN), fphi))));
  return condAll(t, s, namesAll(t, freeVarsOrdered(ex), fIff(lhs, rhs)));
}

}  // namespace stmt

// ---------------------------------------------------------------------------
// Template operations over a script
// ---------------------------------------------------------------------------

class ForcingEngine;

// Script-level helpers bound to one translation. The conventions:
//  * forced formulas are right-nested chains [VN…, core],
//  * le(lo,hi) is the chain [Cond(hi), Cond(lo), rest],
//  * all statements follow the builders above.
struct Ops {
  Script& sc;
  const ForcingTranslation& t;
  ForcingEngine* eng = nullptr;  // null inside the per-atom hook generators

  // chain length of a forced formula for φ
  static size_t chainLen(const Formula& phi) {
    size_t k = freeVarsOrdered(phi).size();
    return (k == 0 ? 1 : k) + 1;
  }

  // split s⊩φ into VN lines + core
  std::pair<std::vector<Ln>, Ln> splitForced(Ln forcedLine, const Formula& phi) {
    auto parts = sc.splitChain(forcedLine, chainLen(phi));
    Ln core = parts.back();
    parts.pop_back();
    return {parts, core};
  }

  Ln condOfLe(Ln leLine, bool lower) {
    auto parts = sc.splitChain(leLine, 3);
    return lower ? parts[1] : parts[0];
  }

  // Cond and Name conjuncts of a ValidName line.
  Ln condOfVn(Ln vnLine, Sort srcSort, Var s, Var n) {
    auto cs = conjunctsOf(t.vnF.at(srcSort));
    auto parts = sc.splitChain(vnLine, cs.size());
    for (size_t i = 0; i < cs.size(); ++i)
      if (formulaEq(sc.at(parts[i]), t.cond(s))) return parts[i];
    throw ForcingError("condOfVn: no Cond conjunct found");
  }
  Ln nameOfVn(Ln vnLine, Sort srcSort, Var s, Var n) {
    auto cs = conjunctsOf(t.vnF.at(srcSort));
    auto parts = sc.splitChain(vnLine, cs.size());
    Formula want = t.nameOfSort(srcSort, n);
    for (size_t i = 0; i < cs.size(); ++i)
      if (formulaEq(sc.at(parts[i]), want)) return parts[i];
    throw ForcingError("nameOfVn: no Name conjunct found");
  }

  // s2 ⊴ s1 and s1 ⊴ s0 give s2 ⊴ s0 (FI3).
  Ln leTrans(Ln le21, Ln le10) {
    Var s2 = leLoVar(le21), s1 = leHiVar(le21), s0 = leHiVar(le10);
    Ln fi3 = sc.ledg(t.fiIds.at("FI3"));
    Ln i = sc.forallElim(fi3, s0);
    i = sc.mp(condOfLe(le10, false), i);
    i = sc.forallElim(i, s1);
    i = sc.mp(condOfLe(le10, true), i);
    i = sc.forallElim(i, s2);
    i = sc.mp(condOfLe(le21, true), i);
    return sc.mp(sc.andIntro(le21, le10), i);
  }

  // s ⊴ s from Cond(s) (FI2).
  Ln leRefl(Ln condLine, Var s) {
    Ln fi2 = sc.ledg(t.fiIds.at("FI2"));
    return sc.mp(condLine, sc.forallElim(fi2, s));
  }

  // VN(s1, n) from VN(s, n) and s1 ⊴ s (FI5).
  Ln vnMono(Ln vnLine, Ln leLine, Sort srcSort, Var s, Var s1, Var n) {
    std::string key = srcSort == Sort::Number ? "FI5-N" : "FI5-S";
    Ln fi5 = sc.ledg(t.fiIds.at(key));
    Ln i = sc.forallElim(fi5, s);
    i = sc.mp(condOfLe(leLine, false), i);
    i = sc.forallElim(i, s1);
    i = sc.mp(condOfLe(leLine, true), i);
    i = sc.forallElim(i, n);
    i = sc.mp(nameOfVn(vnLine, srcSort, s, n), i);
    return sc.mp(sc.andIntro(vnLine, leLine), i);
  }

  Var leLoVar(Ln leLine) const {
    // le = [Cond(hi), Cond(lo), rest]; recover lo from the second conjunct
    Formula f = sc.at(leLine);
    auto cs = conjunctsOf(f);
    if (cs.size() < 3) throw ForcingError("leLoVar: not an le chain");
    auto fv = freeVars(cs[1]);
    if (fv.size() != 1) throw ForcingError("leLoVar: unexpected Cond shape");
    return *fv.begin();
  }
  Var leHiVar(Ln leLine) const {
    Formula f = sc.at(leLine);
    auto cs = conjunctsOf(f);
    if (cs.size() < 3) throw ForcingError("leHiVar: not an le chain");
    auto fv = freeVars(cs[0]);
    if (fv.size() != 1) throw ForcingError("leHiVar: unexpected Cond shape");
    return *fv.begin();
  }

  Formula absurd() const { return fEq(tZero(), tOne()); }
  Ln absurdFromPair(Ln b, Ln nb) { return sc.exFalso(b, nb, absurd()); }
  Ln notAbsurd() { return sc.thax("pa-zero-one"); }

  // Apply a previously generated lemma with the statement shape
  // condAll(s, condAll(s1, namesAll(imp))) — the mono shape.
  Ln applyMono(const Formula& phi, Ln condHi, Ln condLo, const std::vector<Ln>& nameLines,
               Var hi, Var lo, Ln leLine, Ln forcedHi);
  // as applyMono, with per-variable name instantiation (for substituted names)
  Ln applyMonoNamed(const Formula& phi, Ln condHi, Ln condLo, Var hi, Var lo, Ln leLine,
                    Ln forcedHi, const std::function<std::pair<Var, Ln>(Var)>& nameResolve);
  // dens shape: condAll(s, namesAll(imp(hyp, F)))
  Ln applyDens(const Formula& phi, Ln condLine, const std::vector<Ln>& nameLines, Var s, Ln hypLine);
  Ln applyNoContra(const Formula& phi, Ln condLine, const std::vector<Ln>& nameLines, Var s,
                   Ln forcedPos, Ln forcedNeg);

  // instantiate the condAll/namesAll prefix of a statement line
  Ln instCondNames(Ln stmtLine, Var s, Ln condLine, const std::vector<Var>& srcVars,
                   const std::vector<Ln>& nameLines) {
    Ln i = sc.forallElim(stmtLine, s);
    i = sc.mp(condLine, i);
    for (size_t k = 0; k < srcVars.size(); ++k) {
      i = sc.forallElim(i, t.nameOf(srcVars[k]));
      i = sc.mp(nameLines[k], i);
    }
    return i;
  }
};

// ---------------------------------------------------------------------------
// The engine
// ---------------------------------------------------------------------------

class ForcingEngine {
 public:
  ForcingEngine(const ForcingTranslation& tau, const Theory& targetTheory,
                const ObligationLedger& ledger)
      : tau_(tau), theory_(targetTheory), ledger_(ledger) {}

  const ForcingTranslation& tau() const { return tau_; }
  const Theory& theory() const { return theory_; }
  const ObligationLedger& ledger() const { return ledger_; }

  // Lemma 3.4(a)
  const Proof& mono(const Formula& phi0) {
    Formula phi = cleanBinders(phi0);
    if (auto* p = find(monoMemo_, phi)) return *p;
    Proof p = phi->kind == FormulaNode::Kind::Atom ? hookFi6(phi) : monoComplex(phi);
    verify(p, stmt::mono(tau_, phi), "mono");
    return store(monoMemo_, phi, std::move(p));
  }

  // Lemma 3.4(b)
  const Proof& dens(const Formula& phi0) {
    Formula phi = cleanBinders(phi0);
    if (auto* p = find(densMemo_, phi)) return *p;
    Proof p = phi->kind == FormulaNode::Kind::Atom ? hookFi13(phi) : densComplex(phi);
    verify(p, stmt::dens(tau_, phi), "dens");
    return store(densMemo_, phi, std::move(p));
  }

  // Lemma 3.3
  const Proof& noContra(const Formula& phi0) {
    Formula phi = cleanBinders(phi0);
    if (auto* p = find(ncMemo_, phi)) return *p;
    Proof p = noContraBuild(phi);
    verify(p, stmt::noContra(tau_, phi), "noContra");
    return store(ncMemo_, phi, std::move(p));
  }

  // Lemma 3.5(a): s⊩(φ∧ψ) ⇔ s⊩φ ∧ s⊩ψ
  const Proof& sugarConj(const Formula& a0, const Formula& b0) {
    Formula a = cleanBinders(a0), b = cleanBinders(b0);
    Formula k = fAnd(a, b);
    if (auto* p = find(sugarConjMemo_, k)) return *p;
    Proof p = sugarConjBuild(a, b);
    verify(p, stmt::sugarConj(tau_, a, b), "sugarConj");
    return store(sugarConjMemo_, k, std::move(p));
  }

  // Lemma 3.5(b): the existential unfolding
  const Proof& sugarExists(const Formula& ex0) {
    Formula ex = cleanBinders(ex0);
    if (auto* p = find(sugarExMemo_, ex)) return *p;
    Proof p = sugarExistsBuild(ex);
    verify(p, stmt::sugarExists(tau_, ex), "sugarExists");
    return store(sugarExMemo_, ex, std::move(p));
  }

  // Values of terms exist below every condition (eq. valid-values-of-terms).
  const Proof& termValue(const Term& t);
  // The substitution lemma lifted to all formulas (from FI11 at atoms).
  const Proof& substLemma(const Formula& chi, Var x, const Term& t);
  // Forced logical axiom: S_open of the scheme instance.
  const Proof& forcedScheme(const std::string& id, const SchemeArgs& args);
  // Forced equality axiom (S of the closed axiom).
  const Proof& forcedEqAxiom(const std::string& name);

  // Lemma 3.6: per-line translation of a whole proof. fi14 supplies the
  // forced-axiom proofs of the source theory; forcedLedgerId names the
  // computed ledger entry that forces a cited ledger statement.
  Proof translateProof(const Proof& delta, const Theory& sourceTheory,
                       const std::function<const Proof*(const std::string&)>& fi14,
                       const std::function<std::string(const std::string&)>& forcedLedgerId);

  TrustReport check(const Proof& p) const {
    CheckResult r = checkProof(theory_, p, ledger_);
    if (!r.accepted)
      throw ForcingError("generated proof failed kernel check at line " +
                         std::to_string(r.failLine) + ": " + r.reason + "\n  line: " +
                         (r.failLine < p.lines.size() ? print(p.lines[r.failLine].formula) : ""));
    return r.trust;
  }

 private:
  friend struct Ops;

  template <typename M>
  const Proof* find(M& m, const Formula& k) {
    auto it = m.find(key(k));
    return it == m.end() ? nullptr : it->second;
  }
  template <typename M>
  const Proof& store(M& m, const Formula& k, Proof p) {
    pool_.push_back(std::move(p));
    m.emplace(key(k), &pool_.back());
    return pool_.back();
  }
  static std::pair<uint64_t, uint64_t> key(const Formula& f) { return {f->hash_, f->size_}; }

  void verify(const Proof& p, const Formula& wantConclusion, const std::string& what) const {
    if (!formulaEq(p.conclusion(), wantConclusion))
      throw ForcingError(what + ": conclusion mismatch:\n  got  " + print(p.conclusion()) +
                         "\n  want " + print(wantConclusion));
    check(p);
  }

  Proof hookFi6(const Formula& atom) {
    if (!tau_.hooks.fi6) throw ForcingError("missing FI6 generator for " + tau_.id);
    return tau_.hooks.fi6(atom);
  }
  Proof hookFi13(const Formula& atom) {
    if (!tau_.hooks.fi13) throw ForcingError("missing FI13 generator for " + tau_.id);
    return tau_.hooks.fi13(atom);
  }

  Proof monoComplex(const Formula& phi);
  Proof densComplex(const Formula& phi);
  Proof noContraBuild(const Formula& phi);
  Proof sugarConjBuild(const Formula& a, const Formula& b);
  Proof sugarExistsBuild(const Formula& ex);
  Proof termValueBuild(const Term& t);
  Proof substLemmaBuild(const Formula& chi, Var x, const Term& t);
  Proof forcedSchemeBuild(const std::string& id, const SchemeArgs& args, const Formula& inst);

 public:
  // script-level combinators used by translateProof and the interpretation
  // pipelines (defined in engine2.hpp)
  Ln sBridge(Script& sc, Ln sChi, const Formula& chi, Var w);
  Ln sUnbridge(Script& sc, Ln sAll, const Formula& allPhi);
  Ln sMP(Script& sc, Ln sMinor, Ln sMajor, const Formula& minor, const Formula& conclusion);
  // the reserved source variable used for term values
  Var valueSrcVar(int i = 0) const { return nv(9000 + (uint32_t)i); }

 private:

  const ForcingTranslation& tau_;
  const Theory& theory_;
  const ObligationLedger& ledger_;
  std::deque<Proof> pool_;
  std::map<std::pair<uint64_t, uint64_t>, const Proof*> monoMemo_, densMemo_, ncMemo_,
      sugarConjMemo_, sugarExMemo_, termValMemo_, substMemo_, schemeMemo_, eqAxMemo_;
};

// --- Ops methods needing the engine ---

inline Ln Ops::applyMono(const Formula& phi, Ln condHi, Ln condLo, const std::vector<Ln>& nameLines,
                         Var hi, Var lo, Ln leLine, Ln forcedHi) {
  if (!eng) throw ForcingError("applyMono needs an engine");
  Ln m = sc.include(eng->mono(phi));
  Ln i = sc.forallElim(m, hi);
  i = sc.mp(condHi, i);
  i = sc.forallElim(i, lo);
  i = sc.mp(condLo, i);
  auto vars = freeVarsOrdered(cleanBinders(phi));
  for (size_t k = 0; k < vars.size(); ++k) {
    i = sc.forallElim(i, t.nameOf(vars[k]));
    i = sc.mp(nameLines[k], i);
  }
  return sc.mp(sc.andIntro(leLine, forcedHi), i);
}

inline Ln Ops::applyMonoNamed(const Formula& phi, Ln condHi, Ln condLo, Var hi, Var lo, Ln leLine,
                              Ln forcedHi,
                              const std::function<std::pair<Var, Ln>(Var)>& nameResolve) {
  if (!eng) throw ForcingError("applyMonoNamed needs an engine");
  Ln m = sc.include(eng->mono(phi));
  Ln i = sc.forallElim(m, hi);
  i = sc.mp(condHi, i);
  i = sc.forallElim(i, lo);
  i = sc.mp(condLo, i);
  for (auto& v : freeVarsOrdered(cleanBinders(phi))) {
    auto [nv_, ln_] = nameResolve(v);
    i = sc.forallElim(i, nv_);
    i = sc.mp(ln_, i);
  }
  return sc.mp(sc.andIntro(leLine, forcedHi), i);
}

inline Ln Ops::applyDens(const Formula& phi, Ln condLine, const std::vector<Ln>& nameLines, Var s,
                         Ln hypLine) {
  if (!eng) throw ForcingError("applyDens needs an engine");
  Ln m = sc.include(eng->dens(phi));
  auto vars = freeVarsOrdered(cleanBinders(phi));
  Ln i = instCondNames(m, s, condLine, vars, nameLines);
  return sc.mp(hypLine, i);
}

inline Ln Ops::applyNoContra(const Formula& phi, Ln condLine, const std::vector<Ln>& nameLines,
                             Var s, Ln forcedPos, Ln forcedNeg) {
  if (!eng) throw ForcingError("applyNoContra needs an engine");
  Ln m = sc.include(eng->noContra(phi));
  auto vars = freeVarsOrdered(cleanBinders(phi));
  Ln i = instCondNames(m, s, condLine, vars, nameLines);  // ¬(F ∧ F¬)
  Ln pair = sc.andIntro(forcedPos, forcedNeg);
  return absurdFromPair(pair, i);
}

// ---------------------------------------------------------------------------
// Statement frames: the shared assume/discharge scaffolding
// ---------------------------------------------------------------------------

// A frame for statements of the shape condAll(s, [condAll(s1,)] namesAll(vars, imp(hyp, …))).
struct Frame {
  Script& sc;
  const ForcingTranslation& t;
  Var s;
  std::vector<Var> srcVars;
  Ln hs{};
  std::optional<Ln> hs1;
  Var s1{};
  std::vector<Ln> hns;
  std::map<Var, Ln> nameLine;

  Frame(Script& sc_, const ForcingTranslation& t_, const Formula& phi, Var s_, bool twoConds)
      : sc(sc_), t(t_), s(s_) {
    hs = sc.assume(t.cond(s));
    if (twoConds) {
      s1 = t.workCond(1);
      hs1 = sc.assume(t.cond(s1));
    }
    srcVars = freeVarsOrdered(phi);
    for (auto& v : srcVars) {
      Ln h = sc.assume(t.nameOfSort(v.sort, t.nameOf(v)));
      hns.push_back(h);
      nameLine[v] = h;
    }
  }

  std::vector<Ln> namesFor(const Formula& sub) const {
    std::vector<Ln> out;
    for (auto& v : freeVarsOrdered(sub)) out.push_back(nameLine.at(v));
    return out;
  }

  // discharge in reverse order and close the statement
  Ln close(Ln body) {
    Ln i = body;
    for (size_t k = srcVars.size(); k-- > 0;) {
      i = sc.impIntro(hns[k], i);
      i = sc.forallIntro(i, t.nameOf(srcVars[k]));
    }
    if (hs1) {
      i = sc.impIntro(*hs1, i);
      i = sc.forallIntro(i, s1);
    }
    i = sc.impIntro(hs, i);
    return sc.forallIntro(i, s);
  }
};

// ---------------------------------------------------------------------------
// Lemma 3.4(a): monotonicity for complex formulas
// ---------------------------------------------------------------------------

inline Proof ForcingEngine::monoComplex(const Formula& phi) {
  Script sc(&theory_, &ledger_);
  Ops ops{sc, tau_, this};
  Var s = tau_.workCond(0), s1 = tau_.workCond(1);
  Frame fr(sc, tau_, phi, s, true);

  Formula Fs = forceFormula(tau_, phi, s).target;
  Ln hyp = sc.assume(fAnd(tau_.le(s1, s), Fs));
  Ln hle = sc.andElimL(hyp);
  Ln hF = sc.andElimR(hyp);
  auto [vns, core] = ops.splitForced(hF, phi);

  // ValidName conjuncts at s1 (Cond(s1) itself for sentences).
  std::vector<Ln> out;
  if (fr.srcVars.empty()) {
    out.push_back(*fr.hs1);
  } else {
    for (size_t i = 0; i < fr.srcVars.size(); ++i)
      out.push_back(ops.vnMono(vns[i], hle, fr.srcVars[i].sort, s, s1, tau_.nameOf(fr.srcVars[i])));
  }

  // The core is ∀[wN]∀sb(le(sb,s) ⇒ REST) with REST not mentioning s;
  // re-relativize via transitivity.
  Formula coreF = sc.at(core);
  bool hasNameLayer = phi->kind == FormulaNode::Kind::Forall;
  Var wN{};
  Formula inner = coreF;
  if (hasNameLayer) {
    wN = coreF->qvar;
    inner = coreF->a;
  }
  Var sb = inner->qvar;
  Ln hsb = sc.assume(tau_.le(sb, s1));
  Ln leS = ops.leTrans(hsb, hle);  // sb ⊴ s
  Ln coreInst = hasNameLayer ? sc.forallElim(core, wN) : core;
  coreInst = sc.forallElim(coreInst, sb);
  Ln rest = sc.mp(leS, coreInst);
  Ln imp = sc.impIntro(hsb, rest);
  Ln gen = sc.forallIntro(imp, sb);
  if (hasNameLayer) gen = sc.forallIntro(gen, wN);
  out.push_back(gen);

  Ln final = sc.andChain(out);
  Ln closed = fr.close(sc.impIntro(hyp, final));
  return sc.extract(closed, theory_.name);
}

// ---------------------------------------------------------------------------
// Lemma 3.3: a contradiction is never forced
// ---------------------------------------------------------------------------

inline Proof ForcingEngine::noContraBuild(const Formula& phi) {
  Script sc(&theory_, &ledger_);
  Ops ops{sc, tau_, this};
  Var s = tau_.workCond(0);
  Frame fr(sc, tau_, phi, s, false);

  Formula Fs = forceFormula(tau_, phi, s).target;
  Formula Fn = forceFormula(tau_, fNot(phi), s).target;
  Ln neg = sc.notIntro(fAnd(Fs, Fn), [&](Ln hPair) {
    Ln a = sc.andElimL(hPair);
    Ln b = sc.andElimR(hPair);
    auto [vnsN, coreN] = ops.splitForced(b, fNot(phi));
    (void)vnsN;
    // coreN: ∀sb(le(sb,s) ⇒ ¬F(φ,sb)); instantiate at s itself
    Ln self = ops.leRefl(fr.hs, s);
    Ln na = sc.mp(self, sc.forallElim(coreN, s));
    return std::pair<Ln, Ln>{a, na};
  });
  Ln closed = fr.close(neg);
  return sc.extract(closed, theory_.name);
}

// ---------------------------------------------------------------------------
// Lemma 3.4(b): density for complex formulas
// ---------------------------------------------------------------------------

inline Proof ForcingEngine::densComplex(const Formula& phi) {
  Script sc(&theory_, &ledger_);
  Ops ops{sc, tau_, this};
  Var s = tau_.workCond(0), wc1 = tau_.workCond(1), wc2 = tau_.workCond(2);
  Frame fr(sc, tau_, phi, s, false);
  Ln hD = sc.assume(stmt::densHyp(tau_, phi, s));

  // --- ValidName conjuncts at s via FI12 ---
  // For each name n: from the density hypothesis, every s'⊴s has s''⊴s' with
  // VN(s'', n) (a conjunct of the forced formula), then FI12.
  std::vector<Ln> vnAtS;
  auto deriveVn = [&](size_t idx) -> Ln {
    Var v = fr.srcVars[idx];
    Var n = tau_.nameOf(v);
    Ln hle1 = sc.assume(tau_.le(wc1, s));
    Ln inst = sc.mp(hle1, sc.forallElim(hD, wc1));  // ∃wc2⊴wc1 (wc2 ⊩ φ)
    Ln exVn = sc.guardedExistsElim(inst, [&](Ln hg, Ln hb) {
      auto [vns, core] = ops.splitForced(hb, phi);
      (void)core;
      Var wit = ops.leLoVar(hg);
      return sc.guardedExistsIntro(wc2, tau_.le(wc2, wc1), tau_.vn(v.sort, wc2, n), wit, hg, vns[idx]);
    });
    Ln prem = sc.forallIntro(sc.impIntro(hle1, exVn), wc1);
    std::string key = v.sort == Sort::Number ? "FI12-N" : "FI12-S";
    Ln fi12 = sc.ledg(tau_.fiIds.at(key));
    Ln i = sc.forallElim(fi12, s);
    i = sc.mp(fr.hs, i);
    i = sc.forallElim(i, n);
    i = sc.mp(fr.hns[idx], i);
    return sc.mp(prem, i);
  };
  if (fr.srcVars.empty()) {
    vnAtS.push_back(fr.hs);
  } else {
    for (size_t i = 0; i < fr.srcVars.size(); ++i) vnAtS.push_back(deriveVn(i));
  }

  // --- the core ---
  Formula Fs = forceFormula(tau_, phi, s).target;
  Formula coreGoal = conjunctsOf(Fs).back();
  Ln coreOut;

  if (phi->kind == FormulaNode::Kind::Not) {
    Formula psi = phi->a;
    Var sb = coreGoal->qvar;
    Ln hsb = sc.assume(tau_.le(sb, s));
    Formula Fpsi_sb = forceFormula(tau_, psi, sb).target;
    Ln notF = sc.notIntro(Fpsi_sb, [&](Ln hFpsi) {
      Ln inst = sc.mp(hsb, sc.forallElim(hD, sb));  // ∃wc2⊴sb (wc2 ⊩ ¬ψ)
      Ln absurdLine = sc.guardedExistsElim(inst, [&](Ln hg, Ln hb) {
        Var wit = ops.leLoVar(hg);
        Ln condSb = ops.condOfLe(hsb, true);
        Ln condW = ops.condOfLe(hg, true);
        Ln Fw = ops.applyMono(psi, condSb, condW, fr.namesFor(psi), sb, wit, hg, hFpsi);
        auto [vns2, core2] = ops.splitForced(hb, phi);
        (void)vns2;
        Ln self = ops.leRefl(condW, wit);
        Ln nFw = sc.mp(self, sc.forallElim(core2, wit));
        return ops.absurdFromPair(Fw, nFw);
      });
      return std::pair<Ln, Ln>{absurdLine, ops.notAbsurd()};
    });
    coreOut = sc.forallIntro(sc.impIntro(hsb, notF), sb);
  } else if (phi->kind == FormulaNode::Kind::Imp) {
    Formula A = phi->a, B = phi->b;
    Var sb = coreGoal->qvar;
    Formula exGoal = coreGoal->a->b;  // EX(sb)
    Ln hsb = sc.assume(tau_.le(sb, s));
    Ln condSb = ops.condOfLe(hsb, true);
    Formula FA_sb = forceFormula(tau_, A, sb).target;
    Ln ex = sc.caseSplit(
        FA_sb, exGoal,
        [&](Ln hFA) {
          Ln inst = sc.mp(hsb, sc.forallElim(hD, sb));  // ∃wc2⊴sb (wc2 ⊩ A⇒B)
          return sc.guardedExistsElim(inst, [&](Ln hg, Ln hb) {
            Var wit = ops.leLoVar(hg);
            Ln condW = ops.condOfLe(hg, true);
            Ln FAw = ops.applyMono(A, condSb, condW, fr.namesFor(A), sb, wit, hg, hFA);
            auto [vns2, core2] = ops.splitForced(hb, phi);
            (void)vns2;
            Ln self = ops.leRefl(condW, wit);
            Ln exInner = sc.mp(self, sc.forallElim(core2, wit));  // ∃sb2⊴wit(F(A,wit)⇒F(B,sb2))
            return sc.guardedExistsElim(exInner, [&](Ln hg2, Ln hb2) {
              Var sb2 = ops.leLoVar(hg2);
              Ln FB = sc.mp(FAw, hb2);
              Ln leSb = ops.leTrans(hg2, hg);   // sb2 ⊴ sb
              // (F(A,sb) ⇒ F(B,sb2)) by weakening
              Ln w = sc.mp(FB, sc.p1(sc.at(FB), FA_sb));
              // assemble EX(sb) at witness sb2 (the pattern's own bound var)
              Var bnd = exGoal->a->qvar;
              Formula g = exGoal->a->a->a;
              Formula body = exGoal->a->a->b->a;
              return sc.guardedExistsIntro(bnd, g, body, sb2, leSb, w);
            });
          });
        },
        [&](Ln hNFA) {
          // vacuous witness sb itself
          Ln hA = sc.assume(FA_sb);
          Formula FB_sb = forceFormula(tau_, B, sb).target;
          Ln fb = sc.exFalso(hA, hNFA, FB_sb);
          Ln w = sc.impIntro(hA, fb);
          Ln self = ops.leRefl(condSb, sb);
          Var bnd = exGoal->a->qvar;
          Formula g = exGoal->a->a->a;
          Formula body = exGoal->a->a->b->a;
          return sc.guardedExistsIntro(bnd, g, body, sb, self, w);
        });
    coreOut = sc.forallIntro(sc.impIntro(hsb, ex), sb);
  } else if (phi->kind == FormulaNode::Kind::Forall) {
    Formula A = phi->a;
    Var w = phi->qvar;
    Var wN = coreGoal->qvar;
    Formula innerAll = coreGoal->a;  // ∀sb(le(sb,s) ⇒ EX)
    Var sb = innerAll->qvar;
    Formula exGoal = innerAll->a->b;
    Ln hsb = sc.assume(tau_.le(sb, s));
    Ln condSb = ops.condOfLe(hsb, true);
    Formula vnW_sb = tau_.vn(w.sort, sb, wN);
    Ln ex = sc.caseSplit(
        vnW_sb, exGoal,
        [&](Ln hVN) {
          Ln inst = sc.mp(hsb, sc.forallElim(hD, sb));  // ∃wc2⊴sb (wc2 ⊩ ∀wA)
          return sc.guardedExistsElim(inst, [&](Ln hg, Ln hb) {
            Var wit = ops.leLoVar(hg);
            Ln condW = ops.condOfLe(hg, true);
            auto [vns2, core2] = ops.splitForced(hb, phi);
            (void)vns2;
            Ln core2w = sc.forallElim(core2, wN);
            Ln self = ops.leRefl(condW, wit);
            Ln exInner = sc.mp(self, sc.forallElim(core2w, wit));
            // ∃sb2⊴wit(VN(wit,wN) ⇒ F(A,sb2))
            return sc.guardedExistsElim(exInner, [&](Ln hg2, Ln hb2) {
              Var sb2 = ops.leLoVar(hg2);
              Ln vnW = ops.vnMono(hVN, hg, w.sort, sb, wit, wN);
              Ln FA = sc.mp(vnW, hb2);
              Ln leSb = ops.leTrans(hg2, hg);
              Ln wline = sc.mp(FA, sc.p1(sc.at(FA), vnW_sb));
              Var bnd = exGoal->a->qvar;
              Formula g = exGoal->a->a->a;
              Formula body = exGoal->a->a->b->a;
              return sc.guardedExistsIntro(bnd, g, body, sb2, leSb, wline);
            });
          });
        },
        [&](Ln hNVN) {
          Ln hV = sc.assume(vnW_sb);
          Formula FA_sb = forceFormula(tau_, A, sb).target;
          Ln fa = sc.exFalso(hV, hNVN, FA_sb);
          Ln wline = sc.impIntro(hV, fa);
          Ln self = ops.leRefl(condSb, sb);
          Var bnd = exGoal->a->qvar;
          Formula g = exGoal->a->a->a;
          Formula body = exGoal->a->a->b->a;
          return sc.guardedExistsIntro(bnd, g, body, sb, self, wline);
        });
    Ln gen = sc.forallIntro(sc.impIntro(hsb, ex), sb);
    coreOut = sc.forallIntro(gen, wN);
  } else {
    throw ForcingError("densComplex: unexpected formula kind");
  }

  vnAtS.push_back(coreOut);
  Ln final = sc.andChain(vnAtS);
  Ln closed = fr.close(sc.impIntro(hD, final));
  return sc.extract(closed, theory_.name);
}

}  // namespace ff
