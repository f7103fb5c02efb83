#pragma once

// Second half of the forcing engine: the Lemma 3.5 unfoldings, forced
// logical axioms, term values, the substitution lemma, and the whole-proof
// translation of Lemma 3.6.

#include "ff/engine.hpp"

namespace ff {

// ---------------------------------------------------------------------------
// Statement builders (continued)
// ---------------------------------------------------------------------------

namespace stmt {

inline std::vector<Var> termVarsOrdered(const Term& t) {
  return freeVarsOrdered(fEq(t, tZero()));
}

inline Formula vnConjVars(const ForcingTranslation& t, Var s, const std::vector<Var>& vars) {
  if (vars.empty()) return t.cond(s);
  std::vector<Formula> cs;
  for (auto& v : vars) cs.push_back(t.vnOfSrc(s, v));
  return conj(cs);
}

// eq. (valid-values-of-terms), existence part: below every condition some
// condition forces a valid name to equal t(v̄).
inline Formula termValue(const ForcingTranslation& t, Var wsrc, const Term& trm) {
  Var s = t.workCond(0), wc1 = t.workCond(1), wc2 = t.workCond(2);
  auto vars = termVarsOrdered(trm);
  Var nw = t.nameOf(wsrc);
  Formula eqF = forceFormula(t, fEq(tVar(wsrc), trm), wc2).target;
  Formula exName =
      fExistsSuch(nw, t.nameOfSort(Sort::Number, nw), fAnd(t.vn(Sort::Number, wc2, nw), eqF));
  Formula exCond = fExistsSuch(wc2, t.le(wc2, wc1), exName);
  Formula core = fForall(wc1, fImp(t.le(wc1, s), exCond));
  if (vars.empty()) return condAll(t, s, core);
  return condAll(t, s, namesAll(t, vars, fImp(vnConjVars(t, s, vars), core)));
}

// the substitution lemma for χ at the engine's value variable
inline Formula subst(const ForcingTranslation& t, Var wsrc, const Formula& chi, const Term& trm) {
  Var s = t.workCond(0);
  Formula chiT = substitute(chi, wsrc, trm);
  Formula anchor = fAnd(fEq(tVar(wsrc), trm), fAnd(chi, chiT));
  auto U = freeVarsOrdered(anchor);
  Formula body = fImp(forceFormula(t, fEq(tVar(wsrc), trm), s).target,
                      fIff(forceFormula(t, chi, s).target, forceFormula(t, chiT, s).target));
  return condAll(t, s, namesAll(t, U, fImp(vnConjVars(t, s, U), body)));
}

// the uniform per-line statement over a fixed variable list
inline Formula lineStatement(const ForcingTranslation& t, const std::vector<Var>& V,
                             const Formula& psi) {
  Var s = t.workCond(0);
  Formula F = forceFormula(t, psi, s).target;
  if (V.empty()) return condAll(t, s, F);
  return condAll(t, s, namesAll(t, V, fImp(vnConjVars(t, s, V), F)));
}

}  // namespace stmt

// ---------------------------------------------------------------------------
// A statement frame with names and the ValidName hypothesis
// ---------------------------------------------------------------------------

struct VnFrame {
  Script& sc;
  const ForcingTranslation& t;
  Var s;
  std::vector<Var> srcVars;
  Ln hs{};
  std::vector<Ln> hns;
  std::optional<Ln> hVN;
  std::map<Var, Ln> vnOf;  // VN(s, nameOf(v)) per source var
  std::map<Var, Ln> nameOfLn;

  VnFrame(Script& sc_, const ForcingTranslation& t_, const std::vector<Var>& vars, Var s_)
      : sc(sc_), t(t_), s(s_), srcVars(vars) {
    hs = sc.assume(t.cond(s));
    for (auto& v : srcVars) hns.push_back(sc.assume(t.nameOfSort(v.sort, t.nameOf(v))));
    for (size_t i = 0; i < srcVars.size(); ++i) nameOfLn[srcVars[i]] = hns[i];
    if (!srcVars.empty()) {
      hVN = sc.assume(stmt::vnConjVars(t, s, srcVars));
      auto parts = sc.splitChain(*hVN, srcVars.size());
      for (size_t i = 0; i < srcVars.size(); ++i) vnOf[srcVars[i]] = parts[i];
    }
  }

  std::vector<Ln> namesFor(const Formula& sub) const {
    std::vector<Ln> out;
    for (auto& v : freeVarsOrdered(sub)) out.push_back(nameOfLn.at(v));
    return out;
  }

  // VN provider at a condition directly below s.
  std::function<Ln(Var)> below(Ops& ops, Var at, Ln leLine) {
    return [this, &ops, at, leLine](Var v) {
      return ops.vnMono(vnOf.at(v), leLine, v.sort, s, at, t.nameOf(v));
    };
  }
  std::function<Ln(Var)> atS() {
    return [this](Var v) { return vnOf.at(v); };
  }

  Ln close(Ln body) {
    Ln i = body;
    if (hVN) i = sc.impIntro(*hVN, i);
    for (size_t k = srcVars.size(); k-- > 0;) {
      i = sc.impIntro(hns[k], i);
      i = sc.forallIntro(i, t.nameOf(srcVars[k]));
    }
    i = sc.impIntro(hs, i);
    return sc.forallIntro(i, s);
  }
};

// ---------------------------------------------------------------------------
// Forced-connective builders
// ---------------------------------------------------------------------------

namespace build {

inline Ln assembleChain(Ops& ops, const ForcingTranslation& t, const Formula& phi, Var at,
                        const std::function<Ln(Var)>& vnProv, Ln core, Ln condAt) {
  auto vars = freeVarsOrdered(phi);
  std::vector<Ln> parts;
  if (vars.empty()) parts.push_back(condAt);
  for (auto& v : vars) parts.push_back(vnProv(v));
  parts.push_back(core);
  return ops.sc.andChain(parts);
}

// s' ⊩ ¬φ from a body that refutes φ below s'.
inline Ln forcedNot(Ops& ops, const Formula& phi, Var sp, Ln condSp,
                    const std::function<Ln(Var)>& vnProv,
                    const std::function<Ln(Var, Ln, Ln)>& refute /* (sb,hle,hF) -> absurd */) {
  auto& sc = ops.sc;
  const auto& t = ops.t;
  Formula whole = forceFormula(t, fNot(phi), sp).target;
  Formula core = conjunctsOf(whole).back();
  Var sbPat = core->qvar;
  Var sb = sc.freshWitness(t.condSort);
  Ln hle = sc.assume(t.le(sb, sp));
  Formula F = forceFormula(t, phi, sb).target;
  Ln notF = sc.notIntro(F, [&](Ln hF) {
    Ln abs = refute(sb, hle, hF);
    return std::pair<Ln, Ln>{abs, ops.notAbsurd()};
  });
  Ln coreLn = sc.forallIntro(sc.impIntro(hle, notF), sb);
  coreLn = sc.forallIntro(sc.forallElim(coreLn, sbPat), sbPat);
  return assembleChain(ops, t, fNot(phi), sp, vnProv, coreLn, condSp);
}

// Introduces the FT7/FT8-shaped existential ∃b(le(b,·) ∧ (ANT ⇒ F(·,b)))
// from a witness le line and the forced consequent at the witness.
inline Ln introWitness(Ops& ops, const Formula& exGoal, const Formula& antecedent, Ln leWit,
                       Ln forcedLine) {
  auto& sc = ops.sc;
  Var bnd = exGoal->a->qvar;
  Formula g = exGoal->a->a->a;
  Formula ebody = exGoal->a->a->b->a;
  Ln w = sc.mp(forcedLine, sc.p1(sc.at(forcedLine), antecedent));
  return sc.guardedExistsIntro(bnd, g, ebody, ops.leLoVar(leWit), leWit, w);
}

// s' ⊩ (A ⇒ B) from a body that, given s1⊴s' forcing A, proves the inner
// existential EX(s1) (usually via introWitness).
inline Ln forcedImp(Ops& ops, const Formula& A, const Formula& B, Var sp, Ln condSp,
                    const std::function<Ln(Var)>& vnProv,
                    const std::function<Ln(Var, Ln, Ln, const Formula&)>& bodyEx) {
  auto& sc = ops.sc;
  const auto& t = ops.t;
  Formula impF = fImp(A, B);
  Formula whole = forceFormula(t, impF, sp).target;
  Formula core = conjunctsOf(whole).back();
  Var sb1 = core->qvar;
  Formula exGoal = core->a->b;
  Var bnd = exGoal->a->qvar;
  Formula g = exGoal->a->a->a;
  Formula ebody = exGoal->a->a->b->a;
  Var sb1Pat = sb1;
  sb1 = sc.freshWitness(t.condSort);
  exGoal = substituteVar(exGoal, sb1Pat, sb1);
  Formula g1 = substituteVar(g, sb1Pat, sb1);
  Formula ebody1 = substituteVar(ebody, sb1Pat, sb1);
  Formula FA = forceFormula(t, A, sb1).target;
  Ln hle1 = sc.assume(t.le(sb1, sp));
  Ln ex = sc.caseSplit(
      FA, exGoal,
      [&](Ln hFA) { return bodyEx(sb1, hle1, hFA, exGoal); },
      [&](Ln hN) {
        Ln hA = sc.assume(FA);
        Formula FBsb = forceFormula(t, B, sb1).target;
        Ln fb = sc.exFalso(hA, hN, FBsb);
        Ln w = sc.impIntro(hA, fb);
        Ln self = ops.leRefl(ops.condOfLe(hle1, true), sb1);
        return sc.guardedExistsIntro(bnd, g1, ebody1, sb1, self, w);
      });
  Ln coreLn = sc.forallIntro(sc.impIntro(hle1, ex), sb1);
  coreLn = sc.forallIntro(sc.forallElim(coreLn, sb1Pat), sb1Pat);
  return assembleChain(ops, t, impF, sp, vnProv, coreLn, condSp);
}

// s' ⊩ ∀w φ from a body that, given sb⊴s' and VN(sb, wN), proves the inner
// existential for sb.
inline Ln forcedForall(Ops& ops, Var w, const Formula& phi, Var sp, Ln condSp,
                       const std::function<Ln(Var)>& vnProv,
                       const std::function<Ln(Var, Var, Ln, Ln, const Formula&)>& bodyEx) {
  auto& sc = ops.sc;
  const auto& t = ops.t;
  Formula allF = fForall(w, phi);
  Formula whole = forceFormula(t, allF, sp).target;
  Formula core = conjunctsOf(whole).back();
  Var wN = core->qvar;
  Formula inner = core->a;
  Var sb = inner->qvar;
  Formula exGoal = inner->a->b;
  Var bnd = exGoal->a->qvar;
  Formula g = exGoal->a->a->a;
  Formula ebody = exGoal->a->a->b->a;
  Var sbPat = sb;
  sb = sc.freshWitness(t.condSort);
  exGoal = substituteVar(exGoal, sbPat, sb);
  Formula g1 = substituteVar(g, sbPat, sb);
  Formula ebody1 = substituteVar(ebody, sbPat, sb);
  Formula vnW = t.vn(w.sort, sb, wN);
  Ln hle = sc.assume(t.le(sb, sp));
  Ln ex = sc.caseSplit(
      vnW, exGoal,
      [&](Ln hVNw) { return bodyEx(wN, sb, hle, hVNw, exGoal); },
      [&](Ln hN) {
        Ln hV = sc.assume(vnW);
        Formula Fsb = forceFormula(t, phi, sb).target;
        Ln fp = sc.exFalso(hV, hN, Fsb);
        Ln wl = sc.impIntro(hV, fp);
        Ln self = ops.leRefl(ops.condOfLe(hle, true), sb);
        return sc.guardedExistsIntro(bnd, g1, ebody1, sb, self, wl);
      });
  Ln gen = sc.forallIntro(sc.impIntro(hle, ex), sb);
  gen = sc.forallIntro(sc.forallElim(gen, sbPat), sbPat);
  Ln coreLn = sc.forallIntro(gen, wN);
  return assembleChain(ops, t, allF, sp, vnProv, coreLn, condSp);
}

// Unfold s' ⊩ (A⇒B) at a condition at⊴s' (with its le line), eliminating the
// inner existential through the body.
inline Ln unfoldImp(Ops& ops, Ln hFimp, const Formula& A, const Formula& B, Ln leLine,
                    const std::function<Ln(Ln, Ln)>& body /* (hg: le(w,at), himp) -> concl */) {
  auto& sc = ops.sc;
  const auto& t = ops.t;
  Var at = ops.leLoVar(leLine);
  Formula impF = fImp(A, B);
  size_t chain = Ops::chainLen(impF);
  Ln core = sc.splitChain(hFimp, chain).back();
  Ln inst = sc.mp(leLine, sc.forallElim(core, at));  // EX(at)
  return sc.guardedExistsElim(inst, body);
}

}  // namespace build

// ---------------------------------------------------------------------------
// Lemma 3.5(a): conjunction
// ---------------------------------------------------------------------------

inline Proof ForcingEngine::sugarConjBuild(const Formula& A, const Formula& B) {
  Script sc(&theory_, &ledger_);
  Ops ops{sc, tau_, this};
  Var s = tau_.workCond(0), wc1 = tau_.workCond(1), wc2 = tau_.workCond(2);
  Formula AB = fAnd(A, B);           // ¬(A⇒¬B)
  Formula impPart = fImp(A, fNot(B));
  auto U = freeVarsOrdered(AB);
  VnFrame fr(sc, tau_, U, s);

  Formula FAB = forceFormula(tau_, AB, s).target;
  Formula FA = forceFormula(tau_, A, s).target;
  Formula FB = forceFormula(tau_, B, s).target;

  // (→) F(A∧B, s) ⊢ F(A,s) ∧ F(B,s), via density premises for A and B.
  Ln hC = sc.assume(FAB);
  auto forcedAtS = [&](const Formula& phi, bool left) -> Ln {
    Ln hle1 = sc.assume(tau_.le(wc1, s));
    // (rebuild of densPremise but with the hypothesis visible for discharge)
    Ln coreC = sc.splitChain(hC, Ops::chainLen(AB)).back();
    Ln notFimp = sc.mp(hle1, sc.forallElim(coreC, wc1));
    Formula Fimp1 = forceFormula(tau_, impPart, wc1).target;
    Formula coreF = conjunctsOf(Fimp1).back();
    Ln notCore = sc.notIntro(coreF, [&](Ln hCore) {
      std::vector<Ln> parts;
      auto vars = freeVarsOrdered(impPart);
      if (vars.empty()) {
        parts.push_back(ops.condOfLe(hle1, true));
      } else {
        for (auto& v : vars) parts.push_back(fr.below(ops, wc1, hle1)(v));
      }
      parts.push_back(hCore);
      return std::pair<Ln, Ln>{sc.andChain(parts), notFimp};
    });
    Ln ex = sc.notForallGuardedElim(notCore, [&](Ln hg, Ln hnEX) {
      Var sbw = ops.leLoVar(hg);
      Ln all = sc.dnegElim(hnEX);
      Ln self = ops.leRefl(ops.condOfLe(hg, true), sbw);
      Ln notImp = sc.mp(self, sc.forallElim(all, sbw));
      if (left) {
        Ln fa = sc.notImpL(notImp);
        return sc.guardedExistsIntro(wc2, tau_.le(wc2, wc1),
                                     forceFormula(tau_, A, wc2).target, sbw, hg, fa);
      }
      Ln notFnB = sc.notImpR(notImp);
      Formula FnB = forceFormula(tau_, fNot(B), sbw).target;
      Formula coreNB = conjunctsOf(FnB).back();
      Ln notCoreNB = sc.notIntro(coreNB, [&](Ln hCore) {
        std::vector<Ln> parts;
        auto vars = freeVarsOrdered(fNot(B));
        if (vars.empty()) {
          parts.push_back(ops.condOfLe(hg, true));
        } else {
          for (auto& v : vars) {
            Ln vn1 = fr.below(ops, wc1, hle1)(v);
            parts.push_back(ops.vnMono(vn1, hg, v.sort, wc1, sbw, tau_.nameOf(v)));
          }
        }
        parts.push_back(hCore);
        return std::pair<Ln, Ln>{sc.andChain(parts), notFnB};
      });
      return sc.notForallGuardedElim(notCoreNB, [&](Ln hg4, Ln hnn) {
        Var sb4 = ops.leLoVar(hg4);
        Ln fb = sc.dnegElim(hnn);
        Ln le4 = ops.leTrans(hg4, hg);
        return sc.guardedExistsIntro(wc2, tau_.le(wc2, wc1),
                                     forceFormula(tau_, B, wc2).target, sb4, le4, fb);
      });
    });
    Ln prem = sc.forallIntro(sc.impIntro(hle1, ex), wc1);
    const Formula& phiRef = left ? A : B;
    (void)phi;
    return ops.applyDens(phiRef, fr.hs, fr.namesFor(phiRef), s, prem);
  };
  Ln fa = forcedAtS(A, true);
  Ln fb = forcedAtS(B, false);
  Ln fwd = sc.impIntro(hC, sc.andIntro(fa, fb));

  // (←) F(A,s) ∧ F(B,s) ⊢ F(A∧B, s)
  Ln hP = sc.assume(fAnd(FA, FB));
  Ln ha = sc.andElimL(hP);
  Ln hb = sc.andElimR(hP);
  Ln back = build::forcedNot(ops, impPart, s, fr.hs, fr.atS(), [&](Var sb, Ln hle, Ln hFimp) {
    // sb ⊩ (A⇒¬B) refutes F(B,s): unfold at sb itself
    Ln faSb = ops.applyMono(A, fr.hs, ops.condOfLe(hle, true), fr.namesFor(A), s, sb, hle, ha);
    Ln self = ops.leRefl(ops.condOfLe(hle, true), sb);
    return build::unfoldImp(ops, hFimp, A, fNot(B), self, [&](Ln hg2, Ln hb2) {
      Ln fnB = sc.mp(faSb, hb2);  // F(¬B, w2)
      Var w2 = ops.leLoVar(hg2);
      Ln fbW = ops.applyMono(B, fr.hs, ops.condOfLe(hg2, true), fr.namesFor(B), s, w2,
                             ops.leTrans(hg2, hle), hb);
      Ln coreN = sc.splitChain(fnB, Ops::chainLen(fNot(B))).back();
      Ln selfW = ops.leRefl(ops.condOfLe(hg2, true), w2);
      Ln notFb = sc.mp(selfW, sc.forallElim(coreN, w2));
      return ops.absurdFromPair(fbW, notFb);
    });
  });
  Ln bwd = sc.impIntro(hP, back);
  Ln iff = sc.andIntro(fwd, bwd);
  return sc.extract(fr.close(iff), theory_.name);
}

// ---------------------------------------------------------------------------
// Lemma 3.5(b): the existential unfolding
// ---------------------------------------------------------------------------

inline Proof ForcingEngine::sugarExistsBuild(const Formula& ex) {
  Var x;
  Formula phi;
  if (!matchExistsPattern(ex, x, phi)) throw ForcingError("sugarExists: not an existential");
  Script sc(&theory_, &ledger_);
  Ops ops{sc, tau_, this};
  Var s = tau_.workCond(0), wc1 = tau_.workCond(1), wc2 = tau_.workCond(2);
  Formula allNeg = fForall(x, fNot(phi));
  Var xN = tau_.nameOf(x);
  auto U = freeVarsOrdered(ex);
  Frame fr(sc, tau_, ex, s, false);

  Formula LHS = forceFormula(tau_, ex, s).target;
  Formula innerEx =
      fExistsSuch(xN, tau_.vn(x.sort, wc2, xN), forceFormula(tau_, phi, wc2).target);
  Formula RHS = fForall(wc1, fImp(tau_.le(wc1, s),
                                  fExistsSuch(wc2, tau_.le(wc2, wc1), innerEx)));

  // (→)
  Ln hE = sc.assume(LHS);
  auto exParts = sc.splitChain(hE, Ops::chainLen(ex));
  Ln exCore = exParts.back();
  std::map<Var, Ln> vnS;
  for (size_t i = 0; i < U.size(); ++i) vnS[U[i]] = exParts[i];

  Ln hle1 = sc.assume(tau_.le(wc1, s));
  Ln notAll = sc.mp(hle1, sc.forallElim(exCore, wc1));  // ¬F(∀x¬φ, wc1)
  Formula FAllNeg1 = forceFormula(tau_, allNeg, wc1).target;
  Formula coreAll = conjunctsOf(FAllNeg1).back();
  Ln notCore = sc.notIntro(coreAll, [&](Ln hCore) {
    std::vector<Ln> parts;
    auto vars = freeVarsOrdered(allNeg);
    if (vars.empty()) {
      parts.push_back(ops.condOfLe(hle1, true));
    } else {
      for (auto& v : vars)
        parts.push_back(ops.vnMono(vnS.at(v), hle1, v.sort, s, wc1, tau_.nameOf(v)));
    }
    parts.push_back(hCore);
    return std::pair<Ln, Ln>{sc.andChain(parts), notAll};
  });
  // ¬∀xN∀sb'(le(sb',wc1) ⇒ EX''): peel both layers
  Ln got = sc.notForallPlainElim(notCore, [&](Ln hnInner) {
    // hnInner: ¬∀sb'(le(sb',wc1) ⇒ EX''(sb')) at a fresh name witness
    return sc.notForallGuardedElim(hnInner, [&](Ln hg, Ln hnEX) {
      Var sbw = ops.leLoVar(hg);
      Ln all = sc.dnegElim(hnEX);
      Ln self = ops.leRefl(ops.condOfLe(hg, true), sbw);
      Ln notVimp = sc.mp(self, sc.forallElim(all, sbw));
      Ln hVNx = sc.notImpL(notVimp);   // VN(sbw, nx)
      Ln notFn = sc.notImpR(notVimp);  // ¬F(¬φ@nx, sbw)
      // the witness name: recover from the VN formula (its non-condition free var)
      Formula vnF = sc.at(hVNx);
      Var nx{};
      {
        auto fv = freeVars(vnF);
        fv.erase(sbw);
        if (fv.size() != 1) throw ForcingError("sugarExists: cannot locate the witness name");
        nx = *fv.begin();
      }
      Formula phiAtNx = forceFormula(tau_, phi, wc2).target;
      phiAtNx = substituteVar(phiAtNx, xN, nx);
      Formula notPhiNx = substituteVar(forceFormula(tau_, fNot(phi), sbw).target, xN, nx);
      Formula coreNP = conjunctsOf(notPhiNx).back();
      Ln notCoreNP = sc.notIntro(coreNP, [&](Ln hCore) {
        std::vector<Ln> parts;
        for (auto& v : freeVarsOrdered(fNot(phi))) {
          if (v == x) {
            parts.push_back(hVNx);
          } else {
            Ln v1 = ops.vnMono(vnS.at(v), hle1, v.sort, s, wc1, tau_.nameOf(v));
            parts.push_back(ops.vnMono(v1, hg, v.sort, wc1, sbw, tau_.nameOf(v)));
          }
        }
        parts.push_back(hCore);
        return std::pair<Ln, Ln>{sc.andChain(parts), notFn};
      });
      return sc.notForallGuardedElim(notCoreNP, [&](Ln hg4, Ln hnn) {
        Var sb4 = ops.leLoVar(hg4);
        Ln fphi = sc.dnegElim(hnn);  // F(φ@nx, sb4)
        Ln vn4 = ops.vnMono(hVNx, hg4, x.sort, sbw, sb4, nx);
        // inner ∃xN at sb4
        Formula innerAt4 = substituteVar(innerEx, wc2, sb4);
        Formula guardI = tau_.vn(x.sort, sb4, xN);
        Formula bodyI = substituteVar(forceFormula(tau_, phi, wc2).target, wc2, sb4);
        Ln innerLn = sc.guardedExistsIntro(xN, guardI, bodyI, nx, vn4, fphi);
        if (!formulaEq(sc.at(innerLn), innerAt4))
          throw ForcingError("sugarExists: inner witness shape mismatch");
        Ln le4 = ops.leTrans(hg4, hg);
        return sc.guardedExistsIntro(wc2, tau_.le(wc2, wc1), innerEx, sb4, le4, innerLn);
      });
    });
  });
  Ln fwdRHS = sc.forallIntro(sc.impIntro(hle1, got), wc1);
  Ln fwd = sc.impIntro(hE, fwdRHS);

  // (←)
  Ln hR = sc.assume(RHS);
  // ValidName parts of ex at s via FI12
  std::vector<Ln> outVns;
  for (size_t idx = 0; idx < U.size(); ++idx) {
    Var v = U[idx];
    Var n = tau_.nameOf(v);
    Ln hle = sc.assume(tau_.le(wc1, s));
    Ln inst = sc.mp(hle, sc.forallElim(hR, wc1));
    Ln exVn = sc.guardedExistsElim(inst, [&](Ln hg, Ln hb) {
      // hb: ∃xN(VN ∧ F(φ,w2)); dig out VN(w2, n)
      return sc.guardedExistsElim(hb, [&](Ln hVNw, Ln hFw) {
        (void)hVNw;
        auto parts = sc.splitChain(hFw, Ops::chainLen(phi));
        auto pv = freeVarsOrdered(phi);
        Ln vnLine{};
        for (size_t i = 0; i < pv.size(); ++i)
          if (pv[i] == v) vnLine = parts[i];
        if (!vnLine.valid()) throw ForcingError("sugarExists: name not in subformula");
        return sc.guardedExistsIntro(wc2, tau_.le(wc2, wc1), tau_.vn(v.sort, wc2, n),
                                     ops.leLoVar(hg), hg, vnLine);
      });
    });
    Ln prem = sc.forallIntro(sc.impIntro(hle, exVn), wc1);
    std::string key = v.sort == Sort::Number ? "FI12-N" : "FI12-S";
    Ln i = sc.forallElim(sc.ledg(tau_.fiIds.at(key)), s);
    i = sc.mp(fr.hs, i);
    i = sc.forallElim(i, n);
    i = sc.mp(fr.hns[idx], i);
    outVns.push_back(sc.mp(prem, i));
  }
  if (U.empty()) outVns.push_back(fr.hs);

  // core of F(ex, s)
  Formula coreGoal = conjunctsOf(LHS).back();
  Var sb = coreGoal->qvar;
  Ln hsb = sc.assume(tau_.le(sb, s));
  Formula FU = forceFormula(tau_, allNeg, sb).target;
  Ln refuted = sc.notIntro(FU, [&](Ln hU) {
    Ln inst = sc.mp(hsb, sc.forallElim(hR, sb));
    Ln abs = sc.guardedExistsElim(inst, [&](Ln hg, Ln hbody) {
      return sc.guardedExistsElim(hbody, [&](Ln hVNx, Ln hFphi) {
        Var w2 = ops.leLoVar(hg);
        Formula vnF = sc.at(hVNx);
        Var nx{};
        {
          auto fv = freeVars(vnF);
          fv.erase(w2);
          if (fv.size() != 1) throw ForcingError("sugarExists: cannot locate the witness name (bwd)");
          nx = *fv.begin();
        }
        // hU core instantiated at (nx, w2) below sb
        Ln coreU = sc.splitChain(hU, Ops::chainLen(allNeg)).back();
        Ln instU = sc.forallElim(coreU, nx);
        Ln exU = sc.mp(hg, sc.forallElim(instU, w2));
        return sc.guardedExistsElim(exU, [&](Ln hg2, Ln hb2) {
          Ln fneg = sc.mp(hVNx, hb2);  // F(¬φ@nx, sbb)
          Var sbb = ops.leLoVar(hg2);
          auto resolve = [&](Var v) -> std::pair<Var, Ln> {
            if (v == x) return {nx, ops.nameOfVn(hVNx, x.sort, w2, nx)};
            size_t idx = 0;
            for (size_t i = 0; i < U.size(); ++i)
              if (U[i] == v) idx = i;
            return {tau_.nameOf(v), fr.hns[idx]};
          };
          Ln fphiDown = ops.applyMonoNamed(phi, ops.condOfLe(hg, true), ops.condOfLe(hg2, true),
                                           w2, sbb, hg2, hFphi, resolve);
          Ln coreN = sc.splitChain(fneg, Ops::chainLen(fNot(phi))).back();
          Ln selfB = ops.leRefl(ops.condOfLe(hg2, true), sbb);
          Ln notPhiB = sc.mp(selfB, sc.forallElim(coreN, sbb));
          return ops.absurdFromPair(fphiDown, notPhiB);
        });
      });
    });
    return std::pair<Ln, Ln>{abs, ops.notAbsurd()};
  });
  Ln bwdCore = sc.forallIntro(sc.impIntro(hsb, refuted), sb);
  outVns.push_back(bwdCore);
  Ln bwd = sc.impIntro(hR, sc.andChain(outVns));
  Ln iff = sc.andIntro(fwd, bwd);
  return sc.extract(fr.close(iff), theory_.name);
}


// ---------------------------------------------------------------------------
// Values of terms (eq. valid-values-of-terms, existence part)
// ---------------------------------------------------------------------------

inline const Proof& ForcingEngine::termValue(const Term& t) {
  Formula k = fEq(tVar(valueSrcVar()), t);
  if (auto* p = find(termValMemo_, k)) return *p;
  Proof p = termValueBuild(t);
  verify(p, stmt::termValue(tau_, valueSrcVar(), t), "termValue");
  return store(termValMemo_, k, std::move(p));
}

inline Proof ForcingEngine::termValueBuild(const Term& t) {
  Script sc(&theory_, &ledger_);
  Ops ops{sc, tau_, this};
  Var s = tau_.workCond(0), wc1 = tau_.workCond(1), wc2 = tau_.workCond(2);
  Var wsrc = valueSrcVar();
  Var nw = tau_.nameOf(wsrc);
  auto vars = stmt::termVarsOrdered(t);
  VnFrame fr(sc, tau_, vars, s);

  Formula eqAt2 = forceFormula(tau_, fEq(tVar(wsrc), t), wc2).target;
  Formula exName =
      fExistsSuch(nw, tau_.nameOfSort(Sort::Number, nw), fAnd(tau_.vn(Sort::Number, wc2, nw), eqAt2));
  Formula exCond = fExistsSuch(wc2, tau_.le(wc2, wc1), exName);

  Ln hle1 = sc.assume(tau_.le(wc1, s));
  Ln condW1 = ops.condOfLe(hle1, true);
  Ln result{};

  auto introGoal = [&](Var atCond, Ln leAtWc1, Var witName, Ln nameLn, Ln vnLn, Ln eqLn) {
    // eqLn: F(wsrc = t, atCond)[nw := witName]
    Formula innerBody = fAnd(tau_.vn(Sort::Number, wc2, nw), eqAt2);
    Formula innerAt = substituteVar(innerBody, wc2, atCond);
    Formula guardName = tau_.nameOfSort(Sort::Number, nw);
    Ln pairLn = sc.andIntro(vnLn, eqLn);
    Ln inner = sc.guardedExistsIntro(nw, guardName, innerAt, witName, nameLn, pairLn);
    return sc.guardedExistsIntro(wc2, tau_.le(wc2, wc1), exName, atCond, leAtWc1, inner);
  };

  switch (t->kind) {
    case TermNode::Kind::Variable: {
      Var y = t->var;
      Ln vn1 = fr.below(ops, wc1, hle1)(y);
      Ln fi7 = sc.ledg(tau_.fiIds.at("FI7-DIAG"));
      Ln i = sc.forallElim(fi7, wc1);
      i = sc.mp(condW1, i);
      i = sc.forallElim(i, tau_.nameOf(y));
      i = sc.mp(fr.nameOfLn.at(y), i);
      Ln eqLn = sc.mp(vn1, i);  // wc1 ⊩ (wsrc = y) with the name collapsed onto y
      Ln self = ops.leRefl(condW1, wc1);
      result = introGoal(wc1, self, tau_.nameOf(y), fr.nameOfLn.at(y), vn1, eqLn);
      break;
    }
    case TermNode::Kind::Zero:
    case TermNode::Kind::One: {
      std::string key = t->kind == TermNode::Kind::Zero ? "FI10-zero" : "FI10-one";
      Ln fi10 = sc.ledg(tau_.fiIds.at(key));
      Ln i = sc.mp(fr.hs, sc.forallElim(fi10, s));
      Ln exist = sc.andElimL(i);
      Ln inst = sc.mp(hle1, sc.forallElim(exist, wc1));
      result = sc.guardedExistsElim(inst, [&](Ln hg, Ln hbody) {
        return sc.guardedExistsElim(hbody, [&](Ln hName, Ln hEq) {
          Var c2 = ops.leLoVar(hg);
          // recover the witness name from the Name(w) guard
          auto fv = freeVars(sc.at(hName));
          if (fv.size() != 1) throw ForcingError("termValue: cannot locate the value name");
          Var wn = *fv.begin();
          // VN(c2, wn) from the atom's own chain (FT4)
          Formula atomF = fEq(tVar(nv(2)), t);  // FI10 uses source var x2 for w
          auto parts = sc.splitChain(hEq, Ops::chainLen(atomF));
          Ln vnLn{};
          for (auto& pl : parts)
            if (formulaEq(sc.at(pl), tau_.vn(Sort::Number, c2, wn))) vnLn = pl;
          if (!vnLn.valid()) throw ForcingError("termValue: VN conjunct not found in forced atom");
          return introGoal(c2, hg, wn, hName, vnLn, hEq);
        });
      });
      break;
    }
    case TermNode::Kind::Add:
    case TermNode::Kind::Mul: {
      Term r1 = t->a, r2 = t->b;
      Var u1 = valueSrcVar(1), u2 = valueSrcVar(2);
      // value of r1 below wc1
      Ln tv1 = sc.include(termValue(r1));
      auto vars1 = stmt::termVarsOrdered(r1);
      Ln i1 = sc.forallElim(tv1, s);
      i1 = sc.mp(fr.hs, i1);
      for (auto& v : vars1) {
        i1 = sc.forallElim(i1, tau_.nameOf(v));
        i1 = sc.mp(fr.nameOfLn.at(v), i1);
      }
      if (!vars1.empty()) {
        std::vector<Ln> vns;
        for (auto& v : vars1) vns.push_back(fr.vnOf.at(v));
        i1 = sc.mp(sc.andChain(vns), i1);
      }
      Ln ex1 = sc.mp(hle1, sc.forallElim(i1, wc1));
      result = sc.guardedExistsElim(ex1, [&](Ln hg1, Ln hbody1) {
        return sc.guardedExistsElim(hbody1, [&](Ln hName1, Ln hPair1) {
          Var c1 = ops.leLoVar(hg1);
          Ln condC1 = ops.condOfLe(hg1, true);
          Ln hVn1 = sc.andElimL(hPair1);
          Ln hEq1 = sc.andElimR(hPair1);  // F(wsrc=r1, c1)[nw:=w1]
          auto fv1 = freeVars(sc.at(hName1));
          if (fv1.size() != 1) throw ForcingError("termValue: lost value name 1");
          Var w1 = *fv1.begin();
          // value of r2 below c1
          Ln tv2 = sc.include(termValue(r2));
          auto vars2 = stmt::termVarsOrdered(r2);
          Ln i2 = sc.forallElim(tv2, c1);
          i2 = sc.mp(condC1, i2);
          for (auto& v : vars2) {
            i2 = sc.forallElim(i2, tau_.nameOf(v));
            i2 = sc.mp(fr.nameOfLn.at(v), i2);
          }
          if (!vars2.empty()) {
            std::vector<Ln> vns;
            for (auto& v : vars2) {
              Ln vn1l = fr.below(ops, wc1, hle1)(v);
              vns.push_back(ops.vnMono(vn1l, hg1, v.sort, wc1, c1, tau_.nameOf(v)));
            }
            i2 = sc.mp(sc.andChain(vns), i2);
          }
          Ln selfC1 = ops.leRefl(condC1, c1);
          Ln ex2 = sc.mp(selfC1, sc.forallElim(i2, c1));
          return sc.guardedExistsElim(ex2, [&](Ln hg2, Ln hbody2) {
            return sc.guardedExistsElim(hbody2, [&](Ln hName2, Ln hPair2) {
              Var c2 = ops.leLoVar(hg2);
              Ln condC2 = ops.condOfLe(hg2, true);
              Ln hVn2 = sc.andElimL(hPair2);
              Ln hEq2 = sc.andElimR(hPair2);
              auto fv2 = freeVars(sc.at(hName2));
              if (fv2.size() != 1) throw ForcingError("termValue: lost value name 2");
              Var w2v = *fv2.begin();
              // FI10 for the function symbol at names (w1, w2)
              std::string key = t->kind == TermNode::Kind::Add ? "FI10-plus" : "FI10-times";
              Ln fi10 = sc.ledg(tau_.fiIds.at(key));
              Ln j = sc.forallElim(fi10, c2);
              j = sc.mp(condC2, j);
              j = sc.forallElim(j, w1);
              j = sc.mp(hName1, j);
              j = sc.forallElim(j, w2v);
              j = sc.mp(hName2, j);
              Ln vn1c2 = ops.vnMono(hVn1, hg2, Sort::Number, c1, c2, w1);
              j = sc.mp(sc.andIntro(vn1c2, hVn2), j);
              Ln exist = sc.andElimL(j);
              Ln selfC2 = ops.leRefl(condC2, c2);
              Ln ex3 = sc.mp(selfC2, sc.forallElim(exist, c2));
              return sc.guardedExistsElim(ex3, [&](Ln hg3, Ln hbody3) {
                return sc.guardedExistsElim(hbody3, [&](Ln hName3, Ln hEq3) {
                  Var c3 = ops.leLoVar(hg3);
                  Ln condC3 = ops.condOfLe(hg3, true);
                  auto fv3 = freeVars(sc.at(hName3));
                  if (fv3.size() != 1) throw ForcingError("termValue: lost value name 3");
                  Var w3 = *fv3.begin();
                  // hEq3: F(wsrc = w1op w2, c3) at names (w3, w1, w2) — rewrite
                  // the arguments to r1 and r2 with the substitution lemma.
                  Term opU = t->kind == TermNode::Kind::Add ? tAdd(tVar(u1), tVar(u2))
                                                            : tMul(tVar(u1), tVar(u2));
                  Term opR1U2 = t->kind == TermNode::Kind::Add ? tAdd(r1, tVar(u2))
                                                               : tMul(r1, tVar(u2));
                  Formula chi1 = fEq(tVar(wsrc), opU);
                  Formula chi2 = fEq(tVar(wsrc), opR1U2);
                  // move the eq facts down to c3
                  auto resolve1 = [&](Var v) -> std::pair<Var, Ln> {
                    if (v == wsrc) return {w1, hName1};
                    size_t idx = 0;
                    for (size_t ii = 0; ii < vars.size(); ++ii)
                      if (vars[ii] == v) idx = ii;
                    return {tau_.nameOf(v), fr.nameOfLn.at(vars[idx])};
                  };
                  Ln le31 = ops.leTrans(hg3, hg2);  // c3 ⊴ c1
                  Ln eq1At3 = ops.applyMonoNamed(fEq(tVar(wsrc), r1), condC1, condC3, c1, c3,
                                                 le31, hEq1, resolve1);
                  auto resolve2 = [&](Var v) -> std::pair<Var, Ln> {
                    if (v == wsrc) return {w2v, hName2};
                    size_t idx = 0;
                    for (size_t ii = 0; ii < vars.size(); ++ii)
                      if (vars[ii] == v) idx = ii;
                    return {tau_.nameOf(v), fr.nameOfLn.at(vars[idx])};
                  };
                  Ln eq2At3 = ops.applyMonoNamed(fEq(tVar(wsrc), r2), condC2, condC3, c2, c3,
                                                 hg3, hEq2, resolve2);
                  // substitution lemma 1: u1 := r1 inside wsrc = u1 op u2
                  auto applySubst = [&](const Formula& chi, Var xv, const Term& trm,
                                        const std::function<std::pair<Var, Ln>(Var)>& resolve,
                                        Ln eqLn, Ln lhsLn, bool forward) {
                    Ln sl = sc.include(substLemma(chi, xv, trm));
                    Formula anchor = fAnd(fEq(tVar(xv), trm), fAnd(chi, substitute(chi, xv, trm)));
                    auto Uv = freeVarsOrdered(anchor);
                    Ln jj = sc.forallElim(sl, c3);
                    jj = sc.mp(condC3, jj);
                    std::vector<Ln> vnParts;
                    for (auto& v : Uv) {
                      auto [nv_, nl_] = resolve(v);
                      jj = sc.forallElim(jj, nv_);
                      jj = sc.mp(nl_, jj);
                      // VN at c3 for this name
                      Ln vnLn{};
                      if (nv_ == w1) vnLn = ops.vnMono(hVn1, le31, Sort::Number, c1, c3, w1);
                      else if (nv_ == w2v) vnLn = ops.vnMono(hVn2, hg3, Sort::Number, c2, c3, w2v);
                      else if (nv_ == w3) {
                        // VN(c3, w3) from the forced atom hEq3 (FT4)
                        Formula atomF = fEq(tVar(wsrc), opU);
                        auto parts = sc.splitChain(hEq3, Ops::chainLen(atomF));
                        for (auto& pl : parts)
                          if (formulaEq(sc.at(pl), tau_.vn(Sort::Number, c3, w3))) vnLn = pl;
                        if (!vnLn.valid()) throw ForcingError("termValue: VN(c3,w3) not found");
                      } else {
                        Ln vnw = fr.below(ops, wc1, hle1)(v);
                        Ln vnc1 = ops.vnMono(vnw, hg1, v.sort, wc1, c1, tau_.nameOf(v));
                        vnLn = ops.vnMono(vnc1, le31, v.sort, c1, c3, tau_.nameOf(v));
                      }
                      vnParts.push_back(vnLn);
                    }
                    jj = sc.mp(sc.andChain(vnParts), jj);
                    jj = sc.mp(eqLn, jj);  // the iff
                    Ln dir = forward ? sc.andElimL(jj) : sc.andElimR(jj);
                    return sc.mp(lhsLn, dir);
                  };
                  auto resolveChi1 = [&](Var v) -> std::pair<Var, Ln> {
                    if (v == u1) return {w1, hName1};
                    if (v == u2) return {w2v, hName2};
                    if (v == wsrc) return {w3, hName3};
                    return {tau_.nameOf(v), fr.nameOfLn.at(v)};
                  };
                  Ln step1 = applySubst(chi1, u1, r1, resolveChi1, eq1At3, hEq3, true);
                  auto resolveChi2 = [&](Var v) -> std::pair<Var, Ln> {
                    if (v == u2) return {w2v, hName2};
                    if (v == wsrc) return {w3, hName3};
                    return {tau_.nameOf(v), fr.nameOfLn.at(v)};
                  };
                  Ln step2 = applySubst(chi2, u2, r2, resolveChi2, eq2At3, step1, true);
                  // step2: F(wsrc = t, c3)[nw := w3]
                  Formula atomT = fEq(tVar(wsrc), t);
                  auto parts = sc.splitChain(step2, Ops::chainLen(atomT));
                  Ln vnW3{};
                  for (auto& pl : parts)
                    if (formulaEq(sc.at(pl), tau_.vn(Sort::Number, c3, w3))) vnW3 = pl;
                  if (!vnW3.valid()) throw ForcingError("termValue: final VN not found");
                  Ln leC3Wc1 = ops.leTrans(le31, hg1);
                  return introGoal(c3, leC3Wc1, w3, hName3, vnW3, step2);
                });
              });
            });
          });
        });
      });
      break;
    }
    default:
      throw ForcingError("termValue: meta slot in term");
  }

  Ln core = sc.forallIntro(sc.impIntro(hle1, result), wc1);
  return sc.extract(fr.close(core), theory_.name);
}

// ---------------------------------------------------------------------------
// The substitution lemma, lifted to all formulas from FI11 at atoms
// ---------------------------------------------------------------------------

inline const Proof& ForcingEngine::substLemma(const Formula& chi0, Var x, const Term& t) {
  Formula chi = cleanBinders(chi0);
  Formula k = fAnd(fEq(tVar(x), t), chi);
  if (auto* p = find(substMemo_, k)) return *p;
  Proof p = substLemmaBuild(chi, x, t);
  verify(p, stmt::subst(tau_, x, chi, t), "substLemma");
  return store(substMemo_, k, std::move(p));
}

inline Proof ForcingEngine::substLemmaBuild(const Formula& chi, Var x, const Term& t) {
  // hygiene: no binder of chi may clash with x or FV(t)
  {
    std::set<Var> bound;
    std::function<void(const Formula&)> scan = [&](const Formula& f) {
      if (f->kind == FormulaNode::Kind::Forall) {
        bound.insert(f->qvar);
        scan(f->a);
      } else if (f->kind == FormulaNode::Kind::Not) {
        scan(f->a);
      } else if (f->kind == FormulaNode::Kind::Imp) {
        scan(f->a);
        scan(f->b);
      }
    };
    scan(chi);
    if (bound.count(x)) throw ForcingError("substLemma: x is rebound inside the formula");
    for (auto& v : freeVars(t))
      if (bound.count(v)) throw ForcingError("substLemma: capture, binder of chi occurs in t");
  }

  if (chi->kind == FormulaNode::Kind::Atom) {
    if (!tau_.hooks.fi11) throw ForcingError("missing FI11 generator for " + tau_.id);
    return tau_.hooks.fi11(chi, x, t);
  }

  Script sc(&theory_, &ledger_);
  Ops ops{sc, tau_, this};
  Var s = tau_.workCond(0);
  Formula chiT = substitute(chi, x, t);
  Formula eqF = fEq(tVar(x), t);
  Formula anchor = fAnd(eqF, fAnd(chi, chiT));
  auto U = freeVarsOrdered(anchor);
  VnFrame fr(sc, tau_, U, s);
  Ln hEq = sc.assume(forceFormula(tau_, eqF, s).target);

  // applies the sub-lemma for ψ at a condition `at` reachable through leLine
  // (le(at, s)); eqAt is F(x=t, at).
  using NameRes = std::function<std::pair<Var, Ln>(Var)>;
  NameRes frameNames = [&](Var v) -> std::pair<Var, Ln> {
    return {tau_.nameOf(v), fr.nameOfLn.at(v)};
  };
  auto applySub = [&](const Formula& psi, Var at, Ln condAt,
                      const std::function<Ln(Var)>& vnAt, Ln eqAt,
                      const NameRes& nameRes) -> Ln {
    Ln sl = sc.include(substLemma(psi, x, t));
    Formula anchorP = fAnd(eqF, fAnd(psi, substitute(psi, x, t)));
    auto Uv = freeVarsOrdered(anchorP);
    Ln j = sc.forallElim(sl, at);
    j = sc.mp(condAt, j);
    std::vector<Ln> vns;
    for (auto& v : Uv) {
      auto [nv_, nl_] = nameRes(v);
      j = sc.forallElim(j, nv_);
      j = sc.mp(nl_, j);
      vns.push_back(vnAt(v));
    }
    j = sc.mp(sc.andChain(vns), j);
    return sc.mp(eqAt, j);  // the iff at `at`
  };

  auto eqBelow = [&](Var at, Ln condAt, Ln leLine) {
    return ops.applyMono(eqF, fr.hs, condAt, fr.namesFor(eqF), s, at, leLine, hEq);
  };

  auto direction = [&](bool forward) -> Ln {
    const Formula& from = forward ? chi : chiT;
    const Formula& to = forward ? chiT : chi;
    Ln hFrom = sc.assume(forceFormula(tau_, from, s).target);

    Ln result{};
    if (chi->kind == FormulaNode::Kind::Not) {
      Formula psi = chi->a;
      result = build::forcedNot(ops, forward ? substitute(psi, x, t) : psi, s, fr.hs, fr.atS(),
                                [&](Var sb, Ln hle, Ln hF) {
        Ln condSb = ops.condOfLe(hle, true);
        Ln eqSb = eqBelow(sb, condSb, hle);
        Ln iff = applySub(psi, sb, condSb, fr.below(ops, sb, hle), eqSb, frameNames);
        Ln other = forward ? sc.mp(hF, sc.andElimR(iff)) : sc.mp(hF, sc.andElimL(iff));
        // hFrom's core refutes `other` at sb
        Ln coreFrom = sc.splitChain(hFrom, Ops::chainLen(from)).back();
        Ln neg = sc.mp(hle, sc.forallElim(coreFrom, sb));
        return ops.absurdFromPair(other, neg);
      });
    } else if (chi->kind == FormulaNode::Kind::Imp) {
      Formula A = chi->a, B = chi->b;
      Formula A2 = forward ? substitute(A, x, t) : A;
      Formula B2 = forward ? substitute(B, x, t) : B;
      Formula A1 = forward ? A : substitute(A, x, t);
      Formula B1 = forward ? B : substitute(B, x, t);
      result = build::forcedImp(ops, A2, B2, s, fr.hs, fr.atS(),
                                [&](Var sb1, Ln hle1, Ln hFA2, const Formula& exGoal) {
        Ln condSb1 = ops.condOfLe(hle1, true);
        Ln eq1 = eqBelow(sb1, condSb1, hle1);
        Ln iffA = applySub(A, sb1, condSb1, fr.below(ops, sb1, hle1), eq1, frameNames);
        Ln fa1 = forward ? sc.mp(hFA2, sc.andElimR(iffA)) : sc.mp(hFA2, sc.andElimL(iffA));
        Ln fromDown = ops.applyMono(from, fr.hs, condSb1, fr.namesFor(from), s, sb1, hle1, hFrom);
        Ln self = ops.leRefl(condSb1, sb1);
        Formula antecedent = forceFormula(tau_, A2, sb1).target;
        return build::unfoldImp(ops, fromDown, A1, B1, self, [&](Ln hg, Ln hb) -> Ln {
          Ln fb1 = sc.mp(fa1, hb);
          Var w = ops.leLoVar(hg);
          Ln condW = ops.condOfLe(hg, true);
          Ln eqW = eqBelow(w, condW, ops.leTrans(hg, hle1));
          Ln iffB = applySub(B, w, condW, [&](Var v) {
            Ln v1 = fr.below(ops, sb1, hle1)(v);
            return ops.vnMono(v1, hg, v.sort, sb1, w, tau_.nameOf(v));
          }, eqW, frameNames);
          Ln fb2 = forward ? sc.mp(fb1, sc.andElimL(iffB)) : sc.mp(fb1, sc.andElimR(iffB));
          return build::introWitness(ops, exGoal, antecedent, hg, fb2);
        });
      });
    } else if (chi->kind == FormulaNode::Kind::Forall) {
      Var u = chi->qvar;
      Formula Ph = chi->a;
      Formula Ph2 = forward ? substitute(Ph, x, t) : Ph;
      Formula Ph1 = forward ? Ph : substitute(Ph, x, t);
      result = build::forcedForall(ops, u, Ph2, s, fr.hs, fr.atS(),
                                   [&](Var wN, Var sb, Ln hle, Ln hVNw, const Formula& exGoal) {
        Ln condSb = ops.condOfLe(hle, true);
        Ln fromDown = ops.applyMono(from, fr.hs, condSb, fr.namesFor(from), s, sb, hle, hFrom);
        // unfold the FT8 core of `fromDown` at (wN, sb)
        Ln coreF = sc.splitChain(fromDown, Ops::chainLen(from)).back();
        Ln instN = sc.forallElim(coreF, wN);
        Ln self = ops.leRefl(condSb, sb);
        Ln exInner = sc.mp(self, sc.forallElim(instN, sb));
        Formula antecedent = tau_.vn(u.sort, sb, wN);
        return sc.guardedExistsElim(exInner, [&](Ln hg2, Ln hb2) -> Ln {
          Ln f1 = sc.mp(hVNw, hb2);  // F(Ph1@wN, w)
          Var w = ops.leLoVar(hg2);
          Ln condW = ops.condOfLe(hg2, true);
          Ln eqW = eqBelow(w, condW, ops.leTrans(hg2, hle));
          Ln iffP = applySub(Ph, w, condW, [&](Var v) -> Ln {
            if (v == u) return ops.vnMono(hVNw, hg2, u.sort, sb, w, wN);
            Ln v1 = fr.below(ops, sb, hle)(v);
            return ops.vnMono(v1, hg2, v.sort, sb, w, tau_.nameOf(v));
          }, eqW, [&](Var v) -> std::pair<Var, Ln> {
            if (v == u) return {wN, ops.nameOfVn(hVNw, u.sort, sb, wN)};
            return frameNames(v);
          });
          Ln f2 = forward ? sc.mp(f1, sc.andElimL(iffP)) : sc.mp(f1, sc.andElimR(iffP));
          return build::introWitness(ops, exGoal, antecedent, hg2, f2);
        });
      });
    } else {
      throw ForcingError("substLemma: unexpected kind");
    }
    Formula want = forceFormula(tau_, to, s).target;
    if (!formulaEq(sc.at(result), want))
      throw ForcingError("substLemma: direction result mismatch");
    return sc.impIntro(hFrom, result);
  };

  Ln fwd = direction(true);
  Ln bwd = direction(false);
  Ln iff = sc.andIntro(fwd, bwd);
  Ln body = sc.impIntro(hEq, iff);
  return sc.extract(fr.close(body), theory_.name);
}

// ---------------------------------------------------------------------------
// Forced logical axioms
// ---------------------------------------------------------------------------

inline const Proof& ForcingEngine::forcedScheme(const std::string& id, const SchemeArgs& args) {
  Formula inst = cleanBinders(instantiateScheme(id, args));
  if (auto* p = find(schemeMemo_, inst)) return *p;
  Proof p = forcedSchemeBuild(id, args, inst);
  verify(p, forcedStatement(tau_, inst), "forcedScheme(" + id + ")");
  return store(schemeMemo_, inst, std::move(p));
}

inline Proof ForcingEngine::forcedSchemeBuild(const std::string& id, const SchemeArgs& args,
                                              const Formula& inst) {
  Script sc(&theory_, &ledger_);
  Ops ops{sc, tau_, this};
  Var s = tau_.workCond(0), wc1 = tau_.workCond(1), wc2 = tau_.workCond(2);
  auto U = freeVarsOrdered(inst);
  VnFrame fr(sc, tau_, U, s);

  auto F = [&](const Formula& f, Var at) { return forceFormula(tau_, f, at).target; };
  auto monoDown = [&](const Formula& f, Ln hf, Var hi, Var lo, Ln condHi, Ln leLine) {
    return ops.applyMono(f, condHi, ops.condOfLe(leLine, true), fr.namesFor(f), hi, lo, leLine, hf);
  };
  // unfold s'⊩(A⇒B) at itself and feed the elimination
  auto unfoldSelf = [&](Ln hImp, const Formula& A, const Formula& B, Var at, Ln condAt,
                        const std::function<Ln(Ln, Ln)>& body) {
    Ln self = ops.leRefl(condAt, at);
    return build::unfoldImp(ops, hImp, A, B, self, body);
  };

  Ln result{};

  if (id == "p1") {
    Formula A = cleanBinders(args.f("A")), B = cleanBinders(args.f("B"));
    result = build::forcedImp(ops, A, fImp(B, A), s, fr.hs, fr.atS(),
                              [&](Var sb1, Ln hle1, Ln hFA, const Formula& exGoal) {
      Ln condSb1 = ops.condOfLe(hle1, true);
      Ln innerImp = build::forcedImp(ops, B, A, sb1, ops.condOfLe(hle1, true), fr.below(ops, sb1, hle1),
                                     [&](Var sb2, Ln hle2, Ln hFB, const Formula& exG2) {
        (void)hFB;
        Ln fa2 = monoDown(A, hFA, sb1, sb2, condSb1, hle2);
        Ln self2 = ops.leRefl(ops.condOfLe(hle2, true), sb2);
        return build::introWitness(ops, exG2, F(B, sb2), self2, fa2);
      });
      Ln self = ops.leRefl(condSb1, sb1);
      return build::introWitness(ops, exGoal, F(A, sb1), self, innerImp);
    });
  } else if (id == "p2") {
    Formula A = cleanBinders(args.f("A")), B = cleanBinders(args.f("B")), C = cleanBinders(args.f("C"));
    Formula ABC = fImp(A, fImp(B, C)), AB = fImp(A, B), AC = fImp(A, C);
    result = build::forcedImp(ops, ABC, fImp(AB, AC), s, fr.hs, fr.atS(),
                              [&](Var sb1, Ln hle1, Ln hF1, const Formula& exG1) {
      Ln condSb1 = ops.condOfLe(hle1, true);
      Ln mid = build::forcedImp(ops, AB, AC, sb1, ops.condOfLe(hle1, true), fr.below(ops, sb1, hle1),
                                [&](Var sb2, Ln hle2, Ln hF2, const Formula& exG2) {
        Ln condSb2 = ops.condOfLe(hle2, true);
        Ln inner = build::forcedImp(ops, A, C, sb2, ops.condOfLe(hle2, true), [&](Var v) {
          Ln v1 = fr.below(ops, sb1, hle1)(v);
          return ops.vnMono(v1, hle2, v.sort, sb1, sb2, tau_.nameOf(v));
        }, [&](Var sb3, Ln hle3, Ln hFA, const Formula& exG3) {
          Ln condSb3 = ops.condOfLe(hle3, true);
          // from F(A⇒B, sb2) at sb3 get F(B, w4)
          Ln f2Down = monoDown(AB, hF2, sb2, sb3, condSb2, hle3);
          return unfoldSelf(f2Down, A, B, sb3, condSb3, [&](Ln hg4, Ln hb4) {
            Ln fb4 = sc.mp(hFA, hb4);
            Var w4 = ops.leLoVar(hg4);
            Ln condW4 = ops.condOfLe(hg4, true);
            // from F(A⇒(B⇒C), sb1) at w4 get F(B⇒C, w5)
            Ln le41 = ops.leTrans(hg4, ops.leTrans(hle3, hle2));
            Ln f1Down = monoDown(ABC, hF1, sb1, w4, condSb1, le41);
            Ln faw4 = monoDown(A, hFA, sb3, w4, condSb3, hg4);
            return unfoldSelf(f1Down, A, fImp(B, C), w4, condW4, [&](Ln hg5, Ln hb5) {
              Ln fbc = sc.mp(faw4, hb5);
              Var w5 = ops.leLoVar(hg5);
              Ln condW5 = ops.condOfLe(hg5, true);
              Ln fb5 = monoDown(B, fb4, w4, w5, condW4, hg5);
              return unfoldSelf(fbc, B, C, w5, condW5, [&](Ln hg6, Ln hb6) {
                Ln fc = sc.mp(fb5, hb6);
                Ln leW6 = ops.leTrans(hg6, ops.leTrans(hg5, hg4));  // w6 ⊴ sb3
                return build::introWitness(ops, exG3, F(A, sb3), leW6, fc);
              });
            });
          });
        });
        Ln self2 = ops.leRefl(condSb2, sb2);
        return build::introWitness(ops, exG2, F(AB, sb2), self2, inner);
      });
      Ln self = ops.leRefl(condSb1, sb1);
      return build::introWitness(ops, exG1, F(ABC, sb1), self, mid);
    });
  } else if (id == "and-elim1" || id == "and-elim2") {
    Formula A = cleanBinders(args.f("A")), B = cleanBinders(args.f("B"));
    bool left = id == "and-elim1";
    Formula AB = fAnd(A, B);
    const Formula& target = left ? A : B;
    result = build::forcedImp(ops, AB, target, s, fr.hs, fr.atS(),
                              [&](Var sb1, Ln hle1, Ln hFAB, const Formula& exGoal) {
      Ln condSb1 = ops.condOfLe(hle1, true);
      Ln sugar = sc.include(sugarConj(A, B));
      Ln i = sc.forallElim(sugar, sb1);
      i = sc.mp(condSb1, i);
      auto abVars = freeVarsOrdered(AB);
      std::vector<Ln> abVns;
      for (auto& v : abVars) {
        i = sc.forallElim(i, tau_.nameOf(v));
        i = sc.mp(fr.nameOfLn.at(v), i);
        abVns.push_back(fr.below(ops, sb1, hle1)(v));
      }
      if (!abVars.empty()) i = sc.mp(sc.andChain(abVns), i);
      Ln both = sc.mp(hFAB, sc.andElimL(i));
      Ln part = left ? sc.andElimL(both) : sc.andElimR(both);
      Ln self = ops.leRefl(condSb1, sb1);
      return build::introWitness(ops, exGoal, F(AB, sb1), self, part);
    });
  } else if (id == "and-intro") {
    Formula A = cleanBinders(args.f("A")), B = cleanBinders(args.f("B"));
    Formula AB = fAnd(A, B);
    result = build::forcedImp(ops, A, fImp(B, AB), s, fr.hs, fr.atS(),
                              [&](Var sb1, Ln hle1, Ln hFA, const Formula& exG1) {
      Ln condSb1 = ops.condOfLe(hle1, true);
      Ln inner = build::forcedImp(ops, B, AB, sb1, ops.condOfLe(hle1, true), fr.below(ops, sb1, hle1),
                                  [&](Var sb2, Ln hle2, Ln hFB, const Formula& exG2) {
        Ln condSb2 = ops.condOfLe(hle2, true);
        Ln fa2 = monoDown(A, hFA, sb1, sb2, condSb1, hle2);
        Ln sugar = sc.include(sugarConj(A, B));
        Ln i = sc.forallElim(sugar, sb2);
        i = sc.mp(condSb2, i);
        auto abVars = freeVarsOrdered(AB);
        std::vector<Ln> abVns;
        for (auto& v : abVars) {
          i = sc.forallElim(i, tau_.nameOf(v));
          i = sc.mp(fr.nameOfLn.at(v), i);
          Ln v1 = fr.below(ops, sb1, hle1)(v);
          abVns.push_back(ops.vnMono(v1, hle2, v.sort, sb1, sb2, tau_.nameOf(v)));
        }
        if (!abVars.empty()) i = sc.mp(sc.andChain(abVns), i);
        Ln fab = sc.mp(sc.andIntro(fa2, hFB), sc.andElimR(i));
        Ln self2 = ops.leRefl(condSb2, sb2);
        return build::introWitness(ops, exG2, F(B, sb2), self2, fab);
      });
      Ln self = ops.leRefl(condSb1, sb1);
      return build::introWitness(ops, exG1, F(A, sb1), self, inner);
    });
  } else if (id == "or-intro1" || id == "or-intro2") {
    Formula A = cleanBinders(args.f("A")), B = cleanBinders(args.f("B"));
    bool first = id == "or-intro1";
    Formula notA = fNot(A);
    const Formula& prem = first ? A : B;
    result = build::forcedImp(ops, prem, fImp(notA, B), s, fr.hs, fr.atS(),
                              [&](Var sb1, Ln hle1, Ln hP, const Formula& exG1) {
      Ln condSb1 = ops.condOfLe(hle1, true);
      Ln inner = build::forcedImp(ops, notA, B, sb1, ops.condOfLe(hle1, true), fr.below(ops, sb1, hle1),
                                  [&](Var sb2, Ln hle2, Ln hNA, const Formula& exG2) {
        Ln condSb2 = ops.condOfLe(hle2, true);
        Ln self2 = ops.leRefl(condSb2, sb2);
        Ln fb{};
        if (first) {
          // contradiction: sb2 forces A while hNA refutes A at sb2
          Ln fa2 = monoDown(A, hP, sb1, sb2, condSb1, hle2);
          Ln coreN = sc.splitChain(hNA, Ops::chainLen(notA)).back();
          Ln na = sc.mp(self2, sc.forallElim(coreN, sb2));
          Ln abs = ops.absurdFromPair(fa2, na);
          fb = sc.exFalso(abs, ops.notAbsurd(), F(B, sb2));
        } else {
          fb = monoDown(B, hP, sb1, sb2, condSb1, hle2);
        }
        return build::introWitness(ops, exG2, F(notA, sb2), self2, fb);
      });
      Ln self = ops.leRefl(condSb1, sb1);
      return build::introWitness(ops, exG1, F(prem, sb1), self, inner);
    });
  } else if (id == "or-elim") {
    Formula A = cleanBinders(args.f("A")), B = cleanBinders(args.f("B")), C = cleanBinders(args.f("C"));
    Formula AC = fImp(A, C), BC = fImp(B, C), orAB = fOr(A, B);
    result = build::forcedImp(ops, AC, fImp(BC, fImp(orAB, C)), s, fr.hs, fr.atS(),
                              [&](Var sb1, Ln hle1, Ln hF1, const Formula& exG1) {
      Ln condSb1 = ops.condOfLe(hle1, true);
      Ln mid = build::forcedImp(ops, BC, fImp(orAB, C), sb1, ops.condOfLe(hle1, true), fr.below(ops, sb1, hle1),
                                [&](Var sb2, Ln hle2, Ln hF2, const Formula& exG2) {
        Ln condSb2 = ops.condOfLe(hle2, true);
        Ln inner = build::forcedImp(ops, orAB, C, sb2, ops.condOfLe(hle2, true), [&](Var v) {
          Ln v1 = fr.below(ops, sb1, hle1)(v);
          return ops.vnMono(v1, hle2, v.sort, sb1, sb2, tau_.nameOf(v));
        }, [&](Var sb3, Ln hle3, Ln hF3, const Formula& exG3) {
          Ln condSb3 = ops.condOfLe(hle3, true);
          // density premise for C at sb3
          Ln hle4 = sc.assume(tau_.le(wc1, sb3));
          Ln condW1 = ops.condOfLe(hle4, true);
          Formula existsBelowA = fExistsSuch(wc2, tau_.le(wc2, wc1), F(A, wc2));
          Formula goalEx = fExistsSuch(wc2, tau_.le(wc2, wc1), F(C, wc2));
          Ln exC = sc.caseSplit(
              existsBelowA, goalEx,
              [&](Ln hEx) {
                return sc.guardedExistsElim(hEx, [&](Ln hg, Ln hFA) {
                  Var w = ops.leLoVar(hg);
                  Ln condW = ops.condOfLe(hg, true);
                  Ln le1 = ops.leTrans(ops.leTrans(hg, hle4), ops.leTrans(hle3, hle2));
                  Ln f1Down = monoDown(AC, hF1, sb1, w, condSb1, le1);
                  return unfoldSelf(f1Down, A, C, w, condW, [&](Ln hg5, Ln hb5) {
                    Ln fc = sc.mp(hFA, hb5);
                    Ln leW = ops.leTrans(hg5, hg);
                    return sc.guardedExistsIntro(wc2, tau_.le(wc2, wc1), F(C, wc2),
                                                 ops.leLoVar(hg5), leW, fc);
                  });
                });
              },
              [&](Ln hNEx) {
                // wc1 forces ¬A
                std::vector<Ln> parts;
                for (auto& v : freeVarsOrdered(fNot(A))) {
                  Ln v1 = fr.below(ops, sb1, hle1)(v);
                  Ln v2 = ops.vnMono(v1, hle2, v.sort, sb1, sb2, tau_.nameOf(v));
                  Ln v3 = ops.vnMono(v2, hle3, v.sort, sb2, sb3, tau_.nameOf(v));
                  parts.push_back(ops.vnMono(v3, hle4, v.sort, sb3, wc1, tau_.nameOf(v)));
                }
                if (parts.empty()) parts.push_back(condW1);
                Formula FnA1 = F(fNot(A), wc1);
                Formula coreNA = conjunctsOf(FnA1).back();
                Var sbn = coreNA->qvar;
                Ln hlen = sc.assume(tau_.le(sbn, wc1));
                Ln notFa = sc.notIntro(F(A, sbn), [&](Ln hFA) {
                  Ln exWit = sc.guardedExistsIntro(wc2, tau_.le(wc2, wc1), F(A, wc2), sbn, hlen, hFA);
                  Ln abs = ops.absurdFromPair(exWit, hNEx);
                  return std::pair<Ln, Ln>{abs, ops.notAbsurd()};
                });
                parts.push_back(sc.forallIntro(sc.impIntro(hlen, notFa), sbn));
                Ln fna = sc.andChain(parts);
                // feed ¬A into F(A∨B) = F(¬A⇒B) at wc1
                Ln f3Down = monoDown(orAB, hF3, sb3, wc1, condSb3, hle4);
                return unfoldSelf(f3Down, fNot(A), B, wc1, condW1, [&](Ln hg6, Ln hb6) {
                  Ln fb = sc.mp(fna, hb6);
                  Var w6 = ops.leLoVar(hg6);
                  Ln condW6 = ops.condOfLe(hg6, true);
                  Ln le2 = ops.leTrans(ops.leTrans(hg6, hle4), hle3);
                  Ln f2Down = monoDown(BC, hF2, sb2, w6, condSb2, le2);
                  return unfoldSelf(f2Down, B, C, w6, condW6, [&](Ln hg7, Ln hb7) {
                    Ln fc = sc.mp(fb, hb7);
                    Ln leW = ops.leTrans(hg7, hg6);
                    return sc.guardedExistsIntro(wc2, tau_.le(wc2, wc1), F(C, wc2),
                                                 ops.leLoVar(hg7), leW, fc);
                  });
                });
              });
          Ln prem = sc.forallIntro(sc.impIntro(hle4, exC), wc1);
          Ln fcAtSb3 = ops.applyDens(C, condSb3, fr.namesFor(C), sb3, prem);
          Ln self3 = ops.leRefl(condSb3, sb3);
          return build::introWitness(ops, exG3, F(orAB, sb3), self3, fcAtSb3);
        });
        Ln self2 = ops.leRefl(condSb2, sb2);
        return build::introWitness(ops, exG2, F(BC, sb2), self2, inner);
      });
      Ln self = ops.leRefl(condSb1, sb1);
      return build::introWitness(ops, exG1, F(AC, sb1), self, mid);
    });
  } else if (id == "reductio") {
    Formula A = cleanBinders(args.f("A")), B = cleanBinders(args.f("B"));
    Formula AB = fImp(A, B), AnB = fImp(A, fNot(B));
    result = build::forcedImp(ops, AB, fImp(AnB, fNot(A)), s, fr.hs, fr.atS(),
                              [&](Var sb1, Ln hle1, Ln hF1, const Formula& exG1) {
      Ln condSb1 = ops.condOfLe(hle1, true);
      Ln inner = build::forcedImp(ops, AnB, fNot(A), sb1, ops.condOfLe(hle1, true), fr.below(ops, sb1, hle1),
                                  [&](Var sb2, Ln hle2, Ln hF2, const Formula& exG2) {
        Ln condSb2 = ops.condOfLe(hle2, true);
        Ln fna = build::forcedNot(ops, A, sb2, condSb2, [&](Var v) {
          Ln v1 = fr.below(ops, sb1, hle1)(v);
          return ops.vnMono(v1, hle2, v.sort, sb1, sb2, tau_.nameOf(v));
        }, [&](Var sb3, Ln hle3, Ln hFA) {
          Ln condSb3 = ops.condOfLe(hle3, true);
          Ln f1Down = monoDown(AB, hF1, sb1, sb3, condSb1, ops.leTrans(hle3, hle2));
          return unfoldSelf(f1Down, A, B, sb3, condSb3, [&](Ln hg4, Ln hb4) {
            Ln fb = sc.mp(hFA, hb4);
            Var w4 = ops.leLoVar(hg4);
            Ln condW4 = ops.condOfLe(hg4, true);
            Ln f2Down = monoDown(AnB, hF2, sb2, w4, condSb2, ops.leTrans(hg4, hle3));
            Ln faw4 = monoDown(A, hFA, sb3, w4, condSb3, hg4);
            return unfoldSelf(f2Down, A, fNot(B), w4, condW4, [&](Ln hg5, Ln hb5) {
              Ln fnb = sc.mp(faw4, hb5);
              Var w5 = ops.leLoVar(hg5);
              Ln condW5 = ops.condOfLe(hg5, true);
              Ln fbW5 = monoDown(B, fb, w4, w5, condW4, hg5);
              Ln coreN = sc.splitChain(fnb, Ops::chainLen(fNot(B))).back();
              Ln self5 = ops.leRefl(condW5, w5);
              Ln nb = sc.mp(self5, sc.forallElim(coreN, w5));
              return ops.absurdFromPair(fbW5, nb);
            });
          });
        });
        Ln self2 = ops.leRefl(condSb2, sb2);
        return build::introWitness(ops, exG2, F(AnB, sb2), self2, fna);
      });
      Ln self = ops.leRefl(condSb1, sb1);
      return build::introWitness(ops, exG1, F(AB, sb1), self, inner);
    });
  } else if (id == "dneg-elim") {
    Formula A = cleanBinders(args.f("A"));
    Formula nnA = fNot(fNot(A));
    result = build::forcedImp(ops, nnA, A, s, fr.hs, fr.atS(),
                              [&](Var sb1, Ln hle1, Ln hNN, const Formula& exGoal) {
      Ln condSb1 = ops.condOfLe(hle1, true);
      // some condition below sb1 forces A
      Formula exA = fExistsSuch(wc2, tau_.le(wc2, sb1), F(A, wc2));
      Ln exLine = sc.byContradiction(exA, [&](Ln hNEx) {
        // then sb1 ⊩ ¬A, contradicting sb1 ⊩ ¬¬A at itself
        Ln fna = build::forcedNot(ops, A, sb1, condSb1, fr.below(ops, sb1, hle1),
                                  [&](Var sb3, Ln hle3, Ln hFA) {
          Ln exWit = sc.guardedExistsIntro(wc2, tau_.le(wc2, sb1), F(A, wc2),
                                           sb3, hle3, hFA);
          return ops.absurdFromPair(exWit, hNEx);
        });
        Ln coreNN = sc.splitChain(hNN, Ops::chainLen(nnA)).back();
        Ln self = ops.leRefl(condSb1, sb1);
        Ln notFna = sc.mp(self, sc.forallElim(coreNN, sb1));
        return std::pair<Ln, Ln>{fna, notFna};
      });
      return sc.guardedExistsElim(exLine, [&](Ln hg, Ln hFA) {
        return build::introWitness(ops, exGoal, F(nnA, sb1), hg, hFA);
      });
    });
  } else if (id == "q-vac") {
    Formula A = cleanBinders(args.f("A"));
    Var x = args.v("x");
    result = build::forcedImp(ops, A, fForall(x, A), s, fr.hs, fr.atS(),
                              [&](Var sb1, Ln hle1, Ln hFA, const Formula& exGoal) {
      Ln condSb1 = ops.condOfLe(hle1, true);
      Ln inner = build::forcedForall(ops, x, A, sb1, ops.condOfLe(hle1, true), fr.below(ops, sb1, hle1),
                                     [&](Var wN, Var sb, Ln hle, Ln hVNw, const Formula& exG2) {
        (void)wN;
        (void)hVNw;
        Ln fa = monoDown(A, hFA, sb1, sb, condSb1, hle);
        Ln self = ops.leRefl(ops.condOfLe(hle, true), sb);
        return build::introWitness(ops, exG2, tau_.vn(x.sort, sb, tau_.nameOf(x)), self, fa);
      });
      Ln self = ops.leRefl(condSb1, sb1);
      return build::introWitness(ops, exGoal, F(A, sb1), self, inner);
    });
  } else if (id == "q-dist") {
    Formula A = cleanBinders(args.f("A")), B = cleanBinders(args.f("B"));
    Var x = args.v("x");
    Formula allImp = fForall(x, fImp(A, B)), allA = fForall(x, A), allB = fForall(x, B);
    result = build::forcedImp(ops, allImp, fImp(allA, allB), s, fr.hs, fr.atS(),
                              [&](Var sb1, Ln hle1, Ln hF1, const Formula& exG1) {
      Ln condSb1 = ops.condOfLe(hle1, true);
      Ln inner = build::forcedImp(ops, allA, allB, sb1, ops.condOfLe(hle1, true), fr.below(ops, sb1, hle1),
                                  [&](Var sb2, Ln hle2, Ln hF2, const Formula& exG2) {
        Ln condSb2 = ops.condOfLe(hle2, true);
        Ln fAllB = build::forcedForall(ops, x, B, sb2, ops.condOfLe(hle2, true), [&](Var v) {
          Ln v1 = fr.below(ops, sb1, hle1)(v);
          return ops.vnMono(v1, hle2, v.sort, sb1, sb2, tau_.nameOf(v));
        }, [&](Var wN, Var sb3, Ln hle3, Ln hVNw, const Formula& exG3) {
          Ln condSb3 = ops.condOfLe(hle3, true);
          // F(∀xA, sb2) at (wN, sb3)
          Ln f2Down = monoDown(allA, hF2, sb2, sb3, condSb2, hle3);
          Ln core2 = sc.splitChain(f2Down, Ops::chainLen(allA)).back();
          Ln self3 = ops.leRefl(condSb3, sb3);
          Ln exA = sc.mp(self3, sc.forallElim(sc.forallElim(core2, wN), sb3));
          return sc.guardedExistsElim(exA, [&](Ln hg4, Ln hb4) {
            Ln fa = sc.mp(hVNw, hb4);  // F(A@wN, w4)
            Var w4 = ops.leLoVar(hg4);
            Ln condW4 = ops.condOfLe(hg4, true);
            // F(∀x(A⇒B), sb1) at (wN, w4)
            Ln le41 = ops.leTrans(ops.leTrans(hg4, hle3), hle2);
            Ln f1Down = monoDown(allImp, hF1, sb1, w4, condSb1, le41);
            Ln core1 = sc.splitChain(f1Down, Ops::chainLen(allImp)).back();
            Ln self4 = ops.leRefl(condW4, w4);
            Ln exImp = sc.mp(self4, sc.forallElim(sc.forallElim(core1, wN), w4));
            Ln vnW4 = ops.vnMono(hVNw, hg4, x.sort, sb3, w4, wN);
            return sc.guardedExistsElim(exImp, [&](Ln hg5, Ln hb5) {
              Ln fimp = sc.mp(vnW4, hb5);  // F((A⇒B)@wN, w5)
              Var w5 = ops.leLoVar(hg5);
              Ln condW5 = ops.condOfLe(hg5, true);
              Ln faW5 = ops.applyMonoNamed(A, condW4, condW5, w4, w5, hg5, fa,
                                           [&](Var v) -> std::pair<Var, Ln> {
                                             if (v == x)
                                               return {wN, ops.nameOfVn(hVNw, x.sort, sb3, wN)};
                                             return {tau_.nameOf(v), fr.nameOfLn.at(v)};
                                           });
              Ln self5 = ops.leRefl(condW5, w5);
              // fimp's core at w5: ∃w6⊴w5(F(A@wN,w5) ⇒ F(B@wN,w6))
              Formula impAt = fImp(A, B);
              Ln coreI = sc.splitChain(fimp, Ops::chainLen(impAt)).back();
              Ln exB = sc.mp(self5, sc.forallElim(coreI, w5));
              return sc.guardedExistsElim(exB, [&](Ln hg6, Ln hb6) {
                Ln fb = sc.mp(faW5, hb6);
                Ln leW = ops.leTrans(hg6, ops.leTrans(hg5, hg4));
                return build::introWitness(ops, exG3, tau_.vn(x.sort, sb3, wN), leW, fb);
              });
            });
          });
        });
        Ln self2 = ops.leRefl(condSb2, sb2);
        return build::introWitness(ops, exG2, F(allA, sb2), self2, fAllB);
      });
      Ln self = ops.leRefl(condSb1, sb1);
      return build::introWitness(ops, exG1, F(allImp, sb1), self, inner);
    });
  } else if (id == "q-inst") {
    Formula A = cleanBinders(args.f("A"));
    Var x = args.v("x");
    if (x.sort != Sort::Number)
      throw ForcingError("forcedScheme: set-sort q-inst not needed by this pipeline");
    Term t = args.t("t");
    Formula At = substitute(A, x, t);
    Formula allA = fForall(x, A);
    result = build::forcedImp(ops, allA, At, s, fr.hs, fr.atS(),
                              [&](Var sb1, Ln hle1, Ln hFall, const Formula& exGoal) {
      Ln condSb1 = ops.condOfLe(hle1, true);
      // value of t below sb1
      Ln tv = sc.include(termValue(t));
      auto tvars = stmt::termVarsOrdered(t);
      Ln i = sc.forallElim(tv, sb1);
      i = sc.mp(condSb1, i);
      for (auto& v : tvars) {
        i = sc.forallElim(i, tau_.nameOf(v));
        i = sc.mp(fr.nameOfLn.at(v), i);
      }
      if (!tvars.empty()) {
        std::vector<Ln> vns;
        for (auto& v : tvars) vns.push_back(fr.below(ops, sb1, hle1)(v));
        i = sc.mp(sc.andChain(vns), i);
      }
      Ln self1 = ops.leRefl(condSb1, sb1);
      Ln exVal = sc.mp(self1, sc.forallElim(i, sb1));
      return sc.guardedExistsElim(exVal, [&](Ln hg2, Ln hbody) {
        return sc.guardedExistsElim(hbody, [&](Ln hName, Ln hPair) {
          Var c2 = ops.leLoVar(hg2);
          Ln condC2 = ops.condOfLe(hg2, true);
          Ln hVn = sc.andElimL(hPair);
          Ln hEq = sc.andElimR(hPair);  // F(wsrc=t, c2)[nw:=wn]
          auto fvn = freeVars(sc.at(hName));
          if (fvn.size() != 1) throw ForcingError("q-inst: lost value name");
          Var wn = *fvn.begin();
          // F(∀xA, sb1) at (wn, c2): gives F(A@wn, c3)
          Ln core = sc.splitChain(monoDown(allA, hFall, sb1, c2, condSb1, hg2),
                                  Ops::chainLen(allA)).back();
          Ln self2 = ops.leRefl(condC2, c2);
          Ln exA = sc.mp(self2, sc.forallElim(sc.forallElim(core, wn), c2));
          return sc.guardedExistsElim(exA, [&](Ln hg3, Ln hb3) {
            Ln vnC2 = hVn;
            Ln fa = sc.mp(vnC2, hb3);  // F(A@wn, c3)
            Var c3 = ops.leLoVar(hg3);
            Ln condC3 = ops.condOfLe(hg3, true);
            // substitution lemma: F(A[x:=wsrc]... == F(A@wn)) ⇔ F(At) given eq
            Var wsrc = valueSrcVar();
            Formula Achi = substitute(A, x, tVar(wsrc));
            Ln sl = sc.include(substLemma(Achi, wsrc, t));
            Formula anchorP = fAnd(fEq(tVar(wsrc), t), fAnd(Achi, substitute(Achi, wsrc, t)));
            Ln j = sc.forallElim(sl, c3);
            j = sc.mp(condC3, j);
            std::vector<Ln> vns;
            for (auto& v : freeVarsOrdered(anchorP)) {
              if (v == wsrc) {
                j = sc.forallElim(j, wn);
                j = sc.mp(hName, j);
                vns.push_back(ops.vnMono(hVn, hg3, Sort::Number, c2, c3, wn));
              } else {
                j = sc.forallElim(j, tau_.nameOf(v));
                j = sc.mp(fr.nameOfLn.at(v), j);
                Ln v1 = fr.below(ops, sb1, hle1)(v);
                Ln v2 = ops.vnMono(v1, hg2, v.sort, sb1, c2, tau_.nameOf(v));
                vns.push_back(ops.vnMono(v2, hg3, v.sort, c2, c3, tau_.nameOf(v)));
              }
            }
            j = sc.mp(sc.andChain(vns), j);
            auto eqResolve = [&](Var v) -> std::pair<Var, Ln> {
              if (v == wsrc) return {wn, hName};
              return {tau_.nameOf(v), fr.nameOfLn.at(v)};
            };
            Ln eqC3 = ops.applyMonoNamed(fEq(tVar(wsrc), t), condC2, condC3, c2, c3, hg3, hEq,
                                         eqResolve);
            j = sc.mp(eqC3, j);      // iff
            Ln fwd = sc.andElimL(j);  // F(Achi@wn) ⇒ F(At)
            Ln fat = sc.mp(fa, fwd);
            Ln leW = ops.leTrans(hg3, hg2);
            return build::introWitness(ops, exGoal, F(allA, sb1), leW, fat);
          });
        });
      });
    });
  } else {
    throw ForcingError("forcedScheme: no template for scheme " + id);
  }

  Ln closed = fr.close(result);
  return sc.extract(closed, theory_.name);
}

// ---------------------------------------------------------------------------
// Forced equality axioms (via the per-interpretation hook)
// ---------------------------------------------------------------------------

inline const Proof& ForcingEngine::forcedEqAxiom(const std::string& name) {
  auto ax = equalityAxiom(tau_.source, name);
  if (!ax) throw ForcingError("forcedEqAxiom: unknown axiom " + name + " in the source language");
  if (auto* p = find(eqAxMemo_, *ax)) return *p;
  if (!tau_.hooks.forcedEq) throw ForcingError("missing forcedEq generator for " + tau_.id);
  Proof p = tau_.hooks.forcedEq(name);
  verify(p, forcedStatement(tau_, *ax), "forcedEqAxiom(" + name + ")");
  return store(eqAxMemo_, *ax, std::move(p));
}

// ---------------------------------------------------------------------------
// Statement combinators for whole-proof translation
// ---------------------------------------------------------------------------

// S over variable list Vsrc, adapted to Vdst ⊇ Vsrc (weakening / reorder).
inline Ln sAdapt(ForcingEngine& eng, Script& sc, Ln src, const Formula& chi,
                 const std::vector<Var>& Vsrc, const std::vector<Var>& Vdst) {
  const ForcingTranslation& t = eng.tau();
  Ops ops{sc, t, &eng};
  Var s = t.workCond(0);
  VnFrame fr(sc, t, Vdst, s);
  Ln i = sc.forallElim(src, s);
  i = sc.mp(fr.hs, i);
  if (!Vsrc.empty()) {
    std::vector<Ln> vns;
    for (auto& v : Vsrc) {
      i = sc.forallElim(i, t.nameOf(v));
      i = sc.mp(fr.nameOfLn.at(v), i);
      vns.push_back(fr.vnOf.at(v));
    }
    i = sc.mp(sc.andChain(vns), i);
  }
  (void)chi;
  return fr.close(i);
}

// Drop one unused name u from the statement prefix (FI4 + density).
inline Ln sDropOne(ForcingEngine& eng, Script& sc, Ln src, const Formula& chi,
                   const std::vector<Var>& Vsrc, Var u) {
  const ForcingTranslation& t = eng.tau();
  Ops ops{sc, t, &eng};
  Var s = t.workCond(0), wc1 = t.workCond(1), wc2 = t.workCond(2);
  std::vector<Var> Vdst;
  for (auto& v : Vsrc)
    if (v != u) Vdst.push_back(v);
  VnFrame fr(sc, t, Vdst, s);

  // density premise for chi at s
  Ln hle1 = sc.assume(t.le(wc1, s));
  Ln condW1 = ops.condOfLe(hle1, true);
  Ln fi4 = sc.ledg(t.fiIds.at("FI4"));
  Ln ex = sc.mp(condW1, sc.forallElim(fi4, wc1));  // ∃s'⊴wc1 ∃v(Name ∧ VN(s',v))
  Ln got = sc.guardedExistsElim(ex, [&](Ln hg, Ln hbody) {
    return sc.guardedExistsElim(hbody, [&](Ln hNameW, Ln hVNw) {
      Var sw = ops.leLoVar(hg);
      Ln condSw = ops.condOfLe(hg, true);
      auto fvn = freeVars(sc.at(hNameW));
      if (fvn.size() != 1) throw ForcingError("sDropOne: lost the fresh name");
      Var wn = *fvn.begin();
      // instantiate src at sw with u := wn and the frame names elsewhere
      Ln i = sc.forallElim(src, sw);
      i = sc.mp(condSw, i);
      std::vector<Ln> vns;
      for (auto& v : Vsrc) {
        if (v == u) {
          i = sc.forallElim(i, wn);
          i = sc.mp(hNameW, i);
          vns.push_back(hVNw);
        } else {
          i = sc.forallElim(i, t.nameOf(v));
          i = sc.mp(fr.nameOfLn.at(v), i);
          Ln v1 = fr.below(ops, wc1, hle1)(v);
          vns.push_back(ops.vnMono(v1, hg, v.sort, wc1, sw, t.nameOf(v)));
        }
      }
      i = sc.mp(sc.andChain(vns), i);  // F(chi, sw); u does not occur in chi
      Formula Fw2 = forceFormula(t, chi, wc2).target;
      return sc.guardedExistsIntro(wc2, t.le(wc2, wc1), Fw2, sw, hg, i);
    });
  });
  Ln prem = sc.forallIntro(sc.impIntro(hle1, got), wc1);
  std::vector<Ln> nameLines;
  for (auto& v : freeVarsOrdered(cleanBinders(chi))) nameLines.push_back(fr.nameOfLn.at(v));
  Ln fchi = ops.applyDens(chi, fr.hs, nameLines, s, prem);
  return fr.close(fchi);
}

// Forced modus ponens over a shared variable list.
inline Ln sMPV(ForcingEngine& eng, Script& sc, Ln sC, Ln sCD, const Formula& C, const Formula& D,
               const std::vector<Var>& V) {
  const ForcingTranslation& t = eng.tau();
  Ops ops{sc, t, &eng};
  Var s = t.workCond(0), wc1 = t.workCond(1), wc2 = t.workCond(2);
  VnFrame fr(sc, t, V, s);
  auto applyAt = [&](Ln stmtLn, Var at, Ln condAt, Ln leAt) {
    Ln i = sc.forallElim(stmtLn, at);
    i = sc.mp(condAt, i);
    if (!V.empty()) {
      std::vector<Ln> vns;
      for (auto& v : V) {
        i = sc.forallElim(i, t.nameOf(v));
        i = sc.mp(fr.nameOfLn.at(v), i);
        vns.push_back(fr.below(ops, at, leAt)(v));
      }
      i = sc.mp(sc.andChain(vns), i);
    }
    return i;
  };
  Ln hle1 = sc.assume(t.le(wc1, s));
  Ln condW1 = ops.condOfLe(hle1, true);
  Ln fCD = applyAt(sCD, wc1, condW1, hle1);
  Ln fC = applyAt(sC, wc1, condW1, hle1);
  Ln self = ops.leRefl(condW1, wc1);
  Ln ex = build::unfoldImp(ops, fCD, C, D, self, [&](Ln hg, Ln hb) {
    Ln fd = sc.mp(fC, hb);
    Formula Fw2 = forceFormula(t, D, wc2).target;
    return sc.guardedExistsIntro(wc2, t.le(wc2, wc1), Fw2, ops.leLoVar(hg), hg, fd);
  });
  Ln prem = sc.forallIntro(sc.impIntro(hle1, ex), wc1);
  std::vector<Ln> nameLines;
  for (auto& v : freeVarsOrdered(cleanBinders(D))) nameLines.push_back(fr.nameOfLn.at(v));
  Ln fd = ops.applyDens(D, fr.hs, nameLines, s, prem);
  return fr.close(fd);
}

// S_open(χ) ⊢ S_open(∀wχ)
inline Ln ForcingEngine::sBridge(Script& sc, Ln sChi, const Formula& chi, Var w) {
  Ops ops{sc, tau_, this};
  Var s = tau_.workCond(0);
  Formula allChi = fForall(w, chi);
  auto U = freeVarsOrdered(allChi);
  auto Uchi = freeVarsOrdered(chi);
  VnFrame fr(sc, tau_, U, s);
  Ln inner = build::forcedForall(ops, w, chi, s, fr.hs, fr.atS(),
                                 [&](Var wN, Var sb, Ln hle, Ln hVNw, const Formula& exGoal) {
    Ln condSb = ops.condOfLe(hle, true);
    Ln i = sc.forallElim(sChi, sb);
    i = sc.mp(condSb, i);
    std::vector<Ln> vns;
    for (auto& v : Uchi) {
      if (v == w) {
        i = sc.forallElim(i, wN);
        i = sc.mp(ops.nameOfVn(hVNw, w.sort, sb, wN), i);
        vns.push_back(hVNw);
      } else {
        i = sc.forallElim(i, tau_.nameOf(v));
        i = sc.mp(fr.nameOfLn.at(v), i);
        vns.push_back(fr.below(ops, sb, hle)(v));
      }
    }
    if (!Uchi.empty()) i = sc.mp(sc.andChain(vns), i);
    Ln self = ops.leRefl(condSb, sb);
    return build::introWitness(ops, exGoal, tau_.vn(w.sort, sb, wN), self, i);
  });
  return fr.close(inner);
}

// ---------------------------------------------------------------------------
// Lemma 3.6: whole-proof translation
// ---------------------------------------------------------------------------

inline Proof ForcingEngine::translateProof(
    const Proof& delta, const Theory& sourceTheory,
    const std::function<const Proof*(const std::string&)>& fi14,
    const std::function<std::string(const std::string&)>& forcedLedgerId) {
  {
    CheckResult r = checkProof(sourceTheory, delta, ledger_);
    if (!r.accepted)
      throw ForcingError("translateProof: input fails checking at line " +
                         std::to_string(r.failLine) + ": " + r.reason);
  }
  // the common variable list
  std::set<Var> vs;
  for (auto& ln : delta.lines)
    for (auto& v : freeVars(ln.formula)) vs.insert(v);
  std::vector<Var> V(vs.begin(), vs.end());

  Script sc(&theory_, &ledger_);
  std::vector<Ln> sLines(delta.lines.size());
  for (size_t i = 0; i < delta.lines.size(); ++i) {
    const ProofLine& ln = delta.lines[i];
    const Justification& j = ln.just;
    switch (j.kind) {
      case Justification::Kind::Scheme: {
        Ln cur = sc.include(forcedScheme(j.schemeId, j.schemeArgs));
        Formula f = cleanBinders(instantiateScheme(j.schemeId, j.schemeArgs));
        for (auto it = j.genPrefix.rbegin(); it != j.genPrefix.rend(); ++it) {
          cur = sBridge(sc, cur, f, *it);
          f = fForall(*it, f);
        }
        sLines[i] = sAdapt(*this, sc, cur, f, freeVarsOrdered(f), V);
        break;
      }
      case Justification::Kind::EqAxiom: {
        Ln cur = sc.include(forcedEqAxiom(j.name));
        sLines[i] = sAdapt(*this, sc, cur, ln.formula, {}, V);
        break;
      }
      case Justification::Kind::TheoryAxiom: {
        const Proof* p = fi14(j.name);
        if (!p) throw ForcingError("translateProof: no FI14 proof for axiom " + j.name);
        Ln cur = sc.include(*p);
        sLines[i] = sAdapt(*this, sc, cur, ln.formula, {}, V);
        break;
      }
      case Justification::Kind::Ledger: {
        std::string fid = forcedLedgerId(j.name);
        if (fid.empty()) throw ForcingError("translateProof: no forced ledger entry for " + j.name);
        Ln cur = sc.ledg(fid, j.ledgerArgs);
        sLines[i] = sAdapt(*this, sc, cur, ln.formula, {}, V);
        break;
      }
      case Justification::Kind::MP: {
        sLines[i] = sMPV(*this, sc, sLines[j.minor], sLines[j.major],
                         delta.lines[j.minor].formula, ln.formula, V);
        break;
      }
    }
  }

  // specialize the conclusion statement to its own variables
  Formula concl = delta.conclusion();
  Ln cur = sLines.back();
  std::vector<Var> curV = V;
  auto conclVars = freeVars(concl);
  for (auto& u : V) {
    if (conclVars.count(u)) continue;
    cur = sDropOne(*this, sc, cur, concl, curV, u);
    std::vector<Var> next;
    for (auto& v : curV)
      if (v != u) next.push_back(v);
    curV = next;
  }
  auto occ = freeVarsOrdered(cleanBinders(concl));
  if (!(curV == occ)) cur = sAdapt(*this, sc, cur, concl, curV, occ);

  Proof out = sc.extract(cur, theory_.name);
  if (!formulaEq(out.conclusion(), forcedStatement(tau_, concl)))
    throw ForcingError("translateProof: conclusion mismatch");
  check(out);
  return out;
}

}  // namespace ff
