#pragma once

// The concrete forcing translations: tau1 (restricted ultrapower), tau2
// (generic cut) and tau3 (tau2 with the cut predicate unfolded to the I01
// definition). Family-internal bound variables use indices 40..70, safely
// below the name range.

#include "ff/forcing.hpp"

namespace ff {

namespace taudetail {

// ∀^∞x(x∈S ⇒ body(x)):  ∃u∀x(u<x ⇒ (x∈S ⇒ body))
inline Formula foreverOn(Var S, Var x, Formula body, Var u) {
  return fExists(u, fForall(x, fImp(flib::lt(tVar(u), tVar(x)), fImp(fIn(tVar(x), S), body))));
}

// Wraps an atom over source number variables into the value lookups of the
// tau1 names: ∃y1((x,y1)∈v1 ∧ … ∧ α[ȳ/x̄]).
inline Formula valueWrap(const ForcingTranslation& tau, Formula alpha,
                         const std::vector<Var>& srcVars, Var x, uint32_t valueBase) {
  // innermost first: substitute each source variable by its value variable
  std::vector<Var> vals;
  for (size_t i = 0; i < srcVars.size(); ++i) vals.push_back(nv(valueBase + (uint32_t)i));
  Formula body = alpha;
  for (size_t i = 0; i < srcVars.size(); ++i) body = substitute(body, srcVars[i], tVar(vals[i]));
  for (size_t i = srcVars.size(); i-- > 0;) {
    Formula guard = flib::valueAt(tau.nameOf(srcVars[i]), tVar(x), tVar(vals[i]));
    body = fExistsSuch(vals[i], guard, body);
  }
  return body;
}

inline std::vector<Var> sortedSrcVars(const Formula& atom) {
  std::vector<Var> out;
  for (auto& v : freeVarsOrdered(atom))
    if (v.sort == Sort::Number) out.push_back(v);
  return out;
}

inline Formula withVnOf(const ForcingTranslation& tau, const Formula& atom, Var s, Formula core) {
  auto fv = freeVarsOrdered(atom);
  std::vector<Formula> cs;
  if (fv.empty()) cs.push_back(tau.cond(s));
  for (auto& v : fv) cs.push_back(tau.vnOfSrc(s, v));
  cs.push_back(std::move(core));
  return conj(cs);
}

}  // namespace taudetail

// ---------------------------------------------------------------------------
// tau1: L_I ∪ {𝕀}  →  L_II  over RCA0* + ¬IΣ01 + Σ01-LPC
// ---------------------------------------------------------------------------

inline ForcingTranslation buildTau1() {
  ForcingTranslation t;
  t.id = "tau1";
  t.source = Language::LIcut;
  t.target = Language::LII;
  t.condSort = Sort::SetSort;
  t.targetTheory = "RCA0star_notISig01_LPC";

  Var S = sv(90), S1 = sv(91);
  t.condVar = S;
  t.condF = flib::unbounded(S, nv(40), nv(41));
  t.leLo = S1;
  t.leHi = S;
  {
    Var a = nv(42);
    Formula subset = fForall(a, fImp(fIn(tVar(a), S1), fIn(tVar(a), S)));
    t.leF = fAnd(flib::unbounded(S, nv(40), nv(41)),
                 fAnd(flib::unbounded(S1, nv(40), nv(41)), subset));
  }
  Var v = sv(92);
  t.nameVar[Sort::Number] = v;
  t.nameF[Sort::Number] = flib::totalFunction(v, nv(43), nv(44), nv(45));
  t.vnCondVar[Sort::Number] = S;
  t.vnNameVar[Sort::Number] = v;
  t.vnF[Sort::Number] = fAnd(flib::unbounded(S, nv(40), nv(41)),
                             flib::totalFunction(v, nv(43), nv(44), nv(45)));

  t.forceAtom = [](const ForcingTranslation& tau, const Formula& atom, Var s) -> Formula {
    using namespace taudetail;
    if (atom->kind != FormulaNode::Kind::Atom) throw ForcingError("forceAtom on non-atom");
    Var x = nv(30101), u = nv(30100);
    std::vector<Var> vars = sortedSrcVars(atom);
    if (atom->rel == Rel::SetMem) throw ForcingError("tau1 source has no ∈ atoms");
    if (atom->rel == Rel::CutMem) {
      // ∃i(I01(i) ∧ ∀^∞x∈s (t(v̄(x)) ≤ i))
      Var i = nv(30102);
      Formula leqAtom = fLeq(atom->args[0], tVar(i));
      Formula wrapped = valueWrap(tau, leqAtom, vars, x, 30110);
      Formula inner = foreverOn(s, x, wrapped, u);
      Formula ex = fExistsSuch(i, flib::memberI01(tVar(i)), inner);
      return withVnOf(tau, atom, s, ex);
    }
    Formula wrapped = valueWrap(tau, atom, vars, x, 30110);
    return withVnOf(tau, atom, s, foreverOn(s, x, wrapped, u));
  };
  return t;
}

// ---------------------------------------------------------------------------
// tau2: L_II  →  L_I ∪ {𝕀}  over IΔ0 + exp + SC
// tau3: the same clauses with 𝕀 unfolded to the I01 definition, over
//       RCA0* + ¬IΣ01 + ¬Σ01-LPC
// ---------------------------------------------------------------------------

namespace taudetail {

// x ∈_Ack s ∧ x ≤ v  — membership in s ∩ [0, v]
inline Formula interMem(const Term& x, Var s, Var v) {
  return fAnd(fAck(x, tVar(s)), fLeq(x, tVar(v)));
}

// exponential sparsity of the set coded by s
inline Formula sparse(Var s) {
  Var a = nv(40), b = nv(41), e = nv(42);
  Formula lessExp = fExistsSuch(e, fPow2(tVar(a), tVar(e)), flib::lt(tVar(e), tVar(b)));
  return fForall(a, fForall(b, fImp(fAnd(fAck(tVar(a), tVar(s)), fAck(tVar(b), tVar(s))),
                                    fImp(flib::lt(tVar(a), tVar(b)), lessExp))));
}

// |s| > 𝕀, with the cut atom left abstract so tau3 can unfold it
inline Formula cardAbove(Var s, const std::function<Formula(const Term&)>& cutAtom) {
  Var k = nv(43);
  return fExistsSuch(k, fCard(tVar(s), tVar(k)), fNot(cutAtom(tVar(k))));
}

inline Formula cond2(Var s, const std::function<Formula(const Term&)>& cutAtom) {
  return fAnd(sparse(s), cardAbove(s, cutAtom));
}

// ∀c(c codes s∩[0,v] ⇒ ¬Cond(c))
inline Formula notCondIntersect(Var s, Var v, const std::function<Formula(const Term&)>& cutAtom) {
  Var c = nv(44), u = nv(45);
  Formula ext = fForall(u, fIff(fAck(tVar(u), tVar(c)), interMem(tVar(u), s, v)));
  return fForall(c, fImp(ext, fNot(cond2(c, cutAtom))));
}

inline ForcingTranslation buildTau2Like(bool unfoldCut) {
  std::function<Formula(const Term&)> cutAtom;
  if (unfoldCut)
    cutAtom = [](const Term& t) { return flib::memberI01(t); };
  else
    cutAtom = [](const Term& t) { return fCut(t); };

  ForcingTranslation t;
  t.id = unfoldCut ? "tau3" : "tau2";
  t.source = Language::LII;
  t.target = unfoldCut ? Language::LII : Language::LIcut;
  t.condSort = Sort::Number;
  t.targetTheory = unfoldCut ? "RCA0star_notISig01_notLPC" : "IDelta0_exp_SC";

  Var s = nv(90), s1 = nv(91), v = nv(92);
  Var V = nv(93);
  t.condVar = s;
  t.condF = cond2(s, cutAtom);
  t.leLo = s1;
  t.leHi = s;
  {
    Var a = nv(46);
    Formula subset = fForall(a, fImp(fAck(tVar(a), tVar(s1)), fAck(tVar(a), tVar(s))));
    t.leF = fAnd(cond2(s, cutAtom), fAnd(cond2(s1, cutAtom), subset));
  }
  t.nameVar[Sort::Number] = v;
  t.nameF[Sort::Number] = fEq(tVar(v), tVar(v));
  t.vnCondVar[Sort::Number] = s;
  t.vnNameVar[Sort::Number] = v;
  t.vnF[Sort::Number] =
      fAnd(cond2(s, cutAtom), fAnd(fEq(tVar(v), tVar(v)), notCondIntersect(s, v, cutAtom)));

  t.nameVar[Sort::SetSort] = V;
  t.nameF[Sort::SetSort] = fEq(tVar(V), tVar(V));
  t.vnCondVar[Sort::SetSort] = s;
  t.vnNameVar[Sort::SetSort] = V;
  t.vnF[Sort::SetSort] = fAnd(cond2(s, cutAtom), fEq(tVar(V), tVar(V)));

  t.forceAtom = [](const ForcingTranslation& tau, const Formula& atom, Var s_) -> Formula {
    using namespace taudetail;
    if (atom->kind != FormulaNode::Kind::Atom) throw ForcingError("forceAtom on non-atom");
    if (atom->rel == Rel::CutMem) throw ForcingError("tau2 source has no cut atoms");
    // map source variables to their (first-order) names inside the terms
    auto mapTerm = [&](const Term& trm) {
      Term out = trm;
      for (auto& sv_ : freeVars(trm)) out = substTerm(out, sv_, tVar(tau.nameOf(sv_)));
      return out;
    };
    Formula core;
    if (atom->rel == Rel::SetMem) {
      core = fAck(mapTerm(atom->args[0]), tVar(tau.nameOf(atom->setArg)));
    } else {
      FormulaNode n{FormulaNode::Kind::Atom};
      n.rel = atom->rel;
      for (auto& a : atom->args) n.args.push_back(mapTerm(a));
      core = mkFormula(std::move(n));
    }
    return withVnOf(tau, atom, s_, core);
  };
  return t;
}

}  // namespace taudetail

inline ForcingTranslation buildTau2() { return taudetail::buildTau2Like(false); }
inline ForcingTranslation buildTau3() { return taudetail::buildTau2Like(true); }

// ---------------------------------------------------------------------------
// The single-sentence FI obligations, shipped Trusted with exact statements.
// ---------------------------------------------------------------------------

namespace taudetail {

inline Formula fiStatement(const ForcingTranslation& t, const std::string& key) {
  Var s = t.workCond(0), s1 = t.workCond(1), s2 = t.workCond(2);
  auto condAll = [&](Var c, Formula body) { return fForall(c, fImp(t.cond(c), body)); };
  auto nameAll = [&](Sort srt, Var n, Formula body) {
    return fForall(n, fImp(t.nameOfSort(srt, n), body));
  };
  Var x0 = nv(0), x1 = nv(1), x2 = nv(2), x3 = nv(3);

  if (key == "FI1") return fExists(s, t.cond(s));
  if (key == "FI2") return condAll(s, t.le(s, s));
  if (key == "FI3")
    return condAll(s, condAll(s1, condAll(s2, fImp(fAnd(t.le(s2, s1), t.le(s1, s)), t.le(s2, s)))));
  if (key == "FI4") {
    Var n = t.nameOf(x0);
    Formula inner = fExistsSuch(n, t.nameOfSort(Sort::Number, n), t.vn(Sort::Number, s1, n));
    return condAll(s, fExistsSuch(s1, t.le(s1, s), inner));
  }
  if (key == "FI5-N" || key == "FI5-S") {
    Sort srt = key == "FI5-N" ? Sort::Number : Sort::SetSort;
    Var n = t.nameOf(Var{srt, 0});
    return condAll(
        s, condAll(s1, nameAll(srt, n,
                               fImp(fAnd(t.vn(srt, s, n), t.le(s1, s)), t.vn(srt, s1, n)))));
  }
  if (key == "FI7") {
    Var n = t.nameOf(x0);
    Formula forced = t.forceAtom(t, fEq(tVar(x0), tVar(x0)), s);
    return condAll(s, nameAll(Sort::Number, n, fImp(t.vn(Sort::Number, s, n), forced)));
  }
  if (key == "FI7-DIAG") {
    // the two-name equality atom with both names collapsed to one variable
    Var n = t.nameOf(x0);
    Formula forced = t.forceAtom(t, fEq(tVar(x0), tVar(x1)), s);
    forced = substituteVar(forced, t.nameOf(x1), n);
    return condAll(s, nameAll(Sort::Number, n, fImp(t.vn(Sort::Number, s, n), forced)));
  }
  if (key == "FI8") {
    Var n0 = t.nameOf(x0), n1 = t.nameOf(x1);
    Formula f01 = t.forceAtom(t, fEq(tVar(x0), tVar(x1)), s);
    Formula f10 = t.forceAtom(t, fEq(tVar(x1), tVar(x0)), s);
    return condAll(s, nameAll(Sort::Number, n0, nameAll(Sort::Number, n1, fImp(f01, f10))));
  }
  if (key == "FI9") {
    Var n0 = t.nameOf(x0), n1 = t.nameOf(x1), n2 = t.nameOf(x2);
    Formula fconj =
        forceFormula(t, fAnd(fEq(tVar(x0), tVar(x1)), fEq(tVar(x1), tVar(x2))), s).target;
    Formula f02 = t.forceAtom(t, fEq(tVar(x0), tVar(x2)), s);
    return condAll(s, nameAll(Sort::Number, n0,
                              nameAll(Sort::Number, n1, nameAll(Sort::Number, n2, fImp(fconj, f02)))));
  }
  if (key.rfind("FI10-", 0) == 0) {
    // values of function symbols exist and are unique
    Term ft;
    std::vector<Var> args;
    if (key == "FI10-zero") ft = tZero();
    if (key == "FI10-one") ft = tOne();
    if (key == "FI10-plus") { ft = tAdd(tVar(x0), tVar(x1)); args = {x0, x1}; }
    if (key == "FI10-times") { ft = tMul(tVar(x0), tVar(x1)); args = {x0, x1}; }
    if (!ft) throw ForcingError("unknown FI10 key " + key);
    Var wSrc = x2, wSrc2 = x3;
    Var wN = t.nameOf(wSrc);
    Formula exVal = fExistsSuch(
        s2, t.le(s2, s1),
        fExistsSuch(wN, t.nameOfSort(Sort::Number, wN), t.forceAtom(t, fEq(tVar(wSrc), ft), s2)));
    Formula existence = fForall(s1, fImp(t.le(s1, s), exVal));
    Formula uniqSrc = fForall(
        wSrc, fForall(wSrc2, fImp(fAnd(fEq(tVar(wSrc), ft), fEq(tVar(wSrc2), ft)),
                                  fEq(tVar(wSrc), tVar(wSrc2)))));
    Formula uniqForced = forceFormula(t, uniqSrc, s).target;
    Formula body = fAnd(existence, uniqForced);
    if (args.empty()) return condAll(s, body);
    Formula vnHyp = conj([&] {
      std::vector<Formula> cs;
      for (auto& a : args) cs.push_back(t.vnOfSrc(s, a));
      return cs;
    }());
    Formula inner = fImp(vnHyp, body);
    for (auto it = args.rbegin(); it != args.rend(); ++it) {
      Var n = t.nameOf(*it);
      inner = nameAll(Sort::Number, n, inner);
    }
    return condAll(s, inner);
  }
  if (key == "FI12-N" || key == "FI12-S") {
    Sort srt = key == "FI12-N" ? Sort::Number : Sort::SetSort;
    Var n = t.nameOf(Var{srt, 0});
    Formula dens = fForall(s1, fImp(t.le(s1, s), fExistsSuch(s2, t.le(s2, s1), t.vn(srt, s2, n))));
    return condAll(s, nameAll(srt, n, fImp(dens, t.vn(srt, s, n))));
  }
  throw ForcingError("unknown FI key " + key);
}

}  // namespace taudetail

// Registers the single-sentence FI obligations for a translation and wires
// the ids into the package.
inline void registerFiEntries(ForcingTranslation& t, ObligationLedger& ledger,
                              const std::string& provenance) {
  std::vector<std::string> keys = {"FI1", "FI2",    "FI3",    "FI4",       "FI5-N",
                                   "FI7", "FI7-DIAG", "FI8",  "FI9",       "FI10-zero",
                                   "FI10-one", "FI10-plus", "FI10-times", "FI12-N"};
  if (t.source == Language::LII) {
    keys.push_back("FI5-S");
    keys.push_back("FI12-S");
  }
  std::string prefix = t.id;
  for (auto& c : prefix) c = (char)toupper((unsigned char)c);
  for (auto& k : keys) {
    std::string id = prefix + "-" + k;
    ledger.add(trustedEntry(id, taudetail::fiStatement(t, k), provenance));
    t.fiIds[k] = id;
  }
}

}  // namespace ff
