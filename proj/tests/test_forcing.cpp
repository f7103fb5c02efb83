#include <random>

#include "doctest.h"
#include "ff/surface.hpp"
#include "ff/tau.hpp"

using namespace ff;

TEST_CASE("tau packages pass the FT1-FT5 load checks") {
  for (auto tau : {buildTau1(), buildTau2(), buildTau3()}) {
    LoadCheckResult r = checkTranslation(tau);
    for (auto& f : r.failures) MESSAGE(tau.id, ": ", f);
    CHECK(r.ok);
  }
}

TEST_CASE("tau2 atom forcing is the transparent clause") {
  ForcingTranslation t2 = buildTau2();
  Var x0 = nv(0), x1 = nv(1);
  Var s = t2.workCond(0);
  Formula forced = t2.forceAtom(t2, fEq(tVar(x0), tVar(x1)), s);
  auto cs = conjunctsOf(forced);
  REQUIRE(cs.size() == 3);
  CHECK(formulaEq(cs[0], t2.vnOfSrc(s, x0)));
  CHECK(formulaEq(cs[1], t2.vnOfSrc(s, x1)));
  CHECK(formulaEq(cs[2], fEq(tVar(t2.nameOf(x0)), tVar(t2.nameOf(x1)))));

  // clause (viii): t ∈ V becomes t(v̄) ∈_Ack V
  Formula mem = t2.forceAtom(t2, fIn(tAdd(tVar(x0), tOne()), sv(0)), s);
  auto cs2 = conjunctsOf(mem);
  REQUIRE(cs2.size() == 3);
  CHECK(formulaEq(cs2.back(), fAck(tAdd(tVar(t2.nameOf(x0)), tOne()), tVar(t2.nameOf(sv(0))))));
}

TEST_CASE("tau1 forces cut membership through I01") {
  ForcingTranslation t1 = buildTau1();
  Var x0 = nv(0);
  Formula forced = t1.forceAtom(t1, fCut(tVar(x0)), t1.workCond(0));
  // shape: VN ∧ ∃i(I01(i) ∧ ∀^∞x∈s(...≤i))
  auto cs = conjunctsOf(forced);
  REQUIRE(cs.size() == 2);
  std::string txt = print(cs[1]);
  CHECK(txt.find("card") != std::string::npos);  // I01 mentions cardinality
  CHECK(!hasSetQuantifier(cs[0]));
  CHECK(hasSetQuantifier(cs[1]));  // the I01 definition quantifies over sets
  CHECK(inLanguage(forced, Language::LII));
}

TEST_CASE("tau3 has no residual cut atoms") {
  ForcingTranslation t3 = buildTau3();
  std::function<bool(const Formula&)> noCut = [&](const Formula& f) -> bool {
    switch (f->kind) {
      case FormulaNode::Kind::Atom: return f->rel != Rel::CutMem;
      case FormulaNode::Kind::Not: return noCut(f->a);
      case FormulaNode::Kind::Imp: return noCut(f->a) && noCut(f->b);
      case FormulaNode::Kind::Forall: return noCut(f->a);
      default: return true;
    }
  };
  CHECK(noCut(t3.condF));
  CHECK(noCut(t3.leF));
  CHECK(noCut(t3.vnF.at(Sort::Number)));
  CHECK(inLanguage(t3.condF, Language::LII));
  // tau2 and tau3 agree on everything except the cut unfolding
  ForcingTranslation t2 = buildTau2();
  Var x0 = nv(0);
  Formula a2 = t2.forceAtom(t2, fEq(tVar(x0), tVar(x0)), t2.workCond(0));
  Formula a3 = t3.forceAtom(t3, fEq(tVar(x0), tVar(x0)), t3.workCond(0));
  CHECK(size(a3) > size(a2));  // I01 unfolding strictly enlarges VN
}

TEST_CASE("forceFormula follows FT6-FT8") {
  ForcingTranslation t2 = buildTau2();
  Var x0 = nv(0);
  Var s = t2.workCond(0);

  // FT6
  Formula negAtom = fNot(fEq(tVar(x0), tVar(x0)));
  ForcedFormula fneg = forceFormula(t2, negAtom, s);
  auto cs = conjunctsOf(fneg.target);
  REQUIRE(cs.size() == 2);
  Formula core = cs[1];
  REQUIRE(core->kind == FormulaNode::Kind::Forall);
  CHECK(core->qvar == t2.condDepth(0));
  CHECK(core->a->kind == FormulaNode::Kind::Imp);
  CHECK(formulaEq(core->a->a, t2.le(t2.condDepth(0), s)));
  CHECK(core->a->b->kind == FormulaNode::Kind::Not);

  // FT7: ∀s'⊴s ∃s''⊴s' (s'⊩φ ⇒ s''⊩ψ)
  Formula imp = fImp(fEq(tVar(x0), tVar(x0)), fLeq(tVar(x0), tVar(x0)));
  ForcedFormula fimp = forceFormula(t2, imp, s);
  auto csImp = conjunctsOf(fimp.target);
  REQUIRE(csImp.size() == 2);
  CHECK(csImp[1]->kind == FormulaNode::Kind::Forall);

  // FT8 over a sentence: ∀x(x=x)
  ForcedFormula fall = forceFormula(t2, fForall(x0, fEq(tVar(x0), tVar(x0))), s);
  auto csAll = conjunctsOf(fall.target);
  REQUIRE(csAll.size() == 2);
  CHECK(formulaEq(csAll[0], t2.cond(s)));  // empty name tuple contributes Cond(s)
  REQUIRE(csAll[1]->kind == FormulaNode::Kind::Forall);
  CHECK(csAll[1]->qvar == t2.nameOf(x0));

  // free variables of the target: s plus the names
  ForcedFormula fatomic = forceFormula(t2, fEq(tVar(x0), tVar(nv(1))), s);
  std::set<Var> expect = {s, t2.nameOf(x0), t2.nameOf(nv(1))};
  CHECK(freeVars(fatomic.target) == expect);
}

TEST_CASE("FT5 for full formulas: forcing commutes with renaming") {
  std::mt19937_64 rng(11);
  auto pick = [&](int n) { return (int)(rng() % n); };
  ForcingTranslation taus[] = {buildTau1(), buildTau2(), buildTau3()};
  for (auto& tau : taus) {
    for (int it = 0; it < 300; ++it) {
      // random source formula over x0..x2 (plus X0 for LII sources)
      std::function<Formula(int)> gen = [&](int d) -> Formula {
        if (d == 0) {
          if (tau.source == Language::LII && pick(3) == 0) return fIn(tVar(nv(pick(3))), sv(0));
          if (tau.source == Language::LIcut && pick(4) == 0) return fCut(tVar(nv(pick(3))));
          return pick(2) ? fEq(tVar(nv(pick(3))), tVar(nv(pick(3))))
                         : fLeq(tVar(nv(pick(3))), tAdd(tVar(nv(pick(3))), tOne()));
        }
        switch (pick(4)) {
          case 0: return fNot(gen(d - 1));
          case 1: return fImp(gen(d - 1), gen(d - 1));
          case 2: return fForall(nv(pick(3)), gen(d - 1));
          default: return fAnd(gen(d - 1), gen(d - 1));
        }
      };
      Formula phi = cleanBinders(gen(1 + pick(3)));
      auto fv = freeVars(phi);
      if (fv.empty()) continue;
      // rename one free variable to a fresh one of the same sort
      Var v = *fv.begin();
      Var w{v.sort, 7};
      if (fv.count(w)) continue;
      Formula phiRen = substituteVar(phi, v, w);
      Var s = tau.workCond(0);
      Formula left = substituteVar(forceFormula(tau, phi, s).target, tau.nameOf(v), tau.nameOf(w));
      Formula right = forceFormula(tau, phiRen, s).target;
      CHECK(formulaEq(left, right));
      if (!formulaEq(left, right)) {
        MESSAGE("tau=", tau.id, " phi=", print(phi));
        return;
      }
    }
  }
}

TEST_CASE("forced output size is linearly bounded") {
  ForcingTranslation t2 = buildTau2();
  uint64_t maxClause = 0;
  maxClause = std::max(maxClause, size(t2.condF));
  maxClause = std::max(maxClause, size(t2.leF));
  maxClause = std::max(maxClause, size(t2.vnF.at(Sort::Number)));
  Var x0 = nv(0);
  Formula phi = fEq(tVar(x0), tVar(x0));
  for (int i = 0; i < 6; ++i) phi = fImp(phi, fForall(nv((uint32_t)i + 1), fNot(phi)));
  ForcedFormula ff = forceFormula(t2, phi);
  CHECK(size(ff.target) <= 4 * size(ff.source) * (maxClause + 4));
}

TEST_CASE("fi statements are closed sentences in the target language") {
  ObligationLedger ledger;
  ForcingTranslation t1 = buildTau1(), t2 = buildTau2(), t3 = buildTau3();
  registerFiEntries(t1, ledger, "Lemma: tau-1 is a forcing interpretation, single-sentence conditions");
  registerFiEntries(t2, ledger, "Lemma: tau-2 is a forcing interpretation, single-sentence conditions");
  registerFiEntries(t3, ledger, "tau3 analogue of the tau2 conditions");
  CHECK(t1.fiIds.count("FI2"));
  CHECK(t2.fiIds.count("FI12-S"));
  for (auto& id : ledger.ids()) {
    const LedgerEntry& e = ledger.get(id);
    CAPTURE(id);
    CHECK(isSentence(e.statement));
    Language lang = id.rfind("TAU1-", 0) == 0 ? Language::LII
                    : id.rfind("TAU2-", 0) == 0 ? Language::LIcut
                                                : Language::LII;
    CHECK(inLanguage(e.statement, lang));
  }
}
