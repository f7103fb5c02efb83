#include "doctest.h"
#include "ff/tauhooks.hpp"
#include "ff/theories_std.hpp"

using namespace ff;

namespace {

struct Env {
  std::map<std::string, Theory> reg = standardTheories();
  ObligationLedger ledger;
  ForcingTranslation t2 = buildTau2();
  const Theory& th2;

  Env() : th2(reg.at("IDelta0_exp_SC")) {
    registerFiEntries(t2, ledger, "Lemma: tau2 single-sentence FI conditions");
    installTau2Hooks(t2, th2, ledger);
  }
};

}  // namespace

TEST_CASE("tau2 atom hooks generate checkable FI6/FI13 proofs") {
  Env e;
  ForcingEngine eng(e.t2, e.th2, e.ledger);
  Var x = nv(0), y = nv(1);
  std::vector<Formula> atoms = {
      fEq(tVar(x), tVar(y)),
      fLeq(tAdd(tVar(x), tOne()), tMul(tVar(y), tVar(y))),
      fIn(tVar(x), sv(0)),
      fEq(tZero(), tZero()),  // closed atom
  };
  for (auto& a : atoms) {
    CAPTURE(print(a));
    const Proof& pm = eng.mono(a);
    CHECK(formulaEq(pm.conclusion(), stmt::mono(e.t2, a)));
    const Proof& pd = eng.dens(a);
    CHECK(formulaEq(pd.conclusion(), stmt::dens(e.t2, a)));
    TrustReport tr = eng.check(pm);
    for (auto& id : tr.trustedIds) CHECK(e.ledger.has(id));
  }
}

TEST_CASE("monotonicity, density and no-contradiction for complex formulas") {
  Env e;
  ForcingEngine eng(e.t2, e.th2, e.ledger);
  Var x = nv(0), y = nv(1);
  Formula atom = fEq(tVar(x), tVar(y));
  Formula closedAtom = fLeq(tZero(), tOne());
  std::vector<Formula> shapes = {
      fNot(atom),
      fImp(atom, fLeq(tVar(x), tVar(y))),
      fForall(x, fImp(fEq(tVar(x), tVar(x)), fIn(tVar(x), sv(0)))),
      fAnd(atom, fIn(tVar(y), sv(0))),
      fNot(fNot(closedAtom)),
      fExists(y, fEq(tVar(y), tVar(x))),
      fForall(x, fForall(y, fImp(atom, fNot(atom)))),
  };
  for (auto& f : shapes) {
    CAPTURE(print(f));
    CHECK_NOTHROW(eng.mono(f));
    CHECK_NOTHROW(eng.noContra(f));
    CHECK_NOTHROW(eng.dens(f));
  }
}

TEST_CASE("generated proofs are deterministic") {
  Env e1, e2;
  Formula f = fImp(fEq(tVar(nv(0)), tVar(nv(1))), fNot(fIn(tVar(nv(0)), sv(0))));
  ForcingEngine engA(e1.t2, e1.th2, e1.ledger);
  ForcingEngine engB(e2.t2, e2.th2, e2.ledger);
  const Proof& a = engA.dens(f);
  const Proof& b = engB.dens(f);
  REQUIRE(a.lines.size() == b.lines.size());
  for (size_t i = 0; i < a.lines.size(); ++i) CHECK(formulaEq(a.lines[i].formula, b.lines[i].formula));
}

TEST_CASE("sugar lemmas") {
  Env e;
  ForcingEngine eng(e.t2, e.th2, e.ledger);
  installTau2FullHooks(e.t2, e.th2, e.ledger, eng);
  Var x = nv(0), y = nv(1);
  Formula A = fEq(tVar(x), tVar(y)), B = fIn(tVar(y), sv(0));
  CHECK_NOTHROW(eng.sugarConj(A, B));
  CHECK_NOTHROW(eng.sugarConj(fLeq(tZero(), tOne()), fEq(tZero(), tZero())));  // closed
  CHECK_NOTHROW(eng.sugarExists(fExists(y, fEq(tVar(y), tVar(x)))));
  CHECK_NOTHROW(eng.sugarExists(fExists(y, fEq(tVar(y), tVar(y)))));  // sentence
}

TEST_CASE("term values and the substitution lemma") {
  Env e;
  ForcingEngine eng(e.t2, e.th2, e.ledger);
  installTau2FullHooks(e.t2, e.th2, e.ledger, eng);
  Var x = nv(0);
  CHECK_NOTHROW(eng.termValue(tVar(x)));
  CHECK_NOTHROW(eng.termValue(tZero()));
  CHECK_NOTHROW(eng.termValue(tAdd(tVar(x), tOne())));
  Var w = eng.valueSrcVar();
  CHECK_NOTHROW(eng.substLemma(fEq(tVar(w), tVar(w)), w, tVar(x)));
  CHECK_NOTHROW(eng.substLemma(fNot(fLeq(tVar(w), tVar(x))), w, tAdd(tVar(x), tOne())));
}

TEST_CASE("forced schemes") {
  Env e;
  ForcingEngine eng(e.t2, e.th2, e.ledger);
  installTau2FullHooks(e.t2, e.th2, e.ledger, eng);
  Var x = nv(0), y = nv(1);
  Formula A = fEq(tVar(x), tVar(x));
  Formula B = fLeq(tVar(x), tVar(y));
  Formula C = fIn(tVar(x), sv(0));
  auto fa = [&](std::initializer_list<std::pair<std::string, Formula>> fs) {
    return Script::fargs(fs);
  };
  CHECK_NOTHROW(eng.forcedScheme("p1", fa({{"A", A}, {"B", B}})));
  CHECK_NOTHROW(eng.forcedScheme("and-elim1", fa({{"A", A}, {"B", B}})));
  CHECK_NOTHROW(eng.forcedScheme("and-elim2", fa({{"A", A}, {"B", B}})));
  CHECK_NOTHROW(eng.forcedScheme("and-intro", fa({{"A", A}, {"B", B}})));
  CHECK_NOTHROW(eng.forcedScheme("or-intro1", fa({{"A", A}, {"B", B}})));
  CHECK_NOTHROW(eng.forcedScheme("or-intro2", fa({{"A", A}, {"B", B}})));
  CHECK_NOTHROW(eng.forcedScheme("dneg-elim", fa({{"A", A}})));
  CHECK_NOTHROW(eng.forcedScheme("p2", fa({{"A", A}, {"B", B}, {"C", C}})));
  CHECK_NOTHROW(eng.forcedScheme("reductio", fa({{"A", A}, {"B", B}})));
  CHECK_NOTHROW(eng.forcedScheme("or-elim", fa({{"A", A}, {"B", B}, {"C", C}})));
  {
    SchemeArgs a = fa({{"A", fEq(tVar(x), tVar(y))}});
    a.vars["x"] = nv(2);
    CHECK_NOTHROW(eng.forcedScheme("q-vac", a));
  }
  {
    SchemeArgs a = fa({{"A", fEq(tVar(x), tVar(x))}, {"B", fLeq(tVar(x), tVar(y))}});
    a.vars["x"] = x;
    CHECK_NOTHROW(eng.forcedScheme("q-dist", a));
  }
  {
    SchemeArgs a = fa({{"A", fLeq(tVar(x), tVar(y))}});
    a.vars["x"] = x;
    a.terms["t"] = tAdd(tVar(y), tOne());
    CHECK_NOTHROW(eng.forcedScheme("q-inst", a));
  }
}

TEST_CASE("forced equality axioms") {
  Env e;
  ForcingEngine eng(e.t2, e.th2, e.ledger);
  installTau2FullHooks(e.t2, e.th2, e.ledger, eng);
  for (auto& [name, f] : equalityAxioms(Language::LII)) {
    CAPTURE(name);
    CHECK_NOTHROW(eng.forcedEqAxiom(name));
  }
}

TEST_CASE("translateProof on a small source proof") {
  Env e;
  ForcingEngine eng(e.t2, e.th2, e.ledger);
  installTau2FullHooks(e.t2, e.th2, e.ledger, eng);
  const Theory& src = e.reg.at("WKL0star_CAC");

  // five-line A⇒A proof over a closed atom
  Formula A = fEq(tZero(), tZero());
  Script s0(&src, &e.ledger);
  Ln aa = s0.idLemma(A);
  Proof delta = s0.extract(aa, src.name);

  auto fi14 = [&](const std::string&) -> const Proof* { return nullptr; };
  auto fled = [&](const std::string&) { return std::string(); };
  Proof out = eng.translateProof(delta, src, fi14, fled);
  CHECK(formulaEq(out.conclusion(), forcedStatement(e.t2, fImp(A, A))));
  CheckResult r = checkProof(e.th2, out, e.ledger);
  CHECK(r.accepted);
  MESSAGE("translated size: ", out.lines.size(), " lines, input ", delta.lines.size());
}
