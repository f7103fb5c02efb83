#pragma once

// The finitely axiomatized theories. Induction, comprehension and weak König
// axioms are shipped as fixed named sentences (single Π1 / Π01 renderings);
// the translation algorithms only consume them as forcing targets.

#include "ff/proof.hpp"
#include "ff/stdformulas.hpp"

namespace ff {

namespace stdax {

inline std::vector<std::pair<std::string, Formula>> paMinus() {
  Var x = nv(0), y = nv(1), z = nv(2);
  Term tx = tVar(x), ty = tVar(y), tz = tVar(z);
  auto A = [&](std::initializer_list<Var> vs, Formula body) {
    std::vector<Var> list(vs);
    for (auto it = list.rbegin(); it != list.rend(); ++it) body = fForall(*it, body);
    return body;
  };
  std::vector<std::pair<std::string, Formula>> out;
  out.emplace_back("pa-add-assoc", A({x, y, z}, fEq(tAdd(tAdd(tx, ty), tz), tAdd(tx, tAdd(ty, tz)))));
  out.emplace_back("pa-add-comm", A({x, y}, fEq(tAdd(tx, ty), tAdd(ty, tx))));
  out.emplace_back("pa-mul-assoc", A({x, y, z}, fEq(tMul(tMul(tx, ty), tz), tMul(tx, tMul(ty, tz)))));
  out.emplace_back("pa-mul-comm", A({x, y}, fEq(tMul(tx, ty), tMul(ty, tx))));
  out.emplace_back("pa-distrib", A({x, y, z}, fEq(tMul(tx, tAdd(ty, tz)), tAdd(tMul(tx, ty), tMul(tx, tz)))));
  out.emplace_back("pa-add-zero", A({x}, fEq(tAdd(tx, tZero()), tx)));
  out.emplace_back("pa-mul-one", A({x}, fEq(tMul(tx, tOne()), tx)));
  out.emplace_back("pa-zero-least", A({x}, fLeq(tZero(), tx)));
  out.emplace_back("pa-zero-one", fNot(fEq(tZero(), tOne())));
  out.emplace_back("pa-leq-total", A({x, y}, fOr(fLeq(tx, ty), fLeq(ty, tx))));
  out.emplace_back("pa-leq-antisym", A({x, y}, fImp(fLeq(tx, ty), fImp(fLeq(ty, tx), fEq(tx, ty)))));
  out.emplace_back("pa-leq-trans", A({x, y, z}, fImp(fLeq(tx, ty), fImp(fLeq(ty, tz), fLeq(tx, tz)))));
  out.emplace_back("pa-add-mono", A({x, y, z}, fImp(fLeq(tx, ty), fLeq(tAdd(tx, tz), tAdd(ty, tz)))));
  out.emplace_back("pa-mul-mono", A({x, y, z}, fImp(fLeq(tx, ty), fLeq(tMul(tx, tz), tMul(ty, tz)))));
  out.emplace_back("pa-sub", A({x, y}, fImp(fLeq(tx, ty), fExists(z, fEq(tAdd(tx, tz), ty)))));
  out.emplace_back("pa-discrete", A({x, y}, fImp(flib::lt(tx, ty), fLeq(tAdd(tx, tOne()), ty))));
  return out;
}

// Totality of exponentiation: ∀x∃y(2^x = y)
inline Formula expAxiom() {
  Var x = nv(0), y = nv(1);
  return fForall(x, fExists(y, fPow2(tVar(x), tVar(y))));
}

// Δ0-induction, fixed Π1 rendering (a convention; the translation algorithms
// treat it as an opaque forcing target).
inline Formula iDelta0Pi1() {
  Var x = nv(0), y = nv(1);
  return fForall(x, fForall(y, fLeq(tVar(x), tAdd(tVar(x), tVar(y)))));
}

// Δ00-induction as a single Π01 sentence: set induction up to x.
inline Formula iDelta00Pi01() {
  Var X = sv(0), x = nv(0), y = nv(1);
  Formula step = fForall(y, fImp(fLeq(tVar(y), tVar(x)),
                                 fImp(fIn(tVar(y), X), fIn(tAdd(tVar(y), tOne()), X))));
  return fForall(X, fForall(x, fImp(fAnd(fIn(tZero(), X), step), fIn(tVar(x), X))));
}

// Δ01-comprehension, fixed single-sentence rendering.
inline Formula delta01CA() {
  Var X = sv(0), Y = sv(1), x = nv(0);
  return fForall(X, fExists(Y, fForall(x, fIff(fIn(tVar(x), Y), fIn(tVar(x), X)))));
}

// Weak König's lemma, fixed single-sentence rendering (a convention: the
// content enters through the separation-instance derivation).
inline Formula wkl() {
  Var X = sv(0), Y = sv(1), u = nv(0);
  Formula sub = fForall(u, fImp(fIn(tVar(u), Y), fIn(tVar(u), X)));
  return fForall(X, fImp(flib::unbounded(X), fExistsSuch(Y, flib::unbounded(Y), sub)));
}

// The chain-antichain principle.
inline Formula cac() {
  Var P = sv(0), S = sv(1);
  Formula concl = fExistsSuch(S, flib::unbounded(S), fOr(flib::chainIn(S, P), flib::antichainIn(S, P)));
  return fForall(P, fImp(flib::partialOrder(P), concl));
}

// IΣ01 in the form equivalent over RCA0*: every number belongs to I01.
inline Formula iSigma01() {
  Var x = nv(30);
  return fForall(x, flib::memberI01(tVar(x)));
}

// Σ01-LPC rendered through its use: some unbounded set is enumerated in
// increasing order by I01.
inline Formula lpc() {
  Var A = sv(8), x = nv(29), i = nv(30);
  Formula everyIndexed =
      fForall(x, fImp(fIn(tVar(x), A),
                      fExistsSuch(i, flib::memberI01(tVar(i)), flib::nthElement(A, tVar(x), tVar(i)))));
  Formula everyIndexHit =
      fForall(i, fImp(flib::memberI01(tVar(i)),
                      fExistsSuch(x, fIn(tVar(x), A), flib::nthElement(A, tVar(x), tVar(i)))));
  return fExistsSuch(A, flib::unbounded(A), fAnd(everyIndexed, everyIndexHit));
}

// The SC axiom split into its named conjuncts over L_I ∪ {𝕀}.
inline std::vector<std::pair<std::string, Formula>> scAxioms() {
  Var x = nv(0), y = nv(1), c = nv(2), z = nv(3);
  std::vector<std::pair<std::string, Formula>> out;
  out.emplace_back("sc-zero", fCut(tZero()));
  out.emplace_back("sc-succ", fForall(x, fImp(fCut(tVar(x)), fCut(tAdd(tVar(x), tOne())))));
  out.emplace_back("sc-initial",
                   fForall(x, fForall(y, fImp(fCut(tVar(x)), fImp(fLeq(tVar(y), tVar(x)), fCut(tVar(y)))))));
  out.emplace_back("sc-mult",
                   fForall(x, fForall(y, fImp(fCut(tVar(x)), fImp(fCut(tVar(y)), fCut(tMul(tVar(x), tVar(y))))))));
  out.emplace_back("sc-proper", fExists(z, fNot(fCut(tVar(z)))));
  out.emplace_back("sc-reach",
                   fForall(x, fExistsSuch(c, fNot(fCut(tVar(c))),
                                          fExists(z, fSupExp(tVar(c), tVar(x), tVar(z))))));
  return out;
}

// A concrete Σ01-separation instance (the pair of Δ00 matrices is fixed by
// the derivation files).
inline Formula sepInstance() {
  Var Z = sv(0), X = sv(1), x = nv(0), y = nv(1);
  Formula phi1 = fIn(tPair(tVar(x), tVar(y)), Z);
  Formula phi2 = fIn(tPair(tVar(y), tVar(x)), Z);
  Formula ex1 = fExists(y, phi1), ex2 = fExists(y, phi2);
  Formula hyp = fForall(x, fImp(ex1, fNot(ex2)));
  Formula concl = fExists(X, fForall(x, fAnd(fImp(ex1, fIn(tVar(x), X)), fImp(ex2, fNot(fIn(tVar(x), X))))));
  return fForall(Z, fImp(hyp, concl));
}

}  // namespace stdax

inline Theory makeTheory(const std::string& name, Language lang,
                         std::vector<std::pair<std::string, Formula>> axioms) {
  Theory t;
  t.name = name;
  t.language = lang;
  for (auto& [n, f] : axioms) t.addAxiom(n, f);
  return t;
}

// The theory registry. Names are stable identifiers used in proof files.
inline std::map<std::string, Theory> standardTheories() {
  using namespace stdax;
  std::map<std::string, Theory> reg;
  auto second = [](Language lang) {
    std::vector<std::pair<std::string, Formula>> axs = paMinus();
    (void)lang;
    axs.emplace_back("exp", expAxiom());
    axs.emplace_back("idelta00-pi01", iDelta00Pi01());
    axs.emplace_back("delta01-ca", delta01CA());
    return axs;
  };

  {
    auto axs = second(Language::LII);
    reg.emplace("RCA0star", makeTheory("RCA0star", Language::LII, axs));
    auto rca0 = axs;
    rca0.emplace_back("isig01", iSigma01());
    reg.emplace("RCA0", makeTheory("RCA0", Language::LII, rca0));
    auto wklcac = axs;
    wklcac.emplace_back("wkl", wkl());
    wklcac.emplace_back("cac", cac());
    reg.emplace("WKL0star_CAC", makeTheory("WKL0star_CAC", Language::LII, wklcac));
    auto lpcT = axs;
    lpcT.emplace_back("not-isig01", fNot(iSigma01()));
    lpcT.emplace_back("lpc", lpc());
    reg.emplace("RCA0star_notISig01_LPC", makeTheory("RCA0star_notISig01_LPC", Language::LII, lpcT));
    auto nlpcT = axs;
    nlpcT.emplace_back("not-isig01", fNot(iSigma01()));
    nlpcT.emplace_back("not-lpc", fNot(lpc()));
    reg.emplace("RCA0star_notISig01_notLPC",
                makeTheory("RCA0star_notISig01_notLPC", Language::LII, nlpcT));
    // Helper theory for the separation-instance derivation files.
    auto sep = axs;
    sep.emplace_back("sep-1", sepInstance());
    reg.emplace("RCA0star_Sep", makeTheory("RCA0star_Sep", Language::LII, sep));
  }
  {
    std::vector<std::pair<std::string, Formula>> axs = paMinus();
    axs.emplace_back("exp", expAxiom());
    axs.emplace_back("idelta0-pi1", iDelta0Pi1());
    for (auto& [n, f] : scAxioms()) axs.emplace_back(n, f);
    reg.emplace("IDelta0_exp_SC", makeTheory("IDelta0_exp_SC", Language::LIcut, axs));
  }
  return reg;
}

}  // namespace ff
