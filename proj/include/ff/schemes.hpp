#pragma once

// The logical axiom schemes of the Hilbert calculus. Modus ponens is the only
// inference rule; generalizations of axioms are axioms (an instance may carry
// a universal-closure prefix). The propositional schemes are a standard
// complete set for ¬/⇒ stated with ∧ and ∨ unfolded into their official
// abbreviations.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ff/syntax.hpp"

namespace ff {

struct SchemeArgs {
  std::map<std::string, Formula> formulas;  // A, B, C
  std::map<std::string, Var> vars;          // x (either sort)
  std::map<std::string, Term> terms;        // t (number sort)

  Formula f(const std::string& k) const {
    auto it = formulas.find(k);
    if (it == formulas.end()) throw std::runtime_error("scheme binding missing formula " + k);
    return it->second;
  }
  Var v(const std::string& k) const {
    auto it = vars.find(k);
    if (it == vars.end()) throw std::runtime_error("scheme binding missing variable " + k);
    return it->second;
  }
  Term t(const std::string& k) const {
    auto it = terms.find(k);
    if (it == terms.end()) throw std::runtime_error("scheme binding missing term " + k);
    return it->second;
  }
};

struct SchemeError : std::runtime_error {
  explicit SchemeError(const std::string& m) : std::runtime_error(m) {}
};

inline const std::vector<std::string>& schemeIds() {
  static const std::vector<std::string> ids = {
      "p1", "p2", "and-elim1", "and-elim2", "and-intro", "or-intro1",
      "or-intro2", "or-elim", "reductio", "dneg-elim", "q-dist", "q-vac", "q-inst"};
  return ids;
}

inline Formula instantiateScheme(const std::string& id, const SchemeArgs& a) {
  if (id == "p1") {
    Formula A = a.f("A"), B = a.f("B");
    return fImp(A, fImp(B, A));
  }
  if (id == "p2") {
    Formula A = a.f("A"), B = a.f("B"), C = a.f("C");
    return fImp(fImp(A, fImp(B, C)), fImp(fImp(A, B), fImp(A, C)));
  }
  if (id == "and-elim1") {
    Formula A = a.f("A"), B = a.f("B");
    return fImp(fAnd(A, B), A);
  }
  if (id == "and-elim2") {
    Formula A = a.f("A"), B = a.f("B");
    return fImp(fAnd(A, B), B);
  }
  if (id == "and-intro") {
    Formula A = a.f("A"), B = a.f("B");
    return fImp(A, fImp(B, fAnd(A, B)));
  }
  if (id == "or-intro1") {
    Formula A = a.f("A"), B = a.f("B");
    return fImp(A, fOr(A, B));
  }
  if (id == "or-intro2") {
    Formula A = a.f("A"), B = a.f("B");
    return fImp(B, fOr(A, B));
  }
  if (id == "or-elim") {
    Formula A = a.f("A"), B = a.f("B"), C = a.f("C");
    return fImp(fImp(A, C), fImp(fImp(B, C), fImp(fOr(A, B), C)));
  }
  if (id == "reductio") {
    Formula A = a.f("A"), B = a.f("B");
    return fImp(fImp(A, B), fImp(fImp(A, fNot(B)), fNot(A)));
  }
  if (id == "dneg-elim") {
    Formula A = a.f("A");
    return fImp(fNot(fNot(A)), A);
  }
  if (id == "q-dist") {
    Formula A = a.f("A"), B = a.f("B");
    Var x = a.v("x");
    return fImp(fForall(x, fImp(A, B)), fImp(fForall(x, A), fForall(x, B)));
  }
  if (id == "q-vac") {
    Formula A = a.f("A");
    Var x = a.v("x");
    if (isFreeIn(x, A))
      throw SchemeError("q-vac side condition violated: " + x.name() + " free in body");
    return fImp(A, fForall(x, A));
  }
  if (id == "q-inst") {
    Formula A = a.f("A");
    Var x = a.v("x");
    if (x.sort == Sort::Number) {
      Term t = a.t("t");
      return fImp(fForall(x, A), substitute(A, x, t));
    }
    Var Y = a.v("Y");
    if (Y.sort != Sort::SetSort) throw SchemeError("q-inst: set-sort substitution needs a set variable");
    return fImp(fForall(x, A), substituteSet(A, x, Y));
  }
  throw SchemeError("unknown scheme id: " + id);
}

// Equality axioms per language: reflexivity, symmetry, transitivity and a
// congruence axiom for every function and relation symbol.
inline std::vector<std::pair<std::string, Formula>> equalityAxioms(Language lang) {
  Var x = nv(0), y = nv(1), z = nv(2), w = nv(3), u = nv(4);
  Var X = sv(0);
  auto A = [&](std::initializer_list<Var> vs, Formula body) {
    std::vector<Var> list(vs);
    for (auto it = list.rbegin(); it != list.rend(); ++it) body = fForall(*it, body);
    return body;
  };
  std::vector<std::pair<std::string, Formula>> out;
  out.emplace_back("eq-refl", A({x}, fEq(tVar(x), tVar(x))));
  out.emplace_back("eq-sym", A({x, y}, fImp(fEq(tVar(x), tVar(y)), fEq(tVar(y), tVar(x)))));
  out.emplace_back("eq-trans",
                   A({x, y, z}, fImp(fEq(tVar(x), tVar(y)), fImp(fEq(tVar(y), tVar(z)), fEq(tVar(x), tVar(z))))));
  out.emplace_back("eq-cong-plus",
                   A({x, y, z, w}, fImp(fEq(tVar(x), tVar(z)),
                                        fImp(fEq(tVar(y), tVar(w)), fEq(tAdd(tVar(x), tVar(y)), tAdd(tVar(z), tVar(w)))))));
  out.emplace_back("eq-cong-times",
                   A({x, y, z, w}, fImp(fEq(tVar(x), tVar(z)),
                                        fImp(fEq(tVar(y), tVar(w)), fEq(tMul(tVar(x), tVar(y)), tMul(tVar(z), tVar(w)))))));
  out.emplace_back("eq-cong-leq",
                   A({x, y, z, w}, fImp(fEq(tVar(x), tVar(z)),
                                        fImp(fEq(tVar(y), tVar(w)), fImp(fLeq(tVar(x), tVar(y)), fLeq(tVar(z), tVar(w)))))));
  out.emplace_back("eq-cong-inAck",
                   A({x, y, z, w}, fImp(fEq(tVar(x), tVar(z)),
                                        fImp(fEq(tVar(y), tVar(w)), fImp(fAck(tVar(x), tVar(y)), fAck(tVar(z), tVar(w)))))));
  out.emplace_back("eq-cong-pow2",
                   A({x, y, z, w}, fImp(fEq(tVar(x), tVar(z)),
                                        fImp(fEq(tVar(y), tVar(w)), fImp(fPow2(tVar(x), tVar(y)), fPow2(tVar(z), tVar(w)))))));
  out.emplace_back("eq-cong-card",
                   A({x, y, z, w}, fImp(fEq(tVar(x), tVar(z)),
                                        fImp(fEq(tVar(y), tVar(w)), fImp(fCard(tVar(x), tVar(y)), fCard(tVar(z), tVar(w)))))));
  {
    Var z2 = nv(5);
    out.emplace_back(
        "eq-cong-supexp",
        A({x, y, z, w, u, z2},
          fImp(fEq(tVar(x), tVar(w)),
               fImp(fEq(tVar(y), tVar(u)),
                    fImp(fEq(tVar(z), tVar(z2)),
                         fImp(fSupExp(tVar(x), tVar(y), tVar(z)), fSupExp(tVar(w), tVar(u), tVar(z2))))))));
  }
  if (lang == Language::LII) {
    out.emplace_back("eq-cong-in",
                     fForall(X, A({x, y}, fImp(fEq(tVar(x), tVar(y)), fImp(fIn(tVar(x), X), fIn(tVar(y), X))))));
  }
  if (lang == Language::LIcut) {
    out.emplace_back("eq-cong-inI",
                     A({x, y}, fImp(fEq(tVar(x), tVar(y)), fImp(fCut(tVar(x)), fCut(tVar(y))))));
  }
  return out;
}

inline std::optional<Formula> equalityAxiom(Language lang, const std::string& name) {
  for (auto& [n, f] : equalityAxioms(lang))
    if (n == name) return f;
  return std::nullopt;
}

}  // namespace ff
