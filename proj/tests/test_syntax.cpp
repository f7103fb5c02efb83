#include <random>

#include "doctest.h"
#include "ff/classify.hpp"
#include "ff/surface.hpp"
#include "ff/transform.hpp"

using namespace ff;

namespace {

// Random formula generator for the round-trip and classification properties.
struct Gen {
  std::mt19937_64 rng;
  explicit Gen(uint64_t seed) : rng(seed) {}

  int pick(int n) { return (int)(rng() % n); }

  Term term(int depth) {
    if (depth <= 0 || pick(3) == 0) {
      switch (pick(4)) {
        case 0: return tZero();
        case 1: return tOne();
        default: return tVar(nv(pick(4)));
      }
    }
    Term a = term(depth - 1), b = term(depth - 1);
    return pick(2) ? tAdd(a, b) : tMul(a, b);
  }

  Formula atom(bool setsAllowed) {
    switch (pick(setsAllowed ? 5 : 3)) {
      case 0: return fEq(term(2), term(2));
      case 1: return fLeq(term(2), term(2));
      case 2: return fAck(term(1), term(1));
      case 3: return fIn(term(1), sv(pick(2)));
      default: return fIn(term(1), sv(pick(2)));
    }
  }

  Formula formula(int depth, bool setsAllowed) {
    if (depth <= 0) return atom(setsAllowed);
    switch (pick(6)) {
      case 0: return fNot(formula(depth - 1, setsAllowed));
      case 1: return fImp(formula(depth - 1, setsAllowed), formula(depth - 1, setsAllowed));
      case 2: return fForall(nv(pick(4)), formula(depth - 1, setsAllowed));
      case 3: return fAnd(formula(depth - 1, setsAllowed), formula(depth - 1, setsAllowed));
      case 4: return fExists(nv(pick(4)), formula(depth - 1, setsAllowed));
      default: return fForallLeq(nv(pick(4)), term(1), formula(depth - 1, setsAllowed));
    }
  }
};

// Independent quantifier-prefix scanner used as the classification oracle: it
// enumerates candidate levels instead of computing them structurally.
bool oracleInClass(const Formula& f, bool sigma, int n);

bool oracleDelta0(const Formula& f) {
  switch (f->kind) {
    case FormulaNode::Kind::Atom: return f->rel != Rel::CutMem;
    case FormulaNode::Kind::Not: return oracleDelta0(f->a);
    case FormulaNode::Kind::Imp: return oracleDelta0(f->a) && oracleDelta0(f->b);
    case FormulaNode::Kind::Forall: {
      Var y;
      Term t;
      Formula body;
      if (!matchBoundedForall(f, y, t, body)) return false;
      return oracleDelta0(body);
    }
    default: return false;
  }
}

bool oracleInClass(const Formula& f, bool sigma, int n) {
  if (n == 0) return oracleDelta0(f);
  if (oracleDelta0(f)) return true;
  if (!sigma) {
    if (f->kind == FormulaNode::Kind::Forall && f->qvar.sort == Sort::Number)
      return oracleInClass(f->a, false, n) || oracleInClass(f->a, true, n - 1);
    return oracleInClass(f, true, n - 1);
  }
  Var x;
  Formula body;
  if (matchExistsPattern(f, x, body) && x.sort == Sort::Number)
    return oracleInClass(body, true, n) || oracleInClass(body, false, n - 1);
  return oracleInClass(f, false, n - 1);
}

}  // namespace

TEST_CASE("parse desugars to the official form") {
  Formula f = parseFormula("(and (eq x0 x0) (leq x0 x1))");
  CHECK(print(f) == "(not (imp (eq x0 x0) (not (leq x0 x1))))");
  Formula g = parseFormula("(exists x2 (eq x2 x0))");
  CHECK(print(g) == "(not (forall x2 (not (eq x2 x0))))");
  Formula h = parseFormula("(eq 0 0)");
  CHECK(print(h) == "(eq 0 0)");
}

TEST_CASE("parse errors carry a useful message") {
  CHECK_THROWS_AS(parseFormula("(eq X0 x1)"), SurfaceError);   // sort error
  CHECK_THROWS_AS(parseFormula("(eq x0)"), SurfaceError);      // arity error
  CHECK_THROWS_AS(parseFormula("(frob x0 x1)"), SurfaceError); // lexical error
  CHECK_THROWS_AS(parseFormula("(in x0 x1)"), SurfaceError);   // ∈ needs a set variable
}

TEST_CASE("print/parse round trip on random formulas") {
  Gen g(42);
  for (int i = 0; i < 500; ++i) {
    Formula f = g.formula(4, true);
    Formula back = parseFormula(print(f));
    CHECK(formulaEq(f, back));
  }
}

TEST_CASE("resugaring undoes to the same official form") {
  Gen g(7);
  for (int i = 0; i < 200; ++i) {
    Formula f = g.formula(4, true);
    Formula back = formulaFromSexpr(resugar(f));
    CHECK(formulaEq(f, back));
  }
}

TEST_CASE("size counts symbol occurrences") {
  CHECK(size(parseFormula("(eq x0 x0)")) == 3);
  CHECK(size(parseFormula("(not (eq x0 x0))")) == 4);
  CHECK(size(parseFormula("(forall x0 (eq x0 x0))")) == 5);
  CHECK(size(parseFormula("(in x0 X0)")) == 3);
  CHECK(size(parseTerm("(plus x0 (times x1 1))")) == 5);
}

TEST_CASE("substitution basics") {
  Var x = nv(0), y = nv(1);
  Formula f = fEq(tVar(x), tVar(y));
  CHECK(print(substitute(f, x, tZero())) == "(eq 0 x1)");
  // capture avoidance: substitute y into ∀y(x=y) forces a rename; the fresh
  // binder is the smallest index unused in the substituted body
  Formula g = fForall(y, fEq(tVar(x), tVar(y)));
  Formula s = substitute(g, x, tVar(y));
  CHECK(print(s) == "(forall x0 (eq x1 x0))");
  // identity substitution is the identity
  CHECK(formulaEq(substitute(g, x, tVar(x)), g));
}

TEST_CASE("substitution composition law") {
  Gen g(99);
  Var x = nv(0), y = nv(7);  // y never generated, so fresh
  for (int i = 0; i < 200; ++i) {
    Formula f = g.formula(3, false);
    Term t = g.term(2);
    Formula lhs = substitute(substitute(f, x, tVar(y)), y, t);
    Formula rhs = substitute(f, x, t);
    CHECK(formulaEq(lhs, rhs));
  }
}

TEST_CASE("classification of the spec shapes") {
  // bounded pattern
  Formula d = parseFormula("(forallle x1 x0 (leq (times x1 x1) (times x0 x0)))");
  CHECK(classify(d).tag == FormulaClass::Tag::Delta0);
  // one unbounded existential
  Formula s1 = parseFormula("(exists x2 (eq x2 x0))");
  CHECK(classify(s1) == FormulaClass{FormulaClass::Tag::SigmaN, 1});
  // ∀X∀x over a Π03 body
  Formula pi3 = parseFormula(
      "(forall X0 (forall x0 (forall x1 (exists x2 (forall x3 (imp (in x3 X0) (leq x1 x2)))))))");
  CHECK(classify(pi3).tag == FormulaClass::Tag::AllPi03);
  CHECK(isAllPi03Sentence(pi3));
  // Σ03 body fails the gate
  Formula s3 = parseFormula(
      "(forall X0 (exists x1 (forall x2 (exists x3 (in x3 X0)))))");
  CHECK(classify(s3).tag == FormulaClass::Tag::Other);
}

TEST_CASE("classify agrees with the brute-force prefix scanner") {
  Gen g(2024);
  int checked = 0;
  for (int i = 0; i < 3000; ++i) {
    Formula f = g.formula(4, false);
    if (size(f) > 40) continue;
    ++checked;
    FormulaClass c = classify(f);
    // cross-check: c is the least class containing f per the oracle
    for (int n = 0; n <= 5; ++n) {
      for (bool sigma : {false, true}) {
        bool inCls = oracleInClass(f, sigma, n);
        bool claimed;
        switch (c.tag) {
          case FormulaClass::Tag::Delta0: claimed = true; break;
          case FormulaClass::Tag::SigmaN: claimed = sigma ? c.n <= n : c.n < n || (c.n <= n && false); break;
          case FormulaClass::Tag::PiN: claimed = sigma ? c.n < n : c.n <= n; break;
          default: claimed = false; break;
        }
        if (c.tag == FormulaClass::Tag::SigmaN && !sigma) claimed = c.n < n;
        if (c.tag == FormulaClass::Tag::Other) {
          CHECK_FALSE(inCls);
          continue;
        }
        CHECK(inCls == claimed);
      }
    }
  }
  CHECK(checked > 500);
}

TEST_CASE("ackermann translation") {
  Formula f = parseFormula("(in x0 X0)");
  AckResult r = ackermannTranslate(f);
  CHECK(print(r.formula) == "(inAck x0 x1)");
  CHECK(r.setVarMap.at(sv(0)) == nv(1));

  Formula g = parseFormula("(eq x0 x1)");
  CHECK(formulaEq(ackermannTranslate(g).formula, g));

  Formula h = parseFormula("(forallle x1 x0 (imp (leq x1 x0) (in x1 X0)))");
  AckResult rh = ackermannTranslate(h);
  CHECK(!hasSetVariable(rh.formula));
  CHECK(isDelta0(rh.formula));

  CHECK_THROWS(ackermannTranslate(parseFormula("(forall X0 (in x0 X0))")));
}

TEST_CASE("ackermann translation commutes with the connectives") {
  Gen g(5);
  for (int i = 0; i < 200; ++i) {
    Formula a = g.formula(2, true), b = g.formula(2, true);
    if (!isDelta00(a) || !isDelta00(b)) continue;
    Formula both = fImp(a, b);
    if (!isDelta00(both)) continue;
    AckResult r = ackermannTranslate(both);
    // structure preserved
    CHECK(r.formula->kind == FormulaNode::Kind::Imp);
    // size grows by at most a constant factor (offsetting the extra code arg)
    CHECK(size(r.formula) <= 2 * size(both));
  }
}

TEST_CASE("star form") {
  // already bounded: ∀y∃z(z=z)
  Formula phi = parseFormula("(forall x0 (exists x1 (eq x1 x1)))");
  StarFormResult r = starForm(phi);
  CHECK(isDelta0VarBounded(r.matrix));
  CHECK(isSentence(r.equivalence));

  // inner bound gets capped by w
  Formula phi2 = parseFormula("(forall x0 (exists x1 (existsle x2 x1 (leq x2 x0))))");
  StarFormResult r2 = starForm(phi2);
  CHECK(isDelta0VarBounded(r2.matrix));

  CHECK_THROWS(starForm(parseFormula("(exists x0 (forall x1 (eq x0 x1)))")));
}
