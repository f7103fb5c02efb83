#pragma once

// Fixed renderings of the recurring formulas: unboundedness, the cut I01,
// name totality, partial orders and chains. Variable indices are chosen
// deterministically so that proofs are reproducible byte for byte.

#include "ff/syntax.hpp"

namespace ff::flib {

// x < y
inline Formula lt(const Term& a, const Term& b) { return fLt(a, b); }

// value lookup in a coded function graph: (x, y) ∈ v
inline Formula valueAt(Var v, const Term& x, const Term& y) { return fIn(tPair(x, y), v); }

// Z is unbounded: ∀u∃x(u<x ∧ x∈Z)
inline Formula unbounded(Var Z, Var u = nv(20), Var x = nv(21)) {
  return fForall(u, fExistsSuch(x, lt(tVar(u), tVar(x)), fIn(tVar(x), Z)));
}

// c ⊆_Ack Z: ∀u(u∈_Ack c ⇒ u∈Z)
inline Formula subsetAck(const Term& c, Var Z, Var u = nv(22)) {
  return fForall(u, fImp(fAck(tVar(u), c), fIn(tVar(u), Z)));
}

// i ∈ I01: every unbounded set has a finite (coded) subset of cardinality i.
inline Formula memberI01(const Term& i) {
  Var Z = sv(9), c = nv(23);
  return fForall(Z, fImp(unbounded(Z),
                         fExistsSuch(c, subsetAck(tVar(c), Z), fCard(tVar(c), i))));
}

// v codes a total function: ∀x∃y((x,y)∈v ∧ ∀z((x,z)∈v ⇒ z=y))
inline Formula totalFunction(Var v, Var x = nv(24), Var y = nv(25), Var z = nv(26)) {
  Formula uniq = fForall(z, fImp(valueAt(v, tVar(x), tVar(z)), fEq(tVar(z), tVar(y))));
  return fForall(x, fExistsSuch(y, valueAt(v, tVar(x), tVar(y)), uniq));
}

// (x, y) ∈ P viewed as x ⪯ y for a coded order P.
inline Formula rel(Var P, const Term& x, const Term& y) { return fIn(tPair(x, y), P); }

// P codes a partial order on N (reflexive, antisymmetric, transitive).
inline Formula partialOrder(Var P) {
  Var x = nv(20), y = nv(21), z = nv(22);
  Formula refl = fForall(x, rel(P, tVar(x), tVar(x)));
  Formula antisym = fForall(
      x, fForall(y, fImp(fAnd(rel(P, tVar(x), tVar(y)), rel(P, tVar(y), tVar(x))), fEq(tVar(x), tVar(y)))));
  Formula trans = fForall(
      x, fForall(y, fForall(z, fImp(fAnd(rel(P, tVar(x), tVar(y)), rel(P, tVar(y), tVar(z))),
                                    rel(P, tVar(x), tVar(z))))));
  return fAnd(refl, fAnd(antisym, trans));
}

// S is a chain in P.
inline Formula chainIn(Var S, Var P) {
  Var x = nv(20), y = nv(21);
  return fForall(x, fForall(y, fImp(fAnd(fIn(tVar(x), S), fIn(tVar(y), S)),
                                    fOr(rel(P, tVar(x), tVar(y)), rel(P, tVar(y), tVar(x))))));
}

// S is an antichain in P.
inline Formula antichainIn(Var S, Var P) {
  Var x = nv(20), y = nv(21);
  Formula distinct = fNot(fEq(tVar(x), tVar(y)));
  Formula incomp = fAnd(fNot(rel(P, tVar(x), tVar(y))), fNot(rel(P, tVar(y), tVar(x))));
  return fForall(x, fForall(y, fImp(fAnd(fAnd(fIn(tVar(x), S), fIn(tVar(y), S)), distinct), incomp)));
}

// "x is the i-th element of A" via a coded initial segment:
// ∃c(∀u(u∈_Ack c ⇔ (u∈A ∧ u≤x)) ∧ |c| = i+1)
inline Formula nthElement(Var A, const Term& x, const Term& i) {
  Var c = nv(27), u = nv(28);
  Formula ext = fForall(u, fIff(fAck(tVar(u), tVar(c)),
                                fAnd(fIn(tVar(u), A), fLeq(tVar(u), x))));
  return fExistsSuch(c, ext, fCard(tVar(c), tAdd(i, tOne())));
}

}  // namespace ff::flib
