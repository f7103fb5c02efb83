#pragma once

// Script: a derivation builder on top of the Hilbert kernel. Assumptions are
// ordinary lines; impIntro compiles the deduction theorem and forallIntro the
// generalization transformation, both non-destructively over the dependency
// DAG. A script extracts to a plain Proof; any open assumption reachable from
// the extracted conclusion is an error.

#include <cassert>
#include <functional>
#include <map>
#include <set>
#include <unordered_map>
#include <vector>

#include "ff/kernel.hpp"
#include "ff/proof.hpp"
#include "ff/surface.hpp"

namespace ff {

struct Ln {
  uint32_t v = UINT32_MAX;
  bool valid() const { return v != UINT32_MAX; }
  bool operator==(const Ln& o) const { return v == o.v; }
  bool operator<(const Ln& o) const { return v < o.v; }
};

class Script {
 public:
  Script(const Theory* theory, const ObligationLedger* ledger)
      : theory_(theory), ledger_(ledger) {}

  const Formula& at(Ln l) const { return lines_[l.v].formula; }

  // --- primitive lines ---

  Ln assume(Formula f) {
    Line ln;
    ln.formula = std::move(f);
    ln.kind = Kind::Assumption;
    lines_.push_back(std::move(ln));
    Ln h{uint32_t(lines_.size() - 1)};
    lines_.back().assumptions = {h.v};
    assumptionLines_.push_back(h.v);
    return h;
  }

  // Fresh variables for elimination witnesses and builder scopes; the index
  // range is never bound inside any statement, so instantiating lemmas at
  // these variables can never capture.
  Var freshWitness(Sort srt) { return Var{srt, 60000 + witnessCounter_++}; }

  Ln sch(const std::string& id, SchemeArgs args, std::vector<Var> prefix = {}) {
    Formula inst = instantiateScheme(id, args);
    for (auto it = prefix.rbegin(); it != prefix.rend(); ++it) inst = fForall(*it, inst);
    return addKernel(std::move(inst), Justification::scheme(id, std::move(args), std::move(prefix)));
  }

  Ln eqax(const std::string& name) {
    if (!theory_) throw err("eqax without theory context");
    auto f = equalityAxiom(theory_->language, name);
    if (!f) throw err("unknown equality axiom " + name);
    return addKernel(*f, Justification::eqAxiom(name));
  }

  Ln thax(const std::string& name) {
    if (!theory_) throw err("thax without theory context");
    auto f = theory_->axiom(name);
    if (!f) throw err("unknown theory axiom " + name + " in " + theory_->name);
    return addKernel(*f, Justification::theoryAxiom(name));
  }

  Ln ledg(const std::string& id, MetaBindings b = {}) {
    if (!ledger_) throw err("ledger citation without ledger context");
    Formula f = ledger_->instantiate(id, b);
    return addKernel(std::move(f), Justification::ledger(id, std::move(b)));
  }

  Ln mp(Ln minor, Ln major) {
    const Formula& maj = at(major);
    if (maj->kind != FormulaNode::Kind::Imp)
      throw err("mp: major premise is not an implication: " + print(maj));
    if (!formulaEq(maj->a, at(minor)))
      throw err("mp: minor premise mismatch:\n  have " + print(at(minor)) + "\n  need " + print(maj->a));
    Line ln;
    ln.formula = maj->b;
    ln.kind = Kind::MP;
    ln.a = minor.v;
    ln.b = major.v;
    ln.assumptions = unionOf(lines_[minor.v].assumptions, lines_[major.v].assumptions);
    if (ln.assumptions.empty()) {
      auto it = pure_.find(key(ln.formula));
      if (it != pure_.end() && formulaEq(at(it->second), ln.formula)) return it->second;
    }
    lines_.push_back(std::move(ln));
    Ln h{uint32_t(lines_.size() - 1)};
    if (lines_.back().assumptions.empty()) pure_.emplace(key(at(h)), h);
    return h;
  }

  // Inline an already-built proof; returns its conclusion line. The proof
  // must stand on its own (no assumptions by construction).
  Ln include(const Proof& p) {
    auto memoIt = included_.find(&p);
    if (memoIt != included_.end()) return memoIt->second;
    std::vector<Ln> map(p.lines.size());
    for (size_t i = 0; i < p.lines.size(); ++i) {
      const ProofLine& pl = p.lines[i];
      if (pl.just.kind == Justification::Kind::MP) {
        map[i] = mp(map[pl.just.minor], map[pl.just.major]);
      } else {
        map[i] = addKernel(pl.formula, pl.just);
      }
    }
    included_.emplace(&p, map.back());
    return map.back();
  }

  // --- scheme shorthands ---

  Ln p1(Formula A, Formula B) { return sch("p1", fargs({{"A", A}, {"B", B}})); }
  Ln p2(Formula A, Formula B, Formula C) { return sch("p2", fargs({{"A", A}, {"B", B}, {"C", C}})); }

  // A ⇒ A
  Ln idLemma(Formula A) {
    Formula aa = fImp(A, A);
    auto it = pure_.find(key(aa));
    if (it != pure_.end() && formulaEq(at(it->second), aa)) return it->second;
    Ln s1 = p1(A, fImp(A, A));                 // A⇒((A⇒A)⇒A)
    Ln s2 = p2(A, fImp(A, A), A);              // (A⇒((A⇒A)⇒A))⇒((A⇒(A⇒A))⇒(A⇒A))
    Ln s3 = mp(s1, s2);                        // (A⇒(A⇒A))⇒(A⇒A)
    Ln s4 = p1(A, A);                          // A⇒(A⇒A)
    return mp(s4, s3);                         // A⇒A
  }

  // --- the deduction theorem ---

  // Produces a line proving  formula(hyp) ⇒ formula(concl)  that no longer
  // depends on hyp. Other open assumptions pass through.
  Ln impIntro(Ln hyp, Ln concl) {
    if (lines_[hyp.v].kind != Kind::Assumption) throw err("impIntro: hyp is not an assumption");
    return dischargeRec(hyp, concl);
  }

  // --- generalization (axiom closure under ∀) ---

  Ln forallIntro(Ln concl, Var x) {
    return generalizeRec(concl, x);
  }

  // ∀x φ at term t (or set variable for the second sort).
  Ln forallElim(Ln fa, const Term& t) {
    const Formula& f = at(fa);
    if (f->kind != FormulaNode::Kind::Forall || f->qvar.sort != Sort::Number)
      throw err("forallElim: not a number-sort universal: " + print(f));
    SchemeArgs a;
    a.formulas["A"] = f->a;
    a.vars["x"] = f->qvar;
    a.terms["t"] = t;
    Ln inst = sch("q-inst", std::move(a));
    return mp(fa, inst);
  }
  Ln forallElim(Ln fa, Var y) {
    const Formula& f = at(fa);
    if (f->kind != FormulaNode::Kind::Forall) throw err("forallElim: not a universal");
    if (f->qvar.sort == Sort::Number) return forallElim(fa, tVar(y));
    SchemeArgs a;
    a.formulas["A"] = f->a;
    a.vars["x"] = f->qvar;
    a.vars["Y"] = y;
    Ln inst = sch("q-inst", std::move(a));
    return mp(fa, inst);
  }

  // --- classical tactics ---

  // From B and ¬B conclude an arbitrary C (via A⇒(¬A⇒C)).
  Ln exFalso(Ln b, Ln nb, Formula C) {
    if (!formulaEq(at(nb), fNot(at(b)))) throw err("exFalso: second line is not the negation of the first");
    Ln s = sch("or-intro1", fargs({{"A", at(b)}, {"B", C}}));  // B⇒(¬B⇒C)
    return mp(nb, mp(b, s));
  }

  // Assume ¬G, produce a contradicting pair, conclude G.
  Ln byContradiction(Formula G, const std::function<std::pair<Ln, Ln>(Ln)>& body) {
    Ln h = assume(fNot(G));
    auto [b, nb] = body(h);
    if (!formulaEq(at(nb), fNot(at(b)))) throw err("byContradiction: body did not return a contradicting pair");
    Ln i1 = impIntro(h, b);    // ¬G⇒B
    Ln i2 = impIntro(h, nb);   // ¬G⇒¬B
    Ln r = sch("reductio", fargs({{"A", fNot(G)}, {"B", at(b)}}));
    Ln nn = mp(i2, mp(i1, r));  // ¬¬G
    Ln dn = sch("dneg-elim", fargs({{"A", G}}));
    return mp(nn, dn);
  }

  // Assume A, produce a contradicting pair, conclude ¬A.
  Ln notIntro(Formula A, const std::function<std::pair<Ln, Ln>(Ln)>& body) {
    Ln h = assume(A);
    auto [b, nb] = body(h);
    if (!formulaEq(at(nb), fNot(at(b)))) throw err("notIntro: body did not return a contradicting pair");
    Ln i1 = impIntro(h, b);
    Ln i2 = impIntro(h, nb);
    Ln r = sch("reductio", fargs({{"A", A}, {"B", at(b)}}));
    return mp(i2, mp(i1, r));
  }

  Ln andIntro(Ln a, Ln b) {
    Ln s = sch("and-intro", fargs({{"A", at(a)}, {"B", at(b)}}));
    return mp(b, mp(a, s));
  }
  Ln andElimL(Ln ab) {
    auto [A, B] = splitAnd(at(ab));
    return mp(ab, sch("and-elim1", fargs({{"A", A}, {"B", B}})));
  }
  Ln andElimR(Ln ab) {
    auto [A, B] = splitAnd(at(ab));
    return mp(ab, sch("and-elim2", fargs({{"A", A}, {"B", B}})));
  }
  Ln orIntroL(Ln a, Formula B) { return mp(a, sch("or-intro1", fargs({{"A", at(a)}, {"B", B}}))); }
  Ln orIntroR(Formula A, Ln b) { return mp(b, sch("or-intro2", fargs({{"A", A}, {"B", at(b)}}))); }

  // From A∨B and the two case bodies (each given its hypothesis) conclude C.
  Ln orElim(Ln ab, Formula C, const std::function<Ln(Ln)>& caseA,
            const std::function<Ln(Ln)>& caseB) {
    auto [A, B] = splitOr(at(ab));
    Ln ha = assume(A);
    Ln ca = caseA(ha);
    if (!formulaEq(at(ca), C)) throw err("orElim: case A concluded " + print(at(ca)) + ", wanted " + print(C));
    Ln ia = impIntro(ha, ca);
    Ln hb = assume(B);
    Ln cb = caseB(hb);
    if (!formulaEq(at(cb), C)) throw err("orElim: case B concluded " + print(at(cb)) + ", wanted " + print(C));
    Ln ib = impIntro(hb, cb);
    Ln s = sch("or-elim", fargs({{"A", A}, {"B", B}, {"C", C}}));
    return mp(ab, mp(ib, mp(ia, s)));
  }

  // Classical case split on A: or(A,¬A) is ¬A⇒¬A, i.e. an identity instance.
  Ln caseSplit(Formula A, Formula C, const std::function<Ln(Ln)>& ifA,
               const std::function<Ln(Ln)>& ifNotA) {
    Ln lem = idLemma(fNot(A));  // or(A, ¬A)
    return orElim(lem, C, ifA, ifNotA);
  }

  // φ[t/x] ⇒ ∃x φ, applied to a proved instance.
  Ln existsIntro(Ln inst, Var x, Formula body, Term t) {
    Formula expect = substitute(body, x, t);
    if (!formulaEq(at(inst), expect))
      throw err("existsIntro: instance mismatch:\n  have " + print(at(inst)) + "\n  need " + print(expect));
    Formula an = fForall(x, fNot(body));  // ∀x¬φ
    return notIntro(an, [&](Ln h) {
      Ln ninst = forallElim(h, t);  // ¬φ[t/x]
      return std::pair<Ln, Ln>{inst, ninst};
    });
  }
  Ln existsIntro(Ln inst, Var x, Formula body, Var witness) {
    if (x.sort == Sort::Number) return existsIntro(inst, x, body, tVar(witness));
    Formula expect = substituteSet(body, x, witness);
    if (!formulaEq(at(inst), expect)) throw err("existsIntro(set): instance mismatch");
    Formula an = fForall(x, fNot(body));
    return notIntro(an, [&](Ln h) {
      Ln ninst = forallElim(h, witness);
      return std::pair<Ln, Ln>{inst, ninst};
    });
  }

  // From ∃xφ (officially ¬∀x¬φ), bind the witness to the bound variable x
  // itself (which must be fresh for the conclusion and for every other open
  // assumption the body uses) and run the body to a conclusion ψ with x ∉
  // FV(ψ).
  Ln existsElim(Ln ex, const std::function<Ln(Ln)>& body) {
    Var x;
    Formula phi0;
    if (!matchExistsPat(at(ex), x, phi0)) throw err("existsElim: not an existential: " + print(at(ex)));
    Var w = freshWitness(x.sort);
    Formula phi = substituteVar(phi0, x, w);
    Ln h = assume(phi);
    Ln concl = body(h);
    Formula psi = at(concl);
    if (isFreeIn(w, psi)) throw err("existsElim: witness " + w.name() + " free in conclusion " + print(psi));
    Ln step = impIntro(h, concl);            // φ(w) ⇒ ψ
    return byContradiction(psi, [&](Ln hnp) {
      Ln nphi = notIntro(phi, [&](Ln hphi) {
        Ln p = mp(hphi, step);
        return std::pair<Ln, Ln>{p, hnp};
      });
      Ln allW = forallIntro(nphi, w);        // ∀w¬φ(w)
      Ln back = forallElim(allW, x);
      Ln alln = forallIntro(back, x);        // ∀x¬φ(x)
      return std::pair<Ln, Ln>{alln, ex};
    });
  }

  // Right-nested conjunction chain intro/elim.
  Ln andChain(const std::vector<Ln>& parts) {
    if (parts.empty()) throw err("andChain of nothing");
    Ln acc = parts.back();
    for (size_t i = parts.size() - 1; i-- > 0;) acc = andIntro(parts[i], acc);
    return acc;
  }
  std::vector<Ln> splitChain(Ln chain, size_t n) {
    std::vector<Ln> out;
    Ln cur = chain;
    for (size_t i = 0; i + 1 < n; ++i) {
      out.push_back(andElimL(cur));
      cur = andElimR(cur);
    }
    out.push_back(cur);
    return out;
  }

  // Guarded existential ¬∀x(g ⇒ ¬b), introduced from instances at a witness.
  Ln guardedExistsIntro(Var x, Formula guard, Formula body, const Term& witness, Ln hg, Ln hb) {
    if (!formulaEq(at(hg), substitute(guard, x, witness)))
      throw err("guardedExistsIntro: guard mismatch:\n  have " + print(at(hg)) + "\n  need " +
                print(substitute(guard, x, witness)));
    if (!formulaEq(at(hb), substitute(body, x, witness)))
      throw err("guardedExistsIntro: body mismatch:\n  have " + print(at(hb)) + "\n  need " +
                print(substitute(body, x, witness)));
    Formula an = fForall(x, fImp(guard, fNot(body)));
    return notIntro(an, [&](Ln h) {
      Ln inst = forallElim(h, witness);  // g[t] ⇒ ¬b[t]
      Ln nb = mp(hg, inst);
      return std::pair<Ln, Ln>{hb, nb};
    });
  }
  Ln guardedExistsIntro(Var x, Formula guard, Formula body, Var witness, Ln hg, Ln hb) {
    if (x.sort == Sort::Number) return guardedExistsIntro(x, guard, body, tVar(witness), hg, hb);
    Formula gw = substituteSet(guard, x, witness), bw = substituteSet(body, x, witness);
    if (!formulaEq(at(hg), gw)) throw err("guardedExistsIntro(set): guard mismatch");
    if (!formulaEq(at(hb), bw)) throw err("guardedExistsIntro(set): body mismatch");
    Formula an = fForall(x, fImp(guard, fNot(body)));
    return notIntro(an, [&](Ln h) {
      Ln inst = forallElim(h, witness);
      Ln nb = mp(hg, inst);
      return std::pair<Ln, Ln>{hb, nb};
    });
  }

  // From ¬∀x(g ⇒ ¬b), bind a fresh witness variable and run the body to a
  // conclusion not mentioning it. The body receives g[w] and b[w].
  Ln guardedExistsElim(Ln ex, const std::function<Ln(Ln, Ln)>& body) {
    const Formula& f = at(ex);
    using K = FormulaNode::Kind;
    if (f->kind != K::Not || f->a->kind != K::Forall || f->a->a->kind != K::Imp ||
        f->a->a->b->kind != K::Not)
      throw err("guardedExistsElim: not a guarded existential: " + print(f));
    Var x = f->a->qvar;
    Formula guard0 = f->a->a->a, b0 = f->a->a->b->a;
    Var w = freshWitness(x.sort);
    Formula guard = substituteVar(guard0, x, w), b = substituteVar(b0, x, w);
    Ln hgb = assume(fAnd(guard, b));
    Ln concl = body(andElimL(hgb), andElimR(hgb));
    Formula psi = at(concl);
    if (isFreeIn(w, psi))
      throw err("guardedExistsElim: witness " + w.name() + " free in conclusion " + print(psi));
    Ln K1 = impIntro(hgb, concl);  // (g∧b)[w] ⇒ ψ
    return byContradiction(psi, [&](Ln hnp) {
      Ln hg2 = assume(guard);
      Ln nb = notIntro(b, [&](Ln hb2) {
        Ln c2 = mp(andIntro(hg2, hb2), K1);
        return std::pair<Ln, Ln>{c2, hnp};
      });
      Ln step = impIntro(hg2, nb);           // g[w] ⇒ ¬b[w]
      Ln all = forallIntro(step, w);         // ∀w(g[w]⇒¬b[w])
      if (w != x) all = forallIntro(forallElim(all, x), x);
      return std::pair<Ln, Ln>{all, ex};
    });
  }

  // From ¬∀x(g ⇒ B): provides g[w] and ¬B[w] for a fresh witness w.
  Ln notForallGuardedElim(Ln nall, const std::function<Ln(Ln, Ln)>& body) {
    const Formula& f = at(nall);
    using K = FormulaNode::Kind;
    if (f->kind != K::Not || f->a->kind != K::Forall || f->a->a->kind != K::Imp)
      throw err("notForallGuardedElim: not a negated guarded universal: " + print(f));
    Var x = f->a->qvar;
    Formula guard0 = f->a->a->a, b0 = f->a->a->b;
    Var w = freshWitness(x.sort);
    Formula guard = substituteVar(guard0, x, w), b = substituteVar(b0, x, w);
    Ln hgb = assume(fAnd(guard, fNot(b)));
    Ln concl = body(andElimL(hgb), andElimR(hgb));
    Formula psi = at(concl);
    if (isFreeIn(w, psi))
      throw err("notForallGuardedElim: witness " + w.name() + " free in conclusion " + print(psi));
    Ln K1 = impIntro(hgb, concl);
    return byContradiction(psi, [&](Ln hnp) {
      Ln hg2 = assume(guard);
      Ln bLine = byContradiction(b, [&](Ln hnb2) {
        Ln c2 = mp(andIntro(hg2, hnb2), K1);
        return std::pair<Ln, Ln>{c2, hnp};
      });
      Ln step = impIntro(hg2, bLine);
      Ln all = forallIntro(step, w);
      if (w != x) all = forallIntro(forallElim(all, x), x);
      return std::pair<Ln, Ln>{all, nall};
    });
  }

  // From ¬∀x B: provides ¬B[w] for a fresh witness w.
  Ln notForallPlainElim(Ln nall, const std::function<Ln(Ln)>& body) {
    const Formula& f = at(nall);
    using K = FormulaNode::Kind;
    if (f->kind != K::Not || f->a->kind != K::Forall)
      throw err("notForallPlainElim: not a negated universal: " + print(f));
    Var x = f->a->qvar;
    Formula b0 = f->a->a;
    Var w = freshWitness(x.sort);
    Formula b = substituteVar(b0, x, w);
    Ln hnb = assume(fNot(b));
    Ln concl = body(hnb);
    Formula psi = at(concl);
    if (isFreeIn(w, psi))
      throw err("notForallPlainElim: witness " + w.name() + " free in conclusion " + print(psi));
    Ln K1 = impIntro(hnb, concl);
    return byContradiction(psi, [&](Ln hnp) {
      Ln bLine = byContradiction(b, [&](Ln hnb2) {
        Ln c2 = mp(hnb2, K1);
        return std::pair<Ln, Ln>{c2, hnp};
      });
      Ln all = forallIntro(bLine, w);
      if (w != x) all = forallIntro(forallElim(all, x), x);
      return std::pair<Ln, Ln>{all, nall};
    });
  }

  // From ¬(A⇒B): A holds.
  Ln notImpL(Ln nimp) {
    const Formula& f = at(nimp);
    if (f->kind != FormulaNode::Kind::Not || f->a->kind != FormulaNode::Kind::Imp)
      throw err("notImpL: not a negated implication");
    Formula A = f->a->a, B = f->a->b;
    return byContradiction(A, [&](Ln hna) {
      Ln ha = assume(A);
      Ln bb = exFalso(ha, hna, B);
      Ln iab = impIntro(ha, bb);
      return std::pair<Ln, Ln>{iab, nimp};
    });
  }
  // From ¬(A⇒B): ¬B holds.
  Ln notImpR(Ln nimp) {
    const Formula& f = at(nimp);
    if (f->kind != FormulaNode::Kind::Not || f->a->kind != FormulaNode::Kind::Imp)
      throw err("notImpR: not a negated implication");
    Formula A = f->a->a, B = f->a->b;
    return notIntro(B, [&](Ln hb) {
      Ln iab = mp(hb, p1(B, A));
      return std::pair<Ln, Ln>{iab, nimp};
    });
  }

  // From A⇒B derive ¬B⇒¬A (as a line transformer: give it proved A⇒B and ¬B).
  Ln modusTollens(Ln ab, Ln nb) {
    const Formula& f = at(ab);
    if (f->kind != FormulaNode::Kind::Imp) throw err("modusTollens: not an implication");
    if (!formulaEq(at(nb), fNot(f->b))) throw err("modusTollens: negation mismatch");
    return notIntro(f->a, [&](Ln ha) {
      Ln b = mp(ha, ab);
      return std::pair<Ln, Ln>{b, nb};
    });
  }

  Ln dnegIntro(Ln a) {  // A ⊢ ¬¬A
    return notIntro(fNot(at(a)), [&](Ln h) { return std::pair<Ln, Ln>{a, h}; });
  }
  Ln dnegElim(Ln nna) {
    const Formula& f = at(nna);
    if (f->kind != FormulaNode::Kind::Not || f->a->kind != FormulaNode::Kind::Not)
      throw err("dnegElim: not a double negation");
    return mp(nna, sch("dneg-elim", fargs({{"A", f->a->a}})));
  }

  // --- extraction ---

  Proof extract(Ln concl, const std::string& theoryName) const {
    if (!lines_[concl.v].assumptions.empty()) {
      std::string open;
      for (auto a : lines_[concl.v].assumptions) open += "\n  " + print(lines_[a].formula);
      throw err("extract: conclusion still depends on open assumptions:" + open);
    }
    // Collect the dependency DAG in topological (index) order.
    std::vector<bool> need(lines_.size(), false);
    std::vector<uint32_t> stack = {concl.v};
    while (!stack.empty()) {
      uint32_t i = stack.back();
      stack.pop_back();
      if (need[i]) continue;
      need[i] = true;
      if (lines_[i].kind == Kind::MP) {
        stack.push_back(lines_[i].a);
        stack.push_back(lines_[i].b);
      }
    }
    Proof p;
    p.theoryName = theoryName;
    std::vector<size_t> remap(lines_.size(), SIZE_MAX);
    for (uint32_t i = 0; i < lines_.size(); ++i) {
      if (!need[i]) continue;
      const Line& ln = lines_[i];
      ProofLine out;
      out.formula = ln.formula;
      switch (ln.kind) {
        case Kind::Assumption: throw err("extract: assumption reachable from conclusion");
        case Kind::Kernel: out.just = ln.just; break;
        case Kind::MP: out.just = Justification::mp(remap[ln.a], remap[ln.b]); break;
      }
      remap[i] = p.lines.size();
      p.lines.push_back(std::move(out));
    }
    return p;
  }

  size_t lineCount() const { return lines_.size(); }

  static SchemeArgs fargs(std::initializer_list<std::pair<std::string, Formula>> fs) {
    SchemeArgs a;
    for (auto& [k, v] : fs) a.formulas.emplace(k, v);
    return a;
  }

 private:
  enum class Kind { Assumption, Kernel, MP };
  struct Line {
    Formula formula;
    Kind kind = Kind::Kernel;
    Justification just;          // Kernel
    uint32_t a = 0, b = 0;       // MP operands (minor, major)
    std::set<uint32_t> assumptions;
  };

  static std::runtime_error err(const std::string& m) { return std::runtime_error("script: " + m); }

  static std::pair<uint64_t, uint64_t> key(const Formula& f) { return {f->hash_, f->size_}; }

  static std::set<uint32_t> unionOf(const std::set<uint32_t>& a, const std::set<uint32_t>& b) {
    std::set<uint32_t> r = a;
    r.insert(b.begin(), b.end());
    return r;
  }

  static std::pair<Formula, Formula> splitAnd(const Formula& f) {
    Formula a, b;
    if (!matchAnd(f, a, b)) throw err("not a conjunction: " + print(f));
    return {a, b};
  }
  static std::pair<Formula, Formula> splitOr(const Formula& f) {
    // or(A,B) := ¬A⇒B
    if (f->kind != FormulaNode::Kind::Imp || f->a->kind != FormulaNode::Kind::Not)
      throw err("not a disjunction: " + print(f));
    return {f->a->a, f->b};
  }
  static bool matchExistsPat(const Formula& f, Var& x, Formula& body) {
    using K = FormulaNode::Kind;
    if (f->kind != K::Not || f->a->kind != K::Forall || f->a->a->kind != K::Not) return false;
    x = f->a->qvar;
    body = f->a->a->a;
    return true;
  }

  Ln addKernel(Formula f, Justification j) {
    auto it = pure_.find(key(f));
    if (it != pure_.end() && formulaEq(at(it->second), f)) return it->second;
    Line ln;
    ln.formula = std::move(f);
    ln.kind = Kind::Kernel;
    ln.just = std::move(j);
    lines_.push_back(std::move(ln));
    Ln h{uint32_t(lines_.size() - 1)};
    pure_.emplace(key(at(h)), h);
    return h;
  }

  Ln dischargeRec(Ln hyp, Ln cur) {
    if (cur == hyp) return idLemma(at(hyp));
    // copy what we need: lines_ may reallocate below
    Kind kind = lines_[cur.v].kind;
    Formula cf = lines_[cur.v].formula;
    uint32_t la = lines_[cur.v].a, lb = lines_[cur.v].b;
    bool dep = lines_[cur.v].assumptions.count(hyp.v) > 0;
    if (!dep) {
      Ln w = p1(cf, at(hyp));  // ψ⇒(A⇒ψ)
      return mp(cur, w);
    }
    auto k = std::make_pair(hyp.v, cur.v);
    auto it = dischargeMemo_.find(k);
    if (it != dischargeMemo_.end()) return it->second;
    if (kind != Kind::MP) throw err("impIntro: dependent non-MP line that is not the hypothesis");
    Ln ra = dischargeRec(hyp, Ln{la});
    Ln rb = dischargeRec(hyp, Ln{lb});
    // ra: A⇒ψa ; rb: A⇒(ψa⇒ψ) ; p2 gives (A⇒(ψa⇒ψ))⇒((A⇒ψa)⇒(A⇒ψ))
    Ln s = p2(at(hyp), lines_[la].formula, cf);
    Ln out = mp(ra, mp(rb, s));
    dischargeMemo_.emplace(k, out);
    return out;
  }

  Ln generalizeRec(Ln cur, Var x) {
    auto k = std::make_pair(cur.v, x);
    auto it = genMemo_.find(k);
    if (it != genMemo_.end()) return it->second;
    // copy what we need: lines_ may reallocate below
    Kind kind = lines_[cur.v].kind;
    Formula cf = lines_[cur.v].formula;
    // fast path: x not free anywhere in this line's formula
    if (kind != Kind::Assumption && !isFreeIn(x, cf)) {
      SchemeArgs a;
      a.formulas["A"] = cf;
      a.vars["x"] = x;
      Ln out0 = mp(cur, sch("q-vac", std::move(a)));
      genMemo_.emplace(k, out0);
      return out0;
    }
    uint32_t la = lines_[cur.v].a, lb = lines_[cur.v].b;
    Justification just = lines_[cur.v].just;
    Ln out;
    switch (kind) {
      case Kind::Assumption: {
        if (isFreeIn(x, cf))
          throw err("forallIntro: " + x.name() + " free in open assumption " + print(cf));
        SchemeArgs a;
        a.formulas["A"] = cf;
        a.vars["x"] = x;
        Ln vac = sch("q-vac", std::move(a));
        out = mp(cur, vac);
        break;
      }
      case Kind::Kernel: {
        if (just.kind == Justification::Kind::Scheme) {
          std::vector<Var> prefix = {x};
          for (auto& v : just.genPrefix) prefix.push_back(v);
          out = sch(just.schemeId, just.schemeArgs, std::move(prefix));
        } else {
          // Sentences: θ ⇒ ∀xθ.
          if (isFreeIn(x, cf)) throw err("forallIntro: non-scheme kernel line with free " + x.name());
          SchemeArgs a;
          a.formulas["A"] = cf;
          a.vars["x"] = x;
          out = mp(cur, sch("q-vac", std::move(a)));
        }
        break;
      }
      case Kind::MP: {
        Ln ra = generalizeRec(Ln{la}, x);
        Ln rb = generalizeRec(Ln{lb}, x);
        SchemeArgs a;
        a.formulas["A"] = lines_[la].formula;
        a.formulas["B"] = cf;
        a.vars["x"] = x;
        Ln dist = sch("q-dist", std::move(a));  // ∀x(ψa⇒ψ)⇒(∀xψa⇒∀xψ)
        out = mp(ra, mp(rb, dist));
        break;
      }
    }
    genMemo_.emplace(k, out);
    return out;
  }

  const Theory* theory_;
  const ObligationLedger* ledger_;
  uint32_t witnessCounter_ = 0;
  std::vector<uint32_t> assumptionLines_;
  std::vector<Line> lines_;
  std::map<std::pair<uint64_t, uint64_t>, Ln> pure_;
  std::map<std::pair<uint32_t, uint32_t>, Ln> dischargeMemo_;
  std::map<std::pair<uint32_t, Var>, Ln> genMemo_;
  std::map<const Proof*, Ln> included_;
};

}  // namespace ff
