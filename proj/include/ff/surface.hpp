#pragma once

// Surface syntax for formulas and terms: an S-expression grammar.
//
//   terms:     0 | 1 | x<k> | (plus t t) | (times t t) | (num k) | (pair t t) | (mt NAME)
//   atoms:     (eq t t) | (leq t t) | (in t X<k>) | (inI t) | (inAck t t)
//              | (pow2 t t) | (supexp t t t) | (card t t)
//   official:  (not f) | (imp f f) | (forall v f)
//   sugar:     (and f f) | (or f f) | (iff f f) | (exists v f) | (lt t t)
//              | (forallle v t f) | (existsle v t f) | (mf NAME)
//
// Printing always emits the official form; parse(print(f)) == f.

#include <cstdlib>
#include <optional>
#include <string>

#include "ff/sexpr.hpp"
#include "ff/syntax.hpp"

namespace ff {

struct SurfaceError : std::runtime_error {
  explicit SurfaceError(const std::string& m) : std::runtime_error(m) {}
};

inline std::optional<Var> parseVarToken(const std::string& s) {
  if (s.size() < 2) return std::nullopt;
  char c = s[0];
  if (c != 'x' && c != 'X') return std::nullopt;
  for (size_t i = 1; i < s.size(); ++i)
    if (!isdigit((unsigned char)s[i])) return std::nullopt;
  // reject leading zeros like x01 so printing stays canonical
  if (s.size() > 2 && s[1] == '0') return std::nullopt;
  uint32_t idx = (uint32_t)std::strtoul(s.c_str() + 1, nullptr, 10);
  return Var{c == 'x' ? Sort::Number : Sort::SetSort, idx};
}

inline Term termFromSexpr(const Sexpr& e) {
  if (e.isAtom()) {
    if (e.atom == "0") return tZero();
    if (e.atom == "1") return tOne();
    auto v = parseVarToken(e.atom);
    if (v) {
      if (v->sort != Sort::Number) throw SurfaceError("set variable in term position: " + e.atom);
      return tVar(*v);
    }
    throw SurfaceError("unknown term token: " + e.atom);
  }
  if (!e.isList() || e.items.empty() || !e.items[0].isAtom())
    throw SurfaceError("bad term: " + toString(e));
  const std::string& h = e.items[0].atom;
  auto need = [&](size_t n) {
    if (e.items.size() != n + 1) throw SurfaceError("arity error in (" + h + " ...): expected " + std::to_string(n) + " arguments");
  };
  if (h == "plus") { need(2); return tAdd(termFromSexpr(e.items[1]), termFromSexpr(e.items[2])); }
  if (h == "times") { need(2); return tMul(termFromSexpr(e.items[1]), termFromSexpr(e.items[2])); }
  if (h == "pair") { need(2); return tPair(termFromSexpr(e.items[1]), termFromSexpr(e.items[2])); }
  if (h == "num") {
    need(1);
    if (!e.items[1].isAtom()) throw SurfaceError("(num k) needs a literal");
    return tNum(std::strtoull(e.items[1].atom.c_str(), nullptr, 10));
  }
  if (h == "mt") { need(1); return tMeta(e.items[1].atom); }
  throw SurfaceError("unknown term head: " + h);
}

inline Formula formulaFromSexpr(const Sexpr& e) {
  if (e.isAtom()) throw SurfaceError("bare token in formula position: " + e.atom);
  if (!e.isList() || e.items.empty() || !e.items[0].isAtom())
    throw SurfaceError("bad formula: " + toString(e));
  const std::string& h = e.items[0].atom;
  auto need = [&](size_t n) {
    if (e.items.size() != n + 1) throw SurfaceError("arity error in (" + h + " ...): expected " + std::to_string(n) + " arguments");
  };
  auto varAt = [&](size_t i) {
    if (!e.items[i].isAtom()) throw SurfaceError("expected a variable in (" + h + " ...)");
    auto v = parseVarToken(e.items[i].atom);
    if (!v) throw SurfaceError("expected a variable, got " + e.items[i].atom);
    return *v;
  };
  if (h == "eq") { need(2); return fEq(termFromSexpr(e.items[1]), termFromSexpr(e.items[2])); }
  if (h == "leq") { need(2); return fLeq(termFromSexpr(e.items[1]), termFromSexpr(e.items[2])); }
  if (h == "lt") { need(2); return fLt(termFromSexpr(e.items[1]), termFromSexpr(e.items[2])); }
  if (h == "in") {
    need(2);
    Var X = varAt(2);
    if (X.sort != Sort::SetSort) throw SurfaceError("(in t X) needs a set variable, got " + X.name());
    return fIn(termFromSexpr(e.items[1]), X);
  }
  if (h == "inI") { need(1); return fCut(termFromSexpr(e.items[1])); }
  if (h == "inAck") { need(2); return fAck(termFromSexpr(e.items[1]), termFromSexpr(e.items[2])); }
  if (h == "pow2") { need(2); return fPow2(termFromSexpr(e.items[1]), termFromSexpr(e.items[2])); }
  if (h == "supexp") { need(3); return fSupExp(termFromSexpr(e.items[1]), termFromSexpr(e.items[2]), termFromSexpr(e.items[3])); }
  if (h == "card") { need(2); return fCard(termFromSexpr(e.items[1]), termFromSexpr(e.items[2])); }
  if (h == "not") { need(1); return fNot(formulaFromSexpr(e.items[1])); }
  if (h == "imp") { need(2); return fImp(formulaFromSexpr(e.items[1]), formulaFromSexpr(e.items[2])); }
  if (h == "forall") { need(2); return fForall(varAt(1), formulaFromSexpr(e.items[2])); }
  if (h == "and") { need(2); return fAnd(formulaFromSexpr(e.items[1]), formulaFromSexpr(e.items[2])); }
  if (h == "or") { need(2); return fOr(formulaFromSexpr(e.items[1]), formulaFromSexpr(e.items[2])); }
  if (h == "iff") { need(2); return fIff(formulaFromSexpr(e.items[1]), formulaFromSexpr(e.items[2])); }
  if (h == "exists") { need(2); return fExists(varAt(1), formulaFromSexpr(e.items[2])); }
  if (h == "forallle") { need(3); return fForallLeq(varAt(1), termFromSexpr(e.items[2]), formulaFromSexpr(e.items[3])); }
  if (h == "existsle") { need(3); return fExistsLeq(varAt(1), termFromSexpr(e.items[2]), formulaFromSexpr(e.items[3])); }
  if (h == "mf") { need(1); return fMeta(e.items[1].atom); }
  throw SurfaceError("unknown formula head: " + h);
}

inline Sexpr toSexpr(const Term& t) {
  switch (t->kind) {
    case TermNode::Kind::Zero: return Sexpr::sym("0");
    case TermNode::Kind::One: return Sexpr::sym("1");
    case TermNode::Kind::Variable: return Sexpr::sym(t->var.name());
    case TermNode::Kind::Add: return Sexpr::list({Sexpr::sym("plus"), toSexpr(t->a), toSexpr(t->b)});
    case TermNode::Kind::Mul: return Sexpr::list({Sexpr::sym("times"), toSexpr(t->a), toSexpr(t->b)});
    case TermNode::Kind::MetaTerm: return Sexpr::list({Sexpr::sym("mt"), Sexpr::sym(t->meta)});
  }
  return Sexpr::sym("?");
}

inline Sexpr toSexpr(const Formula& f) {
  switch (f->kind) {
    case FormulaNode::Kind::Atom: {
      std::vector<Sexpr> xs;
      switch (f->rel) {
        case Rel::Eq: xs.push_back(Sexpr::sym("eq")); break;
        case Rel::Leq: xs.push_back(Sexpr::sym("leq")); break;
        case Rel::SetMem: xs.push_back(Sexpr::sym("in")); break;
        case Rel::CutMem: xs.push_back(Sexpr::sym("inI")); break;
        case Rel::AckMem: xs.push_back(Sexpr::sym("inAck")); break;
        case Rel::Pow2: xs.push_back(Sexpr::sym("pow2")); break;
        case Rel::SupExp: xs.push_back(Sexpr::sym("supexp")); break;
        case Rel::Card: xs.push_back(Sexpr::sym("card")); break;
      }
      for (auto& t : f->args) xs.push_back(toSexpr(t));
      if (f->rel == Rel::SetMem) xs.push_back(Sexpr::sym(f->setArg.name()));
      return Sexpr::list(std::move(xs));
    }
    case FormulaNode::Kind::Not: return Sexpr::list({Sexpr::sym("not"), toSexpr(f->a)});
    case FormulaNode::Kind::Imp: return Sexpr::list({Sexpr::sym("imp"), toSexpr(f->a), toSexpr(f->b)});
    case FormulaNode::Kind::Forall:
      return Sexpr::list({Sexpr::sym("forall"), Sexpr::sym(f->qvar.name()), toSexpr(f->a)});
    case FormulaNode::Kind::MetaFormula:
      return Sexpr::list({Sexpr::sym("mf"), Sexpr::sym(f->meta)});
  }
  return Sexpr::sym("?");
}

inline std::string print(const Formula& f) { return toString(toSexpr(f)); }
inline std::string print(const Term& t) { return toString(toSexpr(t)); }

inline Formula parseFormula(const std::string& text) {
  SexprReader r(text);
  Sexpr e = r.read();
  return formulaFromSexpr(e);
}
inline Term parseTerm(const std::string& text) {
  SexprReader r(text);
  Sexpr e = r.read();
  return termFromSexpr(e);
}

// parse() with a language check, as the CLI entry point uses it.
inline Formula parseFormula(const std::string& text, Language lang) {
  Formula f = parseFormula(text);
  if (!inLanguage(f, lang))
    throw SurfaceError("formula not in language " + languageName(lang) + ": " + print(f));
  return f;
}

// Best-effort resugaring for diagnostics: recognizes the canonical patterns
// produced by the sugar constructors. desugar(resugar(f)) == f by
// construction since we only rewrite exact patterns.
inline Sexpr resugar(const Formula& f);

inline bool matchAnd(const Formula& f, Formula& a, Formula& b) {
  using K = FormulaNode::Kind;
  if (f->kind != K::Not || f->a->kind != K::Imp || f->a->b->kind != K::Not) return false;
  a = f->a->a;
  b = f->a->b->a;
  return true;
}

inline bool matchExists(const Formula& f, Var& v, Formula& body) {
  using K = FormulaNode::Kind;
  if (f->kind != K::Not || f->a->kind != K::Forall || f->a->a->kind != K::Not) return false;
  v = f->a->qvar;
  body = f->a->a->a;
  return true;
}

inline Sexpr resugar(const Formula& f) {
  Formula a, b;
  Var v;
  if (matchAnd(f, a, b)) return Sexpr::list({Sexpr::sym("and"), resugar(a), resugar(b)});
  if (matchExists(f, v, b)) return Sexpr::list({Sexpr::sym("exists"), Sexpr::sym(v.name()), resugar(b)});
  switch (f->kind) {
    case FormulaNode::Kind::Not: return Sexpr::list({Sexpr::sym("not"), resugar(f->a)});
    case FormulaNode::Kind::Imp: return Sexpr::list({Sexpr::sym("imp"), resugar(f->a), resugar(f->b)});
    case FormulaNode::Kind::Forall:
      return Sexpr::list({Sexpr::sym("forall"), Sexpr::sym(f->qvar.name()), resugar(f->a)});
    default: return toSexpr(f);
  }
}

}  // namespace ff
