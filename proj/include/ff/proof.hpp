#pragma once

// Proof objects, theories and the obligation ledger.

#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "ff/schemes.hpp"
#include "ff/syntax.hpp"

namespace ff {

// ---------------------------------------------------------------------------
// Justifications and proofs
// ---------------------------------------------------------------------------

struct Justification {
  enum class Kind { Scheme, EqAxiom, TheoryAxiom, Ledger, MP };
  Kind kind = Kind::MP;

  // Scheme
  std::string schemeId;
  SchemeArgs schemeArgs;
  std::vector<Var> genPrefix;  // universal-closure prefix (outermost first)

  // EqAxiom / TheoryAxiom / Ledger
  std::string name;
  MetaBindings ledgerArgs;

  // MP: from lines[minor] and lines[major] == (lines[minor] ⇒ current)
  size_t minor = 0, major = 0;

  static Justification scheme(std::string id, SchemeArgs a, std::vector<Var> prefix = {}) {
    Justification j;
    j.kind = Kind::Scheme;
    j.schemeId = std::move(id);
    j.schemeArgs = std::move(a);
    j.genPrefix = std::move(prefix);
    return j;
  }
  static Justification eqAxiom(std::string n) {
    Justification j;
    j.kind = Kind::EqAxiom;
    j.name = std::move(n);
    return j;
  }
  static Justification theoryAxiom(std::string n) {
    Justification j;
    j.kind = Kind::TheoryAxiom;
    j.name = std::move(n);
    return j;
  }
  static Justification ledger(std::string id, MetaBindings b = {}) {
    Justification j;
    j.kind = Kind::Ledger;
    j.name = std::move(id);
    j.ledgerArgs = std::move(b);
    return j;
  }
  static Justification mp(size_t minor, size_t major) {
    Justification j;
    j.kind = Kind::MP;
    j.minor = minor;
    j.major = major;
    return j;
  }
};

struct ProofLine {
  Formula formula;
  Justification just;
};

struct Proof {
  std::string theoryName;
  std::vector<ProofLine> lines;

  const Formula& conclusion() const {
    if (lines.empty()) throw std::runtime_error("empty proof");
    return lines.back().formula;
  }
};

inline uint64_t size(const Proof& p) {
  uint64_t s = 0;
  for (auto& l : p.lines) s += l.formula->size_;
  return s;
}

// ---------------------------------------------------------------------------
// Theories
// ---------------------------------------------------------------------------

struct Theory {
  std::string name;
  Language language = Language::LI;
  std::vector<std::pair<std::string, Formula>> axioms;

  std::optional<Formula> axiom(const std::string& n) const {
    for (auto& [an, f] : axioms)
      if (an == n) return f;
    return std::nullopt;
  }
  void addAxiom(std::string n, Formula f) {
    if (!isSentence(f)) throw std::runtime_error("theory axiom must be a sentence: " + n);
    if (!inLanguage(f, language)) throw std::runtime_error("axiom not in theory language: " + n);
    axioms.emplace_back(std::move(n), std::move(f));
  }
};

// ---------------------------------------------------------------------------
// Obligation ledger
// ---------------------------------------------------------------------------
// Each entry is either Trusted (an assumed statement, possibly a family with
// meta slots) or Proved (carries a checkable proof). Computed families derive
// their instance statement from another entry via a registered transformer;
// the interpretations module installs the resolver.

enum class LedgerStatus { Trusted, Proved };

struct LedgerEntry {
  std::string id;
  LedgerStatus status = LedgerStatus::Trusted;
  std::string provenance;
  Formula statement;  // may contain meta slots; null for computed entries
  // computed family: statement = transform(kind, base entry instance)
  std::string computedKind;  // empty when not computed
  std::string computedBase;
  std::shared_ptr<Proof> proof;               // Proved entries
  std::set<std::string> trustedClosure;       // transitive trust of the proof
};

class ObligationLedger {
 public:
  using ComputedResolver =
      std::function<Formula(const std::string& kind, const Formula& baseInstance)>;

  void add(LedgerEntry e) {
    if (entries_.count(e.id)) throw std::runtime_error("duplicate ledger id " + e.id);
    order_.push_back(e.id);
    entries_.emplace(e.id, std::move(e));
  }

  bool has(const std::string& id) const { return entries_.count(id) > 0; }

  const LedgerEntry& get(const std::string& id) const {
    auto it = entries_.find(id);
    if (it == entries_.end()) throw std::runtime_error("unknown ledger id " + id);
    return it->second;
  }

  const std::vector<std::string>& ids() const { return order_; }

  void setComputedResolver(ComputedResolver r) { resolver_ = std::move(r); }

  // Instantiates the entry's statement with the given bindings.
  Formula instantiate(const std::string& id, const MetaBindings& b) const {
    const LedgerEntry& e = get(id);
    Formula base;
    if (!e.computedKind.empty()) {
      Formula inner = ff::instantiate(get(e.computedBase).statement, b);
      if (!resolver_) throw std::runtime_error("no resolver installed for computed ledger entry " + id);
      base = resolver_(e.computedKind, inner);
    } else {
      base = ff::instantiate(e.statement, b);
    }
    if (hasMetaSlots(base)) throw std::runtime_error("ledger instance still has open slots: " + id);
    return base;
  }

  // Marks an entry as Proved, recording the proof's transitive trust.
  void prove(const std::string& id, Proof p, std::set<std::string> trusted) {
    auto it = entries_.find(id);
    if (it == entries_.end()) throw std::runtime_error("unknown ledger id " + id);
    it->second.status = LedgerStatus::Proved;
    it->second.proof = std::make_shared<Proof>(std::move(p));
    it->second.trustedClosure = std::move(trusted);
  }

 private:
  std::map<std::string, LedgerEntry> entries_;
  std::vector<std::string> order_;
  ComputedResolver resolver_;
};

inline LedgerEntry trustedEntry(std::string id, Formula stmt, std::string provenance) {
  LedgerEntry e;
  e.id = std::move(id);
  e.status = LedgerStatus::Trusted;
  e.statement = std::move(stmt);
  e.provenance = std::move(provenance);
  return e;
}

}  // namespace ff
