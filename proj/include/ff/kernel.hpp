#pragma once

// The trusted proof checker. Everything a generator emits is re-checked here
// before being reported.

#include <set>
#include <string>

#include "ff/proof.hpp"

namespace ff {

struct TrustReport {
  std::set<std::string> trustedIds;
};

struct CheckResult {
  bool accepted = false;
  size_t failLine = 0;     // 0-based index of the first failing line
  std::string reason;      // machine-readable reason
  TrustReport trust;

  explicit operator bool() const { return accepted; }
};

inline CheckResult rejected(size_t line, std::string reason) {
  CheckResult r;
  r.accepted = false;
  r.failLine = line;
  r.reason = std::move(reason);
  return r;
}

inline CheckResult checkProof(const Theory& theory, const Proof& proof, const ObligationLedger& ledger) {
  CheckResult res;
  if (proof.theoryName != theory.name)
    return rejected(0, "proof declares theory " + proof.theoryName + ", checked against " + theory.name);
  if (proof.lines.empty()) return rejected(0, "empty proof");

  for (size_t i = 0; i < proof.lines.size(); ++i) {
    const ProofLine& line = proof.lines[i];
    if (!line.formula) return rejected(i, "missing formula");
    if (hasMetaSlots(line.formula)) return rejected(i, "open meta slot in proof line");
    if (!inLanguage(line.formula, theory.language))
      return rejected(i, "formula not in language " + languageName(theory.language));

    const Justification& j = line.just;
    switch (j.kind) {
      case Justification::Kind::Scheme: {
        Formula inst;
        try {
          inst = instantiateScheme(j.schemeId, j.schemeArgs);
        } catch (const std::exception& e) {
          return rejected(i, std::string("scheme instantiation failed: ") + e.what());
        }
        for (auto it = j.genPrefix.rbegin(); it != j.genPrefix.rend(); ++it) inst = fForall(*it, inst);
        if (!formulaEq(inst, line.formula))
          return rejected(i, "scheme instance mismatch for " + j.schemeId);
        break;
      }
      case Justification::Kind::EqAxiom: {
        auto ax = equalityAxiom(theory.language, j.name);
        if (!ax) return rejected(i, "unknown equality axiom " + j.name);
        if (!formulaEq(*ax, line.formula)) return rejected(i, "equality axiom mismatch for " + j.name);
        break;
      }
      case Justification::Kind::TheoryAxiom: {
        auto ax = theory.axiom(j.name);
        if (!ax) return rejected(i, "unknown theory axiom " + j.name);
        if (!formulaEq(*ax, line.formula)) return rejected(i, "theory axiom mismatch for " + j.name);
        break;
      }
      case Justification::Kind::Ledger: {
        if (!ledger.has(j.name)) return rejected(i, "unknown ledger id " + j.name);
        Formula inst;
        try {
          inst = ledger.instantiate(j.name, j.ledgerArgs);
        } catch (const std::exception& e) {
          return rejected(i, std::string("ledger instantiation failed: ") + e.what());
        }
        if (!formulaEq(inst, line.formula)) return rejected(i, "ledger statement mismatch for " + j.name);
        if (!isSentence(line.formula)) return rejected(i, "ledger citation must be a sentence: " + j.name);
        const LedgerEntry& e = ledger.get(j.name);
        if (e.status == LedgerStatus::Trusted) {
          res.trust.trustedIds.insert(j.name);
        } else {
          for (auto& id : e.trustedClosure) res.trust.trustedIds.insert(id);
        }
        break;
      }
      case Justification::Kind::MP: {
        if (j.minor >= i || j.major >= i) return rejected(i, "MP cites a later or current line");
        const Formula& maj = proof.lines[j.major].formula;
        if (maj->kind != FormulaNode::Kind::Imp)
          return rejected(i, "major premise not an implication");
        if (!formulaEq(maj->a, proof.lines[j.minor].formula))
          return rejected(i, "MP minor premise mismatch");
        if (!formulaEq(maj->b, line.formula)) return rejected(i, "MP conclusion mismatch");
        break;
      }
    }
  }
  res.accepted = true;
  return res;
}

}  // namespace ff
