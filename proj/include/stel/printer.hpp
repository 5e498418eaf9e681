#pragma once

#include <string>
#include <variant>

#include "stel/syntax.hpp"

namespace stel {

/// Canonical concrete syntax, re-parseable by parse_ontology. One axiom per
/// line, single spaces, rationals always in "p/q" form.
inline std::string print_concept(const Concept& c) {
  switch (c.kind()) {
    case Concept::Kind::Top: return "top";
    case Concept::Kind::Atom: return c.name();
    case Concept::Kind::NegAtom: return "!" + c.name();
    case Concept::Kind::And:
      return "(" + print_concept(c.lhs()) + " & " + print_concept(c.rhs()) + ")";
    case Concept::Kind::Exists:
      return "(ex " + c.role() + " . " + print_concept(c.inner()) + ")";
  }
  return {};
}

inline std::string print_axiom(const Axiom& ax) {
  if (const auto* g = std::get_if<Gci>(&ax)) {
    return "gci " + print_concept(g->lhs) + " <= " + print_concept(g->rhs);
  }
  const auto& c = std::get<Conditional>(ax);
  return "cond " + print_concept(c.subject) + " | " + print_concept(c.given) +
         " in [" + c.lo.str() + ", " + c.hi.str() + "]";
}

inline std::string print_ontology(const Ontology& o) {
  std::string out;
  for (const auto& ax : o.axioms()) {
    out += print_axiom(ax);
    out += '\n';
  }
  return out;
}

}  // namespace stel
