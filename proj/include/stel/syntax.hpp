#pragma once

#include <algorithm>
#include <cctype>
#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "stel/rational.hpp"

namespace stel {

/// Language fragments, ordered by inclusion from EL.
enum class Fragment { EL, ELneg, SEL };

inline const char* fragment_name(Fragment f) {
  switch (f) {
    case Fragment::EL: return "el";
    case Fragment::ELneg: return "elneg";
    default: return "sel";
  }
}

/// Identifier rule for concept and role names: letters, digits, underscore,
/// first character a letter.
inline bool is_valid_name(std::string_view s) {
  if (s.empty() || !std::isalpha(static_cast<unsigned char>(s.front()))) return false;
  for (char c : s) {
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
  }
  return true;
}

/// Names containing "__" are reserved for machine-generated symbols
/// (normalization fresh names, reduction decorations) and rejected in user
/// input.
inline bool is_reserved_name(std::string_view s) {
  return s.find("__") != std::string_view::npos;
}

/// Immutable concept tree: top, (possibly negated) concept name, binary
/// conjunction, existential restriction. Copies share structure.
class Concept {
 public:
  enum class Kind { Top, Atom, NegAtom, And, Exists };

  static Concept top() {
    static const Concept t{std::make_shared<const Node>(Node{Kind::Top, {}, nullptr, nullptr})};
    return t;
  }

  static Concept atom(std::string name) {
    check_name(name);
    return Concept{std::make_shared<const Node>(Node{Kind::Atom, std::move(name), nullptr, nullptr})};
  }

  static Concept neg_atom(std::string name) {
    check_name(name);
    return Concept{std::make_shared<const Node>(Node{Kind::NegAtom, std::move(name), nullptr, nullptr})};
  }

  static Concept conj(Concept lhs, Concept rhs) {
    return Concept{std::make_shared<const Node>(
        Node{Kind::And, {}, std::move(lhs.node_), std::move(rhs.node_)})};
  }

  static Concept exists(std::string role, Concept inner) {
    check_name(role);
    return Concept{std::make_shared<const Node>(
        Node{Kind::Exists, std::move(role), std::move(inner.node_), nullptr})};
  }

  Kind kind() const { return node_->kind; }

  /// Concept name of an Atom/NegAtom, or role name of an Exists.
  const std::string& name() const { return node_->label; }
  const std::string& role() const { return node_->label; }

  Concept lhs() const { return Concept{node_->a}; }    // And
  Concept rhs() const { return Concept{node_->b}; }    // And
  Concept inner() const { return Concept{node_->a}; }  // Exists

  bool is_literal() const {
    return kind() == Kind::Top || kind() == Kind::Atom || kind() == Kind::NegAtom;
  }

  bool negation_free() const {
    switch (kind()) {
      case Kind::NegAtom: return false;
      case Kind::And: return lhs().negation_free() && rhs().negation_free();
      case Kind::Exists: return inner().negation_free();
      default: return true;
    }
  }

  bool role_free() const {
    switch (kind()) {
      case Kind::Exists: return false;
      case Kind::And: return lhs().role_free() && rhs().role_free();
      default: return true;
    }
  }

  /// Contribution to ontology size: one per occurrence of top, concept name,
  /// role name and connective (negation counts as a connective).
  std::size_t size() const {
    switch (kind()) {
      case Kind::Top:
      case Kind::Atom: return 1;
      case Kind::NegAtom: return 2;
      case Kind::And: return lhs().size() + rhs().size() + 1;
      case Kind::Exists: return inner().size() + 2;
    }
    return 0;
  }

  std::size_t depth() const {
    switch (kind()) {
      case Kind::And: return 1 + std::max(lhs().depth(), rhs().depth());
      case Kind::Exists: return 1 + inner().depth();
      default: return 0;
    }
  }

  friend bool operator==(const Concept& a, const Concept& b) { return compare(a, b) == 0; }

  /// Total structural order; used for deterministic canonical orderings.
  static int compare(const Concept& a, const Concept& b) {
    if (a.node_ == b.node_) return 0;
    if (a.kind() != b.kind()) return a.kind() < b.kind() ? -1 : 1;
    switch (a.kind()) {
      case Kind::Top: return 0;
      case Kind::Atom:
      case Kind::NegAtom: return a.name().compare(b.name());
      case Kind::And: {
        int c = compare(a.lhs(), b.lhs());
        return c != 0 ? c : compare(a.rhs(), b.rhs());
      }
      case Kind::Exists: {
        int c = a.role().compare(b.role());
        return c != 0 ? c : compare(a.inner(), b.inner());
      }
    }
    return 0;
  }

  std::size_t hash() const {
    std::size_t h = static_cast<std::size_t>(kind()) * 0x9e3779b97f4a7c15ull;
    switch (kind()) {
      case Kind::Atom:
      case Kind::NegAtom:
        h ^= std::hash<std::string>{}(name()) + 0x9e3779b9 + (h << 6) + (h >> 2);
        break;
      case Kind::And:
        h ^= lhs().hash() + 0x9e3779b9 + (h << 6) + (h >> 2);
        h ^= rhs().hash() + 0x9e3779b9 + (h << 6) + (h >> 2);
        break;
      case Kind::Exists:
        h ^= std::hash<std::string>{}(role()) + 0x9e3779b9 + (h << 6) + (h >> 2);
        h ^= inner().hash() + 0x9e3779b9 + (h << 6) + (h >> 2);
        break;
      default: break;
    }
    return h;
  }

 private:
  struct Node {
    Kind kind;
    std::string label;               // Atom/NegAtom: concept name; Exists: role name
    std::shared_ptr<const Node> a;   // And lhs / Exists inner
    std::shared_ptr<const Node> b;   // And rhs
  };

  explicit Concept(std::shared_ptr<const Node> n) : node_(std::move(n)) {}

  static void check_name(const std::string& s) {
    if (!is_valid_name(s)) throw std::invalid_argument("malformed identifier: '" + s + "'");
  }

  std::shared_ptr<const Node> node_;
};

struct ConceptHash {
  std::size_t operator()(const Concept& c) const { return c.hash(); }
};

/// General concept inclusion lhs <= rhs.
struct Gci {
  Concept lhs;
  Concept rhs;

  friend bool operator==(const Gci& a, const Gci& b) {
    return a.lhs == b.lhs && a.rhs == b.rhs;
  }
};

/// Probabilistic conditional (subject | given)[lo, hi].
struct Conditional {
  Concept subject;
  Concept given;
  Rational lo;
  Rational hi;

  friend bool operator==(const Conditional& a, const Conditional& b) {
    return a.subject == b.subject && a.given == b.given && a.lo == b.lo && a.hi == b.hi;
  }
};

using Axiom = std::variant<Gci, Conditional>;

inline bool concept_has_negation(const Concept& c) { return !c.negation_free(); }

inline std::size_t size_of(const Axiom& ax) {
  if (const auto* g = std::get_if<Gci>(&ax)) return g->lhs.size() + g->rhs.size();
  const auto& c = std::get<Conditional>(ax);
  return c.subject.size() + c.given.size() +
         bit_length(static_cast<std::uint64_t>(c.lo.num())) +
         bit_length(static_cast<std::uint64_t>(c.lo.den())) +
         bit_length(static_cast<std::uint64_t>(c.hi.num())) +
         bit_length(static_cast<std::uint64_t>(c.hi.den()));
}

struct Signature {
  std::set<std::string> concepts;
  std::set<std::string> roles;
};

inline void collect_signature(const Concept& c, Signature& sig) {
  switch (c.kind()) {
    case Concept::Kind::Atom:
    case Concept::Kind::NegAtom:
      sig.concepts.insert(c.name());
      break;
    case Concept::Kind::And:
      collect_signature(c.lhs(), sig);
      collect_signature(c.rhs(), sig);
      break;
    case Concept::Kind::Exists:
      sig.roles.insert(c.role());
      collect_signature(c.inner(), sig);
      break;
    default: break;
  }
}

/// Finite nonempty axiom list tagged with the least fragment admitting every
/// axiom. Mixing atomic negation with probabilistic conditionals is rejected;
/// conditionals must carry negation-free concepts and bounds 0 <= lo <= hi <= 1;
/// concept and role namespaces must not overlap.
class Ontology {
 public:
  explicit Ontology(std::vector<Axiom> axioms) : axioms_(std::move(axioms)) {
    if (axioms_.empty()) throw std::invalid_argument("ontology must contain at least one axiom");
    bool has_neg = false;
    bool has_cond = false;
    for (const auto& ax : axioms_) {
      if (const auto* g = std::get_if<Gci>(&ax)) {
        has_neg = has_neg || concept_has_negation(g->lhs) || concept_has_negation(g->rhs);
      } else {
        const auto& c = std::get<Conditional>(ax);
        if (concept_has_negation(c.subject) || concept_has_negation(c.given)) {
          throw std::invalid_argument("conditional concepts must be negation-free");
        }
        if (c.lo > c.hi) throw std::invalid_argument("conditional bounds: lo > hi");
        if (c.hi > kOne) throw std::invalid_argument("conditional bounds out of [0,1]");
        has_cond = true;
      }
    }
    if (has_neg && has_cond) {
      throw std::invalid_argument("ontology mixes atomic negation with conditionals");
    }
    fragment_ = has_cond ? Fragment::SEL : has_neg ? Fragment::ELneg : Fragment::EL;
    check_namespaces();
  }

  const std::vector<Axiom>& axioms() const { return axioms_; }
  Fragment fragment() const { return fragment_; }

  friend bool operator==(const Ontology& a, const Ontology& b) {
    return a.axioms_ == b.axioms_;
  }

 private:
  void check_namespaces() const {
    Signature sig;
    for (const auto& ax : axioms_) {
      if (const auto* g = std::get_if<Gci>(&ax)) {
        collect_signature(g->lhs, sig);
        collect_signature(g->rhs, sig);
      } else {
        const auto& c = std::get<Conditional>(ax);
        collect_signature(c.subject, sig);
        collect_signature(c.given, sig);
      }
    }
    for (const auto& role : sig.roles) {
      if (sig.concepts.count(role)) {
        throw std::invalid_argument("name '" + role + "' used as both concept and role");
      }
    }
  }

  std::vector<Axiom> axioms_;
  Fragment fragment_;
};

/// All concept and role names occurring in the ontology (negated occurrences
/// count).
inline Signature signature_of(const Ontology& o) {
  Signature sig;
  for (const auto& ax : o.axioms()) {
    if (const auto* g = std::get_if<Gci>(&ax)) {
      collect_signature(g->lhs, sig);
      collect_signature(g->rhs, sig);
    } else {
      const auto& c = std::get<Conditional>(ax);
      collect_signature(c.subject, sig);
      collect_signature(c.given, sig);
    }
  }
  return sig;
}

/// Total number of top/name/connective occurrences; conditional bounds add
/// the binary lengths of their numerators and denominators.
inline std::size_t size_of(const Ontology& o) {
  std::size_t total = 0;
  for (const auto& ax : o.axioms()) total += size_of(ax);
  return total;
}

/// The GCI C <= D expressed as the equivalent conditional (D|C)[1,1].
/// Requires both sides negation-free.
inline Conditional gci_as_conditional(const Gci& g) {
  if (concept_has_negation(g.lhs) || concept_has_negation(g.rhs)) {
    throw std::invalid_argument("gci_as_conditional requires negation-free concepts");
  }
  return Conditional{g.rhs, g.lhs, kOne, kOne};
}

}  // namespace stel
