#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "stel/dense_set.hpp"
#include "stel/syntax.hpp"

namespace stel {

/// Finite interpretation: nonempty ordered domain plus extension maps.
/// Names absent from the maps denote the empty extension; empty extensions
/// are never stored. Role extensions are bit sets over ordered pairs,
/// bit i*n+j standing for the edge (element i, element j).
class Interpretation {
 public:
  explicit Interpretation(std::vector<std::string> domain) : domain_(std::move(domain)) {
    if (domain_.empty()) throw std::invalid_argument("interpretation domain must be nonempty");
    for (std::size_t i = 0; i < domain_.size(); ++i) {
      if (!index_.emplace(domain_[i], i).second) {
        throw std::invalid_argument("duplicate domain element '" + domain_[i] + "'");
      }
    }
  }

  std::size_t size() const { return domain_.size(); }
  const std::vector<std::string>& domain() const { return domain_; }

  std::optional<std::size_t> element_index(const std::string& id) const {
    auto it = index_.find(id);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  DenseSet concept_extension(const std::string& name) const {
    auto it = concepts_.find(name);
    return it == concepts_.end() ? DenseSet(size()) : it->second;
  }

  DenseSet role_extension(const std::string& name) const {
    auto it = roles_.find(name);
    return it == roles_.end() ? DenseSet(size() * size()) : it->second;
  }

  void assign_concept(const std::string& name, DenseSet ext) {
    if (ext.universe() != size()) throw std::invalid_argument("extension universe mismatch");
    if (ext.none()) {
      concepts_.erase(name);
    } else {
      concepts_.insert_or_assign(name, std::move(ext));
    }
  }

  void assign_role(const std::string& name, DenseSet ext) {
    if (ext.universe() != size() * size()) throw std::invalid_argument("extension universe mismatch");
    if (ext.none()) {
      roles_.erase(name);
    } else {
      roles_.insert_or_assign(name, std::move(ext));
    }
  }

  const std::map<std::string, DenseSet>& concepts() const { return concepts_; }
  const std::map<std::string, DenseSet>& roles() const { return roles_; }

  friend bool operator==(const Interpretation& a, const Interpretation& b) {
    return a.domain_ == b.domain_ && a.concepts_ == b.concepts_ && a.roles_ == b.roles_;
  }

 private:
  std::vector<std::string> domain_;
  std::map<std::string, DenseSet> concepts_;
  std::map<std::string, DenseSet> roles_;
  std::map<std::string, std::size_t> index_;
};

/// Convenience constructor for tests and tools: extensions given as element
/// index lists / index pair lists.
inline Interpretation make_interpretation(
    std::vector<std::string> domain,
    const std::map<std::string, std::vector<std::size_t>>& concepts = {},
    const std::map<std::string, std::vector<std::pair<std::size_t, std::size_t>>>& roles = {}) {
  Interpretation interp(std::move(domain));
  const std::size_t n = interp.size();
  for (const auto& [name, members] : concepts) {
    DenseSet ext(n);
    for (std::size_t i : members) {
      if (i >= n) throw std::invalid_argument("element index out of range");
      ext.set(i);
    }
    interp.assign_concept(name, std::move(ext));
  }
  for (const auto& [name, pairs] : roles) {
    DenseSet ext(n * n);
    for (auto [a, b] : pairs) {
      if (a >= n || b >= n) throw std::invalid_argument("element index out of range");
      ext.set(a * n + b);
    }
    interp.assign_role(name, std::move(ext));
  }
  return interp;
}

/// Structural concept evaluation: top -> domain, A -> A^I, !A -> complement,
/// conjunction -> intersection, (ex r . C) -> elements with an r-successor
/// in C^I.
inline DenseSet extension(const Interpretation& interp, const Concept& c) {
  const std::size_t n = interp.size();
  switch (c.kind()) {
    case Concept::Kind::Top: return DenseSet::full(n);
    case Concept::Kind::Atom: return interp.concept_extension(c.name());
    case Concept::Kind::NegAtom: return interp.concept_extension(c.name()).complement();
    case Concept::Kind::And: return extension(interp, c.lhs()) & extension(interp, c.rhs());
    case Concept::Kind::Exists: {
      const DenseSet inner = extension(interp, c.inner());
      const DenseSet edges = interp.role_extension(c.role());
      DenseSet out(n);
      for (std::size_t d = 0; d < n; ++d) {
        for (std::size_t e = 0; e < n; ++e) {
          if (edges.test(d * n + e) && inner.test(e)) {
            out.set(d);
            break;
          }
        }
      }
      return out;
    }
  }
  return DenseSet(n);
}

/// Memoizing evaluator for workloads that test many axioms against one
/// interpretation.
class Evaluator {
 public:
  explicit Evaluator(const Interpretation& interp) : interp_(&interp) {}

  const DenseSet& extension(const Concept& c) {
    auto it = memo_.find(c);
    if (it != memo_.end()) return it->second;
    return memo_.emplace(c, stel::extension(*interp_, c)).first->second;
  }

 private:
  const Interpretation* interp_;
  std::unordered_map<Concept, DenseSet, ConceptHash> memo_;
};

inline bool gci_holds(const DenseSet& lhs, const DenseSet& rhs) {
  return is_subset(lhs, rhs);
}

/// Satisfaction of (C|D)[lo,hi] given |(C & D)^I| and |D^I|: vacuously true
/// on empty D, otherwise lo <= numerator/denominator <= hi checked by exact
/// cross-multiplication.
inline bool conditional_holds(std::uint64_t numerator, std::uint64_t denominator,
                              const Rational& lo, const Rational& hi) {
  if (denominator == 0) return true;
  const auto num = static_cast<unsigned __int128>(numerator);
  const auto den = static_cast<unsigned __int128>(denominator);
  if (static_cast<unsigned __int128>(lo.num()) * den > static_cast<unsigned __int128>(lo.den()) * num)
    return false;
  if (static_cast<unsigned __int128>(hi.den()) * num > static_cast<unsigned __int128>(hi.num()) * den)
    return false;
  return true;
}

inline bool satisfies_axiom(const Interpretation& interp, const Axiom& ax) {
  if (const auto* g = std::get_if<Gci>(&ax)) {
    return gci_holds(extension(interp, g->lhs), extension(interp, g->rhs));
  }
  const auto& c = std::get<Conditional>(ax);
  const DenseSet given = extension(interp, c.given);
  const DenseSet subject = extension(interp, c.subject);
  return conditional_holds(intersection_count(subject, given), given.count(), c.lo, c.hi);
}

/// Diagnostic cardinalities for a failed axiom. For a GCI, count_a/count_b
/// are |lhs^I| and |rhs^I|; for a conditional they are |(subject & given)^I|
/// and |given^I|.
struct Violation {
  std::size_t axiom_index;
  std::uint64_t count_a;
  std::uint64_t count_b;

  friend bool operator==(const Violation&, const Violation&) = default;
};

struct Verdict {
  bool satisfied;
  std::vector<Violation> violations;
};

inline Verdict satisfies_ontology(const Interpretation& interp, const Ontology& o) {
  Verdict verdict{true, {}};
  Evaluator eval(interp);
  const auto& axioms = o.axioms();
  for (std::size_t i = 0; i < axioms.size(); ++i) {
    if (const auto* g = std::get_if<Gci>(&axioms[i])) {
      const DenseSet& lhs = eval.extension(g->lhs);
      const DenseSet& rhs = eval.extension(g->rhs);
      if (!gci_holds(lhs, rhs)) {
        verdict.satisfied = false;
        verdict.violations.push_back({i, lhs.count(), rhs.count()});
      }
    } else {
      const auto& c = std::get<Conditional>(axioms[i]);
      const DenseSet& given = eval.extension(c.given);
      const DenseSet& subject = eval.extension(c.subject);
      const std::uint64_t num = intersection_count(subject, given);
      const std::uint64_t den = given.count();
      if (!conditional_holds(num, den, c.lo, c.hi)) {
        verdict.satisfied = false;
        verdict.violations.push_back({i, num, den});
      }
    }
  }
  return verdict;
}

/// One-element model interpreting every signature name as full; witnesses
/// that plain EL ontologies are always consistent.
inline Interpretation trivial_el_model(const Ontology& o) {
  if (o.fragment() != Fragment::EL) {
    throw std::invalid_argument("trivial model exists only for the EL fragment");
  }
  Interpretation interp(std::vector<std::string>{"d0"});
  const Signature sig = signature_of(o);
  for (const auto& name : sig.concepts) interp.assign_concept(name, DenseSet::full(1));
  for (const auto& name : sig.roles) interp.assign_role(name, DenseSet::full(1));
  return interp;
}

/// Drops extensions of names outside sig; the domain is unchanged.
inline Interpretation restrict_to_signature(const Interpretation& interp, const Signature& sig) {
  Interpretation out(interp.domain());
  for (const auto& [name, ext] : interp.concepts()) {
    if (sig.concepts.count(name)) out.assign_concept(name, ext);
  }
  for (const auto& [name, ext] : interp.roles()) {
    if (sig.roles.count(name)) out.assign_role(name, ext);
  }
  return out;
}

inline constexpr std::uint64_t kDefaultEnumerationCeiling = std::uint64_t{1} << 34;

/// Exhaustive stream of all interpretations over a fixed domain {d1..dn}:
/// every assignment of concept extensions and role extensions, enumerated in
/// a deterministic order (the combined characteristic bit-vector counts up;
/// concept names in sorted order come first, then role names). Count is
/// 2^(n*|cs|) * 2^(n^2*|rs|); a budget guard rejects blowups past max_count.
class InterpretationEnumerator {
 public:
  InterpretationEnumerator(const std::set<std::string>& concepts,
                           const std::set<std::string>& roles, std::size_t n,
                           std::uint64_t max_count = kDefaultEnumerationCeiling)
      : concepts_(concepts.begin(), concepts.end()),
        roles_(roles.begin(), roles.end()),
        n_(n) {
    if (n == 0) throw std::invalid_argument("domain size must be positive");
    bits_ = n_ * concepts_.size() + n_ * n_ * roles_.size();
    if (bits_ >= 63 || (std::uint64_t{1} << bits_) > max_count) {
      throw std::invalid_argument("interpretation space exceeds enumeration budget");
    }
    total_ = std::uint64_t{1} << bits_;
    for (std::size_t i = 0; i < n_; ++i) domain_.push_back("d" + std::to_string(i + 1));
  }

  std::uint64_t total() const { return total_; }

  std::optional<Interpretation> next() {
    if (cursor_ >= total_) return std::nullopt;
    const std::uint64_t word = cursor_++;
    Interpretation interp(domain_);
    std::size_t bit = 0;
    for (const auto& name : concepts_) {
      DenseSet ext(n_);
      for (std::size_t i = 0; i < n_; ++i, ++bit) {
        if ((word >> bit) & 1u) ext.set(i);
      }
      interp.assign_concept(name, std::move(ext));
    }
    for (const auto& name : roles_) {
      DenseSet ext(n_ * n_);
      for (std::size_t i = 0; i < n_ * n_; ++i, ++bit) {
        if ((word >> bit) & 1u) ext.set(i);
      }
      interp.assign_role(name, std::move(ext));
    }
    return interp;
  }

 private:
  std::vector<std::string> concepts_;
  std::vector<std::string> roles_;
  std::size_t n_;
  std::size_t bits_;
  std::uint64_t total_;
  std::uint64_t cursor_ = 0;
  std::vector<std::string> domain_;
};

template <typename Fn>
void for_each_interpretation(const std::set<std::string>& concepts,
                             const std::set<std::string>& roles, std::size_t n, Fn fn,
                             std::uint64_t max_count = kDefaultEnumerationCeiling) {
  InterpretationEnumerator en(concepts, roles, n, max_count);
  while (auto interp = en.next()) fn(*interp);
}

}  // namespace stel
