#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "stel/syntax.hpp"

namespace stel {

/// Records what each generated fresh name abbreviates. Interpreting every
/// generated name as its mapped concept extends any model of the input to a
/// model of the normalized output.
struct NameMap {
  std::map<std::string, Concept> definitions;
};

/// The four normal-form GCI shapes over literals L in {A, !A, top}:
///   (i) L <= L'   (ii) L1 & L2 <= L3   (iii) L <= (ex r . L')   (iv) (ex r . L') <= L
enum class NormalShape { LitLit, AndLit, LitExists, ExistsLit };

inline std::optional<NormalShape> normal_shape(const Gci& g) {
  const Concept& l = g.lhs;
  const Concept& r = g.rhs;
  if (l.is_literal() && r.is_literal()) return NormalShape::LitLit;
  if (l.kind() == Concept::Kind::And && l.lhs().is_literal() && l.rhs().is_literal() &&
      r.is_literal()) {
    return NormalShape::AndLit;
  }
  if (l.is_literal() && r.kind() == Concept::Kind::Exists && r.inner().is_literal()) {
    return NormalShape::LitExists;
  }
  if (l.kind() == Concept::Kind::Exists && l.inner().is_literal() && r.is_literal()) {
    return NormalShape::ExistsLit;
  }
  return std::nullopt;
}

/// True iff every axiom is a GCI in one of the four normal-form shapes.
/// SEL input is rejected; conditionals are never normalized.
inline bool is_normal_form(const Ontology& o) {
  if (o.fragment() == Fragment::SEL) {
    throw std::invalid_argument("normal form is defined for EL/ELneg ontologies only");
  }
  for (const auto& ax : o.axioms()) {
    if (!normal_shape(std::get<Gci>(ax))) return false;
  }
  return true;
}

struct NormalizeResult {
  Ontology ontology;
  NameMap names;
};

namespace detail {

struct GciHash {
  std::size_t operator()(const Gci& g) const {
    return g.lhs.hash() * 0x9e3779b97f4a7c15ull ^ g.rhs.hash();
  }
};

class Normalizer {
 public:
  explicit Normalizer(const Ontology& input) {
    // Fresh names continue past any X__k already present, so re-normalizing
    // previously normalized output cannot collide.
    for (const auto& name : signature_of(input).concepts) {
      if (name.size() > 3 && name.compare(0, 3, "X__") == 0) {
        const std::string tail = name.substr(3);
        if (!tail.empty() && tail.find_first_not_of("0123456789") == std::string::npos) {
          try {
            counter_ = std::max(counter_, std::stoul(tail));
          } catch (const std::out_of_range&) {
            throw std::invalid_argument("generated-name counter overflow in input");
          }
        }
      }
    }
    for (const auto& ax : input.axioms()) process(std::get<Gci>(ax));
    if (out_.empty()) out_.push_back(Gci{Concept::top(), Concept::top()});
  }

  NormalizeResult take() && {
    std::vector<Axiom> axioms;
    axioms.reserve(out_.size());
    for (auto& g : out_) axioms.emplace_back(std::move(g));
    return NormalizeResult{Ontology(std::move(axioms)), std::move(names_)};
  }

 private:
  /// One fresh name per distinct abbreviated concept; repeated subterms
  /// share their name and defining axioms.
  Concept fresh(const Concept& abbreviated) {
    auto it = cache_.find(abbreviated);
    if (it != cache_.end()) return it->second;
    const std::string name = "X__" + std::to_string(++counter_);
    names_.definitions.emplace(name, abbreviated);
    return cache_.emplace(abbreviated, Concept::atom(name)).first->second;
  }

  void process(const Gci& g) {
    // Each distinct axiom is processed once; deduplicates the output and
    // keeps shared fresh names from re-deriving their definitions.
    if (!seen_.insert(g).second) return;
    // Normal shapes pass through unchanged; only complex tautologies C <= top
    // are dropped.
    if (normal_shape(g)) {
      out_.push_back(g);
      return;
    }
    if (g.rhs.kind() == Concept::Kind::Top) return;

    const Concept& l = g.lhs;
    const Concept& r = g.rhs;
    // NF1: a complex conjunct on the left is renamed.
    if (l.kind() == Concept::Kind::And && !l.lhs().is_literal()) {
      const Concept x = fresh(l.lhs());
      process(Gci{l.lhs(), x});
      process(Gci{Concept::conj(x, l.rhs()), r});
      return;
    }
    if (l.kind() == Concept::Kind::And && !l.rhs().is_literal()) {
      const Concept x = fresh(l.rhs());
      process(Gci{l.rhs(), x});
      process(Gci{Concept::conj(l.lhs(), x), r});
      return;
    }
    // NF2: complex filler of an existential on the left.
    if (l.kind() == Concept::Kind::Exists && !l.inner().is_literal()) {
      const Concept x = fresh(l.inner());
      process(Gci{l.inner(), x});
      process(Gci{Concept::exists(l.role(), x), r});
      return;
    }
    // NF3: complex filler of an existential on the right.
    if (l.is_literal() && r.kind() == Concept::Kind::Exists && !r.inner().is_literal()) {
      const Concept x = fresh(r.inner());
      process(Gci{l, Concept::exists(r.role(), x)});
      process(Gci{x, r.inner()});
      return;
    }
    // NF4: conjunction on the right splits.
    if (l.is_literal() && r.kind() == Concept::Kind::And) {
      process(Gci{l, r.lhs()});
      process(Gci{l, r.rhs()});
      return;
    }
    // NF5: both sides complex.
    const Concept x = fresh(l);
    process(Gci{l, x});
    process(Gci{x, r});
  }

  std::vector<Gci> out_;
  NameMap names_;
  std::unordered_map<Concept, Concept, ConceptHash> cache_;
  std::unordered_set<Gci, GciHash> seen_;
  unsigned long counter_ = 0;
};

}  // namespace detail

/// Rewrites an EL/ELneg ontology into an equi-consistent normal-form ontology
/// (fresh names X__1, X__2, ... in first-rewrite order, duplicates removed).
/// The output is a conservative extension of the input: restricting any of
/// its models to the input signature yields a model of the input.
inline NormalizeResult normalize(const Ontology& o) {
  if (o.fragment() == Fragment::SEL) {
    throw std::invalid_argument("normalize expects an EL/ELneg ontology");
  }
  return detail::Normalizer(o).take();
}

}  // namespace stel
