#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "stel/normalform.hpp"
#include "stel/semantics.hpp"
#include "stel/syntax.hpp"

namespace stel {

/// A type decides every signature concept name positively or negatively
/// (top is implicitly a member). Bit i set means signature name i holds.
struct EType {
  std::uint64_t mask = 0;

  friend bool operator==(const EType&, const EType&) = default;
};

/// Greatest set of locally consistent types closed under existential
/// witnessing, over the signature of a normal-form ontology.
struct TypeElimination {
  std::vector<std::string> signature;  // sorted concept names
  std::vector<EType> survivors;        // ascending mask order

  std::vector<std::string> positive_names(EType t) const {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < signature.size(); ++i) {
      if ((t.mask >> i) & 1u) out.push_back(signature[i]);
    }
    return out;
  }
};

namespace detail {

// Literal against a type index space: top, or a (possibly negated) name.
struct IndexedLiteral {
  enum class Kind { Top, Pos, Neg } kind;
  std::size_t name = 0;

  bool holds_in(std::uint64_t mask) const {
    switch (kind) {
      case Kind::Top: return true;
      case Kind::Pos: return (mask >> name) & 1u;
      default: return !((mask >> name) & 1u);
    }
  }
};

struct IndexedAxioms {
  std::vector<std::string> concept_names;  // sorted
  std::vector<std::string> role_names;     // sorted
  // form (i) L <= L' and form (ii) L1 & L2 <= L3 (form (i) stored with L2 = top)
  struct Local {
    IndexedLiteral l1, l2, rhs;
  };
  std::vector<Local> local;
  // form (iii) L <= ex r . L'
  struct Needs {
    IndexedLiteral lhs;
    std::size_t role;
    IndexedLiteral filler;
  };
  std::vector<Needs> needs;
  // form (iv) ex r . L' <= L
  struct Guard {
    std::size_t role;
    IndexedLiteral filler;
    IndexedLiteral rhs;
  };
  std::vector<Guard> guards;

  bool locally_consistent(std::uint64_t mask) const {
    for (const auto& a : local) {
      if (a.l1.holds_in(mask) && a.l2.holds_in(mask) && !a.rhs.holds_in(mask)) return false;
    }
    return true;
  }

  /// Every axiom (ex r . L') <= L with L' in the successor type must have L
  /// in the predecessor type.
  bool role_compatible(std::size_t role, std::uint64_t from, std::uint64_t to) const {
    for (const auto& g : guards) {
      if (g.role == role && g.filler.holds_in(to) && !g.rhs.holds_in(from)) return false;
    }
    return true;
  }
};

inline IndexedAxioms index_normal_form(const Ontology& o) {
  if (!is_normal_form(o)) {
    throw std::invalid_argument("type elimination requires a normal-form ontology");
  }
  const Signature sig = signature_of(o);
  IndexedAxioms ix;
  ix.concept_names.assign(sig.concepts.begin(), sig.concepts.end());
  ix.role_names.assign(sig.roles.begin(), sig.roles.end());
  if (ix.concept_names.size() > 24) {
    throw std::invalid_argument("signature too large for type elimination");
  }
  auto concept_index = [&](const std::string& name) {
    return static_cast<std::size_t>(
        std::lower_bound(ix.concept_names.begin(), ix.concept_names.end(), name) -
        ix.concept_names.begin());
  };
  auto role_index = [&](const std::string& name) {
    return static_cast<std::size_t>(
        std::lower_bound(ix.role_names.begin(), ix.role_names.end(), name) -
        ix.role_names.begin());
  };
  auto literal = [&](const Concept& c) {
    switch (c.kind()) {
      case Concept::Kind::Top: return IndexedLiteral{IndexedLiteral::Kind::Top, 0};
      case Concept::Kind::Atom: return IndexedLiteral{IndexedLiteral::Kind::Pos, concept_index(c.name())};
      default: return IndexedLiteral{IndexedLiteral::Kind::Neg, concept_index(c.name())};
    }
  };
  const IndexedLiteral top{IndexedLiteral::Kind::Top, 0};
  for (const auto& ax : o.axioms()) {
    const auto& g = std::get<Gci>(ax);
    switch (*normal_shape(g)) {
      case NormalShape::LitLit:
        ix.local.push_back({literal(g.lhs), top, literal(g.rhs)});
        break;
      case NormalShape::AndLit:
        ix.local.push_back({literal(g.lhs.lhs()), literal(g.lhs.rhs()), literal(g.rhs)});
        break;
      case NormalShape::LitExists:
        ix.needs.push_back({literal(g.lhs), role_index(g.rhs.role()), literal(g.rhs.inner())});
        break;
      case NormalShape::ExistsLit:
        ix.guards.push_back({role_index(g.lhs.role()), literal(g.lhs.inner()), literal(g.rhs)});
        break;
    }
  }
  return ix;
}

}  // namespace detail

/// Type elimination: start from all locally consistent types and repeatedly
/// remove types whose required existential witnesses cannot be found among
/// the survivors. The ontology is consistent iff the fixpoint is nonempty.
///
/// A witness for type t under role r must avoid the filler of every
/// (ex r . L) <= L' axiom whose right-hand side fails in t, so witness
/// existence depends on t only through that set of violated guards. Each
/// sweep therefore answers one witness query per distinct violated-guard
/// profile instead of one per type.
inline TypeElimination eliminate_types(const Ontology& o) {
  const detail::IndexedAxioms ix = detail::index_normal_form(o);
  const std::size_t k = ix.concept_names.size();
  const std::uint64_t type_count = std::uint64_t{1} << k;

  std::vector<std::uint8_t> alive(type_count);
  for (std::uint64_t mask = 0; mask < type_count; ++mask) {
    alive[mask] = ix.locally_consistent(mask) ? 1 : 0;
  }

  // Guards and needs bucketed per role.
  std::vector<std::vector<detail::IndexedAxioms::Guard>> guards_by_role(ix.role_names.size());
  for (const auto& g : ix.guards) guards_by_role[g.role].push_back(g);
  std::vector<std::vector<detail::IndexedAxioms::Needs>> needs_by_role(ix.role_names.size());
  for (const auto& n : ix.needs) needs_by_role[n.role].push_back(n);

  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t role = 0; role < ix.role_names.size(); ++role) {
      const auto& needs = needs_by_role[role];
      if (needs.empty()) continue;
      const auto& guards = guards_by_role[role];
      if (guards.size() > 20) {
        throw std::invalid_argument("too many existential guards per role for type elimination");
      }
      // memo[need][violated-guard profile]: -1 unknown, else witness found.
      std::vector<std::vector<std::int8_t>> memo(
          needs.size(), std::vector<std::int8_t>(std::size_t{1} << guards.size(), -1));
      for (std::uint64_t mask = 0; mask < type_count; ++mask) {
        if (!alive[mask]) continue;
        std::uint32_t profile = 0;
        for (std::size_t g = 0; g < guards.size(); ++g) {
          if (!guards[g].rhs.holds_in(mask)) profile |= std::uint32_t{1} << g;
        }
        for (std::size_t i = 0; i < needs.size() && alive[mask]; ++i) {
          if (!needs[i].lhs.holds_in(mask)) continue;
          std::int8_t& known = memo[i][profile];
          if (known < 0) {
            known = 0;
            for (std::uint64_t other = 0; other < type_count && !known; ++other) {
              if (!alive[other] || !needs[i].filler.holds_in(other)) continue;
              bool compatible = true;
              for (std::size_t g = 0; g < guards.size() && compatible; ++g) {
                compatible = !((profile >> g) & 1u) || !guards[g].filler.holds_in(other);
              }
              known = compatible ? 1 : 0;
            }
          }
          if (!known) {
            alive[mask] = 0;
            changed = true;
          }
        }
      }
    }
  }

  TypeElimination result;
  result.signature = ix.concept_names;
  for (std::uint64_t mask = 0; mask < type_count; ++mask) {
    if (alive[mask]) result.survivors.push_back(EType{mask});
  }
  return result;
}

/// Canonical model over the surviving types: one element per type, concept
/// extensions read off the type masks, each role maximal among compatible
/// pairs. The fixpoint conditions make this a model of the input, which is
/// re-verified here.
inline Interpretation extract_witness(const TypeElimination& types, const Ontology& o) {
  if (types.survivors.empty()) {
    throw std::invalid_argument("cannot extract a witness from an empty type set");
  }
  const detail::IndexedAxioms ix = detail::index_normal_form(o);
  const std::size_t n = types.survivors.size();

  std::vector<std::string> domain;
  domain.reserve(n);
  for (const auto& t : types.survivors) domain.push_back("t" + std::to_string(t.mask));
  Interpretation interp(std::move(domain));

  for (std::size_t c = 0; c < types.signature.size(); ++c) {
    DenseSet ext(n);
    for (std::size_t i = 0; i < n; ++i) {
      if ((types.survivors[i].mask >> c) & 1u) ext.set(i);
    }
    interp.assign_concept(types.signature[c], std::move(ext));
  }
  for (std::size_t r = 0; r < ix.role_names.size(); ++r) {
    DenseSet ext(n * n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        if (ix.role_compatible(r, types.survivors[i].mask, types.survivors[j].mask)) {
          ext.set(i * n + j);
        }
      }
    }
    interp.assign_role(ix.role_names[r], std::move(ext));
  }

  if (!satisfies_ontology(interp, o).satisfied) {
    throw std::logic_error("extracted witness fails verification");
  }
  return interp;
}

struct ElnegVerdict {
  /// Present iff consistent; always checker-verified against the input.
  std::optional<Interpretation> witness;

  bool consistent() const { return witness.has_value(); }
};

namespace detail {

/// Smallest deterministic subset of the survivors that is closed under
/// existential witnessing: BFS from the first survivor, always choosing the
/// first surviving witness. The canonical model over any such closed subset
/// still satisfies the ontology; survivor sets over large normalized
/// signatures run to millions of types, so this keeps decided witnesses at
/// a sane size.
inline std::vector<EType> witness_closure(const TypeElimination& types,
                                          const IndexedAxioms& ix) {
  std::set<std::uint64_t> chosen{types.survivors.front().mask};
  std::vector<std::uint64_t> worklist{types.survivors.front().mask};
  while (!worklist.empty()) {
    const std::uint64_t mask = worklist.back();
    worklist.pop_back();
    for (const auto& need : ix.needs) {
      if (!need.lhs.holds_in(mask)) continue;
      std::optional<std::uint64_t> found;
      for (const auto& candidate : types.survivors) {
        if (need.filler.holds_in(candidate.mask) &&
            ix.role_compatible(need.role, mask, candidate.mask)) {
          found = candidate.mask;
          break;
        }
      }
      // The fixpoint guarantees a witness.
      if (!found) throw std::logic_error("surviving type lost its witness");
      if (chosen.insert(*found).second) worklist.push_back(*found);
    }
  }
  std::vector<EType> out;
  for (std::uint64_t mask : chosen) out.push_back(EType{mask});
  return out;
}

}  // namespace detail

/// Complete consistency decision for EL/ELneg ontologies. Normalizes
/// internally, eliminates types, and on success extracts a canonical model
/// over a witnessing-closed subset of the survivors, restricted back to the
/// input signature.
inline ElnegVerdict decide_elneg(const Ontology& o) {
  if (o.fragment() == Fragment::SEL) {
    throw std::invalid_argument("decide_elneg expects an EL/ELneg ontology");
  }
  const NormalizeResult normalized = normalize(o);
  TypeElimination types = eliminate_types(normalized.ontology);
  if (types.survivors.empty()) return ElnegVerdict{std::nullopt};

  types.survivors =
      detail::witness_closure(types, detail::index_normal_form(normalized.ontology));
  const Interpretation small = extract_witness(types, normalized.ontology);
  Interpretation witness = restrict_to_signature(small, signature_of(o));
  if (!satisfies_ontology(witness, o).satisfied) {
    throw std::logic_error("restricted witness fails verification");
  }
  return ElnegVerdict{std::move(witness)};
}

}  // namespace stel
