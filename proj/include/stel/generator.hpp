#pragma once

#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "stel/normalform.hpp"
#include "stel/syntax.hpp"

namespace stel {

/// Seeded random-ontology parameters. Identical parameters produce identical
/// ontologies on every platform (raw mt19937_64 output, no distribution
/// objects).
struct GenParams {
  std::uint64_t seed = 0;
  std::size_t n_concepts = 3;
  std::size_t n_roles = 1;
  std::size_t n_axioms = 4;
  std::size_t max_depth = 2;
  Fragment fragment = Fragment::ELneg;  // EL or ELneg
  bool normal_form = false;
};

namespace detail {

class OntologyGenerator {
 public:
  explicit OntologyGenerator(const GenParams& p) : params_(p), rng_(p.seed) {
    if (p.n_axioms == 0) throw std::invalid_argument("generator needs at least one axiom");
    if (p.fragment == Fragment::SEL) {
      throw std::invalid_argument("generator covers the EL and ELneg fragments");
    }
    for (std::size_t i = 0; i < p.n_concepts; ++i) concept_pool_.push_back(concept_name(i));
    for (std::size_t i = 0; i < p.n_roles; ++i) role_pool_.push_back(role_name(i));
  }

  Ontology run() {
    std::vector<Axiom> axioms;
    for (std::size_t i = 0; i < params_.n_axioms; ++i) {
      axioms.push_back(params_.normal_form
                           ? normal_axiom()
                           : Gci{random_concept(params_.max_depth), random_concept(params_.max_depth)});
    }
    return Ontology(std::move(axioms));
  }

 private:
  static std::string concept_name(std::size_t i) {
    if (i < 26) return std::string(1, static_cast<char>('A' + i));
    return "A" + std::to_string(i + 1);
  }

  static std::string role_name(std::size_t i) {
    if (i < 9) return std::string(1, static_cast<char>('r' + i));
    return "r" + std::to_string(i + 1);
  }

  std::uint64_t pick(std::uint64_t k) { return rng_() % k; }

  Concept literal() {
    if (concept_pool_.empty()) return Concept::top();
    const bool allow_neg = params_.fragment == Fragment::ELneg;
    switch (pick(allow_neg ? 5 : 4)) {
      case 0: return Concept::top();
      case 4: return Concept::neg_atom(concept_pool_[pick(concept_pool_.size())]);
      default: return Concept::atom(concept_pool_[pick(concept_pool_.size())]);
    }
  }

  Concept random_concept(std::size_t depth) {
    if (depth == 0) return literal();
    switch (pick(5)) {
      case 0:
      case 1: return literal();
      case 2: return Concept::conj(random_concept(depth - 1), random_concept(depth - 1));
      default:
        if (role_pool_.empty()) {
          return Concept::conj(random_concept(depth - 1), random_concept(depth - 1));
        }
        return Concept::exists(role_pool_[pick(role_pool_.size())], random_concept(depth - 1));
    }
  }

  Axiom normal_axiom() {
    const bool roles = !role_pool_.empty();
    switch (pick(roles ? 4 : 2)) {
      case 0: return Gci{literal(), literal()};
      case 1: return Gci{Concept::conj(literal(), literal()), literal()};
      case 2:
        return Gci{literal(),
                   Concept::exists(role_pool_[pick(role_pool_.size())], literal())};
      default:
        return Gci{Concept::exists(role_pool_[pick(role_pool_.size())], literal()),
                   literal()};
    }
  }

  GenParams params_;
  std::mt19937_64 rng_;
  std::vector<std::string> concept_pool_;
  std::vector<std::string> role_pool_;
};

}  // namespace detail

inline Ontology gen_random(const GenParams& params) {
  return detail::OntologyGenerator(params).run();
}

}  // namespace stel
