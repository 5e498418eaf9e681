#pragma once

#include <algorithm>
#include <cstdint>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "stel/normalform.hpp"
#include "stel/printer.hpp"
#include "stel/semantics.hpp"
#include "stel/syntax.hpp"

namespace stel {

/// Decorated signature for the reduction: every base name A gets the fresh
/// pair A__plus/A__minus, and a marker name outside the base gets the pair
/// separating the "real" submodel from the auxiliary half. The "__"
/// namespace makes all decorated names pairwise distinct and distinct from
/// every base name.
struct DecoratedSig {
  std::vector<std::string> base;  // sorted
  std::string marker;             // not a member of base

  std::string plus(const std::string& name) const { return name + "__plus"; }
  std::string minus(const std::string& name) const { return name + "__minus"; }
  std::string real_plus() const { return marker + "__plus"; }
  std::string real_minus() const { return marker + "__minus"; }

  bool in_base(const std::string& name) const {
    return std::binary_search(base.begin(), base.end(), name);
  }
};

inline DecoratedSig decorate_signature(const std::set<std::string>& base) {
  DecoratedSig sig;
  sig.base.assign(base.begin(), base.end());
  sig.marker = "R";
  // A user concept named R would decorate to the marker's own names.
  for (int i = 0; base.count(sig.marker) != 0; ++i) sig.marker = "R" + std::to_string(i);
  return sig;
}

/// The correctness ontology: for the marker and every base name A, the pair
/// A+/A- splits the domain into two disjoint halves:
///   (A+|top)[1/2,1/2], (A-|top)[1/2,1/2], (A+|A-)[0,0].
inline Ontology build_o_corr(const DecoratedSig& sig) {
  std::vector<Axiom> axioms;
  std::vector<std::string> names{sig.marker};
  names.insert(names.end(), sig.base.begin(), sig.base.end());
  for (const auto& name : names) {
    const Concept plus = Concept::atom(sig.plus(name));
    const Concept minus = Concept::atom(sig.minus(name));
    axioms.push_back(Conditional{plus, Concept::top(), kHalf, kHalf});
    axioms.push_back(Conditional{minus, Concept::top(), kHalf, kHalf});
    axioms.push_back(Conditional{plus, minus, kZero, kZero});
  }
  return Ontology(std::move(axioms));
}

/// tr(A) = A+ & R+, tr(!A) = A- & R+, tr(top) = R+.
inline Concept translate_literal(const Concept& literal, const DecoratedSig& sig) {
  const Concept real = Concept::atom(sig.real_plus());
  switch (literal.kind()) {
    case Concept::Kind::Top: return real;
    case Concept::Kind::Atom:
      if (!sig.in_base(literal.name())) {
        throw std::invalid_argument("literal name '" + literal.name() + "' outside the base signature");
      }
      return Concept::conj(Concept::atom(sig.plus(literal.name())), real);
    case Concept::Kind::NegAtom:
      if (!sig.in_base(literal.name())) {
        throw std::invalid_argument("literal name '" + literal.name() + "' outside the base signature");
      }
      return Concept::conj(Concept::atom(sig.minus(literal.name())), real);
    default:
      throw std::invalid_argument("translate_literal expects a literal");
  }
}

/// Translation of a normal-form ontology: every literal occurrence replaced
/// by tr(.), axiom order preserved. Emitted as GCIs by default; with
/// as_conditionals each GCI C <= D goes out as (D|C)[1,1].
inline Ontology build_o_tr(const Ontology& normal_form, const DecoratedSig& sig,
                           bool as_conditionals = false) {
  if (!is_normal_form(normal_form)) {
    throw std::invalid_argument("build_o_tr requires a normal-form ontology");
  }
  std::vector<Axiom> axioms;
  for (const auto& ax : normal_form.axioms()) {
    const auto& g = std::get<Gci>(ax);
    Gci out{Concept::top(), Concept::top()};
    switch (*normal_shape(g)) {
      case NormalShape::LitLit:
        out = Gci{translate_literal(g.lhs, sig), translate_literal(g.rhs, sig)};
        break;
      case NormalShape::AndLit:
        out = Gci{Concept::conj(translate_literal(g.lhs.lhs(), sig),
                                translate_literal(g.lhs.rhs(), sig)),
                  translate_literal(g.rhs, sig)};
        break;
      case NormalShape::LitExists:
        out = Gci{translate_literal(g.lhs, sig),
                  Concept::exists(g.rhs.role(), translate_literal(g.rhs.inner(), sig))};
        break;
      case NormalShape::ExistsLit:
        out = Gci{Concept::exists(g.lhs.role(), translate_literal(g.lhs.inner(), sig)),
                  translate_literal(g.rhs, sig)};
        break;
    }
    if (as_conditionals) {
      axioms.push_back(gci_as_conditional(out));
    } else {
      axioms.push_back(std::move(out));
    }
  }
  return Ontology(std::move(axioms));
}

struct ReductionOutput {
  Ontology o_corr;
  Ontology o_tr;
  Ontology o_red;  // o_corr followed by o_tr
  DecoratedSig sig;
  Ontology source;  // the normalized input the translation was read from
  NameMap names;    // fresh names introduced by the internal normalization
};

/// The full reduction: normalize, decorate the normalized signature, then
/// assemble O_red = O_corr + O_tr. Every conditional bound in the output is
/// one of 0, 1/2, 1.
inline ReductionOutput reduce(const Ontology& o_hard, bool as_conditionals = false) {
  if (o_hard.fragment() == Fragment::SEL) {
    throw std::invalid_argument("reduce expects an EL/ELneg ontology");
  }
  NormalizeResult normalized = normalize(o_hard);
  DecoratedSig sig = decorate_signature(signature_of(normalized.ontology).concepts);
  Ontology o_corr = build_o_corr(sig);
  Ontology o_tr = build_o_tr(normalized.ontology, sig, as_conditionals);
  std::vector<Axiom> combined = o_corr.axioms();
  combined.insert(combined.end(), o_tr.axioms().begin(), o_tr.axioms().end());
  Ontology o_red{std::move(combined)};
  for (const auto& ax : o_red.axioms()) {
    if (const auto* c = std::get_if<Conditional>(&ax)) {
      for (const Rational& q : {c->lo, c->hi}) {
        if (!(q == kZero || q == kHalf || q == kOne)) {
          throw std::logic_error("reduction produced a bound other than 0, 1/2, 1");
        }
      }
    }
  }
  return ReductionOutput{std::move(o_corr), std::move(o_tr), std::move(o_red),
                         std::move(sig), std::move(normalized.ontology),
                         std::move(normalized.names)};
}

namespace detail {

inline std::string first_violation_message(const Verdict& verdict, const Ontology& onto) {
  const auto& v = verdict.violations.front();
  return "axiom " + std::to_string(v.axiom_index) + " (" +
         print_axiom(onto.axioms()[v.axiom_index]) + "), cardinalities " +
         std::to_string(v.count_a) + "/" + std::to_string(v.count_b);
}

}  // namespace detail

/// Model duplication: every element d of a model of o_hard gets a copy d',
/// A+ collects the members of A and the copies of the non-members, A- the
/// complement pattern, R+ the originals, R- the copies; roles are copied
/// unchanged. The result is a model of O_red, which is re-verified here.
inline Interpretation lift_model(const Interpretation& model, const Ontology& o_hard_nf,
                                 const DecoratedSig& sig) {
  if (!is_normal_form(o_hard_nf)) {
    throw std::invalid_argument("lift_model requires a normal-form ontology");
  }
  const Verdict pre = satisfies_ontology(model, o_hard_nf);
  if (!pre.satisfied) {
    throw std::invalid_argument("input model does not satisfy the ontology: violated " +
                                detail::first_violation_message(pre, o_hard_nf));
  }

  const std::size_t n = model.size();
  std::vector<std::string> domain;
  domain.reserve(2 * n);
  std::set<std::string> original(model.domain().begin(), model.domain().end());
  bool clash = false;
  for (const auto& id : model.domain()) clash = clash || original.count(id + "__p") != 0;
  for (std::size_t i = 0; i < n; ++i) {
    const std::string base = clash ? "e" + std::to_string(i + 1) : model.domain()[i];
    domain.push_back(base);           // original at index 2i
    domain.push_back(base + "__p");   // copy at index 2i + 1
  }
  Interpretation lifted(std::move(domain));

  const DenseSet originals = [&] {
    DenseSet s(2 * n);
    for (std::size_t i = 0; i < n; ++i) s.set(2 * i);
    return s;
  }();
  for (const auto& name : sig.base) {
    const DenseSet ext = model.concept_extension(name);
    DenseSet plus(2 * n), minus(2 * n);
    for (std::size_t i = 0; i < n; ++i) {
      if (ext.test(i)) {
        plus.set(2 * i);
        minus.set(2 * i + 1);
      } else {
        minus.set(2 * i);
        plus.set(2 * i + 1);
      }
    }
    lifted.assign_concept(sig.plus(name), std::move(plus));
    lifted.assign_concept(sig.minus(name), std::move(minus));
    // Undecorated names keep the original half as their extension.
    lifted.assign_concept(name, originals);
  }
  lifted.assign_concept(sig.real_plus(), originals);
  lifted.assign_concept(sig.real_minus(), originals.complement());
  for (const auto& [role, edges] : model.roles()) {
    DenseSet out(4 * n * n);
    edges.for_each([&](std::size_t bit) {
      out.set((2 * (bit / n)) * (2 * n) + 2 * (bit % n));
    });
    lifted.assign_role(role, std::move(out));
  }

  std::vector<Axiom> red = build_o_corr(sig).axioms();
  const Ontology o_tr = build_o_tr(o_hard_nf, sig);
  red.insert(red.end(), o_tr.axioms().begin(), o_tr.axioms().end());
  const Ontology o_red(std::move(red));
  const Verdict post = satisfies_ontology(lifted, o_red);
  if (!post.satisfied) {
    throw std::logic_error("lifted model fails against the reduced ontology: violated " +
                           detail::first_violation_message(post, o_red));
  }
  return lifted;
}

/// Inverse construction: restrict a model of O_red to the members of R+,
/// reading A off A+ within that submodel and cutting roles down to it. The
/// result is a model of o_hard, re-verified here.
inline Interpretation project_model(const Interpretation& model, const Ontology& o_hard_nf,
                                    const DecoratedSig& sig) {
  if (!is_normal_form(o_hard_nf)) {
    throw std::invalid_argument("project_model requires a normal-form ontology");
  }
  std::vector<Axiom> red = build_o_corr(sig).axioms();
  const Ontology o_tr = build_o_tr(o_hard_nf, sig);
  red.insert(red.end(), o_tr.axioms().begin(), o_tr.axioms().end());
  const Ontology o_red(std::move(red));
  const Verdict pre = satisfies_ontology(model, o_red);
  if (!pre.satisfied) {
    throw std::invalid_argument("input model does not satisfy the reduced ontology: violated " +
                                detail::first_violation_message(pre, o_red));
  }

  const DenseSet real = model.concept_extension(sig.real_plus());
  if (real.none()) throw std::invalid_argument("the R+ extension is empty; nothing to project");

  const std::vector<std::size_t> kept = real.indices();
  std::vector<std::string> domain;
  domain.reserve(kept.size());
  std::vector<std::size_t> new_index(model.size(), SIZE_MAX);
  for (std::size_t i = 0; i < kept.size(); ++i) {
    new_index[kept[i]] = i;
    domain.push_back(model.domain()[kept[i]]);
  }
  Interpretation projected(std::move(domain));
  const std::size_t m = kept.size();

  for (const auto& name : sig.base) {
    const DenseSet plus = model.concept_extension(sig.plus(name));
    DenseSet ext(m);
    for (std::size_t i = 0; i < m; ++i) {
      if (plus.test(kept[i])) ext.set(i);
    }
    projected.assign_concept(name, std::move(ext));
  }
  // Names of the ontology beyond the decorated base are interpreted as the
  // whole restricted domain.
  for (const auto& name : signature_of(o_hard_nf).concepts) {
    if (!sig.in_base(name)) projected.assign_concept(name, DenseSet::full(m));
  }
  const std::size_t n = model.size();
  for (const auto& [role, edges] : model.roles()) {
    DenseSet out(m * m);
    edges.for_each([&](std::size_t bit) {
      const std::size_t from = new_index[bit / n];
      const std::size_t to = new_index[bit % n];
      if (from != SIZE_MAX && to != SIZE_MAX) out.set(from * m + to);
    });
    projected.assign_role(role, std::move(out));
  }

  const Verdict post = satisfies_ontology(projected, o_hard_nf);
  if (!post.satisfied) {
    throw std::logic_error("projected model fails against the ontology: violated " +
                           detail::first_violation_message(post, o_hard_nf));
  }
  return projected;
}

}  // namespace stel
