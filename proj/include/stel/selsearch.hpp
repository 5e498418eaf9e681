#pragma once

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "stel/semantics.hpp"
#include "stel/syntax.hpp"

namespace stel {

struct SearchBudget {
  std::size_t max_domain = 4;
  std::uint64_t node_ceiling = 50'000'000;
  std::optional<double> time_ceiling_seconds;
};

struct SearchProgress {
  std::uint64_t nodes = 0;
  std::size_t exhausted_up_to = 0;  // every domain size <= this was refuted
};

/// Outcome of the bounded search. Found ships a checker-verified model;
/// NoModelUpTo(n) certifies exhaustive refutation of every domain size <= n;
/// BudgetExhausted makes no claim beyond its progress report. The search
/// never claims inconsistency.
class SelVerdict {
 public:
  enum class Kind { Found, NoModelUpTo, BudgetExhausted };

  static SelVerdict found(Interpretation model, SearchProgress progress) {
    SelVerdict v;
    v.kind_ = Kind::Found;
    v.model_ = std::move(model);
    v.progress_ = progress;
    return v;
  }

  static SelVerdict no_model_up_to(std::size_t bound, SearchProgress progress) {
    SelVerdict v;
    v.kind_ = Kind::NoModelUpTo;
    v.bound_ = bound;
    v.progress_ = progress;
    return v;
  }

  static SelVerdict budget_exhausted(SearchProgress progress) {
    SelVerdict v;
    v.kind_ = Kind::BudgetExhausted;
    v.progress_ = progress;
    return v;
  }

  Kind kind() const { return kind_; }
  bool found() const { return kind_ == Kind::Found; }
  const Interpretation& model() const { return *model_; }
  std::size_t bound() const { return bound_; }
  const SearchProgress& progress() const { return progress_; }

 private:
  SelVerdict() = default;
  Kind kind_ = Kind::BudgetExhausted;
  std::optional<Interpretation> model_;
  std::size_t bound_ = 0;
  SearchProgress progress_;
};

namespace detail {

/// Complete backtracking search over interpretations of one domain size.
///
/// Concept memberships are assigned element by element as bit vectors over
/// the sorted concept names, restricted to non-increasing vector order;
/// every model has an isomorphic copy of that shape, so the restriction
/// keeps at least one representative per isomorphism class. Conditionals
/// (A|top)[k,l] on names prune by cardinality interval, (A|B)[0,0] on names
/// prune incompatible vectors outright.
///
/// When every axiom is "role-separable" - conditionals over role-free
/// concepts and GCIs whose only existential is the top-level constructor of
/// one side with a role-free filler - role extensions are not searched at
/// all: any model over fixed concept extensions remains one after maximizing
/// each role among the edges permitted by the (ex r . Q) <= P axioms, so the
/// maximal assignment is tried alone and exhausting concept assignments
/// refutes the size. Otherwise role bits are enumerated exhaustively.
class ModelSearch {
 public:
  ModelSearch(const Ontology& onto, const SearchBudget& budget)
      : onto_(&onto), budget_(budget), start_(std::chrono::steady_clock::now()) {
    if (onto.fragment() == Fragment::ELneg) {
      throw std::invalid_argument("model search expects an EL/SEL ontology");
    }
    if (budget.max_domain == 0 || budget.node_ceiling == 0) {
      throw std::invalid_argument("search budget fields must be positive");
    }
    const Signature sig = signature_of(onto);
    concepts_.assign(sig.concepts.begin(), sig.concepts.end());
    roles_.assign(sig.roles.begin(), sig.roles.end());
    if (concepts_.size() > 22) {
      throw std::invalid_argument("too many concept names for bounded model search");
    }
    classify();
  }

  enum class Status { Exhausted, Stopped, Budget };

  /// Runs the complete search at one domain size; sink returns true to stop.
  Status run_size(std::size_t n, const std::function<bool(const Interpretation&)>& sink) {
    n_ = n;
    sink_ = &sink;
    if (!cardinality_intervals()) return Status::Exhausted;  // provably no model at n

    allowed_.clear();
    const std::uint64_t vectors = std::uint64_t{1} << concepts_.size();
    for (std::uint64_t v = vectors; v-- > 0;) {
      bool ok = true;
      for (auto [a, b] : disjoint_) {
        if (((v >> a) & 1u) && ((v >> b) & 1u)) {
          ok = false;
          break;
        }
      }
      if (ok) allowed_.push_back(v);
    }

    counts_.assign(concepts_.size(), 0);
    assign_.assign(n_, 0);
    domain_.clear();
    for (std::size_t i = 0; i < n_; ++i) domain_.push_back("d" + std::to_string(i + 1));
    return assign_element(0);
  }

  SearchProgress progress;

 private:
  void classify() {
    separable_ = true;
    auto concept_index = [&](const std::string& name) {
      return static_cast<std::size_t>(
          std::lower_bound(concepts_.begin(), concepts_.end(), name) - concepts_.begin());
    };
    for (const auto& ax : onto_->axioms()) {
      if (const auto* c = std::get_if<Conditional>(&ax)) {
        if (!c->subject.role_free() || !c->given.role_free()) {
          separable_ = false;
          continue;
        }
        if (c->subject.kind() == Concept::Kind::Atom && c->given.kind() == Concept::Kind::Top) {
          bounds_.push_back({concept_index(c->subject.name()), c->lo, c->hi});
        }
        if (c->lo == kZero && c->hi == kZero && c->subject.kind() == Concept::Kind::Atom &&
            c->given.kind() == Concept::Kind::Atom && !(c->subject == c->given)) {
          disjoint_.emplace_back(concept_index(c->subject.name()),
                                 concept_index(c->given.name()));
        }
        continue;
      }
      const auto& g = std::get<Gci>(ax);
      const bool lhs_rf = g.lhs.role_free();
      const bool rhs_rf = g.rhs.role_free();
      if (lhs_rf && rhs_rf) continue;
      if (lhs_rf && g.rhs.kind() == Concept::Kind::Exists && g.rhs.inner().role_free()) continue;
      if (rhs_rf && g.lhs.kind() == Concept::Kind::Exists && g.lhs.inner().role_free()) {
        guards_.push_back({g.lhs.role(), g.lhs.inner(), g.rhs});
        continue;
      }
      separable_ = false;
    }
  }

  /// Intersects every (A|top)[k,l] bound into per-concept count intervals
  /// [ceil(k*n), floor(l*n)]; false means some interval is empty.
  bool cardinality_intervals() {
    lo_.assign(concepts_.size(), 0);
    hi_.assign(concepts_.size(), n_);
    for (const auto& b : bounds_) {
      const auto lo_n = static_cast<std::size_t>(
          (static_cast<unsigned __int128>(b.lo.num()) * n_ + b.lo.den() - 1) / b.lo.den());
      const auto hi_n = static_cast<std::size_t>(
          static_cast<unsigned __int128>(b.hi.num()) * n_ / b.hi.den());
      lo_[b.concept_idx] = std::max(lo_[b.concept_idx], lo_n);
      hi_[b.concept_idx] = std::min(hi_[b.concept_idx], hi_n);
      if (lo_[b.concept_idx] > hi_[b.concept_idx]) return false;
    }
    return true;
  }

  bool tick() {
    ++progress.nodes;
    if (progress.nodes > budget_.node_ceiling) return false;
    if (budget_.time_ceiling_seconds && (progress.nodes & 1023u) == 0) {
      const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start_;
      if (elapsed.count() > *budget_.time_ceiling_seconds) return false;
    }
    return true;
  }

  Status assign_element(std::size_t i) {
    if (!tick()) return Status::Budget;
    if (i == n_) return complete_concepts();
    const std::uint64_t cap = i == 0 ? ~std::uint64_t{0} : assign_[i - 1];
    for (std::uint64_t v : allowed_) {
      if (v > cap) continue;
      bool feasible = true;
      for (std::size_t c = 0; c < concepts_.size() && feasible; ++c) {
        const std::size_t count = counts_[c] + ((v >> c) & 1u);
        feasible = count <= hi_[c] && count + (n_ - i - 1) >= lo_[c];
      }
      if (!feasible) continue;
      assign_[i] = v;
      for (std::size_t c = 0; c < concepts_.size(); ++c) counts_[c] += (assign_[i] >> c) & 1u;
      const Status st = assign_element(i + 1);
      for (std::size_t c = 0; c < concepts_.size(); ++c) counts_[c] -= (assign_[i] >> c) & 1u;
      if (st != Status::Exhausted) return st;
    }
    return Status::Exhausted;
  }

  Interpretation concept_interpretation() const {
    Interpretation interp(domain_);
    for (std::size_t c = 0; c < concepts_.size(); ++c) {
      DenseSet ext(n_);
      for (std::size_t i = 0; i < n_; ++i) {
        if ((assign_[i] >> c) & 1u) ext.set(i);
      }
      interp.assign_concept(concepts_[c], std::move(ext));
    }
    return interp;
  }

  Status complete_concepts() {
    Interpretation interp = concept_interpretation();
    if (separable_) {
      for (const auto& role : roles_) {
        DenseSet edges = DenseSet::full(n_ * n_);
        for (const auto& guard : guards_) {
          if (guard.role != role) continue;
          const DenseSet filler = extension(interp, guard.filler);
          const DenseSet rhs = extension(interp, guard.rhs);
          for (std::size_t d = 0; d < n_; ++d) {
            if (rhs.test(d)) continue;
            for (std::size_t e = 0; e < n_; ++e) {
              if (filler.test(e)) edges.reset(d * n_ + e);
            }
          }
        }
        interp.assign_role(role, std::move(edges));
      }
      return deliver(interp);
    }
    return assign_role_bits(interp, 0, 0, DenseSet(n_ * n_));
  }

  Status assign_role_bits(Interpretation& interp, std::size_t role_idx, std::size_t bit,
                          DenseSet edges) {
    if (role_idx == roles_.size()) return deliver(interp);
    if (bit == n_ * n_) {
      interp.assign_role(roles_[role_idx], edges);
      const Status st = assign_role_bits(interp, role_idx + 1, 0, DenseSet(n_ * n_));
      interp.assign_role(roles_[role_idx], DenseSet(n_ * n_));
      return st;
    }
    if (!tick()) return Status::Budget;
    for (int value = 1; value >= 0; --value) {
      if (value) {
        edges.set(bit);
      } else {
        edges.reset(bit);
      }
      const Status st = assign_role_bits(interp, role_idx, bit + 1, edges);
      if (st != Status::Exhausted) return st;
    }
    return Status::Exhausted;
  }

  Status deliver(const Interpretation& interp) {
    if (!tick()) return Status::Budget;
    if (!satisfies_ontology(interp, *onto_).satisfied) return Status::Exhausted;
    return (*sink_)(interp) ? Status::Stopped : Status::Exhausted;
  }

  struct Bound {
    std::size_t concept_idx;
    Rational lo, hi;
  };
  struct Guard {
    std::string role;
    Concept filler;
    Concept rhs;
  };

  const Ontology* onto_;
  SearchBudget budget_;
  std::chrono::steady_clock::time_point start_;
  std::vector<std::string> concepts_;
  std::vector<std::string> roles_;
  std::vector<Bound> bounds_;
  std::vector<std::pair<std::size_t, std::size_t>> disjoint_;
  std::vector<Guard> guards_;
  bool separable_ = true;

  std::size_t n_ = 0;
  std::vector<std::uint64_t> allowed_;
  std::vector<std::uint64_t> assign_;
  std::vector<std::size_t> counts_;
  std::vector<std::size_t> lo_, hi_;
  std::vector<std::string> domain_;
  const std::function<bool(const Interpretation&)>* sink_ = nullptr;
};

}  // namespace detail

/// Iterative-deepening bounded model finder for EL/SEL ontologies: complete
/// per domain size, deterministic, returns the canonically first model of
/// the smallest satisfiable size within budget.
inline SelVerdict find_model(const Ontology& onto, const SearchBudget& budget) {
  detail::ModelSearch search(onto, budget);
  std::optional<Interpretation> found;
  const std::function<bool(const Interpretation&)> first = [&](const Interpretation& m) {
    found = m;
    return true;
  };
  for (std::size_t n = 1; n <= budget.max_domain; ++n) {
    switch (search.run_size(n, first)) {
      case detail::ModelSearch::Status::Stopped:
        if (!satisfies_ontology(*found, onto).satisfied) {
          throw std::logic_error("search produced a model that fails verification");
        }
        return SelVerdict::found(std::move(*found), search.progress);
      case detail::ModelSearch::Status::Budget:
        return SelVerdict::budget_exhausted(search.progress);
      case detail::ModelSearch::Status::Exhausted:
        search.progress.exhausted_up_to = n;
        break;
    }
  }
  return SelVerdict::no_model_up_to(budget.max_domain, search.progress);
}

/// All models at one exact domain size, one canonical representative per
/// concept-assignment class. Throws if the budget runs out mid-enumeration.
inline std::vector<Interpretation> all_models(const Ontology& onto, std::size_t n,
                                              const SearchBudget& budget) {
  detail::ModelSearch search(onto, budget);
  std::vector<Interpretation> out;
  const std::function<bool(const Interpretation&)> collect = [&](const Interpretation& m) {
    out.push_back(m);
    return false;
  };
  if (search.run_size(n, collect) == detail::ModelSearch::Status::Budget) {
    throw std::runtime_error("model enumeration exceeded the search budget");
  }
  return out;
}

struct CheckSelResult {
  int exit_code;  // 0 model found, 2 unknown (bound or budget exhausted)
  std::string report;
  std::optional<Interpretation> model;
};

/// CLI-facing wrapper: never claims inconsistency, only "found" or an
/// explicit exhaustion bound.
inline CheckSelResult check_sel(const Ontology& onto, const SearchBudget& budget) {
  const SelVerdict verdict = find_model(onto, budget);
  std::ostringstream report;
  CheckSelResult result{2, {}, std::nullopt};
  switch (verdict.kind()) {
    case SelVerdict::Kind::Found:
      report << "verdict: found\n";
      report << "domain-size: " << verdict.model().size() << "\n";
      result.exit_code = 0;
      result.model = verdict.model();
      break;
    case SelVerdict::Kind::NoModelUpTo:
      report << "verdict: no-model-up-to\n";
      report << "bound: " << verdict.bound() << "\n";
      break;
    case SelVerdict::Kind::BudgetExhausted:
      report << "verdict: budget-exhausted\n";
      report << "exhausted-up-to: " << verdict.progress().exhausted_up_to << "\n";
      break;
  }
  report << "nodes: " << verdict.progress().nodes << "\n";
  result.report = report.str();
  return result;
}

}  // namespace stel
