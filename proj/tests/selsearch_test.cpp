#include "stel/selsearch.hpp"

#include <gtest/gtest.h>

#include "stel/generator.hpp"
#include "stel/parser.hpp"
#include "stel/reduction.hpp"

namespace stel {
namespace {

SearchBudget budget(std::size_t max_domain, std::uint64_t nodes = 10'000'000) {
  return SearchBudget{max_domain, nodes, std::nullopt};
}

// Naive oracle: smallest domain size up to max_n carrying a model, found by
// plain enumeration of all interpretations.
std::optional<std::size_t> naive_smallest_model(const Ontology& onto, std::size_t max_n) {
  const Signature sig = signature_of(onto);
  for (std::size_t n = 1; n <= max_n; ++n) {
    bool found = false;
    for_each_interpretation(sig.concepts, sig.roles, n, [&](const Interpretation& i) {
      found = found || satisfies_ontology(i, onto).satisfied;
    });
    if (found) return n;
  }
  return std::nullopt;
}

TEST(FindModel, OCorrHasTheTwoElementModel) {
  const Ontology o_corr = build_o_corr(decorate_signature({"A"}));
  ASSERT_EQ(o_corr.axioms().size(), 6u);
  const SelVerdict v = find_model(o_corr, budget(4));
  ASSERT_TRUE(v.found());
  const Interpretation& m = v.model();
  EXPECT_EQ(m.size(), 2u);
  // Up to isomorphism: each decorated pair splits the two elements.
  for (const std::string name : {"A", "R"}) {
    const DenseSet plus = m.concept_extension(name + "__plus");
    const DenseSet minus = m.concept_extension(name + "__minus");
    EXPECT_EQ(plus.count(), 1u);
    EXPECT_EQ(minus.count(), 1u);
    EXPECT_EQ(intersection_count(plus, minus), 0u);
  }
  EXPECT_TRUE(satisfies_ontology(m, o_corr).satisfied);
}

TEST(FindModel, InconsistentReductionExhaustsBound) {
  const ReductionOutput red = reduce(parse_ontology("gci top <= A\ngci top <= !A\n"));
  const SelVerdict v = find_model(red.o_red, budget(4));
  EXPECT_EQ(v.kind(), SelVerdict::Kind::NoModelUpTo);
  EXPECT_EQ(v.bound(), 4u);
  EXPECT_EQ(v.progress().exhausted_up_to, 4u);
}

TEST(FindModel, CardinalityArithmetic) {
  const Ontology third = parse_ontology("cond A | top in [1/3, 1/3]\n");
  const SelVerdict small = find_model(third, budget(2));
  EXPECT_EQ(small.kind(), SelVerdict::Kind::NoModelUpTo);
  EXPECT_EQ(small.bound(), 2u);

  const SelVerdict three = find_model(third, budget(3));
  ASSERT_TRUE(three.found());
  EXPECT_EQ(three.model().size(), 3u);
  EXPECT_EQ(three.model().concept_extension("A").count(), 1u);
}

TEST(FindModel, PlainElFindsTinyModel) {
  const SelVerdict v = find_model(parse_ontology("gci A <= B\ngci top <= A\n"), budget(2));
  ASSERT_TRUE(v.found());
  EXPECT_EQ(v.model().size(), 1u);
}

TEST(FindModel, RoleEnumerationHandlesNonSeparableAxioms) {
  // The conditional mentions a role, so the maximal-edge shortcut does not
  // apply and role bits are searched exhaustively.
  const Ontology onto = parse_ontology(
      "cond (ex r . A) | top in [1, 1]\n"
      "cond A | top in [1/2, 1/2]\n");
  const SelVerdict v = find_model(onto, budget(3));
  ASSERT_TRUE(v.found());
  EXPECT_EQ(v.model().size(), 2u);
  EXPECT_TRUE(satisfies_ontology(v.model(), onto).satisfied);
}

TEST(FindModel, AgreesWithNaiveEnumeration) {
  // Differential check of the pruning logic on role-free signatures.
  const Rational bounds[] = {kZero, Rational(1, 3), kHalf, Rational(2, 3), kOne};
  std::uint64_t word = 0x9e3779b97f4a7c15ull;
  auto next = [&] {
    word ^= word << 13;
    word ^= word >> 7;
    word ^= word << 17;
    return word;
  };
  const std::vector<std::string> names{"A", "B", "C"};
  for (int trial = 0; trial < 120; ++trial) {
    std::vector<Axiom> axioms;
    const std::size_t count = 1 + next() % 3;
    for (std::size_t i = 0; i < count; ++i) {
      const Concept subject = Concept::atom(names[next() % names.size()]);
      const Concept given =
          next() % 2 ? Concept::top() : Concept::atom(names[next() % names.size()]);
      Rational lo = bounds[next() % 5];
      Rational hi = bounds[next() % 5];
      if (lo > hi) std::swap(lo, hi);
      axioms.push_back(Conditional{subject, given, lo, hi});
    }
    const Ontology onto(std::move(axioms));
    const std::optional<std::size_t> naive = naive_smallest_model(onto, 3);
    const SelVerdict v = find_model(onto, budget(3));
    if (naive) {
      ASSERT_TRUE(v.found()) << print_ontology(onto);
      EXPECT_EQ(v.model().size(), *naive) << print_ontology(onto);
    } else {
      EXPECT_EQ(v.kind(), SelVerdict::Kind::NoModelUpTo) << print_ontology(onto);
    }
  }
}

TEST(FindModel, MaximalEdgeShortcutAgreesWithNaiveEnumeration) {
  // Random ontologies in the shape the reduction emits (normal-form GCIs
  // plus cardinality and disjointness conditionals on names), where role
  // extensions are derived rather than searched. Ground truth by plain
  // enumeration up to 3 elements.
  std::uint64_t word = 0x2545f4914f6cdd1dull;
  auto next = [&] {
    word ^= word << 13;
    word ^= word >> 7;
    word ^= word << 17;
    return word;
  };
  for (int trial = 0; trial < 150; ++trial) {
    const GenParams p{next(), 2, 1, 3, 1, Fragment::EL, true};
    std::vector<Axiom> axioms = gen_random(p).axioms();
    if (next() % 2) {
      axioms.push_back(Conditional{Concept::atom("A"), Concept::top(),
                                   next() % 2 ? kHalf : Rational(1, 3),
                                   next() % 2 ? kHalf : Rational(2, 3)});
    }
    if (next() % 2) {
      axioms.push_back(Conditional{Concept::atom("A"), Concept::atom("B"), kZero, kZero});
    }
    const Ontology onto(std::move(axioms));
    const std::optional<std::size_t> naive = naive_smallest_model(onto, 3);
    const SelVerdict v = find_model(onto, budget(3));
    if (naive) {
      ASSERT_TRUE(v.found()) << print_ontology(onto);
      EXPECT_EQ(v.model().size(), *naive) << print_ontology(onto);
    } else {
      EXPECT_EQ(v.kind(), SelVerdict::Kind::NoModelUpTo) << print_ontology(onto);
    }
  }
}

TEST(FindModel, RoleBitSearchAgreesWithNaiveEnumeration) {
  // Conditionals over existential concepts disable the shortcut; the role
  // bits are then enumerated outright. Ground truth as above, 2 elements.
  std::uint64_t word = 0x9e3779b97f4a7c15ull;
  auto next = [&] {
    word ^= word << 13;
    word ^= word >> 7;
    word ^= word << 17;
    return word;
  };
  const Rational bounds[] = {kZero, kHalf, kOne};
  for (int trial = 0; trial < 60; ++trial) {
    std::vector<Axiom> axioms;
    const std::size_t count = 1 + next() % 2;
    for (std::size_t i = 0; i < count; ++i) {
      const Concept name = next() % 2 ? Concept::atom("A") : Concept::atom("B");
      const Concept subject = next() % 2 ? Concept::exists("r", name) : name;
      Rational lo = bounds[next() % 3];
      Rational hi = bounds[next() % 3];
      if (lo > hi) std::swap(lo, hi);
      axioms.push_back(Conditional{subject, Concept::top(), lo, hi});
    }
    const Ontology onto(std::move(axioms));
    const std::optional<std::size_t> naive = naive_smallest_model(onto, 2);
    const SelVerdict v = find_model(onto, budget(2));
    if (naive) {
      ASSERT_TRUE(v.found()) << print_ontology(onto);
      EXPECT_EQ(v.model().size(), *naive) << print_ontology(onto);
    } else {
      EXPECT_EQ(v.kind(), SelVerdict::Kind::NoModelUpTo) << print_ontology(onto);
    }
  }
}

TEST(FindModel, DeterministicAcrossRuns) {
  const ReductionOutput red = reduce(parse_ontology("gci A <= (ex r . B)\ngci B <= !A\n"));
  const SelVerdict first = find_model(red.o_red, budget(6));
  const SelVerdict second = find_model(red.o_red, budget(6));
  ASSERT_TRUE(first.found());
  ASSERT_TRUE(second.found());
  EXPECT_EQ(first.model(), second.model());
  EXPECT_EQ(first.progress().nodes, second.progress().nodes);
}

TEST(FindModel, BudgetExhaustionIsReported) {
  const ReductionOutput red = reduce(parse_ontology("gci top <= A\ngci top <= !A\n"));
  const SelVerdict v = find_model(red.o_red, budget(4, 5));
  EXPECT_EQ(v.kind(), SelVerdict::Kind::BudgetExhausted);
  EXPECT_LE(v.progress().exhausted_up_to, 3u);
}

TEST(FindModel, InputValidation) {
  EXPECT_THROW(find_model(parse_ontology("gci !A <= B\n"), budget(2)), std::invalid_argument);
  EXPECT_THROW(find_model(parse_ontology("gci A <= B\n"), SearchBudget{0, 100, std::nullopt}),
               std::invalid_argument);
  EXPECT_THROW(find_model(parse_ontology("gci A <= B\n"), SearchBudget{2, 0, std::nullopt}),
               std::invalid_argument);
}

TEST(AllModels, EnumeratesConceptClassesOnce) {
  const Ontology half = parse_ontology("cond A | top in [1/2, 1/2]\n");
  EXPECT_TRUE(all_models(half, 1, budget(1)).empty());
  const auto at2 = all_models(half, 2, budget(2));
  ASSERT_EQ(at2.size(), 1u);  // |A| = 1 on two interchangeable elements
  EXPECT_EQ(at2[0].concept_extension("A").count(), 1u);
  const auto at4 = all_models(half, 4, budget(4));
  ASSERT_EQ(at4.size(), 1u);
  EXPECT_EQ(at4[0].concept_extension("A").count(), 2u);
}

TEST(CheckSel, ReportsAndExitCodes) {
  const CheckSelResult found = check_sel(parse_ontology("cond A | top in [1/2, 1/2]\n"), budget(2));
  EXPECT_EQ(found.exit_code, 0);
  ASSERT_TRUE(found.model.has_value());
  EXPECT_NE(found.report.find("verdict: found"), std::string::npos);
  EXPECT_NE(found.report.find("domain-size: 2"), std::string::npos);

  const CheckSelResult unknown =
      check_sel(parse_ontology("cond A | top in [1/3, 1/3]\n"), budget(2));
  EXPECT_EQ(unknown.exit_code, 2);
  EXPECT_FALSE(unknown.model.has_value());
  EXPECT_NE(unknown.report.find("verdict: no-model-up-to"), std::string::npos);
  EXPECT_NE(unknown.report.find("bound: 2"), std::string::npos);
}

}  // namespace
}  // namespace stel
