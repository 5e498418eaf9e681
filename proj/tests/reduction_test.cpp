#include "stel/reduction.hpp"

#include <gtest/gtest.h>

#include <set>

#include "stel/elneg.hpp"
#include "stel/generator.hpp"
#include "stel/parser.hpp"
#include "stel/printer.hpp"
#include "stel/selsearch.hpp"

namespace stel {
namespace {

std::set<Rational> rationals_in(const Ontology& onto) {
  std::set<Rational> out;
  for (const auto& ax : onto.axioms()) {
    if (const auto* c = std::get_if<Conditional>(&ax)) {
      out.insert(c->lo);
      out.insert(c->hi);
    }
  }
  return out;
}

TEST(DecorateSignature, ReservedNamespaceKeepsNamesApart) {
  const DecoratedSig sig = decorate_signature({"A", "B"});
  EXPECT_EQ(sig.base, (std::vector<std::string>{"A", "B"}));
  EXPECT_EQ(sig.plus("A"), "A__plus");
  EXPECT_EQ(sig.minus("B"), "B__minus");
  EXPECT_EQ(sig.real_plus(), "R__plus");
  EXPECT_EQ(sig.real_minus(), "R__minus");
  std::set<std::string> all{sig.plus("A"), sig.minus("A"), sig.plus("B"), sig.minus("B"),
                            sig.real_plus(), sig.real_minus(), "A", "B"};
  EXPECT_EQ(all.size(), 8u);
}

TEST(DecorateSignature, MarkerAvoidsBaseCollision) {
  const DecoratedSig sig = decorate_signature({"A", "R"});
  EXPECT_NE(sig.marker, "R");
  EXPECT_EQ(sig.marker, "R0");
  EXPECT_EQ(build_o_corr(sig).axioms().size(), 9u);
}

TEST(BuildOCorr, ThreeConditionalsPerName) {
  EXPECT_EQ(build_o_corr(decorate_signature({"A"})).axioms().size(), 6u);
  EXPECT_EQ(build_o_corr(decorate_signature({})).axioms().size(), 3u);
  EXPECT_EQ(build_o_corr(decorate_signature({"A", "B"})).axioms().size(), 9u);

  const Ontology o_corr = build_o_corr(decorate_signature({"A"}));
  EXPECT_EQ(print_ontology(o_corr),
            "cond R__plus | top in [1/2, 1/2]\n"
            "cond R__minus | top in [1/2, 1/2]\n"
            "cond R__plus | R__minus in [0/1, 0/1]\n"
            "cond A__plus | top in [1/2, 1/2]\n"
            "cond A__minus | top in [1/2, 1/2]\n"
            "cond A__plus | A__minus in [0/1, 0/1]\n");
}

TEST(TranslateLiteral, DecoratedConjunctions) {
  const DecoratedSig sig = decorate_signature({"A"});
  EXPECT_EQ(print_concept(translate_literal(Concept::atom("A"), sig)), "(A__plus & R__plus)");
  EXPECT_EQ(print_concept(translate_literal(Concept::neg_atom("A"), sig)),
            "(A__minus & R__plus)");
  EXPECT_EQ(print_concept(translate_literal(Concept::top(), sig)), "R__plus");
  EXPECT_THROW(translate_literal(Concept::atom("Z"), sig), std::invalid_argument);
  EXPECT_THROW(translate_literal(Concept::conj(Concept::atom("A"), Concept::top()), sig),
               std::invalid_argument);
}

TEST(BuildOTr, TranslatesEachNormalShape) {
  const DecoratedSig sig = decorate_signature({"A", "B"});
  EXPECT_EQ(print_ontology(build_o_tr(parse_ontology("gci top <= A\n"), sig)),
            "gci R__plus <= (A__plus & R__plus)\n");
  EXPECT_EQ(print_ontology(build_o_tr(parse_ontology("gci A <= (ex r . B)\n"), sig)),
            "gci (A__plus & R__plus) <= (ex r . (B__plus & R__plus))\n");
  EXPECT_EQ(print_ontology(build_o_tr(parse_ontology("gci (ex r . !A) <= B\n"), sig)),
            "gci (ex r . (A__minus & R__plus)) <= (B__plus & R__plus)\n");
  EXPECT_EQ(print_ontology(build_o_tr(parse_ontology("gci (A & !B) <= !A\n"), sig)),
            "gci ((A__plus & R__plus) & (B__minus & R__plus)) <= (A__minus & R__plus)\n");
  EXPECT_THROW(build_o_tr(parse_ontology("gci A <= (ex r . (A & B))\n"), sig),
               std::invalid_argument);
}

TEST(BuildOTr, ConditionalFormUsesTheEmbedding) {
  const DecoratedSig sig = decorate_signature({"A"});
  const Ontology gcis = build_o_tr(parse_ontology("gci top <= A\n"), sig, false);
  const Ontology conds = build_o_tr(parse_ontology("gci top <= A\n"), sig, true);
  const auto& g = std::get<Gci>(gcis.axioms()[0]);
  const auto& c = std::get<Conditional>(conds.axioms()[0]);
  EXPECT_EQ(c, gci_as_conditional(g));
}

TEST(Reduce, AssemblesCorrPlusTr) {
  const ReductionOutput red = reduce(parse_ontology("gci A <= !A\n"));
  EXPECT_EQ(red.o_corr.axioms().size(), 6u);
  EXPECT_EQ(red.o_tr.axioms().size(), 1u);
  EXPECT_EQ(red.o_red.axioms().size(), 7u);
  EXPECT_EQ(print_axiom(red.o_red.axioms()[6]),
            "gci (A__plus & R__plus) <= (A__minus & R__plus)");
  EXPECT_EQ(red.source, parse_ontology("gci A <= !A\n"));
  EXPECT_TRUE(red.names.definitions.empty());
}

TEST(Reduce, NormalizesInternally) {
  const ReductionOutput red = reduce(parse_ontology("gci A <= (ex r . (B & C))\n"));
  EXPECT_TRUE(is_normal_form(red.source));
  EXPECT_EQ(red.names.definitions.size(), 1u);
  // The fresh name joins the decorated base.
  EXPECT_TRUE(red.sig.in_base("X__1"));
  EXPECT_EQ(red.o_corr.axioms().size(), 3u * (1 + 4));
}

TEST(Reduce, OnlyZeroHalfOneAppear) {
  const std::set<Rational> allowed{kZero, kHalf, kOne};
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const Ontology onto = gen_random({seed, 3, 1, 5, 3, Fragment::ELneg, false});
    for (const Rational& q : rationals_in(reduce(onto).o_red)) {
      EXPECT_TRUE(allowed.count(q)) << q.str() << " from seed " << seed;
    }
    // Including when translated GCIs go out as [1,1] conditionals.
    for (const Rational& q : rationals_in(reduce(onto, true).o_red)) {
      EXPECT_TRUE(allowed.count(q)) << q.str() << " from seed " << seed;
    }
  }
}

TEST(Reduce, RejectsSel) {
  EXPECT_THROW(reduce(parse_ontology("cond A | top in [0, 1]\n")), std::invalid_argument);
}

TEST(LiftModel, SingleElementExactShape) {
  const Ontology hard = parse_ontology("gci A <= !A\n");
  const DecoratedSig sig = decorate_signature(signature_of(hard).concepts);
  const Interpretation model = make_interpretation({"d1"});  // A empty
  const Interpretation lifted = lift_model(model, hard, sig);

  ASSERT_EQ(lifted.size(), 2u);
  EXPECT_EQ(lifted.domain(), (std::vector<std::string>{"d1", "d1__p"}));
  EXPECT_EQ(lifted.concept_extension("A__plus").indices(), (std::vector<std::size_t>{1}));
  EXPECT_EQ(lifted.concept_extension("A__minus").indices(), (std::vector<std::size_t>{0}));
  EXPECT_EQ(lifted.concept_extension("R__plus").indices(), (std::vector<std::size_t>{0}));
  EXPECT_EQ(lifted.concept_extension("R__minus").indices(), (std::vector<std::size_t>{1}));

  const ReductionOutput red = reduce(hard);
  EXPECT_TRUE(satisfies_ontology(lifted, red.o_red).satisfied);
}

TEST(LiftModel, TwoElementExample) {
  const Ontology hard = parse_ontology("gci A <= (ex r . B)\ngci B <= !A\n");
  const DecoratedSig sig = decorate_signature(signature_of(hard).concepts);
  const Interpretation model =
      make_interpretation({"d1", "d2"}, {{"A", {0}}, {"B", {1}}}, {{"r", {{0, 1}}}});
  const Interpretation lifted = lift_model(model, hard, sig);
  EXPECT_EQ(lifted.size(), 4u);
  EXPECT_TRUE(satisfies_ontology(lifted, reduce(hard).o_red).satisfied);
  // Roles are copied between the original elements only.
  EXPECT_EQ(lifted.role_extension("r").count(), 1u);
  EXPECT_TRUE(lifted.role_extension("r").test(0 * 4 + 2));
}

TEST(LiftModel, DomainAlwaysDoubles) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const Ontology hard = gen_random({seed, 2, 1, 4, 1, Fragment::ELneg, true});
    const ElnegVerdict verdict = decide_elneg(hard);
    if (!verdict.consistent()) continue;
    const DecoratedSig sig = decorate_signature(signature_of(hard).concepts);
    const Interpretation lifted = lift_model(*verdict.witness, hard, sig);
    EXPECT_EQ(lifted.size(), 2 * verdict.witness->size()) << "seed " << seed;
  }
}

TEST(LiftModel, RejectsNonModels) {
  const Ontology hard = parse_ontology("gci top <= A\n");
  const DecoratedSig sig = decorate_signature(signature_of(hard).concepts);
  try {
    lift_model(make_interpretation({"d1"}), hard, sig);
    FAIL() << "expected invalid_argument";
  } catch (const std::invalid_argument& e) {
    EXPECT_NE(std::string(e.what()).find("axiom 0"), std::string::npos);
  }
  EXPECT_THROW(lift_model(make_interpretation({"d1"}),
                          parse_ontology("gci A <= (ex r . (B & C))\n"), sig),
               std::invalid_argument);
}

TEST(ProjectModel, InverseOfLiftOnTheNose) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const Ontology hard = gen_random({seed, 2, 1, 4, 1, Fragment::ELneg, true});
    const ElnegVerdict verdict = decide_elneg(hard);
    if (!verdict.consistent()) continue;
    const DecoratedSig sig = decorate_signature(signature_of(hard).concepts);
    const Interpretation lifted = lift_model(*verdict.witness, hard, sig);
    const Interpretation back = project_model(lifted, hard, sig);
    EXPECT_EQ(back, *verdict.witness) << "seed " << seed;
  }
}

TEST(ProjectModel, SearchModelProjectsToOneElement) {
  const Ontology hard = parse_ontology("gci A <= !A\n");
  const ReductionOutput red = reduce(hard);
  const SelVerdict v = find_model(red.o_red, SearchBudget{2, 1'000'000, std::nullopt});
  ASSERT_TRUE(v.found());
  ASSERT_EQ(v.model().size(), 2u);
  const Interpretation projected = project_model(v.model(), red.source, red.sig);
  EXPECT_EQ(projected.size(), 1u);
  EXPECT_TRUE(projected.concept_extension("A").none());
  EXPECT_TRUE(satisfies_ontology(projected, hard).satisfied);
}

TEST(ProjectModel, RejectsViolatingInput) {
  const Ontology hard = parse_ontology("gci A <= !A\n");
  const DecoratedSig sig = decorate_signature(signature_of(hard).concepts);
  try {
    project_model(make_interpretation({"d1", "d2"}), hard, sig);
    FAIL() << "expected invalid_argument";
  } catch (const std::invalid_argument& e) {
    EXPECT_NE(std::string(e.what()).find("axiom"), std::string::npos);
  }
}

TEST(SizeLinearity, MeasuredBoundOnRandomCorpus) {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const Ontology onto = gen_random({seed, 3, 1, 6, 3, Fragment::ELneg, false});
    const ReductionOutput red = reduce(onto);
    EXPECT_LE(size_of(red.o_red), 10 * size_of(red.source) + 40) << "seed " << seed;
  }
}

}  // namespace
}  // namespace stel
