#include "stel/parser.hpp"

#include <gtest/gtest.h>

#include "stel/generator.hpp"
#include "stel/normalform.hpp"
#include "stel/printer.hpp"
#include "stel/reduction.hpp"

namespace stel {
namespace {

TEST(Parser, GciExample) {
  const Ontology onto = parse_ontology("gci A <= (ex r . top)\n");
  ASSERT_EQ(onto.axioms().size(), 1u);
  const auto& g = std::get<Gci>(onto.axioms()[0]);
  EXPECT_EQ(g.lhs, Concept::atom("A"));
  EXPECT_EQ(g.rhs, Concept::exists("r", Concept::top()));
  EXPECT_EQ(onto.fragment(), Fragment::EL);
}

TEST(Parser, ConditionalExample) {
  const Ontology onto = parse_ontology("cond A | top in [1/2, 1/2]");
  const auto& c = std::get<Conditional>(onto.axioms()[0]);
  EXPECT_EQ(c.subject, Concept::atom("A"));
  EXPECT_EQ(c.given, Concept::top());
  EXPECT_EQ(c.lo, kHalf);
  EXPECT_EQ(c.hi, kHalf);
  EXPECT_EQ(onto.fragment(), Fragment::SEL);
}

TEST(Parser, RationalForms) {
  const Ontology onto = parse_ontology("cond A | top in [0.25, 1]\n");
  const auto& c = std::get<Conditional>(onto.axioms()[0]);
  EXPECT_EQ(c.lo, Rational(1, 4));
  EXPECT_EQ(c.hi, kOne);
}

TEST(Parser, BoundErrors) {
  EXPECT_THROW(parse_ontology("cond A | top in [2/3, 1/3]\n"), ParseError);
  EXPECT_THROW(parse_ontology("cond A | top in [1/2, 3/2]\n"), ParseError);
  try {
    parse_ontology("cond A | top in [2/3, 1/3]\n");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("lo > hi"), std::string::npos);
  }
}

TEST(Parser, SyntaxErrorCarriesLineAndColumn) {
  try {
    parse_ontology("gci A <= top\ngci <= B\n");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2);
    EXPECT_GT(e.column(), 1);
  }
}

TEST(Parser, ReservedNamesRejectedInUserInput) {
  EXPECT_THROW(parse_ontology("gci A__plus <= top\n"), ParseError);
  EXPECT_NO_THROW(parse_ontology("gci A__plus <= top\n", ParseOptions{true}));
  EXPECT_NO_THROW(parse_ontology("gci A_1 <= top\n"));  // single underscore is fine
}

TEST(Parser, EmptyOntologyRejected) {
  EXPECT_THROW(parse_ontology(""), ParseError);
  EXPECT_THROW(parse_ontology("# only a comment\n\n"), ParseError);
}

TEST(Parser, CommentsAndBlankLines) {
  const Ontology onto = parse_ontology("# header\n\ngci A <= B  # trailing\n\n");
  EXPECT_EQ(onto.axioms().size(), 1u);
}

TEST(Parser, OneAxiomPerLine) {
  EXPECT_THROW(parse_ontology("gci A <= B gci B <= A\n"), ParseError);
}

TEST(Parser, ArbitraryBytesEitherParseOrRaiseParseError) {
  std::uint64_t word = 0x6a09e667f3bcc909ull;
  auto next = [&] {
    word ^= word << 13;
    word ^= word >> 7;
    word ^= word << 17;
    return word;
  };
  const std::string alphabet = "gci cond top in ex A B r ! & | < = ( ) [ ] , . / 0 1 2 9 _ # \n\t";
  for (int trial = 0; trial < 2000; ++trial) {
    std::string text;
    const std::size_t len = next() % 64;
    for (std::size_t i = 0; i < len; ++i) {
      // Mostly grammar-adjacent characters, sometimes raw bytes.
      text += trial % 4 == 0 ? static_cast<char>(next() % 128)
                             : alphabet[next() % alphabet.size()];
    }
    try {
      parse_ontology(text);
    } catch (const ParseError&) {
      // fine: rejected with a position
    }
  }
}

TEST(Parser, RoundTripIsStructuralIdentity) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const Ontology onto = gen_random({seed, 3, 2, 5, 3, Fragment::ELneg, false});
    EXPECT_EQ(parse_ontology(print_ontology(onto)), onto) << "seed " << seed;
  }
  // Also through machine-generated names.
  const Ontology hard = gen_random({7, 3, 1, 5, 3, Fragment::ELneg, false});
  const Ontology red = reduce(hard).o_red;
  EXPECT_EQ(parse_ontology(print_ontology(red), ParseOptions{true}), red);
}

}  // namespace
}  // namespace stel
