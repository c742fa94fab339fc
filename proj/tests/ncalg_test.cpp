#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "qpg/ncalg.hpp"
#include "test_support.hpp"

namespace qpg::ncalg {
namespace {

using qpg::testing::random_magic;
using qpg::testing::random_magic4;

TensorWord word(std::vector<LegWord> legs) { return TensorWord{std::move(legs)}; }

NCPolynomial gen(std::size_t n, std::size_t i, std::size_t j) { return NCPolynomial::generator(n, i, j); }

NCPolynomial row_sum(std::size_t n, std::size_t k) {
  NCPolynomial p(n, 1);
  for (std::size_t j = 1; j <= n; ++j) p = p + gen(n, k, j);
  return p;
}

NCPolynomial column_sum(std::size_t n, std::size_t l) {
  NCPolynomial p(n, 1);
  for (std::size_t i = 1; i <= n; ++i) p = p + gen(n, i, l);
  return p;
}

// Random polynomial with short words and small exact coefficients.
NCPolynomial random_polynomial(std::mt19937_64& rng, std::size_t n, std::size_t legs) {
  std::uniform_int_distribution<std::size_t> idx(1, n), len(0, 4), terms(1, 4);
  std::uniform_int_distribution<int> num(-4, 4), den(1, 3), kind(0, 2);
  NCPolynomial p(n, legs);
  const std::size_t count = terms(rng);
  for (std::size_t t = 0; t < count; ++t) {
    TensorWord w;
    for (std::size_t l = 0; l < legs; ++l) {
      LegWord lw;
      const std::size_t k = len(rng);
      for (std::size_t f = 0; f < k; ++f) lw.push_back({idx(rng), idx(rng)});
      w.legs.push_back(std::move(lw));
    }
    Coeff c;
    switch (kind(rng)) {
      case 0: c = Coeff(num(rng)); break;
      case 1: c = Coeff(Rational(num(rng), den(rng))); break;
      default: c = Coeff(Rational(num(rng), den(rng)), Rational(num(rng), den(rng))); break;
    }
    if (c.is_zero()) c = Coeff(1);
    p.add_term(w, c);
  }
  return p;
}

// Random polynomial biased towards complete row and column sums, so that
// collapse_sums has something to do.
NCPolynomial random_sum_polynomial(std::mt19937_64& rng, std::size_t n) {
  std::uniform_int_distribution<std::size_t> idx(1, n);
  std::uniform_int_distribution<int> coin(0, 1), c(-3, 3);
  const auto left = gen(n, idx(rng), idx(rng));
  const auto right = gen(n, idx(rng), idx(rng));
  auto sum = coin(rng) ? row_sum(n, idx(rng)) : column_sum(n, idx(rng));
  return Coeff(c(rng)) * (left * sum * right) + random_polynomial(rng, n, 1);
}

std::size_t input_size(const NCPolynomial& p) {
  std::size_t s = 0;
  for (const auto& [w, c] : p.terms()) s += w.length() + 1;
  return s;
}

TEST(Parse, SingleGenerator) {
  const auto p = parse_expression("a(1,2)", 4);
  ASSERT_EQ(p.terms().size(), 1u);
  EXPECT_EQ(p.legs(), 1u);
  EXPECT_EQ(p.coeff(word({{{1, 2}}})), Coeff(1));
}

TEST(Parse, TwoTerms) {
  const auto p = parse_expression("a(1,1)*a(1,2) + 2*a(2,2)", 4);
  ASSERT_EQ(p.terms().size(), 2u);
  EXPECT_EQ(p.coeff(word({{{1, 1}, {1, 2}}})), Coeff(1));
  EXPECT_EQ(p.coeff(word({{{2, 2}}})), Coeff(2));
}

TEST(Parse, TensorSeparator) {
  const auto p = parse_expression("a(1,2) # a(2,3)", 4);
  ASSERT_EQ(p.terms().size(), 1u);
  EXPECT_EQ(p.legs(), 2u);
  EXPECT_EQ(p.coeff(word({{{1, 2}}, {{2, 3}}})), Coeff(1));
}

TEST(Parse, CoefficientForms) {
  EXPECT_EQ(parse_expression("0.25*a(1,1)", 2).coeff(word({{{1, 1}}})), Coeff(Rational(1, 4)));
  EXPECT_EQ(parse_expression("010 a(1,1)", 2).coeff(word({{{1, 1}}})), Coeff(10));
  EXPECT_EQ(parse_expression("-3/6 a(1,1)", 2).coeff(word({{{1, 1}}})), Coeff(Rational(-1, 2)));
  EXPECT_EQ(parse_expression("(1/2-2i)*a(1,1)", 2).coeff(word({{{1, 1}}})),
            Coeff(Rational(1, 2), Rational(-2)));
  EXPECT_EQ(parse_expression("3", 2), NCPolynomial::unit(2, 1, 3));
  EXPECT_EQ(parse_expression("3/4 1", 2), NCPolynomial::unit(2, 1, Coeff(Rational(3, 4))));
  EXPECT_EQ(parse_expression("1 + 2/5 1", 2), NCPolynomial::unit(2, 1, Coeff(Rational(7, 5))));
}

TEST(Parse, AdjointReversesWord) {
  const auto p = parse_expression("a(1,2)*a(3,4)'", 4);
  EXPECT_EQ(p.coeff(word({{{1, 2}, {3, 4}}})), Coeff(1));
  const auto q = parse_expression("(1+1i)*a(1,2)*a(3,4)", 4).adjoint();
  EXPECT_EQ(q.coeff(word({{{3, 4}, {1, 2}}})), Coeff(1, -1));
}

TEST(Parse, Errors) {
  const auto position_of = [](const char* src, std::size_t n) -> std::size_t {
    try {
      parse_expression(src, n);
    } catch (const ParseError& e) {
      return e.position();
    }
    return std::string::npos;
  };
  EXPECT_EQ(position_of("a(1,5)", 4), 4u);
  EXPECT_EQ(position_of("a(0,1)", 4), 2u);
  EXPECT_EQ(position_of("a(1,1) +", 4), 8u);
  EXPECT_NE(position_of("a(1 1)", 4), std::string::npos);
  EXPECT_NE(position_of("b(1,1)", 4), std::string::npos);
  EXPECT_NE(position_of("", 4), std::string::npos);
  EXPECT_NE(position_of("a(1,1) # a(1,1) + a(2,2)", 4), std::string::npos);
  EXPECT_NE(position_of("1/0 a(1,1)", 4), std::string::npos);
  EXPECT_NE(position_of("a(1,1) a(1,2)", 4), std::string::npos);
}

TEST(Print, CanonicalForms) {
  EXPECT_EQ(to_string(NCPolynomial(3, 1)), "0");
  EXPECT_EQ(to_string(parse_expression("a(1,2) + a(1,1)", 3)), "a(1,1) + a(1,2)");
  EXPECT_EQ(to_string(parse_expression("-a(1,1)", 3)), "-a(1,1)");
  EXPECT_EQ(to_string(parse_expression("2*a(2,2)", 3)), "2*a(2,2)");
  EXPECT_EQ(to_string(parse_expression("a(1,2) # a(2,3)", 3)), "a(1,2) # a(2,3)");
  EXPECT_EQ(to_string(parse_expression("-0.25", 3)), "-1/4");
  EXPECT_EQ(to_string(parse_expression("1/2 1 # a(1,1)", 3)), "1/2*1 # a(1,1)");
}

TEST(Print, ParsePrintIsIdempotent) {
  std::mt19937_64 rng(41);
  for (int t = 0; t < 200; ++t) {
    const std::size_t legs = 1 + t % 3;
    const auto p = random_polynomial(rng, 5, legs);
    const auto text = to_string(p);
    const auto back = parse_expression(text, 5);
    EXPECT_EQ(back, p) << text;
    EXPECT_EQ(to_string(back), text);
  }
}

TEST(NormalForm, Idempotence) {
  const auto p = normal_form(parse_expression("a(1,2)*a(1,2)", 4));
  EXPECT_EQ(to_string(p), "a(1,2)");
}

TEST(NormalForm, SameRowOrthogonality) {
  EXPECT_TRUE(normal_form(parse_expression("a(1,2)*a(1,3)", 4)).is_zero());
}

TEST(NormalForm, SameColumnOrthogonality) {
  EXPECT_TRUE(normal_form(parse_expression("a(1,2)*a(3,2)", 4)).is_zero());
}

TEST(NormalForm, KeepsNoncommutingWords) {
  EXPECT_EQ(to_string(normal_form(parse_expression("a(1,1)*a(2,2)*a(1,1)", 4))),
            "a(1,1)*a(2,2)*a(1,1)");
  EXPECT_EQ(to_string(normal_form(parse_expression("a(1,1)*a(2,2)*a(2,2)*a(3,3)", 4))),
            "a(1,1)*a(2,2)*a(3,3)");
  EXPECT_TRUE(normal_form(parse_expression("a(1,1)*a(2,2)*a(2,3)*a(3,3)", 4)).is_zero());
}

TEST(NormalForm, CollectsLikeTerms) {
  EXPECT_EQ(to_string(normal_form(parse_expression("a(1,1)*a(1,1) + a(1,1) - 2*a(1,1)", 4))), "0");
  EXPECT_EQ(to_string(normal_form(parse_expression("a(1,1)*a(1,1) # a(2,2) + a(1,1) # a(2,2)", 4))),
            "2*a(1,1) # a(2,2)");
}

TEST(NormalForm, OrthogonalityRelationsVanishInRepresentations) {
  std::mt19937_64 rng(42);
  const auto same_row = parse_expression("a(1,2)*a(1,3)", 4);
  const auto same_col = parse_expression("a(1,2)*a(3,2)", 4);
  for (int t = 0; t < 50; ++t) {
    const auto u = random_magic4(rng);
    EXPECT_LE(max_norm(evaluate(same_row, u)), 1e-10);
    EXPECT_LE(max_norm(evaluate(same_col, u)), 1e-10);
  }
}

TEST(NormalForm, SoundAgainstEvaluation) {
  std::mt19937_64 rng(43);
  std::vector<MagicUnitary> reps;
  for (int t = 0; t < 50; ++t) reps.push_back(random_magic4(rng));
  for (int t = 0; t < 60; ++t) {
    const auto p = t % 2 ? random_polynomial(rng, 4, 1 + t % 3) : random_sum_polynomial(rng, 4);
    const auto nf = normal_form(p);
    const auto cs = collapse_sums(p);
    for (const auto& u : reps) {
      const auto ev = evaluate(p, u);
      EXPECT_LE(max_diff(ev, evaluate(nf, u)), 1e-9) << to_string(p);
      EXPECT_LE(max_diff(ev, evaluate(cs, u)), 1e-9) << to_string(p);
    }
  }
}

TEST(NormalForm, IdempotentOnCorpus) {
  std::mt19937_64 rng(44);
  for (int t = 0; t < 200; ++t) {
    const auto p = t % 4 == 0 ? random_sum_polynomial(rng, 3) : random_polynomial(rng, 3, 1 + t % 2);
    const auto once = normal_form(p);
    EXPECT_EQ(normal_form(once), once) << to_string(p);
  }
}

TEST(NormalForm, StepBudgetNeverExceeded) {
  std::mt19937_64 rng(45);
  for (int t = 0; t < 200; ++t) {
    const auto p = random_polynomial(rng, 2, 1 + t % 2);
    NormalFormStats stats;
    normal_form(p, &stats);
    const std::size_t size = input_size(p);
    EXPECT_EQ(stats.budget, 10 * size * size);
    EXPECT_LE(stats.steps, 10 * size * size);
  }
}

TEST(NormalForm, ReduceWordReportsZero) {
  TensorWord w = word({{{1, 1}, {1, 2}}});
  EXPECT_FALSE(reduce_word(w));
  TensorWord v = word({{{1, 1}, {1, 1}, {1, 1}}, {}});
  EXPECT_TRUE(reduce_word(v));
  EXPECT_EQ(v, word({{{1, 1}}, {}}));
}

TEST(CheckIdentity, RowSumIsUnit) {
  EXPECT_TRUE(check_identity(row_sum(4, 2), NCPolynomial::unit(4)).passed());
}

TEST(CheckIdentity, TechnicalLemmaCore) {
  const Coeff c(Rational(7, 3), Rational(-2, 5));
  for (std::size_t k = 1; k <= 4; ++k)
    EXPECT_TRUE(check_identity(c * row_sum(4, k), NCPolynomial::unit(4, 1, c)).passed());
}

TEST(CheckIdentity, DistinctGeneratorsAreInconclusive) {
  const auto r = check_identity(gen(4, 1, 1), gen(4, 1, 2));
  EXPECT_TRUE(r.informational());
  EXPECT_EQ(r.metrics["residue"].get<std::string>(), "a(1,1) - a(1,2)");
}

TEST(CheckIdentity, PartialSumDoesNotCollapse) {
  const auto partial = gen(3, 1, 1) + gen(3, 1, 2);
  EXPECT_TRUE(check_identity(partial, NCPolynomial::unit(3)).informational());
  const auto unequal = Coeff(2) * gen(3, 1, 1) + gen(3, 1, 2) + gen(3, 1, 3);
  EXPECT_TRUE(check_identity(unequal, NCPolynomial::unit(3)).informational());
}

TEST(CheckIdentity, SumsInContext) {
  const auto left = gen(3, 2, 1);
  const auto right = gen(3, 3, 3);
  EXPECT_TRUE(check_identity(left * column_sum(3, 2) * right, left * right).passed());
  EXPECT_TRUE(check_identity(tensor(row_sum(3, 1), row_sum(3, 2)), NCPolynomial::unit(3, 2)).passed());
}

TEST(CheckIdentity, MismatchIsStructural) {
  EXPECT_THROW(check_identity(gen(3, 1, 1), gen(4, 1, 1)), StructuralError);
  EXPECT_THROW(check_identity(gen(3, 1, 1), NCPolynomial::unit(3, 2)), StructuralError);
}

TEST(CheckIdentity, ComultiplicationRespectsSums) {
  for (std::size_t n = 1; n <= 6; ++n) {
    const auto one2 = NCPolynomial::unit(n, 2);
    for (std::size_t k = 1; k <= n; ++k) {
      EXPECT_TRUE(check_identity(comultiply_leg(row_sum(n, k), 0), one2).passed()) << n << " row " << k;
      EXPECT_TRUE(check_identity(comultiply_leg(column_sum(n, k), 0), one2).passed()) << n << " col " << k;
    }
  }
}

TEST(RelationSuite, PassesForSmallN) {
  for (std::size_t n = 1; n <= 6; ++n) EXPECT_TRUE(relation_suite_symbolic(n).passed()) << n;
}

// Both sides of coassociativity against a direct enumeration of
// Σ_{k,l} a(i,k) ⊗ a(k,l) ⊗ a(l,j).
void expect_coassoc_matches_enumeration(std::size_t n) {
  for (std::size_t i = 1; i <= n; ++i)
    for (std::size_t j = 1; j <= n; ++j) {
      std::vector<TensorWord> expected;
      for (std::size_t k = 1; k <= n; ++k)
        for (std::size_t l = 1; l <= n; ++l) expected.push_back(word({{{i, k}}, {{k, l}}, {{l, j}}}));
      std::sort(expected.begin(), expected.end());
      const auto once = comultiply_leg(gen(n, i, j), 0);
      for (std::size_t leg : {0u, 1u}) {
        std::vector<TensorWord> got;
        for (const auto& [w, c] : comultiply_leg_terms(once, leg)) {
          EXPECT_EQ(c, Coeff(1));
          got.push_back(w);
        }
        std::sort(got.begin(), got.end());
        EXPECT_EQ(got, expected) << "n=" << n << " leg " << leg;
      }
    }
}

TEST(Coassoc, SingleGenerator) {
  const auto r = coassoc_check_symbolic(1);
  EXPECT_TRUE(r.passed());
  expect_coassoc_matches_enumeration(1);
}

TEST(Coassoc, NEqualsThree) {
  const auto r = coassoc_check_symbolic(3);
  EXPECT_TRUE(r.passed());
  EXPECT_EQ(r.metrics["words_per_generator"].get<std::size_t>(), 9u);
  expect_coassoc_matches_enumeration(3);
}

TEST(Coassoc, NEqualsSix) {
  const auto r = coassoc_check_symbolic(6);
  EXPECT_TRUE(r.passed());
  EXPECT_EQ(r.metrics["words_per_generator"].get<std::size_t>(), 36u);
  expect_coassoc_matches_enumeration(6);
}

TEST(Comultiply, IsMultiplicativeOnWords) {
  const auto p = gen(2, 1, 2) * gen(2, 2, 1);
  const auto dp = comultiply_leg(p, 0);
  const auto expected = comultiply_leg(gen(2, 1, 2), 0) * comultiply_leg(gen(2, 2, 1), 0);
  EXPECT_EQ(dp, expected);
  EXPECT_EQ(comultiply_leg(NCPolynomial::unit(2), 0), NCPolynomial::unit(2, 2));
}

TEST(Evaluate, Examples) {
  const auto u = build_two_projection_magic(std::numbers::pi / 4);
  EXPECT_EQ(evaluate(gen(4, 1, 1), u), ComplexMatrix::diag({1.0, 0.0}));
  EXPECT_LE(max_diff(evaluate(row_sum(4, 1), u), ComplexMatrix::identity(2)), 1e-15);
  EXPECT_LE(max_norm(evaluate(parse_expression("a(1,1)*a(1,2)", 4), u)), 1e-10);
  const auto t = evaluate(parse_expression("a(1,1) # a(3,3)", 4), u);
  EXPECT_EQ(t, kron(u.entry(1, 1), u.entry(3, 3)));
}

TEST(Evaluate, LinearAndSizeChecked) {
  std::mt19937_64 rng(46);
  const auto u = random_magic(rng, 3);
  const auto p = random_polynomial(rng, 3, 2), q = random_polynomial(rng, 3, 2);
  EXPECT_LE(max_diff(evaluate(p + q, u), evaluate(p, u) + evaluate(q, u)), 1e-12);
  EXPECT_THROW(evaluate(gen(4, 1, 1), u), DimensionError);
}

TEST(Coeff, FromDoubleIsExact) {
  EXPECT_EQ(Coeff::from_double(0.375), Coeff(Rational(3, 8)));
  EXPECT_EQ(Coeff::from_double(-2.0, 0.5), Coeff(Rational(-2), Rational(1, 2)));
  std::mt19937_64 rng(47);
  std::uniform_real_distribution<double> dist(-1e6, 1e6);
  for (int t = 0; t < 100; ++t) {
    const double x = dist(rng);
    EXPECT_EQ(Coeff::from_double(x).to_complex().real(), x);
  }
  EXPECT_THROW(Coeff::from_double(std::nan("")), std::invalid_argument);
}

}  // namespace
}  // namespace qpg::ncalg
