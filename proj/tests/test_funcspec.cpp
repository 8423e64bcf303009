#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "hhv/error.hpp"
#include "hhv/funcspec.hpp"

using namespace hhv;

namespace {

FunctionExpr c(double v) { return FunctionExpr::constant(v); }
FunctionExpr x() { return FunctionExpr::variable(); }

}  // namespace

TEST(Parse, ExpOfVariable) {
  EXPECT_EQ(parse("exp(x)"), FunctionExpr::unary(NodeKind::Exp, x()));
}

TEST(Parse, PowerIsRightAssociative) {
  const auto expected = FunctionExpr::binary(NodeKind::Pow, c(2), FunctionExpr::binary(NodeKind::Pow, x(), c(2)));
  EXPECT_EQ(parse("2^x^2"), expected);
}

TEST(Parse, UnbalancedParenReportsOffset) {
  try {
    parse("exp(");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.offset(), 4u);
  }
}

TEST(Parse, Precedence) {
  // -2^2 = -(2^2); 1+2*3 = 7; 2^-1 = 0.5
  EXPECT_DOUBLE_EQ(parse("-2^2").eval_raw(0.0), -4.0);
  EXPECT_DOUBLE_EQ(parse("1+2*3").eval_raw(0.0), 7.0);
  EXPECT_DOUBLE_EQ(parse("2^-1").eval_raw(0.0), 0.5);
  EXPECT_DOUBLE_EQ(parse("8/2/2").eval_raw(0.0), 2.0);
  EXPECT_DOUBLE_EQ(parse("8-2-2").eval_raw(0.0), 4.0);
  EXPECT_DOUBLE_EQ(parse(" ( x + 1 ) * 2 ").eval_raw(3.0), 8.0);
}

TEST(Parse, ConstantsAndNumbers) {
  EXPECT_EQ(parse("e").eval_raw(0), std::numbers::e);
  EXPECT_EQ(parse("pi").eval_raw(0), std::numbers::pi);
  EXPECT_EQ(parse("1.5e-3").eval_raw(0), 1.5e-3);
  EXPECT_EQ(parse(".25").eval_raw(0), 0.25);
  EXPECT_EQ(parse("3.").eval_raw(0), 3.0);
}

TEST(Parse, Errors) {
  EXPECT_THROW(parse(""), ParseError);
  EXPECT_THROW(parse("2e"), ParseError);
  EXPECT_THROW(parse("x x"), ParseError);
  EXPECT_THROW(parse("exp x"), ParseError);
  EXPECT_THROW(parse("1e999"), ParseError);
  try {
    parse("1 + sin(x)");
    FAIL();
  } catch (const UnknownIdentifier& e) {
    EXPECT_EQ(e.name(), "sin");
    EXPECT_EQ(e.offset(), 4u);
  }
  try {
    parse("(x + 1");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.offset(), 6u);
  }
}

TEST(Evaluate, Examples) {
  EXPECT_EQ(evaluate(parse("exp(x)"), 0.0), 1.0);
  EXPECT_NEAR(evaluate(parse("exp(2*x)"), 0.5), std::numbers::e, 4e-16 * std::numbers::e);
  EXPECT_THROW(evaluate(parse("ln(x)"), 0.5), PositivityError);
}

TEST(Evaluate, DomainErrors) {
  EXPECT_THROW(evaluate(parse("ln(x)+2"), 0.0), DomainError);
  EXPECT_THROW(evaluate(parse("sqrt(x-1)+1"), 0.0), DomainError);
  EXPECT_THROW(evaluate(parse("1/x"), 0.0), DomainError);
  EXPECT_THROW(evaluate(parse("x^(-1)"), 0.0), DomainError);
  EXPECT_THROW(evaluate(parse("(x-1)^0.5"), 0.0), DomainError);
  EXPECT_THROW(evaluate(parse("exp(exp(x))"), 10.0), DomainError);
  EXPECT_THROW(evaluate(parse("x"), 0.0), PositivityError);
  EXPECT_THROW(evaluate(parse("x"), std::nan("")), InvalidArgument);
  // Negative base with integral exponent is fine.
  EXPECT_DOUBLE_EQ(evaluate(parse("(x-2)^2"), 0.0), 4.0);
}

TEST(Family, Instantiate) {
  EXPECT_EQ(family_instantiate({"const", {{"c", 1.0}}}), parse("1"));
  const auto f = family_instantiate({"exp_linear", {{"k", 1.0}}});
  const auto g = parse("exp(x)");
  for (double v : {0.0, 0.5, 1.0}) EXPECT_NEAR(f(v), g(v), 1e-15 * g(v));
  EXPECT_THROW(family_instantiate({"exp_affine", {{"c", -1.0}, {"k", 1.0}}}), InvalidArgument);
  EXPECT_THROW(family_instantiate({"poly_shift", {{"p", 2.0}, {"q", 0.0}}}), InvalidArgument);
  EXPECT_THROW(family_instantiate({"nope", {}}), InvalidArgument);
  EXPECT_THROW(family_instantiate({"const", {{"k", 1.0}}}), InvalidArgument);
  EXPECT_THROW(family_instantiate({"const", {{"c", 1.0}, {"k", 1.0}}}), InvalidArgument);
  EXPECT_DOUBLE_EQ(family_instantiate({"poly_shift", {{"p", 2.0}, {"q", 1.0}}})(2.0), 5.0);
  EXPECT_DOUBLE_EQ(family_instantiate({"exp_affine", {{"c", 0.5}, {"k", 0.0}}})(3.0), 0.5);
}

TEST(Family, ParseText) {
  const FamilySpec spec = parse_family(" exp_affine( c = 0.5 , k=-1 ) ");
  EXPECT_EQ(spec.name, "exp_affine");
  EXPECT_EQ(spec.params.at("c"), 0.5);
  EXPECT_EQ(spec.params.at("k"), -1.0);
  EXPECT_EQ(parse_family(spec.to_string()), spec);
  EXPECT_THROW(parse_family("const"), InvalidArgument);
  EXPECT_THROW(parse_family("const(c=abc)"), InvalidArgument);
  EXPECT_THROW(parse_family("const(c=-2)"), InvalidArgument);
}

TEST(FuncspecProperty, ExpLinearMatchesStdExp) {
  const auto ulp_distance = [](double a, double b) {
    return std::abs(a - b) / (std::nextafter(std::abs(b), INFINITY) - std::abs(b));
  };
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> kd(-3.0, 3.0), xd(0.0, 3.0);
  for (int i = 0; i < 1000; ++i) {
    const double k = kd(rng), xv = xd(rng);
    const auto f = family_instantiate({"exp_linear", {{"k", k}}});
    EXPECT_LE(ulp_distance(evaluate(f, xv), std::exp(k * xv)), 2.0) << "k=" << k << " x=" << xv;
  }
}

// Random expression trees: unparse then reparse must agree extensionally.
namespace {

FunctionExpr random_tree(std::mt19937_64& rng, int depth) {
  std::uniform_int_distribution<int> pick(0, depth <= 0 ? 1 : 9);
  std::uniform_real_distribution<double> val(-3.0, 3.0);
  switch (pick(rng)) {
    case 0: return FunctionExpr::constant(val(rng));
    case 1: return FunctionExpr::variable();
    case 2: return FunctionExpr::unary(NodeKind::Neg, random_tree(rng, depth - 1));
    case 3: return FunctionExpr::unary(NodeKind::Exp, random_tree(rng, depth - 1));
    case 4: return FunctionExpr::unary(NodeKind::Ln, random_tree(rng, depth - 1));
    case 5: return FunctionExpr::unary(NodeKind::Sqrt, random_tree(rng, depth - 1));
    case 6: return FunctionExpr::binary(NodeKind::Add, random_tree(rng, depth - 1), random_tree(rng, depth - 1));
    case 7: return FunctionExpr::binary(NodeKind::Sub, random_tree(rng, depth - 1), random_tree(rng, depth - 1));
    case 8: return FunctionExpr::binary(NodeKind::Mul, random_tree(rng, depth - 1), random_tree(rng, depth - 1));
    default: return FunctionExpr::binary(NodeKind::Pow, random_tree(rng, depth - 1), random_tree(rng, depth - 1));
  }
}

}  // namespace

TEST(FuncspecProperty, UnparseReparseIsExtensionallyEqual) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> xd(0.0, 3.0);
  int compared = 0;
  for (int tree = 0; tree < 300; ++tree) {
    const FunctionExpr f = random_tree(rng, 4);
    const FunctionExpr g = parse(f.to_string());
    EXPECT_EQ(parse(g.to_string()), g);
    for (int i = 0; i < 100; ++i) {
      const double xv = xd(rng);
      double fv = 0.0, gv = 0.0;
      bool f_ok = true, g_ok = true;
      try { fv = f.eval_raw(xv); } catch (const DomainError&) { f_ok = false; }
      try { gv = g.eval_raw(xv); } catch (const DomainError&) { g_ok = false; }
      ASSERT_EQ(f_ok, g_ok) << f.to_string() << " at " << xv;
      if (f_ok) {
        EXPECT_NEAR(fv, gv, 1e-15 * std::abs(fv)) << f.to_string();
        ++compared;
      }
    }
  }
  EXPECT_GT(compared, 5000);
}
