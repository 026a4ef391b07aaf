#include "scfact/gmap.hpp"

#include <gtest/gtest.h>

#include <cmath>

#include "support.hpp"

namespace scf {
namespace {

using testing::make_rng;
using testing::random_element;

RingElement eval1(const AlgebraContext& ctx, std::string_view src, std::vector<RingElement> args, long n = 0,
                  const SequenceBindings& seqs = {}) {
  return eval_expr(parse_expr(src, ctx.module_dim()), ctx.vector(std::move(args)), n, seqs, ctx);
}

Errc error_code(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return Errc::IoError;
}

TEST(ParseExpr, PrecedenceAndAssociativity) {
  AlgebraContext ctx(RingDescriptor::rational(), 2);
  const Ring& r = ctx.ring();
  auto args = std::vector<RingElement>{r.from_int(3), r.from_int(5)};
  EXPECT_EQ(eval1(ctx, "1+2*u1", args), r.from_int(7));
  EXPECT_EQ(eval1(ctx, "(1+2)*u1", args), r.from_int(9));
  EXPECT_EQ(eval1(ctx, "u2-u1-1", args), r.from_int(1));
  EXPECT_EQ(eval1(ctx, "u2/u1/u1", args), r.parse("5/9"));
  EXPECT_EQ(eval1(ctx, "-u1*u2", args), r.from_int(-15));
  EXPECT_EQ(eval1(ctx, "--u1", args), r.from_int(3));
  EXPECT_EQ(eval1(ctx, " u1 * inv( u2 ) ", args), r.parse("3/5"));
}

TEST(ParseExpr, FormatRoundTrips) {
  for (std::string_view src : {"u1*u1", "c[n]*u1/u2", "inv(u1+1)-3", "-(u1-u2)*2", "tanh(u1)", "u1-(u2-u1)"}) {
    auto e = parse_expr(src, 2);
    EXPECT_EQ(parse_expr(format_expr(e), 2), e) << src << " -> " << format_expr(e);
  }
}

TEST(ParseExpr, SyntaxErrorsCarryOffsets) {
  struct Case {
    std::string_view src;
    long offset;
  };
  for (auto c : {Case{"u1+", 3}, Case{"u1 * * u2", 5}, Case{"(u1", 3}, Case{"u1)", 2}, Case{"c[m]", 2}}) {
    try {
      parse_expr(c.src, 2);
      ADD_FAILURE() << c.src;
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), Errc::SyntaxError) << c.src;
      EXPECT_EQ(e.index(), c.offset) << c.src << ": " << e.what();
    }
  }
}

TEST(ParseExpr, VariableIndexMustFitTheModule) {
  EXPECT_EQ(error_code([] { parse_expr("u3", 2); }), Errc::UnknownIdentifier);
  EXPECT_EQ(error_code([] { parse_expr("u0", 2); }), Errc::UnknownIdentifier);
  EXPECT_EQ(error_code([] { parse_expr("sin(u1)", 1); }), Errc::UnknownIdentifier);
  EXPECT_EQ(max_variable(parse_expr("u1*u2+1", 2)), 2u);
}

TEST(EvalExpr, SequencesAreCycledByStep) {
  AlgebraContext ctx(RingDescriptor::rational(), 1);
  const Ring& r = ctx.ring();
  SequenceBindings seqs{{"c", CoeffSeq::periodic({r.from_int(2), r.from_int(3), r.from_int(5)})}};
  for (long n = 0; n < 9; ++n) EXPECT_EQ(eval1(ctx, "c[n]*u1", {r.one()}, n, seqs), seqs.at("c").at(n));
  std::set<std::string> names;
  collect_sequences(parse_expr("c[n]+d[n]*c[n]", 1), names);
  EXPECT_EQ(names, (std::set<std::string>{"c", "d"}));
  EXPECT_EQ(error_code([&] { eval1(ctx, "d[n]", {r.one()}, 0, seqs); }), Errc::UnknownIdentifier);
}

TEST(EvalExpr, DivisionByNonUnitReportsStep) {
  AlgebraContext ctx(RingDescriptor::integers_mod(12), 1);
  const Ring& r = ctx.ring();
  EXPECT_EQ(eval1(ctx, "1/u1", {r.from_int(5)}), r.from_int(5));
  try {
    eval1(ctx, "1/u1", {r.from_int(4)}, 17);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::DivisionByNonUnit);
    EXPECT_EQ(e.index(), 17);
  }
}

TEST(EvalExpr, QuaternionDivisionIsOnTheRight) {
  AlgebraContext ctx(RingDescriptor::rational_quaternion(), 2);
  const Ring& r = ctx.ring();
  auto rng = make_rng(31);
  for (int trial = 0; trial < 50; ++trial) {
    auto x = random_element(r, rng), y = random_element(r, rng);
    auto inv = r.invert(y);
    if (!inv) continue;
    EXPECT_EQ(eval1(ctx, "u1/u2", {x, y}), x * *inv);
    EXPECT_EQ(eval1(ctx, "u1*u2", {x, y}), x * y);
  }
}

TEST(EvalExpr, TanhNeedsARealFloat) {
  AlgebraContext fc(RingDescriptor::float_complex(1e-9), 1);
  auto v = eval1(fc, "tanh(u1)", {RingElement(std::complex<double>(0.5, 0.0))});
  EXPECT_NEAR(std::get<std::complex<double>>(v.payload()).real(), std::tanh(0.5), 1e-15);
  EXPECT_EQ(error_code([&] { eval1(fc, "tanh(u1)", {RingElement(std::complex<double>(0.5, 0.5))}); }),
            Errc::TanhUnsupported);
  AlgebraContext q(RingDescriptor::rational(), 1);
  EXPECT_EQ(error_code([&] { eval1(q, "tanh(u1)", {q.ring().one()}); }), Errc::TanhUnsupported);
}

TEST(EvalExpr, IntegerLiteralsReduceModM) {
  AlgebraContext ctx(RingDescriptor::integers_mod(7), 1);
  EXPECT_EQ(eval1(ctx, "100*u1", {ctx.ring().one()}), ctx.ring().from_int(2));
}

TEST(CoeffSeq, ConstantAndPeriodicLookup) {
  Ring r(RingDescriptor::rational());
  auto c = CoeffSeq::constant(r.from_int(4));
  EXPECT_TRUE(c.is_constant());
  EXPECT_EQ(c.at(-3), r.from_int(4));
  auto p = CoeffSeq::periodic({r.from_int(1), r.from_int(-1)});
  EXPECT_EQ(p.at(0), r.from_int(1));
  EXPECT_EQ(p.at(5), r.from_int(-1));
  EXPECT_EQ(p.at(-1), r.from_int(-1));
  EXPECT_EQ(p.period(), 2u);
}

}  // namespace
}  // namespace scf
