#include <benchmark/benchmark.h>

#include <complex>
#include <vector>

#include "scfact/engine.hpp"
#include "scfact/factorizer.hpp"

namespace {

using namespace scf;

std::vector<RingElement> ints(const Ring& ring, std::initializer_list<long> xs) {
  std::vector<RingElement> out;
  for (long x : xs) out.push_back(ring.from_int(x));
  return out;
}

Recurrence zp_rec(long m, std::string_view g) {
  AlgebraContext ctx(RingDescriptor::integers_mod(m), 1);
  const Ring& r = ctx.ring();
  std::vector<Expr> exprs{parse_expr(g, 1)};
  return Recurrence(ctx, constant_seqs(ints(r, {0, 2, 1})), constant_seqs(ints(r, {1, -1, -1})),
                    GMapSpec::expression(exprs));
}

void BM_UnitRootsZp(benchmark::State& state) {
  Ring ring(RingDescriptor::integers_mod(state.range(0)));
  Polynomial p(ring, ints(ring, {-1, -2, 0, 1})), q(ring, ints(ring, {-1, -1, 1}));
  for (auto _ : state) benchmark::DoNotOptimize(unit_roots(p, q));
}
BENCHMARK(BM_UnitRootsZp)->Arg(101)->Arg(10007)->Arg(100003);

void BM_FactorChain(benchmark::State& state) {
  auto rec = zp_rec(11, "u1*u1*u1+2*u1+1");
  for (auto _ : state) benchmark::DoNotOptimize(factor_chain(rec));
}
BENCHMARK(BM_FactorChain);

void BM_VerifyChain(benchmark::State& state) {
  auto chain = factor_chain(zp_rec(11, "u1*u1*u1+2*u1+1"));
  const auto& ctx = chain.base.ctx();
  std::vector<ModuleElement> init{ctx.vector({ctx.ring().from_int(3)}), ctx.vector({ctx.ring().from_int(1)}),
                                  ctx.vector({ctx.ring().from_int(4)})};
  for (auto _ : state) benchmark::DoNotOptimize(verify_equivalence(chain, init, state.range(0)));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_VerifyChain)->Arg(200)->Arg(2000);

void BM_SimulateRational(benchmark::State& state) {
  AlgebraContext ctx(RingDescriptor::rational(), 1);
  const Ring& r = ctx.ring();
  std::vector<Expr> exprs{parse_expr("u1/2+1", 1)};
  Recurrence rec(ctx, constant_seqs(ints(r, {0, 1, 0})), constant_seqs(ints(r, {1, 0, -1})),
                 GMapSpec::expression(exprs));
  std::vector<ModuleElement> init{ctx.vector({r.zero()}), ctx.vector({r.one()}), ctx.vector({r.parse("1/3")})};
  for (auto _ : state) benchmark::DoNotOptimize(simulate(rec, init, state.range(0)));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_SimulateRational)->Arg(100)->Arg(400);

void BM_QuaternionCertificate(benchmark::State& state) {
  AlgebraContext ctx(RingDescriptor::rational_quaternion(), 1);
  const Ring& q = ctx.ring();
  auto a = q.parse("1+2i+j");
  auto b = -*q.invert(a);
  std::vector<Expr> exprs{parse_expr("u1/2+1", 1)};
  Recurrence rec(ctx, {CoeffSeq::periodic({a, b}), CoeffSeq::constant(q.zero()), CoeffSeq::constant(q.zero())},
                 constant_seqs(ints(q, {1, 0, 1})), GMapSpec::expression(exprs));
  std::vector<RingElement> seed{a, b};
  for (auto _ : state) benchmark::DoNotOptimize(variable_certificate(rec, seed, 64));
}
BENCHMARK(BM_QuaternionCertificate);

void BM_ParseAndEval(benchmark::State& state) {
  AlgebraContext ctx(RingDescriptor::integers_mod(1000003), 2);
  auto x = ctx.vector({ctx.ring().from_int(12345), ctx.ring().from_int(678)});
  SequenceBindings seqs{{"c", CoeffSeq::periodic(ints(ctx.ring(), {2, 3, 5}))}};
  for (auto _ : state) {
    auto e = parse_expr("c[n]*u1*u1/u2 - inv(u1+u2) + 7", 2);
    benchmark::DoNotOptimize(eval_expr(e, x, 4, seqs, ctx));
  }
}
BENCHMARK(BM_ParseAndEval);

void BM_ComplexRoots(benchmark::State& state) {
  std::vector<std::complex<double>> c(static_cast<std::size_t>(state.range(0)) + 1, 0.0);
  c.front() = -1.0;
  c.back() = 1.0;  // roots of unity
  for (auto _ : state) benchmark::DoNotOptimize(complex_roots(c));
}
BENCHMARK(BM_ComplexRoots)->Arg(3)->Arg(8)->Arg(16);

}  // namespace

BENCHMARK_MAIN();
