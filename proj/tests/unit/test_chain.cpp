#include <cmath>
#include <sstream>

#include "cyclic/chain/cyclic_sampler.hpp"
#include "cyclic/chain/io.hpp"
#include "cyclic/samplers/synthetic.hpp"
#include "doctest.h"
#include "support/expect.hpp"
#include "support/oracles.hpp"

using namespace cyclic;
using testing::code_of;

namespace {

/// Adds 1 in every phase and records the running count; fails on request.
struct CounterSampler {
  using State = int;
  int k = 2;
  int fail_at_phase = 0;
  long fail_after = -1;

  int cycle_length() const { return k; }
  std::size_t output_dim() const { return 1; }
  void step(int& x, int phase, Rng&) const {
    if (phase == fail_at_phase && x >= fail_after) fail(ErrorCode::InvalidState, "boom");
    ++x;
  }
  void evaluate(const int& x, std::span<double> out) const { out[0] = x; }
};

static_assert(CyclicSampler<CounterSampler>);
static_assert(CyclicSampler<FlipSampler>);

SampleMatrix random_samples(oracle::Gen& gen, std::size_t n, std::size_t d, int k, int offset) {
  std::vector<double> v(n * d);
  for (auto& x : v) x = gen.normal();
  return SampleMatrix(d, k, offset, v);
}

}  // namespace

TEST_SUITE("chain") {
  TEST_CASE("runner records f after each kernel and tracks phases") {
    Rng rng(1);
    const SampleMatrix s = run_chain(CounterSampler{}, 0, 5, 0, rng);
    REQUIRE(s.rows() == 5);
    CHECK(s(0, 0) == 1.0);
    CHECK(s(1, 0) == 2.0);
    CHECK(s(2, 0) == 3.0);
    for (std::size_t r = 0; r < 5; ++r) CHECK(s.phase_of(r) == (r % 2 == 0 ? 1 : 2));
    CHECK(s.time_class_of(0) == 1);
    CHECK(s.time_class_of(1) == 0);
  }

  TEST_CASE("burn-in shifts the phase offset") {
    Rng rng(1);
    const SampleMatrix s = run_chain(CounterSampler{3}, 0, 4, 4, rng);
    CHECK(s.phase_offset() == 2);
    CHECK(s(0, 0) == 5.0);
    CHECK(s.phase_of(0) == 2);
    CHECK(s.phase_of(2) == 1);
  }

  TEST_CASE("kernel errors surface as StepFailure with phase and iteration") {
    Rng rng(1);
    CounterSampler bad{3, 2, 4};
    try {
      run_chain(bad, 0, 20, 0, rng);
      FAIL("expected StepFailure");
    } catch (const StepFailure& e) {
      CHECK(e.code() == ErrorCode::StepFailure);
      CHECK(e.phase() == 2);
      CHECK(e.iteration() == 4);
    }
  }

  TEST_CASE("run_chain rejects n = 0") {
    Rng rng(1);
    CHECK(code_of([&] { run_chain(CounterSampler{}, 0, 0, 0, rng); }) == ErrorCode::DomainError);
  }

  TEST_CASE("growing a chain in segments equals one long run") {
    const FlipSampler sampler(FlipChainSpec{0.25, 0.5});
    Rng a(9, 2);
    Rng b(9, 2);
    ChainRunner<FlipSampler> runner(sampler, 1, a);
    runner.advance(101);
    runner.advance_to(250);
    runner.advance_to(200);
    runner.advance(99);
    const SampleMatrix whole = run_chain(sampler, 1, 349, 0, b);
    CHECK(runner.samples() == whole);
    CHECK(a == b);
    CHECK(runner.next_phase() == 2);
  }

  TEST_CASE("append rejects non-finite rows and wrong widths") {
    SampleMatrix s(2, 1, 1);
    const double bad[2] = {1.0, NAN};
    CHECK_THROWS(s.append(bad));
    const double narrow[1] = {1.0};
    CHECK_THROWS(s.append(narrow));
  }

  TEST_CASE("subchains re-interleave to the original chain") {
    oracle::Gen gen(31);
    for (int trial = 0; trial < 60; ++trial) {
      const int k = gen.integer(1, 5);
      const int offset = gen.integer(1, k);
      const auto n = static_cast<std::size_t>(gen.integer(k, 40));
      const auto d = static_cast<std::size_t>(gen.integer(1, 3));
      const SampleMatrix s = random_samples(gen, n, d, k, offset);
      std::vector<SampleMatrix> subs;
      std::vector<std::size_t> next(static_cast<std::size_t>(k), 0);
      for (int p = 1; p <= k; ++p) subs.push_back(subchain_view(s, p));
      std::size_t total = 0;
      for (const auto& sub : subs) {
        CHECK(sub.cycle_length() == 1);
        total += sub.rows();
      }
      CHECK(total == n);
      for (std::size_t r = 0; r < n; ++r) {
        const auto p = static_cast<std::size_t>(s.phase_of(r) - 1);
        const auto row = subs[p].row(next[p]++);
        for (std::size_t c = 0; c < d; ++c) CHECK(row[c] == s(r, c));
      }
    }
  }

  TEST_CASE("subchain_view errors") {
    const SampleMatrix s(1, 3, 1, {1.0, 2.0});
    CHECK(code_of([&] { subchain_view(s, 0); }) == ErrorCode::DomainError);
    CHECK(code_of([&] { subchain_view(s, 4); }) == ErrorCode::DomainError);
    CHECK(code_of([&] { subchain_view(s, 3); }) == ErrorCode::EmptySelection);
  }

  TEST_CASE("CSV round trip is exact") {
    oracle::Gen gen(32);
    const SampleMatrix s = random_samples(gen, 57, 3, 4, 3);
    std::stringstream ss;
    write_csv(ss, s);
    const std::string text = ss.str();
    CHECK(text.rfind("t,phase,f1,f2,f3\n", 0) == 0);
    const SampleMatrix back = read_csv(ss, 4);
    CHECK(back == s);
  }

  TEST_CASE("CSV parse errors") {
    std::stringstream bad("t,phase,f1\n1,1,abc\n");
    CHECK(code_of([&] { read_csv(bad, 2); }) == ErrorCode::ParseError);
  }

  TEST_CASE("binary round trip is exact") {
    oracle::Gen gen(33);
    const SampleMatrix s = random_samples(gen, 91, 2, 3, 2);
    std::stringstream ss;
    write_binary(ss, s);
    CHECK(read_binary(ss) == s);
    std::stringstream garbage("not a sample file");
    CHECK(code_of([&] { read_binary(garbage); }) == ErrorCode::ParseError);
  }
}
