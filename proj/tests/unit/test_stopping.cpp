#include <cmath>
#include <sstream>

#include "cyclic/chain/cyclic_sampler.hpp"
#include "cyclic/estimators/ess.hpp"
#include "cyclic/samplers/synthetic.hpp"
#include "cyclic/stopping/stopping.hpp"
#include "doctest.h"
#include "json.hpp"
#include "support/expect.hpp"
#include "support/oracles.hpp"

using namespace cyclic;
using testing::code_of;

namespace {

StopConfig flip_config(double epsilon) {
  StopConfig cfg;
  cfg.alpha = 0.1;
  cfg.epsilon = epsilon;
  return cfg;
}

}  // namespace

TEST_SUITE("stopping") {
  TEST_CASE("check schedule grows geometrically") {
    StopConfig cfg;
    CHECK(cfg.first_check() == 1000);
    std::vector<std::size_t> seen{cfg.first_check()};
    for (int i = 0; i < 3; ++i) seen.push_back(cfg.next_check(seen.back()));
    CHECK(seen == std::vector<std::size_t>{1000, 1200, 1440, 1728});
    cfg.n0 = 50;
    CHECK(cfg.first_check() == 1000);
    cfg.n_start = 77;
    CHECK(cfg.first_check() == 77);
    cfg.check_growth = 1.0001;
    CHECK(cfg.next_check(5) == 6);
  }

  TEST_CASE("config validation") {
    StopConfig cfg;
    cfg.epsilon = 0.0;
    CHECK(code_of([&] { cfg.validate(); }) == ErrorCode::ConfigError);
    cfg = StopConfig{};
    cfg.alpha = 1.0;
    CHECK(code_of([&] { cfg.validate(); }) == ErrorCode::ConfigError);
    cfg = StopConfig{};
    cfg.check_growth = 1.0;
    CHECK(code_of([&] { cfg.validate(); }) == ErrorCode::ConfigError);
  }

  TEST_CASE("the rule never holds before n0") {
    oracle::Gen gen(91);
    std::vector<double> v(900);
    for (auto& x : v) x = gen.normal();
    const SampleMatrix s(1, 1, 1, v);
    StopConfig cfg;
    cfg.epsilon = 1e6;
    cfg.n0 = 1000;
    const StopCheck c = stop_rule_holds(s, cfg);
    CHECK_FALSE(c.holds);
    CHECK(c.lhs > c.rhs);
    cfg.n0 = 500;
    CHECK(stop_rule_holds(s, cfg).holds);
  }

  TEST_CASE("degenerate inputs give a reason instead of a stop") {
    const SampleMatrix tiny(2, 1, 1, {1, 2, 3, 4, 5, 6});
    const StopCheck c = stop_rule_holds(tiny, StopConfig{});
    CHECK_FALSE(c.holds);
    CHECK_FALSE(c.reason.empty());
    const SampleMatrix flat(1, 1, 1, std::vector<double>(2000, 1.0));
    const StopCheck f = stop_rule_holds(flat, StopConfig{});
    CHECK_FALSE(f.holds);
    CHECK(f.reason.find("singular") != std::string::npos);
  }

  TEST_CASE("one-dimensional left side is the interval length") {
    const FlipSampler sampler = make_flip_chain(FlipChainSpec{0.25, 0.5});
    Rng rng(92);
    const SampleMatrix s = run_chain(sampler, 1, 5000, 0, rng);
    StopConfig cfg = flip_config(0.05);
    const StopCheck c = stop_rule_holds(s, cfg);
    const BatchPlan plan = BatchPlan::for_samples(s.rows());
    const ConfidenceRegion r = confidence_region(s, plan, 0.1);
    const double half_width = std::sqrt(r.radius2 * r.shape.value()(0, 0));
    CHECK(c.volume == doctest::Approx(2.0 * half_width).epsilon(1e-12));
    CHECK(c.lhs == doctest::Approx(2.0 * half_width + 1.0 / 5000.0).epsilon(1e-12));
    const double psi = sample_mean_cov(s).psi.value(0, 0);
    CHECK(c.rhs == doctest::Approx(0.05 * std::sqrt(psi)).epsilon(1e-12));
    cfg.scaling = Scaling::unit;
    CHECK(stop_rule_holds(s, cfg).rhs == 0.05);
  }

  TEST_CASE("ESS threshold") {
    CHECK(std::abs(ess_threshold(0.1, 2, 0.05) - 5786.8) < 0.5);
    CHECK(std::abs(ess_threshold(0.1, 1, 0.05) - 4328.9) < 0.5);
    CHECK(ess_threshold(0.1, 3, 0.025) ==
          doctest::Approx(4.0 * ess_threshold(0.1, 3, 0.05)).epsilon(1e-12));
    CHECK(code_of([] { ess_threshold(0.1, 1, 0.0); }) == ErrorCode::DomainError);
  }

  TEST_CASE("flip chain stops near the predicted length") {
    // With Ψ = 1 and Σ = 1.5 the interval shrinks below ε at about
    // 4·χ²_{0.9,1}·Σ/ε² draws.
    const double predicted = ess_threshold(0.1, 1, 0.05) * 1.5;
    CHECK(predicted == doctest::Approx(6493.0).epsilon(1e-3));
    const FlipSampler sampler = make_flip_chain(FlipChainSpec{0.25, 0.5});
    double total = 0.0;
    constexpr int kReps = 20;
    for (int rep = 0; rep < kReps; ++rep) {
      Rng rng(93, static_cast<std::uint64_t>(rep));
      const StopReport r = run_until_stop(sampler, 1, flip_config(0.05), rng);
      CHECK(r.stopped);
      CHECK(r.checks.back().holds);
      for (std::size_t i = 0; i + 1 < r.checks.size(); ++i) CHECK_FALSE(r.checks[i].holds);
      CHECK(r.n_eps == r.checks.back().n);
      CHECK(r.ess_at_stop >= 0.8 * ess_threshold(0.1, 1, 0.05));
      CHECK(r.phase_counts[0] + r.phase_counts[1] == r.n_eps);
      total += static_cast<double>(r.n_eps);
    }
    const double mean_n = total / kReps;
    CHECK(mean_n > 0.5 * predicted);
    CHECK(mean_n < 2.0 * predicted);
  }

  TEST_CASE("runs are deterministic and monotone in epsilon") {
    const FlipSampler sampler = make_flip_chain(FlipChainSpec{0.25, 0.5});
    std::size_t previous = 0;
    for (double eps : {0.2, 0.1, 0.05}) {
      Rng a(94);
      Rng b(94);
      const StopReport ra = run_until_stop(sampler, 1, flip_config(eps), a);
      const StopReport rb = run_until_stop(sampler, 1, flip_config(eps), b);
      CHECK(ra.n_eps == rb.n_eps);
      CHECK(ra.estimate == rb.estimate);
      CHECK(ra.n_eps >= previous);
      previous = ra.n_eps;
    }
  }

  TEST_CASE("budget exhaustion carries the partial report") {
    const FlipSampler sampler = make_flip_chain(FlipChainSpec{0.25, 0.5});
    StopConfig cfg = flip_config(0.001);
    cfg.max_n = 3000;
    Rng rng(95);
    try {
      run_until_stop(sampler, 1, cfg, rng);
      FAIL("expected BudgetExceeded");
    } catch (const BudgetExceeded& e) {
      CHECK(e.code() == ErrorCode::BudgetExceeded);
      CHECK_FALSE(e.partial().stopped);
      CHECK(e.partial().n_eps <= 3000);
      CHECK(e.partial().n_eps > 0);
      CHECK(e.partial().checks.size() >= 1);
    }
  }

  TEST_CASE("report serialization") {
    const FlipSampler sampler = make_flip_chain(FlipChainSpec{0.25, 0.5});
    Rng rng(96);
    const StopReport r = run_until_stop(sampler, 1, flip_config(0.1), rng);
    const auto j = nlohmann::json::parse(to_json(r));
    CHECK(j.at("stopped").get<bool>());
    CHECK(j.at("n_eps").get<std::size_t>() == r.n_eps);
    CHECK(j.at("checks").size() == r.checks.size());
    CHECK(j.at("region").at("dof").get<std::size_t>() == r.region->dof);
    std::ostringstream os;
    write_checks_csv(os, r.checks);
    const std::string text = os.str();
    CHECK(text.rfind("n,lhs,rhs,holds\n1000,", 0) == 0);
    CHECK(text.substr(text.size() - 2) == "1\n");
  }
}
