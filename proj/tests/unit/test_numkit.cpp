#include <boost/math/distributions/chi_squared.hpp>
#include <boost/math/distributions/fisher_f.hpp>
#include <boost/math/distributions/students_t.hpp>
#include <boost/math/special_functions/beta.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <cmath>

#include "cyclic/numkit/linalg.hpp"
#include "cyclic/numkit/random.hpp"
#include "cyclic/numkit/special.hpp"
#include "doctest.h"
#include "support/expect.hpp"
#include "support/oracles.hpp"

using namespace cyclic;

using testing::code_of;

TEST_SUITE("numkit") {
  TEST_CASE("cholesky of the identity is the identity") {
    CHECK(cholesky(Matrix::identity(3)) == Matrix::identity(3));
  }

  TEST_CASE("cholesky of a 2x2 matches the hand expansion") {
    const Matrix l = cholesky(Matrix{{4, 2}, {2, 3}});
    CHECK(l(0, 0) == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(l(0, 1) == 0.0);
    CHECK(l(1, 0) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(l(1, 1) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
  }

  TEST_CASE("cholesky rejects an indefinite matrix") {
    CHECK(code_of([] { cholesky(Matrix{{1, 2}, {2, 1}}); }) == ErrorCode::NotPositiveDefinite);
    CHECK_FALSE(SpdMatrix::try_make(Matrix{{1, 2}, {2, 1}}).has_value());
  }

  TEST_CASE("cholesky reconstructs random SPD matrices and agrees with Eigen") {
    oracle::Gen gen(11);
    for (int trial = 0; trial < 100; ++trial) {
      const auto d = static_cast<std::size_t>(gen.integer(1, 8));
      const Matrix m = oracle::random_spd(gen, d);
      const Matrix l = cholesky(m);
      for (std::size_t i = 0; i < d; ++i) CHECK(l(i, i) > 0.0);
      const Matrix back = l * l.transpose();
      CHECK(frobenius_norm(back - m) <= 1e-10 * frobenius_norm(m));
      const Eigen::MatrixXd le = oracle::to_eigen(m).llt().matrixL();
      CHECK(oracle::rel_diff(oracle::to_eigen(l), le) < 1e-10);
    }
  }

  TEST_CASE("det, log-det and inverse examples") {
    SUBCASE("identity") {
      const auto r = det_logdet_inverse(SpdMatrix(Matrix::identity(4)));
      CHECK(r.determinant == doctest::Approx(1.0));
      CHECK(r.log_determinant == doctest::Approx(0.0));
      CHECK(frobenius_norm(r.inverse.value() - Matrix::identity(4)) < 1e-14);
    }
    SUBCASE("diagonal") {
      const auto r = det_logdet_inverse(SpdMatrix(Matrix{{2, 0}, {0, 8}}));
      CHECK(r.determinant == doctest::Approx(16.0).epsilon(1e-14));
      CHECK(r.log_determinant == doctest::Approx(std::log(16.0)).epsilon(1e-14));
      CHECK(r.inverse.value()(0, 0) == doctest::Approx(0.5));
      CHECK(r.inverse.value()(1, 1) == doctest::Approx(0.125));
    }
    SUBCASE("dense 2x2") {
      const auto r = det_logdet_inverse(SpdMatrix(Matrix{{4, 2}, {2, 3}}));
      CHECK(r.determinant == doctest::Approx(8.0).epsilon(1e-14));
      CHECK(r.log_determinant == doctest::Approx(std::log(8.0)).epsilon(1e-14));
      const Matrix& inv = r.inverse.value();
      CHECK(inv(0, 0) == doctest::Approx(0.375).epsilon(1e-14));
      CHECK(inv(0, 1) == doctest::Approx(-0.25).epsilon(1e-14));
      CHECK(inv(1, 0) == doctest::Approx(-0.25).epsilon(1e-14));
      CHECK(inv(1, 1) == doctest::Approx(0.5).epsilon(1e-14));
    }
  }

  TEST_CASE("inverse times matrix is the identity on random SPD input") {
    oracle::Gen gen(12);
    for (int trial = 0; trial < 100; ++trial) {
      const auto d = static_cast<std::size_t>(gen.integer(1, 8));
      const SpdMatrix m(oracle::random_spd(gen, d));
      const auto r = det_logdet_inverse(m);
      CHECK(r.determinant == doctest::Approx(std::exp(r.log_determinant)).epsilon(1e-12));
      CHECK(r.determinant ==
            doctest::Approx(oracle::to_eigen(m.value()).determinant()).epsilon(1e-9));
      const Matrix prod = m.value() * r.inverse.value();
      CHECK(frobenius_norm(prod - Matrix::identity(d)) < 1e-8);
    }
  }

  TEST_CASE("solve and quadratic form agree with the explicit inverse") {
    oracle::Gen gen(13);
    for (int trial = 0; trial < 50; ++trial) {
      const auto d = static_cast<std::size_t>(gen.integer(1, 6));
      const SpdMatrix m(oracle::random_spd(gen, d));
      Vector b(d);
      for (auto& v : b) v = gen.normal();
      const Eigen::VectorXd ref = oracle::to_eigen(m.value()).ldlt().solve(oracle::to_eigen(b));
      const Vector x = m.solve(b);
      for (std::size_t i = 0; i < d; ++i) CHECK(x[i] == doctest::Approx(ref[i]).epsilon(1e-9));
      CHECK(m.inverse_quadratic_form(b) ==
            doctest::Approx(oracle::to_eigen(b).dot(ref)).epsilon(1e-9));
    }
  }

  TEST_CASE("chi-square quantile examples") {
    CHECK(std::abs(chisq_quantile(0.90, 2) - 4.605170186) < 1e-8);
    CHECK(std::abs(chisq_quantile(0.50, 2) - 1.386294361) < 1e-8);
    CHECK(std::abs(chisq_quantile(0.90, 1) - 2.705543454) < 1e-8);
    CHECK(code_of([] { chisq_quantile(0.0, 2); }) == ErrorCode::DomainError);
    CHECK(code_of([] { chisq_quantile(1.0, 2); }) == ErrorCode::DomainError);
    CHECK(code_of([] { chisq_quantile(-0.5, 2); }) == ErrorCode::DomainError);
  }

  TEST_CASE("chi-square quantile inverts the regularized gamma and matches Boost") {
    for (double dof : {1.0, 2.0, 3.0, 5.0, 10.0, 40.0}) {
      for (double p : {0.01, 0.1, 0.5, 0.8, 0.9, 0.95, 0.99}) {
        const double x = chisq_quantile(p, dof);
        CHECK(std::abs(regularized_gamma_p(dof / 2.0, x / 2.0) - p) < 1e-10);
        const double ref = quantile(boost::math::chi_squared_distribution<double>(dof), p);
        CHECK(x == doctest::Approx(ref).epsilon(1e-9));
      }
    }
  }

  TEST_CASE("special functions agree with Boost") {
    for (double a : {0.3, 1.0, 2.5, 13.5}) {
      for (double x : {0.01, 0.5, 2.0, 10.0, 40.0}) {
        CHECK(regularized_gamma_p(a, x) ==
              doctest::Approx(boost::math::gamma_p(a, x)).epsilon(1e-11));
      }
    }
    for (double a : {0.5, 1.0, 4.0, 30.0}) {
      for (double b : {0.5, 2.0, 7.0}) {
        for (double x : {0.05, 0.3, 0.7, 0.99}) {
          CHECK(regularized_beta(x, a, b) ==
                doctest::Approx(boost::math::ibeta(a, b, x)).epsilon(1e-10));
        }
      }
    }
  }

  TEST_CASE("F quantile matches Boost") {
    for (double d1 : {1.0, 2.0, 3.0}) {
      for (double d2 : {2.0, 5.0, 30.0, 500.0}) {
        for (double p : {0.1, 0.5, 0.9, 0.95}) {
          const double ref = quantile(boost::math::fisher_f_distribution<double>(d1, d2), p);
          CHECK(f_quantile(p, d1, d2) == doctest::Approx(ref).epsilon(1e-8));
        }
      }
    }
  }

  TEST_CASE("Hotelling quantile examples") {
    const double t = quantile(boost::math::students_t_distribution<double>(10.0), 0.95);
    CHECK(hotelling_t2_quantile(0.90, 1, 10) == doctest::Approx(t * t).epsilon(1e-9));
    CHECK(std::abs(hotelling_t2_quantile(0.90, 1, 10) - 3.285012) < 1e-4);
    CHECK(std::abs(hotelling_t2_quantile(0.90, 2, 1e7) - 4.60517) < 1e-4);
    CHECK(code_of([] { hotelling_t2_quantile(0.90, 3, 3); }) == ErrorCode::DegenerateDof);
    CHECK(code_of([] { hotelling_t2_quantile(0.90, 3, 2); }) == ErrorCode::DegenerateDof);
  }

  TEST_CASE("Hotelling quantile decreases in dof towards the chi-square limit") {
    for (double dim : {1.0, 2.0, 3.0}) {
      const double chi = chisq_quantile(0.9, dim);
      double prev = std::numeric_limits<double>::infinity();
      for (double dof : {dim + 1, dim + 2, dim + 5, 20.0, 100.0, 1e3, 1e5}) {
        const double q = hotelling_t2_quantile(0.9, dim, dof);
        CHECK(q < prev);
        CHECK(q > chi);
        prev = q;
      }
      CHECK(std::abs(hotelling_t2_quantile(0.9, dim, 1e7) / chi - 1.0) < 1e-4);
    }
  }

  TEST_CASE("Rng streams are reproducible and distinct") {
    Rng a(42, 3);
    Rng b(42, 3);
    Rng c(42, 4);
    bool differs = false;
    for (int i = 0; i < 100; ++i) {
      const auto x = a();
      CHECK(x == b());
      differs = differs || x != c();
    }
    CHECK(differs);
    CHECK(a == b);
    Rng u(7);
    for (int i = 0; i < 10000; ++i) {
      const double v = u.uniform();
      CHECK((v >= 0.0 && v < 1.0));
      const double w = u.uniform_open();
      CHECK((w > 0.0 && w < 1.0));
    }
  }

  TEST_CASE("mvn_sample is deterministic per seed and has the right moments") {
    const SpdMatrix cov(Matrix{{2.0, 0.6, 0.0}, {0.6, 1.0, -0.3}, {0.0, -0.3, 0.5}});
    const Vector mean = {1.0, -2.0, 0.5};
    Rng r1(5);
    Rng r2(5);
    CHECK(mvn_sample(mean, cov, r1) == mvn_sample(mean, cov, r2));

    constexpr int kDraws = 100000;
    Rng rng(6);
    Vector sum(3, 0.0);
    Matrix cross(3, 3);
    for (int i = 0; i < kDraws; ++i) {
      const Vector x = mvn_sample(mean, cov, rng);
      for (std::size_t a = 0; a < 3; ++a) {
        sum[a] += x[a];
        for (std::size_t b = 0; b < 3; ++b) cross(a, b) += (x[a] - mean[a]) * (x[b] - mean[b]);
      }
    }
    for (std::size_t a = 0; a < 3; ++a) {
      const double se = std::sqrt(cov.value()(a, a) / kDraws);
      CHECK(std::abs(sum[a] / kDraws - mean[a]) < 4.0 * se);
      for (std::size_t b = 0; b < 3; ++b) {
        CHECK(std::abs(cross(a, b) / kDraws - cov.value()(a, b)) < 0.03);
      }
    }
  }

  TEST_CASE("gamma_sample moments") {
    for (double shape : {0.3, 1.0, 2.5, 14.5}) {
      const double rate = 2.0;
      Rng rng(static_cast<std::uint64_t>(shape * 100));
      constexpr int kDraws = 200000;
      double s = 0.0;
      double ss = 0.0;
      for (int i = 0; i < kDraws; ++i) {
        const double x = gamma_sample(shape, rate, rng);
        REQUIRE(x > 0.0);
        s += x;
        ss += x * x;
      }
      const double mean = s / kDraws;
      const double var = ss / kDraws - mean * mean;
      const double true_var = shape / (rate * rate);
      CHECK(std::abs(mean - shape / rate) < 4.0 * std::sqrt(true_var / kDraws));
      CHECK(var == doctest::Approx(true_var).epsilon(0.03));
    }
    Rng rng(1);
    CHECK(code_of([&] { gamma_sample(0.0, 1.0, rng); }) == ErrorCode::DomainError);
    CHECK(code_of([&] { gamma_sample(1.0, -1.0, rng); }) == ErrorCode::DomainError);
  }

  TEST_CASE("Orthodont lambda_gamma shape draws are positive") {
    Rng rng(3);
    for (int i = 0; i < 1000; ++i) CHECK(gamma_sample(14.5, 0.7, rng) > 0.0);
  }
}
