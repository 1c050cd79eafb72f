#include <gtest/gtest.h>

#include <boost/math/distributions/chi_squared.hpp>
#include <boost/math/distributions/fisher_f.hpp>
#include <boost/math/distributions/normal.hpp>
#include <boost/math/distributions/students_t.hpp>
#include <boost/math/special_functions/beta.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include "pegls/distributions.hpp"

namespace bm = boost::math;

TEST(Distributions, GammaQMatchesBoost) {
    for (double a : {0.5, 1.0, 1.5, 3.0, 10.0, 28.0, 189.0})
        for (double x : {0.0, 1e-3, 0.3, 1.0, 2.5, 7.0, 30.0, 190.0, 400.0}) {
            const double want = bm::gamma_q(a, x);
            EXPECT_NEAR(pegls::regularized_gamma_q(a, x), want, 1e-13 + 1e-11 * want) << "a=" << a << " x=" << x;
        }
}

TEST(Distributions, IncompleteBetaMatchesBoost) {
    for (double a : {0.5, 1.0, 2.0, 96.0})
        for (double b : {0.5, 1.5, 3.0, 40.0})
            for (double x : {0.0, 0.01, 0.2, 0.5, 0.8, 0.999, 1.0})
                EXPECT_NEAR(pegls::regularized_beta(a, b, x), bm::ibeta(a, b, x), 1e-12)
                    << "a=" << a << " b=" << b << " x=" << x;
}

TEST(Distributions, TailsMatchBoost) {
    for (double dof : {1.0, 2.0, 3.0, 56.0, 378.0})
        for (double x : {0.1, 1.0, 2.5, 7.6042, 60.0, 400.3456}) {
            const double want = bm::cdf(bm::complement(bm::chi_squared(dof), x));
            EXPECT_NEAR(pegls::chi_sq_upper_tail(x, dof), want, 1e-13 + 1e-10 * want);
        }
    for (double x : {0.2, 1.0, 2.583198, 68.0})
        EXPECT_NEAR(pegls::f_upper_tail(x, 3, 192), bm::cdf(bm::complement(bm::fisher_f(3, 192), x)), 1e-12);
    for (double t : {0.0, 0.7, 2.867219, -3.43, 11.7})
        EXPECT_NEAR(pegls::t_two_tailed_prob(t, 192), 2 * bm::cdf(bm::complement(bm::students_t(192), std::abs(t))),
                    1e-12);
    for (double z : {-4.0, -0.375082, 0.0, 1.96})
        EXPECT_NEAR(pegls::normal_cdf(z), bm::cdf(bm::normal(), z), 1e-15);
}

TEST(Distributions, TailAtZeroIsOne) {
    EXPECT_DOUBLE_EQ(pegls::chi_sq_upper_tail(0.0, 3), 1.0);
    EXPECT_DOUBLE_EQ(pegls::f_upper_tail(0.0, 3, 192), 1.0);
    EXPECT_DOUBLE_EQ(pegls::t_two_tailed_prob(0.0, 10), 1.0);
    EXPECT_DOUBLE_EQ(pegls::normal_two_sided_prob(0.0), 1.0);
}

TEST(Distributions, TailsAreMonotone) {
    double prev_chi = 1.0, prev_f = 1.0, prev_t = 1.0;
    for (double x = 0.05; x < 60.0; x += 0.05) {
        const double c = pegls::chi_sq_upper_tail(x, 3);
        const double f = pegls::f_upper_tail(x, 3, 192);
        const double t = pegls::t_two_tailed_prob(x, 192);
        EXPECT_LE(c, prev_chi);
        EXPECT_LE(f, prev_f);
        EXPECT_LE(t, prev_t);
        prev_chi = c;
        prev_f = f;
        prev_t = t;
    }
}

TEST(Distributions, DofTwoClosedForm) {
    for (double x : {0.0, 0.5, 2.411, 10.0}) EXPECT_NEAR(pegls::chi_sq_upper_tail(x, 2), std::exp(-x / 2), 1e-14);
}

TEST(Distributions, DomainErrors) {
    EXPECT_THROW(pegls::chi_sq_upper_tail(-1.0, 3), pegls::DomainError);
    EXPECT_THROW(pegls::chi_sq_upper_tail(1.0, 0), pegls::DomainError);
    EXPECT_THROW(pegls::f_upper_tail(1.0, 0, 5), pegls::DomainError);
    EXPECT_THROW(pegls::t_two_tailed_prob(1.0, 0.5), pegls::DomainError);
}
