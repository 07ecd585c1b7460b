#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <sstream>

#include "burgers/analysis.hpp"

using namespace burgers;

namespace {

std::pair<std::vector<double>, std::vector<double>> sampled(double t_end, double dt,
                                                            double (*f)(double)) {
    std::vector<double> ts, ys;
    for (double t = 0.0; t <= t_end + 1e-12; t += dt) {
        ts.push_back(t);
        ys.push_back(f(t));
    }
    return {ts, ys};
}

}  // namespace

TEST_CASE("exact exponential data is fitted exactly") {
    const auto [ts, ys] = sampled(3.0, 0.01, [](double t) { return 5.0 * std::exp(-3.0 * t); });
    const auto fit = fit_decay_rate(ts, ys, 0.0);
    CHECK(fit.rate == doctest::Approx(3.0).epsilon(1e-9));
    CHECK(fit.residual < 1e-12);
    CHECK(fit.intercept == doctest::Approx(std::log(5.0)).epsilon(1e-9));
    CHECK_FALSE(fit.floor_hit);
}

TEST_CASE("constant data has zero rate") {
    const auto [ts, ys] = sampled(2.0, 0.05, [](double) { return 1.0; });
    const auto fit = fit_decay_rate(ts, ys, 0.0);
    CHECK(std::abs(fit.rate) < 1e-12);
}

TEST_CASE("noise floor truncates the window") {
    // frozen against an independent regression of the same series: the fit
    // over [0, ~27.7] gives rate 0.99922 and flags the floor
    const auto [ts, ys] =
        sampled(40.0, 0.01, [](double t) { return std::exp(-t) + 1e-13; });
    const auto fit = fit_decay_rate(ts, ys, 0.0, 1e-12);
    CHECK(fit.floor_hit);
    CHECK(std::abs(fit.rate - 1.0) < 1e-3);
    CHECK(fit.t_end > 27.0);
    CHECK(fit.t_end < 29.0);
}

TEST_CASE("insufficient data and domain errors") {
    std::vector<double> ts{0.0, 0.1, 0.2}, ys{1.0, 0.9, 0.8};
    CHECK_THROWS_AS((void)fit_decay_rate(ts, ys, 0.0), InsufficientDataError);

    const auto [t2, y2] = sampled(2.0, 0.05, [](double t) { return 1.0 - t; });
    // the series crosses zero: not a decaying positive quantity
    CHECK_THROWS_AS((void)fit_decay_rate(t2, y2, 0.0, 0.0), FitDomainError);
}

TEST_CASE("fit equivariances") {
    const auto [ts, ys] = sampled(5.0, 0.02, [](double t) { return 2.0 * std::exp(-1.7 * t); });
    const auto base = fit_decay_rate(ts, ys, 0.5);

    SUBCASE("scaling changes the intercept only") {
        auto scaled = ys;
        for (auto& y : scaled) y *= 37.0;
        const auto fit = fit_decay_rate(ts, scaled, 0.5);
        CHECK(std::abs(fit.rate - base.rate) < 1e-12);
        CHECK(fit.intercept == doctest::Approx(base.intercept + std::log(37.0)).epsilon(1e-12));
    }
    SUBCASE("time shifts leave the rate unchanged") {
        auto shifted = ts;
        for (auto& t : shifted) t += 4.0;
        const auto fit = fit_decay_rate(shifted, ys, 0.5 + 4.0);
        CHECK(std::abs(fit.rate - base.rate) < 1e-10);
    }
}

TEST_CASE("verdicts") {
    RateFit fit;
    fit.rate = 1.2;
    SUBCASE("pass with margin") {
        const auto v = rate_verdict(fit, 1.0);
        CHECK(v.pass);
        CHECK(v.margin == doctest::Approx(0.2).epsilon(1e-12));
    }
    SUBCASE("fail below tolerance") {
        fit.rate = 0.85;
        CHECK_FALSE(rate_verdict(fit, 1.0, 0.1).pass);
    }
    SUBCASE("tolerance is monotone") {
        fit.rate = 0.85;
        bool prev = false;
        for (double tol : {0.0, 0.05, 0.1, 0.2, 0.3, 0.5}) {
            const bool pass = rate_verdict(fit, 1.0, tol).pass;
            CHECK((!prev || pass));  // once passing, stays passing
            prev = prev || pass;
        }
        CHECK(prev);
    }
}

TEST_CASE("certificate comparison is gated on the conditions") {
    const InequalityConstants constants;
    RateFit fit;
    fit.rate = 12.0;

    const auto good = plan_gains_obe({10.0, 0.1, 1.0}, constants, "l2");
    const auto verdict = compare_to_certificate(fit, good.ledger, Claim::obe_l2);
    CHECK(verdict.pass);
    CHECK(verdict.certified == doctest::Approx(10.0));

    fit.rate = 8.5;
    CHECK_FALSE(compare_to_certificate(fit, good.ledger, Claim::obe_l2).pass);

    const auto bad = obe_ledger({1.0, 1.0, 1.0}, constants, 3.0, 5);
    CHECK_THROWS_AS((void)compare_to_certificate(fit, bad, Claim::obe_l2),
                    TheoremNotApplicableError);
}

TEST_CASE("quantity_series demands the right channels") {
    Trace tr;
    tr.t = {0.0, 1.0};
    tr.l2_v = std::vector<double>{2.0, 1.0};
    const auto v2 = quantity_series(tr, FitQuantity::l2_v_sq);
    CHECK(v2[0] == doctest::Approx(4.0));
    CHECK_THROWS_AS((void)quantity_series(tr, FitQuantity::sync_l2), Error);
}

TEST_CASE("ensemble holds on defaults and detects falsified constants") {
    const InequalityConstants defaults;
    const auto rep = inequality_ensemble(42, 300, 20, defaults, 512);
    CHECK(rep.total_violations() == 0);
    for (const auto& check : rep.checks) CHECK(check.worst_margin > -1e-8);

    InequalityConstants broken = defaults;
    broken.beta4 = 0.1;
    const auto rep_bad = inequality_ensemble(42, 50, 20, broken, 512);
    CHECK(rep_bad.total_violations() > 0);

    InequalityConstants tiny_c0 = defaults;
    tiny_c0.c0 = 1e-3;
    CHECK(inequality_ensemble(7, 20, 10, tiny_c0, 256).total_violations() > 0);
}

TEST_CASE("ensemble is deterministic in the seed") {
    const InequalityConstants defaults;
    const auto a = inequality_ensemble(7, 25, 12, defaults, 256);
    const auto b = inequality_ensemble(7, 25, 12, defaults, 256);
    REQUIRE(a.checks.size() == b.checks.size());
    for (std::size_t i = 0; i < a.checks.size(); ++i)
        CHECK(a.checks[i].worst_margin == b.checks[i].worst_margin);
    CHECK(a.to_text() == b.to_text());
}

TEST_CASE("trace CSV round trip preserves the fit bit for bit") {
    Trace tr;
    for (int i = 0; i <= 200; ++i) {
        const double t = 0.05 * i;
        tr.t.push_back(t);
    }
    tr.l2_z.emplace();
    tr.W.emplace();
    for (double t : tr.t) {
        tr.l2_z->push_back(std::exp(-0.8 * t) * 0.3);
        tr.W->push_back(std::exp(-1.1 * t) * 0.1);
    }
    std::stringstream ss;
    write_csv(tr, ss);
    const Trace back = read_csv(ss);
    REQUIRE(back.rows() == tr.rows());
    REQUIRE(back.l2_z.has_value());
    CHECK_FALSE(back.l2_v.has_value());

    const auto fit0 = fit_decay_rate(tr.t, quantity_series(tr, FitQuantity::sync_l2), 0.0);
    const auto fit1 = fit_decay_rate(back.t, quantity_series(back, FitQuantity::sync_l2), 0.0);
    CHECK(fit0.rate == fit1.rate);
}
