#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>
#include <numbers>

#include "burgers/certificates.hpp"

using namespace burgers;

namespace {

constexpr double kPi = std::numbers::pi;
const InequalityConstants kDefaults{};

// Golden values frozen from an independent 50-digit evaluation of the same
// closed forms (computed before this implementation was written).
struct ObeGolden {
    double M1 = 2.0;
    double M2 = 174991294418.38334728;
    double M3 = 8.0;
    double M4 = 179244276458840.21984;
    double M5 = 4103410757.419055913;
    double Q0 = 44942312585526.670897;
};

}  // namespace

TEST_CASE("obe ledger simple substitutions at mu = 0") {
    const auto led = obe_ledger({1.0, 1.0, 1.0}, kDefaults, 0.0, 1);
    CHECK(led.d0 == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(led.M1 == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(led.M3 == doctest::Approx(2.0).epsilon(1e-15));  // gain term vanishes
    CHECK(led.d2 == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(led.alpha0 == doctest::Approx(0.5).epsilon(1e-15));
}

TEST_CASE("obe ledger golden values at nu=1 R=1 mu=3 N=5") {
    const ObeGolden golden;
    const auto led = obe_ledger({1.0, 1.0, 1.0}, kDefaults, 3.0, 5);
    CHECK(led.M1 == doctest::Approx(golden.M1).epsilon(1e-12));
    CHECK(led.M2 == doctest::Approx(golden.M2).epsilon(1e-12));
    CHECK(led.M3 == doctest::Approx(golden.M3).epsilon(1e-12));
    CHECK(led.M4 == doctest::Approx(golden.M4).epsilon(1e-12));
    CHECK(led.M5 == doctest::Approx(golden.M5).epsilon(1e-12));
    CHECK(led.Q0 == doctest::Approx(golden.Q0).epsilon(1e-12));
}

TEST_CASE("obe ledger monotone in R") {
    const auto a = obe_ledger({1.0, 1.0, 1.0}, kDefaults, 0.5, 3);
    const auto b = obe_ledger({1.0, 2.0, 1.0}, kDefaults, 0.5, 3);
    CHECK(b.M5 > a.M5);
    CHECK(b.M1 > a.M1);
    CHECK(b.Q0 > a.Q0);
}

TEST_CASE("ledger determinism") {
    const auto a = obe_ledger({0.7, 1.3, 1.0}, kDefaults, 2.0, 4);
    const auto b = obe_ledger({0.7, 1.3, 1.0}, kDefaults, 2.0, 4);
    CHECK(a.M5 == b.M5);
    CHECK(a.Q0 == b.Q0);
    REQUIRE(a.conditions.size() == b.conditions.size());
    for (std::size_t i = 0; i < a.conditions.size(); ++i) {
        CHECK(a.conditions[i].margin == b.conditions[i].margin);
        CHECK(a.conditions[i].satisfied == b.conditions[i].satisfied);
    }
}

TEST_CASE("condition report re-evaluates to its stored flags") {
    const auto led = obe_ledger({4.0, 0.5, 1.0}, kDefaults, 0.3, 2);
    for (const auto& c : led.conditions) {
        const bool re = c.strict ? c.margin > 0.0 : c.margin >= 0.0;
        CHECK(re == c.satisfied);
    }
}

TEST_CASE("plan_gains_obe golden fixed points") {
    SUBCASE("nu=10 R=0.1, l2 target") {
        const auto plan = plan_gains_obe({10.0, 0.1, 1.0}, kDefaults, "l2");
        CHECK(plan.mu == doctest::Approx(0.01486074449185069192).epsilon(1e-9));
        CHECK(plan.n_modes == 1);
        CHECK(plan.certified_rate == doctest::Approx(10.0).epsilon(1e-14));
        CHECK(plan.ledger.all_satisfied(claim_conditions(PlanFamily::obe_l2)));
    }
    SUBCASE("nu=10 R=0.1, h1 target") {
        const auto plan = plan_gains_obe({10.0, 0.1, 1.0}, kDefaults, "h1");
        CHECK(plan.mu == doctest::Approx(0.014860271506263322605).epsilon(1e-9));
        CHECK(plan.n_modes == 1);
        CHECK(plan.certified_rate == doctest::Approx(5.0).epsilon(1e-14));
        CHECK(plan.ledger.all_satisfied(claim_conditions(PlanFamily::obe_h1)));
    }
    SUBCASE("nu=4 R=0.5, l2 target") {
        const auto plan = plan_gains_obe({4.0, 0.5, 1.0}, kDefaults, "l2");
        CHECK(plan.mu == doctest::Approx(0.25928241506981924113).epsilon(1e-9));
        CHECK(plan.n_modes == 1);
    }
}

TEST_CASE("plan_gains_obe is infeasible at nu=1 R=1") {
    // Frozen from the same 50-digit oracle: the l2 gain condition requires
    // mu >= M5(mu) >= M3(mu)^2/(2 nu) = 2(1+mu)^2, which no mu satisfies, so
    // the fixed point diverges. The h1 chain diverges through M4 ~ M3^5.
    CHECK_THROWS_AS((void)plan_gains_obe({1.0, 1.0, 1.0}, kDefaults, "l2"), InfeasibleError);
    CHECK_THROWS_AS((void)plan_gains_obe({1.0, 1.0, 1.0}, kDefaults, "h1"), InfeasibleError);
    try {
        (void)plan_gains_obe({1.0, 1.0, 1.0}, kDefaults, "l2");
    } catch (const InfeasibleError& e) {
        CHECK(e.bound_name == "M5");
    }
}

TEST_CASE("planner replay closure") {
    for (const auto& [nu, R] : std::vector<std::pair<double, double>>{
             {10.0, 0.1}, {4.0, 0.5}, {8.0, 0.25}}) {
        const auto plan = plan_gains_obe({nu, R, 1.0}, kDefaults, "l2");
        const auto replay = obe_ledger({nu, R, 1.0}, kDefaults, plan.mu, plan.n_modes);
        for (const auto& name : claim_conditions(PlanFamily::obe_l2)) {
            const Condition* c = replay.find(name);
            REQUIRE(c != nullptr);
            CHECK(c->satisfied);
            CHECK(c->margin >= 0.0);
        }
    }
}

TEST_CASE("bnn ledger reference value for the reference ball") {
    const auto led = bnn_ledger({1.0, 1.0, 1.0}, kDefaults, 0.0, 0.0, 0.0, 1, 6.0);
    CHECK(led.H1_sq == doctest::Approx(1.0 / (kPi * kPi)).epsilon(1e-12));
}

TEST_CASE("bnn ledger golden values at nu=0.5 R=2 k=1 xi=5 mu=3 N=5") {
    const auto led = bnn_ledger({0.5, 2.0, 1.0}, kDefaults, 0.0, 0.0, 3.0, 5, 5.0);
    CHECK(led.sigma == doctest::Approx(2.5325988997276603453).epsilon(1e-12));
    CHECK(led.a0 == doctest::Approx(2.4674011002723396547).epsilon(1e-12));
    CHECK(led.H1_sq == doctest::Approx(0.81056946913870217155).epsilon(1e-12));
    CHECK(led.H2 == doctest::Approx(489843826124.62096785).epsilon(1e-11));
    CHECK(led.H3_sq == doctest::Approx(1.259595410535801759).epsilon(1e-12));
    CHECK(led.H4 == doctest::Approx(4587655841911.0398719).epsilon(1e-11));
    CHECK(led.A0 == doctest::Approx(902269749.94231014798).epsilon(1e-11));
    CHECK(led.A1 == doctest::Approx(73980914.937728390784).epsilon(1e-11));
    CHECK(led.Q1 == doctest::Approx(2293828371563.1776947).epsilon(1e-11));
}

TEST_CASE("bnn ledger rejects rates at or below the threshold") {
    const double threshold = kPi * kPi * 1.0 / 2.0;
    CHECK_THROWS_AS(
        (void)bnn_ledger({1.0, 1.0, 1.0}, kDefaults, 0.0, 0.0, 1.0, 1, threshold),
        RateTooSmallError);
    CHECK_NOTHROW((void)bnn_ledger({1.0, 1.0, 1.0}, kDefaults, 0.0, 0.0, 1.0, 1,
                                   threshold + 1e-6));
}

TEST_CASE("bnn degenerate source-free limit: only R survives") {
    const double R = 1e-12;
    const auto led =
        bnn_ledger({1.0, R, 1.0}, kDefaults, 0.0, 0.0, 2.0, 3, 6.0, /*source_free=*/true);
    CHECK(led.A0 < 1e-20);
    CHECK(led.H2 < 1e-20);
    CHECK(led.H4 < 1e-20);
    // Q1 keeps an O(R) residue from the follower ball radius H3 ~ R/sqrt(nu*lambda1)
    CHECK(led.Q1 == doctest::Approx(R).epsilon(0.1));
}

TEST_CASE("plan_gains_bnn volume arithmetic: N = ceil(2 mu / (nu sqrt(lambda1)))") {
    // with the gain pinned at 10 and nu = 1: 20/pi = 6.366... -> 7
    const auto led = bnn_ledger({1.0, 1.0, 1.0}, kDefaults, 0.0, 0.0, 10.0, 7, 6.0);
    const Condition* c = led.find("volume.modes");
    REQUIRE(c != nullptr);
    CHECK(c->satisfied);
    const auto led6 = bnn_ledger({1.0, 1.0, 1.0}, kDefaults, 0.0, 0.0, 10.0, 6, 6.0);
    CHECK_FALSE(led6.find("volume.modes")->satisfied);
    CHECK(std::ceil(2.0 * 10.0 / (1.0 * kPi)) == 7.0);
}

TEST_CASE("plan_gains_bnn golden values") {
    const double xi = kPi * kPi + 1.0;  // above the threshold for nu = 2
    SUBCASE("modal-l2 at nu=2 R=0.5 k=1") {
        const auto plan =
            plan_gains_bnn({2.0, 0.5, 1.0}, kDefaults, 0.0, 0.0, xi, PlanFamily::bnn_modal_l2);
        CHECK(plan.mu == doctest::Approx(23.623647196817450912).epsilon(1e-9));
        CHECK(plan.n_modes == 2);
        CHECK(plan.certified_rate == doctest::Approx(xi).epsilon(1e-14));
        CHECK(plan.ledger.all_satisfied(claim_conditions(PlanFamily::bnn_modal_l2)));
    }
    SUBCASE("modal-h1 at nu=2 R=0.5 k=1") {
        const auto plan =
            plan_gains_bnn({2.0, 0.5, 1.0}, kDefaults, 0.0, 0.0, xi, PlanFamily::bnn_modal_h1);
        CHECK(plan.mu == doctest::Approx(4.2724080488232338894).epsilon(1e-9));
        CHECK(plan.n_modes == 1);
        CHECK(plan.ledger.all_satisfied(claim_conditions(PlanFamily::bnn_modal_h1)));
    }
    SUBCASE("volume at nu=2 R=0.5 k=1") {
        const auto plan =
            plan_gains_bnn({2.0, 0.5, 1.0}, kDefaults, 0.0, 0.0, xi, PlanFamily::bnn_volume_l2);
        CHECK(plan.mu == doctest::Approx(1.5289984012305871966).epsilon(1e-12));
        CHECK(plan.n_modes == 1);
        CHECK(plan.certified_rate == doctest::Approx(plan.ledger.sigma + plan.ledger.a0)
                                         .epsilon(1e-14));
        CHECK(plan.ledger.all_satisfied(claim_conditions(PlanFamily::bnn_volume_l2)));
    }
    SUBCASE("volume at nu=0.5 R=2 k=1 xi=5 (gigantic but well-defined)") {
        const auto plan =
            plan_gains_bnn({0.5, 2.0, 1.0}, kDefaults, 0.0, 0.0, 5.0, PlanFamily::bnn_volume_l2);
        CHECK(plan.mu == doctest::Approx(73980917.470327290511).epsilon(1e-10));
        CHECK(plan.n_modes == 94195430);
        CHECK(plan.certified_rate == doctest::Approx(5.0).epsilon(1e-12));
    }
}

TEST_CASE("plan_gains_bnn modal diverges at nu=0.5 R=2 k=1 xi=5") {
    // The gain requirement contains A0 ~ H4^(2/3) with H4 ~ H3^10 ~ mu^5,
    // and A0 at mu = 0 is already ~ 5e8, so the iteration has no fixed point.
    CHECK_THROWS_AS((void)plan_gains_bnn({0.5, 2.0, 1.0}, kDefaults, 0.0, 0.0, 5.0,
                                         PlanFamily::bnn_modal_l2),
                    InfeasibleError);
}

TEST_CASE("volume planner is monotone in R and replays closed over the grid") {
    const double xi = 10.5;
    for (double nu : {0.2, 0.65, 1.1, 1.55, 2.0}) {
        double prev_mu = -1.0;
        long long prev_n = -1;
        for (double R : {0.5, 1.375, 2.25, 3.125, 4.0}) {
            const auto plan = plan_gains_bnn({nu, R, 1.0}, kDefaults, 0.0, 0.0, xi,
                                             PlanFamily::bnn_volume_l2);
            CHECK(plan.mu >= prev_mu);
            CHECK(plan.n_modes >= prev_n);
            prev_mu = plan.mu;
            prev_n = plan.n_modes;
            const auto replay = bnn_ledger({nu, R, 1.0}, kDefaults, 0.0, 0.0, plan.mu,
                                           plan.n_modes, xi);
            CHECK(replay.all_satisfied(claim_conditions(PlanFamily::bnn_volume_l2)));
        }
    }
}

TEST_CASE("volume planner gains shrink as the viscosity grows") {
    const double xi = 10.5;
    for (double R : {0.5, 2.25, 4.0}) {
        double prev_mu = std::numeric_limits<double>::infinity();
        long long prev_n = std::numeric_limits<long long>::max();
        for (double nu : {0.2, 0.65, 1.1, 1.55, 2.0}) {
            const auto plan = plan_gains_bnn({nu, R, 1.0}, kDefaults, 0.0, 0.0, xi,
                                             PlanFamily::bnn_volume_l2);
            CHECK(plan.mu <= prev_mu);
            CHECK(plan.n_modes <= prev_n);
            prev_mu = plan.mu;
            prev_n = plan.n_modes;
        }
    }
}

TEST_CASE("rate ordering: the l2 certified rate saturates at nu") {
    for (double nu : {0.1, 0.5, 1.0, 3.0}) {
        const auto led = obe_ledger({nu, 1.0, 1.0}, kDefaults, 0.0, 1);
        CHECK(led.d2 == doctest::Approx(nu).epsilon(1e-15));  // lambda1 = pi^2 > 1
    }
}

TEST_CASE("ledger report carries margins and reading corrections") {
    const auto led = obe_ledger({10.0, 0.1, 1.0}, kDefaults, 0.02, 1);
    const auto text = led.report();
    CHECK(text.find("l2-sync.gain") != std::string::npos);
    CHECK(text.find("reading corrections") != std::string::npos);
    CHECK(text.find("M5") != std::string::npos);
}
