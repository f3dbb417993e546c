#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <random>
#include <vector>

#include "rievolve/config.hpp"
#include "rievolve/dissipation.hpp"
#include "rievolve/errors.hpp"

using namespace rievolve;

namespace {

std::vector<double> uniform_grid(double a, double b, double step) {
    // index-scaled so that 0 lands on the grid exactly
    std::vector<double> g;
    long long i0 = std::llround(a / step), i1 = std::llround(b / step);
    for (long long i = i0; i <= i1; ++i) g.push_back(static_cast<double>(i) * step);
    return g;
}

// Exhaustive residual scan of eps*a + S(a) ∋ g over [-100, 100]; returns all
// membership cells at scan resolution.
std::vector<double> bracket_scan_solutions(const DissipationMap& map, double eps, double g) {
    std::vector<double> sols;
    const int n = 400001;
    for (int i = 0; i < n; ++i) {
        double a = -100.0 + 200.0 * static_cast<double>(i) / (n - 1);
        if (map.eval(a).contains(g - eps * a, 1e-3)) sols.push_back(a);
    }
    return sols;
}

} // namespace

TEST_CASE("eval of the built-in maps") {
    DissipationMap dr = DissipationMap::sign_subdifferential();
    CHECK(dr.eval(0.0).lo == -1.0);
    CHECK(dr.eval(0.0).hi == 1.0);
    CHECK(dr.eval(2.5).lo == 1.0);
    CHECK(dr.eval(2.5).hi == 1.0);
    CHECK(dr.eval(-0.3).lo == -1.0);

    DissipationMap st = DissipationMap::sticktion();
    CHECK(st.eval(-3.0).lo == -4.0);
    CHECK(st.eval(-3.0).singleton());
    CHECK(st.eval(0.0).lo == -2.0);
    CHECK(st.eval(0.0).hi == 2.0);
    CHECK(st.eval(0.5).lo == doctest::Approx(1.5));
}

TEST_CASE("contains with tolerance") {
    DissipationMap dr = DissipationMap::sign_subdifferential();
    CHECK(dr.contains(0.0, 0.5, 0.0));
    CHECK_FALSE(dr.contains(1.0, 0.5, 0.0));
    DissipationMap st = DissipationMap::sticktion();
    CHECK(st.contains(0.0, 2.0005, 1e-3));
    CHECK_FALSE(st.contains(0.0, 2.0005, 1e-4));
}

TEST_CASE("viscous resolvent closed forms") {
    DissipationMap dr = DissipationMap::sign_subdifferential();
    CHECK(viscous_resolvent(dr, 1.0, 0.5) == 0.0);
    double a = viscous_resolvent(dr, 0.5, 3.0);
    CHECK(a == doctest::Approx(4.0).epsilon(1e-15));
    CHECK(0.5 * a + 1.0 == doctest::Approx(3.0).epsilon(1e-15)); // substitution

    DissipationMap st = DissipationMap::sticktion();
    SUBCASE("stick priority beats the coexisting sliding branch") {
        double r = viscous_resolvent(st, 0.1, 1.5);
        CHECK(r == 0.0);
        CHECK(st.eval(0.0).contains(1.5, 0.0));
        // the bracket scan sees both the stick cell and the sliding branch
        auto sols = bracket_scan_solutions(st, 0.1, 1.5);
        REQUIRE(!sols.empty());
        bool has_zero = false, has_sliding = false;
        for (double s : sols) {
            if (std::abs(s) < 1e-3) has_zero = true;
            if (s > 0.3) has_sliding = true;
        }
        CHECK(has_zero);
        CHECK(has_sliding);
    }
    SUBCASE("sliding branch outside the static interval") {
        double r = viscous_resolvent(st, 0.25, 3.0);
        CHECK(r == doctest::Approx((3.0 - 1.0) / 1.25).epsilon(1e-15));
        CHECK(st.eval(r).contains(3.0 - 0.25 * r, 1e-14));
    }
}

TEST_CASE("resolvent residual and soft-threshold identity over random inputs") {
    std::mt19937_64 rng(12345);
    std::uniform_real_distribution<double> eps_dist(1e-4, 10.0);
    std::uniform_real_distribution<double> g_dist(-50.0, 50.0);
    DissipationMap dr = DissipationMap::sign_subdifferential();
    DissipationMap st = DissipationMap::sticktion();
    double worst = 0.0;
    for (int i = 0; i < 10000; ++i) {
        double eps = eps_dist(rng), g = g_dist(rng);
        double a = viscous_resolvent(dr, eps, g);
        double soft = soft_threshold(g, 1.0) / eps;
        worst = std::max(worst, std::abs(a - soft));
        CHECK(dr.eval(a).dist(g - eps * a) <= 1e-12);
        double as = viscous_resolvent(st, eps, g);
        CHECK(st.eval(as).dist(g - eps * as) <= 1e-12);
    }
    CHECK(worst <= 1e-12);
}

TEST_CASE("resolvent is monotone in g for the sign subdifferential") {
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> g_dist(-20.0, 20.0);
    DissipationMap dr = DissipationMap::sign_subdifferential();
    for (int i = 0; i < 2000; ++i) {
        double g1 = g_dist(rng), g2 = g_dist(rng);
        if (g1 > g2) std::swap(g1, g2);
        CHECK(viscous_resolvent(dr, 0.3, g1) <= viscous_resolvent(dr, 0.3, g2) + 1e-14);
    }
}

TEST_CASE("table-backed maps solve through bisection") {
    // piecewise-linear rendering of the sign subdifferential graph
    DissipationMap tab = DissipationMap::from_table(
        "soft_table",
        {{-1e-9, -1.0, -1.0}, {0.0, -1.0, 1.0}, {1e-9, 1.0, 1.0}}, true);
    for (double g : {-7.0, -0.4, 0.0, 0.9, 1.1, 12.0}) {
        double a = viscous_resolvent(tab, 0.7, g);
        CHECK(tab.eval(a).dist(g - 0.7 * a) <= 1e-10 * (1.0 + std::abs(g)));
    }

    // non-monotone table goes through stick-priority plus branch scan
    DissipationMap bumpy = DissipationMap::from_table(
        "bumpy", {{-1.0, -2.0, -2.0}, {0.0, -3.0, 3.0}, {1.0, 2.0, 2.0}}, false);
    CHECK(viscous_resolvent(bumpy, 0.5, 2.5) == 0.0); // 2.5 in S(0)
    double a = viscous_resolvent(bumpy, 0.5, 4.0);
    CHECK(bumpy.eval(a).dist(4.0 - 0.5 * a) <= 1e-10);
}

TEST_CASE("dissipation specs resolve from config strings") {
    CHECK(dissipation_by_spec("sticktion").name() == "sticktion");
    CHECK(dissipation_by_spec("sign_subdifferential").s_max() == 1.0);
    DissipationMap tab = dissipation_by_spec("table:-1:-2:-2,0:-2:2,1:2:2;monotone");
    CHECK(tab.monotone());
    CHECK(tab.eval(0.0).hi == 2.0);
    CHECK(tab.eval(0.5).lo == doctest::Approx(0.0)); // lerp between rows
    CHECK_THROWS_AS((void)dissipation_by_spec("nope"), ConfigError);
    CHECK_THROWS_AS((void)dissipation_by_spec("table:1:2"), ConfigError);
}

TEST_CASE("condition report on the built-ins") {
    double tol = 0.02; // absorbs the Lipschitz modulus of the sliding branch
    auto grid = uniform_grid(-2.0, 2.0, 0.01);

    SUBCASE("sign subdifferential passes everything") {
        ConditionReport rep = check_conditions(DissipationMap::sign_subdifferential(), grid, tol);
        CHECK(rep.s1_pass);
        CHECK(rep.s2_pass);
        CHECK(rep.c3_pass);
        CHECK(rep.c1_proxy_pass);
        CHECK(rep.c2_proxy_pass);
        CHECK(rep.s_max_observed == 1.0);
    }
    SUBCASE("sticktion fails S1, passes the continuity proxies") {
        ConditionReport rep = check_conditions(DissipationMap::sticktion(), grid, tol);
        CHECK_FALSE(rep.s1_pass);
        CHECK(rep.c1_proxy_pass);
        CHECK(rep.c2_proxy_pass);
        CHECK(rep.c3_pass);
        CHECK(rep.worst_s1 > 0.9); // static interval overhangs the sliding branch
    }
    SUBCASE("constant singleton map passes with s_max 0") {
        DissipationMap zero = DissipationMap::from_table("zero", {{0.0, 0.0, 0.0}}, true);
        ConditionReport rep = check_conditions(zero, grid, tol);
        CHECK(rep.all_pass());
        CHECK(rep.s_max_observed == 0.0);
    }
    SUBCASE("unbridged endpoint jump fails the continuity proxies") {
        DissipationMap gapmap = DissipationMap::from_table(
            "gap", {{-1.0, 0.0, 0.0}, {-1e-9, 0.0, 0.0}, {0.0, 5.0, 5.0}, {1.0, 5.0, 5.0}},
            true);
        ConditionReport rep = check_conditions(gapmap, grid, tol);
        CHECK_FALSE(rep.c1_proxy_pass);
        CHECK_FALSE(rep.c2_proxy_pass);
    }
}
