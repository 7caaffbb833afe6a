// SPDX-License-Identifier: Apache-2.0
//
// dfrc-latency: min-max latency power allocation for DFRC roadside units
// Copyright (C) 2026 dfrc-latency contributors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include <doctest.h>

#include "dfrc/allocate.hpp"
#include "dfrc/errors.hpp"
#include "dfrc/pcrb.hpp"
#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

using namespace dfrc;

namespace
{

std::vector<LinkCoefficients> links_from(std::initializer_list<double> b, double a = 1.0)
{
    std::vector<LinkCoefficients> out;
    for (double x : b)
        out.push_back({a, x, 0.0, out.size()});
    return out;
}

double total(const std::vector<double> &p)
{
    return std::accumulate(p.begin(), p.end(), 0.0);
}

double spread(const AllocationResult &r)
{
    const auto [lo, hi] = std::minmax_element(r.delays.begin(), r.delays.end());
    return *hi - *lo;
}

} // namespace

TEST_CASE("feasibility verdict")
{
    std::vector<LinkCoefficients> l(2);
    l[0].power_floor = 0.1;
    l[1].power_floor = 0.2;
    CHECK(check_feasible(l, 1.0).feasible);

    l[0].power_floor = 0.6;
    l[1].power_floor = 0.6;
    const auto v = check_feasible(l, 1.0);
    CHECK_FALSE(v.feasible);
    CHECK(v.deficit_w == doctest::Approx(0.2));

    CHECK_THROWS_AS(check_feasible({}, 1.0), DomainError);

    std::mt19937_64 rng(51);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 100; ++i)
    {
        std::vector<LinkCoefficients> r(1 + i % 6);
        double sum = 0.0;
        for (auto &x : r)
            sum += (x.power_floor = u(rng));
        const double p_max = 3.0 * u(rng) + 1e-3;
        CHECK(check_feasible(r, p_max).feasible == (sum - p_max <= 0.0));
    }
}

TEST_CASE("equal power allocation")
{
    const auto one = epa(links_from({2.0}), 3.0);
    CHECK(one.powers[0] == 3.0);

    const auto same = epa(links_from({5.0, 5.0, 5.0, 5.0}), 2.0);
    for (double t : same.delays)
        CHECK(t == same.delays[0]);

    const auto mixed = epa(links_from({1.0, 0.2, 4.0}), 3.0);
    CHECK(mixed.max_delay == mixed.delays[1]);
    CHECK(mixed.max_delay == doctest::Approx(1.0 / std::log(1.2)));

    auto floored = links_from({1.0, 1.0});
    floored[1].power_floor = 0.8;
    CHECK_FALSE(epa(floored, 1.0).feasible());
}

TEST_CASE("closed form for equal payloads")
{
    const auto sym = closed_form_equal_payload(links_from({1.0, 1.0}), 2.0);
    CHECK(sym.powers[0] == doctest::Approx(1.0));
    CHECK(sym.powers[1] == doctest::Approx(1.0));

    const auto two = closed_form_equal_payload(links_from({1.0, 3.0}), 4.0);
    CHECK(two.powers[0] == doctest::Approx(3.0).epsilon(1e-15));
    CHECK(two.powers[1] == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(two.delays[0] == doctest::Approx(two.delays[1]).epsilon(1e-15));

    std::mt19937_64 rng(52);
    for (int i = 0; i < 50; ++i)
    {
        const auto l = oracle::random_links(rng, 5, 2.0, true);
        const auto r = closed_form_equal_payload(l, 2.0);
        CHECK(spread(r) / r.max_delay <= 1e-10);
        CHECK(total(r.powers) == doctest::Approx(2.0).epsilon(1e-10));
        double inv_b = 0.0;
        for (const auto &x : l)
            inv_b += 1.0 / x.b_coef;
        CHECK(r.max_delay == doctest::Approx(l[0].a_coef / std::log(1.0 + 2.0 / inv_b)).epsilon(1e-12));
    }

    auto unequal = links_from({1.0, 3.0});
    unequal[1].a_coef = 1.5;
    CHECK_THROWS_AS(closed_form_equal_payload(unequal, 4.0), ContractError);

    auto floored = links_from({1.0, 3.0});
    floored[1].power_floor = 1.5; // closed form would give 1.0
    CHECK_THROWS_AS(closed_form_equal_payload(floored, 4.0), InfeasibleError);

    floored[0].power_floor = 3.0;
    CHECK_THROWS_AS(closed_form_equal_payload(floored, 4.0), InfeasibleError);
}

TEST_CASE("alg1 bisection")
{
    SUBCASE("equal payloads match the closed form")
    {
        std::mt19937_64 rng(53);
        for (int i = 0; i < 100; ++i)
        {
            const auto l = oracle::random_links(rng, 2 + i % 7, 1.0, true);
            const auto r = alg1_delay_bisection(l, 1.0);
            const auto ref = oracle::closed_form(l, 1.0);
            for (std::size_t k = 0; k < l.size(); ++k)
                CHECK(r.powers[k] == doctest::Approx(ref[k]).epsilon(1e-6));
            CHECK(r.converged);
        }
    }

    SUBCASE("single vehicle gets the whole budget")
    {
        const auto r = alg1_delay_bisection(links_from({2.5}, 0.7), 3.0);
        CHECK(r.powers[0] == doctest::Approx(3.0).epsilon(1e-14));
        CHECK(r.max_delay == doctest::Approx(0.7 / std::log(1.0 + 7.5)).epsilon(1e-14));
    }

    SUBCASE("unequal payloads against the grid oracle")
    {
        std::mt19937_64 rng(54);
        for (int i = 0; i < 10; ++i)
        {
            const auto l = oracle::random_links(rng, 3, 1.0, false);
            const auto r = alg1_delay_bisection(l, 1.0);
            const auto g = oracle_grid_search(l, 1.0, 2000);
            CHECK(r.max_delay <= g.max_delay + 1e-9);
            CHECK((g.max_delay - r.max_delay) / r.max_delay < 5e-3);
        }
    }

    SUBCASE("bracket trace")
    {
        std::mt19937_64 rng(55);
        const auto l = oracle::random_links(rng, 4, 1.0, false);
        SolverParams params;
        params.eps_delay = 1e-7;
        const auto r = alg1_delay_bisection(l, 1.0, params);
        const auto e = epa(l, 1.0);
        REQUIRE(r.bracket_trace.size() == r.iterations + 1);
        CHECK(r.bracket_trace.front().t_upper == e.max_delay);
        CHECK(r.bracket_trace.front().t_lower == *std::min_element(e.delays.begin(), e.delays.end()));
        for (std::size_t i = 1; i < r.bracket_trace.size(); ++i)
        {
            CHECK(r.bracket_trace[i].t_lower >= r.bracket_trace[i - 1].t_lower);
            CHECK(r.bracket_trace[i].t_upper <= r.bracket_trace[i - 1].t_upper);
        }
        const auto &last = r.bracket_trace.back();
        CHECK(last.t_upper - last.t_lower <= params.eps_delay);
        const auto &first = r.bracket_trace.front();
        const double bound = std::ceil(std::log2((first.t_upper - first.t_lower) / params.eps_delay)) + 1.0;
        CHECK(static_cast<double>(r.iterations) <= bound);
    }

    SUBCASE("binding floor defers to alg2")
    {
        auto l = links_from({1.0, 3.0});
        l[1].power_floor = 1.5;
        const auto r = alg1_delay_bisection(l, 4.0);
        CHECK_FALSE(r.converged);
        CHECK(r.infeasible_reason.has_value());
    }

    SUBCASE("infeasible and non-converging inputs")
    {
        auto l = links_from({1.0, 3.0});
        l[0].power_floor = 3.0;
        l[1].power_floor = 2.0;
        try
        {
            alg1_delay_bisection(l, 4.0);
            FAIL("expected InfeasibleError");
        }
        catch (const InfeasibleError &e)
        {
            CHECK(e.deficit_w() == doctest::Approx(1.0));
        }

        SolverParams tiny;
        tiny.max_iters = 2;
        CHECK_THROWS_AS(alg1_delay_bisection(links_from({1.0, 30.0}), 4.0, tiny), ConvergenceError);
    }
}

TEST_CASE("alg2 complementary transfers")
{
    SUBCASE("identical links stay at the equal split")
    {
        const auto r = alg2_complementary(links_from({4.0, 4.0, 4.0}), 3.0);
        for (double p : r.powers)
            CHECK(p == 1.0);
        CHECK(r.converged);
    }

    SUBCASE("two vehicles reach the closed form")
    {
        const auto r = alg2_complementary(links_from({1.0, 3.0}), 4.0);
        CHECK(r.powers[0] == doctest::Approx(3.0).epsilon(1e-8));
        CHECK(r.powers[1] == doctest::Approx(1.0).epsilon(1e-8));
        CHECK(total(r.powers) == doctest::Approx(4.0).epsilon(1e-12));
    }

    SUBCASE("low budget: relaxed floors infeasible, exact floors feasible")
    {
        PcrbModel m;
        m.b1_sq = {1.0, 0.0, 0.0, 0.0};
        m.b2_sq = {0.01, 0.0, 0.0, 0.0};
        m.eigs = {1.0, 1.0, 1.0, 1.0};
        const PcrbThresholds thr{0.1, 1.0};
        auto relaxed = links_from({2.0, 0.5});
        auto exact = relaxed;
        for (auto &x : relaxed)
            x.power_floor = power_floor_relaxed(m, thr); // 10 W
        for (auto &x : exact)
            x.power_floor = power_floor_exact(m, thr); // 9 W
        const double p_max = 19.0;
        CHECK_THROWS_AS(alg1_delay_bisection(relaxed, p_max), InfeasibleError);
        const auto r = alg2_complementary(exact, p_max);
        CHECK(r.feasible());
        for (double p : r.powers)
            CHECK(pcrb_angle(p, m) <= thr.xi_theta * (1.0 + 1e-9));
        CHECK(total(r.powers) == doctest::Approx(p_max).epsilon(1e-12));
    }

    SUBCASE("start repair lifts deficient vehicles")
    {
        auto l = links_from({5.0, 1.0, 2.0});
        l[0].power_floor = 0.7;
        const auto r = alg2_complementary(l, 1.0);
        CHECK(r.powers[0] >= 0.7);
        CHECK(total(r.powers) == doctest::Approx(1.0).epsilon(1e-12));
        r.validate(l, 1.0);
    }

    SUBCASE("donor floors are respected")
    {
        // vehicle 1 would give away most of its power without its floor
        auto l = links_from({0.5, 50.0});
        l[1].power_floor = 0.45;
        const auto r = alg2_complementary(l, 1.0);
        CHECK(r.converged);
        CHECK(r.powers[1] == doctest::Approx(0.45).epsilon(1e-12));
        CHECK(r.powers[0] == doctest::Approx(0.55).epsilon(1e-12));
        r.validate(l, 1.0);
    }

    SUBCASE("single vehicle")
    {
        const auto r = alg2_complementary(links_from({2.0}), 1.5);
        CHECK(r.powers[0] == 1.5);
    }

    SUBCASE("iteration cap")
    {
        SolverParams tiny;
        tiny.max_iters = 3;
        CHECK_THROWS_AS(alg2_complementary(links_from({1.0, 3.0}), 4.0, tiny), ConvergenceError);
    }
}

TEST_CASE("grid oracle")
{
    CHECK(oracle_grid_search(links_from({3.0}), 2.0, 100).powers[0] == doctest::Approx(2.0));
    const auto sym = oracle_grid_search(links_from({3.0, 3.0}), 2.0, 100);
    CHECK(sym.powers[0] == doctest::Approx(1.0));
    CHECK(sym.powers[1] == doctest::Approx(1.0));
    const auto two = oracle_grid_search(links_from({1.0, 3.0}), 4.0, 2000);
    CHECK(two.powers[0] == doctest::Approx(3.0).epsilon(4.0 / 2000.0));
    CHECK(two.powers[1] == doctest::Approx(1.0).epsilon(4.0 / 2000.0));
    CHECK_THROWS_AS(oracle_grid_search(links_from({1, 1, 1, 1, 1}), 1.0, 100), ContractError);
    CHECK_THROWS_AS(oracle_grid_search(links_from({1, 1}), 1.0, 99), DomainError);
}

TEST_CASE("allocator invariants on random instances")
{
    std::mt19937_64 rng(56);
    std::uniform_int_distribution<std::size_t> kdist(1, 8);
    std::uniform_real_distribution<double> pm(0.1, 10.0);
    SolverParams params;
    for (int i = 0; i < 300; ++i)
    {
        const double p_max = pm(rng);
        const auto l = oracle::random_links(rng, kdist(rng), p_max, i % 2 == 0);
        const auto e = epa(l, p_max);
        const auto r1 = alg1_delay_bisection(l, p_max, params);
        const auto r2 = alg2_complementary(l, p_max, params);
        r1.validate(l, p_max);
        r2.validate(l, p_max);

        CHECK(r1.max_delay <= e.max_delay * (1.0 + 1e-12));
        CHECK(r2.max_delay <= e.max_delay);
        CHECK(std::abs(total(r1.powers) - p_max) / p_max <= 1e-9);
        CHECK(std::abs(total(r2.powers) - p_max) / p_max <= 1e-9);
        CHECK(spread(r1) / r1.max_delay <= 1e-4);

        double ab = 0.0;
        for (const auto &x : l)
            ab = std::max(ab, x.a_coef * x.b_coef);
        CHECK(spread(r2) <= 10.0 * params.eps_power * ab);
    }
}

TEST_CASE("allocators are deterministic")
{
    std::mt19937_64 rng(57);
    const auto l = oracle::random_links(rng, 6, 2.0, false);
    const auto a = alg2_complementary(l, 2.0);
    const auto b = alg2_complementary(l, 2.0);
    CHECK(a.powers == b.powers);
    CHECK(a.iterations == b.iterations);
    CHECK(alg1_delay_bisection(l, 2.0).powers == alg1_delay_bisection(l, 2.0).powers);
}

TEST_CASE("policy names")
{
    for (auto p : {Policy::epa, Policy::closed_form, Policy::alg1, Policy::alg2})
        CHECK(parse_policy(to_string(p)) == p);
    CHECK_THROWS_AS(parse_policy("greedy"), DomainError);
}
