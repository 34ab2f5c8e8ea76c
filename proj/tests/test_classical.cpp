#include <cmath>
#include <limits>
#include <random>

#include "doctest.h"
#include "sparsekit/classical.hpp"
#include "sparsekit/sparse.hpp"

using namespace sparsekit;

namespace {

GridFunction random_grid(int n, int J, std::uint64_t seed, double zero_frac = 0.3) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    GridFunction f = GridFunction::zeros(n, J, true);
    for (double& v : f.values) v = u(rng) < zero_frac ? 0.0 : std::pow(u(rng), 4.0) * 20.0;
    return f;
}

GridFunction atom(int n, int J) {
    GridFunction f = GridFunction::zeros(n, J, true);
    f.values[0] = std::ldexp(1.0, n * J);
    return f;
}

double eval_cube(const GridFunction& f, const DyadicCube& q, double p, double alpha) {
    auto c = sr_cube_values(build_table(f), p, alpha);
    return c[q.level][cube_linear_index(f.n, q)];
}

}  // namespace

TEST_CASE("lp norm examples") {
    for (double p : {1.0, 1.5, 2.0, 7.0, std::numeric_limits<double>::infinity()}) CHECK(lp_norm(GridFunction::constant(2, 3, 1.0), p) == doctest::Approx(1.0));
    for (double p : {1.0, 1.5, 2.0, 3.0}) CHECK(lp_norm(atom(2, 2), p) == doctest::Approx(std::pow(16.0, 1.0 - 1.0 / p)).epsilon(1e-14));
    auto f = random_grid(1, 6, 2);
    double s = 0.0;
    for (double v : f.values) s += v * v / 64.0;
    CHECK(lp_norm(f, 2.0) == doctest::Approx(std::sqrt(s)).epsilon(1e-14));
    CHECK_THROWS_AS(lp_norm(f, 0.5), ParameterError);
}

TEST_CASE("morrey examples and exhaustive dominance") {
    auto m = morrey_norm(GridFunction::constant(2, 3, 1.0), 2.0, 0.0);
    CHECK(m.value == doctest::Approx(1.0));
    CHECK(m.witness.front() == DyadicCube{});
    auto a = morrey_norm(atom(2, 2), 1.0, 1.0);
    CHECK(a.value == doctest::Approx(1.0 + 4.0 * std::log(2.0)).epsilon(1e-14));
    CHECK(a.witness.front().level == 2);
    auto c1 = morrey_norm(GridFunction::constant(2, 3, 1.0), 1.0, 0.0);
    CHECK(c1.value == 1.0);
    CHECK(c1.witness.front() == DyadicCube{});

    auto f = random_grid(2, 3, 9);
    for (double alpha : {-1.0, 0.0, 2.0}) {
        auto r = morrey_norm(f, 1.5, alpha);
        CHECK(eval_cube(f, r.witness.front(), 1.5, alpha) == r.value);
        auto c = sr_cube_values(build_table(f), 1.5, alpha);
        for (auto& lvl : c)
            for (double v : lvl) CHECK(v <= r.value);
    }
}

TEST_CASE("rmt examples") {
    CHECK(rmt_norm(GridFunction::constant(2, 4, 1.0), 1, 2, 0).value == doctest::Approx(1.0));
    CHECK(rmt_norm(atom(2, 4), 1, 2, 0).value == doctest::Approx(1.0));
    CHECK(rmt_norm(GridFunction::constant(2, 4, 1.0), 2, 2, 0).value == doctest::Approx(1.0));
    auto inf = rmt_norm(atom(2, 2), 1, std::numeric_limits<double>::infinity(), 1);
    CHECK(inf.value == morrey_norm(atom(2, 2), 1, 1).value);
}

TEST_CASE("rmt witness is a packing that re-evaluates to the value") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        auto f = random_grid(seed % 2 ? 1 : 2, seed % 2 ? 7 : 4, 60 + seed);
        for (double q : {1.5, 2.0, 3.0}) {
            auto r = rmt_norm(f, 1.0, q, 0.5);
            for (std::size_t i = 0; i < r.witness.size(); ++i)
                for (std::size_t j = 0; j < r.witness.size(); ++j)
                    if (i != j) CHECK_FALSE(cube_contains(r.witness[i], r.witness[j]));
            double s = 0.0;
            for (const auto& c : r.witness) s += std::pow(eval_cube(f, c, 1.0, 0.5), q);
            CHECK(std::pow(s, 1.0 / q) == doctest::Approx(r.value).epsilon(1e-12));
        }
    }
}

TEST_CASE("rmt matches exhaustive packing enumeration on tiny trees") {
    // all antichains of the n=1, J=3 tree
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        auto f = random_grid(1, 3, 80 + seed, 0.1);
        auto c = sr_cube_values(build_table(f), 1.2, 0.0);
        std::vector<DyadicCube> all;
        for (int k = 0; k <= 3; ++k)
            for (std::size_t i = 0; i < cubes_at_level(1, k); ++i) all.push_back(cube_from_linear(1, k, i));
        double best = 0.0;
        for (std::uint32_t mask = 0; mask < (1u << all.size()); ++mask) {
            bool ok = true;
            double s = 0.0;
            for (std::size_t i = 0; i < all.size() && ok; ++i) {
                if (!(mask >> i & 1)) continue;
                s += c[all[i].level][cube_linear_index(1, all[i])] * c[all[i].level][cube_linear_index(1, all[i])];
                for (std::size_t j = 0; j < i; ++j)
                    if ((mask >> j & 1) && (cube_contains(all[i], all[j]) || cube_contains(all[j], all[i]))) ok = false;
            }
            if (ok) best = std::max(best, s);
        }
        CHECK(rmt_norm(f, 1.2, 2.0, 0.0).value == doctest::Approx(std::sqrt(best)).epsilon(1e-13));
    }
}

TEST_CASE("crmt examples and the chain crmt <= rmt <= sparse upper") {
    CHECK(crmt_norm(GridFunction::constant(2, 4, 1.0), 2, 2, 0).value == doctest::Approx(1.0));
    CHECK(crmt_norm(atom(2, 4), 1, 2, 0).value == doctest::Approx(1.0));
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        auto f = random_grid(seed % 2 ? 1 : 2, seed % 2 ? 6 : 4, 200 + seed);
        for (auto pq : {SRParams{1, 2, 0}, SRParams{1.5, 2, 1}, SRParams{2, 3, 0}}) {
            double cr = crmt_norm(f, pq.p, pq.q, pq.alpha).value;
            double rm = rmt_norm(f, pq.p, pq.q, pq.alpha).value;
            double up = sr_interval(f, pq).upper;
            CHECK(cr <= rm * (1 + 1e-13));
            CHECK(rm <= up * (1 + 1e-13));
            CHECK(rm <= sr_interval(f, pq).lower * (1 + 1e-13));
        }
    }
}

TEST_CASE("lorentz examples") {
    auto c = lorentz_norms(GridFunction::constant(2, 3, 1.0));
    CHECK(c.l12 == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-14));
    auto a = lorentz_norms(atom(2, 2));
    CHECK(a.l1inf_log_half == doctest::Approx(std::sqrt(1.0 + std::log(16.0))).epsilon(1e-14));
}

TEST_CASE("lorentz norms match numeric oracles") {
    for (std::uint64_t seed = 0; seed < 6; ++seed) {
        auto f = random_grid(1, 4, 400 + seed);
        auto r = rearrangement(f);
        auto ln = lorentz_norms(f);
        // t f**(t) as an exact function of t
        auto F = [&](double t) {
            std::size_t i = std::min<std::size_t>(static_cast<std::size_t>(t / r.dt), r.fstar.size() - 1);
            double before = i == 0 ? 0.0 : r.fstarstar[i - 1] * i * r.dt;
            return before + r.fstar[i] * (t - i * r.dt);
        };
        // composite Simpson in s = ln t on each step
        double integral = 0.0;
        for (std::size_t i = 0; i < r.fstar.size(); ++i) {
            double lo = i == 0 ? 1e-12 : i * r.dt, hi = (i + 1) * r.dt;
            const int m = 2000;
            double a = std::log(lo), b = std::log(hi), hstep = (b - a) / m, s = 0.0;
            for (int k = 0; k <= m; ++k) {
                double t = std::exp(a + k * hstep);
                double w = (k == 0 || k == m) ? 1 : (k % 2 ? 4 : 2);
                s += w * F(std::min(t, hi * (1 - 1e-15))) * F(std::min(t, hi * (1 - 1e-15)));
            }
            integral += s * hstep / 3.0;
        }
        CHECK(ln.l12 == doctest::Approx(std::sqrt(integral)).epsilon(1e-6));
        double sup = 0.0;
        for (int k = 1; k <= 200000; ++k) {
            double t = k / 200000.0;
            sup = std::max(sup, std::sqrt(1.0 - std::log(t)) * F(std::min(t, 1.0 - 1e-15)));
        }
        CHECK(ln.l1inf_log_half >= sup * (1 - 1e-12));
        CHECK(ln.l1inf_log_half == doctest::Approx(sup).epsilon(1e-6));
    }
}

TEST_CASE("R_{1,2} is controlled by the Lorentz-Zygmund norm") {
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        auto f = random_grid(seed % 2 ? 1 : 2, seed % 2 ? 7 : 4, 500 + seed, 0.8);
        auto ln = lorentz_norms(f);
        double l1 = lp_norm(f, 1.0);
        CHECK(l1 <= ln.l1inf_log_half * (1 + 1e-14));
        CHECK(rmt_norm(f, 1, 2, 0).value <= ln.l1inf_log_half * (1 + 1e-12));
    }
}

TEST_CASE("report json") {
    auto j = to_json(morrey_norm(atom(2, 2), 1.0, 1.0), 2);
    CHECK(j["space"] == "morrey");
    CHECK(j["q"] == "inf");
    CHECK(j["witness"][0][0] == 2);
    CHECK(j["route"] == "exact");
}
