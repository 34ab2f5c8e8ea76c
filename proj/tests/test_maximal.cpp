#include <cmath>
#include <random>

#include "doctest.h"
#include "sparsekit/maximal.hpp"

using namespace sparsekit;

namespace {

GridFunction random_grid(int n, int J, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    GridFunction f = GridFunction::zeros(n, J, true);
    for (double& v : f.values) v = u(rng) < 0.3 ? 0.0 : u(rng);
    return f;
}

GridFunction atom22() {
    GridFunction f = GridFunction::zeros(2, 2, true);
    f.values[0] = 16.0;
    return f;
}

MaximalParams mp(double lambda, double alpha) { return MaximalParams{lambda, alpha, 1.0, 1.0}; }

// Max over every grid-aligned cube of the padded domain (no wrap) with side at most
// smax cells containing each cell.
std::vector<double> all_cubes_max(const PaddedGrid& g, double lambda, long smax) {
    const int n = g.n;
    const long S = static_cast<long>(g.side());
    const double h1 = std::ldexp(1.0, -g.J);
    std::vector<double> out(g.values.size(), 0.0);
    std::size_t total = g.values.size();
    for (long s = 1; s <= smax; ++s)
        for (std::size_t corner = 0; corner < total; ++corner) {
            long c[3] = {0, 0, 0};
            std::size_t r = corner;
            for (int i = n - 1; i >= 0; --i) {
                c[i] = static_cast<long>(r % S);
                r /= S;
            }
            bool fits = true;
            for (int i = 0; i < n; ++i) fits &= c[i] + s <= S;
            if (!fits) continue;
            double mass = 0.0;
            std::vector<std::size_t> cells;
            for (std::size_t cell = 0; cell < total; ++cell) {
                std::size_t rr = cell;
                bool in = true;
                for (int i = n - 1; i >= 0; --i) {
                    long x = static_cast<long>(rr % S);
                    rr /= S;
                    in &= x >= c[i] && x < c[i] + s;
                }
                if (in) {
                    mass += std::abs(g.values[cell]) * std::pow(h1, n);
                    cells.push_back(cell);
                }
            }
            double v = std::pow(std::pow(s * h1, n), lambda / n - 1.0) * mass;
            for (auto cell : cells) out[cell] = std::max(out[cell], v);
        }
    return out;
}

}  // namespace

TEST_CASE("constant function is its own maximal function") {
    auto f = GridFunction::constant(2, 3, 1.0);
    for (double lambda : {0.0, 0.5, 1.5}) {
        auto m = dyadic_maximal(f, mp(lambda, 0.0));
        for (double v : m.values) CHECK(v == doctest::Approx(1.0).epsilon(1e-15));
    }
    auto m = dyadic_maximal(f, mp(0.0, -1.0));
    for (double v : m.values) CHECK(v == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("atom maximal function follows the common ancestor level") {
    auto m = dyadic_maximal(atom22(), mp(0.0, 0.0));
    // cells row-major, 4x4
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) {
            int k = 0;
            if (i < 2 && j < 2) k = 1;
            if (i == 0 && j == 0) k = 2;
            CHECK(m.values[i * 4 + j] == std::ldexp(1.0, 2 * k));
        }
}

TEST_CASE("dyadic maximal rejects lambda outside [0,n)") {
    auto f = atom22();
    CHECK_THROWS_AS(dyadic_maximal(f, mp(2.0, 0.0)), ParameterError);
    CHECK_THROWS_AS(dyadic_maximal(f, mp(-0.1, 0.0)), ParameterError);
}

TEST_CASE("dyadic maximal is homogeneous, monotone and dominates the mean") {
    auto f = random_grid(2, 4, 3);
    auto g = f;
    std::mt19937_64 rng(4);
    for (double& v : g.values) v += std::uniform_real_distribution<double>(0.0, 0.5)(rng);
    auto t = build_table(f);
    for (double lambda : {0.0, 0.8}) {
        for (double alpha : {-1.0, 0.0, 1.0}) {
            auto mf = dyadic_maximal(f, mp(lambda, alpha));
            auto mg = dyadic_maximal(g, mp(lambda, alpha));
            auto f3 = f;
            for (double& v : f3.values) v *= 3.0;
            auto m3 = dyadic_maximal(f3, mp(lambda, alpha));
            for (std::size_t i = 0; i < f.size(); ++i) {
                CHECK(mf.values[i] <= mg.values[i]);
                CHECK(m3.values[i] == doctest::Approx(3.0 * mf.values[i]).epsilon(1e-14));
            }
        }
    }
    auto m0 = dyadic_maximal(f, mp(0.0, 0.0));
    double mean = cube_average(f, t, DyadicCube{});
    for (double v : m0.values) CHECK(v >= mean);
}

TEST_CASE("dyadic maximal matches a direct scan over ancestors") {
    const int n = 1, J = 5;
    auto f = random_grid(n, J, 8);
    auto t = build_table(f);
    auto fac = maximal_level_factors(n, J, 0.4, 0.7);
    auto m = dyadic_maximal(f, t, mp(0.4, 0.7));
    for (std::size_t cell = 0; cell < f.size(); ++cell) {
        double best = 0.0;
        for (int k = 0; k <= J; ++k) best = std::max(best, fac[k] * t.abs_levels[k][ancestor_of_cell(n, J, cell, k)]);
        CHECK(m.values[cell] == best);
    }
}

TEST_CASE("fractional maximal dominates the dyadic one and equals 1 for the indicator") {
    auto one = GridFunction::constant(2, 3, 1.0);
    auto fm = fractional_maximal(one, 0.0);
    auto r = fm.restrict_to_unit();
    for (double v : r.values) CHECK(v == doctest::Approx(1.0).epsilon(1e-14));

    for (int n = 1; n <= 2; ++n) {
        auto f = random_grid(n, n == 1 ? 5 : 3, 21 + n);
        for (double lambda : {0.0, 0.5}) {
            auto d = dyadic_maximal(f, mp(lambda, 0.0));
            auto fr = fractional_maximal(f, lambda).restrict_to_unit();
            for (std::size_t i = 0; i < f.size(); ++i) CHECK(d.values[i] <= fr.values[i]);
        }
    }
}

TEST_CASE("fractional maximal sits within a dimensional factor of the all-cubes maximal") {
    for (int n = 1; n <= 2; ++n) {
        const int J = n == 1 ? 5 : 3;
        for (std::uint64_t seed = 0; seed < 3; ++seed) {
            auto f = random_grid(n, J, 100 + seed);
            for (double lambda : {0.0, 0.5}) {
                auto fr = fractional_maximal(f, lambda);
                auto big = all_cubes_max(embed_padded(f, 3), lambda, 1L << J);
                auto small = all_cubes_max(embed_padded(f, 3), lambda, (1L << J) / 3);
                const double C = std::pow(6.0, n - lambda);
                for (std::size_t i = 0; i < big.size(); ++i) {
                    CHECK(fr.values[i] <= big[i] * (1 + 1e-12));
                    CHECK(small[i] <= C * fr.values[i] * (1 + 1e-12));
                }
            }
        }
    }
}

TEST_CASE("diagonal kernel average") {
    CHECK(riesz_diagonal_average(1, 0.5) == doctest::Approx(std::pow(0.5, -0.5) / 0.5).epsilon(1e-14));
    // self-similar split: the centre third of the cell is a scaled copy of the cell
    for (int n = 2; n <= 3; ++n) {
        const double lambda = n == 2 ? 1.0 : 1.5;
        const int m = 3, sub = n == 2 ? 60 : 16;
        double others = 0.0;
        const int cells = static_cast<int>(std::pow(m * sub, n));
        const double hh = 1.0 / (m * sub);
        for (int idx = 0; idx < cells; ++idx) {
            int r = idx, c[3] = {0, 0, 0};
            bool centre = true;
            double r2 = 0.0;
            for (int i = n - 1; i >= 0; --i) {
                c[i] = r % (m * sub);
                r /= m * sub;
                centre &= c[i] / sub == 1;
                double x = -0.5 + (c[i] + 0.5) * hh;
                r2 += x * x;
            }
            if (!centre) others += std::pow(r2, (lambda - n) / 2) * std::pow(hh, n);
        }
        double expect = others / (1.0 - std::pow(m, -lambda));
        CHECK(riesz_diagonal_average(n, lambda) == doctest::Approx(expect).epsilon(2e-3));
    }
    CHECK_THROWS_AS(riesz_diagonal_average(2, 2.0), ParameterError);
}

TEST_CASE("riesz potential: direct and FFT agree, zero maps to zero") {
    auto z = GridFunction::zeros(2, 3, true);
    auto pz = riesz_potential(z, 1.0);
    for (double v : pz.values) CHECK(v == 0.0);
    CHECK_THROWS_AS(riesz_potential(z, 0.0), ParameterError);
    CHECK_THROWS_AS(riesz_potential(z, 2.0), ParameterError);

    for (int n = 1; n <= 2; ++n) {
        auto f = random_grid(n, 4, 50 + n);
        double lambda = n == 1 ? 0.4 : 1.0;
        auto a = riesz_potential(f, lambda, 3, ConvolutionMethod::direct);
        auto b = riesz_potential(f, lambda, 3, ConvolutionMethod::fft);
        double mx = 0.0;
        for (double v : a.values) mx = std::max(mx, v);
        for (std::size_t i = 0; i < a.values.size(); ++i) CHECK(std::abs(a.values[i] - b.values[i]) <= 1e-12 * mx);
    }
}

TEST_CASE("riesz potential of a point mass is close to the kernel away from it") {
    const int J = 4;
    GridFunction f = GridFunction::zeros(2, J, true);
    f.values[0] = std::ldexp(1.0, 2 * J);
    auto p = riesz_potential(f, 1.0, 3, ConvolutionMethod::direct);
    const std::size_t S = p.side(), o = p.offset();
    const double h = std::ldexp(1.0, -J);
    for (std::size_t d : {4u, 8u, 12u}) {
        double v = p.values[(o + d) * S + o];
        CHECK(v == doctest::Approx(1.0 / (d * h)).epsilon(1e-12));
    }
}

TEST_CASE("sobolev norm: atom grows with padding, fourier route tracks direct route") {
    GridFunction atom = GridFunction::zeros(2, 3, true);
    atom.values[0] = 64.0;
    double a3 = sobolev_negative_norm(atom, 1.0, 2.0, 3);
    double a5 = sobolev_negative_norm(atom, 1.0, 2.0, 5);
    CHECK(a5 > a3);
    CHECK(sobolev_negative_norm(GridFunction::zeros(2, 3, true), 1.0, 2.0) == 0.0);

    GridFunction bump = GridFunction::zeros(2, 4, true);
    for (std::size_t i = 0; i < 16; ++i)
        for (std::size_t j = 0; j < 16; ++j) {
            double x = (i + 0.5) / 16 - 0.5, y = (j + 0.5) / 16 - 0.5;
            bump.values[i * 16 + j] = std::exp(-40 * (x * x + y * y));
        }
    double d = sobolev_negative_norm(bump, 1.0, 2.0, 3);
    double fo = sobolev_negative_norm_fourier(bump, 1.0, 3);
    CHECK(fo / d > 0.5);
    CHECK(fo / d < 2.0);
}
