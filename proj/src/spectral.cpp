#include "sparsekit/spectral.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <ostream>

#include "fft.hpp"
#include "sparsekit/maximal.hpp"
#include "sparsekit/parallel.hpp"

namespace sparsekit {

double lp_profile(double r) {
    if (r <= 1.0) return 1.0;
    if (r >= 2.0) return 0.0;
    const double u = r - 1.0;
    const double s = u * u * u * u * (35.0 - 84.0 * u + 70.0 * u * u - 20.0 * u * u * u);
    return 1.0 - s;
}

double lp_multiplier(int j, double radius) {
    if (j == 0) return lp_profile(radius);
    return lp_profile(std::ldexp(radius, -j)) - lp_profile(std::ldexp(radius, 1 - j));
}

LPDecomposition lp_blocks(const GridFunction& f, int pad) {
    f.validate();
    PaddedGrid g = embed_padded(f, pad);
    LPDecomposition d;
    d.n = f.n;
    d.J = f.J;
    d.pad = pad;
    const int n = f.n;
    const std::size_t S = g.side(), total = g.values.size();
    const double L = d.domain_side(), h = d.cell_measure();
    std::vector<int> dims(n, static_cast<int>(S));

    d.fhat.resize(total);
    for (std::size_t i = 0; i < total; ++i) d.fhat[i] = g.values[i] * h;
    detail::fft_inplace(d.fhat, dims, false);

    d.radius.resize(total);
    double rmax = 0.0;
    for (std::size_t i = 0; i < total; ++i) {
        std::size_t r = i;
        double r2 = 0.0;
        for (int ax = n - 1; ax >= 0; --ax) {
            double k = static_cast<double>(detail::signed_freq(static_cast<long>(r % S), static_cast<long>(S)));
            r /= S;
            r2 += k * k;
        }
        d.radius[i] = std::sqrt(r2) / L;
        rmax = std::max(rmax, d.radius[i]);
    }
    d.jmax = 0;
    while (std::ldexp(1.0, d.jmax) < rmax) ++d.jmax;

    d.blocks.assign(d.jmax + 1, {});
    d.linf.assign(d.jmax + 1, 0.0);
    d.l2.assign(d.jmax + 1, 0.0);
    parallel_for(d.jmax + 1, [&](std::size_t jj) {
        const int j = static_cast<int>(jj);
        std::vector<std::complex<double>> a(total);
        for (std::size_t i = 0; i < total; ++i) a[i] = d.fhat[i] * lp_multiplier(j, d.radius[i]);
        detail::fft_inplace(a, dims, true);
        // inverse of the h-weighted forward transform: divide by h and by the bin count
        const double scale = 1.0 / (h * static_cast<double>(total));
        std::vector<double> b(total), sq(total);
        double mx = 0.0;
        for (std::size_t i = 0; i < total; ++i) {
            b[i] = a[i].real() * scale;
            mx = std::max(mx, std::abs(b[i]));
            sq[i] = b[i] * b[i] * h;
        }
        d.linf[j] = mx;
        d.l2[j] = std::sqrt(pairwise_sum(sq));
        d.blocks[j] = std::move(b);
    });
    return d;
}

std::vector<double> lp_partition_sums(const LPDecomposition& d) {
    std::vector<double> s(d.radius.size(), 0.0);
    for (std::size_t i = 0; i < s.size(); ++i)
        for (int j = 0; j <= d.jmax; ++j) s[i] += lp_multiplier(j, d.radius[i]);
    return s;
}

double besov_norm(const LPDecomposition& d, const BesovParams& b) {
    if (!(b.p >= 1.0 && b.q >= 1.0)) throw ParameterError("Besov exponents must be >= 1");
    const double h = d.cell_measure();
    std::vector<double> terms(d.jmax + 1);
    for (int j = 0; j <= d.jmax; ++j) {
        double bp;
        if (std::isinf(b.p)) {
            bp = d.linf[j];
        } else if (b.p == 2.0) {
            bp = d.l2[j];
        } else {
            std::vector<double> t(d.blocks[j].size());
            for (std::size_t i = 0; i < t.size(); ++i) t[i] = std::pow(std::abs(d.blocks[j][i]), b.p) * h;
            bp = std::pow(pairwise_sum(t), 1.0 / b.p);
        }
        terms[j] = std::exp2(b.s * j) * bp;
    }
    if (std::isinf(b.q)) return *std::max_element(terms.begin(), terms.end());
    for (double& t : terms) t = std::pow(t, b.q);
    return std::pow(pairwise_sum(terms), 1.0 / b.q);
}

TruncatedNorm vpsi_norm(const LPDecomposition& d, const Decay& psi) {
    BlockSequence one(d.jmax + 1);
    for (int j = 0; j <= d.jmax; ++j) one[j] = {d.linf[j]};
    return TruncatedNorm{vpsi_seq(one, psi), std::min(d.jmax, psi.nmax())};
}

TpsiNorm tpsi_norm(const LPDecomposition& d, const Decay& psi) {
    TpsiNorm out;
    out.truncated_at = std::min(d.jmax, psi.nmax());
    // tpsi_scalar sums (2^{-2j} a_j)^2; a_j = 2^j ||D_j f||_2 gives 2^{-2j} ||D_j f||_2^2
    std::vector<double> a(d.jmax + 1);
    for (int j = 0; j <= d.jmax; ++j) a[j] = std::ldexp(d.l2[j], j);
    out.blockwise = tpsi_scalar(a, psi);

    const double vol = std::pow(d.domain_side(), d.n);
    double best = 0.0;
    for (int N = 0; N <= out.truncated_at; ++N) {
        const double cut = std::ldexp(1.0, N) - 1.0;
        std::vector<double> t(d.fhat.size(), 0.0);
        for (std::size_t i = 0; i < t.size(); ++i)
            if (d.radius[i] > cut) t[i] = std::norm(d.fhat[i]) / (1.0 + d.radius[i] * d.radius[i]);
        best = std::max(best, pairwise_sum(t) / vol / (psi(N) * psi(N)));
    }
    out.fourier = std::sqrt(best);
    return out;
}

double nikolskii_ratio(const LPDecomposition& d) {
    if (d.n != 2) throw ParameterError("nikolskii_ratio is defined for n = 2");
    // blocks at round-off level relative to the largest one count as zero
    const double floor = 1e-12 * *std::max_element(d.l2.begin(), d.l2.end());
    double r = 0.0;
    for (int j = 0; j <= d.jmax; ++j)
        if (d.l2[j] > floor && d.l2[j] > 0.0) r = std::max(r, d.linf[j] / (std::ldexp(1.0, j) * d.l2[j]));
    return r;
}

namespace {

double haar_sign(unsigned child, unsigned e) { return (std::popcount(child & e) % 2) ? -1.0 : 1.0; }

}  // namespace

HaarCoefficients haar_coeffs(const GridFunction& f) {
    f.validate();
    const int n = f.n, J = f.J;
    auto t = build_table(f);
    HaarCoefficients out;
    out.n = n;
    out.J = J;
    out.scaling = t.signed_levels[0][0];
    out.levels.assign(J, {});
    const unsigned types = (1u << n) - 1;
    for (int N = 0; N < J; ++N) {
        const std::size_t cnt = cubes_at_level(n, N);
        out.levels[N].assign(cnt * types, 0.0);
        // (f, Upsilon) = |Q|^{-1/2} sum_c sign * int_child f; lambda = 2^{Nn/2} (f, Upsilon) = 2^{Nn} sum
        const double scale = std::ldexp(1.0, N * n);
        for (std::size_t l = 0; l < cnt; ++l)
            for (unsigned e = 1; e <= types; ++e) {
                double s[8];
                for (unsigned c = 0; c <= types; ++c) s[c] = haar_sign(c, e) * t.signed_levels[N + 1][child_linear_index(n, N, l, c)];
                out.levels[N][l * types + e - 1] = scale * pairwise_sum(std::span<const double>(s, types + 1));
            }
    }
    return out;
}

GridFunction haar_atom(int n, int J, int level, std::size_t idx, unsigned e) {
    if (level < 0 || level >= J) throw ParameterError("Haar level must lie in 0..J-1");
    if (e < 1 || e >= (1u << n)) throw ParameterError("Haar type must lie in 1..2^n-1");
    GridFunction g = GridFunction::zeros(n, J);
    for (unsigned c = 0; c < (1u << n); ++c) {
        DyadicCube child = cube_from_linear(n, level + 1, child_linear_index(n, level, idx, c));
        for (auto cell : cells_of_cube(n, J, child)) g.values[cell] = haar_sign(c, e);
    }
    return g;
}

void write_block_csv(std::ostream& os, const LPDecomposition& d) {
    os << "j,linf,l2\n";
    char buf[96];
    for (int j = 0; j <= d.jmax; ++j) {
        std::snprintf(buf, sizeof buf, "%d,%.17g,%.17g\n", j, d.linf[j], d.l2[j]);
        os << buf;
    }
}

}  // namespace sparsekit
