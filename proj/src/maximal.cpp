#include "sparsekit/maximal.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <complex>
#include <numbers>

#include "fft.hpp"
#include "sparsekit/parallel.hpp"

namespace sparsekit {

MaximalParams MaximalParams::from_pq(int n, double p, double q, double alpha) {
    MaximalParams m;
    m.p = p;
    m.q = q;
    m.alpha = alpha;
    m.lambda = std::isinf(q) ? n / p : n * (1.0 / p - 1.0 / q);
    return m;
}

double log_weight(int n, int k, double alpha) {
    if (alpha == 0.0) return 1.0;
    return std::pow(1.0 + k * n * std::numbers::ln2, alpha);
}

std::vector<double> maximal_level_factors(int n, int J, double lambda, double alpha) {
    std::vector<double> w(J + 1);
    for (int k = 0; k <= J; ++k)
        w[k] = std::pow(cube_measure(n, k), lambda / n - 1.0) * log_weight(n, k, alpha);
    return w;
}

std::vector<double> cellwise_level_max(int n, int J, const std::vector<std::vector<double>>& w) {
    std::vector<double> cur = w[0];
    for (int k = 1; k <= J; ++k) {
        std::vector<double> next(cubes_at_level(n, k));
        const std::size_t cnt = cubes_at_level(n, k - 1);
        for (std::size_t q = 0; q < cnt; ++q)
            for (unsigned c = 0; c < (1u << n); ++c) {
                std::size_t ch = child_linear_index(n, k - 1, q, c);
                next[ch] = std::max(cur[q], w[k][ch]);
            }
        cur = std::move(next);
    }
    return cur;
}

GridFunction dyadic_maximal(const GridFunction& f, const MaximalParams& params) {
    return dyadic_maximal(f, build_table(f), params);
}

GridFunction dyadic_maximal(const GridFunction& f, const IntegralTable& t, const MaximalParams& params) {
    if (!(params.lambda >= 0.0 && params.lambda < f.n))
        throw ParameterError("dyadic_maximal: lambda must lie in [0, n)");
    auto fac = maximal_level_factors(f.n, f.J, params.lambda, params.alpha);
    std::vector<std::vector<double>> w(f.J + 1);
    for (int k = 0; k <= f.J; ++k) {
        w[k] = t.abs_levels[k];
        for (double& v : w[k]) v *= fac[k];
    }
    GridFunction out;
    out.n = f.n;
    out.J = f.J;
    out.nonneg = true;
    out.values = cellwise_level_max(f.n, f.J, w);
    return out;
}

double PaddedGrid::cell_measure() const { return std::ldexp(1.0, -n * J); }

double PaddedGrid::lq_norm(double q) const {
    std::vector<double> t(values.size());
    const double h = cell_measure();
    if (std::isinf(q)) {
        double m = 0.0;
        for (double v : values) m = std::max(m, std::abs(v));
        return m;
    }
    for (std::size_t i = 0; i < values.size(); ++i) t[i] = std::pow(std::abs(values[i]), q) * h;
    return std::pow(pairwise_sum(t), 1.0 / q);
}

namespace {

std::size_t padded_index(int n, std::size_t side, const std::array<std::size_t, 3>& c) {
    std::size_t idx = 0;
    for (int i = 0; i < n; ++i) idx = idx * side + c[i];
    return idx;
}

std::array<std::size_t, 3> padded_coords(int n, std::size_t side, std::size_t idx) {
    std::array<std::size_t, 3> c{0, 0, 0};
    for (int i = n - 1; i >= 0; --i) {
        c[i] = idx % side;
        idx /= side;
    }
    return c;
}

void check_pad(int pad) {
    if (pad < 1 || pad % 2 == 0) throw ParameterError("padding factor must be an odd integer >= 1");
}

}  // namespace

GridFunction PaddedGrid::restrict_to_unit() const {
    GridFunction g = GridFunction::zeros(n, J, true);
    const std::size_t s = std::size_t{1} << J;
    for (std::size_t i = 0; i < g.size(); ++i) {
        std::array<std::size_t, 3> c{0, 0, 0};
        std::size_t r = i;
        for (int d = n - 1; d >= 0; --d) {
            c[d] = r % s + offset();
            r /= s;
        }
        g.values[i] = values[padded_index(n, side(), c)];
        if (g.values[i] < 0) g.nonneg = false;
    }
    return g;
}

PaddedGrid embed_padded(const GridFunction& f, int pad) {
    check_pad(pad);
    PaddedGrid p;
    p.n = f.n;
    p.J = f.J;
    p.pad = pad;
    std::size_t total = 1;
    for (int i = 0; i < f.n; ++i) total *= p.side();
    p.values.assign(total, 0.0);
    const std::size_t s = f.side();
    for (std::size_t i = 0; i < f.size(); ++i) {
        std::array<std::size_t, 3> c{0, 0, 0};
        std::size_t r = i;
        for (int d = f.n - 1; d >= 0; --d) {
            c[d] = r % s + p.offset();
            r /= s;
        }
        p.values[padded_index(f.n, p.side(), c)] = f.values[i];
    }
    return p;
}

PaddedGrid fractional_maximal(const GridFunction& f, double lambda, int pad) {
    f.validate();
    if (!(lambda >= 0.0 && lambda < f.n)) throw ParameterError("fractional_maximal: lambda must lie in [0, n)");
    check_pad(pad);
    const int n = f.n;
    PaddedGrid absf = embed_padded(f, pad);
    for (double& v : absf.values) v = std::abs(v);
    const std::size_t S = absf.side();
    const double h = absf.cell_measure();

    // Unshifted grid: inside Q0 this is exactly the dyadic maximal function; outside it vanishes.
    PaddedGrid out = embed_padded(dyadic_maximal(f, MaximalParams{lambda, 0.0, 1.0, 1.0}), pad);
    out.values.resize(absf.values.size());

    const int nshift = 1;
    for (int k = 0; k <= f.J; ++k) {
        const std::size_t s = std::size_t{1} << (f.J - k);
        const std::size_t blocks = S / s;
        const double fac = std::pow(std::pow(static_cast<double>(s), n) * h, lambda / n - 1.0);
        const long base = std::lround(static_cast<double>(s) / 3.0);
        const long sign = (k % 2 == 0) ? 1 : -1;
        std::size_t combos = 1;
        for (int i = 0; i < n; ++i) combos *= 3;
        for (std::size_t t = nshift; t < combos; ++t) {
            // Per-axis shift in cells for this translate.
            std::array<std::size_t, 3> shift{0, 0, 0};
            std::size_t tt = t;
            for (int i = n - 1; i >= 0; --i) {
                long j = static_cast<long>(tt % 3);
                tt /= 3;
                long sh = sign * j * base;
                shift[i] = static_cast<std::size_t>(((sh % static_cast<long>(S)) + static_cast<long>(S)) %
                                                    static_cast<long>(S));
            }
            // Separable block sums: reduce one axis at a time (last axis first).
            std::vector<double> cur = absf.values;
            std::array<std::size_t, 3> dims{1, 1, 1};
            for (int i = 0; i < n; ++i) dims[i] = S;
            for (int ax = n - 1; ax >= 0; --ax) {
                std::array<std::size_t, 3> nd = dims;
                nd[ax] = blocks;
                std::size_t outer = 1, inner = 1;
                for (int i = 0; i < ax; ++i) outer *= dims[i];
                for (int i = ax + 1; i < n; ++i) inner *= dims[i];
                std::vector<double> next(outer * blocks * inner, 0.0);
                for (std::size_t o = 0; o < outer; ++o)
                    for (std::size_t b = 0; b < blocks; ++b)
                        for (std::size_t in = 0; in < inner; ++in) {
                            double acc = 0.0;
                            for (std::size_t e = 0; e < s; ++e) {
                                std::size_t pos = (shift[ax] + b * s + e) % S;
                                acc += cur[(o * dims[ax] + pos) * inner + in];
                            }
                            next[(o * blocks + b) * inner + in] = acc;
                        }
                cur = std::move(next);
                dims = nd;
            }
            // Scatter the cube values back onto cells.
            for (std::size_t cell = 0; cell < out.values.size(); ++cell) {
                auto c = padded_coords(n, S, cell);
                std::size_t bidx = 0;
                for (int i = 0; i < n; ++i) {
                    std::size_t rel = (c[i] + S - shift[i]) % S;
                    bidx = bidx * blocks + rel / s;
                }
                out.values[cell] = std::max(out.values[cell], fac * cur[bidx] * h);
            }
        }
    }
    return out;
}

double riesz_diagonal_average(int n, double lambda) {
    if (!(lambda > 0.0 && lambda < n)) throw ParameterError("riesz kernel requires lambda in (0, n)");
    using boost::math::quadrature::gauss_kronrod;
    const double e = (lambda - n) / 2.0;
    if (n == 1) return std::pow(0.25, e) / lambda;
    if (n == 2) {
        auto g = [&](double w) { return std::pow(0.25 + w * w, e); };
        double v = gauss_kronrod<double, 61>::integrate(g, -0.5, 0.5, 15, 1e-14);
        return 2.0 * v / lambda;
    }
    auto inner = [&](double w1) {
        auto g = [&](double w2) { return std::pow(0.25 + w1 * w1 + w2 * w2, e); };
        return gauss_kronrod<double, 61>::integrate(g, -0.5, 0.5, 15, 1e-14);
    };
    double v = gauss_kronrod<double, 61>::integrate(inner, -0.5, 0.5, 15, 1e-13);
    return 3.0 * v / lambda;
}

PaddedGrid riesz_potential(const GridFunction& f, double lambda, int pad, ConvolutionMethod method) {
    f.validate();
    if (!(lambda > 0.0 && lambda < f.n)) throw ParameterError("riesz_potential: lambda must lie in (0, n)");
    check_pad(pad);
    const int n = f.n;
    PaddedGrid src = embed_padded(f, pad);
    for (double& v : src.values) v = std::abs(v);
    const std::size_t S = src.side();
    const double h1 = std::ldexp(1.0, -f.J);
    const double hn = src.cell_measure();
    const double diag = riesz_diagonal_average(n, lambda) * std::pow(h1, lambda - n);
    auto kernel = [&](const std::array<long, 3>& d) {
        double r2 = 0.0;
        for (int i = 0; i < n; ++i) r2 += static_cast<double>(d[i] * d[i]);
        if (r2 == 0.0) return diag;
        return std::pow(std::sqrt(r2) * h1, lambda - n);
    };

    PaddedGrid out = src;
    std::fill(out.values.begin(), out.values.end(), 0.0);
    if (method == ConvolutionMethod::automatic)
        method = (f.size() * out.values.size() <= (std::size_t{1} << 24)) ? ConvolutionMethod::direct
                                                                          : ConvolutionMethod::fft;

    if (method == ConvolutionMethod::direct) {
        std::vector<std::size_t> support;
        for (std::size_t j = 0; j < src.values.size(); ++j)
            if (src.values[j] != 0.0) support.push_back(j);
        parallel_for(out.values.size(), [&](std::size_t i) {
            auto ci = padded_coords(n, S, i);
            std::vector<double> terms(support.size());
            for (std::size_t t = 0; t < support.size(); ++t) {
                auto cj = padded_coords(n, S, support[t]);
                std::array<long, 3> d{0, 0, 0};
                for (int a = 0; a < n; ++a) d[a] = static_cast<long>(ci[a]) - static_cast<long>(cj[a]);
                terms[t] = src.values[support[t]] * hn * kernel(d);
            }
            out.values[i] = pairwise_sum(terms);
        });
        return out;
    }

    // Circular convolution on a 2S torus equals the linear one on the S-domain.
    const std::size_t L = 2 * S;
    std::vector<int> dims(n, static_cast<int>(L));
    std::size_t total = 1;
    for (int i = 0; i < n; ++i) total *= L;
    std::vector<std::complex<double>> a(total), k(total);
    for (std::size_t i = 0; i < total; ++i) {
        std::array<std::size_t, 3> c = padded_coords(n, L, i);
        bool inside = true;
        std::array<long, 3> d{0, 0, 0};
        for (int ax = 0; ax < n; ++ax) {
            if (c[ax] >= S) inside = false;
            d[ax] = detail::signed_freq(static_cast<long>(c[ax]), static_cast<long>(L));
        }
        if (inside) a[i] = src.values[padded_index(n, S, c)] * hn;
        bool valid = true;
        for (int ax = 0; ax < n; ++ax)
            if (std::abs(d[ax]) >= static_cast<long>(S)) valid = false;
        k[i] = valid ? kernel(d) : 0.0;
    }
    detail::fft_inplace(a, dims, false);
    detail::fft_inplace(k, dims, false);
    for (std::size_t i = 0; i < total; ++i) a[i] *= k[i];
    detail::fft_inplace(a, dims, true);
    const double norm = 1.0 / static_cast<double>(total);
    for (std::size_t i = 0; i < out.values.size(); ++i) {
        auto c = padded_coords(n, S, i);
        double v = a[padded_index(n, L, c)].real() * norm;
        out.values[i] = std::max(v, 0.0);
    }
    return out;
}

double sobolev_negative_norm(const GridFunction& f, double lambda, double q, int pad) {
    if (!(q >= 1.0) || std::isinf(q)) throw ParameterError("sobolev_negative_norm: q must lie in [1, inf)");
    return riesz_potential(f, lambda, pad).lq_norm(q);
}

double sobolev_negative_norm_fourier(const GridFunction& f, double lambda, int pad) {
    f.validate();
    if (!(lambda > 0.0 && lambda < f.n)) throw ParameterError("sobolev_negative_norm: lambda must lie in (0, n)");
    PaddedGrid src = embed_padded(f, pad);
    const int n = f.n;
    const std::size_t S = src.side();
    const double hn = src.cell_measure();
    std::vector<std::complex<double>> a(src.values.size());
    for (std::size_t i = 0; i < a.size(); ++i) a[i] = std::abs(src.values[i]) * hn;
    std::vector<int> dims(n, static_cast<int>(S));
    detail::fft_inplace(a, dims, false);
    const double Lside = static_cast<double>(pad);
    const double gamma = std::pow(std::numbers::pi, n / 2.0) * std::pow(2.0, lambda) * std::tgamma(lambda / 2.0) /
                         std::tgamma((n - lambda) / 2.0);
    std::vector<double> terms(a.size(), 0.0);
    for (std::size_t i = 1; i < a.size(); ++i) {
        auto c = padded_coords(n, S, i);
        double r2 = 0.0;
        for (int ax = 0; ax < n; ++ax) {
            double kk = static_cast<double>(detail::signed_freq(static_cast<long>(c[ax]), static_cast<long>(S)));
            r2 += kk * kk;
        }
        double xi = 2.0 * std::numbers::pi * std::sqrt(r2) / Lside;
        double m = gamma * std::pow(xi, -lambda);
        terms[i] = m * m * std::norm(a[i]);
    }
    return std::sqrt(pairwise_sum(terms) / std::pow(Lside, n));
}

}  // namespace sparsekit
