#include "sparsekit/classical.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "sparsekit/maximal.hpp"
#include "sparsekit/sparse.hpp"

namespace sparsekit {

const char* route_name(NormRoute r) {
    switch (r) {
        case NormRoute::exact: return "exact";
        case NormRoute::dp: return "dp";
        case NormRoute::rearrangement: return "rearrangement";
    }
    return "exact";
}

nlohmann::json to_json(const NormReport& r, int n) {
    nlohmann::json j;
    j["space"] = r.space;
    j["p"] = r.p;
    j["q"] = std::isinf(r.q) ? nlohmann::json("inf") : nlohmann::json(r.q);
    j["alpha"] = r.alpha;
    j["value"] = r.value;
    j["route"] = route_name(r.route);
    auto w = nlohmann::json::array();
    for (const auto& c : r.witness) {
        auto row = nlohmann::json::array({c.level});
        for (int i = 0; i < n; ++i) row.push_back(c.m[i]);
        w.push_back(row);
    }
    j["witness"] = w;
    if (r.witness_level >= 0) j["witness_level"] = r.witness_level;
    return j;
}

double lp_norm(const GridFunction& f, double p) {
    f.validate();
    if (!(p >= 1.0)) throw ParameterError("lp_norm: p must lie in [1, inf]");
    if (std::isinf(p)) {
        double m = 0.0;
        for (double v : f.values) m = std::max(m, std::abs(v));
        return m;
    }
    std::vector<double> t(f.size());
    const double h = f.cell_measure();
    for (std::size_t i = 0; i < f.size(); ++i) t[i] = (p == 2.0 ? f.values[i] * f.values[i] : std::pow(std::abs(f.values[i]), p)) * h;
    return p == 2.0 ? std::sqrt(pairwise_sum(t)) : std::pow(pairwise_sum(t), 1.0 / p);
}

NormReport morrey_norm(const GridFunction& f, double p, double alpha) {
    f.validate();
    if (!(p >= 1.0)) throw ParameterError("morrey_norm: p must be >= 1");
    auto c = sr_cube_values(build_table(f), p, alpha);
    NormReport r{"morrey", p, std::numeric_limits<double>::infinity(), alpha, -1.0, NormRoute::exact, {}, -1};
    DyadicCube best{};
    for (int k = 0; k <= f.J; ++k)
        for (std::size_t i = 0; i < c[k].size(); ++i)
            if (c[k][i] > r.value) {
                r.value = c[k][i];
                best = cube_from_linear(f.n, k, i);
            }
    r.witness = {best};
    return r;
}

NormReport rmt_norm(const GridFunction& f, double p, double q, double alpha) {
    if (std::isinf(q)) {
        auto r = morrey_norm(f, p, alpha);
        r.space = "rmt";
        return r;
    }
    f.validate();
    if (!(p >= 1.0 && q >= 1.0)) throw ParameterError("rmt_norm: p and q must be >= 1");
    const int n = f.n, J = f.J;
    auto c = sr_cube_values(build_table(f), p, alpha);
    auto pw = [q](double x) { return q == 2.0 ? x * x : std::pow(x, q); };
    // best[k][i] = max over packings inside Q of sum c^q; take[k][i] marks Q itself as optimal.
    std::vector<std::vector<double>> best(J + 1);
    std::vector<std::vector<char>> take(J + 1);
    for (int k = J; k >= 0; --k) {
        const std::size_t cnt = cubes_at_level(n, k);
        best[k].resize(cnt);
        take[k].resize(cnt);
        for (std::size_t i = 0; i < cnt; ++i) {
            const double own = pw(c[k][i]);
            double kids = 0.0;
            if (k < J) {
                double s[8];
                for (unsigned ch = 0; ch < (1u << n); ++ch) s[ch] = best[k + 1][child_linear_index(n, k, i, ch)];
                kids = pairwise_sum(std::span<const double>(s, std::size_t{1} << n));
            }
            take[k][i] = own >= kids;
            best[k][i] = std::max(own, kids);
        }
    }
    NormReport r{"rmt", p, q, alpha, 0.0, NormRoute::dp, {}, -1};
    std::vector<std::pair<int, std::size_t>> stack{{0, 0}};
    while (!stack.empty()) {
        auto [k, i] = stack.back();
        stack.pop_back();
        if (best[k][i] == 0.0) continue;
        if (take[k][i]) {
            r.witness.push_back(cube_from_linear(n, k, i));
            continue;
        }
        for (unsigned ch = 0; ch < (1u << n); ++ch) stack.emplace_back(k + 1, child_linear_index(n, k, i, ch));
    }
    std::sort(r.witness.begin(), r.witness.end());
    r.value = q == 2.0 ? std::sqrt(best[0][0]) : std::pow(best[0][0], 1.0 / q);
    return r;
}

NormReport crmt_norm(const GridFunction& f, double p, double q, double alpha) {
    f.validate();
    if (std::isinf(q)) throw ParameterError("crmt_norm: q must be finite");
    if (!(p >= 1.0 && q >= 1.0)) throw ParameterError("crmt_norm: p and q must be >= 1");
    auto c = sr_cube_values(build_table(f), p, alpha);
    NormReport r{"crmt", p, q, alpha, -1.0, NormRoute::exact, {}, 0};
    for (int k = 0; k <= f.J; ++k) {
        std::vector<double> t(c[k].size());
        for (std::size_t i = 0; i < t.size(); ++i) t[i] = q == 2.0 ? c[k][i] * c[k][i] : std::pow(c[k][i], q);
        const double s = pairwise_sum(t);
        const double v = q == 2.0 ? std::sqrt(s) : std::pow(s, 1.0 / q);
        if (v > r.value) {
            r.value = v;
            r.witness_level = k;
        }
    }
    return r;
}

namespace {

// sup of (1 - ln t)^{1/2} (A + v t) over [a, b], 0 < a < b <= 1
double log_half_sup(double A, double v, double a, double b) {
    auto g = [&](double t) { return std::sqrt(1.0 - std::log(t)) * (A + v * t); };
    double best = std::max(g(a), g(b));
    if (v <= 0.0) return best;
    // stationary points solve v t (1 - 2 ln t) = A; the left side rises up to e^{-1/2} and falls after
    auto h = [&](double t) { return v * t * (1.0 - 2.0 * std::log(t)) - A; };
    const double peak = std::exp(-0.5);
    auto bisect = [&](double lo, double hi) {
        if (!(lo < hi) || (h(lo) > 0) == (h(hi) > 0)) return;
        for (int it = 0; it < 200 && hi - lo > 1e-17 * hi; ++it) {
            double mid = 0.5 * (lo + hi);
            ((h(mid) > 0) == (h(lo) > 0) ? lo : hi) = mid;
        }
        best = std::max({best, g(lo), g(hi)});
    };
    bisect(a, std::min(b, peak));
    bisect(std::max(a, peak), b);
    return best;
}

}  // namespace

LorentzNorms lorentz_norms(const GridFunction& f) {
    f.validate();
    auto r = rearrangement(f);
    const std::size_t m = r.fstar.size();
    std::vector<double> terms;
    terms.reserve(3 * m);
    LorentzNorms out;
    double sup = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        const double t0 = i * r.dt, t1 = (i + 1) * r.dt;
        const double v = r.fstar[i];
        // on (t0, t1]: t f**(t) = A + v t
        const double A = i == 0 ? 0.0 : t0 * (r.fstarstar[i - 1] - v);
        if (A != 0.0) terms.push_back(A * A * std::log(t1 / t0));
        terms.push_back(2.0 * A * v * r.dt);
        terms.push_back(v * v * (t1 * t1 - t0 * t0) / 2.0);
        if (i == 0) {
            // A = 0: (1 - ln t)^{1/2} v t increases on (0, 1]
            sup = std::max(sup, std::sqrt(1.0 - std::log(t1)) * v * t1);
        } else {
            sup = std::max(sup, log_half_sup(A, v, t0, t1));
        }
    }
    out.l12 = std::sqrt(pairwise_sum(terms));
    out.l1inf_log_half = sup;
    return out;
}

}  // namespace sparsekit
