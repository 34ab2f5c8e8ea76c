#include "sparsekit/harness.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <filesystem>
#include <functional>
#include <limits>
#include <numeric>
#include <random>

#include "sparsekit/classical.hpp"
#include "sparsekit/parallel.hpp"

namespace sparsekit {

namespace {

constexpr double kLn2 = 0.69314718055994530942;

using Point = std::array<double, 3>;

// Values at cell centers.
GridFunction sample(int n, int J, const std::function<double(const Point&)>& fn) {
    auto f = GridFunction::zeros(n, J);
    const std::size_t side = f.side();
    const double h = 1.0 / static_cast<double>(side);
    for (std::size_t i = 0; i < f.size(); ++i) {
        Point x{0.0, 0.0, 0.0};
        std::size_t rest = i;
        for (int d = n - 1; d >= 0; --d) {
            x[d] = (static_cast<double>(rest % side) + 0.5) * h;
            rest /= side;
        }
        f.values[i] = fn(x);
    }
    return f;
}

// Cell averages of a product of per-axis densities given by their antiderivatives.
GridFunction sample_product(int n, int J, const std::function<double(int, double)>& cdf) {
    auto f = GridFunction::zeros(n, J);
    const std::size_t side = f.side();
    const double h = 1.0 / static_cast<double>(side);
    std::vector<std::vector<double>> axis(n, std::vector<double>(side));
    for (int d = 0; d < n; ++d)
        for (std::size_t i = 0; i < side; ++i)
            axis[d][i] = (cdf(d, (i + 1) * h) - cdf(d, i * h)) / h;
    for (std::size_t i = 0; i < f.size(); ++i) {
        double v = 1.0;
        std::size_t rest = i;
        for (int d = n - 1; d >= 0; --d) {
            v *= axis[d][rest % side];
            rest /= side;
        }
        f.values[i] = v;
    }
    return f;
}

// Antiderivative of the unit-mass tent of radius 1 centered at 0.
double tent_cdf(double t) {
    if (t <= -1.0) return 0.0;
    if (t <= 0.0) return 0.5 * (1.0 + t) * (1.0 + t);
    if (t < 1.0) return 1.0 - 0.5 * (1.0 - t) * (1.0 - t);
    return 1.0;
}

double l1_mass(const GridFunction& f) {
    std::vector<double> a(f.size());
    for (std::size_t i = 0; i < a.size(); ++i) a[i] = std::abs(f.values[i]);
    return pairwise_sum(a) * f.cell_measure();
}

void scale(GridFunction& f, double s) {
    for (auto& v : f.values) v *= s;
}

GridFunction normalized_l1(GridFunction f) {
    const double m = l1_mass(f);
    if (m > 0.0) scale(f, 1.0 / m);
    return f;
}

bool all_nonneg(const GridFunction& f) {
    return std::all_of(f.values.begin(), f.values.end(), [](double v) { return v >= 0.0; });
}

GridFunction cube_indicator(int n, int J, int level, std::size_t idx, double height) {
    auto f = GridFunction::zeros(n, J);
    for (auto cell : cells_of_cube(n, J, cube_from_linear(n, level, idx))) f.values[cell] = height;
    return f;
}

GridFunction mollified_atom(int n, int J, double eps, const Point& c) {
    return sample_product(n, J, [&](int d, double x) { return tent_cdf((x - c[d]) / eps); });
}

GridFunction mollified_segment(int n, int J, double eps) {
    if (n < 2) throw ParameterError("mollified_segment needs n >= 2");
    // 2 * 1_[1/4,3/4](x_1) times tents of radius eps around 1/2 in the other axes.
    return sample_product(n, J, [&](int d, double x) {
        if (d == 0) return 2.0 * std::clamp(x - 0.25, 0.0, 0.5);
        return tent_cdf((x - 0.5) / eps);
    });
}

GridFunction morrey_extremal(int n, int J, double p, const Point& c) {
    const double floor_r = 0.5 / static_cast<double>(std::size_t{1} << J);
    return sample(n, J, [&](const Point& x) {
        double r2 = 0.0;
        for (int d = 0; d < n; ++d) r2 += (x[d] - c[d]) * (x[d] - c[d]);
        return std::pow(std::max(std::sqrt(r2), floor_r), -n / p);
    });
}

GridFunction bumps(int n, int J, std::mt19937_64& rng, bool signed_amp) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const int k = 1 + static_cast<int>(rng() % 4);
    std::vector<Point> centers(k);
    std::vector<double> amp(k), width(k);
    const double wmin = 1.0 / 32.0, wmax = 0.25;  // fixed so refinements sample the same function
    for (int i = 0; i < k; ++i) {
        for (int d = 0; d < n; ++d) centers[i][d] = u(rng);
        amp[i] = 0.5 + 1.5 * u(rng);
        if (signed_amp && u(rng) < 0.5) amp[i] = -amp[i];
        width[i] = wmin * std::pow(wmax / wmin, u(rng));
    }
    return sample(n, J, [&](const Point& x) {
        double v = 0.0;
        for (int i = 0; i < k; ++i) {
            double r2 = 0.0;
            for (int d = 0; d < n; ++d) r2 += (x[d] - centers[i][d]) * (x[d] - centers[i][d]);
            v += amp[i] * std::exp(-0.5 * r2 / (width[i] * width[i]));
        }
        return v;
    });
}

GridFunction sprinkles(int n, int J, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    auto f = GridFunction::zeros(n, J);
    const int k = 1 + static_cast<int>(rng() % 8);
    for (int i = 0; i < k; ++i) f.values[rng() % f.size()] += 0.1 + u(rng);
    return f;
}

// Low-frequency trigonometric polynomial, |k_d| <= 3.
GridFunction trig(int n, int J, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    struct Mode {
        std::array<int, 3> k;
        double a, phase;
    };
    std::vector<Mode> modes(2 + rng() % 4);
    for (auto& m : modes) {
        for (int d = 0; d < 3; ++d) m.k[d] = d < n ? static_cast<int>(rng() % 7) - 3 : 0;
        m.a = 2.0 * u(rng) - 1.0;
        m.phase = 2.0 * M_PI * u(rng);
    }
    return sample(n, J, [&](const Point& x) {
        double v = 0.0;
        for (const auto& m : modes) {
            double arg = m.phase;
            for (int d = 0; d < n; ++d) arg += 2.0 * M_PI * m.k[d] * x[d];
            v += m.a * std::cos(arg);
        }
        return v;
    });
}

Point random_point(int n, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    Point c{0.5, 0.5, 0.5};
    for (int d = 0; d < n; ++d) c[d] = u(rng);
    return c;
}

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", v);
    return buf;
}

void add_member(FunctionFamily& fam, const CorpusSpec& spec, const std::string& gen, std::size_t i,
                std::mt19937_64& rng) {
    const int n = spec.n, J = spec.J;
    const std::string tag = gen + "_" + std::to_string(i);
    const Point mid{0.5, 0.5, 0.5};
    if (gen == "constant") {
        fam.add(tag, "Linf", GridFunction::constant(n, J, 1.0));
    } else if (gen == "atom") {
        const std::size_t cell = i == 0 ? 0 : rng() % (std::size_t{1} << (n * J));
        fam.add(tag, "L1", cube_indicator(n, J, J, cell, std::ldexp(1.0, n * J)));
    } else if (gen == "mollified_atom") {
        // eps = 2^{-m}, m = 1, 2, ... capped at the grid scale
        const int m = 1 + static_cast<int>(i % static_cast<std::size_t>(J));
        fam.add(gen + "_eps2^-" + std::to_string(m), "L1",
                normalized_l1(mollified_atom(n, J, std::ldexp(1.0, -m), mid)));
    } else if (gen == "mollified_segment") {
        fam.add(tag, "L1", normalized_l1(mollified_segment(n, J, spec.eps)));
    } else if (gen == "morrey_extremal") {
        auto f = morrey_extremal(n, J, spec.p, i == 0 ? mid : random_point(n, rng));
        const double m = morrey_norm(f, spec.p, spec.alpha).value;
        scale(f, 1.0 / m);
        fam.add(tag, "Morrey(p=" + fmt(spec.p) + ",alpha=" + fmt(spec.alpha) + ")", std::move(f));
    } else if (gen == "lp_atoms") {
        const int level = static_cast<int>(i % static_cast<std::size_t>(J + 1));
        const double height = std::pow(cube_measure(n, level), -1.0 / spec.p);
        fam.add(gen + "_level" + std::to_string(level), "Lp(p=" + fmt(spec.p) + ")",
                cube_indicator(n, J, level, 0, height));
    } else if (gen == "bumps") {
        fam.add(tag, "L1", normalized_l1(bumps(n, J, rng, false)));
    } else if (gen == "signed_bumps") {
        fam.add(tag, "L1", normalized_l1(bumps(n, J, rng, true)));
    } else if (gen == "sprinkles") {
        fam.add(tag, "L1", normalized_l1(sprinkles(n, J, rng)));
    } else if (gen == "trig") {
        auto f = trig(n, J, rng);
        const double l2 = lp_norm(f, 2.0);
        if (l2 > 0.0) scale(f, 1.0 / l2);
        fam.add(tag, "L2", std::move(f));
    } else {
        throw ParameterError("unknown corpus generator '" + gen + "'");
    }
}

double rootsum_sq(double s) { return std::sqrt(std::max(s, 0.0)); }

}  // namespace

double sparse_index_exponent(int n) { return 2.0 * n / (n + 2.0); }

Interval SparseIndexProfile::at(int N) const {
    if (N < 1) throw ParameterError("sparse index needs N >= 1");
    if (degenerate(N)) return Interval{0.0, 0.0};
    return s[N - 1];
}

SparseIndexProfile sparse_indices(const GridFunction& f, int resolution) {
    f.validate();
    auto t = build_table(f);
    auto prof = sparse_profile(f.n, f.J, sr_cube_values(t, sparse_index_exponent(f.n), 0.0), 2.0, resolution);
    SparseIndexProfile out;
    out.n = f.n;
    out.J = f.J;
    out.resolution = prof.resolution;
    out.exact_lower = prof.exact_lower;
    out.s.resize(f.J + 1);
    for (int k = 0; k <= f.J; ++k) out.s[k] = Interval{prof.lower[k], prof.upper[k]};
    return out;
}

IndexValue sparse_index(const GridFunction& f, int N, int resolution) {
    if (N < 1) throw ParameterError("sparse index needs N >= 1");
    if (N > f.J + 1) {
        f.validate();
        return IndexValue{Interval{0.0, 0.0}, true};
    }
    return IndexValue{sparse_indices(f, resolution).at(N), false};
}

void FunctionFamily::add(std::string label, std::string norm, GridFunction f) {
    if (members.empty()) {
        n = f.n;
        J = f.J;
    } else if (f.n != n || f.J != J) {
        throw ParameterError("family members must share n and J");
    }
    f.nonneg = all_nonneg(f);
    labels.push_back(std::move(label));
    normalization.push_back(std::move(norm));
    members.push_back(std::move(f));
}

FunctionFamily corpus_generate(const CorpusSpec& spec) {
    if (spec.n < 1 || spec.n > 3) throw ParameterError("corpus dimension must be 1, 2 or 3");
    if (spec.J < 1 || spec.n * spec.J > 24) throw ParameterError("corpus resolution out of range");
    if (spec.count == 0) throw ParameterError("corpus count must be positive");
    FunctionFamily fam;
    fam.descriptor = spec.generator;
    fam.n = spec.n;
    fam.J = spec.J;
    fam.seed = spec.seed;
    std::mt19937_64 rng(spec.seed);
    if (spec.generator == "mixed") {
        static const std::vector<std::string> cycle{"bumps",         "sprinkles",      "signed_bumps", "atom",
                                                    "mollified_atom", "trig",          "constant",     "bumps",
                                                    "sprinkles",      "mollified_segment"};
        for (std::size_t i = 0; i < spec.count; ++i) {
            std::string gen = cycle[i % cycle.size()];
            if (gen == "mollified_segment" && spec.n < 2) gen = "bumps";
            add_member(fam, spec, gen, i, rng);
            fam.labels.back() = "mixed_" + std::to_string(i) + "_" + fam.labels.back();
        }
    } else {
        for (std::size_t i = 0; i < spec.count; ++i) add_member(fam, spec, spec.generator, i, rng);
    }
    return fam;
}

FunctionFamily load_family(const std::string& dir) {
    namespace fs = std::filesystem;
    if (!fs::is_directory(dir)) throw ParameterError("family directory not found: " + dir);
    std::vector<fs::path> files;
    for (const auto& e : fs::directory_iterator(dir))
        if (e.is_regular_file() && e.path().extension() == ".spgf") files.push_back(e.path());
    std::sort(files.begin(), files.end());
    FunctionFamily fam;
    fam.descriptor = "dir";
    for (const auto& p : files) fam.add(p.stem().string(), "caller", load_spgf(p.string()));
    return fam;
}

void save_family(const std::string& dir, const FunctionFamily& family) {
    std::filesystem::create_directories(dir);
    for (std::size_t i = 0; i < family.size(); ++i) {
        char idx[16];
        std::snprintf(idx, sizeof idx, "%04zu_", i);
        save_spgf((std::filesystem::path(dir) / (idx + family.labels[i] + ".spgf")).string(), family.members[i]);
    }
}

namespace {

std::vector<SparseIndexProfile> family_profiles(const FunctionFamily& family, int resolution) {
    if (family.members.empty()) throw ParameterError("empty family");
    std::vector<SparseIndexProfile> out(family.size());
    parallel_for(family.size(), [&](std::size_t i) { out[i] = sparse_indices(family.members[i], resolution); });
    return out;
}

}  // namespace

double space_index(const FunctionFamily& family, int N, int resolution) {
    if (N < 1) throw ParameterError("sparse index needs N >= 1");
    double best = 0.0;
    for (const auto& p : family_profiles(family, resolution)) best = std::max(best, p.at(N).upper);
    return best;
}

DecayExtraction extract_decay(const FunctionFamily& family, int resolution) {
    auto profs = family_profiles(family, resolution);
    const int top = family.J + 1;
    DecayExtraction out;
    out.lower.assign(top + 1, 0.0);
    out.upper.assign(top + 1, 0.0);
    for (const auto& p : profs)
        for (int N = 1; N <= top; ++N) {
            out.lower[N] = std::max(out.lower[N], p.at(N).lower);
            out.upper[N] = std::max(out.upper[N], p.at(N).upper);
        }
    out.lower[0] = out.lower[1];
    out.upper[0] = out.upper[1];
    out.decaying = out.upper[top] < 0.5;
    if (std::all_of(out.upper.begin(), out.upper.end(), [](double v) { return v > 0.0; })) {
        out.decay = decay_certify(out.upper, 2.0, "extracted:" + family.descriptor);
        out.certified = true;
    }
    return out;
}

Interval spsi_norm(const SparseIndexProfile& prof, const Decay& psi) {
    Interval out;
    for (int N = 1; N <= prof.nmax(); ++N) {
        const double d = psi(N);
        out.lower = std::max(out.lower, prof.at(N).lower / d);
        out.upper = std::max(out.upper, prof.at(N).upper / d);
    }
    return out;
}

Interval spsi_norm(const GridFunction& f, const Decay& psi, int resolution) {
    return spsi_norm(sparse_indices(f, resolution), psi);
}

Table1Space parse_table1_space(const std::string& s) {
    if (s == "lp") return Table1Space::lp;
    if (s == "morrey") return Table1Space::morrey;
    if (s == "rmt") return Table1Space::rmt;
    throw ParameterError("table1 space must be lp, morrey or rmt");
}

const char* table1_space_name(Table1Space s) {
    switch (s) {
        case Table1Space::lp: return "lp";
        case Table1Space::morrey: return "morrey";
        case Table1Space::rmt: return "rmt";
    }
    return "?";
}

namespace {

bool at_endpoint(double p, double crit) { return std::abs(p - crit) <= 1e-12 * crit; }

// Ratio r and log-weight exponent a of the chain's series sum_{k >= N-1} r^k (1 + k n ln2)^{-a}.
std::pair<double, double> series_shape(const Table1Params& P) {
    const int n = P.n;
    switch (P.space) {
        case Table1Space::lp: {
            const double beta = (2.0 + n) / (2.0 * n) - 1.0 / std::min(2.0, P.p);
            return {std::exp2(-2.0 * beta * n), 0.0};
        }
        case Table1Space::morrey:
            return {std::exp2(-n * (2.0 / n - 1.0 / P.p)), P.alpha};
        case Table1Space::rmt:
            return {std::exp2(-2.0 * n * ((n + 2.0) / (2.0 * n) - 1.0 / P.p)), 2.0 * P.alpha};
    }
    return {0.0, 0.0};
}

}  // namespace

void table1_validate(const Table1Params& P) {
    const int n = P.n;
    if (n < 2 || n > 3) throw ParameterError("table1 rows need n in {2, 3} (n >= 2)");
    if (P.jmin < 3) throw ParameterError("table1 needs jmin >= 3 for a fit window");
    if (P.jmax < P.jmin) throw ParameterError("table1 needs jmax >= jmin");
    if (n * P.jmax > 20) throw ParameterError("table1 needs n * jmax <= 20");
    const double crit_sparse = sparse_index_exponent(n);
    switch (P.space) {
        case Table1Space::lp:
            if (!(P.p > crit_sparse) || at_endpoint(P.p, crit_sparse))
                throw ParameterError("L^p row needs p > 2n/(n+2)");
            break;
        case Table1Space::morrey:
            if (at_endpoint(P.p, n / 2.0)) {
                if (!(P.alpha > 1.0)) throw ParameterError("M^{n/2,alpha} row needs alpha > 1");
            } else if (!(P.p > n / 2.0)) {
                throw ParameterError("Morrey row needs p > n/2 (or p = n/2 with alpha > 1)");
            }
            if (!(P.p >= 1.0)) throw ParameterError("Morrey row needs p >= 1");
            break;
        case Table1Space::rmt:
            if (at_endpoint(P.p, crit_sparse)) {
                if (!(P.alpha > 0.5)) throw ParameterError("R_{2n/(n+2),2} log^alpha row needs alpha > 1/2");
            } else if (!(P.p > crit_sparse)) {
                throw ParameterError("RMT row needs p > 2n/(n+2) (or p = 2n/(n+2) with alpha > 1/2)");
            }
            break;
    }
}

double table1_series(const Table1Params& P, int N) {
    if (N < 1) throw ParameterError("series needs N >= 1");
    const auto [r, a] = series_shape(P);
    const double c = P.n * kLn2;
    const long k0 = N - 1;
    auto term = [&](double k) { return std::pow(r, k - k0) * std::pow(1.0 + c * k, -a); };
    std::vector<double> terms;
    if (r < 1.0 - 1e-15) {
        for (long k = k0;; ++k) {
            terms.push_back(term(static_cast<double>(k)));
            if (k - k0 > 16 && terms.back() < 1e-18 * terms.front()) break;
            if (k - k0 > 100000) break;
        }
        return std::pow(r, static_cast<double>(k0)) * pairwise_sum(terms);
    }
    // r = 1: polylog series, finite because a > 1; exact head plus the integral of the tail.
    const long K = 1L << 16;
    terms.reserve(K);
    for (long k = k0; k < k0 + K; ++k) terms.push_back(term(static_cast<double>(k)));
    const double x = static_cast<double>(k0 + K) - 0.5;
    return pairwise_sum(terms) + std::pow(1.0 + c * x, 1.0 - a) / (c * (a - 1.0));
}

double fit_slope(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 2) throw ParameterError("slope fit needs two or more points");
    const double m = static_cast<double>(x.size());
    const double mx = std::accumulate(x.begin(), x.end(), 0.0) / m;
    const double my = std::accumulate(y.begin(), y.end(), 0.0) / m;
    double sxy = 0.0, sxx = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxy += (x[i] - mx) * (y[i] - my);
        sxx += (x[i] - mx) * (x[i] - mx);
    }
    return sxy / sxx;
}

namespace {

FunctionFamily table1_probes(const Table1Params& P, int J) {
    const int n = P.n;
    CorpusSpec spec;
    spec.n = n;
    spec.J = J;
    spec.seed = P.seed;
    spec.p = P.p;
    spec.alpha = P.alpha;
    FunctionFamily fam;
    fam.descriptor = std::string("table1_") + table1_space_name(P.space);
    fam.n = n;
    fam.J = J;
    auto append = [&](FunctionFamily&& g) {
        for (std::size_t i = 0; i < g.size(); ++i)
            fam.add(std::move(g.labels[i]), std::move(g.normalization[i]), std::move(g.members[i]));
    };
    spec.generator = "lp_atoms";
    spec.count = J + 1;
    append(corpus_generate(spec));
    spec.generator = "bumps";
    spec.count = 3;
    append(corpus_generate(spec));
    if (P.space != Table1Space::lp) {
        spec.generator = "morrey_extremal";
        spec.count = 3;
        append(corpus_generate(spec));
    }
    // Rescale every probe onto the unit sphere of the row's space.
    for (std::size_t i = 0; i < fam.size(); ++i) {
        auto& f = fam.members[i];
        double norm = 0.0;
        std::string tag;
        switch (P.space) {
            case Table1Space::lp:
                norm = lp_norm(f, P.p);
                tag = "Lp(p=" + fmt(P.p) + ")";
                break;
            case Table1Space::morrey:
                norm = morrey_norm(f, P.p, P.alpha).value;
                tag = "Morrey(p=" + fmt(P.p) + ",alpha=" + fmt(P.alpha) + ")";
                break;
            case Table1Space::rmt:
                norm = rmt_norm(f, P.p, 2.0, P.alpha).value;
                tag = "RMT(p=" + fmt(P.p) + ",q=2,alpha=" + fmt(P.alpha) + ")";
                break;
        }
        scale(f, 1.0 / norm);
        fam.normalization[i] = tag;
    }
    return fam;
}

// Norm factor K(f) of the chain s_N(f)^2 <= K(f) G(N).
double chain_factor(const Table1Params& P, const GridFunction& f) {
    switch (P.space) {
        case Table1Space::lp: {
            const double v = lp_norm(f, P.p);
            return v * v;
        }
        case Table1Space::morrey:
            return morrey_norm(f, P.p, P.alpha).value * lp_norm(f, 1.0);
        case Table1Space::rmt: {
            const double v = rmt_norm(f, P.p, 2.0, P.alpha).value;
            return v * v;
        }
    }
    return 0.0;
}

}  // namespace

Table1Fit table1_experiment(const Table1Params& P) {
    table1_validate(P);
    Table1Fit out;
    out.params = P;
    const int n = P.n;
    const double crit_sparse = sparse_index_exponent(n);
    switch (P.space) {
        case Table1Space::lp:
            out.predicted_slope = -n * ((2.0 + n) / (2.0 * n) - 1.0 / std::min(2.0, P.p));
            break;
        case Table1Space::morrey:
            if (at_endpoint(P.p, n / 2.0)) {
                out.logarithmic = true;
                out.predicted_slope = (1.0 - P.alpha) / 2.0;
            } else {
                out.predicted_slope = -(2.0 / n - 1.0 / P.p) * n / 2.0;
                out.log_correction = -P.alpha / 2.0;
            }
            break;
        case Table1Space::rmt:
            if (at_endpoint(P.p, crit_sparse)) {
                out.logarithmic = true;
                out.predicted_slope = 0.5 - P.alpha;
            } else {
                out.predicted_slope = -n * ((n + 2.0) / (2.0 * n) - 1.0 / P.p);
                out.log_correction = -P.alpha;
            }
            break;
    }

    for (int J = P.jmin; J <= P.jmax; ++J) {
        auto probes = table1_probes(P, J);
        std::vector<double> K(probes.size());
        std::vector<SparseProfile> profs(probes.size());
        parallel_for(probes.size(), [&](std::size_t i) {
            const auto& f = probes.members[i];
            K[i] = chain_factor(P, f);
            profs[i] = sparse_profile(n, J, sr_cube_values(build_table(f), crit_sparse, 0.0), 2.0);
        });
        const double kmax = *std::max_element(K.begin(), K.end());
        out.probe_constant = std::max(out.probe_constant, kmax);

        Table1Row row;
        row.J = J;
        for (int N = 1; N <= J + 1; ++N) {
            row.N.push_back(N);
            row.chain.push_back(rootsum_sq(kmax * table1_series(P, N)));
            double relax = 0.0, cert = 0.0;
            for (const auto& pr : profs) {
                relax = std::max(relax, pr.relaxation[N - 1]);
                cert = std::max(cert, pr.upper[N - 1]);
            }
            row.relaxation.push_back(relax);
            row.certified.push_back(cert);
        }
        const int third = (J + 1) / 3;
        row.fit_lo = 1 + third;
        row.fit_hi = J + 1 - third;
        std::vector<double> x, y, yr;
        for (int N = row.fit_lo; N <= row.fit_hi; ++N) {
            const double lN = std::log2(static_cast<double>(N));
            x.push_back(out.logarithmic ? lN : static_cast<double>(N));
            const double corr = out.logarithmic ? 0.0 : out.log_correction * lN;
            y.push_back(std::log2(row.chain[N - 1]) - corr);
            yr.push_back(std::log2(row.relaxation[N - 1]) - corr);
        }
        row.slope = fit_slope(x, y);
        row.relaxation_slope = fit_slope(x, yr);
        out.max_deviation = std::max(out.max_deviation, std::abs(row.slope - out.predicted_slope));
        out.rows.push_back(std::move(row));
    }
    return out;
}

std::vector<int> default_r_grid(int J) {
    std::vector<int> g(J + 1);
    std::iota(g.begin(), g.end(), 0);
    return g;
}

InterpCheck interp_inequality_check(const GridFunction& f, const Decay& psi, const std::vector<int>& r_grid,
                                    int resolution) {
    f.validate();
    if (f.n != 1 && f.n != 2) throw ParameterError("interpolation check needs n = 1 or n = 2");
    if (!psi.admissible) throw ParameterError("interpolation check needs an admissible decay");
    if (r_grid.empty()) throw ParameterError("empty r-grid");
    InterpCheck out;
    const double h = f.cell_measure();
    const double mean = pairwise_sum(f.values) * h;
    std::vector<double> sq(f.size());
    for (std::size_t i = 0; i < sq.size(); ++i) sq[i] = (f.values[i] - mean) * (f.values[i] - mean);
    out.lhs = std::sqrt(pairwise_sum(sq) * h);
    out.spsi_upper = spsi_norm(f, psi, resolution).upper;
    out.gradient = discrete_gradient_l2(f);
    out.best_rhs = std::numeric_limits<double>::infinity();
    for (int M : r_grid) {
        if (M < 0) throw ParameterError("r-grid entries must be M >= 0 (r = 2^-M)");
        InterpRow row;
        row.M = M;
        row.r = std::ldexp(1.0, -M);
        row.rhs = psi(M) / row.r * out.spsi_upper + row.r * out.gradient;
        row.ratio = out.lhs == 0.0 ? 0.0 : out.lhs / row.rhs;
        out.max_ratio = std::max(out.max_ratio, row.ratio);
        out.best_rhs = std::min(out.best_rhs, row.rhs);
        out.rows.push_back(row);
    }
    return out;
}

}  // namespace sparsekit
