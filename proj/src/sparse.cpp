#include "sparsekit/sparse.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <istream>
#include <limits>
#include <numbers>
#include <ostream>
#include <sstream>
#include <unordered_map>

#include "sparsekit/maximal.hpp"
#include "sparsekit/parallel.hpp"

namespace sparsekit {

namespace {

double powq(double x, double q) { return q == 2.0 ? x * x : std::pow(x, q); }
double rootq(double s, double q) { return q == 2.0 ? std::sqrt(s) : std::pow(s, 1.0 / q); }

std::uint64_t cube_key(int n, const DyadicCube& q) {
    return (static_cast<std::uint64_t>(cube_linear_index(n, q)) << 6) | static_cast<std::uint64_t>(q.level);
}

void check_cube(int n, int J, const DyadicCube& q) {
    if (q.level < 0 || q.level > J) throw ParameterError("cube level outside 0..J");
    for (int i = 0; i < n; ++i)
        if (q.m[i] < 0 || q.m[i] >= (std::int64_t{1} << q.level)) throw ParameterError("cube index out of range");
    for (int i = n; i < 3; ++i)
        if (q.m[i] != 0) throw ParameterError("cube index has extra coordinates");
}

}  // namespace

void SparseFamily::normalize() {
    for (const auto& q : cubes) check_cube(n, J, q);
    std::sort(cubes.begin(), cubes.end());
    cubes.erase(std::unique(cubes.begin(), cubes.end()), cubes.end());
}

bool SparseFamily::contains(const DyadicCube& q) const { return std::binary_search(cubes.begin(), cubes.end(), q); }

SparseCheck verify_sparse(const SparseFamily& family) {
    SparseFamily fam = family;
    fam.normalize();
    const int n = fam.n, J = fam.J;
    std::unordered_map<std::uint64_t, std::size_t> where;
    for (std::size_t i = 0; i < fam.cubes.size(); ++i) where.emplace(cube_key(n, fam.cubes[i]), i);

    SparseCheck out;
    out.witnesses.assign(fam.cubes.size(), {});
    if (fam.cubes.empty()) {
        out.ok = true;
        return out;
    }
    // Each finest cell belongs to the witness of its deepest containing member.
    const std::size_t cells = std::size_t{1} << (n * J);
    for (std::size_t cell = 0; cell < cells; ++cell) {
        for (int k = J; k >= 0; --k) {
            DyadicCube q = cube_from_linear(n, k, ancestor_of_cell(n, J, cell, k));
            auto it = where.find(cube_key(n, q));
            if (it != where.end()) {
                out.witnesses[it->second].push_back(cell);
                break;
            }
        }
    }
    out.worst_ratio = 1.0;
    for (std::size_t i = 0; i < fam.cubes.size(); ++i) {
        double size = std::ldexp(1.0, n * (J - fam.cubes[i].level));
        out.worst_ratio = std::min(out.worst_ratio, static_cast<double>(out.witnesses[i].size()) / size);
    }
    out.ok = out.worst_ratio >= fam.eta;
    return out;
}

double SRParams::lambda_prime() const { return 1.0 / p - (std::isinf(q) ? 0.0 : 1.0 / q); }

bool SRParams::monotone() const {
    if (!(p >= 1.0 && p <= q && std::isfinite(q))) return false;
    if (p == q && alpha > 0.0) return false;
    return true;
}

void SRParams::require_monotone() const {
    if (!monotone()) throw ParameterError("parameters must satisfy 1 <= p <= q < inf, with alpha <= 0 when p = q");
}

CubeValues sr_cube_values(const IntegralTable& t, double p, double alpha) {
    if (!(p > 0.0)) throw ParameterError("p must be positive");
    CubeValues c(t.J + 1);
    for (int k = 0; k <= t.J; ++k) {
        const double w = log_weight(t.n, k, alpha) * std::pow(cube_measure(t.n, k), 1.0 / p - 1.0);
        c[k] = t.abs_levels[k];
        for (double& v : c[k]) v *= w;
    }
    return c;
}

double dom_constant(const SRParams& params) {
    const double lp = params.lambda_prime();
    if (params.p == params.q || params.alpha < 0.0) return 2.0;
    const double a = params.alpha;
    const double base = a == 0.0 ? 1.0 : std::pow(a / lp, a);
    return 2.0 * std::max(1.0, std::exp(lp - a) * base);
}

namespace {

// w(Q) = (1 + k n ln2)^alpha |Q|^{lambda' - 1} int_Q |f|
CubeValues domination_weights(const IntegralTable& t, const SRParams& params) {
    const double lp = params.lambda_prime();
    CubeValues w(t.J + 1);
    for (int k = 0; k <= t.J; ++k) {
        const double fac = log_weight(t.n, k, params.alpha) * std::pow(cube_measure(t.n, k), lp - 1.0);
        w[k] = t.abs_levels[k];
        for (double& v : w[k]) v *= fac;
    }
    return w;
}

}  // namespace

SparseFamily sparse_dominate(const GridFunction& f, const SRParams& params) {
    f.validate();
    params.require_monotone();
    const int n = f.n, J = f.J;
    auto t = build_table(f);
    auto w = domination_weights(t, params);
    const double C = dom_constant(params);

    SparseFamily fam;
    fam.n = n;
    fam.J = J;
    fam.cubes.push_back(DyadicCube{});
    std::vector<std::pair<int, std::size_t>> roots{{0, 0}};
    while (!roots.empty()) {
        auto [k, idx] = roots.back();
        roots.pop_back();
        const double thr = C * w[k][idx];
        if (thr <= 0.0) continue;
        std::vector<std::pair<int, std::size_t>> stack;
        for (unsigned c = 0; c < (1u << n) && k < J; ++c) stack.emplace_back(k + 1, child_linear_index(n, k, idx, c));
        while (!stack.empty()) {
            auto [kk, ii] = stack.back();
            stack.pop_back();
            if (w[kk][ii] >= thr) {
                fam.cubes.push_back(cube_from_linear(n, kk, ii));
                roots.emplace_back(kk, ii);
            } else if (kk < J) {
                for (unsigned c = 0; c < (1u << n); ++c) stack.emplace_back(kk + 1, child_linear_index(n, kk, ii, c));
            }
        }
    }
    fam.normalize();
    return fam;
}

DominationCheck check_domination(const GridFunction& f, const SparseFamily& family, const SRParams& params) {
    f.validate();
    const int n = f.n, J = f.J;
    if (family.n != n || family.J != J) throw ParameterError("family and grid disagree on n or J");
    auto t = build_table(f);
    auto w = domination_weights(t, params);
    DominationCheck out;
    out.constant = dom_constant(params);

    MaximalParams mp{n * params.lambda_prime(), params.alpha, params.p, params.q};
    auto M = dyadic_maximal(f, t, mp);

    CubeValues s(J + 1);
    for (int k = 0; k <= J; ++k) s[k].assign(cubes_at_level(n, k), 0.0);
    for (const auto& q : family.cubes) s[q.level][cube_linear_index(n, q)] += w[q.level][cube_linear_index(n, q)];
    std::vector<double> rhs = s[0];
    for (int k = 1; k <= J; ++k) {
        std::vector<double> next(cubes_at_level(n, k));
        for (std::size_t q = 0; q < cubes_at_level(n, k - 1); ++q)
            for (unsigned c = 0; c < (1u << n); ++c) {
                std::size_t ch = child_linear_index(n, k - 1, q, c);
                next[ch] = rhs[q] + s[k][ch];
            }
        rhs = std::move(next);
    }
    for (std::size_t i = 0; i < rhs.size(); ++i) {
        if (rhs[i] == 0.0) {
            if (M.values[i] > 0.0) out.max_ratio = out.raw_ratio = std::numeric_limits<double>::infinity();
            continue;
        }
        out.max_ratio = std::max(out.max_ratio, M.values[i] / (out.constant * rhs[i]));
        out.raw_ratio = std::max(out.raw_ratio, M.values[i] / rhs[i]);
    }
    return out;
}

double family_sum(const SparseFamily& family, const CubeValues& c, double q) {
    if (std::isinf(q)) {
        double m = 0.0;
        for (const auto& cube : family.cubes) m = std::max(m, c[cube.level][cube_linear_index(family.n, cube)]);
        return m;
    }
    std::vector<double> terms;
    terms.reserve(family.cubes.size());
    for (const auto& cube : family.cubes) terms.push_back(powq(c[cube.level][cube_linear_index(family.n, cube)], q));
    return rootq(pairwise_sum(terms), q);
}

double sr_norm_family(const GridFunction& f, const SparseFamily& family, const SRParams& params) {
    f.validate();
    if (family.n != f.n || family.J != f.J) throw ParameterError("family and grid disagree on n or J");
    if (!verify_sparse(family).ok) throw ParameterError("family is not sparse");
    auto t = build_table(f);
    return family_sum(family, sr_cube_values(t, params.p, params.alpha), params.q);
}

MaximalBound sr_norm_maximal(const GridFunction& f, const SRParams& params) {
    f.validate();
    if (std::isinf(params.q)) throw ParameterError("q = inf has no maximal route; use the Morrey norm");
    params.require_monotone();
    MaximalParams mp{f.n * params.lambda_prime(), params.alpha, params.p, params.q};
    auto M = dyadic_maximal(f, mp);
    std::vector<double> terms(M.size());
    const double h = f.cell_measure();
    for (std::size_t i = 0; i < M.size(); ++i) terms[i] = powq(M.values[i], params.q) * h;
    MaximalBound out;
    out.value = rootq(pairwise_sum(terms), params.q);
    out.upper = rootq(2.0, params.q) * out.value;
    return out;
}

namespace {

struct BruteState {
    int n = 1;
    int J = 0;
    double q = 2.0;
    std::vector<DyadicCube> order;             // deepest level first
    std::vector<double> cq;                    // c(Q)^q per node
    std::vector<std::uint64_t> size;           // |Q| in finest cells
    std::vector<std::vector<std::size_t>> kids;
    std::vector<char> member;
    std::vector<std::uint64_t> top;
    std::vector<char> best_member;
    double best = -1.0;
    std::size_t visited = 0;

    void run(std::size_t i, double acc) {
        if (i == order.size()) {
            ++visited;
            if (acc > best) {
                best = acc;
                best_member = member;
            }
            return;
        }
        std::uint64_t below = 0;
        for (auto ch : kids[i]) below += member[ch] ? size[ch] : top[ch];
        member[i] = 0;
        top[i] = below;
        run(i + 1, acc);
        if (2 * below <= size[i]) {
            member[i] = 1;
            top[i] = size[i];
            run(i + 1, acc + cq[i]);
            member[i] = 0;
        }
    }
};

}  // namespace

BruteForceResult bruteforce_sup(int n, int J, const CubeValues& c, double q, int min_level, std::size_t max_cubes) {
    if (!(q > 0.0) || std::isinf(q)) throw ParameterError("brute force needs a finite exponent q");
    if (min_level < 0 || min_level > J) throw ParameterError("min_level outside 0..J");
    std::size_t count = 0;
    for (int k = min_level; k <= J; ++k) count += cubes_at_level(n, k);
    if (count > max_cubes)
        throw BudgetError("exhaustive search over " + std::to_string(count) + " cubes exceeds the budget of " +
                          std::to_string(max_cubes));
    BruteState st;
    st.n = n;
    st.J = J;
    st.q = q;
    std::unordered_map<std::uint64_t, std::size_t> pos;
    for (int k = J; k >= min_level; --k)
        for (std::size_t i = 0; i < cubes_at_level(n, k); ++i) {
            DyadicCube cube = cube_from_linear(n, k, i);
            pos[cube_key(n, cube)] = st.order.size();
            st.order.push_back(cube);
            st.cq.push_back(powq(c[k][i], q));
            st.size.push_back(std::uint64_t{1} << (n * (J - k)));
            std::vector<std::size_t> kids;
            if (k < J)
                for (unsigned ch = 0; ch < (1u << n); ++ch)
                    kids.push_back(pos.at(cube_key(n, cube_from_linear(n, k + 1, child_linear_index(n, k, i, ch)))));
            st.kids.push_back(std::move(kids));
        }
    st.member.assign(st.order.size(), 0);
    st.top.assign(st.order.size(), 0);
    st.run(0, 0.0);

    BruteForceResult out;
    out.family.n = n;
    out.family.J = J;
    for (std::size_t i = 0; i < st.order.size(); ++i)
        if (st.best_member[i]) out.family.cubes.push_back(st.order[i]);
    out.family.normalize();
    out.sum_q = st.best;
    out.value = rootq(st.best, q);
    out.families_visited = st.visited;
    return out;
}

BruteForceResult sr_norm_bruteforce(const GridFunction& f, const SRParams& params, std::size_t max_cubes) {
    f.validate();
    auto t = build_table(f);
    return bruteforce_sup(f.n, f.J, sr_cube_values(t, params.p, params.alpha), params.q, 0, max_cubes);
}

int default_profile_resolution(int n) { return n == 1 ? 6 : (n == 2 ? 3 : 2); }

namespace {

// Coverage DP. g[b] = best sum of c^q over canonical sparse families inside Q whose
// maximal members cover at most b units, one unit being |Q| / U_k.
struct CoverageDP {
    int n = 1;
    int J = 0;
    int d = 0;
    double q = 2.0;
    const CubeValues* c = nullptr;
    std::vector<std::size_t> units;          // U_k
    std::vector<std::vector<double>> g;      // per level, flat [idx * (U_k + 1) + b]
    bool keep_all = false;

    std::size_t U(int k) const { return units[k]; }

    const double* row(int k, std::size_t idx) const { return g[k].data() + idx * (U(k) + 1); }

    // Partial max-plus merges over the children; stages[i] covers children 0..i.
    std::vector<std::vector<double>> merge(int k, std::size_t idx) const {
        const std::size_t uc = U(k + 1);
        std::vector<std::vector<double>> stages;
        stages.reserve(std::size_t{1} << n);
        for (unsigned ch = 0; ch < (1u << n); ++ch) {
            const double* gc = row(k + 1, child_linear_index(n, k, idx, ch));
            if (ch == 0) {
                stages.emplace_back(gc, gc + uc + 1);
                continue;
            }
            const auto& prev = stages.back();
            std::vector<double> next(prev.size() + uc, 0.0);
            for (std::size_t a = 0; a < prev.size(); ++a)
                for (std::size_t b = 0; b <= uc; ++b) next[a + b] = std::max(next[a + b], prev[a] + gc[b]);
            stages.push_back(std::move(next));
        }
        return stages;
    }

    static std::vector<double> prefix_max(const std::vector<double>& h) {
        std::vector<double> out = h;
        for (std::size_t i = 1; i < out.size(); ++i) out[i] = std::max(out[i], out[i - 1]);
        return out;
    }

    void fill_node(int k, std::size_t idx, double* out) const {
        const double cq = powq((*c)[k][idx], q);
        if (k == J) {
            out[0] = 0.0;
            out[1] = cq;
            return;
        }
        auto stages = merge(k, idx);
        auto h = prefix_max(stages.back());
        const std::size_t Uk = U(k), total = h.size() - 1, r = total / Uk;
        for (std::size_t b = 0; b <= Uk; ++b) out[b] = h[b * r];
        out[Uk] = std::max(out[Uk], cq + h[total / 2]);
    }

    void run(const std::function<void(int)>& on_level) {
        units.resize(J + 1);
        for (int k = 0; k <= J; ++k) units[k] = std::size_t{1} << (n * std::min(d, J - k));
        g.assign(J + 1, {});
        for (int k = J; k >= 0; --k) {
            const std::size_t cnt = cubes_at_level(n, k), w = U(k) + 1;
            g[k].assign(cnt * w, 0.0);
            parallel_for(cnt, [&](std::size_t i) { fill_node(k, i, g[k].data() + i * w); });
            on_level(k);
            if (!keep_all && k < J) g[k + 1].clear();
        }
    }

    void recover(int k, std::size_t idx, std::size_t b, std::vector<DyadicCube>& outc) const {
        const double cq = powq((*c)[k][idx], q);
        if (k == J) {
            if (b >= 1 && cq > 0.0) outc.push_back(cube_from_linear(n, k, idx));
            return;
        }
        auto stages = merge(k, idx);
        auto h = prefix_max(stages.back());
        const std::size_t Uk = U(k), total = h.size() - 1, r = total / Uk;
        std::size_t t = b * r;
        if (b == Uk && cq > 0.0 && cq + h[total / 2] >= h[total]) {
            outc.push_back(cube_from_linear(n, k, idx));
            t = total / 2;
        }
        // first index at or below t attaining the prefix max
        std::size_t ts = 0;
        while (stages.back()[ts] != h[t]) ++ts;
        const std::size_t uc = U(k + 1);
        for (int ch = (1 << n) - 1; ch >= 1; --ch) {
            const auto& prev = stages[ch - 1];
            const std::size_t cidx = child_linear_index(n, k, idx, ch);
            const double* gc = row(k + 1, cidx);
            std::size_t a = 0, bb = 0;
            bool found = false;
            for (std::size_t x = 0; x <= uc && x <= ts && !found; ++x)
                if (ts - x < prev.size() && prev[ts - x] + gc[x] == stages[ch][ts]) {
                    a = ts - x;
                    bb = x;
                    found = true;
                }
            recover(k + 1, cidx, bb, outc);
            ts = a;
        }
        recover(k + 1, child_linear_index(n, k, idx, 0), ts, outc);
    }
};

int resolve(int n, int resolution) { return resolution < 0 ? default_profile_resolution(n) : resolution; }

}  // namespace

SparseProfile sparse_profile(int n, int J, const CubeValues& c, double q, int resolution) {
    if (!(q > 0.0) || std::isinf(q)) throw ParameterError("profile needs a finite exponent q");
    SparseProfile out;
    out.n = n;
    out.J = J;
    out.q = q;
    out.resolution = resolve(n, resolution);
    out.exact_lower = out.resolution >= J;
    out.lower.assign(J + 1, 0.0);
    out.upper.assign(J + 1, 0.0);

    CoverageDP dp;
    dp.n = n;
    dp.J = J;
    dp.d = out.resolution;
    dp.q = q;
    dp.c = &c;
    dp.run([&](int k) {
        const std::size_t cnt = cubes_at_level(n, k), w = dp.U(k) + 1;
        std::vector<double> best(cnt);
        for (std::size_t i = 0; i < cnt; ++i) best[i] = dp.g[k][i * w + dp.U(k)];
        out.lower[k] = rootq(pairwise_sum(best), q);
    });

    // m_k(x) = max over levels k' >= k of c(Q)|Q|^{-1/q} on the ancestor of x.
    const std::size_t cells = std::size_t{1} << (n * J);
    const double h = std::ldexp(1.0, -n * J);
    std::vector<double> m(cells, 0.0), terms(cells);
    for (int k = J; k >= 0; --k) {
        const double scale = std::pow(cube_measure(n, k), -1.0 / q);
        for (std::size_t x = 0; x < cells; ++x) {
            m[x] = std::max(m[x], c[k][ancestor_of_cell(n, J, x, k)] * scale);
            terms[x] = powq(m[x], q) * h;
        }
        out.upper[k] = rootq(2.0 * pairwise_sum(terms), q);
    }

    // Full-level relaxation: every cube of level >= k, sparse or not.
    out.relaxation.assign(J + 1, 0.0);
    double tail = 0.0;
    for (int k = J; k >= 0; --k) {
        std::vector<double> lv(c[k].size());
        for (std::size_t i = 0; i < lv.size(); ++i) lv[i] = powq(c[k][i], q);
        tail += pairwise_sum(lv);
        out.relaxation[k] = rootq(tail, q);
        out.upper[k] = std::min(out.upper[k], out.relaxation[k]);
    }
    return out;
}

SparseFamily profile_family(int n, int J, const CubeValues& c, double q, int level, int resolution) {
    CoverageDP dp;
    dp.n = n;
    dp.J = J;
    dp.d = resolve(n, resolution);
    dp.q = q;
    dp.c = &c;
    dp.keep_all = true;
    dp.run([](int) {});
    SparseFamily fam;
    fam.n = n;
    fam.J = J;
    for (std::size_t i = 0; i < cubes_at_level(n, level); ++i) dp.recover(level, i, dp.U(level), fam.cubes);
    fam.normalize();
    return fam;
}

Interval sr_interval(const GridFunction& f, const SRParams& params, int resolution) {
    f.validate();
    if (std::isinf(params.q)) throw ParameterError("q = inf: the sparse norm equals the Morrey norm");
    auto t = build_table(f);
    auto prof = sparse_profile(f.n, f.J, sr_cube_values(t, params.p, params.alpha), params.q, resolution);
    return Interval{prof.lower[0], prof.upper[0]};
}

SparseL2 sparse_l2_norms(const GridFunction& f, int resolution) {
    f.validate();
    SparseL2 out;
    out.identity = sr_interval(f, SRParams{2.0, 2.0, 0.0}, resolution);
    auto t = build_table(f);
    auto osc = oscillation_levels(f, t);
    for (int k = 0; k <= f.J; ++k) {
        const double s = std::pow(cube_measure(f.n, k), -0.5);
        for (double& v : osc[k]) v *= s;
    }
    auto prof = sparse_profile(f.n, f.J, osc, 2.0, resolution);
    out.oscillation = Interval{prof.lower[0], prof.upper[0]};
    return out;
}

void write_family_csv(std::ostream& os, const SparseFamily& family) {
    os << "level";
    for (int i = 1; i <= family.n; ++i) os << ",m" << i;
    os << "\n";
    for (const auto& q : family.cubes) {
        os << q.level;
        for (int i = 0; i < family.n; ++i) os << "," << q.m[i];
        os << "\n";
    }
}

SparseFamily read_family_csv(std::istream& is, int n, int J) {
    SparseFamily fam;
    fam.n = n;
    fam.J = J;
    std::string line;
    if (!std::getline(is, line)) throw ParameterError("family CSV is empty");
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::stringstream ss(line);
        std::string cell;
        std::vector<long long> vals;
        while (std::getline(ss, cell, ',')) {
            try {
                std::size_t used = 0;
                vals.push_back(std::stoll(cell, &used));
                if (used != cell.size()) throw ParameterError("bad integer in family CSV");
            } catch (const std::logic_error&) {
                throw ParameterError("bad integer in family CSV: " + cell);
            }
        }
        if (vals.size() != static_cast<std::size_t>(n) + 1) throw ParameterError("family CSV row has wrong width");
        DyadicCube q;
        q.level = static_cast<int>(vals[0]);
        for (int i = 0; i < n; ++i) q.m[i] = vals[i + 1];
        fam.cubes.push_back(q);
    }
    fam.normalize();
    return fam;
}

}  // namespace sparsekit
