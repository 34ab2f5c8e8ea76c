// Acceptance run: one PASS/FAIL line per criterion, tolerances pinned below.
// Usage: acceptance <path-to-sparsekit-cli>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <limits>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "sparsekit/classical.hpp"
#include "sparsekit/harness.hpp"
#include "sparsekit/maximal.hpp"
#include "sparsekit/parallel.hpp"
#include "sparsekit/sequence.hpp"
#include "sparsekit/sparse.hpp"
#include "sparsekit/spectral.hpp"

using namespace sparsekit;
namespace fs = std::filesystem;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

int g_failed = 0;

void report(int id, const std::string& name, bool pass, const std::string& detail) {
    std::printf("[%s] criterion %2d %s: %s\n", pass ? "PASS" : "FAIL", id, name.c_str(), detail.c_str());
    std::fflush(stdout);
    if (!pass) ++g_failed;
}

std::string f2s(const char* fmt, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, fmt, v);
    return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

double drift(double a, double b) { return std::abs(b - a) / std::abs(a); }

struct Band {
    double lo = kInf;
    double hi = 0.0;
    void add(double v) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    double width() const { return hi / lo; }
};

void append(FunctionFamily& to, const FunctionFamily& from) {
    for (std::size_t i = 0; i < from.size(); ++i) to.add(from.labels[i], from.normalization[i], from.members[i]);
}

FunctionFamily generate(const std::string& gen, int n, int J, std::size_t count, std::uint64_t seed) {
    CorpusSpec s;
    s.generator = gen;
    s.n = n;
    s.J = J;
    s.count = count;
    s.seed = seed;
    return corpus_generate(s);
}

// Members defined by resolution-independent formulas, so the same seed gives the same functions at every J.
FunctionFamily smooth_corpus(int n, int J, std::uint64_t seed, bool nonneg) {
    FunctionFamily fam;
    append(fam, generate("bumps", n, J, 6, seed));
    append(fam, generate("mollified_atom", n, J, 3, seed));
    if (n >= 2) append(fam, generate("mollified_segment", n, J, 1, seed));
    append(fam, generate("constant", n, J, 1, seed));
    if (!nonneg) append(fam, generate("trig", n, J, 4, seed + 1));
    return fam;
}

// ---- 1 ----
void criterion1() {
    const auto t0 = std::chrono::steady_clock::now();
    const SRParams params[] = {{1, 2, 0}, {1, 2, 1}, {1.5, 3, 0.5}, {2, 2, 0}, {1, 4, -1}, {1.2, 2, -0.5}, {1, 1, 0}};
    double worst_ratio = 0.0, worst_witness = 1.0, worst_const_err = 0.0;
    bool all_sparse = true;
    std::size_t count = 0;
    for (int n = 1; n <= 2; ++n) {
        for (int J = 2; J <= 6; ++J) {
            auto fam = generate("mixed", n, J, 20, 1000 + 10 * n + J);
            for (std::size_t i = 0; i < fam.size(); ++i) {
                const auto& P = params[(count + i) % std::size(params)];
                auto family = sparse_dominate(fam.members[i], P);
                auto sp = verify_sparse(family);
                all_sparse = all_sparse && sp.ok;
                worst_witness = std::min(worst_witness, sp.worst_ratio);
                worst_ratio = std::max(worst_ratio, check_domination(fam.members[i], family, P).max_ratio);
                const double lp = P.lambda_prime();
                double formula = 2.0;
                if (P.p != P.q && P.alpha >= 0.0)
                    formula = 2.0 * std::max(1.0, std::exp(lp - P.alpha) *
                                                      std::pow(P.p * P.q * P.alpha / (P.q - P.p), P.alpha));
                worst_const_err = std::max(worst_const_err, drift(formula, dom_constant(P)));
            }
            count += fam.size();
        }
    }
    const double secs = seconds_since(t0);
    const bool pass = count >= 200 && all_sparse && worst_witness >= 0.5 && worst_ratio <= 1.0 + 1e-12 &&
                      worst_const_err <= 1e-15 && secs < 10.0;
    report(1, "sparse-domination soundness", pass,
           std::to_string(count) + " functions, worst max_ratio " + f2s("%.6f", worst_ratio) +
               " (<= 1 + 1e-12), worst witness ratio " + f2s("%.3f", worst_witness) +
               " (>= 0.5), constant vs formula rel err " + f2s("%.1e", worst_const_err) + " (<= 1e-15), " +
               f2s("%.2f", secs) + " s (< 10 s)");
}

// ---- 2 ----
void criterion2() {
    const SRParams params[] = {{1, 2, 0}, {1, 2, 1}, {1.5, 3, 0.5}, {2, 2, -1}, {1, 4, 0}};
    double worst = 0.0;
    std::size_t count = 0;
    std::uint64_t seed = 2000;
    auto run = [&](int n, int J, std::size_t k) {
        auto fam = generate("mixed", n, J, k, seed++);
        for (std::size_t i = 0; i < fam.size(); ++i) {
            const auto& P = params[count % std::size(params)];
            const double b = std::pow(sr_norm_bruteforce(fam.members[i], P).value, P.q);
            const double m = 2.0 * std::pow(sr_norm_maximal(fam.members[i], P).value, P.q);
            worst = std::max(worst, m > 0.0 ? b / m : 0.0);
            ++count;
        }
    };
    run(2, 1, 10);
    run(2, 2, 25);
    run(1, 2, 8);
    run(1, 3, 8);
    run(1, 4, 4);
    const bool pass = count >= 50 && worst <= 1.0 + 1e-10;
    report(2, "bruteforce^q <= 2 maximal^q", pass,
           std::to_string(count) + " instances, max bruteforce^q / (2 maximal^q) = " + f2s("%.6f", worst) +
               " (<= 1 + 1e-10)");
}

// ---- 3 ----
void criterion3() {
    const auto t0 = std::chrono::steady_clock::now();
    bool exact = true, increasing = true;
    double prev = 0.0, worst_err = 0.0;
    for (int J = 2; J <= 8; ++J) {
        auto f = GridFunction::zeros(2, J, true);
        f.values[0] = std::ldexp(1.0, 2 * J);
        const double r = rmt_norm(f, 1.0, 2.0, 0.0).value;
        const double s1 = sparse_index(f, 1).value.lower;
        exact = exact && r == 1.0;
        worst_err = std::max(worst_err, drift(std::sqrt(J + 1.0), s1));
        const double ratio = s1 / r;
        increasing = increasing && ratio > prev;
        prev = ratio;
    }
    const double secs = seconds_since(t0);
    const bool pass = exact && worst_err <= 1e-15 && increasing && secs < 5.0;
    report(3, "strictness SR_{1,2} vs R_{1,2}", pass,
           std::string("rmt = 1 exactly: ") + (exact ? "yes" : "no") + ", s_1 lower vs sqrt(J+1) rel err " +
               f2s("%.1e", worst_err) + " (<= 1e-15), ratio strictly increasing J=2..8: " +
               (increasing ? "yes" : "no") + ", " + f2s("%.2f", secs) + " s (< 5 s)");
}

// ---- 4 ----
Band riesz_band(int J, double p) {
    Band b;
    auto fam = smooth_corpus(2, J, 4000, false);
    std::vector<Interval> iv(fam.size());
    std::vector<double> lp(fam.size());
    parallel_for(fam.size(), [&](std::size_t i) {
        iv[i] = sr_interval(fam.members[i], SRParams{p, p, 0.0});
        lp[i] = lp_norm(fam.members[i], p);
    });
    for (std::size_t i = 0; i < fam.size(); ++i) {
        b.add(iv[i].lower / lp[i]);
        b.add(iv[i].upper / lp[i]);
    }
    return b;
}

void criterion4() {
    double worst_width = 0.0, worst_drift = 0.0;
    std::string detail;
    for (double p : {1.5, 2.0, 3.0}) {
        auto b4 = riesz_band(4, p), b8 = riesz_band(8, p);
        worst_width = std::max({worst_width, b4.width(), b8.width()});
        worst_drift = std::max({worst_drift, drift(b4.lo, b8.lo), drift(b4.hi, b8.hi)});
        detail += "p=" + f2s("%g", p) + " band J=4 [" + f2s("%.3f", b4.lo) + "," + f2s("%.3f", b4.hi) + "] J=8 [" +
                  f2s("%.3f", b8.lo) + "," + f2s("%.3f", b8.hi) + "]; ";
    }
    const bool pass = worst_width <= 10.0 && worst_drift <= 0.2;
    report(4, "Riesz SR_{p,p} ~ L^p", pass,
           detail + "max width factor " + f2s("%.3f", worst_width) + " (<= 10), max endpoint drift " +
               f2s("%.3f", worst_drift) + " (<= 0.2)");
}

// ---- 5 ----
Band sobolev_band(int J, int pad) {
    Band b;
    auto fam = smooth_corpus(2, J, 5000, true);
    std::vector<double> r(fam.size());
    parallel_for(fam.size(), [&](std::size_t i) {
        const auto& f = fam.members[i];
        r[i] = sr_interval(f, SRParams{1.0, 2.0, 0.0}).mid() / sobolev_negative_norm(f, 1.0, 2.0, pad);
    });
    for (double v : r) b.add(v);
    return b;
}

void criterion5() {
    auto base = sobolev_band(5, 3), padded = sobolev_band(5, 5), fine = sobolev_band(7, 3);
    const double width = std::max({base.width(), padded.width(), fine.width()});
    const double dpad = std::max(drift(base.lo, padded.lo), drift(base.hi, padded.hi));
    const double dJ = std::max(drift(base.lo, fine.lo), drift(base.hi, fine.hi));
    const bool pass = width <= 10.0 && dpad <= 0.2 && dJ <= 0.2;
    report(5, "Sobolev identification SR_{1,2} ~ H^{-1}", pass,
           "band J=5 pad3 [" + f2s("%.3f", base.lo) + "," + f2s("%.3f", base.hi) + "], pad5 [" +
               f2s("%.3f", padded.lo) + "," + f2s("%.3f", padded.hi) + "], J=7 [" + f2s("%.3f", fine.lo) + "," +
               f2s("%.3f", fine.hi) + "]; width factor " + f2s("%.3f", width) + " (<= 10), padding drift " +
               f2s("%.3f", dpad) + " (<= 0.2), J drift " + f2s("%.3f", dJ) + " (<= 0.2)");
}

// ---- 6 ----
void criterion6() {
    struct Row {
        const char* name;
        Table1Params p;
        double predicted, tol;
    };
    const Row rows[] = {
        {"L^2", {Table1Space::lp, 2.0, 0.0, 2, 5, 8}, -1.0, 0.15},
        {"M^{1.5,0}", {Table1Space::morrey, 1.5, 0.0, 2, 5, 8}, -1.0 / 3.0, 0.15},
        {"M^{1,2}", {Table1Space::morrey, 1.0, 2.0, 2, 5, 8}, -0.5, 0.2},
        {"R_{1,2}log^1", {Table1Space::rmt, 1.0, 1.0, 2, 5, 8}, -0.5, 0.2},
    };
    bool pass = true;
    std::string detail;
    double slowest = 0.0;
    for (const auto& r : rows) {
        const auto t0 = std::chrono::steady_clock::now();
        auto fit = table1_experiment(r.p);
        const double secs = seconds_since(t0);
        slowest = std::max(slowest, secs);
        const bool ok = std::abs(fit.predicted_slope - r.predicted) <= 1e-12 && fit.max_deviation <= r.tol;
        pass = pass && ok && secs < 120.0;
        detail += std::string(r.name) + " slopes";
        for (const auto& row : fit.rows) detail += " " + f2s("%.3f", row.slope);
        detail += " vs " + f2s("%.3f", r.predicted) + " (+-" + f2s("%.2f", r.tol) + "); ";
    }
    report(6, "Table 1 rates, J=5..8", pass, detail + "slowest row " + f2s("%.1f", slowest) + " s (< 120 s)");
}

// ---- 7 ----
void criterion7() {
    std::size_t count = 0, equal = 0;
    for (int n = 1; n <= 2; ++n) {
        auto fam = generate("mixed", n, n == 1 ? 8 : 5, 50, 7000 + n);
        for (const auto& f : fam.members) {
            auto s1 = sparse_indices(f).at(1);
            auto iv = sr_interval(f, SRParams{sparse_index_exponent(n), 2.0, 0.0});
            equal += s1.lower == iv.lower && s1.upper == iv.upper;
            ++count;
        }
    }
    report(7, "s_1 = SR_{2n/(n+2),2} bit for bit", count >= 100 && equal == count,
           std::to_string(equal) + "/" + std::to_string(count) + " identical intervals (exact equality)");
}

// ---- 8 ----
void criterion8() {
    std::mt19937_64 rng(8000);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    double worst = 0.0;
    for (int c = 0; c < 1000; ++c) {
        const std::size_t len = 1 + rng() % 6;
        std::vector<double> a(len), w0(len), w1(len);
        for (std::size_t j = 0; j < len; ++j) {
            a[j] = u(rng) < 0.2 ? 0.0 : 10.0 * u(rng);
            w0[j] = std::ldexp(0.1 + u(rng), -static_cast<int>(rng() % 8));
            w1[j] = std::ldexp(0.1 + u(rng), static_cast<int>(rng() % 8) - 4);
        }
        const double t = std::ldexp(0.5 + u(rng), static_cast<int>(rng() % 12) - 6);
        const double k = k_functional(t, a, w0, w1), b = k_functional_bruteforce(t, a, w0, w1);
        worst = std::max(worst, std::abs(k - b) / std::max(1.0, std::abs(b)));
    }
    report(8, "K-functional vs brute-force splitting", worst <= 1e-12,
           "1000 cases, length <= 6, max |K - brute| / max(1, |brute|) = " + f2s("%.1e", worst) + " (<= 1e-12)");
}

// ---- 9 ----
void criterion9() {
    auto psi = decay_shifted_power(0.5);
    std::mt19937_64 rng(9000);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    Band b;
    for (int c = 0; c < 200; ++c) {
        const std::size_t len = 4 + rng() % 20;
        BlockSequence lam(len);
        std::vector<double> a(len, 0.0);
        for (std::size_t k = 0; k < len; ++k) {
            lam[k].resize(1 + rng() % 8);
            for (auto& v : lam[k]) v = u(rng) < 0.3 ? 0.0 : (u(rng) < 0.5 ? -1.0 : 1.0) * std::ldexp(u(rng), static_cast<int>(rng() % 10));
            for (double v : lam[k]) a[k] = std::max(a[k], std::abs(v));
        }
        if (*std::max_element(a.begin(), a.end()) == 0.0) a[0] = lam[0][0] = 1.0;
        b.add(extrapolation_norm(a, psi) / vpsi_seq(lam, psi));
    }
    report(9, "extrapolation ~ vpsi", b.width() <= 4.0,
           "200 sequences, ratio band [" + f2s("%.4f", b.lo) + "," + f2s("%.4f", b.hi) + "], width factor " +
               f2s("%.4f", b.width()) + " (<= 4)");
}

// ---- 10 ----
void criterion10() {
    auto psi1 = decay_shifted_power(1.0);
    auto a = example_9_1(psi1);
    const double t = tpsi_scalar(a, psi1);
    auto r = vpsi_partial_ratios(a, psi1);
    const double growth = r[32] / r[4];
    auto psi2 = decay_shifted_power(0.5);
    auto one = example_9_2(1), wide = example_9_2(1024);
    const double v1 = vpsi_seq(one, psi2), vw = vpsi_seq(wide, psi2);
    const double tgrow = tpsi_seq(wide, psi2, 2) / tpsi_seq(one, psi2, 2);
    const bool pass = std::abs(t - 1.0) <= 1e-10 && growth >= 5.0 && drift(v1, vw) <= 1e-12 &&
                      std::abs(tgrow - 32.0) <= 1e-10;
    report(10, "counterexamples 9.1 / 9.2", pass,
           "9.1: tpsi = 1 + " + f2s("%.1e", t - 1.0) + " (|.| <= 1e-10), vpsi ratio N=32 / N=4 = " +
               f2s("%.3f", growth) + " (>= 5); 9.2 width 2^10: vpsi drift " + f2s("%.1e", drift(v1, vw)) +
               " (<= 1e-12), tpsi growth " + f2s("%.6f", tgrow) + " (= 32 +- 1e-10)");
}

// ---- 11 ----
void criterion11() {
    auto fam = smooth_corpus(2, 8, 11000, false);
    append(fam, generate("atom", 2, 8, 2, 11001));
    auto psi = decay_power(0.5);
    std::vector<double> r(fam.size());
    parallel_for(fam.size(), [&](std::size_t i) {
        auto d = lp_blocks(fam.members[i], 3);
        auto t = tpsi_norm(d, psi);
        r[i] = t.fourier / t.blockwise;
    });
    Band b;
    for (double v : r) b.add(v);
    report(11, "T_Psi Fourier vs blockwise at 256^2", b.width() <= 3.0,
           std::to_string(fam.size()) + " functions, Psi = t^{-1/2}, ratio band [" + f2s("%.4f", b.lo) + "," +
               f2s("%.4f", b.hi) + "], width factor " + f2s("%.4f", b.width()) + " (<= 3)");
}

// ---- 12 ----
struct EmbedConstants {
    double morrey = 0.0;
    double rmt = 0.0;
};

EmbedConstants embedding_constants(int J) {
    auto fam = smooth_corpus(2, J, 12000, true);
    auto psi_v = decay_power(0.5);  // t^{(1-alpha)/2}, alpha = 2
    auto psi_t = decay_power(0.5);  // t^{1/2-alpha}, alpha = 1
    std::vector<double> cm(fam.size()), cr(fam.size());
    parallel_for(fam.size(), [&](std::size_t i) {
        const auto& f = fam.members[i];
        auto d = lp_blocks(f, 3);
        cm[i] = vpsi_norm(d, psi_v).value / morrey_norm(f, 1.0, 2.0).value;
        cr[i] = tpsi_norm(d, psi_t).blockwise / rmt_norm(f, 1.0, 2.0, 1.0).value;
    });
    return {*std::max_element(cm.begin(), cm.end()), *std::max_element(cr.begin(), cr.end())};
}

void criterion12() {
    auto c5 = embedding_constants(5), c7 = embedding_constants(7);
    const double dm = drift(c5.morrey, c7.morrey), dr = drift(c5.rmt, c7.rmt);
    const int J = 8;
    auto psi_v = decay_power(0.5);
    auto probe = [&](int K) {
        auto h = haar_atom(2, J, K, 0, 1);
        return morrey_norm(h, 1.0, 2.0).value / vpsi_norm(lp_blocks(h, 3), psi_v).value;
    };
    const double growth = probe(6) / probe(2);
    const bool pass = dm <= 0.2 && dr <= 0.2 && growth >= 4.0;
    report(12, "embeddings Morrey -> V_Psi, RMT -> T_Psi", pass,
           "C_V J=5 " + f2s("%.4f", c5.morrey) + " J=7 " + f2s("%.4f", c7.morrey) + " drift " + f2s("%.3f", dm) +
               " (<= 0.2); C_T J=5 " + f2s("%.4f", c5.rmt) + " J=7 " + f2s("%.4f", c7.rmt) + " drift " +
               f2s("%.3f", dr) + " (<= 0.2); Haar probe morrey/vpsi K=6 over K=2 = " + f2s("%.3f", growth) +
               " (>= 4)");
}

// ---- 13 ----
FunctionFamily interp_corpus(int J) {
    FunctionFamily fam;
    append(fam, generate("trig", 2, J, 25, 13000));
    append(fam, generate("bumps", 2, J, 25, 13001));
    return fam;
}

void criterion13() {
    const double p = 1.5;
    auto psi = decay_exponential(2.0 * (1.0 - 1.0 / p));
    double constant[2] = {0.0, 0.0};
    Band gn;
    bool finite = true;
    const int Js[2] = {5, 7};
    for (int s = 0; s < 2; ++s) {
        const int J = Js[s];
        auto fam = interp_corpus(J);
        std::vector<InterpCheck> res(fam.size());
        parallel_for(fam.size(), [&](std::size_t i) {
            res[i] = interp_inequality_check(fam.members[i], psi, default_r_grid(J));
        });
        for (std::size_t i = 0; i < fam.size(); ++i) {
            finite = finite && std::isfinite(res[i].max_ratio);
            constant[s] = std::max(constant[s], res[i].max_ratio);
            if (J == 7) {
                const double target = std::pow(res[i].gradient, 1.0 - p / 2.0) *
                                      std::pow(lp_norm(fam.members[i], p), p / 2.0);
                gn.add(res[i].best_rhs / target);
            }
        }
    }
    const double d = drift(constant[0], constant[1]);
    const bool pass = finite && d <= 0.2 && gn.lo >= 0.2 && gn.hi <= 5.0;
    report(13, "interpolation inequality", pass,
           "50 functions, Psi = 2^{-2t/3}; empirical constant J=5 " + f2s("%.4f", constant[0]) + " J=7 " +
               f2s("%.4f", constant[1]) + " drift " + f2s("%.3f", d) +
               " (<= 0.2); optimized bound / GN product in [" + f2s("%.3f", gn.lo) + "," + f2s("%.3f", gn.hi) +
               "] (within [1/5, 5])");
}

// ---- 14 ----
std::string slurp(const fs::path& p) {
    std::ifstream is(p, std::ios::binary);
    std::ostringstream os;
    os << is.rdbuf();
    return os.str();
}

std::string slurp_tree(const fs::path& p) {
    if (!fs::is_directory(p)) return slurp(p);
    std::vector<fs::path> files;
    for (const auto& e : fs::recursive_directory_iterator(p))
        if (e.is_regular_file()) files.push_back(e.path());
    std::sort(files.begin(), files.end());
    std::string all;
    for (const auto& f : files) all += fs::relative(f, p).string() + "\n" + slurp(f);
    return all;
}

void criterion14(const std::string& cli) {
    const fs::path dir = fs::temp_directory_path() / "sparsekit_acceptance";
    fs::remove_all(dir);
    fs::create_directories(dir);
    const std::string in = (dir / "f.spgf").string();
    save_spgf(in, generate("bumps", 2, 5, 1, 14000).members[0]);
    save_family((dir / "family").string(), generate("mollified_atom", 2, 5, 3, 14001));
    {
        std::ofstream fam((dir / "fam.csv").string());
        fam << "level,m1,m2\n0,0,0\n";
    }
    const std::string psi = (dir / "psi.csv").string();
    if (std::system((cli + " psi --kind exponential --beta 0.6666666666666666 --out " + psi).c_str()) != 0)
        throw std::runtime_error("cannot run " + cli);
    const std::vector<std::string> commands = {
        "norm --space lp --p 1.5 --input " + in,
        "norm --space morrey --p 1 --alpha 2 --input " + in,
        "norm --space rmt --p 1 --q 2 --alpha 1 --input " + in,
        "norm --space crmt --p 1 --q 2 --alpha 0 --input " + in,
        "norm --space sr --p 1 --q 2 --alpha 0 --input " + in,
        "norm --space sr --p 1 --q 2 --alpha 0 --method maximal --input " + in,
        "norm --space sr --p 1 --q 2 --alpha 0 --method family --family " + (dir / "fam.csv").string() +
            " --input " + in,
        "norm --space lorentz --input " + in,
        "norm --space sobolev --lambda 1 --q 2 --input " + in,
        "norm --space vpsi --alpha 2 --input " + in,
        "norm --space tpsi --alpha 1 --input " + in,
        "dominate --p 1 --q 2 --alpha 0 --input " + in + " --check --report @.report",
        "indices --input " + in + " --nmax 8",
        "table1 --space rmt --p 1 --alpha 1 --n 2 --jmin 4 --jmax 6 --seed 3",
        "decay --family " + (dir / "family").string() + " --report @.report",
        "seq --example 9.1",
        "seq --example 9.2 --width 64",
        "seq --example kfunc --seq 1,2,3,4 --w0 1,0.25,0.0625,0.015625 --t 0.3",
        "seq --example extrapolate --count 20 --seed 5",
        "interp --input " + in + " --psi " + psi,
        "corpus --generator mixed --n 2 --J 4 --count 6 --seed 9",
    };
    std::size_t identical = 0;
    std::string bad;
    for (std::size_t c = 0; c < commands.size(); ++c) {
        std::string outs[3];
        int codes[3];
        const char* thr[3] = {"1", "1", "4"};
        for (int run = 0; run < 3; ++run) {
            const fs::path out = dir / ("out_" + std::to_string(c) + "_" + std::to_string(run));
            fs::remove_all(out);
            std::string cmd = commands[c];
            const auto at = cmd.find("@.report");
            if (at != std::string::npos) cmd.replace(at, 8, out.string() + ".report");
            cmd = cli + " " + cmd + " --threads " + thr[run] + " --out " + out.string() + " 2>/dev/null";
            codes[run] = std::system(cmd.c_str());
            outs[run] = slurp_tree(out);
            if (at != std::string::npos) outs[run] += slurp(out.string() + ".report");
        }
        const bool same = codes[0] == 0 && codes[0] == codes[1] && codes[1] == codes[2] && !outs[0].empty() &&
                          outs[0] == outs[1] && outs[1] == outs[2];
        identical += same;
        if (!same) bad += " [" + commands[c].substr(0, commands[c].find(' ', 8)) + "]";
    }
    fs::remove_all(dir);
    report(14, "CLI determinism", identical == commands.size(),
           std::to_string(identical) + "/" + std::to_string(commands.size()) +
               " commands byte-identical across two runs at 1 thread and one at 4 threads (exact)" +
               (bad.empty() ? "" : "; differing:" + bad));
}

}  // namespace

int main(int argc, char** argv) {
    if (argc < 2) {
        std::fprintf(stderr, "usage: acceptance <sparsekit-cli>\n");
        return 2;
    }
    set_threads(4);
    const std::vector<std::function<void()>> runs = {
        criterion1, criterion2, criterion3, criterion4,  criterion5,  criterion6, criterion7,
        criterion8, criterion9, criterion10, criterion11, criterion12, criterion13,
    };
    for (const auto& run : runs) {
        try {
            run();
        } catch (const std::exception& e) {
            std::printf("[FAIL] criterion raised: %s\n", e.what());
            ++g_failed;
        }
    }
    try {
        criterion14(argv[1]);
    } catch (const std::exception& e) {
        std::printf("[FAIL] criterion 14 raised: %s\n", e.what());
        ++g_failed;
    }
    std::printf("%d of 14 criteria failed\n", g_failed);
    return g_failed == 0 ? 0 : 1;
}
