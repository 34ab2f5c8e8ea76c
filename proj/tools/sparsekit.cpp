#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "sparsekit/classical.hpp"
#include "sparsekit/grid.hpp"
#include "sparsekit/harness.hpp"
#include "sparsekit/maximal.hpp"
#include "sparsekit/parallel.hpp"
#include "sparsekit/sequence.hpp"
#include "sparsekit/sparse.hpp"
#include "sparsekit/spectral.hpp"

#ifndef SPARSEKIT_VERSION
#define SPARSEKIT_VERSION "0.0.0"
#endif

using namespace sparsekit;
using nlohmann::json;

namespace {

struct Common {
    std::string out = "-";
    std::uint64_t seed = 0;
    int threads = 1;
};

void add_common(CLI::App* app, Common& c) {
    app->add_option("--out", c.out, "output path, - for stdout");
    app->add_option("--seed", c.seed, "seed recorded in reports and used by generators");
    app->add_option("--threads", c.threads, "worker threads")->check(CLI::PositiveNumber);
}

void emit(const std::string& path, const std::string& text) {
    if (path == "-" || path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("cannot write " + path);
    os << text;
}

std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

json jnum(double v) {
    if (std::isinf(v)) return v > 0 ? json("inf") : json("-inf");
    if (std::isnan(v)) return json("nan");
    return json(v);
}

json header(const char* command, const Common& c) {
    json j;
    j["version"] = SPARSEKIT_VERSION;
    j["command"] = command;
    j["seed"] = c.seed;
    return j;
}

json certified(double lower, double upper) { return json{{"lower", jnum(lower)}, {"upper", jnum(upper)}}; }

json grid_truncation(const GridFunction& f) {
    return json{{"n", f.n}, {"J", f.J}, {"levels", f.J + 1}, {"truncated_tree", true}};
}

Decay load_decay(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw ParameterError("cannot read decay " + path);
    return read_decay_csv(is);
}

std::vector<double> parse_list(const std::string& s) {
    std::vector<double> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        try {
            std::size_t pos = 0;
            out.push_back(std::stod(tok, &pos));
            if (pos != tok.size()) throw std::invalid_argument(tok);
        } catch (const std::exception&) {
            throw ParameterError("bad number '" + tok + "' in list");
        }
    }
    return out;
}

// ---- norm ----

struct NormOpts {
    Common c;
    std::string space, input, method = "certified", family, psi;
    double p = 1.0, q = 2.0, alpha = 0.0, lambda = 1.0;
    int pad = 3, resolution = -1;
};

json run_norm(const NormOpts& o) {
    auto f = load_spgf(o.input);
    json j = header("norm", o.c);
    j["space"] = o.space;
    j["input"] = o.input;
    j["truncation"] = grid_truncation(f);
    auto exact = [&](double v, const char* route) {
        j["value"] = jnum(v);
        j["route"] = route;
        j["certified"] = certified(v, v);
    };
    if (o.space == "lp") {
        j["params"] = {{"p", jnum(o.p)}};
        exact(lp_norm(f, o.p), "exact");
    } else if (o.space == "morrey" || o.space == "rmt" || o.space == "crmt") {
        NormReport r = o.space == "morrey" ? morrey_norm(f, o.p, o.alpha)
                       : o.space == "rmt"  ? rmt_norm(f, o.p, o.q, o.alpha)
                                           : crmt_norm(f, o.p, o.q, o.alpha);
        auto rj = to_json(r, f.n);
        j["params"] = {{"p", rj["p"]}, {"q", rj["q"]}, {"alpha", rj["alpha"]}};
        j["value"] = rj["value"];
        j["route"] = rj["route"];
        j["witness"] = rj["witness"];
        if (rj.contains("witness_level")) j["witness_level"] = rj["witness_level"];
        j["certified"] = certified(r.value, r.value);
    } else if (o.space == "sr") {
        SRParams P{o.p, o.q, o.alpha};
        j["params"] = {{"p", jnum(o.p)}, {"q", jnum(o.q)}, {"alpha", jnum(o.alpha)}};
        auto iv = sr_interval(f, P, o.resolution);
        const int res = o.resolution < 0 ? default_profile_resolution(f.n) : o.resolution;
        j["truncation"]["resolution"] = res;
        j["truncation"]["exact_lower"] = res >= f.J;
        j["certified"] = certified(iv.lower, iv.upper);
        if (o.method == "certified") {
            j["value"] = jnum(iv.mid());
            j["route"] = "interval_midpoint";
        } else if (o.method == "maximal") {
            auto m = sr_norm_maximal(f, P);
            j["value"] = jnum(m.value);
            j["route"] = "maximal";
            j["maximal_upper"] = jnum(m.upper);
        } else if (o.method == "family") {
            if (o.family.empty()) throw ParameterError("--method family needs --family");
            std::ifstream is(o.family);
            if (!is) throw ParameterError("cannot read family " + o.family);
            j["value"] = jnum(sr_norm_family(f, read_family_csv(is, f.n, f.J), P));
            j["route"] = "family";
        } else if (o.method == "bruteforce") {
            auto b = sr_norm_bruteforce(f, P);
            j["value"] = jnum(b.value);
            j["route"] = "bruteforce";
            j["families_visited"] = b.families_visited;
            j["certified"] = certified(b.value, b.value);
        } else {
            throw ParameterError("unknown method '" + o.method + "'");
        }
    } else if (o.space == "lorentz") {
        auto l = lorentz_norms(f);
        j["value"] = jnum(l.l12);
        j["route"] = "rearrangement";
        j["l12"] = jnum(l.l12);
        j["l1inf_log_half"] = jnum(l.l1inf_log_half);
        j["certified"] = certified(l.l12, l.l12);
    } else if (o.space == "sobolev") {
        j["params"] = {{"lambda", jnum(o.lambda)}, {"q", jnum(o.q)}};
        const double v = sobolev_negative_norm(f, o.lambda, o.q, o.pad);
        j["value"] = jnum(v);
        j["route"] = "riesz_potential";
        j["certified"] = certified(v, v);
        j["truncation"]["pad"] = o.pad;
        if (o.q == 2.0) j["fourier"] = jnum(sobolev_negative_norm_fourier(f, o.lambda, o.pad));
    } else if (o.space == "vpsi" || o.space == "tpsi") {
        const bool v = o.space == "vpsi";
        Decay psi = !o.psi.empty() ? load_decay(o.psi)
                                   : decay_power(v ? (o.alpha - 1.0) / 2.0 : o.alpha - 0.5);
        j["params"] = {{"alpha", jnum(o.alpha)}, {"psi", psi.descriptor}};
        auto d = lp_blocks(f, o.pad);
        j["truncation"]["pad"] = o.pad;
        j["truncation"]["jmax"] = d.jmax;
        if (v) {
            auto r = vpsi_norm(d, psi);
            j["value"] = jnum(r.value);
            j["truncation"]["truncated_at"] = r.truncated_at;
            j["certified"] = certified(r.value, r.value);
        } else {
            auto r = tpsi_norm(d, psi);
            j["value"] = jnum(r.blockwise);
            j["fourier"] = jnum(r.fourier);
            j["truncation"]["truncated_at"] = r.truncated_at;
            j["certified"] = certified(r.blockwise, r.blockwise);
        }
        j["route"] = "littlewood_paley";
    } else {
        throw ParameterError("unknown space '" + o.space + "'");
    }
    return j;
}

// ---- dominate ----

struct DominateOpts {
    Common c;
    std::string input, report = "-";
    double p = 1.0, q = 2.0, alpha = 0.0;
    bool check = false;
};

int run_dominate(const DominateOpts& o) {
    auto f = load_spgf(o.input);
    SRParams P{o.p, o.q, o.alpha};
    auto fam = sparse_dominate(f, P);
    std::ostringstream os;
    write_family_csv(os, fam);
    emit(o.c.out, os.str());
    if (!o.check) return 0;
    auto sp = verify_sparse(fam);
    auto dc = check_domination(f, fam, P);
    json j = header("dominate", o.c);
    j["input"] = o.input;
    j["params"] = {{"p", jnum(o.p)}, {"q", jnum(o.q)}, {"alpha", jnum(o.alpha)}};
    j["cubes"] = fam.cubes.size();
    j["sparse"] = sp.ok;
    j["worst_witness_ratio"] = jnum(sp.worst_ratio);
    j["constant"] = jnum(dc.constant);
    j["max_ratio"] = jnum(dc.max_ratio);
    j["raw_ratio"] = jnum(dc.raw_ratio);
    const bool ok = sp.ok && dc.max_ratio <= 1.0;
    j["ok"] = ok;
    j["truncation"] = grid_truncation(f);
    j["certified"] = certified(dc.max_ratio, dc.max_ratio);
    emit(o.report, j.dump(2) + "\n");
    return ok ? 0 : 1;
}

// ---- indices ----

struct IndicesOpts {
    Common c;
    std::string input;
    int nmax = 0, resolution = -1;
};

std::string run_indices(const IndicesOpts& o) {
    auto f = load_spgf(o.input);
    auto prof = sparse_indices(f, o.resolution);
    const int top = o.nmax > 0 ? o.nmax : prof.nmax();
    std::string s = "N,lower,upper\n";
    for (int N = 1; N <= top; ++N) {
        auto iv = prof.at(N);
        s += std::to_string(N) + "," + num(iv.lower) + "," + num(iv.upper) + "\n";
    }
    return s;
}

// ---- table1 ----

struct Table1Opts {
    Common c;
    std::string space = "lp";
    double p = 2.0, alpha = 0.0;
    int n = 2, jmin = 5, jmax = 8;
};

json run_table1(const Table1Opts& o) {
    Table1Params P;
    P.space = parse_table1_space(o.space);
    P.p = o.p;
    P.alpha = o.alpha;
    P.n = o.n;
    P.jmin = o.jmin;
    P.jmax = o.jmax;
    P.seed = o.c.seed;
    auto fit = table1_experiment(P);
    json j = header("table1", o.c);
    j["space"] = o.space;
    j["params"] = {{"p", jnum(o.p)}, {"alpha", jnum(o.alpha)}, {"n", o.n}};
    j["fit_variable"] = fit.logarithmic ? "log2 N" : "N";
    j["predicted_slope"] = jnum(fit.predicted_slope);
    j["log_correction"] = jnum(fit.log_correction);
    j["probe_constant"] = jnum(fit.probe_constant);
    j["max_deviation"] = jnum(fit.max_deviation);
    json rows = json::array();
    double lo = std::numeric_limits<double>::infinity(), hi = -lo;
    for (const auto& r : fit.rows) {
        json row;
        row["J"] = r.J;
        row["N"] = r.N;
        json chain = json::array(), relax = json::array(), cert = json::array();
        for (std::size_t i = 0; i < r.N.size(); ++i) {
            chain.push_back(jnum(r.chain[i]));
            relax.push_back(jnum(r.relaxation[i]));
            cert.push_back(jnum(r.certified[i]));
        }
        row["chain_upper"] = chain;
        row["relaxation_upper"] = relax;
        row["certified_upper"] = cert;
        row["fit_window"] = {r.fit_lo, r.fit_hi};
        row["slope"] = jnum(r.slope);
        row["relaxation_slope"] = jnum(r.relaxation_slope);
        rows.push_back(row);
        lo = std::min(lo, r.slope);
        hi = std::max(hi, r.slope);
    }
    j["rows"] = rows;
    j["certified"] = certified(lo, hi);
    j["truncation"] = {{"jmin", o.jmin}, {"jmax", o.jmax}, {"probe_supremum", true}};
    return j;
}

// ---- decay ----

struct DecayOpts {
    Common c;
    std::string family, report;
    int resolution = -1;
};

int run_decay(const DecayOpts& o) {
    auto fam = load_family(o.family);
    auto d = extract_decay(fam, o.resolution);
    if (!o.report.empty()) {
        json j = header("decay", o.c);
        j["family"] = o.family;
        j["members"] = fam.size();
        json lo = json::array(), up = json::array();
        for (std::size_t i = 0; i < d.lower.size(); ++i) {
            lo.push_back(jnum(d.lower[i]));
            up.push_back(jnum(d.upper[i]));
        }
        j["certified"] = {{"lower", lo}, {"upper", up}};
        j["decaying"] = d.decaying;
        j["decay_certified"] = d.certified;
        j["truncation"] = {{"n", fam.n}, {"J", fam.J}, {"nmax", fam.J + 1}, {"probe_supremum", true}};
        emit(o.report, j.dump(2) + "\n");
    }
    if (!d.certified) throw ParameterError("extracted table has zero entries; decay_certify refuses it");
    std::ostringstream os;
    write_decay_csv(os, d.decay);
    emit(o.c.out, os.str());
    return 0;
}

// ---- seq ----

struct SeqOpts {
    Common c;
    std::string example, seq, w0, w1, psi;
    double beta = 1.0, t = 1.0, s = 0.0;
    std::size_t width = 1024, count = 1, length = 12;
};

json run_seq(const SeqOpts& o) {
    json j = header("seq", o.c);
    j["example"] = o.example;
    if (o.example == "9.1") {
        Decay psi = o.psi.empty() ? decay_shifted_power(o.beta) : load_decay(o.psi);
        auto a = example_9_1(psi);
        auto r = vpsi_partial_ratios(a, psi);
        const double t = tpsi_scalar(a, psi);
        j["psi"] = psi.descriptor;
        j["tpsi"] = jnum(t);
        j["vpsi_ratio"] = json::array();
        for (double v : r) j["vpsi_ratio"].push_back(jnum(v));
        j["certified"] = certified(t, t);
        j["truncation"] = {{"nmax", psi.nmax()}};
    } else if (o.example == "9.2") {
        Decay psi = o.psi.empty() ? decay_shifted_power(o.beta) : load_decay(o.psi);
        auto l = example_9_2(o.width);
        const double v = vpsi_seq(l, psi), t = tpsi_seq(l, psi, 2);
        j["psi"] = psi.descriptor;
        j["width"] = o.width;
        j["vpsi"] = jnum(v);
        j["tpsi"] = jnum(t);
        j["certified"] = certified(v, v);
        j["truncation"] = {{"nmax", psi.nmax()}};
    } else if (o.example == "kfunc") {
        auto a = parse_list(o.seq);
        auto w0 = o.w0.empty() ? std::vector<double>(a.size(), 1.0) : parse_list(o.w0);
        auto w1 = o.w1.empty() ? std::vector<double>(a.size(), 1.0) : parse_list(o.w1);
        const double k = k_functional(o.t, a, w0, w1);
        j["t"] = jnum(o.t);
        j["value"] = jnum(k);
        if (a.size() <= 20) j["bruteforce"] = jnum(k_functional_bruteforce(o.t, a, w0, w1));
        j["certified"] = certified(k, k);
        j["truncation"] = {{"length", a.size()}};
    } else if (o.example == "extrapolate") {
        Decay psi = o.psi.empty() ? decay_shifted_power(0.5) : load_decay(o.psi);
        std::mt19937_64 rng(o.c.seed);
        std::uniform_real_distribution<double> u(0.0, 1.0);
        json rows = json::array();
        double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
        for (std::size_t i = 0; i < o.count; ++i) {
            BlockSequence lam(o.length);
            std::vector<double> a(o.length);
            for (std::size_t k = 0; k < o.length; ++k) {
                lam[k].resize(1 + rng() % 4);
                for (auto& v : lam[k]) v = u(rng) < 0.3 ? 0.0 : std::ldexp(u(rng), static_cast<int>(rng() % 9));
                for (double v : lam[k]) a[k] = std::max(a[k], std::abs(v));
            }
            const double e = extrapolation_norm(a, psi, o.s), v = vpsi_seq(lam, psi);
            const double ratio = v > 0.0 ? e / v : 0.0;
            rows.push_back({{"extrapolation", jnum(e)}, {"vpsi", jnum(v)}, {"ratio", jnum(ratio)}});
            if (v > 0.0) {
                lo = std::min(lo, ratio);
                hi = std::max(hi, ratio);
            }
        }
        j["psi"] = psi.descriptor;
        j["rows"] = rows;
        j["certified"] = certified(lo, hi);
        j["truncation"] = {{"nmax", psi.nmax()}, {"length", o.length}};
    } else {
        throw ParameterError("unknown example '" + o.example + "' (9.1, 9.2, kfunc, extrapolate)");
    }
    return j;
}

// ---- interp ----

struct InterpOpts {
    Common c;
    std::string input, psi;
    int resolution = -1;
};

std::string run_interp(const InterpOpts& o) {
    auto f = load_spgf(o.input);
    auto psi = load_decay(o.psi);
    auto r = interp_inequality_check(f, psi, default_r_grid(f.J), o.resolution);
    std::string s = "M,r,rhs,ratio\n";
    for (const auto& row : r.rows)
        s += std::to_string(row.M) + "," + num(row.r) + "," + num(row.rhs) + "," + num(row.ratio) + "\n";
    return s;
}

// ---- psi ----

struct PsiOpts {
    Common c;
    std::string kind = "exponential";
    double beta = 1.0;
    int nmax = kDefaultDecayNmax;
};

std::string run_psi(const PsiOpts& o) {
    Decay d = o.kind == "power"           ? decay_power(o.beta, o.nmax)
              : o.kind == "shifted_power" ? decay_shifted_power(o.beta, o.nmax)
              : o.kind == "exponential"   ? decay_exponential(o.beta, o.nmax)
                                          : throw ParameterError("unknown decay kind '" + o.kind + "'");
    std::ostringstream os;
    write_decay_csv(os, d);
    return os.str();
}

// ---- corpus ----

struct CorpusOpts {
    Common c;
    CorpusSpec spec;
};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"sparse indices, sparse RMT norms and their companions on dyadic grids"};
    app.set_version_flag("--version", SPARSEKIT_VERSION);
    app.require_subcommand(1);

    NormOpts norm;
    auto* c_norm = app.add_subcommand("norm", "norm of a grid function");
    add_common(c_norm, norm.c);
    c_norm->add_option("--space", norm.space)->required()->check(
        CLI::IsMember({"lp", "morrey", "rmt", "crmt", "sr", "lorentz", "sobolev", "vpsi", "tpsi"}));
    c_norm->add_option("--input", norm.input)->required();
    c_norm->add_option("--p", norm.p);
    c_norm->add_option("--q", norm.q);
    c_norm->add_option("--alpha", norm.alpha);
    c_norm->add_option("--lambda", norm.lambda);
    c_norm->add_option("--method", norm.method)->check(CLI::IsMember({"certified", "maximal", "family", "bruteforce"}));
    c_norm->add_option("--family", norm.family);
    c_norm->add_option("--psi", norm.psi, "decay CSV for vpsi/tpsi");
    c_norm->add_option("--pad", norm.pad);
    c_norm->add_option("--resolution", norm.resolution);

    DominateOpts dom;
    auto* c_dom = app.add_subcommand("dominate", "sparse family dominating the maximal function");
    add_common(c_dom, dom.c);
    c_dom->add_option("--input", dom.input)->required();
    c_dom->add_option("--p", dom.p);
    c_dom->add_option("--q", dom.q);
    c_dom->add_option("--alpha", dom.alpha);
    c_dom->add_flag("--check", dom.check, "verify sparseness and domination, JSON to --report");
    c_dom->add_option("--report", dom.report);

    IndicesOpts ind;
    auto* c_ind = app.add_subcommand("indices", "certified sparse indices s_N");
    add_common(c_ind, ind.c);
    c_ind->add_option("--input", ind.input)->required();
    c_ind->add_option("--nmax", ind.nmax);
    c_ind->add_option("--resolution", ind.resolution);

    Table1Opts t1;
    auto* c_t1 = app.add_subcommand("table1", "decay-rate experiment for a classical space");
    add_common(c_t1, t1.c);
    c_t1->add_option("--space", t1.space);
    c_t1->add_option("--p", t1.p);
    c_t1->add_option("--alpha", t1.alpha);
    c_t1->add_option("--n", t1.n);
    c_t1->add_option("--jmin", t1.jmin);
    c_t1->add_option("--jmax", t1.jmax);

    DecayOpts dec;
    auto* c_dec = app.add_subcommand("decay", "extract Psi(N) = sup over a family of s_N");
    add_common(c_dec, dec.c);
    c_dec->add_option("--family", dec.family, "directory of .spgf members")->required();
    c_dec->add_option("--report", dec.report);
    c_dec->add_option("--resolution", dec.resolution);

    SeqOpts seq;
    auto* c_seq = app.add_subcommand("seq", "sequence-space examples");
    add_common(c_seq, seq.c);
    c_seq->add_option("--example", seq.example)->required();
    c_seq->add_option("--psi", seq.psi);
    c_seq->add_option("--beta", seq.beta, "Psi = (1+t)^-beta when --psi is absent");
    c_seq->add_option("--width", seq.width);
    c_seq->add_option("--seq", seq.seq, "comma-separated sequence");
    c_seq->add_option("--w0", seq.w0);
    c_seq->add_option("--w1", seq.w1);
    c_seq->add_option("--t", seq.t);
    c_seq->add_option("--s", seq.s);
    c_seq->add_option("--count", seq.count);
    c_seq->add_option("--length", seq.length);

    InterpOpts itp;
    auto* c_itp = app.add_subcommand("interp", "interpolation inequality ratios over the dyadic r-grid");
    add_common(c_itp, itp.c);
    c_itp->add_option("--input", itp.input)->required();
    c_itp->add_option("--psi", itp.psi)->required();
    c_itp->add_option("--resolution", itp.resolution);

    CorpusOpts cor;
    auto* c_cor = app.add_subcommand("corpus", "write a generated family as a directory of .spgf files");
    cor.c.out = "";
    add_common(c_cor, cor.c);
    c_cor->add_option("--generator", cor.spec.generator);
    c_cor->add_option("--n", cor.spec.n);
    c_cor->add_option("--J", cor.spec.J);
    c_cor->add_option("--count", cor.spec.count);
    c_cor->add_option("--eps", cor.spec.eps);
    c_cor->add_option("--p", cor.spec.p);
    c_cor->add_option("--alpha", cor.spec.alpha);

    PsiOpts psi;
    auto* c_psi = app.add_subcommand("psi", "tabulate a standard decay as CSV");
    add_common(c_psi, psi.c);
    c_psi->add_option("--kind", psi.kind, "power: t^-beta, shifted_power: (1+t)^-beta, exponential: 2^-beta t")
        ->check(CLI::IsMember({"power", "shifted_power", "exponential"}));
    c_psi->add_option("--beta", psi.beta);
    c_psi->add_option("--nmax", psi.nmax);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        for (auto* sub : app.get_subcommands()) {
            int threads = 1;
            if (sub == c_norm) threads = norm.c.threads;
            if (sub == c_dom) threads = dom.c.threads;
            if (sub == c_ind) threads = ind.c.threads;
            if (sub == c_t1) threads = t1.c.threads;
            if (sub == c_dec) threads = dec.c.threads;
            if (sub == c_seq) threads = seq.c.threads;
            if (sub == c_itp) threads = itp.c.threads;
            if (sub == c_cor) threads = cor.c.threads;
            if (sub == c_psi) threads = psi.c.threads;
            set_threads(threads);
        }
        if (*c_norm) emit(norm.c.out, run_norm(norm).dump(2) + "\n");
        if (*c_dom) return run_dominate(dom);
        if (*c_ind) emit(ind.c.out, run_indices(ind));
        if (*c_t1) emit(t1.c.out, run_table1(t1).dump(2) + "\n");
        if (*c_dec) return run_decay(dec);
        if (*c_seq) emit(seq.c.out, run_seq(seq).dump(2) + "\n");
        if (*c_itp) emit(itp.c.out, run_interp(itp));
        if (*c_psi) emit(psi.c.out, run_psi(psi));
        if (*c_cor) {
            if (cor.c.out.empty() || cor.c.out == "-") throw ParameterError("corpus needs --out DIR");
            cor.spec.seed = cor.c.seed;
            save_family(cor.c.out, corpus_generate(cor.spec));
        }
    } catch (const ParameterError& e) {
        std::cerr << "sparsekit: refused: " << e.what() << "\n";
        return 2;
    } catch (const BudgetError& e) {
        std::cerr << "sparsekit: budget exceeded: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "sparsekit: error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
