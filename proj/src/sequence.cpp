#include "sparsekit/sequence.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>

#include "sparsekit/grid.hpp"

namespace sparsekit {

double Decay::operator()(int N) const { return table[std::clamp(N, 0, nmax())]; }

namespace {

// Stabilization tolerance for the finite-table certificates.
constexpr double kStableTol = 0.05;

}  // namespace

Decay decay_certify(std::vector<double> table, double c, std::string descriptor) {
    if (table.size() < 4) throw ParameterError("decay table needs at least 4 entries");
    if (!(c > 1.0)) throw ParameterError("doubling factor c must exceed 1");
    for (std::size_t i = 0; i < table.size(); ++i) {
        if (!(table[i] > 0.0) || !std::isfinite(table[i])) throw ParameterError("decay must be positive and finite");
        if (i > 0 && table[i] > table[i - 1]) throw ParameterError("decay table is not non-increasing");
    }
    Decay d;
    d.descriptor = std::move(descriptor);
    d.table = std::move(table);
    d.doubling_c = c;
    const int M = d.nmax();

    // A(N) computed in log scale: terms (2^{r-N} Psi(r)/Psi(N))^2
    std::vector<double> A(M + 1);
    for (int N = 0; N <= M; ++N) {
        std::vector<double> t(N + 1);
        for (int r = 0; r <= N; ++r) {
            double v = std::ldexp(d.table[r] / d.table[N], r - N);
            t[r] = v * v;
        }
        A[N] = pairwise_sum(t);
    }
    d.admissible_constant = *std::max_element(A.begin(), A.end());
    d.admissible = A[M] <= (1.0 + kStableTol) * A[M / 2];

    auto dmin = [&](int upto) {
        double m = 1.0;
        for (int N = 1; N <= upto; ++N) {
            int cN = static_cast<int>(std::floor(c * N));
            if (cN > M) break;
            m = std::min(m, d.table[cN] / d.table[N]);
        }
        return m;
    };
    const int half = static_cast<int>(M / c);
    d.doubling_constant = dmin(half);
    d.doubling = d.doubling_constant >= (1.0 - kStableTol) * dmin(half / 2);
    return d;
}

Decay decay_from(const std::function<double(int)>& psi, int nmax, std::string descriptor, double c) {
    std::vector<double> t(nmax + 1);
    for (int N = 0; N <= nmax; ++N) t[N] = psi(N);
    return decay_certify(std::move(t), c, std::move(descriptor));
}

Decay decay_power(double beta, int nmax) {
    return decay_from([beta](int N) { return std::pow(std::max(N, 1), -beta); }, nmax,
                      "t^-" + std::to_string(beta));
}

Decay decay_shifted_power(double beta, int nmax) {
    return decay_from([beta](int N) { return std::pow(1.0 + N, -beta); }, nmax, "(1+t)^-" + std::to_string(beta));
}

Decay decay_exponential(double C, int nmax) {
    return decay_from([C](int N) { return std::exp2(-C * N); }, nmax, "2^-" + std::to_string(C) + "t");
}

void write_decay_csv(std::ostream& os, const Decay& d) {
    os << "N,psi\n";
    char buf[64];
    for (int N = 0; N <= d.nmax(); ++N) {
        std::snprintf(buf, sizeof buf, "%d,%.17g\n", N, d.table[N]);
        os << buf;
    }
}

Decay read_decay_csv(std::istream& is) {
    std::string line;
    if (!std::getline(is, line)) throw ParameterError("decay CSV is empty");
    std::vector<double> t;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        auto comma = line.find(',');
        if (comma == std::string::npos) throw ParameterError("decay CSV row without comma");
        int N = 0;
        double v = 0.0;
        try {
            N = std::stoi(line.substr(0, comma));
            v = std::stod(line.substr(comma + 1));
        } catch (const std::logic_error&) {
            throw ParameterError("bad number in decay CSV");
        }
        if (N != static_cast<int>(t.size())) throw ParameterError("decay CSV rows must be N = 0, 1, 2, ...");
        t.push_back(v);
    }
    return decay_certify(std::move(t), 2.0, "csv");
}

namespace {

// sup_N Psi(N)^{-2} sum_{k>=N} terms[k]
double tail_sup(const std::vector<double>& terms, const Decay& psi) {
    const int K = static_cast<int>(terms.size());
    double best = 0.0;
    for (int N = 0; N < K && N <= psi.nmax(); ++N) {
        std::span<const double> tail(terms.data() + N, terms.size() - N);
        best = std::max(best, pairwise_sum(tail) / (psi(N) * psi(N)));
    }
    return best;
}

}  // namespace

double vpsi_seq(const BlockSequence& lambda, const Decay& psi) {
    std::vector<double> terms(lambda.size());
    for (std::size_t k = 0; k < lambda.size(); ++k) {
        double m = 0.0;
        for (double v : lambda[k]) m = std::max(m, std::abs(v));
        terms[k] = std::ldexp(m, -2 * static_cast<int>(k));
    }
    return tail_sup(terms, psi);
}

double tpsi_seq(const BlockSequence& lambda, const Decay& psi, int n) {
    std::vector<double> terms(lambda.size());
    for (std::size_t k = 0; k < lambda.size(); ++k) {
        std::vector<double> sq(lambda[k].size());
        for (std::size_t l = 0; l < sq.size(); ++l) sq[l] = lambda[k][l] * lambda[k][l];
        terms[k] = std::ldexp(pairwise_sum(sq), (-2 - n) * static_cast<int>(k));
    }
    return std::sqrt(tail_sup(terms, psi));
}

double tpsi_scalar(const std::vector<double>& a, const Decay& psi) {
    std::vector<double> terms(a.size());
    for (std::size_t k = 0; k < a.size(); ++k) {
        double v = std::ldexp(a[k], -2 * static_cast<int>(k));
        terms[k] = v * v;
    }
    return std::sqrt(tail_sup(terms, psi));
}

std::vector<double> vpsi_partial_ratios(const std::vector<double>& a, const Decay& psi) {
    std::vector<double> terms(a.size());
    for (std::size_t k = 0; k < a.size(); ++k) terms[k] = std::ldexp(a[k], -2 * static_cast<int>(k));
    std::vector<double> out;
    for (std::size_t N = 0; N < a.size() && static_cast<int>(N) <= psi.nmax(); ++N) {
        std::span<const double> tail(terms.data() + N, terms.size() - N);
        out.push_back(pairwise_sum(tail) / (psi(static_cast<int>(N)) * psi(static_cast<int>(N))));
    }
    return out;
}

double k_functional(double t, const std::vector<double>& a, const std::vector<double>& w0, const std::vector<double>& w1) {
    if (!(t > 0.0)) throw ParameterError("K-functional needs t > 0");
    if (w0.size() != a.size() || w1.size() != a.size()) throw ParameterError("weight length mismatch");
    std::vector<double> terms(a.size());
    for (std::size_t j = 0; j < a.size(); ++j) {
        if (!(w0[j] > 0.0 && w1[j] > 0.0)) throw ParameterError("weights must be positive");
        terms[j] = std::min(w0[j], t * w1[j]) * std::abs(a[j]);
    }
    return pairwise_sum(terms);
}

double k_functional_bruteforce(double t, const std::vector<double>& a, const std::vector<double>& w0,
                               const std::vector<double>& w1) {
    if (a.size() > 20) throw BudgetError("brute-force K-functional limited to 20 coordinates");
    double best = INFINITY;
    for (std::uint32_t mask = 0; mask < (1u << a.size()); ++mask) {
        std::vector<double> terms(a.size());
        for (std::size_t j = 0; j < a.size(); ++j)
            terms[j] = (mask >> j & 1) ? t * w1[j] * std::abs(a[j]) : w0[j] * std::abs(a[j]);
        best = std::min(best, pairwise_sum(terms));
    }
    return best;
}

double extrapolation_norm(const std::vector<double>& a, const Decay& psi, double s) {
    if (!(s > -2.0)) throw ParameterError("extrapolation smoothness s must exceed -2");
    std::vector<double> w0(a.size()), w1(a.size());
    for (std::size_t j = 0; j < a.size(); ++j) {
        w0[j] = std::ldexp(1.0, -2 * static_cast<int>(j));
        w1[j] = std::exp2(s * static_cast<double>(j));
    }
    double best = 0.0;
    for (int N = 0; N <= psi.nmax(); ++N) {
        const double t = std::exp2(-(2.0 + s) * N);
        best = std::max(best, k_functional(t, a, w0, w1) / (psi(N) * psi(N)));
    }
    return best;
}

EmbeddingCheck embedding_5_2_check(const Decay& phi, const Decay& psi) {
    const int M = std::min(phi.nmax(), psi.nmax());
    EmbeddingCheck out;
    std::vector<double> tail(M + 2, 0.0);
    for (int j = M; j >= 0; --j) tail[j] = tail[j + 1] + phi(j);
    // partial sums of Phi still growing over the last half of the table
    const double full = tail[0], late = tail[M / 2 + 1];
    out.divergent = late > kStableTol * full;
    for (int N = 0; N <= M; ++N) out.constant = std::max(out.constant, tail[N] / (psi(N) * psi(N)));
    out.holds = !out.divergent;
    return out;
}

std::vector<double> example_9_1(const Decay& psi) {
    const int M = psi.nmax();
    std::vector<double> a(M + 1);
    for (int k = 0; k <= M; ++k) {
        const double next = k == M ? 0.0 : psi(k + 1);
        a[k] = std::ldexp(std::sqrt(psi(k) * psi(k) - next * next), 2 * k);
    }
    return a;
}

BlockSequence example_9_2(std::size_t width) { return BlockSequence{std::vector<double>(width, 1.0)}; }

}  // namespace sparsekit
