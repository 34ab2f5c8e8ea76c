#pragma once

#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

namespace sparsekit {

// Positive non-increasing Psi tabulated on 0..N_max.
struct Decay {
    std::string descriptor;
    std::vector<double> table;
    bool admissible = false;
    double admissible_constant = 0.0;  // max_N sum_{r<=N} (2^r Psi(r))^2 / (2^N Psi(N))^2
    bool doubling = false;
    double doubling_c = 2.0;
    double doubling_constant = 0.0;    // min_N Psi(cN) / Psi(N)

    int nmax() const { return static_cast<int>(table.size()) - 1; }
    double operator()(int N) const;    // clamps N to the table
};

constexpr int kDefaultDecayNmax = 64;

// Throws ParameterError on non-positive or increasing tables.
Decay decay_certify(std::vector<double> table, double c = 2.0, std::string descriptor = "table");
Decay decay_from(const std::function<double(int)>& psi, int nmax, std::string descriptor, double c = 2.0);

// t^{-beta} with Psi(0) = Psi(1)
Decay decay_power(double beta, int nmax = kDefaultDecayNmax);
// (1 + t)^{-beta}
Decay decay_shifted_power(double beta, int nmax = kDefaultDecayNmax);
// 2^{-C t}
Decay decay_exponential(double C, int nmax = kDefaultDecayNmax);

void write_decay_csv(std::ostream& os, const Decay& d);
Decay read_decay_csv(std::istream& is);

// Per-scale coefficient fields lambda[k][l].
using BlockSequence = std::vector<std::vector<double>>;

// sup_N Psi(N)^{-2} sum_{k>=N} 2^{-2k} sup_l |lambda_kl|
double vpsi_seq(const BlockSequence& lambda, const Decay& psi);
// [sup_N Psi(N)^{-2} sum_{k>=N} 2^{k(-2-n)} sum_l lambda_kl^2]^{1/2}
double tpsi_seq(const BlockSequence& lambda, const Decay& psi, int n);
// scalar per-scale data a_k: [sup_N Psi(N)^{-2} sum_{k>=N} (2^{-2k} a_k)^2]^{1/2}
double tpsi_scalar(const std::vector<double>& a, const Decay& psi);
// Psi(N)^{-2} sum_{k>=N} 2^{-2k} a_k, one entry per N
std::vector<double> vpsi_partial_ratios(const std::vector<double>& a, const Decay& psi);

// K(t) = sum_j min(w0_j, t w1_j) a_j for the weighted l^1 couple.
double k_functional(double t, const std::vector<double>& a, const std::vector<double>& w0, const std::vector<double>& w1);
// Minimum over the 2^len vertex splittings; oracle for short sequences.
double k_functional_bruteforce(double t, const std::vector<double>& a, const std::vector<double>& w0,
                               const std::vector<double>& w1);

// sup_N K(2^{-(2+s)N}; a, 2^{-2j}, 2^{sj}) / Psi(N)^2, N = 0..N_max.
double extrapolation_norm(const std::vector<double>& a, const Decay& psi, double s = 0.0);

struct EmbeddingCheck {
    bool holds = false;
    bool divergent = false;
    double constant = 0.0;  // max_N sum_{j>=N} Phi(j) / Psi(N)^2
};
EmbeddingCheck embedding_5_2_check(const Decay& phi, const Decay& psi);

// c_k = (Psi(k)^2 - Psi(k+1)^2)^{1/2}, with Psi(N_max + 1) = 0; returns a_k = 2^{2k} c_k.
std::vector<double> example_9_1(const Decay& psi);
// lambda_{0,l} = 1 for l < width
BlockSequence example_9_2(std::size_t width);

}  // namespace sparsekit
