#pragma once

#include <complex>
#include <iosfwd>
#include <vector>

#include "sparsekit/grid.hpp"
#include "sparsekit/sequence.hpp"

namespace sparsekit {

// Radial profile: 1 on [0,1], 0 on [2,inf), C^3 polynomial blend in between.
double lp_profile(double r);
// phi_0 = profile(|xi|), phi_j = profile(|xi|/2^j) - profile(|xi|/2^{j-1}); |xi| in cycles per unit length.
double lp_multiplier(int j, double radius);

// Littlewood-Paley blocks of f on the zero-padded torus of side pad (unit cube in the middle).
struct LPDecomposition {
    int n = 1;
    int J = 0;
    int pad = 3;
    int jmax = 0;
    std::vector<std::vector<double>> blocks;  // padded-domain fields, j = 0..jmax
    std::vector<double> linf;
    std::vector<double> l2;
    std::vector<std::complex<double>> fhat;   // continuous-normalized transform on the frequency grid
    std::vector<double> radius;               // |xi| per frequency bin

    double cell_measure() const { return std::ldexp(1.0, -n * J); }
    double domain_side() const { return static_cast<double>(pad); }
};

LPDecomposition lp_blocks(const GridFunction& f, int pad = 3);

// Multiplier sum at every frequency bin (should be 1).
std::vector<double> lp_partition_sums(const LPDecomposition& d);

struct BesovParams {
    double s = 0.0;
    double p = 2.0;
    double q = 2.0;
};
double besov_norm(const LPDecomposition& d, const BesovParams& b);

struct TruncatedNorm {
    double value = 0.0;
    int truncated_at = 0;  // largest N in the sup (resolution limit)
};
TruncatedNorm vpsi_norm(const LPDecomposition& d, const Decay& psi);

struct TpsiNorm {
    double blockwise = 0.0;
    double fourier = 0.0;
    int truncated_at = 0;
};
TpsiNorm tpsi_norm(const LPDecomposition& d, const Decay& psi);

// max_j ||Delta_j f||_inf / (2^j ||Delta_j f||_2); blocks below 1e-12 of the largest are skipped, 0 if none.
double nikolskii_ratio(const LPDecomposition& d);

// Orthonormal Haar coefficients lambda_{N,l,e} = 2^{Nn/2} (f, Upsilon_{N,l,e}), N = 0..J-1,
// flattened per level as [l * (2^n - 1) + e - 1].
struct HaarCoefficients {
    int n = 1;
    int J = 0;
    double scaling = 0.0;  // (f, 1_{Q0})
    BlockSequence levels;
};
HaarCoefficients haar_coeffs(const GridFunction& f);
// Amplitude-one Haar pattern of type e (1..2^n-1) on the cube (level, idx).
GridFunction haar_atom(int n, int J, int level, std::size_t idx, unsigned e);

void write_block_csv(std::ostream& os, const LPDecomposition& d);

}  // namespace sparsekit
