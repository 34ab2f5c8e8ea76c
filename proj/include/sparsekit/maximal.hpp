#pragma once

#include <vector>

#include "sparsekit/grid.hpp"

namespace sparsekit {

struct MaximalParams {
    double lambda = 0.0;
    double alpha = 0.0;
    double p = 1.0;
    double q = 1.0;

    // lambda = n(1/p - 1/q).
    static MaximalParams from_pq(int n, double p, double q, double alpha);
};

// (1 + ln(1/|Q|))^alpha for a level-k cube, i.e. (1 + k n ln 2)^alpha.
double log_weight(int n, int k, double alpha);

// Per-level factor |Q|^{lambda/n - 1} (1 + k n ln 2)^alpha, k = 0..J.
std::vector<double> maximal_level_factors(int n, int J, double lambda, double alpha);

// out[x] = max over levels k of w[k][ancestor_k(x)], by a root-to-leaf sweep.
std::vector<double> cellwise_level_max(int n, int J, const std::vector<std::vector<double>>& w);

GridFunction dyadic_maximal(const GridFunction& f, const MaximalParams& params);
GridFunction dyadic_maximal(const GridFunction& f, const IntegralTable& t, const MaximalParams& params);

// Field on the zero-padded cube [-(pad-1)/2, (pad+1)/2)^n with the same cell size as the source.
struct PaddedGrid {
    int n = 1;
    int J = 0;
    int pad = 1;
    std::vector<double> values;

    std::size_t side() const { return static_cast<std::size_t>(pad) << J; }
    std::size_t offset() const { return static_cast<std::size_t>((pad - 1) / 2) << J; }
    double cell_measure() const;
    double lq_norm(double q) const;
    GridFunction restrict_to_unit() const;
};

PaddedGrid embed_padded(const GridFunction& f, int pad);

// Max of the dyadic fractional maximal function over the 3^n grids shifted by
// multiples of 1/3 (rounded to cells), on the zero-padded torus.
PaddedGrid fractional_maximal(const GridFunction& f, double lambda, int pad = 3);

enum class ConvolutionMethod { automatic, direct, fft };

// Average of |z|^{lambda-n} over the unit cube centred at the origin.
double riesz_diagonal_average(int n, double lambda);

// I_lambda(|f|) by linear convolution on the padded domain.
PaddedGrid riesz_potential(const GridFunction& f, double lambda, int pad = 3,
                           ConvolutionMethod method = ConvolutionMethod::automatic);

// || I_lambda(|f|) ||_{L^q} over the padded domain.
double sobolev_negative_norm(const GridFunction& f, double lambda, double q, int pad = 3);

// q = 2 route through Plancherel on the padded torus, zero frequency dropped.
double sobolev_negative_norm_fourier(const GridFunction& f, double lambda, int pad = 3);

}  // namespace sparsekit
