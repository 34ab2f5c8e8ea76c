#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "sparsekit/grid.hpp"

namespace sparsekit {

struct SparseFamily {
    int n = 1;
    int J = 0;
    std::vector<DyadicCube> cubes;  // kept sorted and unique by normalize()
    double eta = 0.5;

    void normalize();
    bool contains(const DyadicCube& q) const;
};

struct SparseCheck {
    bool ok = false;
    double worst_ratio = 1.0;
    // witnesses[i] lists the finest cells of E_Q for cubes[i]
    std::vector<std::vector<std::size_t>> witnesses;
};

// Canonical witnesses E_Q = Q minus the maximal in-family strict subcubes.
SparseCheck verify_sparse(const SparseFamily& family);

struct SRParams {
    double p = 1.0;
    double q = 2.0;
    double alpha = 0.0;

    double lambda_prime() const;  // 1/p - 1/q
    // 1 <= p <= q < inf, and alpha <= 0 when p == q.
    bool monotone() const;
    void require_monotone() const;
};

// Per-level c(Q) = (1 + k n ln2)^alpha |Q|^{1/p - 1} int_Q |f|, indexed [level][linear index].
using CubeValues = std::vector<std::vector<double>>;
CubeValues sr_cube_values(const IntegralTable& t, double p, double alpha);

double dom_constant(const SRParams& params);

SparseFamily sparse_dominate(const GridFunction& f, const SRParams& params);

struct DominationCheck {
    double max_ratio = 0.0;  // max of M f / (constant * sum)
    double raw_ratio = 0.0;  // max of M f / sum
    double constant = 0.0;
};
DominationCheck check_domination(const GridFunction& f, const SparseFamily& family, const SRParams& params);

// (sum over the family of c(Q)^q)^{1/q}; throws ParameterError if the family is not sparse.
double sr_norm_family(const GridFunction& f, const SparseFamily& family, const SRParams& params);
double family_sum(const SparseFamily& family, const CubeValues& c, double q);

struct MaximalBound {
    double value = 0.0;
    double upper = 0.0;
};
MaximalBound sr_norm_maximal(const GridFunction& f, const SRParams& params);

struct BruteForceResult {
    double sum_q = 0.0;  // sup of sum c(Q)^q
    double value = 0.0;  // sum_q^{1/q}
    SparseFamily family;
    std::size_t families_visited = 0;
};

constexpr std::size_t kBruteForceMaxCubes = 31;

// Exhaustive search over sparse subfamilies of cubes with level >= min_level.
BruteForceResult bruteforce_sup(int n, int J, const CubeValues& c, double q, int min_level = 0,
                                std::size_t max_cubes = kBruteForceMaxCubes);
BruteForceResult sr_norm_bruteforce(const GridFunction& f, const SRParams& params,
                                    std::size_t max_cubes = kBruteForceMaxCubes);

int default_profile_resolution(int n);

// Certified brackets for sup over sparse families restricted to cubes of level >= N-1,
// for N = 1..J+1. Entry N-1 holds level N-1.
struct SparseProfile {
    int n = 1;
    int J = 0;
    double q = 2.0;
    int resolution = 0;
    std::vector<double> lower;
    std::vector<double> upper;
    std::vector<double> relaxation;  // (sum of c(Q)^q over all cubes of level >= k)^{1/q}
    bool exact_lower = false;  // DP resolution reaches the finest cells
};

// Lower bounds from a budgeted coverage DP over canonical sparse families;
// upper bounds from the smaller of 2 sum_x m(x)^q |cell|, m(x) the max of c(Q)|Q|^{-1/q} over Q containing x,
// and the full-level relaxation.
SparseProfile sparse_profile(int n, int J, const CubeValues& c, double q, int resolution = -1);

// Family attaining profile.lower[level] (re-run of the DP with witness recovery).
SparseFamily profile_family(int n, int J, const CubeValues& c, double q, int level = 0, int resolution = -1);

struct Interval {
    double lower = 0.0;
    double upper = 0.0;
    double mid() const { return 0.5 * (lower + upper); }
    double width() const { return upper - lower; }
};

// Certified SR_{p,q} log^alpha interval, the level-0 entry of sparse_profile.
Interval sr_interval(const GridFunction& f, const SRParams& params, int resolution = -1);

struct SparseL2 {
    Interval identity;
    Interval oscillation;
};
SparseL2 sparse_l2_norms(const GridFunction& f, int resolution = -1);

// CSV with header level,m1..mn.
void write_family_csv(std::ostream& os, const SparseFamily& family);
SparseFamily read_family_csv(std::istream& is, int n, int J);

}  // namespace sparsekit
