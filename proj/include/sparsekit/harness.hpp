#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sparsekit/grid.hpp"
#include "sparsekit/sequence.hpp"
#include "sparsekit/sparse.hpp"

namespace sparsekit {

// Exponent 2n/(n+2) of the sparse-index norm.
double sparse_index_exponent(int n);

// Certified [lower, upper] for s_N(f), N = 1..J+1 (entry N-1). s_N(f) = s_N(|f|).
struct SparseIndexProfile {
    int n = 1;
    int J = 0;
    int resolution = 0;
    bool exact_lower = false;
    std::vector<Interval> s;

    int nmax() const { return J + 1; }
    // N > J+1 leaves no cube in the truncated tree: [0, 0], degenerate.
    Interval at(int N) const;
    bool degenerate(int N) const { return N > nmax(); }
};

SparseIndexProfile sparse_indices(const GridFunction& f, int resolution = -1);

struct IndexValue {
    Interval value;
    bool degenerate = false;
};
IndexValue sparse_index(const GridFunction& f, int N, int resolution = -1);

// Labeled members on a common grid; normalization names the unit ball each member lives in.
struct FunctionFamily {
    std::string descriptor;
    int n = 1;
    int J = 0;
    std::uint64_t seed = 0;
    std::vector<std::string> labels;
    std::vector<std::string> normalization;
    std::vector<GridFunction> members;

    std::size_t size() const { return members.size(); }
    void add(std::string label, std::string norm, GridFunction f);
};

// generator: constant | atom | mollified_atom | mollified_segment | morrey_extremal | lp_atoms |
//            bumps | signed_bumps | sprinkles | trig | mixed
struct CorpusSpec {
    std::string generator = "mixed";
    int n = 2;
    int J = 5;
    std::size_t count = 1;
    std::uint64_t seed = 0;
    double eps = 0.125;  // mollification radius
    double p = 2.0;      // normalization exponent where relevant
    double alpha = 0.0;
};
FunctionFamily corpus_generate(const CorpusSpec& spec);

// Members are the *.spgf files of dir in name order.
FunctionFamily load_family(const std::string& dir);
void save_family(const std::string& dir, const FunctionFamily& family);

// Probe supremum of the certified upper bounds over the family.
double space_index(const FunctionFamily& family, int N, int resolution = -1);

// Psi(N) = sup over the family of s_N, tabulated for N = 0..J+1 with Psi(0) = Psi(1).
struct DecayExtraction {
    std::vector<double> lower;
    std::vector<double> upper;
    bool certified = false;  // upper table passed decay_certify
    Decay decay;             // from the upper table when certified
    // Tail Psi(J+1) below half the unit point-mass floor (1 at n = 2).
    bool decaying = false;
};
DecayExtraction extract_decay(const FunctionFamily& family, int resolution = -1);

// sup_N s_N(f) / Psi(N) with lower and upper ends taken separately.
Interval spsi_norm(const GridFunction& f, const Decay& psi, int resolution = -1);
Interval spsi_norm(const SparseIndexProfile& prof, const Decay& psi);

enum class Table1Space { lp, morrey, rmt };
Table1Space parse_table1_space(const std::string& s);
const char* table1_space_name(Table1Space s);

struct Table1Params {
    Table1Space space = Table1Space::lp;
    double p = 2.0;
    double alpha = 0.0;
    int n = 2;
    int jmin = 5;
    int jmax = 8;
    std::uint64_t seed = 0;
};

struct Table1Row {
    int J = 0;
    std::vector<int> N;
    std::vector<double> chain;       // sqrt(K * G(N)), the proof's bound over the probe corpus
    std::vector<double> relaxation;  // sup over probes of the full-level relaxation
    std::vector<double> certified;   // sup over probes of the certified upper bound
    int fit_lo = 0;
    int fit_hi = 0;
    double slope = 0.0;
    double relaxation_slope = 0.0;
};

struct Table1Fit {
    Table1Params params;
    bool logarithmic = false;  // fit against log2 N instead of N
    double predicted_slope = 0.0;
    double log_correction = 0.0;  // exponent of N removed before a power fit
    double probe_constant = 0.0;  // sup over the probes of the chain's norm factor K
    std::vector<Table1Row> rows;
    double max_deviation = 0.0;
};

// Throws ParameterError naming the violated constraint.
void table1_validate(const Table1Params& params);
// G(N) of the chain: the series over levels k >= N-1, summed to infinity.
double table1_series(const Table1Params& params, int N);
Table1Fit table1_experiment(const Table1Params& params);

// Least-squares slope of y against x.
double fit_slope(const std::vector<double>& x, const std::vector<double>& y);

struct InterpRow {
    int M = 0;
    double r = 1.0;
    double rhs = 0.0;
    double ratio = 0.0;
};

struct InterpCheck {
    double lhs = 0.0;         // ||f - f_Q0||_2
    double spsi_upper = 0.0;
    double gradient = 0.0;    // discrete ||grad f||_2
    std::vector<InterpRow> rows;
    double max_ratio = 0.0;
    double best_rhs = 0.0;    // min over the r-grid
};

// ratio(r) = lhs / (Psi(M)/r * spsi_upper + r * gradient), r = 2^{-M}.
InterpCheck interp_inequality_check(const GridFunction& f, const Decay& psi, const std::vector<int>& r_grid,
                                    int resolution = -1);
// Dyadic grid M = 0..J.
std::vector<int> default_r_grid(int J);

}  // namespace sparsekit
