#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace sparsekit {

// Raised when an input violates an operation's domain (CLI exit code 2).
struct ParameterError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Raised when an exact computation would exceed its enumeration budget (CLI exit code 3).
struct BudgetError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Pairwise summation in a fixed order; results do not depend on threading.
double pairwise_sum(std::span<const double> xs);

// Piecewise-constant field on [0,1)^n with 2^J cells per side, row-major
// (first coordinate slowest).
struct GridFunction {
    int n = 1;
    int J = 0;
    std::vector<double> values;
    bool nonneg = false;

    static GridFunction zeros(int n, int J, bool nonneg = false);
    static GridFunction constant(int n, int J, double c);

    std::size_t side() const { return std::size_t{1} << J; }
    std::size_t size() const { return values.size(); }
    double cell_measure() const;  // 2^{-nJ}

    // Throws ParameterError if the invariants do not hold.
    void validate() const;
};

struct DyadicCube {
    int level = 0;
    std::array<std::int64_t, 3> m{0, 0, 0};

    bool operator==(const DyadicCube&) const = default;
    auto operator<=>(const DyadicCube&) const = default;
};

std::size_t cubes_at_level(int n, int k);
std::size_t cube_linear_index(int n, const DyadicCube& q);
DyadicCube cube_from_linear(int n, int k, std::size_t idx);
double cube_measure(int n, int k);
DyadicCube parent_of(const DyadicCube& q);
bool cube_contains(const DyadicCube& outer, const DyadicCube& inner);

// Linear index of the c-th child (c in [0,2^n)) of cube idx at level k.
std::size_t child_linear_index(int n, int k, std::size_t idx, unsigned c);
// Linear index at level k of the ancestor of finest cell `cell` (grid depth J).
std::size_t ancestor_of_cell(int n, int J, std::size_t cell, int k);
// Finest cells (row-major indices) covered by cube q.
std::vector<std::size_t> cells_of_cube(int n, int J, const DyadicCube& q);

// Per-level integrals of |f| and f over every dyadic cube, levels 0..J.
struct IntegralTable {
    int n = 1;
    int J = 0;
    std::vector<std::vector<double>> abs_levels;
    std::vector<std::vector<double>> signed_levels;

    double abs_integral(const DyadicCube& q) const;
    double signed_integral(const DyadicCube& q) const;
};

IntegralTable build_table(const GridFunction& f);

double cube_average(const GridFunction& f, const IntegralTable& t, const DyadicCube& q);
double oscillation_integral(const GridFunction& f, const IntegralTable& t, const DyadicCube& q);
// oscillation_integral for every cube, indexed [level][linear index].
std::vector<std::vector<double>> oscillation_levels(const GridFunction& f, const IntegralTable& t);

struct Rearrangement {
    double dt = 1.0;                 // width of each step
    std::vector<double> fstar;       // decreasing values of |f| on ((i)dt,(i+1)dt]
    std::vector<double> fstarstar;   // running average evaluated at t=(i+1)dt
};

Rearrangement rearrangement(const GridFunction& f);

// Forward differences with periodic wrap, scaled to unit length; n in {1,2}.
double discrete_gradient_l2(const GridFunction& f);

// SPGF binary format.
void write_spgf(std::ostream& os, const GridFunction& f);
GridFunction read_spgf(std::istream& is);
void save_spgf(const std::string& path, const GridFunction& f);
GridFunction load_spgf(const std::string& path);

}  // namespace sparsekit
