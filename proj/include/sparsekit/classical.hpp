#pragma once

#include <string>
#include <vector>

#include "sparsekit/grid.hpp"
#include "json.hpp"

namespace sparsekit {

enum class NormRoute { exact, dp, rearrangement };

struct NormReport {
    std::string space;
    double p = 1.0;
    double q = 1.0;
    double alpha = 0.0;
    double value = 0.0;
    NormRoute route = NormRoute::exact;
    std::vector<DyadicCube> witness;
    int witness_level = -1;  // crmt: the level whose full sum attains the value
};

nlohmann::json to_json(const NormReport& r, int n);
const char* route_name(NormRoute r);

double lp_norm(const GridFunction& f, double p);

// max over dyadic Q of (1 + k n ln2)^alpha |Q|^{1/p - 1} int_Q |f|
NormReport morrey_norm(const GridFunction& f, double p, double alpha);

// sup over dyadic packings (antichains) by tree DP; q = inf delegates to morrey_norm.
NormReport rmt_norm(const GridFunction& f, double p, double q, double alpha);

// max over levels of the full-level l^q sum.
NormReport crmt_norm(const GridFunction& f, double p, double q, double alpha);

struct LorentzNorms {
    double l12 = 0.0;
    double l1inf_log_half = 0.0;
};
LorentzNorms lorentz_norms(const GridFunction& f);

}  // namespace sparsekit
