#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "qbell_cli/document.hpp"

namespace qbell::cli {

struct Range {
    double from = 0.0;
    double to = 0.0;
    std::size_t steps = 1;
    bool log = false;

    // "from:to:steps"; throws InvalidArgument on malformed input.
    static Range parse(const std::string& text, bool log = false);
    std::vector<double> points() const;
};

// Column names plus rows of numbers; booleans are stored as 0/1.
struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows;
};

// eps, ppt, min_pt_eigenvalue, ccnr_value, w_reduction, w_choi_110, w_choi_101
Table sweep_epsilon(const Range& eps, double tol);
// gamma, ppt, min_pt_eigenvalue, ccnr_value, w_lambda_mu, inside_region
Table sweep_gamma(const Range& gamma, double lambda, double mu, double tol);
// a, b, c, cond_a_range, cond_sum, cond_product, valid, min_eigenvalue, block_positivity_min
Table sweep_choi(const Range& a, const Range& b, const Range& c, std::size_t trials, std::uint64_t seed);

// Header row, then one row per point; values in %.14e.
std::string table_to_csv(const Table& table);
Json table_to_json(const Table& table);

}  // namespace qbell::cli
