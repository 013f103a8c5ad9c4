#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qbell/witness.hpp"
#include "qbell_cli/document.hpp"

namespace qbell::cli {

// Raised when a closed form and its brute-force oracle disagree.
class NumericalAssertionError : public Error {
public:
    using Error::Error;
};

struct ClassificationReport {
    std::size_t d = 0;
    std::string kind;
    std::string state_id;
    bool hermitian = false;
    bool unit_trace = false;
    bool psd = false;
    bool circulant = false;
    bool bell_diagonal = false;
    std::optional<bool> ppt_closed_form;  // absent for non-circulant input
    bool ppt_oracle = false;
    double min_pt_eigenvalue = 0.0;
    double ccnr_value = 0.0;
    std::vector<witness::WitnessVerdict> witness_results;
    std::vector<std::string> notes;
};

// Witness specs: "reduction", "flip", "choi:a,b,c", "wlm:lambda,mu", "wdk:k".
std::vector<std::string> default_witness_battery(std::size_t d);
ComplexMatrix witness_from_spec(const std::string& spec, std::size_t d);

// Runs every check. Throws NumericalAssertionError when the closed-form PPT
// verdict (tilde blocks, and the orbit representatives for Bell-diagonal
// input) disagrees with the dense partial-transpose oracle.
ClassificationReport classify(const ResolvedState& state, const std::string& kind, const std::string& state_id,
                              const std::vector<std::string>& witnesses, double tol);

Json report_to_json(const ClassificationReport& report);
std::string report_to_csv(const ClassificationReport& report);

}  // namespace qbell::cli
