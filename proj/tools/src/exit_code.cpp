#include "qbell_cli/exit_code.hpp"

#include "qbell/error.hpp"
#include "qbell_cli/classify.hpp"

namespace qbell::cli {

int exit_code_for(const std::exception& e) {
    if (dynamic_cast<const NumericalAssertionError*>(&e) != nullptr) return kExitNumerical;
    if (dynamic_cast<const ConvergenceError*>(&e) != nullptr) return kExitNumerical;
    return kExitUsage;
}

}  // namespace qbell::cli
