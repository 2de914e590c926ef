#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace diagcount {

// Bad input at an API or CLI boundary (non-prime p, duplicate entries, ...).
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Operation defined only for prime-power moduli was asked on a composite one.
struct UnsupportedOperationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NotInvertibleError : std::runtime_error {
    // val_p of the offending element for prime-power moduli (val_infinity for
    // zero), -1 when the modulus is composite.
    int valuation;
    NotInvertibleError(const std::string& msg, int val)
        : std::runtime_error(msg), valuation(val) {}
};

// phi_i(p^j) = p^j - i p^(j-1) with i > p: an impossible linked-cell demand.
struct NegativeCountError : std::domain_error {
    using std::domain_error::domain_error;
};

struct DimensionMismatchError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct BudgetExceededError : std::runtime_error {
    // Smallest budget that would admit the request (saturated at UINT64_MAX).
    uint64_t required;
    BudgetExceededError(const std::string& msg, uint64_t required_budget)
        : std::runtime_error(msg), required(required_budget) {}
};

// A MatrixType inconsistent with the ring parameters (weight >= k, ...).
struct InvalidTypeError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// A spanning tree with no valid valuation-graph completion.
struct ReconstructionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A formula identity failed (non-exact division, orbit/stabilizer mismatch,
// overlapping orbits over a prime power). Always a bug, never valid data.
struct InternalInconsistencyError : std::logic_error {
    using std::logic_error::logic_error;
};

}  // namespace diagcount
