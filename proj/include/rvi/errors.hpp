#pragma once

#include <stdexcept>
#include <string>

namespace rvi {

// error taxonomy mirrors the CLI exit-code contract:
// 2 = bad input, 3 = budget exhausted, 4 = numeric failure
struct structural_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct domain_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
// boundary of the induction domain (tie between leftmost/rightmost lengths)
struct not_in_domain : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct budget_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct numeric_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace rvi
