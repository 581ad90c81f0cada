#pragma once

#include <stdexcept>
#include <string>

namespace palindist {

// A stated hypothesis of one of the verified bounds does not hold for the
// given inputs.  The message names the failing condition.
class precondition_error : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// ord_q(g) requested with gcd(g, q) > 1.
class undefined_order_error : public precondition_error {
public:
    using precondition_error::precondition_error;
};

// Modular inverse requested for a residue that has none.
class no_inverse_error : public precondition_error {
public:
    using precondition_error::precondition_error;
};

// An enumeration or divisor cap was exceeded; the message suggests a
// smaller instance.
class resource_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace palindist
