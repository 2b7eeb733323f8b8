#pragma once

#include <stdexcept>
#include <string>

namespace insulatum {

// A requested table would not fit the configured memory budget.
class ResourceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A computation contradicts a proved statement. Either the build is broken
// or the inputs are not what they claim to be; never swallow this.
class TheoremViolation : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

// Two algorithms that must agree on every input disagreed.
class EquivalenceViolation : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

} // namespace insulatum
