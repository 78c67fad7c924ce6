#pragma once

// Error taxonomy. Everything user-facing derives from orbitcat::error so the
// CLI can map failure classes onto exit codes uniformly:
//   - input/usage problems (validation, parse, unsupported input)  -> exit 2
//   - checks that ran and failed are reported via result structs   -> exit 1
//   - internal invariant breaches abort the computation loudly.

#include <cstddef>
#include <stdexcept>
#include <string>

namespace orbitcat {

struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Malformed input: quiver files, schema violations, bad coordinates.
struct validation_error : error {
    using error::error;
};

// Structurally valid quiver outside the supported (Dynkin) class.
// Carries the classification witness.
struct unsupported_quiver : error {
    unsupported_quiver(const std::string& what, std::string witness_)
        : error(what), witness(std::move(witness_)) {}
    std::string witness;
};

// Text that failed to parse; position is a 0-based character offset.
struct parse_error : error {
    parse_error(const std::string& what, std::size_t position_)
        : error(what + " at position " + std::to_string(position_)),
          position(position_) {}
    std::size_t position;
};

// A certified iteration/size bound was exceeded. When partial data is
// meaningful it rides along in the message.
struct bound_exceeded : error {
    using error::error;
};

// Orbit-category operations that require the finiteness hypotheses refuse
// to run when the checks failed.
struct hypothesis_failed : error {
    using error::error;
};

// A proven-impossible state; indicates a bug, never bad input.
struct internal_error : error {
    using error::error;
};

} // namespace orbitcat
