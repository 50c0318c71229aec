#ifndef SIQRNG_ERRORS_H
#define SIQRNG_ERRORS_H

#include <stdexcept>
#include <string>
#include <utility>

namespace siqrng {

/// An argument lies outside the mathematical domain of a function
/// (probability out of [0,1], nonphysical tomogram, unnormalized distribution).
class DomainError : public std::domain_error {
   public:
    using std::domain_error::domain_error;
};

/// A bound was requested in a regime where it does not hold.
class PreconditionError : public std::logic_error {
   public:
    using std::logic_error::logic_error;
};

/// A measurement basis with zero recorded clicks.
class NoDataError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

/// Double-click assignment cannot reproduce the certified worst-case probability.
class IncompatibleCountsError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

/// Invalid protocol configuration (epsilon budget, experiment parameters, grids).
class ConfigError : public std::invalid_argument {
   public:
    using std::invalid_argument::invalid_argument;
};

/// Bit string lengths disagree with the hashing specification.
class LengthMismatchError : public std::invalid_argument {
   public:
    using std::invalid_argument::invalid_argument;
};

/// Malformed input document.
class ParseError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

/// An error raised inside one stage of the certification pipeline, tagged
/// with the stage name.
class StageError : public std::runtime_error {
   public:
    StageError(std::string stage, const std::string& what)
        : std::runtime_error(stage + ": " + what), stage_(std::move(stage)) {}
    const std::string& stage() const { return stage_; }

   private:
    std::string stage_;
};

}  // namespace siqrng

#endif
