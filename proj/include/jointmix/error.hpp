#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>

namespace jointmix {

// Base for every error raised by the library. The CLI maps InputError
// subclasses to exit code 1 and NumericalError subclasses to exit code 2.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class InputError : public Error {
public:
    using Error::Error;
};

// Malformed TSV, header mismatch between files, wrong column counts.
class FormatError : public InputError {
public:
    using InputError::InputError;
};

// CpG references a gene that does not exist or sits on another chromosome.
class MappingError : public InputError {
public:
    using InputError::InputError;
};

class DuplicateError : public InputError {
public:
    using InputError::InputError;
};

// Value outside the domain of a transform (negative count, beta > 1, ...).
class DomainError : public InputError {
public:
    using InputError::InputError;
};

class ShapeError : public InputError {
public:
    using InputError::InputError;
};

// Invalid algorithm parameter (q outside (0, 0.5), G < K, ...).
class ParameterError : public InputError {
public:
    using InputError::InputError;
};

// Numerical failure during fitting. `iteration()` is the outer EM iteration
// it happened in (0 = initialisation), when known.
class NumericalError : public Error {
public:
    explicit NumericalError(const std::string& what,
                            std::optional<std::size_t> iteration = std::nullopt)
        : Error(what), iteration_(iteration) {}

    std::optional<std::size_t> iteration() const noexcept { return iteration_; }

private:
    std::optional<std::size_t> iteration_;
};

enum class ClusterLayer { gene, cpg };

// A mixture component lost all of its mass during the M-step.
class DegenerateClusterError : public NumericalError {
public:
    DegenerateClusterError(ClusterLayer layer, std::size_t index, const std::string& what,
                           std::optional<std::size_t> iteration = std::nullopt)
        : NumericalError(what, iteration), layer_(layer), index_(index) {}

    ClusterLayer layer() const noexcept { return layer_; }
    // Zero-based component index.
    std::size_t index() const noexcept { return index_; }

private:
    ClusterLayer layer_;
    std::size_t index_;
};

}  // namespace jointmix
