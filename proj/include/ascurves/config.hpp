#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace ascurves {

// Runtime bounds for the exact-arithmetic pipeline. All computation is
// deterministic; there is no seed to configure.
struct Config {
    std::uint64_t max_field_size = 1ull << 20;  // largest p^n we agree to build tables for
    int max_oracle_genus = 5;                   // zeta oracle needs N_1..N_g
    int max_splitting_degree = 8;               // cap on the extension used to split a denominator
    int jobs = 1;                               // worker threads for point counting
};

// A requested computation exceeds the configured field-size or genus bounds.
class BoundError : public std::domain_error {
  public:
    explicit BoundError(const std::string& what) : std::domain_error(what) {}
};

// The Artin-Schreier equation defines a disconnected (trivial) cover:
// the right-hand side is of the form delta^p - delta + constant.
class DisconnectedCoverError : public std::domain_error {
  public:
    explicit DisconnectedCoverError(const std::string& what) : std::domain_error(what) {}
};

// No usable specialization parameter exists in the given field; retry over
// an extension.
class NoSuitableParameterError : public std::domain_error {
  public:
    explicit NoSuitableParameterError(const std::string& what) : std::domain_error(what) {}
};

}  // namespace ascurves
