#pragma once

#include <stdexcept>
#include <string>

namespace taulab {

// Allocation limits, table ranges, or caches too large to build.
class ResourceError : public std::runtime_error {
public:
    explicit ResourceError(const std::string& msg) : std::runtime_error(msg) {}
};

// A tau-table cache file that fails header, contiguity or seed-value checks.
class CacheFormatError : public std::runtime_error {
public:
    explicit CacheFormatError(const std::string& msg) : std::runtime_error(msg) {}
};

// An argument outside the range a table or sequence covers.
class OutOfRangeError : public std::runtime_error {
public:
    explicit OutOfRangeError(const std::string& msg) : std::runtime_error(msg) {}
};

// tau(p) = 0 (a Lehmer prime). Callers must skip the prime explicitly;
// no construction silently swallows this case.
class VanishingTauError : public std::runtime_error {
public:
    explicit VanishingTauError(const std::string& msg) : std::runtime_error(msg) {}
};

// An identity that must hold by construction failed. Always a bug, never a
// data condition; the message carries the counterexample.
class InternalError : public std::logic_error {
public:
    explicit InternalError(const std::string& msg) : std::logic_error(msg) {}
};

}  // namespace taulab
