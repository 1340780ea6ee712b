#pragma once

#include <stdexcept>
#include <string>

namespace rough {

// Bad input data (times out of range, nonpositive prices, grid mismatches).
class domain_error : public std::runtime_error {
public:
    explicit domain_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Bad configuration or parameters (unknown model, invalid exponents).
class config_error : public std::runtime_error {
public:
    explicit config_error(const std::string& msg) : std::runtime_error(msg) {}
};

// A declared contract was violated at runtime (admissibility, anticipativity,
// integrability conditions).
class contract_error : public std::runtime_error {
public:
    explicit contract_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Exact algorithms refuse inputs beyond their size cap instead of silently
// degrading; callers may coarsen and retry.
class resolution_exceeded : public std::runtime_error {
public:
    explicit resolution_exceeded(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace rough
