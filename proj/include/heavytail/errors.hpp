#pragma once

#include <stdexcept>
#include <string>

namespace heavytail {

/// Quadrature or root-finding failed to reach the requested tolerance.
class numerical_error : public std::runtime_error {
public:
    explicit numerical_error(const std::string& what) : std::runtime_error(what) {}
};

/// A requested moment or integral does not exist (non-integrable tail).
class divergence_error : public std::domain_error {
public:
    explicit divergence_error(const std::string& what) : std::domain_error(what) {}
};

}  // namespace heavytail
