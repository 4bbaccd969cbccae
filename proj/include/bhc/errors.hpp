#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace bhc {

/// Syntax error in polynomial text. `position` is a 0-based byte offset
/// into the input.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, std::size_t position)
        : std::runtime_error(what + " (at offset " + std::to_string(position) + ")"),
          position_(position) {}

    std::size_t position() const noexcept { return position_; }

private:
    std::size_t position_;
};

/// An enumeration would need more point evaluations than the configured
/// work budget. `required` is the number of evaluations that would be needed.
class BudgetExceeded : public std::runtime_error {
public:
    BudgetExceeded(const std::string& what, double required)
        : std::runtime_error(what), required_(required) {}

    double required() const noexcept { return required_; }

private:
    double required_;
};

/// Some local factor L_p is exactly zero, so the full product vanishes.
class LocalVanishing : public std::runtime_error {
public:
    explicit LocalVanishing(std::uint64_t p)
        : std::runtime_error("local factor vanishes at p = " + std::to_string(p) +
                             "; the singular product is 0"),
          prime_(p) {}

    std::uint64_t prime() const noexcept { return prime_; }

private:
    std::uint64_t prime_;
};

/// Polynomial values could overflow 64-bit arithmetic over the requested box.
class OverflowRisk : public std::runtime_error {
public:
    OverflowRisk(const std::string& what, std::uint64_t safe_t_max)
        : std::runtime_error(what), safe_t_max_(safe_t_max) {}

    /// Largest box half-side that keeps every value within 64 bits.
    std::uint64_t safe_t_max() const noexcept { return safe_t_max_; }

private:
    std::uint64_t safe_t_max_;
};

}  // namespace bhc
