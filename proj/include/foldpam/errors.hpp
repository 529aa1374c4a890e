#pragma once

#include <stdexcept>
#include <string>

namespace foldpam {

// Input outside a model's mathematical domain (bad angle, bad modulus, ...).
class domain_error : public std::domain_error {
public:
    explicit domain_error(const std::string& msg) : std::domain_error(msg) {}
};

// Physically meaningful input for which no solution exists (strain beyond
// the zero-force point, unbracketable residual, iteration cap hit).
class solve_error : public std::runtime_error {
public:
    explicit solve_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Malformed external data; carries a 1-based line number when known.
class parse_error : public std::runtime_error {
public:
    parse_error(const std::string& msg, long line = -1)
        : std::runtime_error(line >= 0 ? msg + " (line " + std::to_string(line) + ")" : msg),
          line_(line) {}
    long line() const { return line_; }

private:
    long line_;
};

class io_error : public std::runtime_error {
public:
    explicit io_error(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace foldpam
