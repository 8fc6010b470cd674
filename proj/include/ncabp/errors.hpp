#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ncabp {

// Malformed input file. Carries the 1-based line the parser choked on.
class parse_error : public std::runtime_error {
   public:
    parse_error(std::string msg, std::size_t line)
        : std::runtime_error("line " + std::to_string(line) + ": " + msg), line_(line) {}
    std::size_t line() const { return line_; }

   private:
    std::size_t line_;
};

// A configured budget (term count, enumeration size, matrix side) was exceeded.
class resource_error : public std::runtime_error {
   public:
    explicit resource_error(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace ncabp
