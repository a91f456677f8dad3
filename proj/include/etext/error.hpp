#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace etext {

class NodeRef;

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed textual input. `position` is a byte offset into the offending
// string, or a 1-based line number when the input is line oriented.
class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t position)
      : Error(message), position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

// A subClassOf cycle. `members` lists the cycle in traversal order.
class CycleError : public Error {
 public:
  CycleError(const std::string& message, std::vector<std::string> members)
      : Error(message), members_(std::move(members)) {}
  const std::vector<std::string>& members() const { return members_; }

 private:
  std::vector<std::string> members_;
};

}  // namespace etext
