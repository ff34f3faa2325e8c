#ifndef KWGRAPH_ERROR_HPP
#define KWGRAPH_ERROR_HPP

#include <stdexcept>
#include <string>

namespace kwgraph {

enum class ErrorKind {
  Parse,             // malformed document, unknown id, missing field
  Validation,        // graph violates a structural invariant
  LengthMismatch,    // vertex function not aligned with the graph
  Domain,            // argument outside the operation's domain
  OutOfRange,        // eigenspace index out of range
  UnboundedRegime,   // minimize called where inf J = -inf
  BoundedRegime,     // probe called where J is bounded below
};

class Error : public std::runtime_error {
public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

private:
  ErrorKind kind_;
};

namespace detail {

inline void require_same_length(std::size_t expected, std::size_t actual,
                                const char* where) {
  if (expected != actual) {
    throw Error(ErrorKind::LengthMismatch,
                std::string(where) + ": vertex function has length " +
                    std::to_string(actual) + ", graph has " +
                    std::to_string(expected) + " vertices");
  }
}

}  // namespace detail
}  // namespace kwgraph

#endif  // KWGRAPH_ERROR_HPP
