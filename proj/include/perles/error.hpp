#pragma once

#include <stdexcept>
#include <string>

namespace perles {

// Machine-readable error categories; the CLI maps each one to an exit status.
enum class ErrorKind {
    precondition,  // input violates an operation's precondition
    parse,         // malformed file
    invariant,     // a construction produced an invalid object (logic error)
    stage,         // a pipeline stage failed
    io,
};

inline const char* to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::precondition: return "precondition";
        case ErrorKind::parse: return "parse";
        case ErrorKind::invariant: return "invariant";
        case ErrorKind::stage: return "stage";
        case ErrorKind::io: return "io";
    }
    return "unknown";
}

class Error : public std::runtime_error {
  public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(what), kind_(kind) {}

    ErrorKind kind() const { return kind_; }

  private:
    ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) {
    throw Error(kind, what);
}

inline void require(bool condition, const std::string& what) {
    if (!condition) fail(ErrorKind::precondition, what);
}

}  // namespace perles
