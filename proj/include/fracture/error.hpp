#pragma once

#include <stdexcept>
#include <string>

namespace fracture {

enum class ErrorKind {
    invalid_input,
    cap_exceeded,
    infeasible,
    precondition_failed,
    repair_failed,
    unknown_name,
};

inline const char* to_string(ErrorKind kind)
{
    switch (kind) {
    case ErrorKind::invalid_input: return "invalid_input";
    case ErrorKind::cap_exceeded: return "cap_exceeded";
    case ErrorKind::infeasible: return "infeasible";
    case ErrorKind::precondition_failed: return "precondition_failed";
    case ErrorKind::repair_failed: return "repair_failed";
    case ErrorKind::unknown_name: return "unknown_name";
    }
    return "error";
}

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind)
    {
    }

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what)
{
    throw Error(kind, what);
}

inline void require(bool cond, ErrorKind kind, const std::string& what)
{
    if (!cond)
        fail(kind, what);
}

} // namespace fracture
