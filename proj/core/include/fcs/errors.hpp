#pragma once

#include <stdexcept>
#include <string>

namespace fcs {

// Every failure mode gets its own type so callers can react per condition;
// all of them still read as std::runtime_error for generic handlers.
struct Error : std::runtime_error {
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

struct ShapeMismatch : Error {
  explicit ShapeMismatch(const std::string& msg) : Error(msg) {}
};

struct NotHermitian : Error {
  explicit NotHermitian(const std::string& msg) : Error(msg) {}
};

struct NotIsometry : Error {
  explicit NotIsometry(const std::string& msg) : Error(msg) {}
};

struct NotCP : Error {
  explicit NotCP(const std::string& msg) : Error(msg) {}
};

struct NotUnital : Error {
  explicit NotUnital(const std::string& msg) : Error(msg) {}
};

struct NotPositive : Error {
  explicit NotPositive(const std::string& msg) : Error(msg) {}
};

struct NotAState : Error {
  explicit NotAState(const std::string& msg) : Error(msg) {}
};

struct NoConvergence : Error {
  explicit NoConvergence(const std::string& msg) : Error(msg) {}
};

// A fixed space of dimension > 1 is one particular way iteration fails to
// single out a limit, hence the subclassing.
struct DegenerateFixedSpace : NoConvergence {
  explicit DegenerateFixedSpace(const std::string& msg) : NoConvergence(msg) {}
};

struct WindowTooLarge : Error {
  explicit WindowTooLarge(const std::string& msg) : Error(msg) {}
};

struct NoDilation : Error {
  explicit NoDilation(const std::string& msg) : Error(msg) {}
};

struct IndexOutOfRange : Error {
  explicit IndexOutOfRange(const std::string& msg) : Error(msg) {}
};

struct UnknownObservable : Error {
  explicit UnknownObservable(const std::string& msg) : Error(msg) {}
};

struct ParseError : Error {
  explicit ParseError(const std::string& msg) : Error(msg) {}
};

}  // namespace fcs
