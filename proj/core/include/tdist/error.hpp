#pragma once

#include <stdexcept>
#include <string>

namespace tdist {

// Failure categories. The CLI maps these to JSON error objects and exit
// code 2; library callers can switch on code().
enum class Errc {
  UndeclaredSymbol,
  DuplicateTransitionOnSequentialFlag,
  ArityMismatch,
  EmptyMachine,
  EmptyDocument,
  DuplicateName,
  UnknownState,
  AlphabetMismatch,
  NonSequentialComponent,
  AmbiguousComponent,
  IndexOutOfRange,
  EmptyWord,
  BudgetNegative,
  PredicateNotMonotone,
  CapExceeded,
  SyntaxError,
  InvalidInput,
};

const char* errc_name(Errc code);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what);
  Errc code() const { return code_; }
  // what() carries the code name; message() is the bare text, for wrapping.
  const std::string& message() const { return message_; }

 private:
  Errc code_;
  std::string message_;
};

}  // namespace tdist
