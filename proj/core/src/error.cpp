#include "tdist/error.hpp"

namespace tdist {

const char* errc_name(Errc code) {
  switch (code) {
    case Errc::UndeclaredSymbol: return "UndeclaredSymbol";
    case Errc::DuplicateTransitionOnSequentialFlag:
      return "DuplicateTransitionOnSequentialFlag";
    case Errc::ArityMismatch: return "ArityMismatch";
    case Errc::EmptyMachine: return "EmptyMachine";
    case Errc::EmptyDocument: return "EmptyDocument";
    case Errc::DuplicateName: return "DuplicateName";
    case Errc::UnknownState: return "UnknownState";
    case Errc::AlphabetMismatch: return "AlphabetMismatch";
    case Errc::NonSequentialComponent: return "NonSequentialComponent";
    case Errc::AmbiguousComponent: return "AmbiguousComponent";
    case Errc::IndexOutOfRange: return "IndexOutOfRange";
    case Errc::EmptyWord: return "EmptyWord";
    case Errc::BudgetNegative: return "BudgetNegative";
    case Errc::PredicateNotMonotone: return "PredicateNotMonotone";
    case Errc::CapExceeded: return "CapExceeded";
    case Errc::SyntaxError: return "SyntaxError";
    case Errc::InvalidInput: return "InvalidInput";
  }
  return "Unknown";
}

Error::Error(Errc code, const std::string& what)
    : std::runtime_error(std::string(errc_name(code)) + ": " + what),
      code_(code),
      message_(what) {}

}  // namespace tdist
