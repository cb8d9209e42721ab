#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace tdist {

using Symbol = int;
using StateId = int;

// Permitted only inside Nfa transitions.
inline constexpr Symbol kEpsilonSymbol = -1;

// Finite ordered set of named symbols. User-facing machines use single
// character letters; derived machines (synchronous products) use structured
// names such as "a:2,0". Symbols are dense indices 0..size()-1 in
// declaration order.
class Alphabet {
 public:
  Alphabet() = default;

  // One symbol per character, in order. Duplicates are rejected.
  static Alphabet from_letters(std::string_view letters);

  Symbol add(std::string name);
  std::optional<Symbol> find(std::string_view name) const;
  Symbol require(std::string_view name) const;

  bool contains_char(char c) const;
  // True when every character of the word is a declared single-char symbol.
  bool covers_word(std::string_view word) const;

  std::size_t size() const { return names_.size(); }
  const std::string& name(Symbol s) const;
  bool single_char() const;

  bool operator==(const Alphabet& other) const { return names_ == other.names_; }

 private:
  std::vector<std::string> names_;
  std::map<std::string, Symbol, std::less<>> index_;
};

// Word over an input alphabet, one entry per symbol.
using InputWord = std::vector<Symbol>;

// Single-char alphabets render as the plain concatenation, structured ones
// as space separated names.
std::string format_input_word(const Alphabet& a, const InputWord& w);

}  // namespace tdist
