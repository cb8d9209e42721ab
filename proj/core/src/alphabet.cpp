#include "tdist/alphabet.hpp"

#include "tdist/error.hpp"

namespace tdist {

Alphabet Alphabet::from_letters(std::string_view letters) {
  Alphabet a;
  for (char c : letters) a.add(std::string(1, c));
  return a;
}

Symbol Alphabet::add(std::string name) {
  if (name.empty()) throw Error(Errc::InvalidInput, "empty symbol name");
  auto it = index_.find(name);
  if (it != index_.end())
    throw Error(Errc::DuplicateName, "symbol '" + name + "' declared twice");
  Symbol s = static_cast<Symbol>(names_.size());
  index_.emplace(name, s);
  names_.push_back(std::move(name));
  return s;
}

std::optional<Symbol> Alphabet::find(std::string_view name) const {
  auto it = index_.find(name);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

Symbol Alphabet::require(std::string_view name) const {
  auto s = find(name);
  if (!s)
    throw Error(Errc::UndeclaredSymbol,
                "symbol '" + std::string(name) + "' not declared");
  return *s;
}

bool Alphabet::contains_char(char c) const {
  return find(std::string_view(&c, 1)).has_value();
}

bool Alphabet::covers_word(std::string_view word) const {
  for (char c : word)
    if (!contains_char(c)) return false;
  return true;
}

const std::string& Alphabet::name(Symbol s) const {
  if (s < 0 || static_cast<std::size_t>(s) >= names_.size())
    throw Error(Errc::IndexOutOfRange, "symbol id out of range");
  return names_[static_cast<std::size_t>(s)];
}

bool Alphabet::single_char() const {
  for (const auto& n : names_)
    if (n.size() != 1) return false;
  return true;
}

std::string format_input_word(const Alphabet& a, const InputWord& w) {
  std::string out;
  bool compact = a.single_char();
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (!compact && i > 0) out += ' ';
    out += a.name(w[i]);
  }
  return out;
}

}  // namespace tdist
