#include "cantorlab/coding.hpp"

#include <algorithm>
#include <charconv>

#include "cantorlab/error.hpp"

namespace cantorlab {

bool is_admissible(std::span<const Symbol> symbols) {
  Symbol prev = 0;
  for (Symbol s : symbols) {
    if (!is_legal_transition(prev, s)) return false;
    prev = s;
  }
  return true;
}

AdmissibleWord::AdmissibleWord(std::vector<Symbol> symbols) : symbols_(std::move(symbols)) {
  if (!is_admissible(symbols_)) {
    throw DomainError("inadmissible word (" + to_string() + ")");
  }
}

AdmissibleWord AdmissibleWord::extended(Symbol next) const {
  if (!is_legal_transition(last(), next)) {
    throw DomainError("symbol " + std::to_string(next) + " cannot follow " + std::to_string(last()));
  }
  AdmissibleWord w;
  w.symbols_ = symbols_;
  w.symbols_.push_back(next);
  return w;
}

AdmissibleWord AdmissibleWord::prefix(std::size_t n) const {
  if (n > symbols_.size()) throw DomainError("prefix longer than word");
  AdmissibleWord w;
  w.symbols_.assign(symbols_.begin(), symbols_.begin() + static_cast<std::ptrdiff_t>(n));
  return w;
}

std::string AdmissibleWord::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < symbols_.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(symbols_[i]);
  }
  return out;
}

AdmissibleWord AdmissibleWord::parse(std::string_view text) {
  std::vector<Symbol> symbols;
  std::size_t pos = 0;
  while (pos < text.size() && text[pos] == ' ') ++pos;
  if (pos == text.size()) return AdmissibleWord{};
  while (pos <= text.size()) {
    const std::size_t comma = std::min(text.find(',', pos), text.size());
    std::string_view item = text.substr(pos, comma - pos);
    while (!item.empty() && item.front() == ' ') item.remove_prefix(1);
    while (!item.empty() && item.back() == ' ') item.remove_suffix(1);
    Symbol value = 0;
    auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), value);
    if (item.empty() || ec != std::errc{} || ptr != item.data() + item.size()) {
      throw DomainError("cannot parse word \"" + std::string(text) + "\"");
    }
    symbols.push_back(value);
    pos = comma + 1;
  }
  return AdmissibleWord(std::move(symbols));
}

std::vector<Symbol> child_symbols(Symbol last, Symbol max_index) {
  if (last < 0) throw DomainError("negative symbol");
  if (max_index < 0) throw DomainError("max_index must be >= 0");
  std::vector<Symbol> out;
  if (last == 0) {
    for (Symbol c = 1; c <= max_index; ++c) out.push_back(c);
    return out;
  }
  for (Symbol c = last + 1; c <= max_index; ++c) out.push_back(c);
  for (Symbol c = 0; c <= std::min(last, max_index); ++c) out.push_back(c);
  return out;
}

std::vector<AdmissibleWord> children(const AdmissibleWord& word, Symbol max_index) {
  std::vector<AdmissibleWord> out;
  for (Symbol c : child_symbols(word.last(), max_index)) out.push_back(word.extended(c));
  return out;
}

}  // namespace cantorlab
