#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace cantorlab {

using Symbol = std::int64_t;

/// Returns true iff `symbols` codes an interval of the construction: the
/// first symbol is positive, every symbol is non-negative, and a zero is
/// never followed by another zero.
bool is_admissible(std::span<const Symbol> symbols);

/// A finite admissible symbol sequence (k1, ..., kn). The empty word is the
/// root interval [0, 1), which behaves like state 0.
class AdmissibleWord {
 public:
  AdmissibleWord() = default;
  /// Throws DomainError when `symbols` is not admissible.
  explicit AdmissibleWord(std::vector<Symbol> symbols);

  const std::vector<Symbol>& symbols() const { return symbols_; }
  std::size_t depth() const { return symbols_.size(); }
  bool is_root() const { return symbols_.empty(); }
  /// Last symbol, with the convention k0 = 0 for the root.
  Symbol last() const { return symbols_.empty() ? 0 : symbols_.back(); }

  /// One-symbol extension; throws DomainError if the result is inadmissible.
  AdmissibleWord extended(Symbol next) const;
  AdmissibleWord prefix(std::size_t n) const;

  /// Comma-separated text form, e.g. "1,0,2"; the root renders as "".
  std::string to_string() const;
  static AdmissibleWord parse(std::string_view text);

  friend bool operator==(const AdmissibleWord&, const AdmissibleWord&) = default;
  friend auto operator<=>(const AdmissibleWord&, const AdmissibleWord&) = default;

 private:
  std::vector<Symbol> symbols_;
};

/// True when `next` may follow `prev` (prev = 0 also stands for the root).
inline bool is_legal_transition(Symbol prev, Symbol next) {
  return prev >= 0 && next >= 0 && !(prev == 0 && next == 0);
}

/// All admissible one-symbol extensions with new symbol <= max_index, in
/// spatial left-to-right order: the left block (last+1, last+2, ...) first,
/// then the right block 0, 1, ..., last. After a 0 (or at the root) only the
/// left block 1, 2, ... exists.
std::vector<AdmissibleWord> children(const AdmissibleWord& word, Symbol max_index);

/// Symbols of `children(word, max_index)` without materializing the words.
std::vector<Symbol> child_symbols(Symbol last, Symbol max_index);

}  // namespace cantorlab
