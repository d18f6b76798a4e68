#include "modal/alphabet.hpp"

#include <cctype>

namespace modal {

bool is_valid_name(const std::string& name) {
  if (name.empty()) return false;
  for (unsigned char c : name) {
    if (c <= ' ' || c == 0x7f) return false;
    switch (c) {
      case '(':
      case ')':
      case '{':
      case '}':
      case ',':
      case '=':
      case '"':
        return false;
      default:
        break;
    }
  }
  return true;
}

Alphabet::Alphabet(std::vector<std::string> labels)
    : labels_(std::move(labels)) {
  if (labels_.empty()) throw InvalidValue("alphabet must not be empty");
  for (int i = 0; i < static_cast<int>(labels_.size()); ++i) {
    const std::string& l = labels_[i];
    if (!is_valid_name(l)) throw InvalidValue("invalid label name '" + l + "'");
    if (!index_.emplace(l, i).second)
      throw InvalidValue("duplicate label '" + l + "'");
  }
}

int Alphabet::index(const std::string& name) const {
  auto it = index_.find(name);
  return it == index_.end() ? -1 : it->second;
}

void require_same_alphabet(const Alphabet& a, const Alphabet& b,
                           const char* operation) {
  if (a != b)
    throw AlphabetMismatch(std::string(operation) +
                           ": operands have different alphabets");
}

}  // namespace modal
