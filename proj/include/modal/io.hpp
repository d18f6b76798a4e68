#pragma once

#include <string>
#include <variant>

#include "modal/audit.hpp"

namespace modal {

/// A parsed document of any of the five kinds.
struct Document {
  std::variant<Lts, Hmlr, NormalForm, Naa, AuditReport> body;

  const char* kind() const;
  bool operator==(const Document& other) const;
};

/// Parses a document; the kind is read from the leading "kind:" line.
/// Throws ParseError with a position on syntax errors and InvalidValue on
/// reference errors (undeclared states, labels, or variables).
Document parse(const std::string& text);

/// Canonical serialization: sorted states, variables, and sets, so equal
/// structures yield byte-identical text and parse(serialize(x)) == x.
std::string serialize(const Document& doc);

std::string serialize(const Lts& m);
std::string serialize(const Hmlr& h);
std::string serialize(const NormalForm& s);
std::string serialize(const Naa& a);
std::string serialize(const AuditReport& r);

/// Human-oriented rendering of an audit report (not parseable).
std::string pretty_report(const AuditReport& r);

std::string serialize_formula(const Hml& f);
Hml parse_formula(const std::string& text);

/// Typed parse helpers; throw Error when the document has another kind.
Lts parse_lts(const std::string& text);
Hmlr parse_hmlr(const std::string& text);
NormalForm parse_nf(const std::string& text);
Naa parse_naa(const std::string& text);
AuditReport parse_report(const std::string& text);

}  // namespace modal
