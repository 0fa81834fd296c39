#pragma once

// System files (whitespace insensitive, '#' starts a comment):
//
//   file       := { statement }
//   statement  := "chart" ident { "," ident } ";"
//               | "constants" binding { "," binding } ";"
//               | ("function" | "hamiltonian") ident "=" expr ";"
//               | "field" ident "=" "[" expr { "," expr } "]" ";"
//               | "form" ident "=" form ";"
//               | "tensor" ident "=" matrix ";"
//               | "matrix" ident "=" matrix ";"
//               | "frequencies" ident "{" "basis" ":" "[" symbol { "," symbol } "]" ";"
//                                       "omega" ":" rows ";" "}"
//               | "request" kind ident "{" { ident ":" value ";" } "}"
//   binding    := ident [ "=" expr ]
//   form       := term { ("+" | "-") term }      term := "(" expr ")" [ dx { "^" dx } ]
//   matrix     := "[" row { "," row } "]"        row  := "[" expr { "," expr } "]"
//   rows       := matrix of constant expressions, not necessarily square
//   symbol     := ident | number
//   kind       := "verify" | "factorize" | "altgen" | "resonance" | "period"
//               | "normalform" | "validate"
//   value      := ident | expr | "[" value { "," value } "]"
//
// The chart comes first and is unique. Expressions follow the grammar in
// expr/parser.hpp. Matrices and frequency rows hold constants only.

#include "hamgeom/expr/parser.hpp"
#include "hamgeom/geom/objects.hpp"
#include "hamgeom/torus/lattice.hpp"

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace hamgeom::cli {

struct Value {
  enum class Kind { name, number, list };
  Kind kind = Kind::number;
  std::string name;
  Rational number = 0;
  std::vector<Value> items;
  syntax::Token at;
};

struct Request {
  std::string kind;
  std::string name;
  std::vector<std::pair<std::string, Value>> entries;
  syntax::Token at;

  const Value* find(std::string_view key) const;
};

struct SystemFile {
  Chart chart;
  std::vector<std::optional<Rational>> constant_values;  // one per chart constant
  std::map<std::string, RationalFunction> functions;
  std::map<std::string, geom::VectorField> fields;
  std::map<std::string, geom::DifferentialForm> forms;
  std::map<std::string, geom::Tensor11> tensors;
  std::map<std::string, ExactMatrix> matrices;
  std::map<std::string, torus::FrequencySpec> frequencies;
  std::vector<Request> requests;
};

inline constexpr const char* kRequestKinds[] = {"verify",     "factorize", "altgen",  "resonance",
                                                "period",     "normalform", "validate"};

/// Throws ParseError with the position of the offending token.
SystemFile parse_system(std::string_view text);

}  // namespace hamgeom::cli
