#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include <json.hpp>

#include "eigenbound/bounds.hpp"
#include "eigenbound/harness.hpp"
#include "eigenbound/oracle.hpp"
#include "eigenbound/polynomial.hpp"

namespace eigenbound::io {

// Polynomial files come in two encodings.
//
// JSON:
//   {"n": 2, "m": 1,
//    "coefficients": [ [[[re, im], [re, im]], [[re, im], [re, im]]],   <- A_0
//                      ... ]}                                          <- up to A_m
//
// Text (one grid per block, '#' starts a comment):
//   n = 2
//   m = 1
//   A0:
//     (1,0)  0
//     0      (1,-2.5)
//   A1:
//     ...
// An entry is either a bare real or (re,im).

/// Parses either encoding (JSON when the first non-blank character is '{').
/// Throws ParseError on any schema or shape violation, including m < 1
/// and an all-zero A_m.
MatrixPolynomial parse_polynomial(std::string_view text);
MatrixPolynomial read_polynomial(const std::filesystem::path& path);

nlohmann::json polynomial_to_json(const MatrixPolynomial& poly);
MatrixPolynomial polynomial_from_json(const nlohmann::json& doc);
/// Text encoding with 17 significant digits, so parsing is bit-exact.
std::string polynomial_to_text(const MatrixPolynomial& poly);

nlohmann::json bound_to_json(const EigenvalueBound& bound);
nlohmann::json spectrum_to_json(const Spectrum& spectrum);
nlohmann::json report_to_json(const InclusionReport& report);
nlohmann::json tightness_to_json(const std::vector<TightnessRow>& rows);

/// Fixed-width decimal used by the text tables.
std::string fixed(double value, int digits = 4);
/// %.17g
std::string exact(double value);

}  // namespace eigenbound::io
