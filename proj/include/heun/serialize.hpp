#pragma once

// JSON and text renderings of library results. Every JSON document carries
// "schema" (document kind) and "version"; docs/json-schema.md describes them.
//
// Exact rationals are written as decimal-free "p/q" strings. Big floats are
// written twice: a decimal rendering for people and a "%Ra" hex string that
// reads back bit-exactly.

#include <json.hpp>

#include <string>
#include <vector>

#include "heun/recurrence.hpp"
#include "heun/rootfind.hpp"
#include "heun/tracking.hpp"

namespace heun {

using json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

json to_json(const RecurrenceSpec& spec);
/// Throws ParseError on missing or malformed fields.
RecurrenceSpec spec_from_json(const json& j);

json to_json(const PolynomialFamily<GaussRational>& family);
json to_json(const PolynomialFamily<BigComplex>& family);
PolynomialFamily<GaussRational> exact_family_from_json(const json& j);
/// Values keep the precision recorded in the document.
PolynomialFamily<BigComplex> float_family_from_json(const json& j);

/// {"re", "im", "re_hex", "im_hex"}; decimals at `digits` significant digits.
json complex_to_json(const BigComplex& z, int digits);
BigComplex complex_from_json(const json& j, mpfr_prec_t bits);

/// `labels` may be empty; otherwise one label per zero.
json to_json(const ZeroSet& zset, const std::vector<int>& labels, int digits);
json to_json(const ConvergenceReport& report, int digits);
json to_json(const std::vector<ApproximationRow>& rows, int index, int digits);
json to_json(const D2Estimate& est, int digits);
json to_json(const D2Zero& zero, int digits);

/// Decimal rendering with the imaginary part dropped when it is below the
/// precision's noise floor (|Im z| <= 2^(-bits/2) max(1, |z|)).
std::string format_value(const BigComplex& z, int digits, mpfr_prec_t bits);
/// Integers are written exactly, everything else at `digits` digits.
std::string format_value(const GaussRational& z, int digits);

/// k | 0th approx. | 1st approx. | 2nd approx. | zero of c_index
std::string table_text(const std::vector<ApproximationRow>& rows, int index, int digits);
/// The same five columns for every labelled track (zero at the last index),
/// followed by the zeros at the other indices and the stabilized digits.
std::string report_text(const ConvergenceReport& report, int digits);

}  // namespace heun
