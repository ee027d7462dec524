#pragma once

#include "json.hpp"

#include "cantorlab/geometry.hpp"
#include "cantorlab/measure.hpp"

namespace cantorlab {

/// {"num": "p", "den": "q"}; strings keep big integers exact.
nlohmann::json rational_json(const Rational& r);

/// [[degree, "num", "den"], ...] in increasing degree.
nlohmann::json qpolynomial_json(const QPolynomial& p);

nlohmann::json word_json(const AdmissibleWord& w);

/// {word, left_poly, length: {num, den, depth}, decimal_left,
///  decimal_length, precision_bits}.
nlohmann::json geometry_json(const CylinderGeometry& g, long precision);

/// {word, left_poly, length_poly, decimal_left, decimal_length}.
nlohmann::json hole_json(const HoleGeometry& h, long precision);

/// {word, alpha, depth, mass_decimal, log_mass, factors, precision_bits}.
nlohmann::json mass_json(const CylinderMass& m, long precision);

/// {truncation, parent, partial, tail_lo, tail_hi, lower, upper, holds}.
nlohmann::json consistency_json(const ConsistencyReport& c);

}  // namespace cantorlab
