#include "cantorlab/io.hpp"

namespace cantorlab {

using nlohmann::json;

json rational_json(const Rational& r) {
  return {{"num", r.get_num().get_str()}, {"den", r.get_den().get_str()}};
}

json qpolynomial_json(const QPolynomial& p) {
  json out = json::array();
  for (const auto& [deg, c] : p.coefficients()) out.push_back({deg, c.get_num().get_str(), c.get_den().get_str()});
  return out;
}

json word_json(const AdmissibleWord& w) { return w.symbols(); }

json geometry_json(const CylinderGeometry& g, long precision) {
  json length = rational_json(g.length.coeff);
  length["depth"] = g.length.depth;
  return {{"word", word_json(g.word)},
          {"left_poly", qpolynomial_json(g.left)},
          {"length", length},
          {"decimal_left", g.left.evaluate(precision).decimal()},
          {"decimal_length", g.length.evaluate(precision).decimal()},
          {"precision_bits", precision}};
}

json hole_json(const HoleGeometry& h, long precision) {
  return {{"word", word_json(h.word)},
          {"left_poly", qpolynomial_json(h.left)},
          {"length_poly", qpolynomial_json(h.length)},
          {"decimal_left", h.left.evaluate(precision).decimal()},
          {"decimal_length", h.length.evaluate(precision).decimal()}};
}

json mass_json(const CylinderMass& m, long precision) {
  json factors = json::array();
  for (const StepFactor& f : m.factors()) {
    switch (f.kind) {
      case StepFactor::Kind::Pair:
        factors.push_back({{"kind", "pair"}, {"d", f.a}, {"s", f.b}});
        break;
      case StepFactor::Kind::Diag:
        factors.push_back({{"kind", "diag"}, {"m", f.a}});
        break;
      case StepFactor::Kind::Zero:
        factors.push_back({{"kind", "zero"}, {"m", f.a}});
        break;
    }
  }
  return {{"word", word_json(m.word())},
          {"alpha", to_string(m.alpha())},
          {"depth", m.depth()},
          {"mass_decimal", m.evaluate(precision).decimal()},
          {"log_mass", m.log_evaluate(precision).decimal()},
          {"factors", factors},
          {"precision_bits", precision}};
}

json consistency_json(const ConsistencyReport& c) {
  return {{"truncation", c.truncation},
          {"parent", c.parent_mass.decimal()},
          {"partial", c.partial.decimal()},
          {"tail_lo", c.tail_lo.decimal()},
          {"tail_hi", c.tail_hi.decimal()},
          {"lower", c.lower().decimal()},
          {"upper", c.upper().decimal()},
          {"holds", c.holds()}};
}

}  // namespace cantorlab
