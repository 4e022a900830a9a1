#pragma once

#include <json.hpp>

#include "qmsplit/splitting.hpp"

namespace qmsplit {

using Json = nlohmann::ordered_json;

inline constexpr int kReportSchema = 1;
inline constexpr int kReportDigits = 40;

Json to_json(const Rational& q);
Json to_json(const Integer& z);
Json to_json(const QuadExt& q);
Json to_json(const ApReal& x);
Json to_json(const ApComplex& z);  // {"re": ..., "im": ...} as decimal strings
Json to_json(const QuatElement& q);
Json to_json(const RationalMatrix& m);
Json to_json(const UnitSample& u);
Json to_json(const CMPoint& p);
Json to_json(const Section& s);
Json to_json(const SplittingReport& r);

/// Short human form such as "2i", "1+0.5i", "-0.866025403784"; parts below
/// 1e-30 in modulus are dropped.
std::string format_complex(const ApComplex& z, int digits = 12);

/// Parses "re,im" (exact decimals or rationals) or the shorthand "i".
/// Throws std::invalid_argument.
ApComplex parse_complex(const std::string& text, mpfr_prec_t prec);

}  // namespace qmsplit
