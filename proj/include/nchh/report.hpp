#pragma once

#include <string>
#include <string_view>

#include <json.hpp>

#include "nchh/bounds.hpp"
#include "nchh/classcheck.hpp"
#include "nchh/quadrature.hpp"

namespace nchh::report {

inline constexpr std::string_view kSchema = "nchh/1";
inline constexpr std::string_view kCsvHeader = "rule,n,a,b,f,phi,class,mean,lower,upper,holds,n_free";

/// 17 significant digits ("%.17g"), which round-trips every double.
std::string real17(double v);
/// Shortest round-trip form, for human-facing output.
std::string real_short(double v);
/// RFC 4180 quoting when the field contains a comma, quote or newline.
std::string csv_field(std::string_view text);

/// One row matching kCsvHeader, without the trailing newline.
std::string csv_row(const BoundCertificate& cert);

/// Current UTC time as "YYYY-MM-DDTHH:MM:SSZ".
std::string utc_timestamp();

nlohmann::ordered_json to_json(const BoundCertificate& cert);
nlohmann::ordered_json to_json(const ClassReport& report);
nlohmann::ordered_json to_json(const QuadratureResult& result);

}  // namespace nchh::report
