#pragma once

#include <string>

namespace ndsl {

/// Locale-independent "%.15g" formatting used by every CSV and report.
std::string format_real(double v);

}  // namespace ndsl
