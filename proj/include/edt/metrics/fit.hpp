#pragma once

#include <span>
#include <stdexcept>

namespace edt::metrics {

class FitError : public std::invalid_argument {
  public:
	using std::invalid_argument::invalid_argument;
};

struct GrowthPoint {
	double n = 0;
	double value = 0;
};

struct GrowthFit {
	double exponent = 0;
	double r_squared = 0;
	/// Some zero values were replaced by 1 before taking logs.
	bool zero_mapped = false;
};

/// Least-squares slope of log(value) against log(n). Needs at least two
/// points with a positive value and two distinct n; a fit with no variance in
/// log(value) reports r² = 1.
GrowthFit fit_growth_exponent(std::span<const GrowthPoint> points);

} // namespace edt::metrics
