#include "edt/metrics/fit.hpp"

#include <cmath>
#include <cstddef>
#include <vector>

namespace edt::metrics {

GrowthFit fit_growth_exponent(std::span<const GrowthPoint> points) {
	GrowthFit fit;
	std::size_t positive = 0;
	std::vector<double> xs, ys;
	for(const auto& p : points) {
		if(!(p.n > 0)) throw FitError("fit: n must be positive");
		if(p.value < 0 || std::isnan(p.value)) throw FitError("fit: values must be non-negative");
		if(p.value > 0) ++positive;
		else fit.zero_mapped = true;
		xs.push_back(std::log(p.n));
		ys.push_back(p.value > 0 ? std::log(p.value) : 0.0);
	}
	if(positive < 2) throw FitError("fit: fewer than two positive points");

	const double k = static_cast<double>(xs.size());
	double mx = 0, my = 0;
	for(std::size_t i = 0; i < xs.size(); ++i) {
		mx += xs[i];
		my += ys[i];
	}
	mx /= k;
	my /= k;
	double sxx = 0, sxy = 0, syy = 0;
	for(std::size_t i = 0; i < xs.size(); ++i) {
		sxx += (xs[i] - mx) * (xs[i] - mx);
		sxy += (xs[i] - mx) * (ys[i] - my);
		syy += (ys[i] - my) * (ys[i] - my);
	}
	if(sxx == 0) throw FitError("fit: all n are equal");
	fit.exponent = sxy / sxx;
	if(syy == 0) {
		fit.r_squared = 1.0;
	} else {
		double ss_res = 0;
		for(std::size_t i = 0; i < xs.size(); ++i) {
			const double r = ys[i] - (my + fit.exponent * (xs[i] - mx));
			ss_res += r * r;
		}
		fit.r_squared = 1.0 - ss_res / syy;
	}
	return fit;
}

} // namespace edt::metrics
