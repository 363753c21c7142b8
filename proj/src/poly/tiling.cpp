#include "edt/poly/tiling.hpp"

namespace edt::poly {

TilingSpec::TilingSpec(std::vector<std::int64_t> sizes) : m_sizes(std::move(sizes)) {
	for(const auto g : m_sizes) {
		if(g < 1) throw std::invalid_argument("tile sizes must be >= 1, got " + std::to_string(g));
	}
}

TilingSpec TilingSpec::combined(const TilingSpec& source, const TilingSpec& target) {
	std::vector<std::int64_t> sizes = source.m_sizes;
	sizes.insert(sizes.end(), target.m_sizes.begin(), target.m_sizes.end());
	return TilingSpec(std::move(sizes));
}

Point TilingSpec::tile_of(const Point& iteration) const {
	if(iteration.size() != m_sizes.size()) throw DimensionMismatch("tile_of: dimension mismatch");
	Point t(iteration.size());
	for(std::size_t i = 0; i < t.size(); ++i) t[i] = floor_div(iteration[i], m_sizes[i]);
	return t;
}

void DependenceRelation::validate() const {
	if(source_dims + target_dims != delta.dim()) {
		throw DimensionMismatch("dependence split " + std::to_string(source_dims) + "+" + std::to_string(target_dims) + " does not match dim " +
		                        std::to_string(delta.dim()));
	}
}

RationalPolyhedron image_inverse_tiling(const RationalPolyhedron& domain, const TilingSpec& tiling) {
	if(tiling.dim() != domain.dim()) {
		throw DimensionMismatch("tiling has " + std::to_string(tiling.dim()) + " sizes for a " + std::to_string(domain.dim()) + "-dim polyhedron");
	}
	RationalPolyhedron out(domain.dim(), domain.n_params());
	for(const auto& r : domain.rows()) {
		Row scaled = r;
		for(std::size_t i = 0; i < tiling.dim(); ++i) scaled[i] *= Rational(tiling[i]);
		out.add_constraint(std::move(scaled));
	}
	return out;
}

RationalPolyhedron u_box(const TilingSpec& tiling) {
	const std::size_t d = tiling.dim();
	RationalPolyhedron out(d, 0);
	for(std::size_t i = 0; i < d; ++i) {
		Row lower(d + 1, Rational(0));
		lower[i] = Rational(1);
		lower[d] = Rational(tiling[i] - 1, tiling[i]);
		out.add_constraint(std::move(lower));
		Row upper(d + 1, Rational(0));
		upper[i] = Rational(-1);
		out.add_constraint(std::move(upper));
	}
	return out;
}

Rational inflation_offset(const Row& row, const TilingSpec& tiling) {
	Rational c(0);
	for(std::size_t i = 0; i < tiling.dim(); ++i) {
		if(row[i].sign() > 0 && tiling[i] > 1) c += row[i] * Rational(tiling[i] - 1, tiling[i]);
	}
	return c;
}

RationalPolyhedron inflate(const RationalPolyhedron& p, const TilingSpec& tiling) {
	if(tiling.dim() != p.dim()) throw DimensionMismatch("inflate: tiling/polyhedron dimension mismatch");
	RationalPolyhedron out(p.dim(), p.n_params());
	for(const auto& r : p.rows()) {
		Row shifted = r;
		shifted.back() += inflation_offset(r, tiling);
		out.add_constraint(std::move(shifted));
	}
	return out;
}

RationalPolyhedron tile_dependence(const DependenceRelation& rel, const TilingSpec& source_tiling, const TilingSpec& target_tiling) {
	rel.validate();
	if(source_tiling.dim() != rel.source_dims || target_tiling.dim() != rel.target_dims) {
		throw DimensionMismatch("tile_dependence: tiling sizes do not match the source/target split");
	}
	const auto g = TilingSpec::combined(source_tiling, target_tiling);
	return inflate(image_inverse_tiling(rel.delta, g), g);
}

} // namespace edt::poly
