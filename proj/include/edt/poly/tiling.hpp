#pragma once

#include "edt/poly/polyhedron.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace edt::poly {

/// Orthogonal tiling: the diagonal of G, one positive tile size per dimension.
class TilingSpec {
  public:
	TilingSpec() = default;
	explicit TilingSpec(std::vector<std::int64_t> sizes);

	static TilingSpec identity(std::size_t dim) { return TilingSpec(std::vector<std::int64_t>(dim, 1)); }
	/// Block-diagonal tiling applying `source` to the leading dims and `target` to the rest.
	static TilingSpec combined(const TilingSpec& source, const TilingSpec& target);

	std::size_t dim() const { return m_sizes.size(); }
	std::int64_t operator[](std::size_t i) const { return m_sizes[i]; }
	const std::vector<std::int64_t>& sizes() const { return m_sizes; }

	/// Tile coordinate of an iteration, ⌊I / g⌋ elementwise (floor toward −∞).
	Point tile_of(const Point& iteration) const;

	friend bool operator==(const TilingSpec&, const TilingSpec&) = default;

  private:
	std::vector<std::int64_t> m_sizes;
};

/// A dependence between two statements: `delta` lives over (I_s | I_t | params).
struct DependenceRelation {
	std::string source_stmt;
	std::string target_stmt;
	std::size_t source_dims = 0;
	std::size_t target_dims = 0;
	RationalPolyhedron delta;

	/// Throws DimensionMismatch if the split does not cover delta's set dims.
	void validate() const;
};

/// image(D, G⁻¹): substitutes I = G·T, i.e. scales column i of every row by g_i.
RationalPolyhedron image_inverse_tiling(const RationalPolyhedron& domain, const TilingSpec& tiling);

/// The box of fractional intra-tile offsets, −(g_i − 1)/g_i ≤ Y_i ≤ 0.
RationalPolyhedron u_box(const TilingSpec& tiling);

/// Offset each row by c_max(a) = Σ_{a_i > 0} a_i·(g_i − 1)/g_i so the result
/// contains P ⊕ U. Coefficients and row order are left untouched.
RationalPolyhedron inflate(const RationalPolyhedron& p, const TilingSpec& tiling);

/// c_max for one row's set-dimension coefficients.
Rational inflation_offset(const Row& row, const TilingSpec& tiling);

/// Inter-tile dependence over (T_s | T_t | params), computed by compression
/// and inflation with the block-diagonal tiling of source and target.
RationalPolyhedron tile_dependence(const DependenceRelation& rel, const TilingSpec& source_tiling, const TilingSpec& target_tiling);

} // namespace edt::poly
