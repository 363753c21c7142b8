#pragma once

#include "edt/poly/polyhedron.hpp"
#include "edt/poly/tiling.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

namespace edt::poly {

inline constexpr std::uint64_t default_enumeration_cap = 10'000'000;

class EnumerationCapExceeded : public std::runtime_error {
  public:
	using std::runtime_error::runtime_error;
};

class UnboundedPolyhedron : public std::runtime_error {
  public:
	using std::runtime_error::runtime_error;
};

struct Interval {
	std::int64_t lo = 0;
	std::int64_t hi = -1;
	friend bool operator==(const Interval&, const Interval&) = default;
};

using Box = std::vector<Interval>;

/// Number of integer points in `box`, saturating at UINT64_MAX.
std::uint64_t box_volume(const Box& box);

/// Sorted, duplicate-free set of integer points (typically tile coordinates).
class TileSet {
  public:
	TileSet() = default;
	explicit TileSet(std::vector<Point> points);

	const std::vector<Point>& points() const { return m_points; }
	std::size_t size() const { return m_points.size(); }
	bool empty() const { return m_points.empty(); }
	std::size_t dim() const { return m_dim; }

	bool contains(const Point& p) const;
	/// Lexicographic rank of `p`, if present.
	std::optional<std::size_t> rank_of(const Point& p) const;
	/// Smallest box enclosing every point; empty intervals for an empty set.
	Box bounds() const;

  private:
	std::vector<Point> m_points;
	std::size_t m_dim = 0;
};

/// Every integer point of `p` (after substituting `params`) inside `bounds`,
/// in lexicographic order. Refuses boxes with more than `cap` candidates.
std::vector<Point> integer_points(const RationalPolyhedron& p, std::span<const std::int64_t> params, const Box& bounds,
                                  std::uint64_t cap = default_enumeration_cap);

/// Integer bounding box of `p` after parameter substitution, from rational
/// projections onto each axis. Returns nullopt if `p` has no integer point in
/// any axis range; throws UnboundedPolyhedron when some axis is unbounded.
std::optional<Box> bounding_box(const RationalPolyhedron& p, std::span<const std::int64_t> params);

/// integer_points over the polyhedron's own bounding box.
std::vector<Point> integer_points(const RationalPolyhedron& p, std::span<const std::int64_t> params,
                                  std::uint64_t cap = default_enumeration_cap);

/// Exact tile set { ⌊I / g⌋ : I integer point of D }, by enumeration.
TileSet tile_domain_points(const RationalPolyhedron& domain, const TilingSpec& tiling, std::span<const std::int64_t> params,
                           std::uint64_t cap = default_enumeration_cap);

/// Binds params and the trailing target coordinates of an inter-tile
/// dependence; the result ranges over the source tile dims only.
RationalPolyhedron predecessors_of(const RationalPolyhedron& delta_t, const Point& target, std::span<const std::int64_t> params);

/// Number of integer points of predecessors_of(...) that lie in `source_domain`.
std::uint64_t count_predecessors(const RationalPolyhedron& delta_t, const Point& target, std::span<const std::int64_t> params,
                                 const TileSet& source_domain, std::uint64_t cap = default_enumeration_cap);

/// Tiles of a single-statement domain without any in-domain predecessor under
/// the given self-dependences. A tile is never its own predecessor.
std::vector<Point> source_tasks(const TileSet& domain, std::span<const RationalPolyhedron> deltas, std::span<const std::int64_t> params,
                                std::uint64_t cap = default_enumeration_cap);

} // namespace edt::poly
