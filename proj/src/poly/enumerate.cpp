#include "edt/poly/enumerate.hpp"

#include "edt/poly/fourier_motzkin.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

namespace edt::poly {

namespace {

struct IntRow {
	std::vector<std::int64_t> a;
	std::int64_t b = 0;
};

IntRow to_int_row(const Row& r) {
	std::int64_t l = 1;
	for(const auto& v : r) {
		const std::int64_t g = gcd64(l, v.den());
		if(__builtin_mul_overflow(l / g, v.den(), &l)) throw std::overflow_error("row scaling overflow");
	}
	IntRow out;
	out.a.reserve(r.size() - 1);
	for(std::size_t i = 0; i + 1 < r.size(); ++i) out.a.push_back((r[i] * Rational(l)).num());
	out.b = (r.back() * Rational(l)).num();
	return out;
}

std::int64_t ceil_div(__int128 num, std::int64_t den) {
	// den > 0
	__int128 q = num / den;
	if(num % den != 0 && num > 0) ++q;
	return static_cast<std::int64_t>(std::clamp<__int128>(q, std::numeric_limits<std::int64_t>::min(), std::numeric_limits<std::int64_t>::max()));
}

std::int64_t floor_div_wide(__int128 num, std::int64_t den) {
	__int128 q = num / den;
	if(num % den != 0 && num < 0) --q;
	return static_cast<std::int64_t>(std::clamp<__int128>(q, std::numeric_limits<std::int64_t>::min(), std::numeric_limits<std::int64_t>::max()));
}

class Scanner {
  public:
	Scanner(const RationalPolyhedron& bound, const Box& box) : m_box(box), m_by_last(bound.dim()) {
		const std::size_t d = bound.dim();
		for(const auto& r : bound.rows()) {
			IntRow ir = to_int_row(r);
			std::size_t last = d;
			for(std::size_t i = d; i-- > 0;) {
				if(ir.a[i] != 0) {
					last = i;
					break;
				}
			}
			if(last == d) {
				if(ir.b < 0) m_infeasible = true;
				continue;
			}
			m_by_last[last].push_back(std::move(ir));
		}
	}

	std::vector<Point> run() {
		std::vector<Point> out;
		if(m_infeasible) return out;
		if(m_box.empty()) {
			out.emplace_back();
			return out;
		}
		Point x(m_box.size());
		scan(0, x, out);
		return out;
	}

  private:
	void scan(std::size_t k, Point& x, std::vector<Point>& out) {
		std::int64_t lo = m_box[k].lo;
		std::int64_t hi = m_box[k].hi;
		for(const auto& r : m_by_last[k]) {
			__int128 s = r.b;
			for(std::size_t i = 0; i < k; ++i) s += static_cast<__int128>(r.a[i]) * x[i];
			if(r.a[k] > 0) {
				lo = std::max(lo, ceil_div(-s, r.a[k]));
			} else {
				hi = std::min(hi, floor_div_wide(s, -r.a[k]));
			}
			if(lo > hi) return;
		}
		for(std::int64_t v = lo; v <= hi; ++v) {
			x[k] = v;
			if(k + 1 == x.size()) {
				out.push_back(x);
			} else {
				scan(k + 1, x, out);
			}
		}
	}

	const Box& m_box;
	std::vector<std::vector<IntRow>> m_by_last;
	bool m_infeasible = false;
};

} // namespace

std::uint64_t box_volume(const Box& box) {
	std::uint64_t vol = 1;
	for(const auto& iv : box) {
		if(iv.hi < iv.lo) return 0;
		const auto len = static_cast<unsigned __int128>(static_cast<__int128>(iv.hi) - iv.lo + 1);
		const unsigned __int128 prod = static_cast<unsigned __int128>(vol) * len;
		if(prod > std::numeric_limits<std::uint64_t>::max()) return std::numeric_limits<std::uint64_t>::max();
		vol = static_cast<std::uint64_t>(prod);
	}
	return vol;
}

TileSet::TileSet(std::vector<Point> points) : m_points(std::move(points)) {
	std::sort(m_points.begin(), m_points.end());
	m_points.erase(std::unique(m_points.begin(), m_points.end()), m_points.end());
	if(!m_points.empty()) {
		m_dim = m_points.front().size();
		for(const auto& p : m_points) {
			if(p.size() != m_dim) throw DimensionMismatch("TileSet: points of different dimensions");
		}
	}
}

bool TileSet::contains(const Point& p) const {
	return std::binary_search(m_points.begin(), m_points.end(), p);
}

std::optional<std::size_t> TileSet::rank_of(const Point& p) const {
	const auto it = std::lower_bound(m_points.begin(), m_points.end(), p);
	if(it == m_points.end() || *it != p) return std::nullopt;
	return static_cast<std::size_t>(it - m_points.begin());
}

Box TileSet::bounds() const {
	Box box(m_dim);
	if(m_points.empty()) return box;
	for(std::size_t i = 0; i < m_dim; ++i) box[i] = {m_points.front()[i], m_points.front()[i]};
	for(const auto& p : m_points) {
		for(std::size_t i = 0; i < m_dim; ++i) {
			box[i].lo = std::min(box[i].lo, p[i]);
			box[i].hi = std::max(box[i].hi, p[i]);
		}
	}
	return box;
}

std::vector<Point> integer_points(const RationalPolyhedron& p, std::span<const std::int64_t> params, const Box& bounds, std::uint64_t cap) {
	if(bounds.size() != p.dim()) throw DimensionMismatch("integer_points: bounds do not match dimension");
	const std::uint64_t volume = box_volume(bounds);
	if(volume > cap) {
		throw EnumerationCapExceeded("enumeration box holds " + std::to_string(volume) + " candidates, cap is " + std::to_string(cap));
	}
	if(volume == 0 || p.is_marked_empty()) return {};
	const RationalPolyhedron bound = p.bind_params(params);
	return Scanner(bound, bounds).run();
}

std::optional<Box> bounding_box(const RationalPolyhedron& p, std::span<const std::int64_t> params) {
	const RationalPolyhedron bound = p.bind_params(params);
	if(bound.is_marked_empty()) return std::nullopt;
	Box box(bound.dim());
	std::vector<std::size_t> others;
	for(std::size_t k = 0; k < bound.dim(); ++k) {
		others.clear();
		for(std::size_t i = 0; i < bound.dim(); ++i) {
			if(i != k) others.push_back(i);
		}
		const RationalPolyhedron axis = fm_project(bound, others);
		if(axis.is_marked_empty()) return std::nullopt;
		std::optional<std::int64_t> lo, hi;
		for(const auto& r : axis.rows()) {
			// r[0]·x + r[1] >= 0
			if(r[0].sign() > 0) {
				const auto v = (-r[1] / r[0]).ceil();
				lo = lo ? std::max(*lo, v) : v;
			} else if(r[0].sign() < 0) {
				const auto v = (r[1] / -r[0]).floor();
				hi = hi ? std::min(*hi, v) : v;
			}
		}
		if(!lo || !hi) throw UnboundedPolyhedron("polyhedron is unbounded along dimension " + std::to_string(k));
		if(*lo > *hi) return std::nullopt;
		box[k] = {*lo, *hi};
	}
	return box;
}

std::vector<Point> integer_points(const RationalPolyhedron& p, std::span<const std::int64_t> params, std::uint64_t cap) {
	const auto box = bounding_box(p, params);
	if(!box) return {};
	return integer_points(p, params, *box, cap);
}

TileSet tile_domain_points(const RationalPolyhedron& domain, const TilingSpec& tiling, std::span<const std::int64_t> params, std::uint64_t cap) {
	if(tiling.dim() != domain.dim()) throw DimensionMismatch("tile_domain_points: tiling/domain dimension mismatch");
	std::vector<Point> tiles;
	for(const auto& i : integer_points(domain, params, cap)) tiles.push_back(tiling.tile_of(i));
	return TileSet(std::move(tiles));
}

RationalPolyhedron predecessors_of(const RationalPolyhedron& delta_t, const Point& target, std::span<const std::int64_t> params) {
	if(target.size() > delta_t.dim()) throw DimensionMismatch("predecessors_of: target has more coordinates than the dependence");
	const RationalPolyhedron bound = delta_t.bind_params(params);
	const std::size_t src = bound.dim() - target.size();
	RationalPolyhedron out(src, 0);
	for(const auto& r : bound.rows()) {
		Row row(r.begin(), r.begin() + static_cast<std::ptrdiff_t>(src));
		Rational b = r.back();
		for(std::size_t j = 0; j < target.size(); ++j) b += r[src + j] * Rational(target[j]);
		row.push_back(b);
		out.add_constraint(std::move(row));
	}
	return out;
}

std::uint64_t count_predecessors(const RationalPolyhedron& delta_t, const Point& target, std::span<const std::int64_t> params,
                                 const TileSet& source_domain, std::uint64_t cap) {
	if(source_domain.empty()) return 0;
	const RationalPolyhedron preds = predecessors_of(delta_t, target, params);
	if(preds.dim() != source_domain.dim()) throw DimensionMismatch("count_predecessors: source domain dimension mismatch");
	std::uint64_t count = 0;
	for(const auto& s : integer_points(preds, {}, source_domain.bounds(), cap)) count += source_domain.contains(s);
	return count;
}

std::vector<Point> source_tasks(const TileSet& domain, std::span<const RationalPolyhedron> deltas, std::span<const std::int64_t> params,
                                std::uint64_t cap) {
	std::vector<Point> sources;
	const Box bounds = domain.bounds();
	for(const auto& t : domain.points()) {
		bool has_pred = false;
		for(const auto& delta : deltas) {
			for(const auto& s : integer_points(predecessors_of(delta, t, params), {}, bounds, cap)) {
				if(s != t && domain.contains(s)) {
					has_pred = true;
					break;
				}
			}
			if(has_pred) break;
		}
		if(!has_pred) sources.push_back(t);
	}
	return sources;
}

} // namespace edt::poly
