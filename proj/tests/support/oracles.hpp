#pragma once

// Brute-force reference implementations used only by tests. None of these
// call into the library's scanner, projection or tiling routines; they only
// use the polyhedron container and Rational arithmetic.

#include "edt/poly/enumerate.hpp"
#include "edt/poly/polyhedron.hpp"
#include "edt/poly/tiling.hpp"

#include <algorithm>
#include <cstdint>
#include <random>
#include <set>
#include <vector>

namespace edt::testing {

using poly::Box;
using poly::Point;
using poly::Rational;
using poly::RationalPolyhedron;
using poly::Row;

inline std::int64_t floor_div_ref(std::int64_t a, std::int64_t b) {
	// b > 0
	std::int64_t q = a / b;
	if(a % b != 0 && a < 0) --q;
	return q;
}

/// Odometer scan of the whole box, testing every candidate with contains().
inline std::vector<Point> naive_points(const RationalPolyhedron& p, const Box& box, const std::vector<std::int64_t>& params = {}) {
	std::vector<Point> out;
	if(box.empty()) {
		if(p.contains(std::span<const std::int64_t>{}, params)) out.emplace_back();
		return out;
	}
	for(const auto& iv : box) {
		if(iv.hi < iv.lo) return out;
	}
	Point x(box.size());
	for(std::size_t i = 0; i < box.size(); ++i) x[i] = box[i].lo;
	while(true) {
		if(p.contains(std::span<const std::int64_t>(x), params)) out.push_back(x);
		std::size_t k = box.size();
		while(k-- > 0) {
			if(x[k] < box[k].hi) {
				++x[k];
				break;
			}
			x[k] = box[k].lo;
		}
		if(k == static_cast<std::size_t>(-1)) break;
	}
	return out;
}

/// Plain Fourier-Motzkin feasibility over rationals, no pruning beyond exact
/// duplicate removal. Only suitable for a handful of dims and rows.
inline bool rational_feasible(std::vector<Row> rows, std::size_t dim) {
	for(std::size_t k = 0; k < dim; ++k) {
		std::vector<Row> lower, upper;
		std::set<Row> next;
		for(auto& r : rows) {
			if(r[k] > Rational(0)) {
				lower.push_back(r);
			} else if(r[k] < Rational(0)) {
				upper.push_back(r);
			} else {
				next.insert(r);
			}
		}
		for(const auto& lo : lower) {
			for(const auto& up : upper) {
				const Rational c = lo[k];
				const Rational d = -up[k];
				Row comb(lo.size());
				for(std::size_t i = 0; i < lo.size(); ++i) comb[i] = lo[i] / c + up[i] / d;
				comb[k] = Rational(0);
				next.insert(comb);
			}
		}
		rows.assign(next.begin(), next.end());
	}
	return std::all_of(rows.begin(), rows.end(), [](const Row& r) { return r.back() >= Rational(0); });
}

/// T ∈ image(D, G⁻¹) ⊕ U, decided as: ∃ Y with −(g−1)/g ≤ Y ≤ 0 and
/// Σ a_i g_i (T_i − Y_i) + b ≥ 0 for every row of D. D must have no params.
inline bool minkowski_member(const RationalPolyhedron& domain, const poly::TilingSpec& g, const Point& t) {
	const std::size_t d = domain.dim();
	std::vector<Row> rows;
	for(const auto& r : domain.rows()) {
		Row y(d + 1, Rational(0));
		Rational b = r.back();
		for(std::size_t i = 0; i < d; ++i) {
			const Rational coeff = r[i] * Rational(g[i]);
			b += coeff * Rational(t[i]);
			y[i] = -coeff;
		}
		y[d] = b;
		rows.push_back(std::move(y));
	}
	for(std::size_t i = 0; i < d; ++i) {
		Row lo(d + 1, Rational(0));
		lo[i] = Rational(1);
		lo[d] = Rational(g[i] - 1, g[i]);
		rows.push_back(std::move(lo));
		Row hi(d + 1, Rational(0));
		hi[i] = Rational(-1);
		rows.push_back(std::move(hi));
	}
	return rational_feasible(std::move(rows), d);
}

/// { ⌊I/g⌋ : I integer point of domain ∩ box } by naive scan.
inline std::set<Point> oracle_tiles(const RationalPolyhedron& domain, const poly::TilingSpec& g, const Box& box) {
	std::set<Point> out;
	for(const auto& i : naive_points(domain, box)) {
		Point t(i.size());
		for(std::size_t k = 0; k < i.size(); ++k) t[k] = floor_div_ref(i[k], g[k]);
		out.insert(t);
	}
	return out;
}

/// Tile pairs (⌊I_s/g_s⌋ | ⌊I_t/g_t⌋) over integer points of a dependence.
inline std::set<Point> oracle_tile_pairs(const poly::DependenceRelation& rel, const poly::TilingSpec& gs, const poly::TilingSpec& gt, const Box& box) {
	std::set<Point> out;
	for(const auto& i : naive_points(rel.delta, box)) {
		Point t(i.size());
		for(std::size_t k = 0; k < rel.source_dims; ++k) t[k] = floor_div_ref(i[k], gs[k]);
		for(std::size_t k = 0; k < rel.target_dims; ++k) t[rel.source_dims + k] = floor_div_ref(i[rel.source_dims + k], gt[k]);
		out.insert(t);
	}
	return out;
}

inline Row unit_row(std::size_t width, std::size_t i, std::int64_t coeff, std::int64_t b) {
	Row r(width, Rational(0));
	r[i] = Rational(coeff);
	r.back() = Rational(b);
	return r;
}

struct RandomDomain {
	RationalPolyhedron domain;
	Box box;
	poly::TilingSpec tiling;
};

/// Random bounded box (extent <= 12 per dim, possibly negative) cut by up to
/// two difference constraints x_i − x_j >= c. The constraint matrix is
/// totally unimodular, so rational and integer feasibility of any tile box
/// agree.
inline RandomDomain random_domain(std::mt19937_64& rng) {
	auto uniform = [&](std::int64_t lo, std::int64_t hi) { return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng); };
	const auto d = static_cast<std::size_t>(uniform(1, 4));
	RandomDomain out{RationalPolyhedron(d, 0), Box(d), poly::TilingSpec{}};
	std::vector<std::int64_t> g(d);
	for(std::size_t i = 0; i < d; ++i) {
		const std::int64_t lo = uniform(-6, 6);
		const std::int64_t hi = lo + uniform(0, 11);
		out.box[i] = {lo, hi};
		out.domain.add_constraint(unit_row(d + 1, i, 1, -lo));
		out.domain.add_constraint(unit_row(d + 1, i, -1, hi));
		g[i] = uniform(1, 8);
	}
	if(d > 1) {
		const auto extra = uniform(0, 2);
		for(std::int64_t e = 0; e < extra; ++e) {
			const auto i = static_cast<std::size_t>(uniform(0, static_cast<std::int64_t>(d) - 1));
			auto j = static_cast<std::size_t>(uniform(0, static_cast<std::int64_t>(d) - 2));
			if(j >= i) ++j;
			Row r(d + 1, Rational(0));
			r[i] = Rational(1);
			r[j] = Rational(-1);
			r[d] = Rational(uniform(-4, 4));
			out.domain.add_constraint(std::move(r));
		}
	}
	out.tiling = poly::TilingSpec(std::move(g));
	return out;
}

struct RandomRelation {
	poly::DependenceRelation rel;
	Box box;
	poly::TilingSpec gs, gt;
};

/// Random dependence I_t = I_s + dist over a random source box, with
/// optional difference constraints on the source and independent source and
/// target tilings.
inline RandomRelation random_relation(std::mt19937_64& rng) {
	auto uniform = [&](std::int64_t lo, std::int64_t hi) { return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng); };
	const auto k = static_cast<std::size_t>(uniform(1, 2));
	const std::size_t w = 2 * k + 1;
	RandomRelation out;
	out.rel.source_stmt = "S";
	out.rel.target_stmt = "T";
	out.rel.source_dims = k;
	out.rel.target_dims = k;
	out.rel.delta = RationalPolyhedron(2 * k, 0);
	out.box.resize(2 * k);
	std::vector<std::int64_t> gs(k), gt(k);
	for(std::size_t i = 0; i < k; ++i) {
		const std::int64_t lo = uniform(-5, 5);
		const std::int64_t hi = lo + uniform(0, 10);
		const std::int64_t dist = uniform(-2, 3);
		out.rel.delta.add_constraint(unit_row(w, i, 1, -lo));
		out.rel.delta.add_constraint(unit_row(w, i, -1, hi));
		Row eq(w, Rational(0));
		eq[k + i] = Rational(1);
		eq[i] = Rational(-1);
		eq[w - 1] = Rational(-dist);
		out.rel.delta.add_equality(eq);
		out.box[i] = {lo, hi};
		out.box[k + i] = {lo + dist, hi + dist};
		gs[i] = uniform(1, 8);
		gt[i] = uniform(1, 8);
	}
	if(k > 1 && uniform(0, 1) == 1) {
		Row r(w, Rational(0));
		r[0] = Rational(1);
		r[1] = Rational(-1);
		r[w - 1] = Rational(uniform(-3, 3));
		out.rel.delta.add_constraint(std::move(r));
	}
	out.gs = poly::TilingSpec(std::move(gs));
	out.gt = poly::TilingSpec(std::move(gt));
	return out;
}

/// Random bounded polyhedron with small integer coefficients for projection tests.
inline RationalPolyhedron random_polyhedron(std::mt19937_64& rng, std::size_t dim, std::int64_t extent, std::size_t extra_rows) {
	auto uniform = [&](std::int64_t lo, std::int64_t hi) { return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng); };
	RationalPolyhedron p(dim, 0);
	for(std::size_t i = 0; i < dim; ++i) {
		p.add_constraint(unit_row(dim + 1, i, 1, extent));
		p.add_constraint(unit_row(dim + 1, i, -1, extent));
	}
	for(std::size_t e = 0; e < extra_rows; ++e) {
		Row r(dim + 1, Rational(0));
		for(std::size_t i = 0; i < dim; ++i) r[i] = Rational(uniform(-2, 2));
		r[dim] = Rational(uniform(0, 3 * extent));
		p.add_constraint(std::move(r));
	}
	return p;
}

} // namespace edt::testing
