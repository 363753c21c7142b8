#include "edt/poly/fourier_motzkin.hpp"

#include <absl/container/flat_hash_map.h>

#include <algorithm>
#include <limits>

namespace edt::poly {

namespace {

// Coefficient part kept primitive; the constant stays rational.
struct FmRow {
	std::vector<std::int64_t> a;
	Rational b;
};

std::int64_t checked_mul(std::int64_t x, std::int64_t y) {
	std::int64_t out;
	if(__builtin_mul_overflow(x, y, &out)) throw std::overflow_error("Fourier-Motzkin coefficient overflow");
	return out;
}

std::int64_t checked_add(std::int64_t x, std::int64_t y) {
	std::int64_t out;
	if(__builtin_add_overflow(x, y, &out)) throw std::overflow_error("Fourier-Motzkin coefficient overflow");
	return out;
}

class RowSet {
  public:
	/// Returns false if the row is a contradiction.
	bool insert(FmRow row) {
		std::int64_t g = 0;
		for(const auto v : row.a) g = gcd64(g, v);
		if(g == 0) return row.b >= Rational(0);
		if(g > 1) {
			for(auto& v : row.a) v /= g;
			row.b /= Rational(g);
		}
		auto [it, inserted] = m_index.try_emplace(row.a, m_rows.size());
		if(inserted) {
			m_rows.push_back(std::move(row));
		} else if(row.b < m_rows[it->second].b) {
			m_rows[it->second].b = row.b;
		}
		return true;
	}

	std::vector<FmRow> take() { return std::move(m_rows); }
	std::size_t size() const { return m_rows.size(); }

  private:
	absl::flat_hash_map<std::vector<std::int64_t>, std::size_t> m_index;
	std::vector<FmRow> m_rows;
};

} // namespace

RationalPolyhedron fm_project(const RationalPolyhedron& p, std::span<const std::size_t> eliminate) {
	FmStats stats;
	return fm_project(p, eliminate, stats);
}

RationalPolyhedron fm_project(const RationalPolyhedron& p, std::span<const std::size_t> eliminate, FmStats& stats) {
	stats = {};
	std::vector<bool> drop(p.dim(), false);
	for(const auto d : eliminate) {
		if(d >= p.dim()) throw DimensionMismatch("fm_project: dimension " + std::to_string(d) + " out of range");
		drop[d] = true;
	}
	const std::size_t kept_dims = static_cast<std::size_t>(std::count(drop.begin(), drop.end(), false));
	if(p.is_marked_empty()) return RationalPolyhedron::empty(kept_dims, p.n_params());

	std::vector<FmRow> rows;
	{
		RowSet initial;
		for(const auto& r : p.rows()) {
			const Row prim = primitive_row(r);
			FmRow fr;
			fr.a.reserve(prim.size() - 1);
			for(std::size_t i = 0; i + 1 < prim.size(); ++i) fr.a.push_back(prim[i].num());
			fr.b = prim.back();
			if(!initial.insert(std::move(fr))) return RationalPolyhedron::empty(kept_dims, p.n_params());
		}
		rows = initial.take();
	}
	stats.peak_rows = rows.size();

	std::vector<std::size_t> pending;
	for(std::size_t d = 0; d < p.dim(); ++d) {
		if(drop[d]) pending.push_back(d);
	}

	while(!pending.empty()) {
		// cheapest dimension first
		std::size_t best = 0;
		std::size_t best_cost = std::numeric_limits<std::size_t>::max();
		for(std::size_t i = 0; i < pending.size(); ++i) {
			std::size_t pos = 0, neg = 0;
			for(const auto& r : rows) {
				pos += r.a[pending[i]] > 0;
				neg += r.a[pending[i]] < 0;
			}
			if(pos * neg < best_cost) {
				best_cost = pos * neg;
				best = i;
			}
		}
		const std::size_t k = pending[best];
		pending.erase(pending.begin() + static_cast<std::ptrdiff_t>(best));

		std::vector<const FmRow*> lower, upper;
		RowSet next;
		for(const auto& r : rows) {
			if(r.a[k] > 0) {
				lower.push_back(&r);
			} else if(r.a[k] < 0) {
				upper.push_back(&r);
			} else {
				next.insert(r);
			}
		}
		for(const auto* lo : lower) {
			for(const auto* up : upper) {
				const std::int64_t c = lo->a[k];
				const std::int64_t d = -up->a[k];
				FmRow combined;
				combined.a.resize(lo->a.size());
				for(std::size_t i = 0; i < combined.a.size(); ++i) {
					combined.a[i] = checked_add(checked_mul(d, lo->a[i]), checked_mul(c, up->a[i]));
				}
				combined.a[k] = 0;
				combined.b = Rational(d) * lo->b + Rational(c) * up->b;
				++stats.combinations;
				if(!next.insert(std::move(combined))) return RationalPolyhedron::empty(kept_dims, p.n_params());
			}
		}
		rows = next.take();
		stats.peak_rows = std::max(stats.peak_rows, rows.size());
	}

	RationalPolyhedron out(kept_dims, p.n_params());
	for(const auto& r : rows) {
		Row row;
		row.reserve(out.width());
		for(std::size_t i = 0; i < r.a.size(); ++i) {
			if(i < p.dim() && drop[i]) continue;
			row.emplace_back(r.a[i]);
		}
		row.push_back(r.b);
		out.add_constraint(std::move(row));
	}
	return out.normalized();
}

} // namespace edt::poly
