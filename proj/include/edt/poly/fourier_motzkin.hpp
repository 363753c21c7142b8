#pragma once

#include "edt/poly/polyhedron.hpp"

#include <cstddef>
#include <span>

namespace edt::poly {

/// Rational projection by Fourier–Motzkin elimination.
///
/// Eliminates the listed set dimensions (the remaining ones keep their
/// relative order); parameters are kept. Only syntactic redundancy is pruned:
/// rows whose coefficient parts coincide keep the tightest constant. No LP
/// based pruning is done. At each step the dimension with the fewest
/// lower×upper combinations is eliminated first.
///
/// The result is normalized. A contradiction found along the way yields a
/// polyhedron marked empty.
RationalPolyhedron fm_project(const RationalPolyhedron& p, std::span<const std::size_t> eliminate);

/// Statistics of the last elimination, for benchmarks.
struct FmStats {
	std::size_t peak_rows = 0;
	std::size_t combinations = 0;
};

RationalPolyhedron fm_project(const RationalPolyhedron& p, std::span<const std::size_t> eliminate, FmStats& stats);

} // namespace edt::poly
