#pragma once

#include "edt/poly/rational.hpp"

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace edt::poly {

/// Thrown when operands disagree on dimensions or parameter counts.
class DimensionMismatch : public std::invalid_argument {
  public:
	using std::invalid_argument::invalid_argument;
};

/// One inequality `a·x + p·π + b >= 0`, stored as [a | p | b].
using Row = std::vector<Rational>;

using Point = std::vector<std::int64_t>;

/// H-representation of a rational polyhedron over `dim` set dimensions and
/// `n_params` parameters.
///
/// Rows keep the order in which they were added; `normalized()` produces the
/// canonical form (primitive integer coefficients, no duplicate or dominated
/// rows, lexicographic order) in which structural equality is meaningful.
class RationalPolyhedron {
  public:
	RationalPolyhedron() = default;
	RationalPolyhedron(std::size_t dim, std::size_t n_params) : m_dim(dim), m_n_params(n_params) {}

	/// A polyhedron explicitly marked as containing no point.
	static RationalPolyhedron empty(std::size_t dim, std::size_t n_params);

	std::size_t dim() const { return m_dim; }
	std::size_t n_params() const { return m_n_params; }
	std::size_t width() const { return m_dim + m_n_params + 1; }
	std::size_t size() const { return m_rows.size(); }
	const std::vector<Row>& rows() const { return m_rows; }
	const Row& row(std::size_t i) const { return m_rows[i]; }

	/// True if some constraint is the contradiction `b >= 0` with b < 0.
	bool is_marked_empty() const { return m_marked_empty; }

	/// Appends `row >= 0`; throws DimensionMismatch on a wrong width.
	void add_constraint(Row row);
	/// Appends `row == 0` as the pair `row >= 0`, `-row >= 0`.
	void add_equality(const Row& row);
	/// Appends every row of `other`, which must have identical dimensions.
	void intersect(const RationalPolyhedron& other);

	bool contains(std::span<const Rational> point, std::span<const Rational> params = {}) const;
	bool contains(std::span<const std::int64_t> point, std::span<const std::int64_t> params = {}) const;

	/// Replaces every parameter with the given value; the result has no parameters.
	RationalPolyhedron bind_params(std::span<const std::int64_t> values) const;

	RationalPolyhedron normalized() const;

	friend bool operator==(const RationalPolyhedron&, const RationalPolyhedron&) = default;

  private:
	std::size_t m_dim = 0;
	std::size_t m_n_params = 0;
	std::vector<Row> m_rows;
	bool m_marked_empty = false;
};

/// Scales `row` by a positive factor so that its coefficient part (every entry
/// except the constant) is a primitive integer vector. All-zero coefficient
/// parts are left untouched.
Row primitive_row(const Row& row);

/// Text form: `dims <d> params <p>` followed by one row per line. Blank lines
/// and lines starting with '#' are ignored on input.
std::string to_text(const RationalPolyhedron& p);
void write_text(std::ostream& os, const RationalPolyhedron& p);

/// Throws ParseError carrying the 1-based line number of the offending line.
RationalPolyhedron parse_text(std::istream& is);
RationalPolyhedron parse_text(const std::string& text);

class ParseError : public std::runtime_error {
  public:
	ParseError(std::size_t line, const std::string& what)
	    : std::runtime_error("line " + std::to_string(line) + ": " + what), m_line(line) {}
	std::size_t line() const { return m_line; }

  private:
	std::size_t m_line;
};

std::ostream& operator<<(std::ostream& os, const RationalPolyhedron& p);

} // namespace edt::poly
