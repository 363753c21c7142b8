#include "edt/poly/polyhedron.hpp"

#include <algorithm>
#include <istream>
#include <map>
#include <numeric>
#include <ostream>
#include <sstream>

namespace edt::poly {

namespace {

bool coefficients_zero(const Row& row) {
	return std::all_of(row.begin(), row.end() - 1, [](const Rational& r) { return r.is_zero(); });
}

bool is_contradiction(const Row& row) {
	return coefficients_zero(row) && row.back() < Rational(0);
}

std::int64_t lcm64(std::int64_t a, std::int64_t b) {
	const std::int64_t g = gcd64(a, b);
	std::int64_t out;
	if(__builtin_mul_overflow(a / g, b, &out)) throw std::overflow_error("row scaling overflow");
	return out;
}

} // namespace

RationalPolyhedron RationalPolyhedron::empty(std::size_t dim, std::size_t n_params) {
	RationalPolyhedron p(dim, n_params);
	Row row(p.width(), Rational(0));
	row.back() = Rational(-1);
	p.add_constraint(std::move(row));
	return p;
}

void RationalPolyhedron::add_constraint(Row row) {
	if(row.size() != width()) {
		throw DimensionMismatch("constraint has " + std::to_string(row.size()) + " entries, expected " + std::to_string(width()));
	}
	if(is_contradiction(row)) m_marked_empty = true;
	m_rows.push_back(std::move(row));
}

void RationalPolyhedron::add_equality(const Row& row) {
	Row neg(row.size());
	std::transform(row.begin(), row.end(), neg.begin(), [](const Rational& r) { return -r; });
	add_constraint(row);
	add_constraint(std::move(neg));
}

void RationalPolyhedron::intersect(const RationalPolyhedron& other) {
	if(other.m_dim != m_dim || other.m_n_params != m_n_params) throw DimensionMismatch("intersect: dimension mismatch");
	for(const auto& r : other.m_rows) add_constraint(r);
}

bool RationalPolyhedron::contains(std::span<const Rational> point, std::span<const Rational> params) const {
	if(point.size() != m_dim || params.size() != m_n_params) throw DimensionMismatch("contains: dimension mismatch");
	if(m_marked_empty) return false;
	for(const auto& r : m_rows) {
		Rational acc = r.back();
		for(std::size_t i = 0; i < m_dim; ++i) acc += r[i] * point[i];
		for(std::size_t j = 0; j < m_n_params; ++j) acc += r[m_dim + j] * params[j];
		if(acc < Rational(0)) return false;
	}
	return true;
}

bool RationalPolyhedron::contains(std::span<const std::int64_t> point, std::span<const std::int64_t> params) const {
	std::vector<Rational> x(point.begin(), point.end());
	std::vector<Rational> pi(params.begin(), params.end());
	return contains(std::span<const Rational>(x), std::span<const Rational>(pi));
}

RationalPolyhedron RationalPolyhedron::bind_params(std::span<const std::int64_t> values) const {
	if(values.size() != m_n_params) throw DimensionMismatch("bind_params: expected " + std::to_string(m_n_params) + " values");
	RationalPolyhedron out(m_dim, 0);
	for(const auto& r : m_rows) {
		Row bound(r.begin(), r.begin() + static_cast<std::ptrdiff_t>(m_dim));
		Rational b = r.back();
		for(std::size_t j = 0; j < m_n_params; ++j) b += r[m_dim + j] * Rational(values[j]);
		bound.push_back(b);
		out.add_constraint(std::move(bound));
	}
	if(m_marked_empty) out.m_marked_empty = true;
	return out;
}

Row primitive_row(const Row& row) {
	if(coefficients_zero(row)) return row;
	std::int64_t den_lcm = 1;
	for(std::size_t i = 0; i + 1 < row.size(); ++i) den_lcm = lcm64(den_lcm, row[i].den());
	std::int64_t g = 0;
	for(std::size_t i = 0; i + 1 < row.size(); ++i) g = gcd64(g, (row[i] * Rational(den_lcm)).num());
	const Rational scale(den_lcm, g);
	Row out(row.size());
	std::transform(row.begin(), row.end(), out.begin(), [&](const Rational& r) { return r * scale; });
	return out;
}

RationalPolyhedron RationalPolyhedron::normalized() const {
	RationalPolyhedron out(m_dim, m_n_params);
	// coefficient part -> tightest constant
	std::map<std::vector<Rational>, Rational> tightest;
	bool empty = m_marked_empty;
	for(const auto& r : m_rows) {
		if(coefficients_zero(r)) {
			if(r.back() < Rational(0)) empty = true;
			continue;
		}
		Row p = primitive_row(r);
		std::vector<Rational> key(p.begin(), p.end() - 1);
		auto [it, inserted] = tightest.try_emplace(std::move(key), p.back());
		if(!inserted && p.back() < it->second) it->second = p.back();
	}
	if(empty) return RationalPolyhedron::empty(m_dim, m_n_params);
	for(auto& [key, b] : tightest) {
		Row r = key;
		r.push_back(b);
		out.m_rows.push_back(std::move(r));
	}
	return out;
}

void write_text(std::ostream& os, const RationalPolyhedron& p) {
	os << "dims " << p.dim() << " params " << p.n_params() << '\n';
	bool wrote_contradiction = false;
	for(const auto& r : p.rows()) {
		for(std::size_t i = 0; i < r.size(); ++i) os << (i ? " " : "") << r[i];
		os << '\n';
		wrote_contradiction = wrote_contradiction || is_contradiction(r);
	}
	if(p.is_marked_empty() && !wrote_contradiction) {
		for(std::size_t i = 0; i + 1 < p.width(); ++i) os << "0 ";
		os << "-1\n";
	}
}

std::string to_text(const RationalPolyhedron& p) {
	std::ostringstream os;
	write_text(os, p);
	return os.str();
}

RationalPolyhedron parse_text(std::istream& is) {
	std::string line;
	std::size_t lineno = 0;
	bool have_header = false;
	RationalPolyhedron p;
	while(std::getline(is, line)) {
		++lineno;
		const auto first = line.find_first_not_of(" \t\r");
		if(first == std::string::npos || line[first] == '#') continue;
		std::istringstream ls(line);
		if(!have_header) {
			std::string dims_kw, params_kw;
			long long d = -1, np = -1;
			std::string trailing;
			if(!(ls >> dims_kw >> d >> params_kw >> np) || dims_kw != "dims" || params_kw != "params" || d < 0 || np < 0 || (ls >> trailing)) {
				throw ParseError(lineno, "expected header 'dims <d> params <p>'");
			}
			p = RationalPolyhedron(static_cast<std::size_t>(d), static_cast<std::size_t>(np));
			have_header = true;
			continue;
		}
		Row row;
		std::string token;
		while(ls >> token) {
			try {
				row.push_back(Rational::parse(token));
			} catch(const std::exception& e) { throw ParseError(lineno, e.what()); }
		}
		if(row.size() != p.width()) {
			throw ParseError(lineno, "expected " + std::to_string(p.width()) + " entries, got " + std::to_string(row.size()));
		}
		p.add_constraint(std::move(row));
	}
	if(!have_header) throw ParseError(lineno == 0 ? 1 : lineno, "missing header 'dims <d> params <p>'");
	return p;
}

RationalPolyhedron parse_text(const std::string& text) {
	std::istringstream is(text);
	return parse_text(is);
}

std::ostream& operator<<(std::ostream& os, const RationalPolyhedron& p) {
	write_text(os, p);
	return os;
}

} // namespace edt::poly
