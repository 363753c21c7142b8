#include "edt/poly/rational.hpp"

#include <charconv>
#include <limits>
#include <ostream>
#include <stdexcept>

namespace edt::poly {

namespace {

__int128 gcd_wide(__int128 a, __int128 b) {
	if(a < 0) a = -a;
	if(b < 0) b = -b;
	while(b != 0) {
		const __int128 t = a % b;
		a = b;
		b = t;
	}
	return a;
}

bool fits64(__int128 v) {
	return v >= std::numeric_limits<std::int64_t>::min() && v <= std::numeric_limits<std::int64_t>::max();
}

std::int64_t parse_int(std::string_view text) {
	if(!text.empty() && text.front() == '+') text.remove_prefix(1);
	std::int64_t value = 0;
	const auto* first = text.data();
	const auto* last = text.data() + text.size();
	const auto [ptr, ec] = std::from_chars(first, last, value);
	if(text.empty() || ec != std::errc{} || ptr != last) {
		throw std::invalid_argument("malformed rational component '" + std::string(text) + "'");
	}
	return value;
}

} // namespace

std::int64_t gcd64(std::int64_t a, std::int64_t b) {
	return static_cast<std::int64_t>(gcd_wide(a, b));
}

std::int64_t floor_div(std::int64_t num, std::int64_t den) {
	std::int64_t q = num / den;
	if((num % den != 0) && ((num < 0) != (den < 0))) --q;
	return q;
}

Rational::Rational(std::int64_t num, std::int64_t den) {
	if(den == 0) throw std::domain_error("rational with zero denominator");
	*this = from_wide(num, den);
}

Rational Rational::from_wide(__int128 num, __int128 den) {
	if(den < 0) {
		num = -num;
		den = -den;
	}
	const __int128 g = gcd_wide(num, den);
	if(g > 1) {
		num /= g;
		den /= g;
	}
	if(num == 0) den = 1;
	if(!fits64(num) || !fits64(den)) throw std::overflow_error("rational arithmetic overflow");
	Rational r;
	r.m_num = static_cast<std::int64_t>(num);
	r.m_den = static_cast<std::int64_t>(den);
	return r;
}

std::int64_t Rational::floor() const {
	return floor_div(m_num, m_den);
}

std::int64_t Rational::ceil() const {
	return -floor_div(-m_num, m_den);
}

std::string Rational::to_string() const {
	if(m_den == 1) return std::to_string(m_num);
	return std::to_string(m_num) + "/" + std::to_string(m_den);
}

Rational Rational::parse(std::string_view text) {
	const auto slash = text.find('/');
	if(slash == std::string_view::npos) return Rational(parse_int(text));
	const auto den = parse_int(text.substr(slash + 1));
	if(den == 0) throw std::invalid_argument("rational with zero denominator");
	return Rational(parse_int(text.substr(0, slash)), den);
}

Rational Rational::operator-() const {
	if(m_num == std::numeric_limits<std::int64_t>::min()) throw std::overflow_error("rational arithmetic overflow");
	Rational r = *this;
	r.m_num = -r.m_num;
	return r;
}

Rational& Rational::operator+=(const Rational& other) {
	if(m_den == 1 && other.m_den == 1) {
		std::int64_t sum;
		if(__builtin_add_overflow(m_num, other.m_num, &sum)) throw std::overflow_error("rational arithmetic overflow");
		m_num = sum;
		return *this;
	}
	const __int128 num = static_cast<__int128>(m_num) * other.m_den + static_cast<__int128>(other.m_num) * m_den;
	const __int128 den = static_cast<__int128>(m_den) * other.m_den;
	return *this = from_wide(num, den);
}

Rational& Rational::operator-=(const Rational& other) {
	return *this += -other;
}

Rational& Rational::operator*=(const Rational& other) {
	if(m_den == 1 && other.m_den == 1) {
		std::int64_t prod;
		if(__builtin_mul_overflow(m_num, other.m_num, &prod)) throw std::overflow_error("rational arithmetic overflow");
		m_num = prod;
		return *this;
	}
	return *this = from_wide(static_cast<__int128>(m_num) * other.m_num, static_cast<__int128>(m_den) * other.m_den);
}

Rational& Rational::operator/=(const Rational& other) {
	if(other.m_num == 0) throw std::domain_error("rational division by zero");
	return *this = from_wide(static_cast<__int128>(m_num) * other.m_den, static_cast<__int128>(m_den) * other.m_num);
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
	const __int128 lhs = static_cast<__int128>(a.m_num) * b.m_den;
	const __int128 rhs = static_cast<__int128>(b.m_num) * a.m_den;
	if(lhs < rhs) return std::strong_ordering::less;
	if(lhs > rhs) return std::strong_ordering::greater;
	return std::strong_ordering::equal;
}

std::ostream& operator<<(std::ostream& os, const Rational& r) {
	return os << r.to_string();
}

} // namespace edt::poly
