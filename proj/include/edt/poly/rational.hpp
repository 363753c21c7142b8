#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

namespace edt::poly {

/// Exact rational number with 64-bit numerator and denominator.
///
/// Always kept reduced with a positive denominator. Intermediate products are
/// computed in 128 bits; a result that does not fit back into 64 bits throws
/// std::overflow_error instead of wrapping.
class Rational {
  public:
	constexpr Rational() = default;
	constexpr Rational(std::int64_t value) : m_num(value) {} // NOLINT(google-explicit-constructor)
	Rational(std::int64_t num, std::int64_t den);

	std::int64_t num() const { return m_num; }
	std::int64_t den() const { return m_den; }

	bool is_integer() const { return m_den == 1; }
	bool is_zero() const { return m_num == 0; }
	int sign() const { return (m_num > 0) - (m_num < 0); }

	/// Rounds toward negative infinity.
	std::int64_t floor() const;
	/// Rounds toward positive infinity.
	std::int64_t ceil() const;

	double to_double() const { return static_cast<double>(m_num) / static_cast<double>(m_den); }
	std::string to_string() const;

	/// Accepts "n" or "n/d" with optional sign; throws std::invalid_argument.
	static Rational parse(std::string_view text);

	Rational operator-() const;
	Rational& operator+=(const Rational& other);
	Rational& operator-=(const Rational& other);
	Rational& operator*=(const Rational& other);
	Rational& operator/=(const Rational& other);

	friend Rational operator+(Rational a, const Rational& b) { return a += b; }
	friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
	friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
	friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

	friend bool operator==(const Rational&, const Rational&) = default;
	friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

  private:
	static Rational from_wide(__int128 num, __int128 den);

	std::int64_t m_num = 0;
	std::int64_t m_den = 1;
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

/// Floor division toward negative infinity; `den` must be positive.
std::int64_t floor_div(std::int64_t num, std::int64_t den);

std::int64_t gcd64(std::int64_t a, std::int64_t b);

} // namespace edt::poly
