#ifndef HDLINK_RATIONAL_HPP
#define HDLINK_RATIONAL_HPP

#include <boost/multiprecision/gmp.hpp>
#include <string>

namespace hdl {

// Exact rational scalar. GMP-backed: always in lowest terms, denominator > 0,
// every operation exact. All geometry in the engine runs on this type; no
// floating point ever enters a predicate.
using Rat = boost::multiprecision::mpq_rational;
using Int = boost::multiprecision::mpz_int;

inline int sgn(const Rat& x) { return x.sign(); }

inline Rat rabs(const Rat& x) { return x < 0 ? Rat(-x) : x; }
inline const Rat& rmax(const Rat& a, const Rat& b) { return a < b ? b : a; }

inline std::string to_string(const Rat& r) { return r.str(); }

// Cheap outward-rounded double bounds, used only for bounding-box prefilters;
// every candidate surviving the filter is re-examined exactly.
inline double lower_double(const Rat& r) {
    double d = r.convert_to<double>();
    return std::nextafter(d, -1e308);
}
inline double upper_double(const Rat& r) {
    double d = r.convert_to<double>();
    return std::nextafter(d, 1e308);
}

} // namespace hdl

#endif
