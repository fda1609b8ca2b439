#ifndef HDLINK_JSON_IO_HPP
#define HDLINK_JSON_IO_HPP

#include "complex.hpp"

#include <string>

namespace hdl {

// Serialize a link to the JSON link-file format: exact rationals as
// [numerator, denominator] pairs (emitted as JSON integers when they fit in
// 64 bits, as decimal strings otherwise, and accepted in either form), one
// object per component with ambient vertices, domain vertices, top simplices
// and orientations, plus the optional standard-inclusion block for long
// components and a metadata block with smale_term and provenance.
std::string serialize_link(const SimplicialLink& link);

// Parse the link-file format; throws Error(InvalidInput) on malformed input.
// The result is structurally identical to what was serialized (bit-exact
// rationals); it is not validated here, call validate() for that.
SimplicialLink parse_link(const std::string& text);

} // namespace hdl

#endif
