#pragma once

#include <iosfwd>
#include <string>

#include "polyiso/certify.hpp"

namespace polyiso {

std::string to_string(LeafStatus s);
std::string to_string(BoundMethod m);

/// One leaf as a single-line JSON object.
std::string leaf_json_line(const Leaf& leaf);

void write_certificate(std::ostream& out, const Certificate& cert);
std::string certificate_to_json(const Certificate& cert);
/// Throws ParseError on malformed input.
Certificate certificate_from_json(const std::string& text);

void save_certificate(const Certificate& cert, const std::string& path);
Certificate load_certificate(const std::string& path);

}  // namespace polyiso
