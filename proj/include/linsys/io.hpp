#pragma once

#include <string>
#include <string_view>

#include <json.hpp>

#include "linsys/core.hpp"
#include "linsys/solvers.hpp"

namespace linsys::io {

inline constexpr int kFormatVersion = 1;

struct InstanceFile {
  int format_version = kFormatVersion;
  LinearSystem system;
  nlohmann::json metadata = nlohmann::json::object();
};

/// Canonical object: points sorted by label, each line's labels in point
/// order, lines sorted, keys sorted.
nlohmann::json instance_json(const LinearSystem& ls,
                             const nlohmann::json& metadata = nlohmann::json::object());

/// Canonical UTF-8 text with LF endings and a trailing newline.
std::string emit_instance(const LinearSystem& ls,
                          const nlohmann::json& metadata = nlohmann::json::object());

/// Parses and validates. Throws ParseError for malformed documents and the
/// core validation errors for invalid systems.
InstanceFile parse_instance(std::string_view text);

/// "sha256:<hex>" over the canonical encoding of points and lines. Metadata
/// does not contribute.
std::string instance_digest(const LinearSystem& ls);

nlohmann::json certificate_json(const LinearSystem& ls, const Certificate& cert);
std::string emit_certificate(const LinearSystem& ls, const Certificate& cert);

/// Parses a certificate file against `ls`. Throws DigestMismatch when the
/// file refers to another instance.
Certificate parse_certificate(std::string_view text, const LinearSystem& ls);

/// Pretty JSON with a trailing newline.
std::string emit_json(const nlohmann::json& doc);

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view contents);

}  // namespace linsys::io
