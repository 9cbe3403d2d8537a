#include "linsys/io.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <array>
#include <fstream>
#include <map>
#include <sstream>

namespace linsys::io {

using nlohmann::json;

namespace {

Error parse_error(const std::string& what) { return Error(Errc::ParseError, what); }

json lines_json(const LinearSystem& canonical) {
  json lines = json::array();
  for (LineIndex l = 0; l < canonical.num_lines(); ++l) {
    lines.push_back(canonical.line_labels(l));
  }
  return lines;
}

std::string sha256_hex(std::string_view data) {
  std::array<unsigned char, EVP_MAX_MD_SIZE> md{};
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), md.data(), &len, EVP_sha256(), nullptr) != 1) {
    throw std::runtime_error("sha256 digest failed");
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out += kHex[md[i] >> 4];
    out += kHex[md[i] & 0xF];
  }
  return out;
}

std::vector<std::string> string_array(const json& j, const std::string& what) {
  if (!j.is_array()) throw parse_error(what + " must be an array");
  std::vector<std::string> out;
  for (const auto& item : j) {
    if (!item.is_string()) throw parse_error(what + " must contain strings");
    out.push_back(item.get<std::string>());
  }
  return out;
}

json parse_json(std::string_view text) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw parse_error(std::string("malformed JSON: ") + e.what());
  }
}

void check_version(const json& doc) {
  if (!doc.is_object()) throw parse_error("document must be a JSON object");
  if (!doc.contains("format_version") || !doc["format_version"].is_number_integer()) {
    throw parse_error("missing integer format_version");
  }
  if (doc["format_version"].get<int>() != kFormatVersion) {
    throw parse_error("unsupported format_version " + doc["format_version"].dump());
  }
}

}  // namespace

json instance_json(const LinearSystem& ls, const json& metadata) {
  const auto c = canonicalize(ls);
  json doc = json::object();
  doc["format_version"] = kFormatVersion;
  doc["points"] = c.labels();
  doc["lines"] = lines_json(c);
  doc["metadata"] = metadata.is_null() ? json::object() : metadata;
  return doc;
}

std::string emit_json(const json& doc) { return doc.dump(2) + "\n"; }

std::string emit_instance(const LinearSystem& ls, const json& metadata) {
  return emit_json(instance_json(ls, metadata));
}

InstanceFile parse_instance(std::string_view text) {
  const auto doc = parse_json(text);
  check_version(doc);
  for (const auto& key : {"points", "lines"}) {
    if (!doc.contains(key)) throw parse_error(std::string("missing field '") + key + "'");
  }
  auto points = string_array(doc["points"], "points");
  if (!doc["lines"].is_array()) throw parse_error("lines must be an array");
  std::vector<std::vector<std::string>> lines;
  for (const auto& line : doc["lines"]) lines.push_back(string_array(line, "each line"));
  InstanceFile file;
  file.format_version = doc["format_version"].get<int>();
  file.system = LinearSystem::validate(points, lines);
  if (doc.contains("metadata")) {
    if (!doc["metadata"].is_object()) throw parse_error("metadata must be an object");
    file.metadata = doc["metadata"];
  }
  return file;
}

std::string instance_digest(const LinearSystem& ls) {
  const auto c = canonicalize(ls);
  json doc = json::object();
  doc["format_version"] = kFormatVersion;
  doc["points"] = c.labels();
  doc["lines"] = lines_json(c);
  return "sha256:" + sha256_hex(doc.dump());
}

json certificate_json(const LinearSystem& ls, const Certificate& cert) {
  json doc = json::object();
  doc["format_version"] = kFormatVersion;
  doc["instance_digest"] = instance_digest(ls);
  doc["kind"] = std::string(kind_name(cert.kind));
  doc["value"] = cert.value;
  doc["optimal"] = cert.optimal;
  doc["nodes_explored"] = cert.nodes_explored;
  json witness = json::array();
  if (cert.kind == CertificateKind::Tau) {
    std::vector<std::string> labels;
    for (auto p : cert.witness) labels.push_back(ls.label(p));
    std::sort(labels.begin(), labels.end());
    witness = labels;
  } else {
    std::vector<std::vector<std::string>> lines;
    for (auto l : cert.witness) {
      auto labels = ls.line_labels(l);
      std::sort(labels.begin(), labels.end());
      lines.push_back(std::move(labels));
    }
    std::sort(lines.begin(), lines.end());
    witness = lines;
  }
  doc["witness"] = witness;
  return doc;
}

std::string emit_certificate(const LinearSystem& ls, const Certificate& cert) {
  return emit_json(certificate_json(ls, cert));
}

Certificate parse_certificate(std::string_view text, const LinearSystem& ls) {
  const auto doc = parse_json(text);
  check_version(doc);
  for (const auto& key : {"instance_digest", "kind", "value", "optimal", "witness"}) {
    if (!doc.contains(key)) throw parse_error(std::string("missing field '") + key + "'");
  }
  if (!doc["instance_digest"].is_string() ||
      doc["instance_digest"].get<std::string>() != instance_digest(ls)) {
    throw Error(Errc::DigestMismatch, "certificate refers to a different instance");
  }
  Certificate cert;
  const auto kind = doc["kind"].is_string() ? doc["kind"].get<std::string>() : "";
  if (kind == "tau") {
    cert.kind = CertificateKind::Tau;
  } else if (kind == "nu2") {
    cert.kind = CertificateKind::Nu2;
  } else {
    throw parse_error("unknown certificate kind '" + kind + "'");
  }
  if (!doc["value"].is_number_unsigned()) throw parse_error("value must be a nonnegative integer");
  cert.value = doc["value"].get<std::size_t>();
  if (!doc["optimal"].is_boolean()) throw parse_error("optimal must be a boolean");
  cert.optimal = doc["optimal"].get<bool>();
  if (doc.contains("nodes_explored") && doc["nodes_explored"].is_number_unsigned()) {
    cert.nodes_explored = doc["nodes_explored"].get<std::uint64_t>();
  }
  const auto& witness = doc["witness"];
  if (!witness.is_array()) throw parse_error("witness must be an array");
  if (cert.kind == CertificateKind::Tau) {
    for (const auto& label : string_array(witness, "witness")) {
      cert.witness.push_back(ls.index_of(label));
    }
  } else {
    std::map<std::vector<std::string>, LineIndex> by_labels;
    for (LineIndex l = 0; l < ls.num_lines(); ++l) {
      auto labels = ls.line_labels(l);
      std::sort(labels.begin(), labels.end());
      by_labels.emplace(std::move(labels), l);
    }
    for (const auto& line : witness) {
      auto labels = string_array(line, "witness line");
      std::sort(labels.begin(), labels.end());
      auto it = by_labels.find(labels);
      if (it == by_labels.end()) throw parse_error("witness line is not a line of the instance");
      cert.witness.push_back(it->second);
    }
  }
  std::sort(cert.witness.begin(), cert.witness.end());
  return cert;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::ParseError, "cannot open '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_file(const std::string& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
}

}  // namespace linsys::io
