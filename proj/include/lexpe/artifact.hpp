#pragma once

// Binary pe-lexicon artifact (.pel).
//
// Little-endian throughout. Layout:
//   magic "LEXPEPEL", u32 version, u32 section count
//   sections: u32 tag, u64 payload length, payload
//     TYPE  sort and type tables
//     LEXI  the lowered source hierarchy (classes, generators)
//     PERS  pe-results: key, p_f, p_d
//     CLAS  lexical class residues with their pe-result reference
//     INDX  form index, sorted by form
//   u64 FNV-1a checksum of everything before it
// Strings are u32 length + bytes, paths u32 length + feature ids. Feature
// structures are stored in normal form, so equal inputs give equal bytes.

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>

#include "lexpe/form_index.hpp"
#include "lexpe/pe.hpp"

namespace lexpe {

inline constexpr std::uint32_t kArtifactVersion = 1;

class ArtifactError : public std::runtime_error {
 public:
  enum class Kind { io, magic, version, truncated, checksum, malformed, dangling };
  ArtifactError(Kind kind, const std::string& message) : std::runtime_error(message), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

struct Artifact {
  PeLexicon pe;
  FormIndex index;
};

std::string serialize_pe(const PeLexicon& pe, const FormIndex& index);
/// Validates everything before returning; never yields a partial lexicon.
Artifact load_pe(std::string_view bytes);

void write_artifact(const std::filesystem::path& file, const PeLexicon& pe, const FormIndex& index);
Artifact read_artifact(const std::filesystem::path& file);

}  // namespace lexpe
