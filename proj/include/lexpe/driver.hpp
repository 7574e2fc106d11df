#pragma once

// Source-to-artifact pipeline shared by the CLI, the tests and the benches.

#include <filesystem>
#include <string>
#include <vector>

#include "lexpe/form_index.hpp"
#include "lexpe/lexicon.hpp"
#include "lexpe/pe.hpp"

namespace lexpe {

struct Compiled {
  PeLexicon pe;
  FormIndex index;
  double seconds = 0;  // parse to index, wall clock
  std::vector<std::string> warnings;
};

/// Parses, validates and lowers. Throws LexiconError carrying diagnostics.
Lexicon load_lexicon(const std::vector<SourceFile>& files);
Lexicon load_lexicon(const std::string& text, const std::string& name = "<input>");

Compiled compile_sources(const std::vector<SourceFile>& files, const CompileOptions& opts = {});
Compiled compile_text(const std::string& text, const std::string& name = "<input>", const CompileOptions& opts = {});
Compiled compile_files(const std::vector<std::filesystem::path>& files, const CompileOptions& opts = {});

std::string read_file(const std::filesystem::path& file);

}  // namespace lexpe
