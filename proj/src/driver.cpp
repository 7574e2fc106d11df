#include "lexpe/driver.hpp"

#include <chrono>
#include <fstream>
#include <sstream>

namespace lexpe {

Lexicon load_lexicon(const std::vector<SourceFile>& files) {
  auto parsed = parse_lexicon(files);
  if (!parsed.ok()) throw LexiconError(std::move(parsed.diagnostics));
  return lower_lexicon(*parsed.lexicon);
}

Lexicon load_lexicon(const std::string& text, const std::string& name) {
  return load_lexicon(std::vector<SourceFile>{{name, text}});
}

Compiled compile_sources(const std::vector<SourceFile>& files, const CompileOptions& opts) {
  const auto start = std::chrono::steady_clock::now();
  Compiled out;
  out.pe = pe_compile(load_lexicon(files), opts);
  out.index = build_index(out.pe, default_index_key(out.pe.types()), &out.warnings);
  out.warnings.insert(out.warnings.begin(), out.pe.warnings.begin(), out.pe.warnings.end());
  out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return out;
}

Compiled compile_text(const std::string& text, const std::string& name, const CompileOptions& opts) {
  return compile_sources({{name, text}}, opts);
}

Compiled compile_files(const std::vector<std::filesystem::path>& files, const CompileOptions& opts) {
  std::vector<SourceFile> sources;
  for (const auto& f : files) sources.push_back({f.string(), read_file(f)});
  return compile_sources(sources, opts);
}

std::string read_file(const std::filesystem::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read '" + file.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace lexpe
