#include "cli_io.hpp"

#include <cctype>
#include <cstdlib>
#include <cstring>
#include <iostream>

#include <unistd.h>

namespace cli {

namespace fs = std::filesystem;

fs::path resolve_output(const std::optional<std::string>& requested, const std::string& fallback_name) {
  fs::path p = requested ? fs::path(*requested) : fs::path(fallback_name);
  if (p.is_relative()) {
    if (const char* dir = std::getenv(kOutputDirEnv); dir != nullptr && *dir != '\0') p = fs::path(dir) / p;
  }
  return p;
}

AtomicFile::AtomicFile(fs::path target, bool binary) : target_(std::move(target)) {
  const fs::path dir = target_.has_parent_path() ? target_.parent_path() : fs::path(".");
  std::error_code ec;
  if (!fs::is_directory(dir, ec)) throw IoError("output directory does not exist: " + dir.string());
  temp_ = target_;
  temp_ += ".tmp." + std::to_string(::getpid());
  out_.open(temp_, binary ? std::ios::binary | std::ios::trunc : std::ios::trunc);
  if (!out_) throw IoError("cannot write " + temp_.string());
}

AtomicFile::~AtomicFile() {
  if (committed_) return;
  out_.close();
  std::error_code ec;
  fs::remove(temp_, ec);
}

void AtomicFile::commit() {
  out_.flush();
  if (!out_) throw IoError("failed writing " + target_.string());
  out_.close();
  std::error_code ec;
  fs::rename(temp_, target_, ec);
  if (ec) throw IoError("cannot move output into place at " + target_.string() + ": " + ec.message());
  committed_ = true;
}

OutputSink::OutputSink(const std::optional<std::string>& path) {
  if (path && *path != "-") file_.emplace(resolve_output(path, *path));
}

std::ostream& OutputSink::stream() { return file_ ? file_->stream() : std::cout; }

void OutputSink::commit() {
  if (file_) {
    file_->commit();
  } else {
    std::cout.flush();
    if (!std::cout) throw IoError("failed writing to stdout");
  }
}

void require_readable(const std::string& path) {
  std::error_code ec;
  if (!fs::is_regular_file(path, ec)) throw IoError("cannot open " + path);
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
}

InputKind sniff(const std::string& path) {
  require_readable(path);
  std::ifstream in(path, std::ios::binary);
  char head[16] = {};
  in.read(head, sizeof head);
  const std::string_view got(head, static_cast<std::size_t>(in.gcount()));
  if (got.starts_with(std::string_view("CTXTIDX\0", 8))) return InputKind::index;
  if (got.starts_with("CTXTTREE")) return InputKind::tree_binary;
  if (got.starts_with("#ctxtree-tree")) return InputKind::tree_text;
  return InputKind::other;
}

ctxtree::SequenceFormat detect_format(const std::string& path, const std::optional<std::string>& requested) {
  if (requested) return ctxtree::parse_format(*requested);
  require_readable(path);
  std::ifstream in(path, std::ios::binary);
  char c;
  while (in.get(c)) {
    if (!std::isspace(static_cast<unsigned char>(c))) {
      return c == '>' ? ctxtree::SequenceFormat::fasta : ctxtree::SequenceFormat::plain;
    }
  }
  return ctxtree::SequenceFormat::plain;
}

}  // namespace cli
