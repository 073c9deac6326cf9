#pragma once

// File plumbing for the command-line tool: output locations, all-or-nothing
// writes and input sniffing.

#include "ctxtree/sequence.hpp"

#include <filesystem>
#include <fstream>
#include <optional>
#include <stdexcept>
#include <string>

namespace cli {

inline constexpr const char* kOutputDirEnv = "CTXTREE_OUTPUT_DIR";

/// Bad flags or flag combinations; exit code 1.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Missing, unreadable or unwritable files; exit code 2.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// `requested` if given, else `fallback_name`; relative paths land in
/// $CTXTREE_OUTPUT_DIR when it is set.
std::filesystem::path resolve_output(const std::optional<std::string>& requested, const std::string& fallback_name);

/// Writes to a sibling temporary and renames on commit(). Without a commit
/// the temporary is removed, so a failed command leaves no partial output.
class AtomicFile {
 public:
  explicit AtomicFile(std::filesystem::path target, bool binary = false);
  ~AtomicFile();
  AtomicFile(const AtomicFile&) = delete;
  AtomicFile& operator=(const AtomicFile&) = delete;

  std::ostream& stream() { return out_; }
  const std::filesystem::path& target() const { return target_; }
  void commit();

 private:
  std::filesystem::path target_;
  std::filesystem::path temp_;
  std::ofstream out_;
  bool committed_ = false;
};

/// Either stdout or an AtomicFile.
class OutputSink {
 public:
  explicit OutputSink(const std::optional<std::string>& path);
  std::ostream& stream();
  void commit();

 private:
  std::optional<AtomicFile> file_;
};

enum class InputKind { index, tree_binary, tree_text, other };

/// Classifies a file by its first bytes; throws IoError if it cannot be read.
InputKind sniff(const std::string& path);

/// Throws IoError unless `path` names a readable regular file.
void require_readable(const std::string& path);

/// The requested format, or FASTA when the first non-blank byte is '>'.
ctxtree::SequenceFormat detect_format(const std::string& path, const std::optional<std::string>& requested);

}  // namespace cli
