#pragma once

#include "ctxtree/sequence.hpp"

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace ctxtree {

/// Trie over backward contexts with dense child arrays. A node may carry a
/// terminal mark and a 64-bit payload.
class ContextTrie {
 public:
  static constexpr std::uint32_t kNone = 0xFFFFFFFFu;

  explicit ContextTrie(std::size_t alphabet_size = 2);

  std::size_t alphabet_size() const { return alphabet_size_; }
  std::size_t node_count() const { return terminal_.size(); }

  /// Inserts w, marking its node terminal. Returns false if w was already
  /// terminal. Codes must be < alphabet_size().
  bool insert(std::span<const Code> w, std::uint64_t payload = 0);

  std::uint32_t child(std::uint32_t node, Code code) const {
    return code < alphabet_size_ ? children_[std::size_t{node} * alphabet_size_ + code] : kNone;
  }
  bool terminal(std::uint32_t node) const { return terminal_[node]; }
  std::uint64_t payload(std::uint32_t node) const { return payload_[node]; }

  /// Node reached by w, or kNone.
  std::uint32_t find(std::span<const Code> w) const;

  bool has_children(std::uint32_t node) const;

  /// Visits terminal strings in lexicographic code order.
  void for_each_terminal(const std::function<void(std::span<const Code>, std::uint64_t)>& visit) const;

 private:
  std::uint32_t add_node();

  std::size_t alphabet_size_;
  std::vector<std::uint32_t> children_;
  std::vector<bool> terminal_;
  std::vector<std::uint64_t> payload_;
};

}  // namespace ctxtree
