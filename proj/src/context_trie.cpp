#include "ctxtree/context_trie.hpp"

#include "ctxtree/error.hpp"

namespace ctxtree {

ContextTrie::ContextTrie(std::size_t alphabet_size) : alphabet_size_(alphabet_size) {
  if (alphabet_size_ == 0 || alphabet_size_ > kMaxAlphabetSize) throw RangeError("bad trie alphabet size");
  add_node();
}

std::uint32_t ContextTrie::add_node() {
  const auto id = static_cast<std::uint32_t>(terminal_.size());
  children_.resize(children_.size() + alphabet_size_, kNone);
  terminal_.push_back(false);
  payload_.push_back(0);
  return id;
}

bool ContextTrie::insert(std::span<const Code> w, std::uint64_t payload) {
  std::uint32_t node = 0;
  for (Code c : w) {
    if (c >= alphabet_size_) throw RangeError("trie insert: code outside alphabet");
    std::uint32_t next = children_[std::size_t{node} * alphabet_size_ + c];
    if (next == kNone) {
      next = add_node();
      children_[std::size_t{node} * alphabet_size_ + c] = next;
    }
    node = next;
  }
  if (terminal_[node]) return false;
  terminal_[node] = true;
  payload_[node] = payload;
  return true;
}

std::uint32_t ContextTrie::find(std::span<const Code> w) const {
  std::uint32_t node = 0;
  for (Code c : w) {
    node = child(node, c);
    if (node == kNone) return kNone;
  }
  return node;
}

bool ContextTrie::has_children(std::uint32_t node) const {
  for (std::size_t c = 0; c < alphabet_size_; ++c) {
    if (children_[std::size_t{node} * alphabet_size_ + c] != kNone) return true;
  }
  return false;
}

void ContextTrie::for_each_terminal(const std::function<void(std::span<const Code>, std::uint64_t)>& visit) const {
  std::vector<Code> path;
  // explicit stack of (node, next child to try)
  std::vector<std::pair<std::uint32_t, std::size_t>> stack{{0, 0}};
  if (terminal_[0]) visit(path, payload_[0]);
  while (!stack.empty()) {
    auto& [node, next] = stack.back();
    if (next == alphabet_size_) {
      stack.pop_back();
      if (!path.empty()) path.pop_back();
      continue;
    }
    const auto c = static_cast<Code>(next++);
    const std::uint32_t kid = child(node, c);
    if (kid == kNone) continue;
    path.push_back(c);
    if (terminal_[kid]) visit(path, payload_[kid]);
    stack.emplace_back(kid, 0);
  }
}

}  // namespace ctxtree
