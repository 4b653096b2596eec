// Minimal XML well-formedness check for emitted SVG: balanced elements,
// exactly one root.
#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace testgen {

inline bool well_formed_svg(std::string_view text) {
  std::vector<std::string> stack;
  int roots = 0;
  size_t i = 0;
  while (i < text.size()) {
    if (text[i] != '<') {
      ++i;
      continue;
    }
    size_t close = text.find('>', i);
    if (close == std::string_view::npos) return false;
    std::string_view tag = text.substr(i + 1, close - i - 1);
    i = close + 1;
    if (tag.empty()) return false;
    if (tag.front() == '?' || tag.front() == '!') continue;  // declaration / comment
    if (tag.front() == '/') {
      std::string name(tag.substr(1));
      if (stack.empty() || stack.back() != name) return false;
      stack.pop_back();
      if (stack.empty()) ++roots;
      continue;
    }
    if (tag.back() == '/') continue;  // self-closing
    size_t space = tag.find_first_of(" \t\n");
    std::string name(space == std::string_view::npos ? tag : tag.substr(0, space));
    stack.push_back(name);
  }
  return stack.empty() && roots == 1;
}

}  // namespace testgen
